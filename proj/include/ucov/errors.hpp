#pragma once

#include <stdexcept>
#include <string>

namespace ucov {

// Malformed or invalid user data: bad rational literal, asymmetric matrix,
// wrong diagonal, dimension mismatch between inputs.
struct InputError : std::runtime_error {
    explicit InputError(const std::string& what) : std::runtime_error(what) {}
};

struct DimensionError : InputError {
    explicit DimensionError(const std::string& what) : InputError(what) {}
};

// A configured resource cap was exceeded (vertex count, LP size, enumeration size).
struct CapExceeded : std::runtime_error {
    explicit CapExceeded(const std::string& what) : std::runtime_error(what) {}
};

} // namespace ucov
