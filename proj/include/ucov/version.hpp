#pragma once

namespace ucov {

inline constexpr const char* kVersion = "0.1.0";

} // namespace ucov
