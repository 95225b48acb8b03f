#pragma once

#include <cstdint>
#include <functional>
#include <utility>
#include <vector>

#include "ucov/core.hpp"

namespace ucov {

inline constexpr int kDefaultVertexCap = 20;

inline std::uint64_t vertex_count(int n) { return std::uint64_t(1) << (n - 1); }

// k-th canonical sign vector in lexicographic order (+1 before -1), k in
// [0, 2^(n-1)). The first component is pinned to +1, the last varies fastest.
inline SignVector sign_vector_from_index(int n, std::uint64_t k) {
    std::vector<int> s(n, 1);
    for (int i = 1; i < n; ++i)
        if ((k >> (n - 1 - i)) & 1) s[i] = -1;
    return SignVector(std::move(s));
}

inline std::uint64_t index_of_sign_vector(const SignVector& u) {
    std::uint64_t k = 0;
    for (int i = 1; i < u.n; ++i)
        if (u.signs[i] == -1) k |= std::uint64_t(1) << (u.n - 1 - i);
    return k;
}

// Streams the canonical vertices u (+) their outer products as integer
// triangular arrays, in lexicographic order, without materializing the set.
inline void for_each_vertex(int n,
                            const std::function<void(std::uint64_t, const SignVector&,
                                                     const std::vector<Int>&)>& fn,
                            int cap = kDefaultVertexCap) {
    if (n < 1) throw InputError("vertex enumeration needs n >= 1");
    if (n > cap)
        throw CapExceeded("vertex enumeration capped at n <= " + std::to_string(cap));
    for (std::uint64_t k = 0; k < vertex_count(n); ++k) {
        SignVector u = sign_vector_from_index(n, k);
        fn(k, u, outer_tri_int(u));
    }
}

// The V-description of the polytope: all 2^(n-1) canonical vertices.
struct VertexSet {
    int n = 0;
    std::vector<std::pair<SignVector, TriArray>> vertices;
};

inline VertexSet enumerate_vertices(int n, int cap = kDefaultVertexCap) {
    VertexSet vs;
    vs.n = n;
    for_each_vertex(
        n,
        [&](std::uint64_t, const SignVector& u, const std::vector<Int>&) {
            vs.vertices.emplace_back(u, outer_tri(u));
        },
        cap);
    return vs;
}

struct VertexMin {
    Rat value;
    std::vector<std::uint64_t> argmin; // vertex indices, ascending
};

// Minimum of <vertex, normal> over all vertices, with the full argmin list.
// A linear form attains its minimum over the polytope at a vertex, so this
// is also the LP minimum over the whole body.
inline VertexMin vertex_min(int n, const std::vector<Rat>& normal,
                            int cap = kDefaultVertexCap) {
    if (static_cast<int>(normal.size()) != tri_dim(n))
        throw DimensionError("vertex_min: direction has wrong length");
    VertexMin out;
    bool first = true;
    for_each_vertex(
        n,
        [&](std::uint64_t k, const SignVector&, const std::vector<Int>& tri) {
            Rat v = dot(tri, normal);
            if (first || v < out.value) {
                out.value = v;
                out.argmin.clear();
                first = false;
            }
            if (v == out.value) out.argmin.push_back(k);
        },
        cap);
    return out;
}

inline VertexMin vertex_min(int n, const std::vector<Int>& normal,
                            int cap = kDefaultVertexCap) {
    std::vector<Rat> r(normal.size());
    for (std::size_t i = 0; i < normal.size(); ++i) r[i] = Rat(normal[i]);
    return vertex_min(n, r, cap);
}

} // namespace ucov
