#pragma once

#include <algorithm>
#include <cstddef>
#include <string>
#include <vector>

#include "ucov/rational.hpp"

namespace ucov {

// Number of supra-diagonal entries of an n x n symmetric matrix.
inline int tri_dim(int n) { return n * (n - 1) / 2; }

// Row-major order over pairs (i,j), 0 <= i < j < n:
// (0,1),(0,2),...,(0,n-1),(1,2),...,(n-2,n-1).
inline int pair_index(int n, int i, int j) {
    return i * (n - 1) - i * (i - 1) / 2 + (j - i - 1);
}

inline std::pair<int, int> index_pair(int n, int k) {
    for (int i = 0; i < n - 1; ++i) {
        int row = n - 1 - i;
        if (k < row) return {i, i + 1 + k};
        k -= row;
    }
    throw DimensionError("triangular index out of range");
}

inline Rat dot(const std::vector<Rat>& a, const std::vector<Rat>& b) {
    Rat s = 0;
    for (std::size_t i = 0; i < a.size(); ++i) s += a[i] * b[i];
    return s;
}

inline Rat dot(const std::vector<Int>& a, const std::vector<Rat>& b) {
    Rat s = 0;
    for (std::size_t i = 0; i < a.size(); ++i) s += Rat(a[i]) * b[i];
    return s;
}

inline Int dot(const std::vector<Int>& a, const std::vector<Int>& b) {
    Int s = 0;
    for (std::size_t i = 0; i < a.size(); ++i) s += a[i] * b[i];
    return s;
}

// u in {-1,+1}^n under the identification u == -u; the stored representative
// always has signs[0] = +1.
struct SignVector {
    int n = 0;
    std::vector<int> signs;

    SignVector() = default;
    explicit SignVector(std::vector<int> s) : n(static_cast<int>(s.size())), signs(std::move(s)) {
        if (n < 1) throw InputError("sign vector needs at least one component");
        for (int v : signs)
            if (v != 1 && v != -1) throw InputError("sign vector entries must be +1 or -1");
        if (signs[0] == -1)
            for (int& v : signs) v = -v;
    }

    bool operator==(const SignVector& o) const = default;
};

// Lexicographic order with +1 before -1 (the enumeration order of vertices).
inline bool sign_lex_less(const SignVector& a, const SignVector& b) {
    for (int i = 0; i < a.n && i < b.n; ++i) {
        if (a.signs[i] != b.signs[i]) return a.signs[i] > b.signs[i];
    }
    return a.n < b.n;
}

inline SignVector componentwise_mul(const SignVector& a, const SignVector& b) {
    if (a.n != b.n) throw DimensionError("sign vector size mismatch");
    std::vector<int> s(a.n);
    for (int i = 0; i < a.n; ++i) s[i] = a.signs[i] * b.signs[i];
    return SignVector(std::move(s));
}

// A point of the supra-diagonal space: the tri_dim(n) entries above the
// diagonal of a symmetric n x n matrix, in pair_index order.
struct TriArray {
    int n = 0;
    std::vector<Rat> entries;

    TriArray() = default;
    TriArray(int n_, std::vector<Rat> e) : n(n_), entries(std::move(e)) {
        if (n < 1) throw InputError("triangular array needs n >= 1");
        if (static_cast<int>(entries.size()) != tri_dim(n))
            throw DimensionError("triangular array for n=" + std::to_string(n) + " needs " +
                                 std::to_string(tri_dim(n)) + " entries");
    }
    static TriArray zero(int n_) { return TriArray(n_, std::vector<Rat>(tri_dim(n_), Rat(0))); }

    const Rat& at(int i, int j) const { return entries[pair_index(n, i, j)]; }
    Rat& at(int i, int j) { return entries[pair_index(n, i, j)]; }

    bool in_unit_box() const {
        return std::all_of(entries.begin(), entries.end(),
                           [](const Rat& q) { return q >= -1 && q <= 1; });
    }

    bool operator==(const TriArray& o) const = default;
};

struct FullMatrix {
    int n = 0;
    std::vector<Rat> values; // row-major n x n

    FullMatrix() = default;
    explicit FullMatrix(int n_) : n(n_), values(static_cast<std::size_t>(n_) * n_, Rat(0)) {
        if (n < 1) throw InputError("matrix needs n >= 1");
    }
    FullMatrix(int n_, std::vector<Rat> v) : n(n_), values(std::move(v)) {
        if (n < 1) throw InputError("matrix needs n >= 1");
        if (values.size() != static_cast<std::size_t>(n) * n)
            throw DimensionError("matrix value count does not match n");
    }

    const Rat& at(int i, int j) const { return values[static_cast<std::size_t>(i) * n + j]; }
    Rat& at(int i, int j) { return values[static_cast<std::size_t>(i) * n + j]; }

    bool is_symmetric() const {
        for (int i = 0; i < n; ++i)
            for (int j = i + 1; j < n; ++j)
                if (at(i, j) != at(j, i)) return false;
        return true;
    }
    bool has_unit_diagonal() const {
        for (int i = 0; i < n; ++i)
            if (at(i, i) != 1) return false;
        return true;
    }
    bool has_zero_diagonal() const {
        for (int i = 0; i < n; ++i)
            if (at(i, i) != 0) return false;
        return true;
    }

    bool operator==(const FullMatrix& o) const = default;
};

struct IntVector {
    int n = 0;
    std::vector<Int> coords;

    IntVector() = default;
    explicit IntVector(std::vector<Int> c) : n(static_cast<int>(c.size())), coords(std::move(c)) {
        if (n < 1) throw InputError("integer vector needs at least one component");
    }

    bool operator==(const IntVector& o) const = default;
};

// Probability-weighted list of sign states; a constructive realisability witness.
struct Mixture {
    struct Atom {
        Rat weight;
        SignVector state;
    };
    std::vector<Atom> atoms;

    int n() const { return atoms.empty() ? 0 : atoms.front().state.n; }
};

// Empty string means valid; otherwise a description of the violation.
inline std::string mixture_problem(const Mixture& m) {
    if (m.atoms.empty()) return "mixture has no atoms";
    int n = m.atoms.front().state.n;
    Rat total = 0;
    for (const auto& a : m.atoms) {
        if (a.state.n != n) return "mixture atoms disagree on n";
        if (sgn(a.weight) <= 0) return "mixture weight not positive";
        total += a.weight;
    }
    if (total != 1) return "mixture weights sum to " + rat_to_string(total) + ", not 1";
    for (std::size_t i = 0; i < m.atoms.size(); ++i)
        for (std::size_t j = i + 1; j < m.atoms.size(); ++j)
            if (m.atoms[i].state == m.atoms[j].state) return "duplicate mixture atom";
    return "";
}

// Collapses repeated states in a raw atom list by summing their weights,
// keeping first-occurrence order. The result still has to satisfy the
// mixture invariants (positive weights, total exactly 1).
inline Mixture merge_atoms(const std::vector<Mixture::Atom>& atoms) {
    Mixture m;
    for (const auto& a : atoms) {
        bool found = false;
        for (auto& existing : m.atoms)
            if (existing.state == a.state) {
                existing.weight += a.weight;
                found = true;
                break;
            }
        if (!found) m.atoms.push_back(a);
    }
    std::string problem = mixture_problem(m);
    if (!problem.empty()) throw InputError("merge_atoms: " + problem);
    return m;
}

// Half-space {x : <x, normal> <= offset} in supra-diagonal coordinates.
// Facet normals are kept as coprime integers.
struct Facet {
    std::vector<Int> normal;
    Rat offset;

    bool operator==(const Facet& o) const = default;
};

// ---- elementary transforms ----

inline TriArray outer_tri(const SignVector& u) {
    TriArray t = TriArray::zero(u.n);
    for (int i = 0, k = 0; i < u.n; ++i)
        for (int j = i + 1; j < u.n; ++j, ++k) t.entries[k] = u.signs[i] * u.signs[j];
    return t;
}

inline std::vector<Int> outer_tri_int(const SignVector& u) {
    std::vector<Int> t(tri_dim(u.n));
    for (int i = 0, k = 0; i < u.n; ++i)
        for (int j = i + 1; j < u.n; ++j, ++k) t[k] = u.signs[i] * u.signs[j];
    return t;
}

// The switching transform: entry (i,j) becomes u_i u_j rho_ij. An involution,
// and a bijection of the vertex set.
inline TriArray switch_tri(const TriArray& rho, const SignVector& u) {
    if (rho.n != u.n) throw DimensionError("switch: size mismatch");
    TriArray t = rho;
    for (int i = 0, k = 0; i < u.n; ++i)
        for (int j = i + 1; j < u.n; ++j, ++k)
            if (u.signs[i] * u.signs[j] < 0) t.entries[k] = -t.entries[k];
    return t;
}

// Covariogram -> unit covariance, entrywise 1 - 4*gamma off the diagonal.
inline FullMatrix phi(const FullMatrix& gamma) {
    if (!gamma.is_symmetric()) throw InputError("phi: input not symmetric");
    if (!gamma.has_zero_diagonal()) throw InputError("phi: input diagonal not zero");
    FullMatrix rho(gamma.n);
    for (int i = 0; i < gamma.n; ++i) {
        rho.at(i, i) = 1;
        for (int j = 0; j < gamma.n; ++j)
            if (i != j) rho.at(i, j) = 1 - 4 * gamma.at(i, j);
    }
    return rho;
}

inline FullMatrix phi_inv(const FullMatrix& rho) {
    if (!rho.is_symmetric()) throw InputError("phi_inv: input not symmetric");
    if (!rho.has_unit_diagonal()) throw InputError("phi_inv: input diagonal not unit");
    FullMatrix gamma(rho.n);
    for (int i = 0; i < rho.n; ++i)
        for (int j = 0; j < rho.n; ++j)
            if (i != j) gamma.at(i, j) = (1 - rho.at(i, j)) / 4;
    return gamma;
}

inline TriArray embed(const FullMatrix& rho) {
    if (!rho.is_symmetric()) throw InputError("embed: input not symmetric");
    if (!rho.has_unit_diagonal()) throw InputError("embed: input diagonal not unit");
    TriArray t = TriArray::zero(rho.n);
    for (int i = 0, k = 0; i < rho.n; ++i)
        for (int j = i + 1; j < rho.n; ++j, ++k) t.entries[k] = rho.at(i, j);
    return t;
}

inline FullMatrix complete(const TriArray& t) {
    FullMatrix rho(t.n);
    for (int i = 0; i < t.n; ++i) rho.at(i, i) = 1;
    for (int i = 0, k = 0; i < t.n; ++i)
        for (int j = i + 1; j < t.n; ++j, ++k) {
            rho.at(i, j) = t.entries[k];
            rho.at(j, i) = t.entries[k];
        }
    return rho;
}

// Simultaneous index permutation: result_{ij} = rho_{perm(i),perm(j)}.
inline TriArray apply_permutation(const TriArray& rho, const std::vector<int>& perm) {
    if (static_cast<int>(perm.size()) != rho.n) throw DimensionError("permutation size mismatch");
    TriArray t = TriArray::zero(rho.n);
    for (int i = 0, k = 0; i < rho.n; ++i)
        for (int j = i + 1; j < rho.n; ++j, ++k) {
            int a = perm[i], b = perm[j];
            if (a > b) std::swap(a, b);
            t.entries[k] = rho.at(a, b);
        }
    return t;
}

} // namespace ucov
