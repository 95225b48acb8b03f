#pragma once

#include <vector>

#include "ucov/rational.hpp"

namespace ucov {

/*
 * Exact elimination kernels shared by the decision modules.
 *
 * Rational paths use Gauss-Jordan with exact pivots; integer paths use
 * one-step Bareiss (fraction-free) elimination, whose divisions are exact
 * by construction, so ranks are decided without any rounding and without
 * rational blow-up in determinant chains.
 */

using RatMatrix = std::vector<std::vector<Rat>>;
using IntMatrix = std::vector<std::vector<Int>>;

// Reduced row echelon form in place. Returns the pivot columns (their count
// is the rank). Pivot choice: first row with a nonzero entry, scanning
// columns left to right — deterministic.
inline std::vector<int> rref(RatMatrix& m) {
    std::vector<int> pivots;
    if (m.empty()) return pivots;
    const int rows = static_cast<int>(m.size());
    const int cols = static_cast<int>(m[0].size());
    int r = 0;
    for (int c = 0; c < cols && r < rows; ++c) {
        int pr = -1;
        for (int i = r; i < rows; ++i)
            if (sgn(m[i][c]) != 0) { pr = i; break; }
        if (pr < 0) continue;
        std::swap(m[r], m[pr]);
        Rat piv = m[r][c];
        for (int j = c; j < cols; ++j) m[r][j] /= piv;
        for (int i = 0; i < rows; ++i) {
            if (i == r || sgn(m[i][c]) == 0) continue;
            Rat f = m[i][c];
            for (int j = c; j < cols; ++j) m[i][j] -= f * m[r][j];
        }
        pivots.push_back(c);
        ++r;
    }
    return pivots;
}

// Basis of the right kernel {x : m x = 0}, one vector per free column, in
// column order. `m` is consumed (reduced in place).
inline RatMatrix kernel_basis(RatMatrix m, int cols) {
    std::vector<int> pivots = rref(m);
    std::vector<bool> is_pivot(cols, false);
    for (int c : pivots) is_pivot[c] = true;
    RatMatrix basis;
    for (int f = 0; f < cols; ++f) {
        if (is_pivot[f]) continue;
        std::vector<Rat> x(cols, Rat(0));
        x[f] = 1;
        for (std::size_t r = 0; r < pivots.size(); ++r) x[pivots[r]] = -m[r][f];
        basis.push_back(std::move(x));
    }
    return basis;
}

inline int rat_rank(RatMatrix m) { return static_cast<int>(rref(m).size()); }

// Rank of an integer matrix by fraction-free (Bareiss) elimination.
inline int int_rank(IntMatrix m) {
    if (m.empty()) return 0;
    const int rows = static_cast<int>(m.size());
    const int cols = static_cast<int>(m[0].size());
    int r = 0;
    Int prev = 1;
    for (int c = 0; c < cols && r < rows; ++c) {
        int pr = -1;
        for (int i = r; i < rows; ++i)
            if (sgn(m[i][c]) != 0) { pr = i; break; }
        if (pr < 0) continue;
        std::swap(m[r], m[pr]);
        for (int i = r + 1; i < rows; ++i) {
            for (int j = c + 1; j < cols; ++j) {
                m[i][j] = (m[i][j] * m[r][c] - m[i][c] * m[r][j]) / prev;
            }
            m[i][c] = 0;
        }
        prev = m[r][c];
        ++r;
    }
    return r;
}

// Dimension of the affine hull of a point set (-1 for an empty set).
inline int affine_dim(const IntMatrix& points) {
    if (points.empty()) return -1;
    IntMatrix diffs;
    diffs.reserve(points.size() - 1);
    for (std::size_t i = 1; i < points.size(); ++i) {
        std::vector<Int> row(points[i].size());
        for (std::size_t j = 0; j < row.size(); ++j) row[j] = points[i][j] - points[0][j];
        diffs.push_back(std::move(row));
    }
    return int_rank(std::move(diffs));
}

// Scales a rational vector to coprime integers (positive multiple).
inline std::vector<Int> scale_to_coprime_ints(const std::vector<Rat>& v) {
    Int l = 1;
    for (const Rat& q : v) l = int_lcm(l, q.get_den());
    std::vector<Int> w(v.size());
    for (std::size_t i = 0; i < v.size(); ++i) w[i] = Int(v[i].get_num() * (l / v[i].get_den()));
    reduce_by_gcd(w);
    return w;
}

// Integer normal of the hyperplane through d affinely independent points of
// Z^d: the one-dimensional kernel of the difference matrix, scaled coprime.
inline std::vector<Int> hyperplane_normal(const IntMatrix& points) {
    const int d = static_cast<int>(points[0].size());
    RatMatrix diffs;
    diffs.reserve(points.size() - 1);
    for (std::size_t i = 1; i < points.size(); ++i) {
        std::vector<Rat> row(d);
        for (int j = 0; j < d; ++j) row[j] = Rat(points[i][j] - points[0][j]);
        diffs.push_back(std::move(row));
    }
    RatMatrix basis = kernel_basis(std::move(diffs), d);
    if (basis.size() != 1)
        throw InputError("hyperplane_normal: points are not affinely independent");
    return scale_to_coprime_ints(basis[0]);
}

} // namespace ucov
