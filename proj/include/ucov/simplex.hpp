#pragma once

#include <algorithm>
#include <stdexcept>
#include <utility>
#include <vector>

#include "ucov/rational.hpp"

namespace ucov {

/*
 * Exact phase-1 simplex for the feasibility system
 *
 *     A x = b,  x >= 0
 *
 * over the rationals. Artificial variables seed the basis; Bland's rule
 * (lowest eligible index, applied to every column uniformly) guarantees
 * termination without any perturbation. When the system is infeasible the
 * optimal dual of the phase-1 objective is a Farkas vector y with
 * y^T A_j <= 0 for every column j and y^T b > 0, read off the final
 * reduced costs of the artificial columns.
 */

struct Phase1Result {
    bool feasible = false;
    // Feasible: sparse basic solution, (column, positive value) pairs.
    std::vector<std::pair<int, Rat>> support;
    // Infeasible: Farkas certificate, one multiplier per row.
    std::vector<Rat> farkas;
};

inline Phase1Result phase1_feasibility(const std::vector<std::vector<Rat>>& a,
                                       const std::vector<Rat>& b) {
    const int m = static_cast<int>(a.size());
    const int n = m > 0 ? static_cast<int>(a[0].size()) : 0;
    const int total = n + m;   // real columns, then one artificial per row
    const int rhs = total;

    // Flip rows with negative right-hand side so the artificial basis is feasible.
    std::vector<int> flip(m, 1);
    std::vector<std::vector<Rat>> t(m + 1, std::vector<Rat>(total + 1, Rat(0)));
    for (int i = 0; i < m; ++i) {
        if (sgn(b[i]) < 0) flip[i] = -1;
        for (int j = 0; j < n; ++j) t[i][j] = flip[i] * a[i][j];
        t[i][n + i] = 1;
        t[i][rhs] = flip[i] * b[i];
    }
    // Objective row: reduced costs of min sum(artificials); cell [rhs] holds -objective.
    for (int j = 0; j < n; ++j) {
        Rat s = 0;
        for (int i = 0; i < m; ++i) s += t[i][j];
        t[m][j] = -s;
    }
    {
        Rat s = 0;
        for (int i = 0; i < m; ++i) s += t[i][rhs];
        t[m][rhs] = -s;
    }

    std::vector<int> basis(m);
    for (int i = 0; i < m; ++i) basis[i] = n + i;

    for (;;) {
        int enter = -1;
        for (int j = 0; j < total; ++j)
            if (sgn(t[m][j]) < 0) { enter = j; break; }
        if (enter < 0) break;

        int leave = -1;
        Rat best;
        for (int i = 0; i < m; ++i) {
            if (sgn(t[i][enter]) <= 0) continue;
            Rat ratio = t[i][rhs] / t[i][enter];
            if (leave < 0 || ratio < best || (ratio == best && basis[i] < basis[leave])) {
                best = ratio;
                leave = i;
            }
        }
        if (leave < 0) // the phase-1 objective is bounded below by zero
            throw std::logic_error("phase-1 ratio test found no pivot");
        Rat piv = t[leave][enter];
        for (int j = 0; j <= total; ++j) t[leave][j] /= piv;
        for (int i = 0; i <= m; ++i) {
            if (i == leave || sgn(t[i][enter]) == 0) continue;
            Rat f = t[i][enter];
            for (int j = 0; j <= total; ++j) t[i][j] -= f * t[leave][j];
        }
        basis[leave] = enter;
    }

    Phase1Result out;
    Rat objective = -t[m][rhs];
    if (sgn(objective) == 0) {
        out.feasible = true;
        for (int i = 0; i < m; ++i)
            if (basis[i] < n && sgn(t[i][rhs]) > 0)
                out.support.emplace_back(basis[i], t[i][rhs]);
        std::sort(out.support.begin(), out.support.end(),
                  [](const auto& x, const auto& y) { return x.first < y.first; });
    } else {
        out.farkas.resize(m);
        for (int i = 0; i < m; ++i) {
            Rat y = 1 - t[m][n + i]; // c_art - reduced cost
            out.farkas[i] = flip[i] * y;
        }
    }
    return out;
}

} // namespace ucov
