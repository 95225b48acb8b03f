#pragma once

#include <algorithm>
#include <cstdint>
#include <functional>
#include <optional>
#include <vector>

#include "ucov/core.hpp"

namespace ucov {

inline constexpr std::uint64_t kDefaultScreenCap = 1u << 24;

// The quadratic form sum_{i,j} rho_ij e_i e_j, full double sum including the
// diagonal, evaluated exactly.
inline Rat quad_form(const FullMatrix& rho, const IntVector& e) {
    if (rho.n != e.n) throw DimensionError("quad_form: size mismatch");
    Rat s = 0;
    for (int i = 0; i < rho.n; ++i)
        for (int j = 0; j < rho.n; ++j) s += rho.at(i, j) * Rat(e.coords[i] * e.coords[j]);
    return s;
}

struct EnResult {
    bool member = false;
    std::vector<int> signing; // when member: sum_i signing[i] * e_i == 1
};

// Membership in the index class of the screening inequalities: e belongs iff
// some signing u in {-1,+1}^n has sum u_i e_i = 1. Equivalent subset-sum
// instance: with T = sum e_i odd, find S with sum_{i in S} e_i = (T-1)/2
// (S is the set of indices signed -1). Solved meet-in-the-middle, exact.
inline EnResult in_EN(const IntVector& e) {
    const int n = e.n;
    if (n > 40) throw CapExceeded("in_EN capped at n <= 40");
    Int total = 0;
    for (const Int& c : e.coords) total += c;
    if (mpz_odd_p(total.get_mpz_t()) == 0) return {};
    Int target = (total - 1) / 2;

    const int nl = n / 2;
    const int nr = n - nl;
    auto half_sums = [&](int off, int len) {
        std::vector<std::pair<Int, std::uint64_t>> out;
        out.reserve(std::size_t(1) << len);
        for (std::uint64_t mask = 0; mask < (std::uint64_t(1) << len); ++mask) {
            Int s = 0;
            for (int i = 0; i < len; ++i)
                if ((mask >> i) & 1) s += e.coords[off + i];
            out.emplace_back(std::move(s), mask);
        }
        return out;
    };
    auto left = half_sums(0, nl);
    auto right = half_sums(nl, nr);
    std::sort(right.begin(), right.end(),
              [](const auto& a, const auto& b) { return a.first < b.first; });
    for (const auto& [ls, lmask] : left) {
        Int need = target - ls;
        auto it = std::lower_bound(right.begin(), right.end(), need,
                                   [](const auto& a, const Int& v) { return a.first < v; });
        if (it == right.end() || it->first != need) continue;
        EnResult r;
        r.member = true;
        r.signing.assign(n, 1);
        for (int i = 0; i < nl; ++i)
            if ((lmask >> i) & 1) r.signing[i] = -1;
        for (int i = 0; i < nr; ++i)
            if ((it->second >> i) & 1) r.signing[nl + i] = -1;
        return r;
    }
    return {};
}

// Streams every integer vector with odd coordinate sum and max-norm <= bound,
// canonicalized so the first nonzero coordinate is positive (e and -e induce
// the same inequality). Order: increasing max-norm, then lexicographic with
// entries compared numerically.
inline void for_each_odd_vector(int n, int bound,
                                const std::function<void(const IntVector&)>& fn,
                                std::uint64_t cap = kDefaultScreenCap) {
    if (n < 1 || bound < 1) throw InputError("odd-vector enumeration needs n >= 1, bound >= 1");
    double size = 1;
    for (int i = 0; i < n; ++i) size *= 2.0 * bound + 1.0;
    if (size > static_cast<double>(cap))
        throw CapExceeded("odd-vector enumeration exceeds cap of " + std::to_string(cap) +
                          " vectors");

    std::vector<long> v(n);
    for (int m = 1; m <= bound; ++m) {
        // Vectors whose max-norm is exactly m, in lexicographic order.
        auto rec = [&](auto&& self, int pos, bool hit_m, int first_nonzero_sign,
                       long parity) -> void {
            if (pos == n) {
                if (!hit_m || first_nonzero_sign <= 0 || (parity & 1) == 0) return;
                std::vector<Int> coords(n);
                for (int i = 0; i < n; ++i) coords[i] = v[i];
                fn(IntVector(std::move(coords)));
                return;
            }
            for (long x = -m; x <= m; ++x) {
                v[pos] = x;
                int fs = first_nonzero_sign;
                if (fs == 0 && x != 0) fs = x > 0 ? 1 : -1;
                if (fs < 0) continue; // canonical representative only
                self(self, pos + 1, hit_m || x == m || x == -m, fs, parity + x);
            }
        };
        rec(rec, 0, false, 0, 0);
    }
}

inline std::vector<IntVector> enumerate_odd(int n, int bound,
                                            std::uint64_t cap = kDefaultScreenCap) {
    std::vector<IntVector> out;
    for_each_odd_vector(n, bound, [&](const IntVector& e) { out.push_back(e); }, cap);
    return out;
}

struct ScreenReport {
    enum class Verdict { Pass, Violation };
    Verdict verdict = Verdict::Pass;
    std::optional<IntVector> witness; // present iff Violation: the minimizing vector
    Rat value;                        // minimum quadratic form value seen
    int bound_used = 0;
    bool en_only = false;
};

// Necessary-condition screen: Pass iff quad_form(rho, e) >= 1 for every
// enumerated e (odd-sum up to the bound, optionally restricted to the
// subset-sum class). A Pass is only a semi-decision; a Violation is a hard
// disproof of realisability and reports the global minimizer at this bound.
inline ScreenReport screen(const FullMatrix& rho, int bound, bool restrict_to_en = false,
                           std::uint64_t cap = kDefaultScreenCap) {
    if (!rho.is_symmetric()) throw InputError("screen: input not symmetric");
    if (!rho.has_unit_diagonal()) throw InputError("screen: input diagonal not unit");
    ScreenReport report;
    report.bound_used = bound;
    report.en_only = restrict_to_en;
    bool first = true;
    for_each_odd_vector(
        rho.n, bound,
        [&](const IntVector& e) {
            if (restrict_to_en && !in_EN(e).member) return;
            Rat q = quad_form(rho, e);
            if (first || q < report.value) {
                report.value = q;
                report.witness = e;
                first = false;
            }
        },
        cap);
    if (first || report.value >= 1) {
        report.verdict = ScreenReport::Verdict::Pass;
        report.witness.reset();
    } else {
        report.verdict = ScreenReport::Verdict::Violation;
    }
    return report;
}

} // namespace ucov
