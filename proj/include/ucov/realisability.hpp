#pragma once

#include <stdexcept>
#include <variant>
#include <vector>

#include "ucov/core.hpp"
#include "ucov/linalg.hpp"
#include "ucov/simplex.hpp"
#include "ucov/vertices.hpp"

namespace ucov {

inline constexpr int kDefaultLpCap = 13;

struct RealisableCert {
    Mixture mixture;
};

// Witness hyperplane: <rho, direction> > threshold >= <v, direction> for
// every vertex v. The direction is scaled to coprime integers and the
// threshold tightened to the exact maximum over the vertex set.
struct SeparatedCert {
    TriArray direction;
    Rat threshold;
};

using Certificate = std::variant<RealisableCert, SeparatedCert>;

inline bool is_realisable(const Certificate& c) {
    return std::holds_alternative<RealisableCert>(c);
}

inline TriArray reconstruct(const Mixture& m) {
    std::string problem = mixture_problem(m);
    if (!problem.empty()) throw InputError("reconstruct: " + problem);
    TriArray t = TriArray::zero(m.n());
    for (const auto& atom : m.atoms) {
        const std::vector<Int> tri = outer_tri_int(atom.state);
        for (std::size_t k = 0; k < tri.size(); ++k) t.entries[k] += atom.weight * Rat(tri[k]);
    }
    return t;
}

// Independent checker: dot products and exact comparisons only, no LP state.
inline bool verify_certificate(const TriArray& rho, const Certificate& c,
                               int cap = kDefaultVertexCap) {
    if (const auto* r = std::get_if<RealisableCert>(&c)) {
        if (!mixture_problem(r->mixture).empty()) return false;
        if (r->mixture.n() != rho.n) return false;
        return reconstruct(r->mixture) == rho;
    }
    const auto& s = std::get<SeparatedCert>(c);
    if (s.direction.n != rho.n) return false;
    Rat lhs = dot(s.direction.entries, rho.entries);
    if (!(lhs > s.threshold)) return false;
    bool ok = true;
    for_each_vertex(
        rho.n,
        [&](std::uint64_t, const SignVector&, const std::vector<Int>& tri) {
            if (ok && dot(tri, s.direction.entries) > s.threshold) ok = false;
        },
        cap);
    return ok;
}

// Decides membership of rho in the polytope by exact feasibility of
// { p >= 0, sum p = 1, sum_u p_u (u (.) u) = rho } over all canonical
// vertices u, and converts the phase-1 outcome into a checkable witness
// either way. The basic feasible solution has at most tri_dim(n)+1 atoms.
inline Certificate check_realisable(const TriArray& rho, int lp_cap = kDefaultLpCap) {
    const int n = rho.n;
    if (n > lp_cap)
        throw CapExceeded("membership LP capped at n <= " + std::to_string(lp_cap));
    if (n == 1) {
        Mixture m;
        m.atoms.push_back({Rat(1), SignVector({1})});
        return RealisableCert{std::move(m)};
    }
    const int d = tri_dim(n);

    // An entry outside [-1,1] is separated by a coordinate hyperplane.
    for (int k = 0; k < d; ++k) {
        if (rho.entries[k] > 1 || rho.entries[k] < -1) {
            TriArray dir = TriArray::zero(n);
            dir.entries[k] = rho.entries[k] > 1 ? 1 : -1;
            Certificate c = SeparatedCert{std::move(dir), Rat(1)};
            if (!verify_certificate(rho, c)) throw std::logic_error("invalid box certificate");
            return c;
        }
    }

    const std::uint64_t cols = vertex_count(n);
    std::vector<std::vector<Rat>> a(d + 1, std::vector<Rat>(cols, Rat(0)));
    for_each_vertex(n, [&](std::uint64_t k, const SignVector&, const std::vector<Int>& tri) {
        for (int r = 0; r < d; ++r) a[r][k] = Rat(tri[r]);
        a[d][k] = 1;
    });
    std::vector<Rat> b = rho.entries;
    b.push_back(Rat(1));

    Phase1Result lp = phase1_feasibility(a, b);
    Certificate cert;
    if (lp.feasible) {
        Mixture m;
        for (const auto& [col, weight] : lp.support)
            m.atoms.push_back({weight, sign_vector_from_index(n, col)});
        cert = RealisableCert{std::move(m)};
    } else {
        // Farkas vector (mu, t): <mu, v> + t <= 0 on vertices, <mu, rho> + t > 0.
        std::vector<Rat> mu(lp.farkas.begin(), lp.farkas.begin() + d);
        Rat threshold = -lp.farkas[d];
        std::vector<Int> mu_int = scale_to_coprime_ints(mu);
        // Recover the positive scale factor to carry the threshold along.
        Rat scale;
        for (int k = 0; k < d; ++k)
            if (sgn(mu[k]) != 0) { scale = Rat(mu_int[k]) / mu[k]; break; }
        threshold *= scale;
        TriArray dir = TriArray::zero(n);
        for (int k = 0; k < d; ++k) dir.entries[k] = Rat(mu_int[k]);
        // Tighten to the supporting value.
        VertexMin vm = vertex_min(n, [&] {
            std::vector<Rat> neg(d);
            for (int k = 0; k < d; ++k) neg[k] = -dir.entries[k];
            return neg;
        }());
        threshold = -vm.value;
        cert = SeparatedCert{std::move(dir), std::move(threshold)};
    }
    if (!verify_certificate(rho, cert))
        throw std::logic_error("check_realisable produced an invalid certificate");
    return cert;
}

// Reduces a mixture to at most tri_dim(n)+1 atoms without changing the
// reconstructed point: repeatedly find an affine dependency among the atom
// points and shift weight along it until an atom reaches zero.
inline Mixture caratheodory_reduce(const Mixture& input) {
    std::string problem = mixture_problem(input);
    if (!problem.empty()) throw InputError("caratheodory_reduce: " + problem);
    Mixture m = input;
    const int n = m.n();
    const int bound = tri_dim(n) + 1;

    while (static_cast<int>(m.atoms.size()) > bound) {
        const int count = static_cast<int>(m.atoms.size());
        RatMatrix sys(tri_dim(n) + 1, std::vector<Rat>(count));
        for (int k = 0; k < count; ++k) {
            const std::vector<Int> tri = outer_tri_int(m.atoms[k].state);
            for (int r = 0; r < tri_dim(n); ++r) sys[r][k] = Rat(tri[r]);
            sys[tri_dim(n)][k] = 1;
        }
        RatMatrix kernel = kernel_basis(std::move(sys), count);
        if (kernel.empty()) throw std::logic_error("expected affine dependency");
        const std::vector<Rat>& c = kernel.front();

        // Both directions along the dependency are valid; each zeroes out a
        // different atom set. Prefer the one removing the lexicographically
        // smallest state.
        auto ratio_step = [&](int dir_sign) {
            Rat step;
            std::vector<int> zeroed;
            bool first = true;
            for (int k = 0; k < count; ++k) {
                Rat ck = dir_sign * c[k];
                if (sgn(ck) <= 0) continue;
                Rat r = m.atoms[k].weight / ck;
                if (first || r < step) {
                    step = r;
                    zeroed.assign(1, k);
                    first = false;
                } else if (r == step) {
                    zeroed.push_back(k);
                }
            }
            return std::make_pair(step, zeroed);
        };
        auto [step_pos, zero_pos] = ratio_step(+1);
        auto [step_neg, zero_neg] = ratio_step(-1);
        auto lex_min_state = [&](const std::vector<int>& ks) {
            const SignVector* best = nullptr;
            for (int k : ks)
                if (!best || sign_lex_less(m.atoms[k].state, *best)) best = &m.atoms[k].state;
            return best;
        };
        const SignVector* cand_pos = lex_min_state(zero_pos);
        const SignVector* cand_neg = lex_min_state(zero_neg);
        int dir_sign = sign_lex_less(*cand_pos, *cand_neg) ? +1 : -1;
        Rat step = dir_sign > 0 ? step_pos : step_neg;

        Mixture next;
        for (int k = 0; k < count; ++k) {
            Rat w = m.atoms[k].weight - step * (dir_sign * c[k]);
            if (sgn(w) > 0) next.atoms.push_back({std::move(w), m.atoms[k].state});
        }
        m = std::move(next);
    }
    return m;
}

} // namespace ucov
