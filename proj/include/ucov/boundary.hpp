#pragma once

#include <optional>
#include <variant>
#include <vector>

#include "ucov/core.hpp"
#include "ucov/linalg.hpp"

namespace ucov {

// Nontrivial lambda with complete(rho) * lambda = 0, exactly. The unit
// diagonal forces at least two nonzero components.
struct KernelWitness {
    std::vector<Rat> lambda;
};

namespace detail {

// Deterministic kernel representative: basis vectors normalized to lead with
// 1, lexicographically least returned; empty when the matrix has full rank.
inline std::optional<std::vector<Rat>> least_kernel_vector(RatMatrix rows, int cols) {
    RatMatrix basis = kernel_basis(std::move(rows), cols);
    if (basis.empty()) return std::nullopt;
    for (auto& v : basis) {
        for (const Rat& x : v)
            if (sgn(x) != 0) {
                Rat lead = x;
                for (Rat& y : v) y /= lead;
                break;
            }
    }
    std::size_t best = 0;
    for (std::size_t i = 1; i < basis.size(); ++i)
        if (lex_less(basis[i], basis[best])) best = i;
    return std::move(basis[best]);
}

} // namespace detail

// Exact null space of the unit-diagonal completion; nullopt means full rank.
inline std::optional<KernelWitness> kernel(const TriArray& rho) {
    FullMatrix m = complete(rho);
    RatMatrix rows(m.n, std::vector<Rat>(m.n));
    for (int i = 0; i < m.n; ++i)
        for (int j = 0; j < m.n; ++j) rows[i][j] = m.at(i, j);
    auto lambda = detail::least_kernel_vector(std::move(rows), m.n);
    if (!lambda) return std::nullopt;
    return KernelWitness{std::move(*lambda)};
}

// One-entry perturbation of a singular point that exits the cone of positive
// semidefinite matrices: with sigma = sign(lambda_i1 * lambda_i2) and
// perturbed_(i1,i2) = rho_(i1,i2) - sigma * eps, the quadratic form of the
// completion at lambda drops from 0 to -2 * eps * |lambda_i1 * lambda_i2|,
// so points arbitrarily close to rho are not realisable.
struct PerturbationWitness {
    TriArray base;
    Rat epsilon;
    int i1 = 0, i2 = 0;
    int sigma = 0;
    TriArray perturbed;
    Rat negativity_value;
};

inline Rat quad_form_at(const FullMatrix& m, const std::vector<Rat>& lam) {
    Rat s = 0;
    for (int i = 0; i < m.n; ++i)
        for (int j = 0; j < m.n; ++j) s += m.at(i, j) * lam[i] * lam[j];
    return s;
}

inline PerturbationWitness perturbation_witness(const TriArray& rho,
                                                const KernelWitness& kw, const Rat& eps,
                                                int i1 = -1, int i2 = -1) {
    if (sgn(eps) <= 0) throw InputError("perturbation: epsilon must be positive");
    if (static_cast<int>(kw.lambda.size()) != rho.n)
        throw DimensionError("perturbation: kernel witness has wrong length");
    FullMatrix m = complete(rho);
    for (int i = 0; i < m.n; ++i) {
        Rat row = 0;
        for (int j = 0; j < m.n; ++j) row += m.at(i, j) * kw.lambda[j];
        if (sgn(row) != 0) throw InputError("perturbation: lambda is not a kernel vector");
    }
    if (i1 < 0) {
        for (int i = 0; i < rho.n && i2 < 0; ++i) {
            if (sgn(kw.lambda[i]) == 0) continue;
            if (i1 < 0) i1 = i;
            else i2 = i;
        }
        if (i2 < 0) throw InputError("perturbation: lambda has fewer than two nonzeros");
    } else {
        if (i1 >= i2 || i2 >= rho.n) throw InputError("perturbation: bad index pair");
        if (sgn(kw.lambda[i1]) == 0 || sgn(kw.lambda[i2]) == 0)
            throw InputError("perturbation: lambda vanishes at a requested index");
    }

    PerturbationWitness w;
    w.base = rho;
    w.epsilon = eps;
    w.i1 = i1;
    w.i2 = i2;
    w.sigma = sgn(kw.lambda[i1] * kw.lambda[i2]);
    w.perturbed = rho;
    w.perturbed.at(i1, i2) -= w.sigma * eps;
    w.negativity_value = quad_form_at(complete(w.perturbed), kw.lambda);
    if (sgn(w.negativity_value) >= 0)
        throw std::logic_error("perturbation witness failed to go negative");
    return w;
}

// For k states u^1..u^k: when their sign matrix has a nontrivial kernel
// lambda (always, for k < n), every mixture X of these states satisfies
// sum lambda_j X_j = 0 a.s., so every mixed covariance is singular. When the
// sign matrix has full column rank, any full-support mixture is nonsingular
// and the uniform one is returned as a counterexample.
struct AllSingular {
    std::vector<Rat> lambda; // orthogonal to every given state
};
struct CounterexampleMixture {
    Mixture mixture;
};
using SimplexFaceResult = std::variant<AllSingular, CounterexampleMixture>;

inline SimplexFaceResult simplex_face_check(const std::vector<SignVector>& states) {
    if (states.empty()) throw InputError("simplex_face_check: no states");
    const int n = states.front().n;
    for (const SignVector& u : states)
        if (u.n != n) throw DimensionError("simplex_face_check: size mismatch");

    RatMatrix rows;
    for (const SignVector& u : states) {
        std::vector<Rat> r(n);
        for (int j = 0; j < n; ++j) r[j] = u.signs[j];
        rows.push_back(std::move(r));
    }
    if (auto lambda = detail::least_kernel_vector(std::move(rows), n))
        return AllSingular{std::move(*lambda)};

    std::vector<SignVector> distinct;
    for (const SignVector& u : states) {
        bool seen = false;
        for (const SignVector& v : distinct) seen = seen || v == u;
        if (!seen) distinct.push_back(u);
    }
    std::sort(distinct.begin(), distinct.end(), sign_lex_less);
    Mixture mix;
    const Rat w = make_rat(1, static_cast<int>(distinct.size()));
    for (const SignVector& u : distinct) mix.atoms.push_back({w, u});
    return CounterexampleMixture{std::move(mix)};
}

enum class BallClass { InInnerBall, BetweenBalls, OutsideOuterBall };

// Squared-norm comparison against the two certified radii: the rational
// inner bound (9/20)^2, strictly below the exact 2/pi^2, and the outer
// bound tri_dim(n). Ties classify inward.
inline BallClass ball_bounds_check(const TriArray& rho) {
    Rat norm2 = 0;
    for (const Rat& x : rho.entries) norm2 += x * x;
    if (norm2 <= make_rat(81, 400)) return BallClass::InInnerBall;
    if (norm2 <= tri_dim(rho.n)) return BallClass::BetweenBalls;
    return BallClass::OutsideOuterBall;
}

} // namespace ucov
