#pragma once

#include <bit>
#include <cstdint>
#include <functional>
#include <string>
#include <unordered_set>
#include <vector>

#include "ucov/linalg.hpp"

namespace ucov {

/*
 * Incremental (beneath-beyond) convex hull for a small set of integer points
 * in general dimension, exact arithmetic throughout.
 *
 * The input points must all be extreme (true for polytope vertex sets) and
 * there may be at most 64 of them, so facet incidence sets fit in one word.
 * Facets are maintained non-simplicially: each carries its exact supporting
 * hyperplane (coprime integer outer normal, integer offset) and the set of
 * inserted points lying on it.
 *
 * Insertion of p classifies every facet by s = <p,normal> - offset:
 * visible (s > 0) facets are discarded, tangent (s = 0) facets absorb p,
 * and each horizon ridge — a (d-2)-face shared by a visible facet F and a
 * hidden facet G — spawns the facet through the ridge and p. Ridges are
 * recognized combinatorially: V(F) & V(G) is a ridge iff no third facet's
 * vertex set contains it. The new hyperplane is the positive combination
 *     normal = s_F * normal_G - s_G * normal_F
 * (likewise for offsets), which contains the ridge and p and keeps the
 * outer orientation; it is then reduced to coprime integers.
 */

struct HullFacet {
    std::vector<Int> normal;
    Int offset;
    std::uint64_t incident = 0; // mask over point indices, inserted points only
};

struct HullState {
    int dim = 0;
    std::vector<int> order; // insertion order: seed first, rest ascending
    int next = 0;           // points consumed so far (index into order)
    std::vector<HullFacet> facets;
};

namespace detail {

inline std::string facet_key(const HullFacet& f) {
    std::string k = f.offset.get_str();
    for (const Int& x : f.normal) {
        k += ':';
        k += x.get_str();
    }
    return k;
}

inline std::uint64_t incident_mask(const std::vector<std::vector<Int>>& pts,
                                   const std::vector<int>& order, int next,
                                   const std::vector<Int>& normal, const Int& offset) {
    std::uint64_t mask = 0;
    for (int t = 0; t < next; ++t) {
        int idx = order[t];
        if (dot(pts[idx], normal) == offset) mask |= std::uint64_t(1) << idx;
    }
    return mask;
}

// Greedy affinely independent subset of size dim+1, scanning in index order.
inline std::vector<int> affine_seed(const std::vector<std::vector<Int>>& pts, int dim) {
    std::vector<int> seed{0};
    RatMatrix echelon; // reduced rows of differences, each with a known pivot
    std::vector<int> pivot_col;
    for (int i = 1; i < static_cast<int>(pts.size()) && static_cast<int>(seed.size()) < dim + 1;
         ++i) {
        std::vector<Rat> row(dim);
        for (int j = 0; j < dim; ++j) row[j] = Rat(pts[i][j] - pts[0][j]);
        for (std::size_t r = 0; r < echelon.size(); ++r) {
            const Rat& f = row[pivot_col[r]];
            if (sgn(f) == 0) continue;
            Rat factor = f;
            for (int j = 0; j < dim; ++j) row[j] -= factor * echelon[r][j];
        }
        int pc = -1;
        for (int j = 0; j < dim; ++j)
            if (sgn(row[j]) != 0) { pc = j; break; }
        if (pc < 0) continue;
        Rat piv = row[pc];
        for (int j = 0; j < dim; ++j) row[j] /= piv;
        echelon.push_back(std::move(row));
        pivot_col.push_back(pc);
        seed.push_back(i);
    }
    if (static_cast<int>(seed.size()) != dim + 1)
        throw InputError("hull: input points do not span the space");
    return seed;
}

} // namespace detail

inline HullState hull_init(const std::vector<std::vector<Int>>& pts) {
    if (pts.empty()) throw InputError("hull: no points");
    if (pts.size() > 64) throw CapExceeded("hull: at most 64 points supported");
    const int dim = static_cast<int>(pts[0].size());
    if (dim < 1) throw InputError("hull: dimension must be >= 1");

    HullState st;
    st.dim = dim;
    std::vector<int> seed = detail::affine_seed(pts, dim);
    std::vector<bool> in_seed(pts.size(), false);
    for (int s : seed) in_seed[s] = true;
    st.order = seed;
    for (int i = 0; i < static_cast<int>(pts.size()); ++i)
        if (!in_seed[i]) st.order.push_back(i);
    st.next = dim + 1;

    // Initial simplex: one facet per omitted seed point, oriented outward.
    for (int omit = 0; omit <= dim; ++omit) {
        IntMatrix face_pts;
        for (int s = 0; s <= dim; ++s)
            if (s != omit) face_pts.push_back(pts[seed[s]]);
        HullFacet f;
        f.normal = hyperplane_normal(face_pts);
        f.offset = dot(face_pts[0], f.normal);
        Int s = dot(pts[seed[omit]], f.normal) - f.offset;
        if (sgn(s) > 0) {
            for (Int& x : f.normal) x = -x;
            f.offset = -f.offset;
        }
        f.incident = detail::incident_mask(pts, st.order, st.next, f.normal, f.offset);
        st.facets.push_back(std::move(f));
    }
    return st;
}

// Inserts the next point of the insertion order.
inline void hull_step(const std::vector<std::vector<Int>>& pts, HullState& st) {
    const int d = st.dim;
    const int p_idx = st.order[st.next];
    const std::vector<Int>& p = pts[p_idx];
    const std::uint64_t p_bit = std::uint64_t(1) << p_idx;
    const std::size_t nf = st.facets.size();

    std::vector<Int> s(nf);
    bool any_visible = false;
    for (std::size_t i = 0; i < nf; ++i) {
        s[i] = dot(p, st.facets[i].normal) - st.facets[i].offset;
        if (sgn(s[i]) > 0) any_visible = true;
    }
    if (!any_visible) {
        for (std::size_t i = 0; i < nf; ++i)
            if (sgn(s[i]) == 0) st.facets[i].incident |= p_bit;
        ++st.next;
        return;
    }

    std::vector<std::size_t> visible, hidden;
    for (std::size_t i = 0; i < nf; ++i) {
        if (sgn(s[i]) > 0) visible.push_back(i);
        else if (sgn(s[i]) < 0) hidden.push_back(i);
    }

    std::vector<HullFacet> created;
    std::unordered_set<std::string> seen;
    for (std::size_t f : visible) {
        for (std::size_t g : hidden) {
            std::uint64_t common = st.facets[f].incident & st.facets[g].incident;
            if (std::popcount(common) < d - 1) continue;
            bool ridge = true;
            for (std::size_t h = 0; h < nf && ridge; ++h) {
                if (h == f || h == g) continue;
                if ((st.facets[h].incident & common) == common) ridge = false;
            }
            if (!ridge) continue;

            HullFacet nf_new;
            nf_new.normal.resize(d);
            for (int j = 0; j < d; ++j)
                nf_new.normal[j] = s[f] * st.facets[g].normal[j] - s[g] * st.facets[f].normal[j];
            nf_new.offset = s[f] * st.facets[g].offset - s[g] * st.facets[f].offset;
            Int gcd_all = 0;
            for (const Int& x : nf_new.normal) gcd_all = int_gcd(gcd_all, x);
            if (gcd_all == 0) throw std::logic_error("hull: zero combination normal");
            if (gcd_all > 1) {
                for (Int& x : nf_new.normal) x /= gcd_all;
                if (!mpz_divisible_p(nf_new.offset.get_mpz_t(), gcd_all.get_mpz_t()))
                    throw std::logic_error("hull: offset not divisible by normal gcd");
                nf_new.offset /= gcd_all;
            }
            if (!seen.insert(detail::facet_key(nf_new)).second) continue;
            nf_new.incident =
                detail::incident_mask(pts, st.order, st.next, nf_new.normal, nf_new.offset) |
                p_bit;
            created.push_back(std::move(nf_new));
        }
    }

    std::vector<HullFacet> next_facets;
    next_facets.reserve(hidden.size() + created.size() + 8);
    for (std::size_t i = 0; i < nf; ++i) {
        if (sgn(s[i]) > 0) continue;
        if (sgn(s[i]) == 0) st.facets[i].incident |= p_bit;
        next_facets.push_back(std::move(st.facets[i]));
    }
    for (HullFacet& f : created) next_facets.push_back(std::move(f));
    st.facets = std::move(next_facets);
    ++st.next;
}

// Runs the hull to completion. `on_step` (optional) fires after every
// insertion with the current state, for checkpointing long runs.
inline std::vector<HullFacet> hull_run(
    const std::vector<std::vector<Int>>& pts, HullState& st,
    const std::function<void(const HullState&)>& on_step = nullptr) {
    while (st.next < static_cast<int>(st.order.size())) {
        hull_step(pts, st);
        if (on_step) on_step(st);
    }
    std::sort(st.facets.begin(), st.facets.end(), [](const HullFacet& a, const HullFacet& b) {
        if (a.normal != b.normal) return lex_less(a.normal, b.normal);
        return a.offset < b.offset;
    });
    return st.facets;
}

// Rebuilds a state from a checkpoint: the facet list after `steps` points
// were consumed. Incidence masks are recomputed from the points.
inline HullState hull_resume(const std::vector<std::vector<Int>>& pts,
                             std::vector<HullFacet> facets, int steps) {
    HullState st = hull_init(pts);
    if (steps < st.next || steps > static_cast<int>(st.order.size()))
        throw InputError("hull_resume: bad step count");
    st.next = steps;
    st.facets = std::move(facets);
    for (HullFacet& f : st.facets)
        f.incident = detail::incident_mask(pts, st.order, st.next, f.normal, f.offset);
    return st;
}

inline std::vector<HullFacet> convex_hull_facets(const std::vector<std::vector<Int>>& pts) {
    HullState st = hull_init(pts);
    return hull_run(pts, st);
}

} // namespace ucov
