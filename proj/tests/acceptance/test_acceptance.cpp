// Acceptance suite: end-to-end checks of the toolkit's headline claims, one
// test case per criterion, each printing a single PASS/FAIL line.

#include <catch2/catch.hpp>

#include <cstdio>
#include <cstdlib>
#include <map>

#include "../test_util.hpp"
#include "ucov/boundary.hpp"
#include "ucov/facets.hpp"
#include "ucov/json_io.hpp"
#include "ucov/screening.hpp"
#include "ucov/realisability.hpp"

using namespace ucov;

namespace {

struct Criterion {
    int num;
    const char* name;
    bool ok = true;
    ~Criterion() {
        std::printf("ACCEPTANCE %d (%s): %s\n", num, name, ok ? "PASS" : "FAIL");
        std::fflush(stdout);
    }
};

#define ACC(c, expr)            \
    do {                        \
        bool acc_r = (expr);    \
        (c).ok &= acc_r;        \
        CHECK(acc_r);           \
    } while (0)

const HRep& hrep(int n) {
    static std::map<int, HRep> cache;
    auto it = cache.find(n);
    if (it == cache.end()) it = cache.emplace(n, enumerate_facets(n)).first;
    return it->second;
}

std::vector<Int> tau() {
    std::vector<long> raw{-2, 1, 0, 1, 1, 1, -2, 1, -2, -2, -3,
                          -1, 1, 1, 2, -1, -1, -2, 1, 2, 2};
    std::vector<Int> v;
    for (long x : raw) v.emplace_back(x);
    return v;
}

} // namespace

TEST_CASE("criterion 1: facet counts", "[acceptance]") {
    Criterion c{1, "facet counts 4/16/56/368"};
    ACC(c, hrep(3).facets.size() == 4);
    ACC(c, hrep(4).facets.size() == 16);
    ACC(c, hrep(5).facets.size() == 56);
    ACC(c, hrep(6).facets.size() == 368);
    // every reported facet is supporting with incidence of affine codimension 1
    for (int n = 3; n <= 6; ++n)
        for (const Facet& f : hrep(n).facets) {
            ACC(c, verify_facet(n, f.normal, f.offset));
            if (!c.ok) return;
        }
}

// Optional long-running criterion, excluded from the default run:
//   ./ucov_acceptance "[n7]"
// enumerates all facets for n = 7 (a few minutes) and checks the count.
TEST_CASE("optional: n=7 facet count", "[.][n7]") {
    Criterion c{1, "facet count 116764 at n=7 (optional)"};
    HRep h = enumerate_facets(7);
    ACC(c, h.facets.size() == 116764);
}

TEST_CASE("criterion 2: every facet is a screening inequality", "[acceptance]") {
    Criterion c{2, "facet normals decompose with integer vectors"};
    for (int n = 3; n <= 6; ++n) {
        const HRep& h = hrep(n);
        for (const Facet& f : h.facets) {
            auto e = screening_form(n, f); // integer witness + class membership + offset
            ACC(c, e.has_value());
            if (!e) break;
        }
    }
}

TEST_CASE("criterion 3: the seven-point counterexample facet", "[acceptance]") {
    Criterion c{3, "n=7 facet with no product form"};
    // The published array attains its minimum on the facet; the outer-normal
    // form of the same inequality is its negation.
    std::vector<Int> printed = tau();
    std::vector<Int> outer(printed.size());
    for (std::size_t i = 0; i < printed.size(); ++i) outer[i] = -printed[i];

    // supporting value computed over all 64 vertices
    Rat offset;
    bool first = true;
    IntMatrix incident;
    for_each_vertex(7, [&](std::uint64_t, const SignVector&, const std::vector<Int>& tri) {
        Rat v = Rat(dot(tri, outer));
        if (first || v > offset) { offset = v; first = false; }
    });
    for_each_vertex(7, [&](std::uint64_t, const SignVector&, const std::vector<Int>& tri) {
        if (Rat(dot(tri, outer)) == offset) incident.push_back(tri);
    });

    ACC(c, offset == 6);
    ACC(c, verify_facet(7, outer, offset));
    ACC(c, affine_dim(incident) == tri_dim(7) - 1);

    ACC(c, std::holds_alternative<NotProductReason>(is_product_form(7, printed)));
    ACC(c, std::holds_alternative<NotProductReason>(is_product_form(7, outer)));

    // the fixture records the outer normal and the computed supporting value
    if (const char* dir = std::getenv("UCOV_FIXTURES")) {
        std::ifstream in(std::string(dir) + "/tau.json");
        REQUIRE(in.good());
        Json j = Json::parse(in);
        TriArray ft = tri_from_json(j);
        for (int k = 0; k < tri_dim(7); ++k) ACC(c, ft.entries[k] == Rat(outer[k]));
        ACC(c, j.contains("offset"));
        if (j.contains("offset")) ACC(c, rat_from_json(j.at("offset"), "offset") == offset);
    }
}

TEST_CASE("criterion 4: the three-point example fails all three ways", "[acceptance]") {
    Criterion c{4, "negative fixture agreement"};
    TriArray rho(3, {Rat(1), Rat(1), Rat(-1)});

    Certificate cert = check_realisable(rho);
    ACC(c, !is_realisable(cert));
    ACC(c, verify_certificate(rho, cert));

    ScreenReport sr = screen(complete(rho), 1);
    ACC(c, sr.verdict == ScreenReport::Verdict::Violation);
    ACC(c, sr.value == -3);

    ACC(c, membership_by_facets(rho, hrep(3)).kind == MembershipResult::Kind::Outside);
}

TEST_CASE("criterion 5: decomposition round-trips", "[acceptance]") {
    Criterion c{5, "mixture round-trip and atom bound"};
    for (int n = 3; n <= 8; ++n) {
        testutil::Rng rng(500 + n);
        for (int trial = 0; trial < 100; ++trial) {
            int most = std::min<int>(1 << (n - 1), tri_dim(n) + 4);
            Mixture m = testutil::random_mixture(rng, n, 1 + rng.below(most));
            TriArray rho = reconstruct(m);
            Certificate cert = check_realisable(rho);
            ACC(c, is_realisable(cert));
            if (!is_realisable(cert)) return;
            Mixture reduced = caratheodory_reduce(std::get<RealisableCert>(cert).mixture);
            ACC(c, static_cast<int>(reduced.atoms.size()) <= tri_dim(n) + 1);
            ACC(c, reconstruct(reduced) == rho);
            if (!c.ok) return;
        }
    }
}

TEST_CASE("criterion 6: LP and facet membership agree", "[acceptance]") {
    Criterion c{6, "oracle equivalence at n=4"};
    const HRep& h = hrep(4);
    testutil::Rng rng(600);
    for (int trial = 0; trial < 500; ++trial) {
        TriArray p = testutil::random_point(rng, 4, 12);
        bool lp = is_realisable(check_realisable(p));
        bool facets = membership_by_facets(p, h).kind != MembershipResult::Kind::Outside;
        ACC(c, lp == facets);
        if (!c.ok) return;
    }
}

TEST_CASE("criterion 7: screening never rejects realisable points", "[acceptance]") {
    Criterion c{7, "necessity of the screening inequalities"};
    for (int n = 3; n <= 6; ++n) {
        testutil::Rng rng(700 + n);
        for (int trial = 0; trial < 200; ++trial) {
            TriArray rho = testutil::random_realisable(rng, n);
            ACC(c, screen(complete(rho), 2).verdict == ScreenReport::Verdict::Pass);
            if (!c.ok) return;
        }
    }
}

TEST_CASE("criterion 8: the certified inner ball is realisable", "[acceptance]") {
    Criterion c{8, "inner ball inclusion"};
    for (int n : {4, 5, 6}) {
        testutil::Rng rng(800 + n);
        for (int trial = 0; trial < 100; ++trial) {
            TriArray p = testutil::scale_into_inner_ball(testutil::random_point(rng, n));
            Rat norm2 = 0;
            for (const Rat& x : p.entries) norm2 += x * x;
            ACC(c, norm2 <= make_rat(81, 400));
            ACC(c, is_realisable(check_realisable(p)));
            if (!c.ok) return;
        }
    }
}

TEST_CASE("criterion 9: boundary structure", "[acceptance]") {
    Criterion c{9, "singular points, simplex faces, perturbations"};
    // (a) singular realisable points classify as boundary
    for (int n = 3; n <= 6; ++n) {
        testutil::Rng rng(900 + n);
        for (int trial = 0; trial < 25; ++trial) {
            Mixture m = testutil::random_mixture(rng, n, 1 + rng.below(n - 1));
            TriArray rho = reconstruct(m);
            auto kw = kernel(rho);
            ACC(c, kw.has_value());
            ACC(c, membership_by_facets(rho, hrep(n)).kind ==
                       MembershipResult::Kind::Boundary);
            // (c) perturbation witnesses are never realisable
            if (kw) {
                PerturbationWitness w = perturbation_witness(rho, *kw, make_rat(1, 7));
                ACC(c, sgn(w.negativity_value) < 0);
                ACC(c, !is_realisable(check_realisable(w.perturbed)));
            }
            if (!c.ok) return;
        }
    }
    // (b) every small vertex subset spans only singular, boundary points
    for (int n = 3; n <= 6; ++n) {
        testutil::Rng rng(950 + n);
        for (int k = 1; k < n; ++k) {
            for (int trial = 0; trial < 50; ++trial) {
                std::set<std::uint64_t> picked;
                while (static_cast<int>(picked.size()) < k)
                    picked.insert(rng.next() % vertex_count(n));
                std::vector<SignVector> states;
                for (std::uint64_t idx : picked)
                    states.push_back(sign_vector_from_index(n, idx));
                auto r = simplex_face_check(states);
                ACC(c, std::holds_alternative<AllSingular>(r));

                Mixture m = testutil::random_mixture(rng, n, k);
                m.atoms.clear();
                std::vector<int> raw(k);
                int total = 0;
                for (int& w : raw) { w = 1 + rng.below(9); total += w; }
                for (int i = 0; i < k; ++i)
                    m.atoms.push_back({make_rat(raw[i], total), states[i]});
                TriArray rho = reconstruct(m);
                ACC(c, kernel(rho).has_value());
                ACC(c, membership_by_facets(rho, hrep(n)).kind ==
                           MembershipResult::Kind::Boundary);
                if (!c.ok) return;
            }
        }
    }
}

TEST_CASE("criterion 10: symmetry invariance of the verdict", "[acceptance]") {
    Criterion c{10, "switching and permutation invariance"};
    for (int n = 3; n <= 5; ++n) {
        testutil::Rng rng(1000 + n);
        for (int trial = 0; trial < 100; ++trial) {
            TriArray rho = testutil::random_point(rng, n, 10);
            bool base = is_realisable(check_realisable(rho));
            SignVector u = testutil::random_sign_vector(rng, n);
            ACC(c, is_realisable(check_realisable(switch_tri(rho, u))) == base);
            std::vector<int> perm = testutil::random_permutation(rng, n);
            ACC(c, is_realisable(check_realisable(apply_permutation(rho, perm))) == base);
            if (!c.ok) return;
        }
    }
}
