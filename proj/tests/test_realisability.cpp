#include <catch2/catch.hpp>

#include "test_util.hpp"
#include "ucov/realisability.hpp"

using namespace ucov;

namespace {
TriArray tri3(const char* a, const char* b, const char* c) {
    return TriArray(3, {parse_rat(a), parse_rat(b), parse_rat(c)});
}
} // namespace

TEST_CASE("the three-point contradiction is separated", "[realisability]") {
    TriArray rho = tri3("1", "1", "-1");
    Certificate c = check_realisable(rho);
    REQUIRE(!is_realisable(c));
    CHECK(verify_certificate(rho, c));
    const auto& s = std::get<SeparatedCert>(c);
    CHECK(dot(s.direction.entries, rho.entries) > s.threshold);
}

TEST_CASE("vertices decompose as a single atom", "[realisability]") {
    TriArray rho = tri3("1", "1", "1");
    Certificate c = check_realisable(rho);
    REQUIRE(is_realisable(c));
    const Mixture& m = std::get<RealisableCert>(c).mixture;
    REQUIRE(m.atoms.size() == 1);
    CHECK(m.atoms[0].weight == 1);
    CHECK(m.atoms[0].state == SignVector({1, 1, 1}));
}

TEST_CASE("the all-minus-third point is realisable", "[realisability]") {
    TriArray rho = tri3("-1/3", "-1/3", "-1/3");
    Certificate c = check_realisable(rho);
    REQUIRE(is_realisable(c));
    const Mixture& m = std::get<RealisableCert>(c).mixture;
    CHECK(m.atoms.size() <= 4);
    CHECK(reconstruct(m) == rho);
}

TEST_CASE("the center is realisable", "[realisability]") {
    Certificate c = check_realisable(TriArray::zero(3));
    CHECK(is_realisable(c));
    CHECK(is_realisable(check_realisable(TriArray::zero(5))));
}

TEST_CASE("degenerate single-point case", "[realisability]") {
    Certificate c = check_realisable(TriArray::zero(1));
    REQUIRE(is_realisable(c));
    CHECK(std::get<RealisableCert>(c).mixture.atoms.size() == 1);
}

TEST_CASE("entries outside the unit box are separated by a coordinate", "[realisability]") {
    TriArray rho(2, {parse_rat("3/2")});
    Certificate c = check_realisable(rho);
    REQUIRE(!is_realisable(c));
    CHECK(verify_certificate(rho, c));
    const auto& s = std::get<SeparatedCert>(c);
    CHECK(s.threshold == 1);

    TriArray low(3, {parse_rat("-2"), Rat(0), Rat(0)});
    Certificate c2 = check_realisable(low);
    CHECK(!is_realisable(c2));
    CHECK(verify_certificate(low, c2));
}

TEST_CASE("LP cap guard", "[realisability]") {
    CHECK_THROWS_AS(check_realisable(TriArray::zero(14)), CapExceeded);
}

TEST_CASE("reconstruction", "[realisability]") {
    Mixture single;
    single.atoms.push_back({Rat(1), SignVector({1, -1, 1})});
    CHECK(reconstruct(single) == outer_tri(SignVector({1, -1, 1})));

    // Three states, each with probability 1/3, give the all-minus-third point.
    Mixture thirds;
    thirds.atoms.push_back({make_rat(1, 3), SignVector({-1, 1, 1})});
    thirds.atoms.push_back({make_rat(1, 3), SignVector({-1, -1, 1})});
    thirds.atoms.push_back({make_rat(1, 3), SignVector({1, -1, 1})});
    CHECK(reconstruct(thirds) == tri3("-1/3", "-1/3", "-1/3"));
}

TEST_CASE("round-trip: realisable points reconstruct exactly", "[realisability]") {
    testutil::Rng rng(53);
    for (int trial = 0; trial < 40; ++trial) {
        int n = 2 + rng.below(4);
        TriArray rho = testutil::random_realisable(rng, n);
        Certificate c = check_realisable(rho);
        REQUIRE(is_realisable(c));
        CHECK(reconstruct(std::get<RealisableCert>(c).mixture) == rho);
    }
}

TEST_CASE("certificate verification rejects corruption", "[realisability]") {
    CHECK(verify_certificate(TriArray::zero(3),
                             Certificate(RealisableCert{[] {
                                 Mixture m;
                                 m.atoms.push_back({make_rat(1, 4), SignVector({1, 1, 1})});
                                 m.atoms.push_back({make_rat(1, 4), SignVector({1, 1, -1})});
                                 m.atoms.push_back({make_rat(1, 4), SignVector({1, -1, 1})});
                                 m.atoms.push_back({make_rat(1, 4), SignVector({1, -1, -1})});
                                 return m;
                             }()})));

    // weights not summing to one
    Mixture bad;
    bad.atoms.push_back({make_rat(1, 2), SignVector({1, 1, 1})});
    CHECK(!verify_certificate(outer_tri(SignVector({1, 1, 1})), Certificate(RealisableCert{bad})));

    // mixture for a different point
    Mixture wrong;
    wrong.atoms.push_back({Rat(1), SignVector({1, 1, 1})});
    CHECK(!verify_certificate(tri3("0", "0", "0"), Certificate(RealisableCert{wrong})));

    // separated witness that fails to separate
    TriArray inside = TriArray::zero(3);
    SeparatedCert fake{tri3("1", "0", "0"), Rat(1)};
    CHECK(!verify_certificate(inside, Certificate(fake)));

    // witness whose threshold does not dominate the vertices
    TriArray out = tri3("1", "1", "-1");
    Certificate good = check_realisable(out);
    SeparatedCert tampered = std::get<SeparatedCert>(good);
    tampered.threshold -= 3;
    CHECK(!verify_certificate(out, Certificate(tampered)));
}

TEST_CASE("caratheodory reduction", "[realisability]") {
    // already within the bound: unchanged
    Mixture uniform4;
    for (std::uint64_t k = 0; k < 4; ++k)
        uniform4.atoms.push_back({make_rat(1, 4), sign_vector_from_index(3, k)});
    Mixture r = caratheodory_reduce(uniform4);
    CHECK(r.atoms.size() <= 4);
    CHECK(reconstruct(r) == reconstruct(uniform4));

    Mixture single;
    single.atoms.push_back({Rat(1), SignVector({1, -1, 1, -1})});
    CHECK(caratheodory_reduce(single).atoms.size() == 1);

    // a five-entry list with a repeated state merges, then reduces
    std::vector<Mixture::Atom> raw;
    raw.push_back({make_rat(1, 5), SignVector({1, 1, 1})});
    raw.push_back({make_rat(1, 5), SignVector({1, 1, -1})});
    raw.push_back({make_rat(1, 5), SignVector({1, -1, 1})});
    raw.push_back({make_rat(1, 5), SignVector({1, -1, -1})});
    raw.push_back({make_rat(1, 5), SignVector({1, 1, 1})}); // duplicate
    Mixture merged = merge_atoms(raw);
    CHECK(merged.atoms.size() == 4);
    CHECK(merged.atoms[0].weight == make_rat(2, 5));
    Mixture reduced5 = caratheodory_reduce(merged);
    CHECK(reduced5.atoms.size() <= 4);
    CHECK(reconstruct(reduced5) == reconstruct(merged));

    testutil::Rng rng(59);
    for (int trial = 0; trial < 30; ++trial) {
        int n = 3 + rng.below(3);
        int most = std::min<int>(1 << (n - 1), tri_dim(n) + 4);
        Mixture big = testutil::random_mixture(rng, n, most);
        Mixture reduced = caratheodory_reduce(big);
        CHECK(static_cast<int>(reduced.atoms.size()) <= tri_dim(n) + 1);
        CHECK(reconstruct(reduced) == reconstruct(big));
        CHECK(mixture_problem(reduced).empty());
    }
}

TEST_CASE("points in the certified inner ball are realisable", "[realisability]") {
    testutil::Rng rng(61);
    for (int trial = 0; trial < 15; ++trial) {
        TriArray p = testutil::scale_into_inner_ball(testutil::random_point(rng, 4));
        CHECK(is_realisable(check_realisable(p)));
    }
}

TEST_CASE("verdicts are invariant under switching", "[realisability]") {
    testutil::Rng rng(67);
    for (int trial = 0; trial < 10; ++trial) {
        TriArray rho = testutil::random_realisable(rng, 4);
        SignVector u = testutil::random_sign_vector(rng, 4);
        CHECK(is_realisable(check_realisable(rho)) ==
              is_realisable(check_realisable(switch_tri(rho, u))));
    }
    TriArray bad = tri3("1", "1", "-1");
    for (int trial = 0; trial < 5; ++trial) {
        SignVector u = testutil::random_sign_vector(rng, 3);
        CHECK(!is_realisable(check_realisable(switch_tri(bad, u))));
    }
}
