#include <catch2/catch.hpp>

#include "test_util.hpp"
#include "ucov/core.hpp"

using namespace ucov;

TEST_CASE("rational parsing and canonical form", "[core]") {
    CHECK(rat_to_string(parse_rat("3/6")) == "1/2");
    CHECK(rat_to_string(parse_rat("-4/2")) == "-2");
    CHECK(rat_to_string(parse_rat("7")) == "7");
    CHECK(parse_rat("-1/3") == make_rat(-1, 3));
    CHECK_THROWS_AS(parse_rat("0.3"), InputError);
    CHECK_THROWS_AS(parse_rat("1e-2"), InputError);
    CHECK_THROWS_AS(parse_rat(""), InputError);
    CHECK_THROWS_AS(parse_rat("1/0"), InputError);
    CHECK_THROWS_AS(parse_rat("--1"), InputError);
    CHECK_THROWS_AS(parse_rat("1/-2"), InputError);
}

TEST_CASE("rational arithmetic stays canonical", "[core]") {
    testutil::Rng rng(42);
    for (int i = 0; i < 200; ++i) {
        Rat a = testutil::random_unit_rat(rng);
        Rat b = testutil::random_unit_rat(rng);
        for (const Rat& q : {Rat(a + b), Rat(a - b), Rat(a * b)}) {
            CHECK(sgn(q.get_den()) > 0);
            CHECK(int_gcd(q.get_num(), q.get_den()) == 1);
        }
    }
}

TEST_CASE("pair indexing is row-major and invertible", "[core]") {
    CHECK(pair_index(3, 0, 1) == 0);
    CHECK(pair_index(3, 0, 2) == 1);
    CHECK(pair_index(3, 1, 2) == 2);
    for (int n = 2; n <= 8; ++n) {
        int k = 0;
        for (int i = 0; i < n; ++i)
            for (int j = i + 1; j < n; ++j, ++k) {
                CHECK(pair_index(n, i, j) == k);
                CHECK(index_pair(n, k) == std::make_pair(i, j));
            }
        CHECK(k == tri_dim(n));
    }
}

TEST_CASE("sign vectors canonicalize to a +1 lead", "[core]") {
    SignVector u({-1, 1, 1});
    CHECK(u.signs == std::vector<int>{1, -1, -1});
    CHECK(SignVector({1, -1}) == SignVector({-1, 1}));
    CHECK_THROWS_AS(SignVector({1, 0}), InputError);
    CHECK_THROWS_AS(SignVector(std::vector<int>{}), InputError);
}

TEST_CASE("outer product onto the triangular array", "[core]") {
    CHECK(outer_tri(SignVector({1, 1, 1})).entries ==
          std::vector<Rat>{Rat(1), Rat(1), Rat(1)});
    CHECK(outer_tri(SignVector({1, -1, -1})).entries ==
          std::vector<Rat>{Rat(-1), Rat(-1), Rat(1)});
    // entry (2,4) of u = (+1,-1,+1,-1), 1-based, is (-1)*(-1)
    CHECK(outer_tri(SignVector({1, -1, 1, -1})).at(1, 3) == 1);

    testutil::Rng rng(7);
    for (int i = 0; i < 50; ++i) {
        SignVector u = testutil::random_sign_vector(rng, 2 + rng.below(6));
        std::vector<int> negated(u.signs);
        for (int& s : negated) s = -s;
        CHECK(outer_tri(u) == outer_tri(SignVector(std::move(negated))));
    }
}

TEST_CASE("switching", "[core]") {
    TriArray rho(3, {Rat(1), Rat(1), Rat(1)});
    CHECK(switch_tri(rho, SignVector({1, 1, 1})) == rho);
    CHECK(switch_tri(rho, SignVector({1, -1, -1})).entries ==
          std::vector<Rat>{Rat(-1), Rat(-1), Rat(1)});
    CHECK_THROWS_AS(switch_tri(rho, SignVector({1, 1})), DimensionError);

    testutil::Rng rng(11);
    for (int i = 0; i < 50; ++i) {
        int n = 2 + rng.below(5);
        TriArray t = testutil::random_point(rng, n);
        SignVector u = testutil::random_sign_vector(rng, n);
        CHECK(switch_tri(switch_tri(t, u), u) == t); // involution
    }
}

TEST_CASE("switching maps mixtures to mixtures of the switched point", "[core]") {
    testutil::Rng rng(13);
    for (int i = 0; i < 30; ++i) {
        int n = 2 + rng.below(4);
        Mixture m = testutil::random_mixture(rng, n, 1 + rng.below(5));
        SignVector u = testutil::random_sign_vector(rng, n);
        Mixture switched;
        for (const auto& atom : m.atoms)
            switched.atoms.push_back({atom.weight, componentwise_mul(atom.state, u)});
        CHECK(reconstruct(switched) == switch_tri(reconstruct(m), u));
    }
}

TEST_CASE("switching permutes the vertex set", "[core]") {
    testutil::Rng rng(17);
    for (int n : {3, 4, 5}) {
        SignVector u = testutil::random_sign_vector(rng, n);
        std::set<std::vector<Rat>> image;
        for (std::uint64_t k = 0; k < (std::uint64_t(1) << (n - 1)); ++k) {
            std::vector<int> s(n, 1);
            for (int i = 1; i < n; ++i)
                if ((k >> (n - 1 - i)) & 1) s[i] = -1;
            image.insert(switch_tri(outer_tri(SignVector(std::move(s))), u).entries);
        }
        CHECK(image.size() == (std::uint64_t(1) << (n - 1)));
        for (const auto& e : image) {
            for (const Rat& x : e) CHECK((x == 1 || x == -1));
        }
    }
}

TEST_CASE("phi maps covariograms to unit covariances", "[core]") {
    FullMatrix zero(3);
    FullMatrix ones = phi(zero);
    for (int i = 0; i < 3; ++i)
        for (int j = 0; j < 3; ++j) CHECK(ones.at(i, j) == 1);

    FullMatrix half(3);
    for (int i = 0; i < 3; ++i)
        for (int j = 0; j < 3; ++j)
            if (i != j) half.at(i, j) = make_rat(1, 2);
    FullMatrix r = phi(half);
    CHECK(r.at(0, 1) == -1);
    CHECK(r.at(2, 1) == -1);
    CHECK(r.has_unit_diagonal());

    FullMatrix bad(2);
    bad.at(0, 0) = 1;
    CHECK_THROWS_AS(phi(bad), InputError);

    testutil::Rng rng(19);
    for (int i = 0; i < 30; ++i) {
        int n = 2 + rng.below(5);
        FullMatrix g(n);
        for (int a = 0; a < n; ++a)
            for (int b = a + 1; b < n; ++b) {
                g.at(a, b) = testutil::random_unit_rat(rng);
                g.at(b, a) = g.at(a, b);
            }
        CHECK(phi_inv(phi(g)) == g);
    }
}

TEST_CASE("embed and complete are mutually inverse", "[core]") {
    TriArray t(3, {parse_rat("1/2"), parse_rat("-1/3"), parse_rat("0")});
    FullMatrix m = complete(t);
    CHECK(m.at(0, 1) == make_rat(1, 2));
    CHECK(m.at(1, 0) == make_rat(1, 2));
    CHECK(m.at(0, 2) == make_rat(-1, 3));
    CHECK(m.at(1, 2) == 0);
    CHECK(m.has_unit_diagonal());
    CHECK(embed(m) == t);

    FullMatrix eye(4);
    for (int i = 0; i < 4; ++i) eye.at(i, i) = 1;
    CHECK(embed(eye) == TriArray::zero(4));

    FullMatrix asym(2);
    asym.at(0, 0) = asym.at(1, 1) = 1;
    asym.at(0, 1) = 1;
    asym.at(1, 0) = -1;
    CHECK_THROWS_AS(embed(asym), InputError);

    testutil::Rng rng(23);
    for (int i = 0; i < 30; ++i) {
        TriArray x = testutil::random_point(rng, 2 + rng.below(5));
        CHECK(embed(complete(x)) == x);
    }
}

TEST_CASE("index permutations act on triangular arrays", "[core]") {
    testutil::Rng rng(29);
    for (int i = 0; i < 30; ++i) {
        int n = 2 + rng.below(5);
        SignVector u = testutil::random_sign_vector(rng, n);
        std::vector<int> perm = testutil::random_permutation(rng, n);
        std::vector<int> permuted_signs(n);
        for (int a = 0; a < n; ++a) permuted_signs[a] = u.signs[perm[a]];
        CHECK(apply_permutation(outer_tri(u), perm) ==
              outer_tri(SignVector(std::move(permuted_signs))));
    }
}
