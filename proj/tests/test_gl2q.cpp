#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include "doctest.h"

#include <random>

#include "jcover/gl2q.hpp"
#include "jcover/verify.hpp"
#include "support/oracles.hpp"

using namespace jcover;
using gl2q::GroupElement;

TEST_CASE("normalize produces canonical representatives") {
    auto id = GroupElement::of(1, 0, 0, 1);
    CHECK(id.is_identity());
    CHECK(id.level() == 1);

    auto half = GroupElement::of_rationals(mpq_class(1, 2), 0, 0, 1);
    CHECK(half == GroupElement::of(1, 0, 0, 2));
    CHECK(half.level() == 2);

    auto neg = GroupElement::of(-2, 0, 0, -2);
    CHECK(neg.is_identity());

    CHECK_THROWS_AS(GroupElement::of(1, 0, 0, -1), domain_error);
    CHECK_THROWS_AS(GroupElement::of(1, 2, 2, 4), domain_error); // det 0

    // scalar-invariance: lambda g maps to the same representative
    auto g = GroupElement::of(3, 1, 0, 5);
    auto scaled = GroupElement::of_rationals(mpq_class(21, 4), mpq_class(7, 4), 0,
                                             mpq_class(35, 4));
    CHECK(g == scaled);
}

TEST_CASE("multiply clears content and tracks level") {
    auto t = GroupElement::of(1, 1, 0, 1);
    auto tinv = GroupElement::of(1, -1, 0, 1);
    CHECK((t * tinv).is_identity());

    auto a = GroupElement::of(2, 0, 0, 1);
    auto b = GroupElement::of(1, 0, 0, 2);
    CHECK((a * b).is_identity()); // scalar 2I normalizes away

    auto c = GroupElement::of(1, 1, 0, 2);
    auto sq = c * c;
    CHECK(sq == GroupElement::of(1, 3, 0, 4));
    CHECK(sq.level() == 4);

    // level of a product divides the product of levels
    std::mt19937_64 rng(5);
    std::uniform_int_distribution<long> e(-6, 6);
    for (int i = 0; i < 200; ++i) {
        long p = e(rng), q = e(rng), r = e(rng), s = e(rng);
        if (p * s - q * r <= 0) continue;
        long p2 = e(rng), q2 = e(rng), r2 = e(rng), s2 = e(rng);
        if (p2 * s2 - q2 * r2 <= 0) continue;
        auto x = GroupElement::of(p, q, r, s);
        auto y = GroupElement::of(p2, q2, r2, s2);
        CHECK(mpz_class(x.level() * y.level()) % (x * y).level() == 0);
    }
}

TEST_CASE("coset representatives enumerate Hermite forms") {
    auto one = gl2q::coset_representatives(1);
    REQUIRE(one.size() == 1);
    CHECK(one[0].is_identity());

    auto two = gl2q::coset_representatives(2);
    REQUIRE(two.size() == 3);
    CHECK(two[0] == GroupElement::of(1, 0, 0, 2));
    CHECK(two[1] == GroupElement::of(1, 1, 0, 2));
    CHECK(two[2] == GroupElement::of(2, 0, 0, 1));

    CHECK(gl2q::coset_representatives(6).size() == 12);
    CHECK(gl2q::psi(6) == 12);

    for (unsigned long n = 1; n <= 30; ++n) {
        CHECK(gl2q::psi(n) == oracle::psi_by_count(n));
        CHECK(gl2q::coset_representatives(n).size() == gl2q::psi(n));
    }

    // brute-force enumeration finds nothing outside the listed cosets
    for (unsigned long n = 1; n <= 8; ++n)
        CHECK(verify::coset_brute_force_matches(n, static_cast<long>(n)));
}

TEST_CASE("same_left_coset") {
    auto g = GroupElement::of(1, 0, 0, 2);
    CHECK(gl2q::same_left_coset(g, g));
    CHECK_FALSE(gl2q::same_left_coset(g, GroupElement::of(1, 1, 0, 2)));
    CHECK(gl2q::same_left_coset(g, GroupElement::of(1, 2, 0, 2)));

    // equivalence relation and Gamma-invariance on random elements
    std::mt19937_64 rng(7);
    std::uniform_int_distribution<long> e(-8, 8);
    auto rand_el = [&] {
        for (;;) {
            long p = e(rng), q = e(rng), r = e(rng), s = e(rng);
            if (p * s - q * r > 0) return GroupElement::of(p, q, r, s);
        }
    };
    auto s_gen = GroupElement::of(0, -1, 1, 0);
    auto t_gen = GroupElement::of(1, 1, 0, 1);
    for (int i = 0; i < 100; ++i) {
        auto x = rand_el();
        GroupElement gamma = GroupElement::identity();
        std::uniform_int_distribution<int> len(1, 8), pick(0, 1);
        int l = len(rng);
        for (int k = 0; k < l; ++k) gamma = gamma * (pick(rng) ? s_gen : t_gen);
        CHECK(gl2q::same_left_coset(x, gamma * x));
        CHECK(gl2q::same_left_coset(gamma * x, x));
        CHECK(gl2q::same_left_coset(gl2q::hermite_form(x), x));
    }
}

TEST_CASE("principal congruence membership") {
    auto id = GroupElement::identity();
    for (unsigned long n : {1ul, 2ul, 3ul, 12ul})
        CHECK(gl2q::principal_congruence_member(id, n));

    CHECK(gl2q::principal_congruence_member(GroupElement::of(1, 2, 2, 5), 2));
    CHECK_FALSE(gl2q::principal_congruence_member(GroupElement::of(1, 1, 0, 1), 2));
    // the sign lift: -I reduces to the identity
    CHECK(gl2q::principal_congruence_member(GroupElement::of(-1, 0, 0, -1), 5));
    CHECK_THROWS_AS(
        gl2q::principal_congruence_member(GroupElement::of(2, 0, 0, 1), 2),
        domain_error);
}

TEST_CASE("stabilizer index by orbit enumeration") {
    CHECK(gl2q::stabilizer_index({GroupElement::identity()}) == 1);

    for (unsigned long n : {2ul, 3ul, 4ul, 5ul}) {
        auto gs = gl2q::coset_representatives(n);
        gs.insert(gs.begin(), GroupElement::identity());
        CHECK(gl2q::stabilizer_index(gs) == verify::psl2_order(n));
    }
    CHECK_THROWS_AS(gl2q::stabilizer_index({}), domain_error);
}

TEST_CASE("matrix JSON round trip") {
    auto g = GroupElement::of(12345678901234567LL, -3, 0, 7);
    auto back = GroupElement::from_json(g.to_json());
    CHECK(g == back);
    CHECK_THROWS_AS(GroupElement::from_json("[[\"1\"]]"), domain_error);
}
