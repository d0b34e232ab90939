#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include "doctest.h"

#include "jcover/cache.hpp"
#include "jcover/cm.hpp"
#include "jcover/halfplane.hpp"
#include "jcover/jfun.hpp"
#include "support/oracles.hpp"

using namespace jcover;
using cm::QuadraticForm;

TEST_CASE("reduced forms of small discriminants") {
    auto f4 = cm::reduced_forms(-4);
    REQUIRE(f4.size() == 1);
    CHECK(f4[0] == QuadraticForm{1, 0, 1});

    auto f3 = cm::reduced_forms(-3);
    REQUIRE(f3.size() == 1);
    CHECK(f3[0] == QuadraticForm{1, 1, 1});

    auto f23 = cm::reduced_forms(-23);
    REQUIRE(f23.size() == 3);
    CHECK(f23[0] == QuadraticForm{1, 1, 6});
    CHECK(f23[1] == QuadraticForm{2, -1, 3});
    CHECK(f23[2] == QuadraticForm{2, 1, 3});

    CHECK_THROWS_AS(cm::reduced_forms(-5), domain_error); // 3 mod 4
    CHECK_THROWS_AS(cm::reduced_forms(4), domain_error);

    for (long ad = 3; ad <= 120; ++ad) {
        if (ad % 4 != 0 && ad % 4 != 3) continue;
        CHECK(cm::reduced_forms(-ad).size() == oracle::class_number(-ad));
        for (const auto& f : cm::reduced_forms(-ad)) {
            CHECK(f.discriminant() == -ad);
            CHECK(f.a > 0);
            CHECK(f.a <= f.c);
            CHECK(abs(f.b) <= f.a);
            CHECK(gcd(gcd(f.a, f.b), f.c) == 1);
        }
    }
}

TEST_CASE("class polynomials with one form") {
    auto h3 = cm::class_polynomial(-3, 40);
    CHECK(h3.degree() == 1);
    CHECK(h3.coeffs()[0] == 0); // H = X

    auto h4 = cm::class_polynomial(-4, 40);
    CHECK(h4.degree() == 1);
    CHECK(h4.coeffs()[0] == -1728);

    auto h7 = cm::class_polynomial(-7, 50);
    CHECK(h7.degree() == 1);
    CHECK(h7.coeffs()[0] == 3375); // root -3375

    auto h16 = cm::class_polynomial_auto(-16);
    CHECK(h16.degree() == 1);
    CHECK(h16.eval(mpq_class(287496)) == 0); // j(2i)
}

TEST_CASE("higher class number and stability") {
    auto h23 = cm::class_polynomial_auto(-23);
    CHECK(h23.degree() == 3);
    CHECK(h23.coeffs().back() == 1);
    long d = cm::default_digits(-23);
    CHECK(cm::class_polynomial(-23, d) == cm::class_polynomial(-23, 2 * d));

    // class number 7, coefficients far beyond ten digits
    CHECK_THROWS_AS(cm::class_polynomial(-71, 10), precision_error);
}

TEST_CASE("cm detection") {
    CHECK(cm::is_cm_value(mpq_class(1728), 200) == mpz_class(-4));
    CHECK(cm::is_cm_value(mpq_class(0), 200) == mpz_class(-3));
    CHECK(cm::is_cm_value(mpq_class(287496), 200) == mpz_class(-16));
    CHECK(cm::is_cm_value(mpq_class(-3375), 200) == mpz_class(-7));
    CHECK_FALSE(cm::is_cm_value(mpq_class(5), 200).has_value());
    CHECK_FALSE(cm::is_cm_value(mpq_class(1729), 100).has_value());
    CHECK_THROWS_AS(cm::is_cm_value(mpq_class(5), 2), domain_error);
}

TEST_CASE("special points are class polynomial roots") {
    // elliptic elements of small level, fixed points, H_D vanishing
    for (auto [a, b, c, d] : {std::array<long, 4>{0, -1, 1, 0},
                              std::array<long, 4>{1, -1, 1, 0},
                              std::array<long, 4>{1, -2, 1, -1},
                              std::array<long, 4>{2, -5, 3, -2},
                              std::array<long, 4>{0, -3, 1, 0},
                              std::array<long, 4>{1, -4, 1, 1}}) {
        auto g = gl2q::GroupElement::of(a, b, c, d);
        if (!halfplane::is_special(g)) continue;
        auto s = halfplane::fixed_point(g);
        REQUIRE(s.has_value());
        mpz_class disc = s->as_exact().d;
        auto h = cache::hclass(disc);
        long digits = cm::default_digits(disc) + 10;
        auto ev = h->eval_numeric(jfun::evaluate_j(*s, digits), digits);
        CHECK(ev.value.abs().log10_abs() < ev.log10_error);
    }
}

TEST_CASE("class polynomial text format") {
    auto h4 = cm::class_polynomial(-4, 40);
    CHECK(h4.serialize() == "HCLASS D -4\n0 0 -1728\n1 0 1\n");
    auto parsed = cm::ClassPolynomial::parse(h4.serialize());
    CHECK(parsed == h4);
}
