#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include "doctest.h"

#include <cmath>
#include <random>

#include "jcover/jfun.hpp"
#include "support/oracles.hpp"

using namespace jcover;
using halfplane::HalfPlanePoint;

TEST_CASE("q-expansion coefficients against the Eisenstein oracle") {
    auto s = jfun::j_coefficients(60);
    auto expected = oracle::j_coeffs_by_eisenstein(60);
    CHECK(s.coeff(-1) == 1);
    CHECK(s.coeff(0) == 744);
    CHECK(s.coeff(1) == 196884);
    CHECK(s.coeff(2) == 21493760);
    for (long n = -1; n <= 60; ++n)
        CHECK(s.coeff(n) == expected[static_cast<std::size_t>(n + 1)]);

    // the tail bound rests on c(n) <= e^{4 pi sqrt(n)}
    for (long n = 1; n <= 60; ++n) {
        double lg = mpz_sizeinbase(s.coeff(n).get_mpz_t(), 10);
        CHECK(lg <= 4.0 * 3.14159265358979 * std::sqrt(double(n)) / std::log(10.0) + 1.0);
    }

    CHECK_THROWS_AS(s.coeff(61), domain_error);
}

TEST_CASE("classical special values") {
    long digits = 50;
    Real tol = Real::pow10(-48, 128);

    auto ji = jfun::evaluate_j(HalfPlanePoint::exact(1, 0, -4), digits);
    CHECK((ji.re() - Real::of(1728L, 256)).abs() < tol);
    CHECK(ji.im().abs() < tol);

    auto jrho = jfun::evaluate_j(HalfPlanePoint::exact(1, 1, -3), digits);
    CHECK(jrho.abs() < tol);

    auto j2i = jfun::evaluate_j(HalfPlanePoint::exact(1, 0, -16), digits);
    CHECK((j2i.re() - Real::of(287496L, 256)).abs() < tol);
}

TEST_CASE("Gamma invariance at full precision") {
    std::mt19937_64 rng(9);
    std::uniform_int_distribution<long> num(-500000, 499999), den(1, 999999);
    long digits = 50;
    Real tol = Real::pow10(1 - digits, 128);
    auto s_gen = gl2q::GroupElement::of(0, -1, 1, 0);
    auto t_gen = gl2q::GroupElement::of(1, 1, 0, 1);
    for (int k = 0; k < 25; ++k) {
        mpq_class x(num(rng), 1000000), y = 1 + mpq_class(den(rng), 1000000);
        x.canonicalize();
        y.canonicalize();
        auto tau = HalfPlanePoint::numeric_rational(x, y, digits + 25);
        gl2q::GroupElement gamma = gl2q::GroupElement::identity();
        std::uniform_int_distribution<int> len(1, 8), pick(0, 1);
        int l = len(rng);
        for (int j = 0; j < l; ++j) gamma = gamma * (pick(rng) ? s_gen : t_gen);
        auto a = jfun::evaluate_j(tau, digits);
        auto b = jfun::evaluate_j(halfplane::apply(gamma, tau), digits);
        CHECK((a - b).abs() < tol);
    }
}

TEST_CASE("tail bound honored when doubling the truncation") {
    long digits = 50;
    auto tau = HalfPlanePoint::numeric_rational(mpq_class(2, 7), mpq_class(9, 8),
                                                digits + 25);
    auto rep = jfun::evaluate_j_report(tau, digits);
    auto doubled = jfun::evaluate_j_truncated(tau, digits, rep.truncation * 2);
    CHECK((rep.value - doubled).abs() < Real::pow10(-digits, 128));
    CHECK(rep.truncation > 8);
}

TEST_CASE("precision guard") {
    CHECK_THROWS_AS(jfun::evaluate_j(HalfPlanePoint::exact(1, 0, -4), 0), domain_error);
}

TEST_CASE("curve from j and back") {
    auto curve = jfun::curve_from_j(mpq_class(3456));
    CHECK(curve.g2 == 54);
    CHECK(curve.g3 == 54);
    CHECK(jfun::j_invariant(curve) == 3456);

    CHECK_THROWS_AS(jfun::curve_from_j(mpq_class(0)), domain_error);
    CHECK_THROWS_AS(jfun::curve_from_j(mpq_class(1728)), domain_error);

    CHECK(jfun::j_invariant({mpq_class(4), mpq_class(0)}) == 1728);
    CHECK(jfun::j_invariant({mpq_class(0), mpq_class(4)}) == 0);
    CHECK_THROWS_AS(jfun::j_invariant({mpq_class(3), mpq_class(1)}), domain_error);

    std::mt19937_64 rng(11);
    std::uniform_int_distribution<long> num(-1000000, 1000000), den(1, 9999);
    for (int k = 0; k < 100; ++k) {
        mpq_class j(num(rng), den(rng));
        j.canonicalize();
        if (j == 0 || j == 1728) continue;
        CHECK(jfun::j_invariant(jfun::curve_from_j(j)) == j);
    }
}
