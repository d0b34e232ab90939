#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include "doctest.h"

#include "jcover/cache.hpp"
#include "jcover/gl2q.hpp"
#include "jcover/halfplane.hpp"
#include "jcover/hecke.hpp"
#include "jcover/jfun.hpp"
#include "jcover/modpoly.hpp"

using namespace jcover;
using modpoly::BivariatePolynomial;

TEST_CASE("level one is X - Y") {
    auto phi1 = modpoly::modular_polynomial(1, 20);
    CHECK(phi1.coeff(1, 0) == 1);
    CHECK(phi1.coeff(0, 1) == -1);
    CHECK(phi1.terms().size() == 2);
    CHECK(phi1.eval(mpq_class(5), mpq_class(5)) == 0);
    CHECK(phi1.serialize("PHI N 1") == "PHI N 1\n0 1 -1\n1 0 1\n");
}

TEST_CASE("level two by interpolation") {
    auto phi2 = modpoly::modular_polynomial(2, 60);
    CHECK(phi2.deg_x() == 3);
    CHECK(phi2.is_symmetric());
    CHECK(phi2.is_monic_in_x());
    CHECK(phi2.coeff(2, 1) == 1488);
    CHECK(phi2.coeff(1, 2) == 1488);
    CHECK(phi2.coeff(0, 0) == mpz_class("-157464000000000"));

    // the isogenous pair j(i), j(2i)
    CHECK(phi2.eval(mpq_class(1728), mpq_class(287496)) == 0);
    CHECK(phi2.eval(mpq_class(287496), mpq_class(1728)) == 0);
    CHECK(phi2.eval(mpq_class(0), mpq_class(0)) == mpz_class("-157464000000000"));

    CHECK(modpoly::kronecker_check(phi2, 2));

    // identical at an unrelated precision
    CHECK(phi2 == modpoly::modular_polynomial(2, 97));
}

TEST_CASE("level three shape") {
    auto phi3 = modpoly::modular_polynomial(3, modpoly::default_digits(3));
    CHECK(phi3.deg_x() == 4);
    CHECK(phi3.is_symmetric());
    CHECK(phi3.is_monic_in_x());
    CHECK(modpoly::kronecker_check(phi3, 3));
    CHECK(phi3 == modpoly::modular_polynomial(3, modpoly::default_digits(3) + 41));
}

TEST_CASE("orbit values are roots") {
    long digits = 120;
    auto tau = halfplane::HalfPlanePoint::numeric_rational(mpq_class(3, 11),
                                                           mpq_class(13, 12),
                                                           digits + 25);
    auto jt = hecke::JValue::numeric(jfun::evaluate_j(tau, digits), digits);
    for (unsigned long n : {2ul, 3ul}) {
        for (const auto& g : gl2q::coset_representatives(n)) {
            auto jg = hecke::JValue::numeric(
                jfun::evaluate_j(halfplane::apply(g, tau), digits), digits);
            auto v = hecke::related_at_level(jt, jg, n);
            CHECK(v.verdict == hecke::Tri::yes);
        }
    }
}

TEST_CASE("insufficient digits fail loudly") {
    CHECK_THROWS_AS(modpoly::modular_polynomial(5, 14), precision_error);
}

TEST_CASE("sparse text round trip") {
    auto phi2 = cache::phi(2);
    std::string text = phi2->serialize("PHI N 2");
    auto [header, parsed] = BivariatePolynomial::parse(text);
    CHECK(header == "PHI N 2");
    CHECK(parsed == *phi2);
    CHECK(text.back() == '\n');
    CHECK(text.find(" \n") == std::string::npos); // no trailing whitespace
}

TEST_CASE("kronecker rejects composite moduli") {
    auto phi2 = cache::phi(2);
    CHECK_THROWS_AS(modpoly::kronecker_check(*phi2, 4), domain_error);
}

TEST_CASE("numeric evaluation carries a usable bound") {
    auto phi2 = cache::phi(2);
    mpfr_prec_t bits = Real::bits_for_digits(80);
    Complex x(Real::of(1728L, bits), Real(bits));
    Complex y(Real::of(287496L, bits), Real(bits));
    auto ev = phi2->eval_numeric(x, 60, y, 60);
    // a true zero evaluated exactly: residual far below the bound
    CHECK(ev.value.abs().log10_abs() < ev.log10_error);

    Complex bad(Real::of(287497L, bits), Real(bits));
    auto ev2 = phi2->eval_numeric(x, 60, bad, 60);
    CHECK(ev2.value.abs().log10_abs() > ev2.log10_error + 4);
}
