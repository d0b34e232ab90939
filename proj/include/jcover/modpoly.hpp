#pragma once

#include <gmpxx.h>

#include <map>
#include <string>
#include <utility>
#include <vector>

#include "jcover/complexnum.hpp"

namespace jcover::modpoly {

// Sparse integer polynomial in two variables X, Y.
class BivariatePolynomial {
  public:
    using Key = std::pair<unsigned, unsigned>;

    BivariatePolynomial() = default;

    void set(unsigned i, unsigned j, mpz_class c);
    const std::map<Key, mpz_class>& terms() const { return terms_; }
    mpz_class coeff(unsigned i, unsigned j) const;

    unsigned deg_x() const;
    unsigned deg_y() const;
    bool is_symmetric() const;
    // leading X-coefficient is the constant 1
    bool is_monic_in_x() const;

    bool operator==(const BivariatePolynomial& o) const { return terms_ == o.terms_; }

    mpq_class eval(const mpq_class& x, const mpq_class& y) const;

    struct NumericEval {
        Complex value;
        // log10 of a bound on |computed - exact| given input errors
        double log10_error;
    };
    // Evaluates at complex points carrying absolute input errors
    // 10^{-x_digits}, 10^{-y_digits}; the reported bound covers input error
    // propagation (first-order, padded) and arithmetic rounding.
    NumericEval eval_numeric(const Complex& x, long x_digits, const Complex& y,
                             long y_digits) const;

    // Bit-exact sparse text: header line, then "i j coefficient" per term
    // sorted by (i, j), each line newline-terminated.
    std::string serialize(const std::string& header) const;
    // Parses the same format; returns the header line separately.
    static std::pair<std::string, BivariatePolynomial> parse(const std::string& text);

  private:
    std::map<Key, mpz_class> terms_;
};

// The level-N modular polynomial, computed by interpolation: at the sample
// points tau_k = i(1 + k/17), k = 0..psi(N), form the monic X-polynomial
// over the level-N orbit of tau_k and interpolate each X-coefficient as a
// polynomial in j(tau_k) with exact rational arithmetic over the dyadic
// sample values. Every rounded coefficient must land within 0.01 of an
// integer and the result must be symmetric, else precision_error is thrown
// and the caller retries with more digits.
BivariatePolynomial modular_polynomial(unsigned long level, long digits);

// Default sample precision for a level: a height estimate for the result
// plus interpolation-conditioning headroom.
long default_digits(unsigned long level);

// modular_polynomial at default digits, doubling on certification failure.
BivariatePolynomial modular_polynomial_auto(unsigned long level);

// Kronecker congruence oracle: Phi_p = (X^p - Y)(X - Y^p) mod p.
// Throws domain_error unless p is prime.
bool kronecker_check(const BivariatePolynomial& phi, unsigned long p);

} // namespace jcover::modpoly
