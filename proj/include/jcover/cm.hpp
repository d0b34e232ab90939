#pragma once

#include <gmpxx.h>

#include <optional>
#include <string>
#include <vector>

#include "jcover/complexnum.hpp"

namespace jcover::cm {

// Primitive reduced binary quadratic form a x^2 + b xy + c y^2 of negative
// discriminant: a > 0, |b| <= a <= c, b >= 0 when |b| = a or a = c,
// gcd(a, b, c) = 1.
struct QuadraticForm {
    mpz_class a, b, c;
    mpz_class discriminant() const { return b * b - 4 * a * c; }
    bool operator==(const QuadraticForm& o) const = default;
};

// All reduced primitive forms of discriminant D, sorted by (a, b); the count
// is the class number h(D). Throws domain_error unless D < 0 and D = 0 or 1
// mod 4. Non-fundamental discriminants are accepted: fixed points of
// arbitrary elliptic group elements live in non-maximal orders too.
std::vector<QuadraticForm> reduced_forms(const mpz_class& disc);

// Monic integer polynomial whose roots are the j-values of the CM points of
// discriminant D; the degree is h(D).
class ClassPolynomial {
  public:
    ClassPolynomial(mpz_class disc, std::vector<mpz_class> coeffs)
        : disc_(std::move(disc)), coeffs_(std::move(coeffs)) {}

    const mpz_class& disc() const { return disc_; }
    std::size_t degree() const { return coeffs_.size() - 1; }
    // ascending coefficients, monic
    const std::vector<mpz_class>& coeffs() const { return coeffs_; }

    bool operator==(const ClassPolynomial& o) const = default;

    mpq_class eval(const mpq_class& x) const;

    struct NumericEval {
        Complex value;
        double log10_error;
    };
    NumericEval eval_numeric(const Complex& x, long x_digits) const;

    // Same sparse term format as the modular polynomial files, with header
    // "HCLASS D <D>".
    std::string serialize() const;
    static ClassPolynomial parse(const std::string& text);

  private:
    mpz_class disc_;
    std::vector<mpz_class> coeffs_;
};

// H_D as the product of (X - j(tau_form)) over the reduced forms, evaluated
// at `digits` decimal digits and rounded with the 0.01 certification;
// throws precision_error when rounding is uncertified.
ClassPolynomial class_polynomial(const mpz_class& disc, long digits);

// digits ~ 15 + (pi sqrt|D| / ln 10) * sum 1/a over the reduced forms.
long default_digits(const mpz_class& disc);

// class_polynomial at the heuristic precision, doubling on failure.
ClassPolynomial class_polynomial_auto(const mpz_class& disc);

// Smallest |D| <= bound with H_D(j) = 0, or empty. Exact test.
std::optional<mpz_class> is_cm_value(const mpq_class& j, unsigned long disc_bound);

} // namespace jcover::cm
