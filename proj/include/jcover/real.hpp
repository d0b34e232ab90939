#pragma once

#include <gmpxx.h>
#include <mpfr.h>

#include <string>
#include <utility>

namespace jcover {

// Arbitrary-precision real number with value semantics over mpfr_t.
// Every value carries its own precision (in bits); binary operations round
// to the larger of the two operand precisions, nearest-even.
class Real {
  public:
    Real() { mpfr_init2(x_, 64); mpfr_set_zero(x_, 1); }
    explicit Real(mpfr_prec_t bits) { mpfr_init2(x_, bits); mpfr_set_zero(x_, 1); }
    Real(const Real& o) { mpfr_init2(x_, mpfr_get_prec(o.x_)); mpfr_set(x_, o.x_, MPFR_RNDN); }
    Real(Real&& o) noexcept { mpfr_init2(x_, 64); mpfr_swap(x_, o.x_); }
    Real& operator=(const Real& o) {
        if (this != &o) {
            mpfr_set_prec(x_, mpfr_get_prec(o.x_));
            mpfr_set(x_, o.x_, MPFR_RNDN);
        }
        return *this;
    }
    Real& operator=(Real&& o) noexcept {
        if (this != &o) mpfr_swap(x_, o.x_);
        return *this;
    }
    ~Real() { mpfr_clear(x_); }

    static mpfr_prec_t bits_for_digits(long decimal_digits);

    static Real of(long v, mpfr_prec_t bits);
    static Real of(const mpz_class& v, mpfr_prec_t bits);
    static Real of(const mpq_class& v, mpfr_prec_t bits);
    // Parses a decimal string (integer or fixed-point).
    static Real parse(const std::string& s, mpfr_prec_t bits);
    static Real pi(mpfr_prec_t bits);
    // 10^e at the given precision (e may be negative).
    static Real pow10(long e, mpfr_prec_t bits);

    mpfr_prec_t prec() const { return mpfr_get_prec(x_); }
    const mpfr_t& raw() const { return x_; }
    mpfr_t& raw() { return x_; }

    bool is_zero() const { return mpfr_zero_p(x_); }
    int sign() const { return mpfr_sgn(x_); }

    Real operator-() const;
    Real operator+(const Real& o) const;
    Real operator-(const Real& o) const;
    Real operator*(const Real& o) const;
    Real operator/(const Real& o) const;
    Real& operator+=(const Real& o) { return *this = *this + o; }
    Real& operator-=(const Real& o) { return *this = *this - o; }
    Real& operator*=(const Real& o) { return *this = *this * o; }
    Real& operator/=(const Real& o) { return *this = *this / o; }

    Real operator*(long v) const;
    Real operator/(long v) const;

    bool operator<(const Real& o) const { return mpfr_less_p(x_, o.x_) != 0; }
    bool operator>(const Real& o) const { return mpfr_greater_p(x_, o.x_) != 0; }
    bool operator<=(const Real& o) const { return mpfr_lessequal_p(x_, o.x_) != 0; }
    bool operator>=(const Real& o) const { return mpfr_greaterequal_p(x_, o.x_) != 0; }
    bool operator==(const Real& o) const { return mpfr_equal_p(x_, o.x_) != 0; }
    bool operator!=(const Real& o) const { return !(*this == o); }

    Real abs() const;
    Real sqrt() const;   // requires a non-negative argument
    Real exp() const;
    std::pair<Real, Real> sin_cos() const;

    // Exact dyadic value of this float as a rational.
    mpq_class to_mpq() const;
    // Nearest integer together with the distance |x - z|.
    std::pair<mpz_class, Real> nearest_integer() const;

    double to_double() const { return mpfr_get_d(x_, MPFR_RNDN); }
    // log10 |x| as a double, -inf for zero; used for scale estimates only.
    double log10_abs() const;

    // Fixed-point decimal rendering with exactly `frac_digits` fractional
    // digits; deterministic for a given value and precision.
    std::string to_decimal(long frac_digits) const;

  private:
    mpfr_t x_;
};

} // namespace jcover
