#include "jcover/real.hpp"

#include <cmath>
#include <cstdlib>
#include <cstring>
#include <mutex>

#include "jcover/errors.hpp"

namespace jcover {

mpfr_prec_t Real::bits_for_digits(long decimal_digits) {
    if (decimal_digits < 1) decimal_digits = 1;
    // log2(10) = 3.3219...; small constant headroom for the final rounding
    return static_cast<mpfr_prec_t>(decimal_digits * 3.3220 + 16.0);
}

Real Real::of(long v, mpfr_prec_t bits) {
    Real r(bits);
    mpfr_set_si(r.x_, v, MPFR_RNDN);
    return r;
}

Real Real::of(const mpz_class& v, mpfr_prec_t bits) {
    Real r(bits);
    mpfr_set_z(r.x_, v.get_mpz_t(), MPFR_RNDN);
    return r;
}

Real Real::of(const mpq_class& v, mpfr_prec_t bits) {
    Real r(bits);
    mpfr_set_q(r.x_, v.get_mpq_t(), MPFR_RNDN);
    return r;
}

Real Real::parse(const std::string& s, mpfr_prec_t bits) {
    Real r(bits);
    if (mpfr_set_str(r.x_, s.c_str(), 10, MPFR_RNDN) != 0)
        throw domain_error("not a decimal number: " + s);
    return r;
}

Real Real::pi(mpfr_prec_t bits) {
    // mpfr_const_pi caches internally; serialize in case MPFR lacks TLS
    static std::mutex mu;
    std::lock_guard<std::mutex> lock(mu);
    Real r(bits);
    mpfr_const_pi(r.x_, MPFR_RNDN);
    return r;
}

Real Real::pow10(long e, mpfr_prec_t bits) {
    Real r(bits);
    mpfr_ui_pow_ui(r.x_, 10, static_cast<unsigned long>(e < 0 ? -e : e), MPFR_RNDN);
    if (e < 0) mpfr_si_div(r.x_, 1, r.x_, MPFR_RNDN);
    return r;
}

Real Real::operator-() const {
    Real r(prec());
    mpfr_neg(r.x_, x_, MPFR_RNDN);
    return r;
}

namespace {
mpfr_prec_t join(const Real& a, const Real& b) {
    return std::max(a.prec(), b.prec());
}
} // namespace

Real Real::operator+(const Real& o) const {
    Real r(join(*this, o));
    mpfr_add(r.raw(), x_, o.raw(), MPFR_RNDN);
    return r;
}

Real Real::operator-(const Real& o) const {
    Real r(join(*this, o));
    mpfr_sub(r.raw(), x_, o.raw(), MPFR_RNDN);
    return r;
}

Real Real::operator*(const Real& o) const {
    Real r(join(*this, o));
    mpfr_mul(r.raw(), x_, o.raw(), MPFR_RNDN);
    return r;
}

Real Real::operator/(const Real& o) const {
    Real r(join(*this, o));
    mpfr_div(r.raw(), x_, o.raw(), MPFR_RNDN);
    return r;
}

Real Real::operator*(long v) const {
    Real r(prec());
    mpfr_mul_si(r.x_, x_, v, MPFR_RNDN);
    return r;
}

Real Real::operator/(long v) const {
    Real r(prec());
    mpfr_div_si(r.x_, x_, v, MPFR_RNDN);
    return r;
}

Real Real::abs() const {
    Real r(prec());
    mpfr_abs(r.x_, x_, MPFR_RNDN);
    return r;
}

Real Real::sqrt() const {
    if (sign() < 0) throw domain_error("sqrt of a negative real");
    Real r(prec());
    mpfr_sqrt(r.x_, x_, MPFR_RNDN);
    return r;
}

Real Real::exp() const {
    Real r(prec());
    mpfr_exp(r.x_, x_, MPFR_RNDN);
    return r;
}

std::pair<Real, Real> Real::sin_cos() const {
    Real s(prec()), c(prec());
    mpfr_sin_cos(s.raw(), c.raw(), x_, MPFR_RNDN);
    return {std::move(s), std::move(c)};
}

mpq_class Real::to_mpq() const {
    if (mpfr_zero_p(x_)) return mpq_class(0);
    if (!mpfr_number_p(x_)) throw domain_error("non-finite real has no rational value");
    mpz_class m;
    mpfr_exp_t e = mpfr_get_z_2exp(m.get_mpz_t(), x_);
    mpq_class q(m);
    if (e >= 0) {
        mpz_class p2;
        mpz_ui_pow_ui(p2.get_mpz_t(), 2, static_cast<unsigned long>(e));
        q *= mpq_class(p2);
    } else {
        mpz_class p2;
        mpz_ui_pow_ui(p2.get_mpz_t(), 2, static_cast<unsigned long>(-e));
        q /= mpq_class(p2);
    }
    q.canonicalize();
    return q;
}

std::pair<mpz_class, Real> Real::nearest_integer() const {
    mpz_class z;
    mpfr_get_z(z.get_mpz_t(), x_, MPFR_RNDN);
    Real zr = Real::of(z, prec());
    Real dist = (*this - zr).abs();
    return {std::move(z), std::move(dist)};
}

double Real::log10_abs() const {
    if (mpfr_zero_p(x_)) return -HUGE_VAL;
    long exp2 = 0;
    double m = mpfr_get_d_2exp(&exp2, x_, MPFR_RNDN);
    return std::log10(std::fabs(m)) + static_cast<double>(exp2) * 0.30102999566398120;
}

std::string Real::to_decimal(long frac_digits) const {
    if (frac_digits < 0) frac_digits = 0;
    char* buf = nullptr;
    mpfr_asprintf(&buf, "%.*R*f", static_cast<int>(frac_digits), MPFR_RNDN, x_);
    std::string out(buf);
    mpfr_free_str(buf);
    if (out.compare(0, 2, "-0") == 0 &&
        out.find_first_not_of("0.", 1) == std::string::npos)
        out.erase(0, 1); // normalize -0.000 to 0.000
    return out;
}

} // namespace jcover
