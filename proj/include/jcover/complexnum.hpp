#pragma once

#include "jcover/real.hpp"

namespace jcover {

// Complex number over Real. MPFR has no complex layer on this system, and
// the handful of operations the series evaluation needs fit in a page.
class Complex {
  public:
    Complex() = default;
    explicit Complex(mpfr_prec_t bits) : re_(bits), im_(bits) {}
    Complex(Real re, Real im) : re_(std::move(re)), im_(std::move(im)) {}

    const Real& re() const { return re_; }
    const Real& im() const { return im_; }

    Complex operator+(const Complex& o) const { return {re_ + o.re_, im_ + o.im_}; }
    Complex operator-(const Complex& o) const { return {re_ - o.re_, im_ - o.im_}; }
    Complex operator-() const { return {-re_, -im_}; }

    Complex operator*(const Complex& o) const {
        return {re_ * o.re_ - im_ * o.im_, re_ * o.im_ + im_ * o.re_};
    }

    Complex operator/(const Complex& o) const {
        Real n = o.norm();
        return {(re_ * o.re_ + im_ * o.im_) / n, (im_ * o.re_ - re_ * o.im_) / n};
    }

    Complex& operator+=(const Complex& o) { return *this = *this + o; }
    Complex& operator*=(const Complex& o) { return *this = *this * o; }

    Complex operator+(const Real& r) const { return {re_ + r, im_}; }
    Complex operator*(const Real& r) const { return {re_ * r, im_ * r}; }

    // re^2 + im^2
    Real norm() const { return re_ * re_ + im_ * im_; }

    Real abs() const {
        Real r(std::max(re_.prec(), im_.prec()));
        mpfr_hypot(r.raw(), re_.raw(), im_.raw(), MPFR_RNDN);
        return r;
    }

    Complex conj() const { return {re_, -im_}; }

    // e^{i*t} for real t
    static Complex cis(const Real& t) {
        auto [s, c] = t.sin_cos();
        return {std::move(c), std::move(s)};
    }

  private:
    Real re_, im_;
};

} // namespace jcover
