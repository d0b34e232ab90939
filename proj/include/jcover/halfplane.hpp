#pragma once

#include <gmpxx.h>

#include <optional>
#include <string>
#include <variant>

#include "jcover/complexnum.hpp"
#include "jcover/gl2q.hpp"

namespace jcover::halfplane {

// A point of the upper half plane.
//
// Exact points are imaginary quadratic: tau = (-b + sqrt(D)) / (2a) with
// a > 0, D < 0, and b^2 = D mod 4a, stored as the primitive integer triple
// of the quadratic a*tau^2 + b*tau + c = 0 (c derived). Numeric points are
// arbitrary-precision complex values with positive imaginary part.
class HalfPlanePoint {
  public:
    struct Exact {
        mpz_class a, b, d; // d = discriminant, negative
        mpz_class c() const { return (b * b - d) / (4 * a); }
        bool operator==(const Exact& o) const = default;
    };
    struct Numeric {
        Complex z;
    };

    // Throws domain_error unless a > 0, D < 0 and b^2 = D mod 4a, and
    // reduces the triple to primitive form.
    static HalfPlanePoint exact(mpz_class a, mpz_class b, mpz_class disc);
    // Throws domain_error unless im > 0.
    static HalfPlanePoint numeric(Real re, Real im);
    static HalfPlanePoint numeric_rational(const mpq_class& re, const mpq_class& im,
                                           long digits);

    bool is_exact() const { return std::holds_alternative<Exact>(v_); }
    const Exact& as_exact() const { return std::get<Exact>(v_); }
    const Numeric& as_numeric() const { return std::get<Numeric>(v_); }

    // Both components as Real at the requested precision (exact points take
    // a square root here).
    Complex approx(mpfr_prec_t bits) const;

    bool operator==(const HalfPlanePoint& o) const;

    std::string to_json() const;
    static HalfPlanePoint from_json(const std::string& text);

  private:
    explicit HalfPlanePoint(Exact e) : v_(std::move(e)) {}
    explicit HalfPlanePoint(Numeric n) : v_(std::move(n)) {}
    std::variant<Exact, Numeric> v_;
};

// Moebius action of a group element; exact points stay exact (the quadratic
// transforms covariantly), numeric points are computed at their precision.
HalfPlanePoint apply(const gl2q::GroupElement& g, const HalfPlanePoint& tau);

// The unique fixed point in the upper half plane of an elliptic element
// (trace^2 < 4 * level), as an exact quadratic point; empty for parabolic
// and hyperbolic elements. Throws domain_error on the identity.
std::optional<HalfPlanePoint> fixed_point(const gl2q::GroupElement& g);

// trace^2 < 4 * level; the identity is not special (its fixpoint is not
// unique).
bool is_special(const gl2q::GroupElement& g);

} // namespace jcover::halfplane
