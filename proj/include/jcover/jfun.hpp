#pragma once

#include <gmpxx.h>

#include <vector>

#include "jcover/complexnum.hpp"
#include "jcover/halfplane.hpp"

namespace jcover::jfun {

// Exact integer q-expansion of j: c(-1) = 1, c(0) = 744, c(1) = 196884, ...
// coefficients()[k] holds c(k - 1). Computed by dividing the cube of the
// weight-4 Eisenstein series by the discriminant cusp form with integer
// series arithmetic; results are memoized process-wide.
class JSeries {
  public:
    explicit JSeries(std::size_t order);

    std::size_t order() const { return order_; }
    // c(n) for n in [-1, order]
    const mpz_class& coeff(long n) const;

  private:
    std::size_t order_;
    std::vector<mpz_class> coeffs_; // index k <-> c(k-1)
};

JSeries j_coefficients(std::size_t order);

// Evaluation report: value, a bound on the absolute error, and the
// parameters the evaluation actually used.
struct EvalReport {
    Complex value;
    long digits;            // certified: |value - j(tau)| <= 10^(-digits)
    std::size_t truncation; // series order used
    mpq_class reduced_re, reduced_im_sq; // the Gamma-reduced point (im as im^2 when exact)
};

// j(tau) to `digits` decimal digits of absolute accuracy. The point is
// first reduced to the standard fundamental domain (exactly - the input is
// a dyadic or quadratic point), so the series converges geometrically with
// ratio at most e^{-pi*sqrt(3)}; the truncation order comes from the tail
// bound sum_{n>M} e^{4 pi sqrt(n)} |q|^n < 10^(-target).
// Throws domain_error for digits < 1.
Complex evaluate_j(const halfplane::HalfPlanePoint& tau, long digits);
EvalReport evaluate_j_report(const halfplane::HalfPlanePoint& tau, long digits);

// Test hook: same evaluation with a forced truncation order.
Complex evaluate_j_truncated(const halfplane::HalfPlanePoint& tau, long digits,
                             std::size_t order);

// y^2 = 4x^3 - g2 x - g3 over the rationals.
struct WeierstrassCurve {
    mpq_class g2, g3;
    mpq_class discriminant() const { return g2 * g2 * g2 - 27 * g3 * g3; }
};

// The curve y^2 = 4x^3 - c x - c with c = 27 j / (j - 1728), whose
// j-invariant is the input. Throws domain_error for j in {0, 1728}, where
// the formula degenerates; those two values have standard reference curves.
WeierstrassCurve curve_from_j(const mpq_class& j);

// 1728 g2^3 / (g2^3 - 27 g3^2); throws domain_error on singular curves.
mpq_class j_invariant(const WeierstrassCurve& curve);

} // namespace jcover::jfun
