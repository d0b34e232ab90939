#pragma once

#include <gmpxx.h>

#include <optional>
#include <variant>
#include <vector>

#include "jcover/complexnum.hpp"
#include "jcover/halfplane.hpp"

namespace jcover::hecke {

// Three-valued verdict. Numeric comparisons that land inside the error band
// stay indeterminate instead of being coerced to a boolean; downstream type
// computations refuse to build on them.
enum class Tri { no = 0, yes = 1, indeterminate = 2 };

// A value of the field sort: an exact rational or a certified numeric
// complex value with absolute error at most 10^(-digits). Numeric equality
// is equality of representation.
class JValue {
  public:
    static JValue exact(mpq_class v) { return JValue(std::move(v)); }
    static JValue numeric(Complex z, long digits) {
        return JValue(Numeric{std::move(z), digits});
    }

    bool is_exact() const { return std::holds_alternative<mpq_class>(v_); }
    const mpq_class& rational() const { return std::get<mpq_class>(v_); }
    const Complex& complex_value() const { return std::get<Numeric>(v_).z; }
    long digits() const { return is_exact() ? exact_digits : std::get<Numeric>(v_).digits; }

    // Numeric rendering at the given working precision.
    Complex approx(mpfr_prec_t bits) const;

    bool operator==(const JValue& o) const;
    bool operator<(const JValue& o) const; // total order, for interning

    // stands in for "no input error" in log10 error budgets
    static constexpr long exact_digits = 1000000;

  private:
    struct Numeric {
        Complex z;
        long digits;
    };
    explicit JValue(mpq_class v) : v_(std::move(v)) {}
    explicit JValue(Numeric n) : v_(std::move(n)) {}
    std::variant<mpq_class, Numeric> v_;
};

// j over the level-N coset representatives of tau, in representative order;
// length psi(N).
std::vector<JValue> orbit_at_level(const halfplane::HalfPlanePoint& tau,
                                   unsigned long level, long digits);

struct RelationVerdict {
    Tri verdict;
    double log10_residual; // -inf when the evaluation is exactly zero
    double log10_bound;    // certified error bound (numeric paths only)
};

// Does Phi_N vanish on the pair? Exact inputs are decided exactly; numeric
// inputs yield yes when the residual sits below the certified bound, no when
// it clears the bound by the safety factor, indeterminate in between.
RelationVerdict related_at_level(const JValue& j1, const JValue& j2,
                                 unsigned long level);

struct OrbitSearch {
    std::optional<unsigned long> level; // smallest level that relates them
    bool indeterminate = false;         // some level could not be decided
};

OrbitSearch in_hecke_orbit(const JValue& j1, const JValue& j2,
                           unsigned long max_level);

// A bounded verdict: the predicate was checked for relations up to
// max_level and CM discriminants up to disc_bound; those bounds are part of
// the answer.
struct BoundedVerdict {
    Tri verdict;
    unsigned long max_level;
    unsigned long disc_bound;
};

// No point is special and no pair is related at any level <= max_level.
// Exact quadratic points are special outright; numeric points are swept
// against the class polynomials with |D| <= disc_bound.
BoundedVerdict g_independent(const std::vector<halfplane::HalfPlanePoint>& taus,
                             unsigned long max_level, unsigned long disc_bound = 200,
                             long digits = 60);

// Pairwise Hecke-unrelated up to max_level and no value is a CM j-value
// with |D| <= disc_bound.
BoundedVerdict strongly_g_independent(const std::vector<JValue>& js,
                                      unsigned long max_level,
                                      unsigned long disc_bound = 200);

} // namespace jcover::hecke
