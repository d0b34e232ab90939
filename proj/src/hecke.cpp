#include "jcover/hecke.hpp"

#include <cmath>

#include "jcover/cache.hpp"
#include "jcover/cm.hpp"
#include "jcover/errors.hpp"
#include "jcover/gl2q.hpp"
#include "jcover/jfun.hpp"

namespace jcover::hecke {

namespace {
// indeterminate band: residuals within this factor above the bound are not
// trusted as nonzero
constexpr double band_log10 = 4.0;
} // namespace

Complex JValue::approx(mpfr_prec_t bits) const {
    if (is_exact()) return {Real::of(rational(), bits), Real(bits)};
    const Complex& z = complex_value();
    return {Real::of(z.re().to_mpq(), bits), Real::of(z.im().to_mpq(), bits)};
}

bool JValue::operator==(const JValue& o) const {
    if (is_exact() != o.is_exact()) return false;
    if (is_exact()) return rational() == o.rational();
    const Complex &a = complex_value(), &b = o.complex_value();
    return a.re() == b.re() && a.im() == b.im();
}

bool JValue::operator<(const JValue& o) const {
    if (is_exact() != o.is_exact()) return is_exact();
    if (is_exact()) return rational() < o.rational();
    const Complex &a = complex_value(), &b = o.complex_value();
    if (a.re() != b.re()) return a.re() < b.re();
    return a.im() < b.im();
}

std::vector<JValue> orbit_at_level(const halfplane::HalfPlanePoint& tau,
                                   unsigned long level, long digits) {
    auto reps = gl2q::coset_representatives(level);
    std::vector<JValue> out;
    out.reserve(reps.size());
    for (const auto& g : reps)
        out.push_back(JValue::numeric(
            jfun::evaluate_j(halfplane::apply(g, tau), digits), digits));
    return out;
}

RelationVerdict related_at_level(const JValue& j1, const JValue& j2,
                                 unsigned long level) {
    if (level == 0) throw domain_error("level must be positive");

    if (j1.is_exact() && j2.is_exact()) {
        mpq_class v = level == 1
                          ? j1.rational() - j2.rational()
                          : cache::phi(level)->eval(j1.rational(), j2.rational());
        return {v == 0 ? Tri::yes : Tri::no,
                v == 0 ? -HUGE_VAL
                       : mpz_sizeinbase(v.get_num().get_mpz_t(), 10) -
                             double(mpz_sizeinbase(v.get_den().get_mpz_t(), 10)),
                -HUGE_VAL};
    }

    mpfr_prec_t bits = 256;
    if (!j1.is_exact())
        bits = std::max(bits, j1.complex_value().re().prec());
    if (!j2.is_exact())
        bits = std::max(bits, j2.complex_value().re().prec());
    Complex x = j1.approx(bits), y = j2.approx(bits);

    double residual, bound;
    if (level == 1) {
        residual = (x - y).abs().log10_abs();
        bound = -double(std::min(j1.digits(), j2.digits())) + 0.5;
    } else {
        auto ev = cache::phi(level)->eval_numeric(x, j1.digits(), y, j2.digits());
        residual = ev.value.abs().log10_abs();
        bound = ev.log10_error;
    }

    Tri verdict;
    if (residual <= bound)
        verdict = Tri::yes;
    else if (residual > bound + band_log10)
        verdict = Tri::no;
    else
        verdict = Tri::indeterminate;
    return {verdict, residual, bound};
}

OrbitSearch in_hecke_orbit(const JValue& j1, const JValue& j2,
                           unsigned long max_level) {
    if (max_level == 0) throw domain_error("level bound must be positive");
    OrbitSearch out;
    for (unsigned long n = 1; n <= max_level; ++n) {
        auto r = related_at_level(j1, j2, n);
        if (r.verdict == Tri::yes) {
            out.level = n;
            return out;
        }
        if (r.verdict == Tri::indeterminate) out.indeterminate = true;
    }
    return out;
}

namespace {

// Bounded CM sweep for a numeric j-value.
Tri numeric_cm_scan(const JValue& j, unsigned long disc_bound) {
    mpfr_prec_t bits = std::max(j.complex_value().re().prec(), mpfr_prec_t(256));
    Complex z = j.approx(bits);
    bool saw_band = false;
    for (unsigned long ad = 3; ad <= disc_bound; ++ad) {
        if (ad % 4 != 0 && ad % 4 != 3) continue;
        auto h = cache::hclass(-mpz_class(static_cast<long>(ad)));
        auto ev = h->eval_numeric(z, j.digits());
        double residual = ev.value.abs().log10_abs();
        if (residual <= ev.log10_error) return Tri::yes;
        if (residual <= ev.log10_error + band_log10) saw_band = true;
    }
    return saw_band ? Tri::indeterminate : Tri::no;
}

Tri is_cm(const JValue& j, unsigned long disc_bound) {
    if (j.is_exact())
        return cm::is_cm_value(j.rational(), disc_bound) ? Tri::yes : Tri::no;
    return numeric_cm_scan(j, disc_bound);
}

} // namespace

BoundedVerdict g_independent(const std::vector<halfplane::HalfPlanePoint>& taus,
                             unsigned long max_level, unsigned long disc_bound,
                             long digits) {
    BoundedVerdict out{Tri::yes, max_level, disc_bound};
    std::vector<JValue> js;
    js.reserve(taus.size());
    for (const auto& tau : taus) {
        if (tau.is_exact()) {
            // an imaginary quadratic point is the fixed point of an elliptic
            // element, hence special
            out.verdict = Tri::no;
            return out;
        }
        js.push_back(JValue::numeric(jfun::evaluate_j(tau, digits), digits));
    }
    for (const auto& j : js) {
        Tri cm_flag = numeric_cm_scan(j, disc_bound);
        if (cm_flag == Tri::yes) {
            out.verdict = Tri::no;
            return out;
        }
        if (cm_flag == Tri::indeterminate) out.verdict = Tri::indeterminate;
    }
    for (std::size_t i = 0; i < js.size(); ++i)
        for (std::size_t k = i + 1; k < js.size(); ++k) {
            auto found = in_hecke_orbit(js[i], js[k], max_level);
            if (found.level) {
                out.verdict = Tri::no;
                return out;
            }
            if (found.indeterminate) out.verdict = Tri::indeterminate;
        }
    return out;
}

BoundedVerdict strongly_g_independent(const std::vector<JValue>& js,
                                      unsigned long max_level,
                                      unsigned long disc_bound) {
    BoundedVerdict out{Tri::yes, max_level, disc_bound};
    for (const auto& j : js) {
        Tri cm_flag = is_cm(j, disc_bound);
        if (cm_flag == Tri::yes) {
            out.verdict = Tri::no;
            return out;
        }
        if (cm_flag == Tri::indeterminate) out.verdict = Tri::indeterminate;
    }
    for (std::size_t i = 0; i < js.size(); ++i)
        for (std::size_t k = i + 1; k < js.size(); ++k) {
            auto found = in_hecke_orbit(js[i], js[k], max_level);
            if (found.level) {
                out.verdict = Tri::no;
                return out;
            }
            if (found.indeterminate) out.verdict = Tri::indeterminate;
        }
    return out;
}

} // namespace jcover::hecke
