// Acceptance suite: one line per criterion, nonzero exit on any failure.
// Each criterion pins its tolerance in code and reports its runtime.

#include <chrono>
#include <cmath>
#include <cstdio>
#include <random>
#include <set>
#include <string>
#include <vector>

#include "jcover/cache.hpp"
#include "jcover/cm.hpp"
#include "jcover/fingal.hpp"
#include "jcover/gl2q.hpp"
#include "jcover/halfplane.hpp"
#include "jcover/hecke.hpp"
#include "jcover/jfun.hpp"
#include "jcover/modelcheck.hpp"
#include "jcover/modpoly.hpp"
#include "jcover/verify.hpp"

using namespace jcover;
using gl2q::GroupElement;
using halfplane::HalfPlanePoint;

namespace {

int failures = 0;

struct Criterion {
    const char* name;
    explicit Criterion(const char* n) : name(n) { start = std::chrono::steady_clock::now(); }
    std::chrono::steady_clock::time_point start;
    void finish(bool ok, const std::string& detail = "") {
        auto ms = std::chrono::duration_cast<std::chrono::milliseconds>(
                      std::chrono::steady_clock::now() - start)
                      .count();
        std::printf("%s %-28s (%lld ms)%s%s\n", ok ? "PASS" : "FAIL", name,
                    static_cast<long long>(ms), detail.empty() ? "" : " ",
                    detail.c_str());
        std::fflush(stdout);
        if (!ok) ++failures;
    }
};

GroupElement random_gamma(std::mt19937_64& rng, int words) {
    GroupElement g = GroupElement::identity();
    GroupElement s = GroupElement::of(0, -1, 1, 0);
    GroupElement t = GroupElement::of(1, 1, 0, 1);
    std::uniform_int_distribution<int> pick(0, 1);
    for (int i = 0; i < words; ++i) g = g * (pick(rng) ? s : t);
    return g;
}

// 1. Coset combinatorics
void criterion_cosets() {
    Criterion c("coset-combinatorics");
    bool ok = true;
    for (unsigned long n = 1; n <= 50 && ok; ++n)
        ok = gl2q::coset_representatives(n).size() == gl2q::psi(n);
    for (unsigned long n = 1; n <= 12 && ok; ++n)
        ok = verify::coset_brute_force_matches(n, static_cast<long>(n));
    c.finish(ok);
}

// 2. Modular polynomials at 60 digits
void criterion_modpoly() {
    Criterion c("modular-polynomials");
    bool ok = true;
    std::string detail;
    const long digits = 60;
    std::mt19937_64 rng(1002);
    std::uniform_int_distribution<long> num(-500000, 499999);

    for (unsigned long n : {2ul, 3ul}) {
        auto phi = modpoly::modular_polynomial(n, digits);
        ok = ok && phi.is_symmetric() && phi.is_monic_in_x() &&
             phi.deg_x() == gl2q::psi(n) && modpoly::kronecker_check(phi, n);

        // |Phi_N(j(tau), j(g tau))| < 10^{1-digits} at 5 random tau per
        // representative; evaluation precision is raised until the certified
        // evaluation error sits below the criterion tolerance
        for (int t = 0; t < 5 && ok; ++t) {
            mpq_class x(num(rng), 1000000), y = 1 + mpq_class(num(rng) + 500000, 1000000);
            x.canonicalize();
            y.canonicalize();
            // evaluation precision covers the derivative scale of Phi_N at
            // these magnitudes, so a true zero lands far below 10^{1-digits}
            long eval_digits = digits + 20 + 55 * static_cast<long>(n);
            auto tau = HalfPlanePoint::numeric_rational(x, y, eval_digits + 25);
            Complex jt = jfun::evaluate_j(tau, eval_digits);
            for (const auto& g : gl2q::coset_representatives(n)) {
                Complex jg = jfun::evaluate_j(halfplane::apply(g, tau), eval_digits);
                auto ev = phi.eval_numeric(jt, eval_digits, jg, eval_digits);
                double residual = ev.value.abs().log10_abs();
                if (!(residual < 1.0 - double(digits)) || !(residual <= ev.log10_error)) {
                    ok = false;
                    detail = "residual 10^" + std::to_string(residual) + " at N=" +
                             std::to_string(n);
                }
            }
        }
    }
    // the isogenous CM pair, exactly
    auto phi2 = cache::phi(2);
    ok = ok && phi2->eval(mpq_class(1728), mpq_class(287496)) == 0;
    c.finish(ok, detail);
}

// 3. j-evaluation
void criterion_jeval() {
    Criterion c("j-evaluation");
    bool ok = true;
    Real tol48 = Real::pow10(-48, 128);

    auto ji = jfun::evaluate_j(HalfPlanePoint::exact(1, 0, -4), 50);
    ok = ok && (ji.re() - Real::of(1728L, 256)).abs() < tol48 && ji.im().abs() < tol48;
    auto jrho = jfun::evaluate_j(HalfPlanePoint::exact(1, 1, -3), 50);
    ok = ok && jrho.abs() < tol48;

    std::mt19937_64 rng(1003);
    std::uniform_int_distribution<long> num(-500000, 499999), imn(1, 999999);
    for (int k = 0; k < 50 && ok; ++k) {
        mpq_class x(num(rng), 1000000), y = 1 + mpq_class(imn(rng), 1000000);
        x.canonicalize();
        y.canonicalize();
        auto tau = HalfPlanePoint::numeric_rational(x, y, 80);
        GroupElement gamma = random_gamma(rng, 8);
        Complex a = jfun::evaluate_j(tau, 50);
        Complex b = jfun::evaluate_j(halfplane::apply(gamma, tau), 50);
        ok = ok && (a - b).abs() < tol48;
    }
    c.finish(ok);
}

// 4. Class polynomials
void criterion_classpoly() {
    Criterion c("class-polynomials");
    bool ok = true;

    auto h3 = cm::class_polynomial_auto(-3);
    ok = ok && h3.degree() == 1 && h3.coeffs()[0] == 0;
    auto h4 = cm::class_polynomial_auto(-4);
    ok = ok && h4.degree() == 1 && h4.coeffs()[0] == -1728;
    auto h7 = cm::class_polynomial_auto(-7);
    ok = ok && h7.degree() == 1 && h7.coeffs()[0] == 3375;

    long d23 = cm::default_digits(-23);
    auto h23 = cm::class_polynomial(-23, d23);
    ok = ok && h23.degree() == 3 && h23 == cm::class_polynomial(-23, 2 * d23);
    c.finish(ok);
}

// 5. Finite groups
void criterion_finite_groups() {
    Criterion c("finite-groups");
    bool ok = true;
    for (unsigned long n = 2; n <= 13 && ok; ++n)
        ok = fingal::group_elements(n, fingal::Flavor::psl).size() ==
             verify::psl2_order(n);
    for (unsigned long n = 1; n <= 10 && ok; ++n) {
        unsigned long p = gl2q::psi(n);
        ok = fingal::cyclic_subgroups(n).size() == p && cache::phi(n)->deg_x() == p;
        if (ok) {
            auto bij = fingal::subgroup_coset_bijection(n);
            std::set<std::size_t> image(bij.coset_of_subgroup.begin(),
                                        bij.coset_of_subgroup.end());
            ok = image.size() == p;
            for (std::size_t s = 0; ok && s < p; ++s)
                ok = bij.subgroup_of_coset[bij.coset_of_subgroup[s]] == s;
        }
    }
    c.finish(ok);
}

// 6. Congruence-subgroup index, cross-checked against the enumerated group
void criterion_stabilizer() {
    Criterion c("congruence-index");
    bool ok = true;
    for (unsigned long n : {2ul, 3ul, 4ul, 5ul}) {
        auto gs = gl2q::coset_representatives(n);
        gs.insert(gs.begin(), GroupElement::identity());
        ok = ok && gl2q::stabilizer_index(gs) ==
                       fingal::group_elements(n, fingal::Flavor::psl).size();
    }
    c.finish(ok);
}

// 7. Back-and-forth
void criterion_backforth() {
    Criterion c("back-and-forth");
    bool ok = true;
    std::string detail;

    auto rich_point = [](unsigned long level, long offset, const std::string& name) {
        std::map<unsigned long, std::vector<modelcheck::JValue>> orbit;
        for (unsigned long m = 1; m <= level; ++m) {
            if (level % m != 0) continue;
            std::vector<modelcheck::JValue> vals;
            for (std::size_t idx = 0; idx < gl2q::psi(m); ++idx)
                vals.push_back(modelcheck::JValue::exact(mpq_class(
                    20000003 + offset + 211 * static_cast<long>(m * m) +
                    17 * static_cast<long>(idx))));
            if (m == level && vals.size() >= 3) {
                vals[vals.size() - 1] = vals[0];
                vals[1] = modelcheck::JValue::exact(mpq_class(1728 + offset));
                if (vals.size() >= 4)
                    vals[2] = modelcheck::JValue::exact(mpq_class(287496 + offset));
            }
            orbit.emplace(m, std::move(vals));
        }
        return modelcheck::point_from_values(name, level, std::move(orbit),
                                             fingal::TorsorLabel::base(level));
    };

    for (unsigned long n : {2ul, 3ul, 4ul}) {
        modelcheck::FiniteLevelStructure source(n);
        source.add_point(rich_point(n, 0, "p"));
        source.add_point(rich_point(n, 1000000, "q"));
        const auto& els = fingal::group_elements(n, fingal::Flavor::psl);

        // every common twist of the target: domain types match, extension
        // must succeed
        for (const auto& sigma : els) {
            auto target = source.twist_all(sigma);
            auto src_t = modelcheck::finite_type(source, {0, 1}, n);
            auto tgt_t = modelcheck::finite_type(target, {0, 1}, n);
            if (!(src_t == tgt_t)) {
                ok = false;
                detail = "common-twist type drift at N=" + std::to_string(n);
                break;
            }
            if (!modelcheck::extend_partial_iso(source, target, {{0, 0}}, 1)) {
                ok = false;
                detail = "extension failed at N=" + std::to_string(n);
                break;
            }
        }
        if (!ok) break;

        // independent per-point twists at the two smaller levels
        if (n <= 3) {
            for (const auto& sa : els) {
                for (const auto& sb : els) {
                    modelcheck::FiniteLevelStructure target(n);
                    target.add_point(modelcheck::twist_point(source.point(0), sa));
                    target.add_point(modelcheck::twist_point(source.point(1), sb));
                    if (!modelcheck::extend_partial_iso(source, target, {{0, 0}}, 1)) {
                        ok = false;
                        detail = "per-point twist failure at N=" + std::to_string(n);
                        break;
                    }
                }
                if (!ok) break;
            }
        }
        if (!ok) break;

        // the witness must fail the standard-fibers check at every level
        auto witness = modelcheck::nonstandard_fiber_witness(n);
        if (witness.passes_standard_fibers()) {
            ok = false;
            detail = "witness slipped through at N=" + std::to_string(n);
            break;
        }
    }
    c.finish(ok, detail);
}

// 8. Curve round trip
void criterion_roundtrip() {
    Criterion c("curve-round-trip");
    bool ok = true;
    std::mt19937_64 rng(1008);
    std::uniform_int_distribution<long> num(-2000000, 2000000), den(1, 99999);
    int done = 0;
    while (done < 100) {
        mpq_class j(num(rng), den(rng));
        j.canonicalize();
        if (j == 0 || j == 1728) continue;
        ++done;
        if (jfun::j_invariant(jfun::curve_from_j(j)) != j) ok = false;
    }
    for (long bad : {0L, 1728L}) {
        try {
            jfun::curve_from_j(mpq_class(bad));
            ok = false;
        } catch (const domain_error&) {
        }
    }
    c.finish(ok);
}

// spec'd examples that lean on the full Phi stack up to level 10
void criterion_orbit_search_depth() {
    Criterion c("orbit-search-depth");
    auto a = hecke::JValue::exact(mpq_class(1728));
    auto zero = hecke::JValue::exact(mpq_class(0));
    auto r = hecke::in_hecke_orbit(a, zero, 10);
    c.finish(!r.level.has_value() && !r.indeterminate);
}

} // namespace

int main() {
    criterion_cosets();
    criterion_modpoly();
    criterion_jeval();
    criterion_classpoly();
    criterion_finite_groups();
    criterion_stabilizer();
    criterion_backforth();
    criterion_roundtrip();
    criterion_orbit_search_depth();
    if (failures) {
        std::printf("%d criterion(s) failed\n", failures);
        return 1;
    }
    std::printf("all acceptance criteria passed\n");
    return 0;
}
