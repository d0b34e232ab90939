#include "jcover/verify.hpp"

#include <algorithm>
#include <cmath>
#include <numeric>
#include <random>
#include <set>
#include <sstream>

#include "jcover/cache.hpp"
#include "jcover/cm.hpp"
#include "jcover/errors.hpp"
#include "jcover/fingal.hpp"
#include "jcover/gl2q.hpp"
#include "jcover/halfplane.hpp"
#include "jcover/hecke.hpp"
#include "jcover/jfun.hpp"
#include "jcover/modelcheck.hpp"
#include "jcover/modpoly.hpp"

namespace jcover::verify {

unsigned long sl2_order(unsigned long n) {
    unsigned long order = n * n * n;
    unsigned long m = n;
    for (unsigned long p = 2; p * p <= m; ++p) {
        if (m % p == 0) {
            order -= order / (p * p);
            while (m % p == 0) m /= p;
        }
    }
    if (m > 1) order -= order / (m * m);
    return order;
}

unsigned long psl2_order(unsigned long n) {
    return n > 2 ? sl2_order(n) / 2 : sl2_order(n);
}

unsigned long pgl2_order(unsigned long n) { return sl2_order(n); }

bool coset_brute_force_matches(unsigned long level, long entry_bound) {
    // independent Hermite reduction in plain integer arithmetic
    auto reduce = [&](long p, long q, long r, long s) {
        long old_r = p, old_s_ = r, x = 1, y = 0, x2 = 0, y2 = 1;
        while (old_s_ != 0) {
            long quot = old_r / old_s_;
            std::swap(old_r -= quot * old_s_, old_s_);
            std::swap(x -= quot * x2, x2);
            std::swap(y -= quot * y2, y2);
        }
        long a = old_r, u = x, v = y; // u*p + v*r = a
        if (a < 0) {
            a = -a;
            u = -u;
            v = -v;
        }
        long det = p * s - q * r;
        long d = det / a;
        long b = u * q + v * s;
        b %= d;
        if (b < 0) b += d;
        return std::array<long, 3>{a, b, d};
    };

    std::set<std::array<long, 3>> expected;
    for (const auto& g : gl2q::coset_representatives(level))
        expected.insert({static_cast<long>(g.a().get_si()),
                         static_cast<long>(g.b().get_si()),
                         static_cast<long>(g.d().get_si())});

    std::set<std::array<long, 3>> seen;
    const long n = static_cast<long>(level);
    for (long p = -entry_bound; p <= entry_bound; ++p)
        for (long q = -entry_bound; q <= entry_bound; ++q)
            for (long r = -entry_bound; r <= entry_bound; ++r)
                for (long s = -entry_bound; s <= entry_bound; ++s) {
                    if (p * s - q * r != n) continue;
                    long g = std::gcd(std::gcd(std::abs(p), std::abs(q)),
                                      std::gcd(std::abs(r), std::abs(s)));
                    if (g != 1) continue;
                    auto h = reduce(p, q, r, s);
                    if (!expected.count(h)) return false;
                    seen.insert(h);
                }
    return seen == expected;
}

namespace {

using gl2q::GroupElement;
using halfplane::HalfPlanePoint;

struct Suite {
    bool quick;
    Report report;

    void check(const std::string& name, bool ok, const std::string& note = "") {
        report.checks.push_back({name, ok, note});
    }

    template <typename F>
    void guarded(const std::string& name, F&& f) {
        try {
            f();
        } catch (const std::exception& e) {
            check(name, false, std::string("exception: ") + e.what());
        }
    }
};

GroupElement random_gamma(std::mt19937_64& rng, int words) {
    // random word in the standard generators
    GroupElement g = GroupElement::identity();
    GroupElement s = GroupElement::of(0, -1, 1, 0);
    GroupElement t = GroupElement::of(1, 1, 0, 1);
    GroupElement tinv = GroupElement::of(1, -1, 0, 1);
    std::uniform_int_distribution<int> pick(0, 2);
    for (int i = 0; i < words; ++i) {
        switch (pick(rng)) {
            case 0: g = g * s; break;
            case 1: g = g * t; break;
            default: g = g * tinv; break;
        }
    }
    return g;
}

GroupElement random_element(std::mt19937_64& rng) {
    std::uniform_int_distribution<long> e(-9, 9);
    for (;;) {
        long a = e(rng), b = e(rng), c = e(rng), d = e(rng);
        if (a * d - b * c > 0) return GroupElement::of(a, b, c, d);
    }
}

HalfPlanePoint random_exact_point(std::mt19937_64& rng) {
    std::uniform_int_distribution<long> ar(1, 6), br(-6, 6), dr(1, 40);
    for (;;) {
        long a = ar(rng), b = br(rng), d = -dr(rng);
        mpz_class num = mpz_class(b) * b - d;
        if (num % (4 * a) != 0) continue;
        return HalfPlanePoint::exact(a, b, d);
    }
}

void gl2q_checks(Suite& su) {
    su.guarded("gl2q.psi-counts", [&] {
        unsigned long bound = su.quick ? 20 : 50;
        for (unsigned long n = 1; n <= bound; ++n)
            if (gl2q::coset_representatives(n).size() != gl2q::psi(n)) {
                su.check("gl2q.psi-counts", false, "N=" + std::to_string(n));
                return;
            }
        su.check("gl2q.psi-counts", true);
    });

    su.guarded("gl2q.coset-brute-force", [&] {
        unsigned long bound = su.quick ? 6 : 12;
        for (unsigned long n = 1; n <= bound; ++n)
            if (!coset_brute_force_matches(n, static_cast<long>(n))) {
                su.check("gl2q.coset-brute-force", false, "N=" + std::to_string(n));
                return;
            }
        su.check("gl2q.coset-brute-force", true);
    });

    su.guarded("gl2q.multiply-associative-scalar", [&] {
        std::mt19937_64 rng(11);
        int trials = su.quick ? 30 : 120;
        for (int i = 0; i < trials; ++i) {
            GroupElement a = random_element(rng), b = random_element(rng),
                         c = random_element(rng);
            if (!((a * b) * c == a * (b * c))) {
                su.check("gl2q.multiply-associative-scalar", false, "associativity");
                return;
            }
            // scalar invariance: (lambda a) * b = a * b for lambda = 7/3
            GroupElement scaled = GroupElement::of_rationals(
                mpq_class(7 * a.a(), 3), mpq_class(7 * a.b(), 3),
                mpq_class(7 * a.c(), 3), mpq_class(7 * a.d(), 3));
            if (!(scaled * b == a * b)) {
                su.check("gl2q.multiply-associative-scalar", false, "scalar");
                return;
            }
        }
        su.check("gl2q.multiply-associative-scalar", true);
    });

    su.guarded("gl2q.same-coset-gamma", [&] {
        std::mt19937_64 rng(12);
        int trials = su.quick ? 25 : 100;
        for (int i = 0; i < trials; ++i) {
            GroupElement g = random_element(rng);
            GroupElement gamma = random_gamma(rng, 8);
            if (!gl2q::same_left_coset(g, gamma * g) ||
                !gl2q::same_left_coset(gamma * g, g) || !gl2q::same_left_coset(g, g)) {
                su.check("gl2q.same-coset-gamma", false);
                return;
            }
        }
        su.check("gl2q.same-coset-gamma", true);
    });

    su.guarded("gl2q.stabilizer-index-psl", [&] {
        std::vector<unsigned long> ns = su.quick ? std::vector<unsigned long>{2, 3}
                                                 : std::vector<unsigned long>{2, 3, 4, 5};
        for (unsigned long n : ns) {
            auto gs = gl2q::coset_representatives(n);
            gs.insert(gs.begin(), GroupElement::identity());
            if (gl2q::stabilizer_index(gs) != psl2_order(n)) {
                su.check("gl2q.stabilizer-index-psl", false, "N=" + std::to_string(n));
                return;
            }
        }
        su.check("gl2q.stabilizer-index-psl", true);
    });
}

void halfplane_checks(Suite& su) {
    su.guarded("halfplane.action-composition", [&] {
        std::mt19937_64 rng(21);
        int trials = su.quick ? 50 : 200;
        for (int i = 0; i < trials; ++i) {
            GroupElement g = random_element(rng), h = random_element(rng);
            HalfPlanePoint tau = random_exact_point(rng);
            if (!(halfplane::apply(g, halfplane::apply(h, tau)) ==
                  halfplane::apply(g * h, tau))) {
                su.check("halfplane.action-composition", false);
                return;
            }
        }
        su.check("halfplane.action-composition", true);
    });

    su.guarded("halfplane.fixed-point-fixed", [&] {
        std::mt19937_64 rng(22);
        int found = 0;
        while (found < (su.quick ? 10 : 40)) {
            GroupElement g = random_element(rng);
            if (g.is_identity() || !halfplane::is_special(g)) continue;
            auto s = halfplane::fixed_point(g);
            if (!s || !(halfplane::apply(g, *s) == *s)) {
                su.check("halfplane.fixed-point-fixed", false, g.str());
                return;
            }
            ++found;
        }
        su.check("halfplane.fixed-point-fixed", true);
    });

    su.guarded("halfplane.fixed-point-conjugation", [&] {
        std::mt19937_64 rng(23);
        int found = 0;
        while (found < (su.quick ? 10 : 40)) {
            GroupElement g = random_element(rng);
            if (g.is_identity() || !halfplane::is_special(g)) continue;
            GroupElement gamma = random_gamma(rng, 6);
            auto lhs = halfplane::fixed_point(gamma * g * gamma.inverse());
            auto rhs = halfplane::apply(gamma, *halfplane::fixed_point(g));
            if (!lhs || !(*lhs == rhs)) {
                su.check("halfplane.fixed-point-conjugation", false);
                return;
            }
            ++found;
        }
        su.check("halfplane.fixed-point-conjugation", true);
    });
}

void jfun_checks(Suite& su) {
    su.guarded("jfun.gamma-invariance", [&] {
        std::mt19937_64 rng(31);
        std::uniform_int_distribution<long> num(-500000, 499999);
        std::uniform_int_distribution<long> imn(1, 999999);
        int trials = su.quick ? 10 : 50;
        long digits = 50;
        Real bound = Real::pow10(1 - digits, 128);
        for (int i = 0; i < trials; ++i) {
            mpq_class x(num(rng), 1000000), y = 1 + mpq_class(imn(rng), 1000000);
            x.canonicalize();
            y.canonicalize();
            auto tau = HalfPlanePoint::numeric_rational(x, y, digits + 25);
            GroupElement gamma = random_gamma(rng, 8);
            Complex a = jfun::evaluate_j(tau, digits);
            Complex b = jfun::evaluate_j(halfplane::apply(gamma, tau), digits);
            if (!((a - b).abs() < bound)) {
                su.check("jfun.gamma-invariance", false,
                         "residual " + (a - b).abs().to_decimal(55));
                return;
            }
        }
        su.check("jfun.gamma-invariance", true);
    });

    su.guarded("jfun.curve-round-trip", [&] {
        std::mt19937_64 rng(32);
        std::uniform_int_distribution<long> num(-100000, 100000);
        std::uniform_int_distribution<long> den(1, 999);
        int trials = su.quick ? 25 : 100;
        for (int i = 0; i < trials; ++i) {
            mpq_class j(num(rng), den(rng));
            j.canonicalize();
            if (j == 0 || j == 1728) continue;
            if (jfun::j_invariant(jfun::curve_from_j(j)) != j) {
                su.check("jfun.curve-round-trip", false, j.get_str());
                return;
            }
        }
        su.check("jfun.curve-round-trip", true);
    });

    su.guarded("jfun.tail-bound", [&] {
        auto tau = HalfPlanePoint::numeric_rational(mpq_class(1, 3), mpq_class(11, 10), 80);
        long digits = 50;
        auto rep = jfun::evaluate_j_report(tau, digits);
        Complex doubled = jfun::evaluate_j_truncated(tau, digits, rep.truncation * 2);
        Real diff = (rep.value - doubled).abs();
        bool ok = diff < Real::pow10(-digits, 128);
        su.check("jfun.tail-bound", ok,
                 "order " + std::to_string(rep.truncation) + " drift " +
                     diff.to_decimal(55));
    });
}

void modpoly_checks(Suite& su) {
    su.guarded("modpoly.orbit-vanishing", [&] {
        std::mt19937_64 rng(41);
        std::uniform_int_distribution<long> num(-500000, 499999);
        unsigned long maxn = su.quick ? 4 : 10;
        int taus = su.quick ? 2 : 5;
        for (unsigned long n = 2; n <= maxn; ++n) {
            auto phi = cache::phi(n);
            auto reps = gl2q::coset_representatives(n);
            for (int t = 0; t < taus; ++t) {
                mpq_class x(num(rng), 1000000), y = 1 + mpq_class(num(rng) + 500001, 2000000);
                x.canonicalize();
                y.canonicalize();
                // enough digits that the certified bound beats the
                // derivative scale of Phi_N at these magnitudes
                long digits = 60 + static_cast<long>(30 * n);
                auto tau = HalfPlanePoint::numeric_rational(x, y, digits + 25);
                auto jt = hecke::JValue::numeric(jfun::evaluate_j(tau, digits), digits);
                for (const auto& g : reps) {
                    auto jg = hecke::JValue::numeric(
                        jfun::evaluate_j(halfplane::apply(g, tau), digits), digits);
                    auto verdict = hecke::related_at_level(jt, jg, n);
                    if (verdict.verdict != hecke::Tri::yes) {
                        su.check("modpoly.orbit-vanishing", false,
                                 "N=" + std::to_string(n) + " residual 10^" +
                                     std::to_string(verdict.log10_residual));
                        return;
                    }
                }
            }
            if (!phi->is_symmetric() || !phi->is_monic_in_x() ||
                phi->deg_x() != gl2q::psi(n)) {
                su.check("modpoly.orbit-vanishing", false,
                         "shape N=" + std::to_string(n));
                return;
            }
        }
        su.check("modpoly.orbit-vanishing", true);
    });

    su.guarded("modpoly.precision-determinism", [&] {
        unsigned long maxn = su.quick ? 3 : 5;
        for (unsigned long n = 2; n <= maxn; ++n) {
            long d = modpoly::default_digits(n);
            if (!(modpoly::modular_polynomial(n, d) ==
                  modpoly::modular_polynomial(n, d + 37))) {
                su.check("modpoly.precision-determinism", false, "N=" + std::to_string(n));
                return;
            }
        }
        su.check("modpoly.precision-determinism", true);
    });

    su.guarded("modpoly.kronecker", [&] {
        std::vector<unsigned long> ps = su.quick ? std::vector<unsigned long>{2, 3}
                                                 : std::vector<unsigned long>{2, 3, 5, 7};
        for (unsigned long p : ps)
            if (!modpoly::kronecker_check(*cache::phi(p), p)) {
                su.check("modpoly.kronecker", false, "p=" + std::to_string(p));
                return;
            }
        su.check("modpoly.kronecker", true);
    });
}

void cm_checks(Suite& su) {
    su.guarded("cm.degree-class-number", [&] {
        long bound = su.quick ? 60 : 200;
        for (long ad = 3; ad <= bound; ++ad) {
            if (ad % 4 != 0 && ad % 4 != 3) continue;
            mpz_class d(-ad);
            auto h = cache::hclass(d);
            if (h->degree() != cm::reduced_forms(d).size()) {
                su.check("cm.degree-class-number", false, "D=-" + std::to_string(ad));
                return;
            }
        }
        su.check("cm.degree-class-number", true);
    });

    su.guarded("cm.special-point-roots", [&] {
        long bound = su.quick ? 3 : 6;
        int tested = 0;
        for (long a = -bound; a <= bound; ++a)
            for (long b = -bound; b <= bound; ++b)
                for (long c = -bound; c <= bound; ++c)
                    for (long d = -bound; d <= bound; ++d) {
                        long det = a * d - b * c;
                        if (det < 1 || det > bound) continue;
                        if ((a + d) * (a + d) >= 4 * det) continue;
                        auto g = GroupElement::of(a, b, c, d);
                        if (!g.level().fits_slong_p() || g.level().get_si() > bound)
                            continue;
                        auto s = halfplane::fixed_point(g);
                        if (!s) continue;
                        mpz_class disc = s->as_exact().d;
                        auto h = cache::hclass(disc);
                        long digits = cm::default_digits(disc) + 10;
                        auto jv = jfun::evaluate_j(*s, digits);
                        auto ev = h->eval_numeric(jv, digits);
                        double residual = ev.value.abs().log10_abs();
                        if (residual > ev.log10_error) {
                            su.check("cm.special-point-roots", false,
                                     g.str() + " residual 10^" + std::to_string(residual));
                            return;
                        }
                        ++tested;
                    }
        su.check("cm.special-point-roots", true,
                 std::to_string(tested) + " elliptic elements");
    });

    su.guarded("cm.precision-stability", [&] {
        for (long ad : {23L, 47L, 71L}) {
            mpz_class d(-ad);
            long digits = cm::default_digits(d);
            if (!(cm::class_polynomial(d, digits) ==
                  cm::class_polynomial(d, digits * 2))) {
                su.check("cm.precision-stability", false, "D=-" + std::to_string(ad));
                return;
            }
        }
        su.check("cm.precision-stability", true);
    });
}

void hecke_checks(Suite& su) {
    su.guarded("hecke.relation-symmetry", [&] {
        std::mt19937_64 rng(51);
        std::uniform_int_distribution<long> v(-100000, 100000);
        int trials = su.quick ? 20 : 60;
        for (int i = 0; i < trials; ++i) {
            auto a = hecke::JValue::exact(mpq_class(v(rng)));
            auto b = hecke::JValue::exact(mpq_class(v(rng)));
            for (unsigned long n : {2ul, 3ul})
                if (hecke::related_at_level(a, b, n).verdict !=
                    hecke::related_at_level(b, a, n).verdict) {
                    su.check("hecke.relation-symmetry", false);
                    return;
                }
        }
        su.check("hecke.relation-symmetry", true);
    });

    su.guarded("hecke.orbit-gamma-multiset", [&] {
        long digits = 60;
        auto tau = HalfPlanePoint::numeric_rational(mpq_class(1, 5), mpq_class(13, 10),
                                                    digits + 25);
        GroupElement gamma = GroupElement::of(1, 1, 1, 2);
        unsigned long n = su.quick ? 2 : 3;
        auto orb1 = hecke::orbit_at_level(tau, n, digits);
        auto orb2 = hecke::orbit_at_level(halfplane::apply(gamma, tau), n, digits);
        // multiset match within tolerance
        std::vector<bool> used(orb2.size(), false);
        Real tol = Real::pow10(-digits + 2, 128);
        for (const auto& v1 : orb1) {
            bool matched = false;
            for (std::size_t k = 0; k < orb2.size(); ++k) {
                if (used[k]) continue;
                Complex d = Complex(v1.complex_value()) - orb2[k].complex_value();
                if (d.abs() < tol) {
                    used[k] = true;
                    matched = true;
                    break;
                }
            }
            if (!matched) {
                su.check("hecke.orbit-gamma-multiset", false);
                return;
            }
        }
        su.check("hecke.orbit-gamma-multiset", true);
    });

    su.guarded("hecke.orbit-relation-levels", [&] {
        unsigned long maxn = su.quick ? 3 : 6;
        std::mt19937_64 rng(53);
        std::uniform_int_distribution<long> num(-400000, 400000);
        for (unsigned long n = 1; n <= maxn; ++n) {
            mpq_class x(num(rng), 1000000), y = 1 + mpq_class(std::abs(num(rng)), 800000);
            x.canonicalize();
            y.canonicalize();
            long digits = 60 + static_cast<long>(30 * n);
            auto tau = HalfPlanePoint::numeric_rational(x, y, digits + 25);
            auto jt = hecke::JValue::numeric(jfun::evaluate_j(tau, digits), digits);
            for (const auto& g : gl2q::coset_representatives(n)) {
                auto jg = hecke::JValue::numeric(
                    jfun::evaluate_j(halfplane::apply(g, tau), digits), digits);
                if (hecke::related_at_level(jt, jg, n).verdict != hecke::Tri::yes) {
                    su.check("hecke.orbit-relation-levels", false,
                             "N=" + std::to_string(n));
                    return;
                }
            }
        }
        su.check("hecke.orbit-relation-levels", true);
    });
}

void fingal_checks(Suite& su) {
    su.guarded("fingal.group-orders", [&] {
        unsigned long bound = su.quick ? 7 : 13;
        for (unsigned long n = 2; n <= bound; ++n) {
            if (fingal::group_elements(n, fingal::Flavor::psl).size() != psl2_order(n)) {
                su.check("fingal.group-orders", false, "PSL N=" + std::to_string(n));
                return;
            }
            if (n <= (su.quick ? 5u : 8u) &&
                fingal::group_elements(n, fingal::Flavor::pgl).size() != pgl2_order(n)) {
                su.check("fingal.group-orders", false, "PGL N=" + std::to_string(n));
                return;
            }
        }
        su.check("fingal.group-orders", true);
    });

    su.guarded("fingal.four-way-counts", [&] {
        unsigned long bound = su.quick ? 5 : 10;
        for (unsigned long n = 1; n <= bound; ++n) {
            unsigned long p = gl2q::psi(n);
            if (fingal::cyclic_subgroups(n).size() != p ||
                gl2q::coset_representatives(n).size() != p ||
                cache::phi(n)->deg_x() != p) {
                su.check("fingal.four-way-counts", false, "N=" + std::to_string(n));
                return;
            }
            auto bij = fingal::subgroup_coset_bijection(n);
            std::set<std::size_t> hit(bij.coset_of_subgroup.begin(),
                                      bij.coset_of_subgroup.end());
            if (hit.size() != p) {
                su.check("fingal.four-way-counts", false,
                         "bijection N=" + std::to_string(n));
                return;
            }
        }
        su.check("fingal.four-way-counts", true);
    });

    su.guarded("fingal.subgroup-action-axioms", [&] {
        std::vector<unsigned long> ns =
            su.quick ? std::vector<unsigned long>{2, 3} : std::vector<unsigned long>{2, 3, 4};
        for (unsigned long n : ns) {
            const auto& els = fingal::group_elements(n, fingal::Flavor::psl);
            const auto& subs = fingal::cyclic_subgroups(n);
            auto id = fingal::FiniteGroupElement::identity(n, fingal::Flavor::psl);
            for (const auto& c : subs)
                if (!(fingal::act_on_subgroups(id, c) == c)) {
                    su.check("fingal.subgroup-action-axioms", false, "identity");
                    return;
                }
            for (const auto& a : els)
                for (const auto& b : els)
                    for (const auto& c : subs)
                        if (!(fingal::act_on_subgroups(a * b, c) ==
                              fingal::act_on_subgroups(a, fingal::act_on_subgroups(b, c)))) {
                            su.check("fingal.subgroup-action-axioms", false, "compat");
                            return;
                        }
            // transitivity on subgroups
            std::set<fingal::CyclicSubgroup> orbit;
            for (const auto& a : els) orbit.insert(fingal::act_on_subgroups(a, subs[0]));
            if (orbit.size() != subs.size()) {
                su.check("fingal.subgroup-action-axioms", false, "transitivity");
                return;
            }
        }
        su.check("fingal.subgroup-action-axioms", true);
    });

    su.guarded("fingal.torsor-free-transitive", [&] {
        std::vector<unsigned long> ns =
            su.quick ? std::vector<unsigned long>{2, 3} : std::vector<unsigned long>{2, 3, 4};
        for (unsigned long n : ns) {
            const auto& els = fingal::group_elements(n, fingal::Flavor::psl);
            for (const auto& u : els) {
                std::set<fingal::FiniteGroupElement> images;
                for (const auto& s : els) images.insert(u * s);
                if (images.size() != els.size()) {
                    su.check("fingal.torsor-free-transitive", false,
                             "N=" + std::to_string(n));
                    return;
                }
            }
        }
        su.check("fingal.torsor-free-transitive", true);
    });

    su.guarded("fingal.truncate-homomorphism", [&] {
        unsigned long big = su.quick ? 6 : 12, small = su.quick ? 3 : 4;
        const auto& els = fingal::group_elements(big, fingal::Flavor::psl);
        for (const auto& a : els)
            for (const auto& b : els)
                if (!((a * b).truncate(small) == a.truncate(small) * b.truncate(small))) {
                    su.check("fingal.truncate-homomorphism", false);
                    return;
                }
        su.check("fingal.truncate-homomorphism", true,
                 std::to_string(els.size() * els.size()) + " pairs");
    });

    su.guarded("fingal.shadow-composition-commutation", [&] {
        unsigned long n = 2;
        const auto& els = fingal::group_elements(n, fingal::Flavor::psl);
        std::map<fingal::TorsorLabel, std::size_t> fiber;
        for (std::size_t i = 0; i < els.size(); ++i)
            fiber.emplace(fingal::TorsorLabel(els[i]), i);
        for (const auto& a : els)
            for (const auto& b : els) {
                auto lhs = fingal::galois_shadow(a * b, fiber);
                auto rhs = fingal::galois_shadow(a, fingal::galois_shadow(b, fiber));
                if (lhs != rhs) {
                    su.check("fingal.shadow-composition-commutation", false, "composition");
                    return;
                }
            }
        // left action by the modular group commutes with every shadow
        for (const auto& gamma : {GroupElement::of(1, 1, 0, 1), GroupElement::of(0, -1, 1, 0)})
            for (const auto& s : els) {
                std::map<fingal::TorsorLabel, std::size_t> moved;
                for (const auto& [lab, v] : fiber) moved.emplace(lab.left_moved(gamma), v);
                auto lhs = fingal::galois_shadow(s, moved);
                std::map<fingal::TorsorLabel, std::size_t> rhs;
                for (const auto& [lab, v] : fingal::galois_shadow(s, fiber))
                    rhs.emplace(lab.left_moved(gamma), v);
                if (lhs != rhs) {
                    su.check("fingal.shadow-composition-commutation", false, "commutation");
                    return;
                }
            }
        su.check("fingal.shadow-composition-commutation", true);
    });
}

void modelcheck_checks(Suite& su) {
    using modelcheck::FiniteLevelStructure;
    using modelcheck::finite_type;

    // Synthetic orbit data with a nontrivial pattern: a collision inside the
    // top level and a genuinely Phi_2-related value pair, so twists act
    // visibly on the type.
    auto synthetic = [&](unsigned long level, long offset) {
        std::map<unsigned long, std::vector<modelcheck::JValue>> orbit;
        for (unsigned long m = 1; m <= level; ++m) {
            if (level % m != 0) continue;
            std::vector<modelcheck::JValue> vals;
            for (std::size_t idx = 0; idx < gl2q::psi(m); ++idx)
                vals.push_back(modelcheck::JValue::exact(
                    mpq_class(20000003 + offset + 211 * static_cast<long>(m * m) +
                              17 * static_cast<long>(idx))));
            if (m == level && vals.size() >= 3) {
                vals[vals.size() - 1] = vals[0];
                vals[1] = modelcheck::JValue::exact(mpq_class(1728 + offset));
                if (vals.size() >= 4)
                    vals[2] = modelcheck::JValue::exact(mpq_class(287496 + offset));
            }
            orbit.emplace(m, std::move(vals));
        }
        return modelcheck::point_from_values("p", level, std::move(orbit),
                                             fingal::TorsorLabel::base(level));
    };

    su.guarded("modelcheck.type-twist-invariance", [&] {
        std::vector<unsigned long> ns =
            su.quick ? std::vector<unsigned long>{2} : std::vector<unsigned long>{2, 3};
        for (unsigned long n : ns) {
            FiniteLevelStructure s(n);
            s.add_point(synthetic(n, 0));
            s.add_point(modelcheck::twist_point(synthetic(n, 1000000), [&] {
                for (const auto& e : fingal::group_elements(n, fingal::Flavor::psl))
                    if (!e.is_identity()) return e;
                throw invariant_error("no twist found");
            }()));
            auto base_type = finite_type(s, {0, 1}, n);
            for (const auto& sigma : fingal::group_elements(n, fingal::Flavor::psl)) {
                auto twisted = s.twist_all(sigma);
                if (!(finite_type(twisted, {0, 1}, n) == base_type)) {
                    su.check("modelcheck.type-twist-invariance", false,
                             "N=" + std::to_string(n));
                    return;
                }
            }
        }
        su.check("modelcheck.type-twist-invariance", true);
    });

    su.guarded("modelcheck.type-truncation-monotone", [&] {
        unsigned long n = 4;
        FiniteLevelStructure s(n);
        s.add_point(synthetic(n, 0));
        // all common twists preserve the level-N type; the induced level-M
        // types must then agree as well
        auto t4 = finite_type(s, {0}, 4);
        auto t2 = finite_type(s, {0}, 2);
        for (const auto& sigma : fingal::group_elements(n, fingal::Flavor::psl)) {
            auto tw = s.twist_all(sigma);
            if (!(finite_type(tw, {0}, 4) == t4) || !(finite_type(tw, {0}, 2) == t2)) {
                su.check("modelcheck.type-truncation-monotone", false);
                return;
            }
        }
        su.check("modelcheck.type-truncation-monotone", true);
    });

    su.guarded("modelcheck.standard-fibers", [&] {
        std::vector<unsigned long> ns =
            su.quick ? std::vector<unsigned long>{2, 3} : std::vector<unsigned long>{2, 3, 4};
        for (unsigned long n : ns) {
            auto witness = modelcheck::nonstandard_fiber_witness(n);
            if (witness.passes_standard_fibers()) {
                su.check("modelcheck.standard-fibers", false,
                         "witness passed at N=" + std::to_string(n));
                return;
            }
            // identification only collapses equal-label duplicates
            if (witness.identify_standard_fibers().size() != 2) {
                su.check("modelcheck.standard-fibers", false, "identification");
                return;
            }
            FiniteLevelStructure dup(n);
            dup.add_point(synthetic(n, 0));
            dup.add_point(synthetic(n, 0));
            if (dup.identify_standard_fibers().size() != 1 ||
                !dup.identify_standard_fibers().passes_standard_fibers()) {
                su.check("modelcheck.standard-fibers", false, "merge");
                return;
            }
        }
        su.check("modelcheck.standard-fibers", true);
    });

    su.guarded("modelcheck.back-and-forth", [&] {
        std::vector<unsigned long> common_levels =
            su.quick ? std::vector<unsigned long>{2} : std::vector<unsigned long>{2, 3, 4};
        for (unsigned long n : common_levels) {
            const auto& els = fingal::group_elements(n, fingal::Flavor::psl);
            FiniteLevelStructure source(n);
            source.add_point(synthetic(n, 0));
            {
                auto q = synthetic(n, 1000000);
                q.name = "q";
                source.add_point(std::move(q));
            }
            // every common twist of the whole target
            for (const auto& sigma : els) {
                auto target = source.twist_all(sigma);
                auto res = modelcheck::extend_partial_iso(source, target, {{0, 0}}, 1);
                if (!res) {
                    su.check("modelcheck.back-and-forth", false,
                             "no extension at N=" + std::to_string(n));
                    return;
                }
            }
            // independent per-point twists at the smaller levels
            if (n <= 3) {
                for (const auto& sa : els)
                    for (const auto& sb : els) {
                        FiniteLevelStructure target(n);
                        target.add_point(modelcheck::twist_point(source.point(0), sa));
                        target.add_point(modelcheck::twist_point(source.point(1), sb));
                        auto res =
                            modelcheck::extend_partial_iso(source, target, {{0, 0}}, 1);
                        if (!res) {
                            su.check("modelcheck.back-and-forth", false,
                                     "per-point twists at N=" + std::to_string(n));
                            return;
                        }
                    }
            }
        }
        su.check("modelcheck.back-and-forth", true);
    });

    su.guarded("modelcheck.orbit-relations", [&] {
        std::vector<GroupElement> gs{GroupElement::identity(),
                                     GroupElement::of(2, 0, 0, 1)};
        auto report = modelcheck::orbit_relation_check(gs, su.quick ? 2 : 4, 80, 7);
        if (!report.pass) {
            su.check("modelcheck.orbit-relations", false,
                     "max residual 10^" + std::to_string(report.max_log10_residual));
            return;
        }
        auto reps = gl2q::coset_representatives(2);
        auto report2 = modelcheck::orbit_relation_check(reps, su.quick ? 1 : 3, 120, 8);
        su.check("modelcheck.orbit-relations", report2.pass,
                 "max residual 10^" + std::to_string(std::max(
                     report.max_log10_residual, report2.max_log10_residual)));
    });
}

} // namespace

Report run(bool quick) {
    Suite su{quick, {}};
    gl2q_checks(su);
    halfplane_checks(su);
    jfun_checks(su);
    modpoly_checks(su);
    cm_checks(su);
    hecke_checks(su);
    fingal_checks(su);
    modelcheck_checks(su);
    return su.report;
}

} // namespace jcover::verify
