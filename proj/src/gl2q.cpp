#include "jcover/gl2q.hpp"

#include <algorithm>
#include <map>
#include <set>
#include <sstream>

#include "json.hpp"

namespace jcover::gl2q {

namespace {

mpz_class gcd4(const mpz_class& a, const mpz_class& b, const mpz_class& c,
               const mpz_class& d) {
    mpz_class g = gcd(a, b);
    g = gcd(g, c);
    g = gcd(g, d);
    return g;
}

} // namespace

GroupElement GroupElement::of(mpz_class a, mpz_class b, mpz_class c, mpz_class d) {
    mpz_class det = a * d - b * c;
    if (det <= 0) throw domain_error("matrix determinant must be positive");
    mpz_class g = gcd4(a, b, c, d);
    if (g > 1) {
        a /= g; b /= g; c /= g; d /= g;
        det /= g * g;
    }
    // sign: first nonzero of (a, b, c, d) positive
    const mpz_class* lead = &a;
    if (*lead == 0) lead = &b;
    if (*lead == 0) lead = &c;
    if (*lead == 0) lead = &d;
    if (*lead < 0) {
        a = -a; b = -b; c = -c; d = -d;
    }
    return GroupElement(std::move(a), std::move(b), std::move(c), std::move(d),
                        std::move(det));
}

GroupElement GroupElement::of(long a, long b, long c, long d) {
    return of(mpz_class(a), mpz_class(b), mpz_class(c), mpz_class(d));
}

GroupElement GroupElement::of_rationals(const mpq_class& a, const mpq_class& b,
                                        const mpq_class& c, const mpq_class& d) {
    mpz_class l = a.get_den();
    l = lcm(l, b.get_den());
    l = lcm(l, c.get_den());
    l = lcm(l, d.get_den());
    mpq_class la = a * l, lb = b * l, lc = c * l, ld = d * l;
    return of(la.get_num(), lb.get_num(), lc.get_num(), ld.get_num());
}

GroupElement GroupElement::identity() { return of(1, 0, 0, 1); }

bool GroupElement::is_identity() const {
    return a_ == 1 && b_ == 0 && c_ == 0 && d_ == 1;
}

GroupElement GroupElement::operator*(const GroupElement& o) const {
    return of(a_ * o.a_ + b_ * o.c_, a_ * o.b_ + b_ * o.d_,
              c_ * o.a_ + d_ * o.c_, c_ * o.b_ + d_ * o.d_);
}

GroupElement GroupElement::inverse() const {
    // adjugate; the determinant scalar vanishes in the quotient
    return of(d_, -b_, -c_, a_);
}

std::strong_ordering GroupElement::operator<=>(const GroupElement& o) const {
    if (int c = cmp(a_, o.a_); c != 0) return c <=> 0;
    if (int c = cmp(b_, o.b_); c != 0) return c <=> 0;
    if (int c = cmp(c_, o.c_); c != 0) return c <=> 0;
    return cmp(d_, o.d_) <=> 0;
}

std::string GroupElement::to_json() const {
    auto row = [](const mpz_class& x, const mpz_class& y) {
        return nlohmann::json::array({x.get_str(), y.get_str()});
    };
    return nlohmann::json::array({row(a_, b_), row(c_, d_)}).dump();
}

GroupElement GroupElement::from_json(const std::string& text) {
    nlohmann::json j = nlohmann::json::parse(text);
    if (!j.is_array() || j.size() != 2 || !j[0].is_array() || j[0].size() != 2 ||
        !j[1].is_array() || j[1].size() != 2)
        throw domain_error("matrix JSON must be [[a,b],[c,d]]");
    auto ent = [&](int r, int c) {
        const auto& v = j[r][c];
        if (v.is_string()) return mpz_class(v.get<std::string>());
        if (v.is_number_integer()) return mpz_class(v.get<long>());
        throw domain_error("matrix entries must be integers or decimal strings");
    };
    return of(ent(0, 0), ent(0, 1), ent(1, 0), ent(1, 1));
}

std::string GroupElement::str() const {
    std::ostringstream os;
    os << "[[" << a_ << "," << b_ << "],[" << c_ << "," << d_ << "]]";
    return os.str();
}

unsigned long psi(unsigned long n) {
    if (n == 0) throw domain_error("psi is defined for positive levels");
    unsigned long result = n;
    unsigned long m = n;
    for (unsigned long p = 2; p * p <= m; ++p) {
        if (m % p == 0) {
            result += result / p;
            while (m % p == 0) m /= p;
        }
    }
    if (m > 1) result += result / m;
    return result;
}

std::vector<GroupElement> coset_representatives(unsigned long level) {
    if (level == 0) throw domain_error("level must be positive");
    std::vector<GroupElement> reps;
    for (unsigned long a = 1; a <= level; ++a) {
        if (level % a != 0) continue;
        unsigned long d = level / a;
        for (unsigned long b = 0; b < d; ++b) {
            mpz_class g = gcd(gcd(mpz_class(a), mpz_class(b)), mpz_class(d));
            if (g == 1)
                reps.push_back(GroupElement::of(static_cast<long>(a), static_cast<long>(b),
                                                0, static_cast<long>(d)));
        }
    }
    // already sorted by (a, b): a ascends in the outer loop, b in the inner
    return reps;
}

CosetSystem::CosetSystem(unsigned long level)
    : level_(level), reps_(coset_representatives(level)) {
    if (reps_.size() != psi(level))
        throw invariant_error("coset count disagrees with psi(N)");
}

std::size_t CosetSystem::index_of(const GroupElement& g) const {
    if (g.level() != level_) throw domain_error("coset lookup at the wrong level");
    GroupElement h = hermite_form(g);
    auto it = std::lower_bound(reps_.begin(), reps_.end(), h,
                               [](const GroupElement& x, const GroupElement& y) {
                                   return (x <=> y) < 0;
                               });
    if (it == reps_.end() || !(*it == h))
        throw invariant_error("hermite form missing from the coset system");
    return static_cast<std::size_t>(it - reps_.begin());
}

bool same_left_coset(const GroupElement& g, const GroupElement& h) {
    if (g.level() != h.level()) return false;
    // g h^{-1} in adjugate form, content cleared by the normalization;
    // the primitive representative has determinant 1 iff it is in SL2(Z)
    // up to sign
    GroupElement q = g * h.inverse();
    return q.level() == 1;
}

GroupElement hermite_form(const GroupElement& g) {
    // Left-multiply by SL2(Z) to reach [[a,b],[0,d]], a,d > 0, 0 <= b < d.
    mpz_class p = g.a(), q = g.b(), r = g.c(), s = g.d();
    mpz_class u, v, a;
    mpz_gcdext(a.get_mpz_t(), u.get_mpz_t(), v.get_mpz_t(), p.get_mpz_t(), r.get_mpz_t());
    // Row ops: top row = u*(p q) + v*(r s), bottom row = (-r/a)*(p q) + (p/a)*(r s)
    mpz_class b = u * q + v * s;
    mpz_class d = (p * s - q * r) / a; // = level / a, positive since a = gcd > 0
    b = ((b % d) + d) % d;
    return GroupElement::of(a, b, mpz_class(0), d);
}

bool principal_congruence_member(const GroupElement& g, unsigned long n) {
    if (g.level() != 1) throw domain_error("not an element of SL2(Z): level != 1");
    if (n == 0) throw domain_error("modulus must be positive");
    mpz_class m(n);
    auto fits = [&](const mpz_class& a, const mpz_class& b, const mpz_class& c,
                    const mpz_class& d) {
        return (a - 1) % m == 0 && b % m == 0 && c % m == 0 && (d - 1) % m == 0;
    };
    return fits(g.a(), g.b(), g.c(), g.d()) || fits(-g.a(), -g.b(), -g.c(), -g.d());
}

unsigned long stabilizer_index(const std::vector<GroupElement>& gs) {
    if (gs.empty()) throw domain_error("stabilizer of an empty tuple");

    // Per coordinate: the coset system at its own level plus the current label.
    std::vector<CosetSystem> systems;
    std::vector<std::size_t> start;
    systems.reserve(gs.size());
    for (const auto& g : gs) {
        if (!g.level().fits_ulong_p())
            throw domain_error("level too large for coset enumeration");
        systems.emplace_back(g.level().get_ui());
        start.push_back(systems.back().index_of(g));
    }

    const GroupElement gen_s = GroupElement::of(0, -1, 1, 0);
    const GroupElement gen_t = GroupElement::of(1, 1, 0, 1);

    auto step = [&](const std::vector<std::size_t>& state, const GroupElement& gamma) {
        std::vector<std::size_t> next(state.size());
        for (std::size_t i = 0; i < state.size(); ++i) {
            const GroupElement& rep = systems[i].representatives()[state[i]];
            next[i] = systems[i].index_of(rep * gamma);
        }
        return next;
    };

    std::set<std::vector<std::size_t>> seen;
    std::vector<std::vector<std::size_t>> frontier{start};
    seen.insert(start);
    while (!frontier.empty()) {
        std::vector<std::vector<std::size_t>> next_frontier;
        for (const auto& state : frontier) {
            for (const GroupElement* gamma : {&gen_s, &gen_t}) {
                auto nxt = step(state, *gamma);
                if (seen.insert(nxt).second) next_frontier.push_back(std::move(nxt));
            }
        }
        frontier = std::move(next_frontier);
    }
    return static_cast<unsigned long>(seen.size());
}

} // namespace jcover::gl2q
