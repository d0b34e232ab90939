#include "jcover/halfplane.hpp"

#include "json.hpp"

namespace jcover::halfplane {

namespace {

// Divides (a, b, c) by its content; keeps a > 0.
void make_primitive(mpz_class& a, mpz_class& b, mpz_class& c) {
    mpz_class g = gcd(gcd(a, b), c);
    if (g > 1) {
        a /= g;
        b /= g;
        c /= g;
    }
}

} // namespace

HalfPlanePoint HalfPlanePoint::exact(mpz_class a, mpz_class b, mpz_class disc) {
    if (a <= 0) throw domain_error("exact point needs a > 0");
    if (disc >= 0) throw domain_error("exact point needs a negative discriminant");
    mpz_class num = b * b - disc;
    if (num % (4 * a) != 0)
        throw domain_error("b^2 - D must be divisible by 4a");
    mpz_class c = num / (4 * a);
    make_primitive(a, b, c);
    mpz_class d = b * b - 4 * a * c;
    return HalfPlanePoint(Exact{std::move(a), std::move(b), std::move(d)});
}

HalfPlanePoint HalfPlanePoint::numeric(Real re, Real im) {
    if (im.sign() <= 0) throw domain_error("numeric point needs Im > 0");
    return HalfPlanePoint(Numeric{Complex(std::move(re), std::move(im))});
}

HalfPlanePoint HalfPlanePoint::numeric_rational(const mpq_class& re, const mpq_class& im,
                                                long digits) {
    mpfr_prec_t bits = Real::bits_for_digits(digits);
    return numeric(Real::of(re, bits), Real::of(im, bits));
}

Complex HalfPlanePoint::approx(mpfr_prec_t bits) const {
    if (is_exact()) {
        const Exact& e = as_exact();
        Real sq = Real::of(mpz_class(-e.d), bits).sqrt();
        Real two_a = Real::of(mpz_class(2 * e.a), bits);
        return {Real::of(mpz_class(-e.b), bits) / two_a, sq / two_a};
    }
    const Complex& z = as_numeric().z;
    return {Real::of(z.re().to_mpq(), bits), Real::of(z.im().to_mpq(), bits)};
}

bool HalfPlanePoint::operator==(const HalfPlanePoint& o) const {
    if (is_exact() != o.is_exact()) return false;
    if (is_exact()) return as_exact() == o.as_exact();
    const Complex& x = as_numeric().z;
    const Complex& y = o.as_numeric().z;
    return x.re() == y.re() && x.im() == y.im();
}

std::string HalfPlanePoint::to_json() const {
    nlohmann::json j;
    if (is_exact()) {
        const Exact& e = as_exact();
        j = {{"a", e.a.get_str()}, {"b", e.b.get_str()}, {"D", e.d.get_str()}};
    } else {
        const Complex& z = as_numeric().z;
        long digits = static_cast<long>(z.im().prec() / 3.3220);
        j = {{"re", z.re().to_decimal(digits)},
             {"im", z.im().to_decimal(digits)},
             {"prec", digits}};
    }
    return j.dump();
}

HalfPlanePoint HalfPlanePoint::from_json(const std::string& text) {
    nlohmann::json j = nlohmann::json::parse(text);
    auto as_mpz = [](const nlohmann::json& v) {
        if (v.is_string()) return mpz_class(v.get<std::string>());
        if (v.is_number_integer()) return mpz_class(v.get<long>());
        throw domain_error("expected an integer or decimal string");
    };
    if (j.contains("D"))
        return exact(as_mpz(j.at("a")), as_mpz(j.at("b")), as_mpz(j.at("D")));
    if (j.contains("re")) {
        long digits = j.value("prec", 50L);
        mpfr_prec_t bits = Real::bits_for_digits(digits);
        return numeric(Real::parse(j.at("re").get<std::string>(), bits),
                       Real::parse(j.at("im").get<std::string>(), bits));
    }
    throw domain_error("point JSON must carry either {a,b,D} or {re,im,prec}");
}

HalfPlanePoint apply(const gl2q::GroupElement& g, const HalfPlanePoint& tau) {
    if (tau.is_exact()) {
        const auto& e = tau.as_exact();
        const mpz_class &p = g.a(), &q = g.b(), &r = g.c(), &s = g.d();
        mpz_class fa = e.a, fb = e.b, fc = e.c();
        // substitute the inverse Moebius map into a t^2 + b t + c
        mpz_class na = fa * s * s - fb * s * r + fc * r * r;
        mpz_class nb = -2 * fa * s * q + fb * (s * p + q * r) - 2 * fc * r * p;
        mpz_class nc = fa * q * q - fb * q * p + fc * p * p;
        if (na < 0) {
            na = -na; nb = -nb; nc = -nc;
        }
        mpz_class disc = nb * nb - 4 * na * nc;
        return HalfPlanePoint::exact(na, nb, disc);
    }
    const Complex& z = tau.as_numeric().z;
    mpfr_prec_t bits = std::max(z.re().prec(), z.im().prec());
    Complex num = z * Real::of(g.a(), bits) + Real::of(g.b(), bits);
    Complex den = z * Real::of(g.c(), bits) + Real::of(g.d(), bits);
    Complex w = num / den;
    return HalfPlanePoint::numeric(w.re(), w.im());
}

std::optional<HalfPlanePoint> fixed_point(const gl2q::GroupElement& g) {
    if (g.is_identity()) throw domain_error("every point is fixed by the identity");
    if (!is_special(g)) return std::nullopt;
    // c t^2 + (d - a) t - b = 0; elliptic forces c != 0
    mpz_class qa = g.c(), qb = g.d() - g.a(), qc = -g.b();
    if (qa < 0) {
        qa = -qa; qb = -qb; qc = -qc;
    }
    mpz_class disc = qb * qb - 4 * qa * qc;
    return HalfPlanePoint::exact(qa, qb, disc);
}

bool is_special(const gl2q::GroupElement& g) {
    mpz_class t = g.trace();
    return t * t < 4 * g.level();
}

} // namespace jcover::halfplane
