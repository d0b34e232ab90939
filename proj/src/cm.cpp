#include "jcover/cm.hpp"

#include <cmath>
#include <sstream>

#include "jcover/cache.hpp"
#include "jcover/errors.hpp"
#include "jcover/halfplane.hpp"
#include "jcover/jfun.hpp"

namespace jcover::cm {

std::vector<QuadraticForm> reduced_forms(const mpz_class& disc) {
    if (disc >= 0) throw domain_error("discriminant must be negative");
    mpz_class r = ((disc % 4) + 4) % 4;
    if (r != 0 && r != 1) throw domain_error("discriminant must be 0 or 1 mod 4");

    std::vector<QuadraticForm> forms;
    mpz_class bound;  // a <= sqrt(|D|/3)
    mpz_class absd = -disc;
    mpz_sqrt(bound.get_mpz_t(), mpz_class(absd / 3).get_mpz_t());
    for (mpz_class a = 1; a <= bound + 1; ++a) {
        for (mpz_class b = -a; b <= a; ++b) {
            if (((b - disc) % 2) != 0) continue; // b = D mod 2
            mpz_class num = b * b - disc;
            if (num % (4 * a) != 0) continue;
            mpz_class c = num / (4 * a);
            if (c < a) continue;
            if (b < 0 && (-b == a || a == c)) continue;
            if (gcd(gcd(a, b), c) != 1) continue;
            forms.push_back(QuadraticForm{a, b, c});
        }
    }
    // (a ascending, then b ascending) is the enumeration order already
    return forms;
}

mpq_class ClassPolynomial::eval(const mpq_class& x) const {
    mpq_class acc = 0;
    for (std::size_t i = coeffs_.size(); i-- > 0;) acc = acc * x + coeffs_[i];
    return acc;
}

ClassPolynomial::NumericEval ClassPolynomial::eval_numeric(const Complex& x,
                                                           long x_digits) const {
    mpfr_prec_t bits = std::max(x.re().prec(), mpfr_prec_t(128));
    Complex acc(bits);
    for (std::size_t i = coeffs_.size(); i-- > 0;)
        acc = acc * x + Real::of(coeffs_[i], bits);

    double lx = std::max(x.abs().log10_abs(), 0.0) + 1e-9;
    double max_term = 0, max_dx = -1e9;
    for (std::size_t i = 0; i < coeffs_.size(); ++i) {
        double lc = coeffs_[i] == 0 ? 0.0
                                    : double(mpz_sizeinbase(coeffs_[i].get_mpz_t(), 10));
        max_term = std::max(max_term, lc + double(i) * lx);
        if (i > 0)
            max_dx = std::max(max_dx, lc + std::log10(double(i)) + double(i - 1) * lx);
    }
    double log_n = std::log10(double(coeffs_.size()) + 1.0) + 0.5;
    double prop = max_dx - double(x_digits) + log_n;
    double rnd = max_term + log_n + 2.0 - double(bits) * 0.30103;
    return {std::move(acc), std::max(prop, rnd) + 0.5};
}

std::string ClassPolynomial::serialize() const {
    std::ostringstream os;
    os << "HCLASS D " << disc_ << "\n";
    for (std::size_t i = 0; i < coeffs_.size(); ++i)
        if (coeffs_[i] != 0) os << i << " 0 " << coeffs_[i].get_str() << "\n";
    return os.str();
}

ClassPolynomial ClassPolynomial::parse(const std::string& text) {
    std::istringstream is(text);
    std::string header;
    if (!std::getline(is, header)) throw domain_error("empty class polynomial text");
    std::istringstream hs(header);
    std::string tag, dtag, dval;
    if (!(hs >> tag >> dtag >> dval) || tag != "HCLASS" || dtag != "D")
        throw domain_error("bad class polynomial header: " + header);
    mpz_class disc(dval);
    std::vector<mpz_class> coeffs;
    std::string line;
    while (std::getline(is, line)) {
        if (line.empty()) continue;
        std::istringstream ls(line);
        unsigned long i = 0, j = 0;
        std::string cs;
        if (!(ls >> i >> j >> cs) || j != 0)
            throw domain_error("bad class polynomial term: " + line);
        if (coeffs.size() <= i) coeffs.resize(i + 1, 0);
        coeffs[i] = mpz_class(cs);
    }
    if (coeffs.empty() || coeffs.back() != 1)
        throw domain_error("class polynomial must be monic");
    return ClassPolynomial(std::move(disc), std::move(coeffs));
}

namespace {

mpz_class round_certified(const mpq_class& v) {
    mpq_class shifted = v + mpq_class(1, 2);
    mpz_class fl;
    mpz_fdiv_q(fl.get_mpz_t(), shifted.get_num().get_mpz_t(),
               shifted.get_den().get_mpz_t());
    mpq_class err = v - mpq_class(fl);
    if (err < 0) err = -err;
    if (err > mpq_class(1, 100))
        throw precision_error("class polynomial rounding uncertified");
    return fl;
}

} // namespace

ClassPolynomial class_polynomial(const mpz_class& disc, long digits) {
    auto forms = reduced_forms(disc);
    if (digits < 10) throw domain_error("need at least 10 digits");
    mpfr_prec_t bits = Real::bits_for_digits(digits + 10);

    std::vector<Complex> coeffs{Complex(Real::of(1, bits), Real(bits))};
    for (const auto& f : forms) {
        auto tau = halfplane::HalfPlanePoint::exact(f.a, f.b, disc);
        Complex root = jfun::evaluate_j(tau, digits);
        std::vector<Complex> next(coeffs.size() + 1, Complex(bits));
        for (std::size_t t = 0; t < coeffs.size(); ++t) {
            next[t + 1] += coeffs[t];
            next[t] = next[t] - coeffs[t] * root;
        }
        coeffs = std::move(next);
    }

    std::vector<mpz_class> out(coeffs.size());
    for (std::size_t i = 0; i < coeffs.size(); ++i) {
        double im_mag = coeffs[i].im().log10_abs();
        if (std::isfinite(im_mag) && im_mag > -2.5)
            throw precision_error("class polynomial drifted off the real axis");
        out[i] = round_certified(coeffs[i].re().to_mpq());
    }
    if (out.back() != 1) throw invariant_error("class polynomial lost monicity");
    return ClassPolynomial(disc, std::move(out));
}

long default_digits(const mpz_class& disc) {
    auto forms = reduced_forms(disc);
    double inv_a = 0;
    for (const auto& f : forms) inv_a += 1.0 / f.a.get_d();
    double absd = mpz_class(-disc).get_d();
    double est = 15.0 + 3.14159265358979 * std::sqrt(absd) / std::log(10.0) * inv_a;
    return static_cast<long>(est) + 10;
}

ClassPolynomial class_polynomial_auto(const mpz_class& disc) {
    long digits = default_digits(disc);
    for (int attempt = 0; attempt < 4; ++attempt) {
        try {
            return class_polynomial(disc, digits);
        } catch (const precision_error&) {
            digits *= 2;
        }
    }
    return class_polynomial(disc, digits);
}

std::optional<mpz_class> is_cm_value(const mpq_class& j, unsigned long disc_bound) {
    if (disc_bound < 3) throw domain_error("discriminant bound must be at least 3");
    for (unsigned long ad = 3; ad <= disc_bound; ++ad) {
        if (ad % 4 != 0 && ad % 4 != 3) continue; // D = -ad must be 0 or 1 mod 4
        mpz_class disc = -mpz_class(static_cast<long>(ad));
        auto h = cache::hclass(disc);
        if (h->eval(j) == 0) return disc;
    }
    return std::nullopt;
}

} // namespace jcover::cm
