#include "jcover/modpoly.hpp"

#include <algorithm>
#include <cmath>
#include <future>
#include <sstream>

#include "jcover/errors.hpp"
#include "jcover/gl2q.hpp"
#include "jcover/halfplane.hpp"
#include "jcover/jfun.hpp"

namespace jcover::modpoly {

void BivariatePolynomial::set(unsigned i, unsigned j, mpz_class c) {
    if (c == 0)
        terms_.erase({i, j});
    else
        terms_[{i, j}] = std::move(c);
}

mpz_class BivariatePolynomial::coeff(unsigned i, unsigned j) const {
    auto it = terms_.find({i, j});
    return it == terms_.end() ? mpz_class(0) : it->second;
}

unsigned BivariatePolynomial::deg_x() const {
    unsigned d = 0;
    for (const auto& [k, c] : terms_) d = std::max(d, k.first);
    return d;
}

unsigned BivariatePolynomial::deg_y() const {
    unsigned d = 0;
    for (const auto& [k, c] : terms_) d = std::max(d, k.second);
    return d;
}

bool BivariatePolynomial::is_symmetric() const {
    for (const auto& [k, c] : terms_)
        if (coeff(k.second, k.first) != c) return false;
    return true;
}

bool BivariatePolynomial::is_monic_in_x() const {
    unsigned d = deg_x();
    return coeff(d, 0) == 1 && [&] {
        for (const auto& [k, c] : terms_)
            if (k.first == d && k.second != 0) return false;
        return true;
    }();
}

mpq_class BivariatePolynomial::eval(const mpq_class& x, const mpq_class& y) const {
    // group terms by X-power, Horner in x over Horner-in-y rows
    std::map<unsigned, std::map<unsigned, const mpz_class*>> rows;
    for (const auto& [k, c] : terms_) rows[k.first][k.second] = &c;
    mpq_class acc = 0;
    unsigned prev_i = 0;
    bool first = true;
    for (auto it = rows.rbegin(); it != rows.rend(); ++it) {
        if (!first)
            for (unsigned s = 0; s < prev_i - it->first; ++s) acc *= x;
        mpq_class row = 0;
        unsigned prev_j = 0;
        bool rfirst = true;
        for (auto jt = it->second.rbegin(); jt != it->second.rend(); ++jt) {
            if (!rfirst)
                for (unsigned s = 0; s < prev_j - jt->first; ++s) row *= y;
            row += *jt->second;
            prev_j = jt->first;
            rfirst = false;
        }
        for (unsigned s = 0; s < prev_j; ++s) row *= y;
        acc += row;
        prev_i = it->first;
        first = false;
    }
    for (unsigned s = 0; s < prev_i; ++s) acc *= x;
    return acc;
}

BivariatePolynomial::NumericEval
BivariatePolynomial::eval_numeric(const Complex& x, long x_digits, const Complex& y,
                                  long y_digits) const {
    mpfr_prec_t bits =
        std::max({x.re().prec(), y.re().prec(), mpfr_prec_t(128)});

    unsigned dx = deg_x(), dy = deg_y();
    std::vector<Complex> xp(dx + 1, Complex(bits)), yp(dy + 1, Complex(bits));
    xp[0] = Complex(Real::of(1, bits), Real(bits));
    yp[0] = xp[0];
    for (unsigned i = 1; i <= dx; ++i) xp[i] = xp[i - 1] * x;
    for (unsigned j = 1; j <= dy; ++j) yp[j] = yp[j - 1] * y;

    Complex acc(bits);
    for (const auto& [k, c] : terms_)
        acc += xp[k.first] * yp[k.second] * Real::of(c, bits);

    // error budget in log10: first-order input propagation plus rounding
    double lx = x.abs().log10_abs(), ly = y.abs().log10_abs();
    if (!std::isfinite(lx)) lx = -300;
    if (!std::isfinite(ly)) ly = -300;
    lx = std::max(lx, 0.0) + 1e-9; // radii padded to at least 1
    ly = std::max(ly, 0.0) + 1e-9;
    double max_term = -1e9, max_dx = -1e9, max_dy = -1e9;
    for (const auto& [k, c] : terms_) {
        double lc = mpz_sizeinbase(c.get_mpz_t(), 10);
        double t = lc + k.first * lx + k.second * ly;
        max_term = std::max(max_term, t);
        if (k.first > 0)
            max_dx = std::max(max_dx, lc + std::log10(double(k.first)) +
                                          (k.first - 1) * lx + k.second * ly);
        if (k.second > 0)
            max_dy = std::max(max_dy, lc + std::log10(double(k.second)) +
                                          k.first * lx + (k.second - 1) * ly);
    }
    double log_n = std::log10(double(terms_.size()) + 1.0) + 0.5;
    double prop_x = max_dx - double(x_digits) + log_n;
    double prop_y = max_dy - double(y_digits) + log_n;
    double rnd = max_term + log_n + 2.0 - double(bits) * 0.30103;
    double b = std::max({prop_x, prop_y, rnd}) + 0.78; // + log10(3 slots), padded

    return {std::move(acc), b};
}

std::string BivariatePolynomial::serialize(const std::string& header) const {
    std::ostringstream os;
    os << header << "\n";
    for (const auto& [k, c] : terms_)
        os << k.first << " " << k.second << " " << c.get_str() << "\n";
    return os.str();
}

std::pair<std::string, BivariatePolynomial>
BivariatePolynomial::parse(const std::string& text) {
    std::istringstream is(text);
    std::string header;
    if (!std::getline(is, header)) throw domain_error("empty polynomial text");
    BivariatePolynomial p;
    std::string line;
    while (std::getline(is, line)) {
        if (line.empty()) continue;
        std::istringstream ls(line);
        unsigned long i = 0, j = 0;
        std::string coeff;
        if (!(ls >> i >> j >> coeff))
            throw domain_error("bad polynomial term line: " + line);
        p.set(static_cast<unsigned>(i), static_cast<unsigned>(j), mpz_class(coeff));
    }
    return {header, std::move(p)};
}

namespace {

struct SampleValues {
    mpq_class node;                 // exact dyadic j(tau_k)
    std::vector<mpq_class> sigma;   // X-coefficients of prod (X - j(g tau_k)),
                                    // indices 0..psi-1 (leading 1 omitted)
};

SampleValues evaluate_sample(const std::vector<gl2q::GroupElement>& reps,
                             unsigned long k, long digits) {
    mpfr_prec_t bits = Real::bits_for_digits(digits + 10);
    auto tau = halfplane::HalfPlanePoint::numeric_rational(
        mpq_class(0), mpq_class(17 + static_cast<long>(k), 17), digits + 10);

    Complex base = jfun::evaluate_j(tau, digits);
    SampleValues out;
    out.node = base.re().to_mpq();

    // monic product over the orbit
    std::vector<Complex> coeffs{Complex(Real::of(1, bits), Real(bits))};
    for (const auto& g : reps) {
        Complex root = jfun::evaluate_j(halfplane::apply(g, tau), digits);
        std::vector<Complex> next(coeffs.size() + 1, Complex(bits));
        for (std::size_t t = 0; t < coeffs.size(); ++t) {
            next[t + 1] += coeffs[t];
            next[t] = next[t] - coeffs[t] * root;
        }
        coeffs = std::move(next);
    }
    // coefficients are real up to accumulated error: the roots come in
    // conjugate pairs since tau_k lies on the imaginary axis
    std::size_t psi = reps.size();
    out.sigma.resize(psi);
    for (std::size_t t = 0; t < psi; ++t) {
        double im_mag = coeffs[t].im().log10_abs();
        double re_mag = std::max(coeffs[t].re().log10_abs(), 1.0);
        if (std::isfinite(im_mag) && im_mag > re_mag - double(digits) / 4)
            throw precision_error("orbit product drifted off the real axis");
        out.sigma[t] = coeffs[t].re().to_mpq();
    }
    return out;
}

mpz_class round_certified(const mpq_class& v) {
    mpq_class half(1, 2);
    mpq_class shifted = v + half;
    mpz_class fl;
    mpz_fdiv_q(fl.get_mpz_t(), shifted.get_num().get_mpz_t(),
               shifted.get_den().get_mpz_t());
    mpq_class err = v - mpq_class(fl);
    if (err < 0) err = -err;
    if (err > mpq_class(1, 100))
        throw precision_error("coefficient rounding uncertified (off by more than 0.01)");
    return fl;
}

} // namespace

BivariatePolynomial modular_polynomial(unsigned long level, long digits) {
    if (level == 0) throw domain_error("level must be positive");
    if (digits < 10) throw domain_error("need at least 10 digits");
    if (level == 1) {
        BivariatePolynomial phi1;
        phi1.set(1, 0, 1);
        phi1.set(0, 1, -1);
        return phi1;
    }

    auto reps = gl2q::coset_representatives(level);
    const std::size_t psi = reps.size();

    std::vector<SampleValues> samples(psi + 1);
    bool parallel = mpfr_buildopt_tls_p() != 0;
    if (parallel) {
        std::vector<std::future<SampleValues>> futs;
        futs.reserve(psi + 1);
        for (std::size_t k = 0; k <= psi; ++k)
            futs.push_back(std::async(std::launch::async, evaluate_sample, std::cref(reps),
                                      static_cast<unsigned long>(k), digits));
        for (std::size_t k = 0; k <= psi; ++k) samples[k] = futs[k].get();
    } else {
        for (std::size_t k = 0; k <= psi; ++k)
            samples[k] = evaluate_sample(reps, static_cast<unsigned long>(k), digits);
    }

    // Lagrange basis over the nodes, exact rational arithmetic:
    // full = prod_k (Y - y_k); basis_k = full / (Y - y_k) / full'(y_k)
    std::vector<mpq_class> full(psi + 2, 0);
    full[0] = 1;
    std::size_t deg = 0;
    for (std::size_t k = 0; k <= psi; ++k) {
        for (std::size_t t = deg + 1; t-- > 0;) {
            mpq_class keep = full[t];
            full[t + 1] += keep;
            full[t] = -keep * samples[k].node;
        }
        ++deg;
    }
    // synthetic division per node and the derivative value
    std::vector<std::vector<mpq_class>> basis_num(psi + 1);
    std::vector<mpq_class> basis_den(psi + 1);
    for (std::size_t k = 0; k <= psi; ++k) {
        std::vector<mpq_class> q(psi + 1, 0);
        mpq_class carry = full[psi + 1];
        for (std::size_t t = psi + 1; t-- > 0;) {
            q[t] = carry;
            carry = full[t] + carry * samples[k].node;
        }
        // carry is full(y_k), zero by construction
        basis_num[k] = std::move(q);
        mpq_class w = 1;
        for (std::size_t l = 0; l <= psi; ++l) {
            if (l == k) continue;
            mpq_class d = samples[k].node - samples[l].node;
            if (d == 0) throw invariant_error("coincident interpolation nodes");
            w *= d;
        }
        basis_den[k] = w;
    }

    BivariatePolynomial phi;
    phi.set(static_cast<unsigned>(psi), 0, 1);
    for (std::size_t i = 0; i < psi; ++i) {
        std::vector<mpq_class> ci(psi + 1, 0);
        for (std::size_t k = 0; k <= psi; ++k) {
            mpq_class scale = samples[k].sigma[i] / basis_den[k];
            if (scale == 0) continue;
            for (std::size_t t = 0; t <= psi; ++t) {
                if (basis_num[k][t] == 0) continue;
                ci[t] += scale * basis_num[k][t];
            }
        }
        for (std::size_t t = 0; t <= psi; ++t) {
            mpz_class c = round_certified(ci[t]);
            if (c != 0) phi.set(static_cast<unsigned>(i), static_cast<unsigned>(t), c);
        }
    }

    if (!phi.is_symmetric())
        throw precision_error("interpolated polynomial is not symmetric");
    if (phi.deg_x() != psi || !phi.is_monic_in_x())
        throw invariant_error("modular polynomial shape is wrong");
    return phi;
}

long default_digits(unsigned long level) {
    if (level <= 1) return 20;
    double psi = double(gl2q::psi(level));
    double height = 2.61 * psi * (std::log(double(level)) + 1.8);
    return 40 + static_cast<long>(height) + static_cast<long>(6.0 * psi);
}

BivariatePolynomial modular_polynomial_auto(unsigned long level) {
    long digits = default_digits(level);
    for (int attempt = 0; attempt < 4; ++attempt) {
        try {
            return modular_polynomial(level, digits);
        } catch (const precision_error&) {
            digits *= 2;
        }
    }
    return modular_polynomial(level, digits);
}

bool kronecker_check(const BivariatePolynomial& phi, unsigned long p) {
    if (p < 2) throw domain_error("modulus must be a prime");
    for (unsigned long d = 2; d * d <= p; ++d)
        if (p % d == 0) throw domain_error("modulus must be a prime");

    mpz_class m(static_cast<unsigned long>(p));
    auto reduced = [&](const mpz_class& c) { return mpz_class(((c % m) + m) % m); };

    // (X^p - Y)(X - Y^p) = X^{p+1} - X^p Y^p - X Y + Y^{p+1}
    std::map<BivariatePolynomial::Key, mpz_class> target;
    unsigned up = static_cast<unsigned>(p);
    target[{up + 1, 0}] = 1;
    target[{up, up}] = reduced(mpz_class(-1));
    target[{1, 1}] = reduced(mpz_class(-1));
    target[{0, up + 1}] = 1;

    std::map<BivariatePolynomial::Key, mpz_class> got;
    for (const auto& [k, c] : phi.terms()) {
        mpz_class r = reduced(c);
        if (r != 0) got[k] = r;
    }
    return got == target;
}

} // namespace jcover::modpoly
