#include "jcover/jfun.hpp"

#include <algorithm>
#include <cmath>
#include <memory>
#include <mutex>

#include "jcover/errors.hpp"

namespace jcover::jfun {

namespace {

// sigma_3(n) for n = 1..len
std::vector<mpz_class> sigma3_table(std::size_t len) {
    std::vector<mpz_class> s(len + 1, 0);
    for (std::size_t d = 1; d <= len; ++d) {
        mpz_class d3 = mpz_class(static_cast<unsigned long>(d));
        d3 = d3 * d3 * d3;
        for (std::size_t n = d; n <= len; n += d) s[n] += d3;
    }
    return s;
}

// product of two truncated integer series, length terms kept
std::vector<mpz_class> series_mul(const std::vector<mpz_class>& a,
                                  const std::vector<mpz_class>& b, std::size_t len) {
    std::vector<mpz_class> out(len, 0);
    for (std::size_t i = 0; i < a.size() && i < len; ++i) {
        if (a[i] == 0) continue;
        std::size_t jmax = std::min(b.size(), len - i);
        for (std::size_t j = 0; j < jmax; ++j) {
            if (b[j] == 0) continue;
            out[i + j] += a[i] * b[j];
        }
    }
    return out;
}

// Coefficients of j from q^{-1} through q^{order}: divide E4^3 by Delta.
// Delta here comes from the Jacobi cube formula for the Euler product:
// phi(q)^3 = sum_k (-1)^k (2k+1) q^{k(k+1)/2}, Delta = q * (phi^3)^8.
std::vector<mpz_class> compute_j_coeffs(std::size_t order) {
    const std::size_t len = order + 2; // coefficients of q^0 .. q^{len-1}

    auto s3 = sigma3_table(len);
    std::vector<mpz_class> e4(len, 0);
    e4[0] = 1;
    for (std::size_t n = 1; n < len; ++n) e4[n] = 240 * s3[n];
    auto e4_sq = series_mul(e4, e4, len);
    auto e4_cu = series_mul(e4_sq, e4, len);

    std::vector<mpz_class> phi3(len, 0);
    for (unsigned long k = 0;; ++k) {
        unsigned long e = k * (k + 1) / 2;
        if (e >= len) break;
        mpz_class t = mpz_class(2 * k + 1);
        phi3[e] += (k % 2 == 0) ? t : -t;
    }
    auto p6 = series_mul(phi3, phi3, len);
    auto p12 = series_mul(p6, p6, len);
    auto p24 = series_mul(p12, p12, len);
    // Delta = q * p24, so Delta's coefficient of q^m is p24[m-1], Delta_1 = 1

    // j * Delta = E4^3: the q^t coefficient gives
    //   c_{t-1} = A_t - sum_{m=2}^{t+1} Delta_m c_{t-m}
    // with c stored as c[k] = c_{k-1}.
    std::vector<mpz_class> c(order + 2);
    for (std::size_t t = 0; t <= order + 1; ++t) {
        mpz_class acc = e4_cu[t];
        for (std::size_t m = 2; m <= t + 1; ++m) {
            if (p24[m - 1] == 0) continue;
            acc -= p24[m - 1] * c[t - m + 1];
        }
        c[t] = acc;
    }
    return c;
}

class SeriesCache {
  public:
    std::shared_ptr<const std::vector<mpz_class>> at_least(std::size_t order) {
        std::lock_guard<std::mutex> lock(mu_);
        if (!coeffs_ || coeffs_->size() < order + 2) {
            std::size_t target =
                std::max(order, coeffs_ ? coeffs_->size() * 2 : std::size_t{32});
            coeffs_ = std::make_shared<const std::vector<mpz_class>>(
                compute_j_coeffs(target));
        }
        return coeffs_;
    }

  private:
    std::mutex mu_;
    std::shared_ptr<const std::vector<mpz_class>> coeffs_;
};

SeriesCache& cache() {
    static SeriesCache c;
    return c;
}

// Exact reduction of a rational complex point to the standard fundamental
// domain |Re| <= 1/2, |tau| >= 1.
void reduce_rational_point(mpq_class& x, mpq_class& y) {
    for (;;) {
        // shift Re into [-1/2, 1/2]
        mpq_class shifted = x + mpq_class(1, 2);
        mpz_class fl;
        mpz_fdiv_q(fl.get_mpz_t(), shifted.get_num().get_mpz_t(),
                   shifted.get_den().get_mpz_t());
        x -= mpq_class(fl);
        mpq_class n = x * x + y * y;
        if (n >= 1) break;
        x = -x / n;
        y = y / n;
    }
}

// Reduce an exact quadratic point by reducing its quadratic triple.
void reduce_exact_triple(mpz_class& a, mpz_class& b, mpz_class& c) {
    for (;;) {
        // normalize: -a < b <= a
        if (b > a || b <= -a) {
            mpz_class twoa = 2 * a;
            mpz_class r = ((b % twoa) + twoa) % twoa; // r in [0, 2a)
            if (r > a) r -= twoa;                     // r in (-a, a]
            mpz_class k = (b - r) / twoa;
            c += -b * k + a * k * k;
            b = r;
        }
        if (a > c) {
            std::swap(a, c);
            b = -b;
        } else {
            break;
        }
    }
    if (a == c && b < 0) b = -b;
}

struct ReducedPoint {
    bool exact;
    mpq_class re;      // exact: -b/(2a)
    mpq_class im_sq;   // exact: |D|/(4a^2)
    mpq_class nre, nim; // numeric case
};

ReducedPoint reduce(const halfplane::HalfPlanePoint& tau) {
    ReducedPoint out{};
    if (tau.is_exact()) {
        const auto& e = tau.as_exact();
        mpz_class a = e.a, b = e.b, c = e.c();
        reduce_exact_triple(a, b, c);
        out.exact = true;
        out.re = mpq_class(-b) / mpq_class(2 * a);
        out.re.canonicalize();
        out.im_sq = mpq_class(4 * a * c - b * b) / mpq_class(4 * a * a);
        out.im_sq.canonicalize();
        return out;
    }
    const Complex& z = tau.as_numeric().z;
    mpq_class x = z.re().to_mpq();
    mpq_class y = z.im().to_mpq();
    reduce_rational_point(x, y);
    out.exact = false;
    out.nre = x;
    out.nim = y;
    return out;
}

// Smallest M with sum_{n > M} e^{4 pi sqrt(n)} |q|^n < 10^{-target}, where
// |q| = e^{-2 pi y}. Works in natural logs with doubles; y >= sqrt(3)/2
// after reduction, so consecutive terms decay by at least e^{2pi/sqrt(n)} /
// e^{2 pi y} and the tail is under twice its first term once n >= 4.
std::size_t truncation_order(double y, long target_digits) {
    const double pi = 3.14159265358979323846;
    const double need = -(static_cast<double>(target_digits) + 1.0) * std::log(10.0);
    std::size_t m = 4;
    for (;; ++m) {
        double n = static_cast<double>(m + 1);
        double log_term = 4.0 * pi * std::sqrt(n) - 2.0 * pi * y * n;
        if (log_term + std::log(2.0) < need) break;
        if (m > 2000000) throw precision_error("truncation order exploded");
    }
    return m;
}

Complex eval_series_at(const ReducedPoint& p, long digits, std::size_t forced_order,
                       EvalReport* report) {
    // scale of the result: |j| <= ~e^{2 pi y} + small
    double y_est = p.exact ? std::sqrt(mpq_class(p.im_sq).get_d())
                           : mpq_class(p.nim).get_d();
    long scale_digits = static_cast<long>(2.0 * 3.14159265358979 * y_est / std::log(10.0)) + 4;
    long work_digits = digits + scale_digits + 20;
    mpfr_prec_t bits = Real::bits_for_digits(work_digits);

    std::size_t order = forced_order != 0
                            ? forced_order
                            : truncation_order(y_est, digits + scale_digits + 10);
    auto coeffs_ptr = cache().at_least(order);
    const std::vector<mpz_class>& coeffs = *coeffs_ptr;

    // q = e^{2 pi i tau}
    Real pi = Real::pi(bits);
    Real re, im;
    if (p.exact) {
        re = Real::of(p.re, bits);
        im = Real::of(p.im_sq, bits).sqrt();
    } else {
        re = Real::of(p.nre, bits);
        im = Real::of(p.nim, bits);
    }
    Real two_pi = pi * 2;
    Real radius = (-(two_pi * im)).exp();
    Complex q = Complex::cis(two_pi * re) * radius;

    // Horner over c(-1) .. c(order), then divide once by q
    Complex acc(Real::of(coeffs[order + 1], bits), Real(bits));
    for (std::size_t k = order + 1; k-- > 0;) {
        acc = acc * q + Real::of(coeffs[k], bits);
    }
    Complex value = acc / q;

    if (report) {
        report->digits = digits;
        report->truncation = order;
        report->reduced_re = p.exact ? p.re : p.nre;
        report->reduced_im_sq = p.exact ? p.im_sq : p.nim * p.nim;
    }
    return value;
}

} // namespace

JSeries::JSeries(std::size_t order) : order_(order), coeffs_(*cache().at_least(order)) {
    coeffs_.resize(order + 2);
}

const mpz_class& JSeries::coeff(long n) const {
    if (n < -1 || n > static_cast<long>(order_))
        throw domain_error("series coefficient out of range");
    return coeffs_[static_cast<std::size_t>(n + 1)];
}

JSeries j_coefficients(std::size_t order) { return JSeries(order); }

Complex evaluate_j(const halfplane::HalfPlanePoint& tau, long digits) {
    if (digits < 1) throw domain_error("precision must be at least one digit");
    ReducedPoint p = reduce(tau);
    return eval_series_at(p, digits, 0, nullptr);
}

EvalReport evaluate_j_report(const halfplane::HalfPlanePoint& tau, long digits) {
    if (digits < 1) throw domain_error("precision must be at least one digit");
    ReducedPoint p = reduce(tau);
    EvalReport rep{};
    rep.value = eval_series_at(p, digits, 0, &rep);
    return rep;
}

Complex evaluate_j_truncated(const halfplane::HalfPlanePoint& tau, long digits,
                             std::size_t order) {
    if (digits < 1) throw domain_error("precision must be at least one digit");
    ReducedPoint p = reduce(tau);
    return eval_series_at(p, digits, order, nullptr);
}

WeierstrassCurve curve_from_j(const mpq_class& j) {
    if (j == 0 || j == 1728)
        throw domain_error("j = 0 and j = 1728 are excluded; use the reference curves");
    mpq_class c = 27 * j / (j - 1728);
    c.canonicalize();
    return WeierstrassCurve{c, c};
}

mpq_class j_invariant(const WeierstrassCurve& curve) {
    mpq_class disc = curve.discriminant();
    if (disc == 0) throw domain_error("singular curve has no j-invariant");
    mpq_class g2cu = curve.g2 * curve.g2 * curve.g2;
    mpq_class out = 1728 * g2cu / disc;
    out.canonicalize();
    return out;
}

} // namespace jcover::jfun
