#pragma once

// Test-only oracles: independent routes to values the library computes.
// These deliberately avoid the implementation paths they check.

#include <gmpxx.h>

#include <cstdint>
#include <numeric>
#include <random>
#include <vector>

namespace oracle {

// psi(N) by direct divisor-sum counting of Hermite triples: the number of
// (a, b, d) with ad = N, 0 <= b < d, gcd(a, b, d) = 1.
inline unsigned long psi_by_count(unsigned long n) {
    unsigned long count = 0;
    for (unsigned long a = 1; a <= n; ++a) {
        if (n % a) continue;
        unsigned long d = n / a;
        for (unsigned long b = 0; b < d; ++b)
            if (std::gcd(std::gcd(a, b), d) == 1) ++count;
    }
    return count;
}

// sigma_k(n)
inline mpz_class sigma(unsigned long k, unsigned long n) {
    mpz_class s = 0;
    for (unsigned long d = 1; d <= n; ++d) {
        if (n % d) continue;
        mpz_class p;
        mpz_ui_pow_ui(p.get_mpz_t(), d, k);
        s += p;
    }
    return s;
}

// j-expansion coefficients through an independent route: the discriminant
// form as (E4^3 - E6^2) / 1728 instead of the eta-product, then the same
// division rearranged as an explicit linear solve per coefficient.
inline std::vector<mpz_class> j_coeffs_by_eisenstein(std::size_t order) {
    const std::size_t len = order + 3; // delta is consumed through index order+2
    std::vector<mpz_class> e4(len, 0), e6(len, 0);
    e4[0] = 1;
    e6[0] = 1;
    for (std::size_t n = 1; n < len; ++n) {
        e4[n] = 240 * sigma(3, n);
        e6[n] = -504 * sigma(5, n);
    }
    auto mul = [&](const std::vector<mpz_class>& a, const std::vector<mpz_class>& b) {
        std::vector<mpz_class> out(len, 0);
        for (std::size_t i = 0; i < len; ++i) {
            if (a[i] == 0) continue;
            for (std::size_t j = 0; i + j < len; ++j) {
                if (b[j] == 0) continue;
                out[i + j] += a[i] * b[j];
            }
        }
        return out;
    };
    auto e4cu = mul(mul(e4, e4), e4);
    auto e6sq = mul(e6, e6);
    std::vector<mpz_class> delta(len, 0);
    for (std::size_t n = 0; n < len; ++n) {
        mpz_class num = e4cu[n] - e6sq[n];
        if (num % 1728 != 0) throw std::runtime_error("delta oracle: 1728 does not divide");
        delta[n] = num / 1728;
    }
    if (delta[0] != 0 || delta[1] != 1)
        throw std::runtime_error("delta oracle: wrong leading coefficients");

    // c_{t-1} = A_t - sum_{m=2}^{t+1} delta_m c_{t-m}
    std::vector<mpz_class> c(order + 2);
    for (std::size_t t = 0; t <= order + 1; ++t) {
        mpz_class acc = e4cu[t];
        for (std::size_t m = 2; m <= t + 1 && m < len; ++m)
            acc -= delta[m] * c[t - m + 1];
        c[t] = acc;
    }
    return c; // c[k] = coefficient of q^{k-1}
}

// class number by a from-scratch reduced-form count in plain integers
inline unsigned long class_number(long disc) {
    unsigned long h = 0;
    for (long a = 1; 3 * a * a <= -disc; ++a)
        for (long b = -a; b <= a; ++b) {
            long num = b * b - disc;
            if (num % (4 * a)) continue;
            long c = num / (4 * a);
            if (c < a) continue;
            if (b < 0 && (-b == a || a == c)) continue;
            if (std::gcd(std::gcd(std::labs(a), std::labs(b)), std::labs(c)) != 1)
                continue;
            ++h;
        }
    return h;
}

} // namespace oracle
