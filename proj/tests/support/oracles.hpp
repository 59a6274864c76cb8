#pragma once

// Independent oracles for the test suite. Everything here deliberately
// avoids the library's code paths: trial division instead of the linear
// sieve, flip sieves instead of SPF recurrences, direct term-by-term series
// instead of the tail-collapsed closed forms, adaptive quadrature instead
// of panel antiderivatives, and exact rational arithmetic for the
// decomposition identity at small x.

#include <boost/multiprecision/cpp_int.hpp>
#include <cmath>
#include <complex>
#include <cstdint>
#include <functional>
#include <random>
#include <vector>

#include "divdecomp/kahan.hpp"

namespace oracle {

using rational = boost::multiprecision::cpp_rational;
using bigint = boost::multiprecision::cpp_int;

// ---- trial-division arithmetic functions ----

inline uint64_t sigma1(uint64_t n) {
    uint64_t s = 0;
    for (uint64_t d = 1; d * d <= n; ++d) {
        if (n % d) continue;
        s += d;
        if (d != n / d) s += n / d;
    }
    return s;
}

inline uint64_t divcount(uint64_t n) {
    uint64_t c = 0;
    for (uint64_t d = 1; d * d <= n; ++d) {
        if (n % d) continue;
        c += (d == n / d) ? 1 : 2;
    }
    return c;
}

inline uint64_t totient(uint64_t n) {
    uint64_t r = n, m = n;
    for (uint64_t p = 2; p * p <= m; ++p) {
        if (m % p) continue;
        r -= r / p;
        while (m % p == 0) m /= p;
    }
    if (m > 1) r -= r / m;
    return r;
}

inline int mobius(uint64_t n) {
    int m = 1;
    for (uint64_t p = 2; p * p <= n; ++p) {
        if (n % p) continue;
        n /= p;
        if (n % p == 0) return 0;
        m = -m;
    }
    if (n > 1) m = -m;
    return m;
}

inline int liouville(uint64_t n) {
    int m = 1;
    for (uint64_t p = 2; p * p <= n; ++p) {
        while (n % p == 0) {
            n /= p;
            m = -m;
        }
    }
    if (n > 1) m = -m;
    return m;
}

inline bool is_prime(uint64_t n) {
    if (n < 2) return false;
    for (uint64_t p = 2; p * p <= n; ++p)
        if (n % p == 0) return false;
    return true;
}

// ---- flip sieves (for large-N brute-force series) ----
// mu: sign flip per prime divisor, zero per square divisor.
inline std::vector<int8_t> mobius_flip_sieve(uint64_t n) {
    std::vector<int8_t> mu(n + 1, 1);
    std::vector<uint8_t> composite(n + 1, 0);
    if (n >= 1) mu[0] = 0;
    for (uint64_t p = 2; p <= n; ++p) {
        if (composite[p]) continue;
        for (uint64_t k = p; k <= n; k += p) {
            if (k > p) composite[k] = 1;
            mu[k] = int8_t(-mu[k]);
        }
        if (p * p <= n)
            for (uint64_t k = p * p; k <= n; k += p * p) mu[k] = 0;
    }
    return mu;
}

// lambda: one flip per prime-power divisor counts Omega(n) flips in total.
inline std::vector<int8_t> liouville_flip_sieve(uint64_t n) {
    std::vector<int8_t> lam(n + 1, 1);
    std::vector<uint8_t> composite(n + 1, 0);
    if (n >= 1) lam[0] = 0;
    for (uint64_t p = 2; p <= n; ++p) {
        if (composite[p]) continue;
        for (uint64_t k = 2 * p; k <= n; k += p) composite[k] = 1;
        for (uint64_t q = p; q <= n; q = (q > n / p) ? n + 1 : q * p)
            for (uint64_t k = q; k <= n; k += q) lam[k] = int8_t(-lam[k]);
    }
    return lam;
}

// ---- brute-force partial series (no tail collapse) ----
// f: -sum_{n<=N} a(n)/n {x/n};  g: sum_{n<=N} a(n) {x/n}^2.
// The full-series remainder past N is bounded by x/N (f) and x^2/N (g)
// when |a| <= 1.

template <class Coeff>
inline double f_partial_series(Coeff&& a, double x, uint64_t n_terms) {
    divdecomp::KahanSum acc;
    for (uint64_t n = 1; n <= n_terms; ++n) {
        double an = a(n);
        if (an == 0.0) continue;
        double q = std::floor(x / double(n));
        double fr = x / double(n) - q;
        acc += an / double(n) * fr;
    }
    return -acc.value();
}

template <class Coeff>
inline double g_partial_series(Coeff&& a, double x, uint64_t n_terms) {
    divdecomp::KahanSum acc;
    for (uint64_t n = 1; n <= n_terms; ++n) {
        double an = a(n);
        if (an == 0.0) continue;
        double q = std::floor(x / double(n));
        double fr = x / double(n) - q;
        acc += an * fr * fr;
    }
    return acc.value();
}

// ---- adaptive Simpson quadrature (complex-valued integrand) ----

namespace detail {

template <class F>
std::complex<double> simpson(F& f, double a, double b, std::complex<double> fa, std::complex<double> fm,
                             std::complex<double> fb) {
    return (b - a) / 6.0 * (fa + 4.0 * fm + fb);
}

template <class F>
std::complex<double> adapt(F& f, double a, double b, std::complex<double> fa, std::complex<double> fm,
                           std::complex<double> fb, std::complex<double> whole, double tol, int depth) {
    double m = 0.5 * (a + b);
    std::complex<double> flm = f(0.5 * (a + m)), frm = f(0.5 * (m + b));
    std::complex<double> left = simpson(f, a, m, fa, flm, fm);
    std::complex<double> right = simpson(f, m, b, fm, frm, fb);
    if (depth <= 0 || std::abs(left + right - whole) <= 15.0 * tol)
        return left + right + (left + right - whole) / 15.0;
    return adapt(f, a, m, fa, flm, fm, left, tol / 2.0, depth - 1) +
           adapt(f, m, b, fm, frm, fb, right, tol / 2.0, depth - 1);
}

}  // namespace detail

template <class F>
std::complex<double> adaptive_simpson(F f, double a, double b, double tol = 1e-12, int depth = 40) {
    std::complex<double> fa = f(a), fm = f(0.5 * (a + b)), fb = f(b);
    std::complex<double> whole = detail::simpson(f, a, b, fa, fm, fb);
    return detail::adapt(f, a, b, fa, fm, fb, whole, tol, depth);
}

// ---- exact rational decomposition identity ----
// With x = p/q rational and integral coefficients a(n), the 2-alpha tail
// terms cancel algebraically in Er - x f - R, leaving
//   B - x A_f - A_r,   B = sum_{n<=x} b(n),
//   A_f = -sum_{n<=X} a(n)/n {x/n} + x sum_{n<=X} a(n)/n^2,
//   A_r = sum_{n<=X} a(n)(1/2 {x/n}^2 + 1/2 [x/n]) - x^2/2 sum a(n)/n^2,
// all exact rationals. The identity holds iff the combination is zero.

struct RationalDecomposition {
    rational a_f;  // f(x) + x * two_alpha
    rational a_r;  // r(x) - x^2/2 * two_alpha
    rational combination;  // B - x a_f - a_r; zero iff the identity holds
};

template <class Coeff>
inline RationalDecomposition rational_identity(Coeff&& a, const rational& x, const bigint& b_summatory) {
    using boost::multiprecision::denominator;
    using boost::multiprecision::numerator;
    uint64_t ix = uint64_t(numerator(x) / denominator(x));

    rational frac_sum = 0, inv_sq = 0, bracket = 0;
    for (uint64_t n = 1; n <= ix; ++n) {
        int an = a(n);
        if (an == 0) continue;
        rational xon = x / n;
        bigint fl = numerator(xon) / denominator(xon);
        rational fr = xon - rational(fl);
        frac_sum += rational(an) * fr / n;
        inv_sq += rational(an) / (bigint(n) * n);
        bracket += rational(an) * (fr * fr / 2 + rational(fl) / 2);
    }
    RationalDecomposition out;
    out.a_f = -frac_sum + x * inv_sq;
    out.a_r = bracket - x * x / 2 * inv_sq;
    out.combination = rational(b_summatory) - x * out.a_f - out.a_r;
    return out;
}

// ---- deterministic RNG helpers ----

inline std::mt19937_64 rng(uint64_t seed) { return std::mt19937_64(seed); }

inline double uniform(std::mt19937_64& gen, double lo, double hi) {
    return std::uniform_real_distribution<double>(lo, hi)(gen);
}

}  // namespace oracle
