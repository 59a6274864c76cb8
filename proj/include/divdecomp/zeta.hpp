#pragma once

#include <array>
#include <cmath>
#include <complex>
#include <stdexcept>

namespace divdecomp {

using cplx = std::complex<double>;

namespace detail {

// B_{2k}/(2k)! for k = 1..6 (through B12).
inline constexpr std::array<double, 6> kBernoulliOverFactorial = {
    1.0 / 12.0,           -1.0 / 720.0,          1.0 / 30240.0,
    -1.0 / 1209600.0,     1.0 / 47900160.0,      -691.0 / 1307674368000.0,
};

inline cplx pow_ms(double n, cplx s) { return std::exp(-s * std::log(n)); }  // n^{-s}

}  // namespace detail

// Riemann zeta by Euler-Maclaurin: cutoff 50, Bernoulli corrections through
// B12. Serves sigma > -1 (the paper only needs sigma > 2 plus mild
// continuation); relative error <= ~1e-12 for sigma >= 2, <= ~1e-10 on the
// test lines 0 < sigma < 2 with |t| <= 50.
inline cplx zeta(cplx s) {
    if (s.real() <= -1.0)
        throw std::domain_error("zeta: Euler-Maclaurin depth only supports sigma > -1");
    if (std::abs(s - cplx(1.0, 0.0)) < 1e-12) throw std::domain_error("zeta: pole at s = 1");

    constexpr int cutoff = 50;
    cplx acc = 0.0;
    for (int n = 1; n < cutoff; ++n) acc += detail::pow_ms(double(n), s);

    cplx npow = detail::pow_ms(double(cutoff), s);  // cutoff^{-s}
    cplx result = acc + npow * 0.5 + npow * double(cutoff) / (s - 1.0);

    cplx poch = s;                        // s (s+1) ... (s+2k-2)
    cplx pw = npow / double(cutoff);      // cutoff^{-s-2k+1}
    for (int k = 1; k <= 6; ++k) {
        result += detail::kBernoulliOverFactorial[size_t(k - 1)] * poch * pw;
        if (k < 6) {
            poch *= (s + double(2 * k - 1)) * (s + double(2 * k));
            pw /= double(cutoff) * double(cutoff);
        }
    }
    return result;
}

// Independent cross-check evaluator: Borwein's alternating-series (eta
// function) acceleration, valid for sigma > 0. Error decays like
// (3+sqrt(8))^{-n} against the eta series.
inline cplx zeta_alternating(cplx s) {
    if (s.real() <= 0.0)
        throw std::domain_error("zeta_alternating: requires sigma > 0");
    if (std::abs(s - cplx(1.0, 0.0)) < 1e-12) throw std::domain_error("zeta_alternating: pole at s = 1");

    constexpr int n = 64;
    static const std::array<double, n + 1> d = [] {
        std::array<double, n + 1> out{};
        long double term = 1.0L / n;  // t_0 = (n-1)!/(n! 0!) = 1/n
        long double acc = term;
        out[0] = double(n * acc);
        for (int i = 1; i <= n; ++i) {
            term *= 4.0L * (long double)(n + i - 1) * (long double)(n - i + 1) /
                    ((long double)(2 * i - 1) * (long double)(2 * i));
            acc += term;
            out[size_t(i)] = double(n * acc);
        }
        return out;
    }();

    cplx sum = 0.0;
    double sign = 1.0;
    for (int k = 0; k < n; ++k) {
        sum += sign * (d[size_t(k)] - d[n]) * detail::pow_ms(double(k + 1), s);
        sign = -sign;
    }
    cplx denom = 1.0 - std::exp((1.0 - s) * std::log(2.0));
    return -sum / (d[n] * denom);
}

}  // namespace divdecomp
