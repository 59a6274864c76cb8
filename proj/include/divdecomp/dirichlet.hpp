#pragma once

#include <cmath>
#include <complex>
#include <cstdint>
#include <stdexcept>

#include "divdecomp/kahan.hpp"
#include "divdecomp/sieve.hpp"
#include "divdecomp/zeta.hpp"

namespace divdecomp {

struct DirichletPartialSum {
    cplx value;
    double tail_bound = 0.0;  // bound on |sum_{n>N} coeff(n) n^{-s}|
    uint64_t terms = 0;
};

namespace detail {

inline void require_sigma_gt2(cplx s, const char* who) {
    if (!(s.real() > 2.0))
        throw std::domain_error(std::string(who) + ": requires sigma > 2 (divergence region otherwise)");
}

}  // namespace detail

// Partial sum of sum sigma1(n)/n^s -> zeta(s) zeta(s-1).
// Tail: sigma1(n) <= n (1 + log n), so the remainder is below
// int_N^inf t^{1-sigma} (1+log t) dt.
inline DirichletPartialSum dirichlet_sigma1(const SieveTable& t, cplx s, uint64_t n_terms) {
    detail::require_sigma_gt2(s, "dirichlet_sigma1");
    if (n_terms < 1) throw std::invalid_argument("dirichlet_sigma1: N must be >= 1");
    if (n_terms > t.bound)
        throw std::invalid_argument("dirichlet_sigma1: N exceeds sieve bound " + std::to_string(t.bound));
    KahanComplexSum acc;
    for (uint64_t n = 1; n <= n_terms; ++n)
        acc += double(t.sigma1[n]) * detail::pow_ms(double(n), s);
    double sigma = s.real();
    double logn = std::log(double(n_terms));
    double tail = std::pow(double(n_terms), 2.0 - sigma) *
                  ((1.0 + logn) / (sigma - 2.0) + 1.0 / ((sigma - 2.0) * (sigma - 2.0)));
    return {acc.value(), tail, n_terms};
}

// Partial sum of sum phi(n)/n^s -> zeta(s-1)/zeta(s). Tail from phi(n) <= n.
inline DirichletPartialSum dirichlet_phi(const SieveTable& t, cplx s, uint64_t n_terms) {
    detail::require_sigma_gt2(s, "dirichlet_phi");
    if (n_terms < 1) throw std::invalid_argument("dirichlet_phi: N must be >= 1");
    if (n_terms > t.bound)
        throw std::invalid_argument("dirichlet_phi: N exceeds sieve bound " + std::to_string(t.bound));
    KahanComplexSum acc;
    for (uint64_t n = 1; n <= n_terms; ++n)
        acc += double(t.phi[n]) * detail::pow_ms(double(n), s);
    double sigma = s.real();
    double tail = std::pow(double(n_terms), 2.0 - sigma) / (sigma - 2.0);
    return {acc.value(), tail, n_terms};
}

}  // namespace divdecomp
