#pragma once

#include <cmath>
#include <cstdint>
#include <stdexcept>

#include "divdecomp/int128.hpp"
#include "divdecomp/sieve.hpp"

namespace divdecomp {

// Real arguments are floored once; every "n <= x" sum then runs over
// n <= floor(x), matching the {x} = x - [x] convention.
inline uint64_t floor_index(double x) {
    if (!(x >= 1.0)) return 0;  // also catches NaN
    if (x >= 9.007199254740992e15) throw std::invalid_argument("floor_index: x too large for exact flooring");
    return uint64_t(std::floor(x));
}

inline uint64_t isqrt_u64(uint64_t n) {
    if (n == 0) return 0;
    auto r = uint64_t(std::sqrt(double(n)));
    while (r > 0 && r * r > n) --r;
    while ((r + 1) * (r + 1) <= n) ++r;
    return r;
}

// Triangular number in exact arithmetic.
inline i128 triangular(uint64_t m) { return i128(m) * i128(m + 1) / 2; }

// A(x) = sum_{n<=x} sigma1(n) = sum_{d<=x} d*[x/d], blocked over equal
// quotients. O(sqrt x), no table needed.
inline i128 summatory_sigma1_u(uint64_t x) {
    i128 total = 0;
    for (uint64_t d = 1; d <= x;) {
        uint64_t q = x / d;
        uint64_t hi = x / q;
        total += i128(q) * (triangular(hi) - triangular(d - 1));
        d = hi + 1;
    }
    return total;
}

inline i128 summatory_sigma1(double x) { return summatory_sigma1_u(floor_index(x)); }

// D(x) = sum_{n<=x} d(n) = sum_{n<=x} [x/n] by the hyperbola method.
inline i128 summatory_divcount_u(uint64_t x) {
    if (x == 0) return 0;
    uint64_t s = isqrt_u64(x);
    i128 total = 0;
    for (uint64_t d = 1; d <= s; ++d) total += i128(x / d);
    return 2 * total - i128(s) * i128(s);
}

inline i128 summatory_divcount(double x) { return summatory_divcount_u(floor_index(x)); }

// Direct floor-division loop; O(x). Kept as the independent route for the
// divisor identity checks.
inline i128 floor_division_sum_u(uint64_t x) {
    i128 total = 0;
    for (uint64_t n = 1; n <= x; ++n) total += i128(x / n);
    return total;
}

inline i128 summatory_phi(const SieveTable& t, double x) {
    uint64_t ix = floor_index(x);
    if (ix > t.bound)
        throw std::invalid_argument("summatory_phi: x exceeds sieve bound " + std::to_string(t.bound));
    return t.phi_prefix[ix];
}

inline i128 mertens(const SieveTable& t, double x) {
    uint64_t ix = floor_index(x);
    if (ix > t.bound)
        throw std::invalid_argument("mertens: x exceeds sieve bound " + std::to_string(t.bound));
    return t.mobius_prefix[ix];
}

// Witnesses for the two explicit floor-sum evaluations:
//   sum_{n<=x} mu(n)[x/n] = 1   and   sum_{n<=x} [x/n] = D(x).
struct FloorIdentityWitness {
    i128 mobius_floor_sum = 0;  // must be 1
    i128 divisor_gap = 0;       // direct floor sum minus D(x); must be 0
    bool holds() const { return mobius_floor_sum == 1 && divisor_gap == 0; }
};

inline FloorIdentityWitness floor_sum_identity_check(const SieveTable& t, double x) {
    if (!(x >= 1.0)) throw std::invalid_argument("floor_sum_identity_check: requires x >= 1");
    uint64_t ix = floor_index(x);
    if (ix > t.bound)
        throw std::invalid_argument("floor_sum_identity_check: x exceeds sieve bound " +
                                    std::to_string(t.bound));
    FloorIdentityWitness w;
    i128 msum = 0;
    for (uint64_t n = 1; n <= ix; ++n)
        if (t.mobius[n] != 0) msum += i128(t.mobius[n]) * i128(ix / n);
    w.mobius_floor_sum = msum;
    w.divisor_gap = floor_division_sum_u(ix) - summatory_divcount_u(ix);
    return w;
}

}  // namespace divdecomp
