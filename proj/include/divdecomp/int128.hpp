#pragma once

#include <cstdint>
#include <limits>
#include <stdexcept>
#include <string>

namespace divdecomp {

// Exact wide integers for summatory values. Prefix sums of sigma1 reach
// ~8e15 at the sieve ceiling (1e8); 128 bits leaves three orders of
// magnitude of headroom for convolution intermediates.
using i128 = __int128_t;
using u128 = __uint128_t;

inline std::string to_string(i128 x) {
    if (x == 0) return "0";
    bool neg = x < 0;
    u128 v = neg ? u128(-(x + 1)) + 1 : u128(x);
    std::string s;
    while (v > 0) {
        s += char('0' + int(v % 10));
        v /= 10;
    }
    if (neg) s += '-';
    return {s.rbegin(), s.rend()};
}

// Splits into 64-bit halves so no bits are lost before the final rounding.
inline double to_double(i128 x) {
    bool neg = x < 0;
    u128 v = neg ? u128(-(x + 1)) + 1 : u128(x);
    double hi = double(uint64_t(v >> 64));
    double lo = double(uint64_t(v));
    double r = hi * 18446744073709551616.0 + lo;
    return neg ? -r : r;
}

inline i128 i128_from_halves(uint64_t lo, int64_t hi) {
    return (i128(hi) << 64) | i128(u128(lo));
}

inline uint64_t i128_low(i128 x) { return uint64_t(u128(x)); }
inline int64_t i128_high(i128 x) { return int64_t(u128(x) >> 64); }

inline i128 parse_i128(const std::string& s) {
    if (s.empty()) throw std::invalid_argument("parse_i128: empty string");
    size_t i = 0;
    bool neg = false;
    if (s[0] == '-' || s[0] == '+') {
        neg = s[0] == '-';
        i = 1;
    }
    if (i == s.size()) throw std::invalid_argument("parse_i128: no digits");
    i128 v = 0;
    for (; i < s.size(); ++i) {
        if (s[i] < '0' || s[i] > '9') throw std::invalid_argument("parse_i128: bad digit");
        v = v * 10 + (s[i] - '0');
    }
    return neg ? -v : v;
}

}  // namespace divdecomp
