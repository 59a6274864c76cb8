#pragma once

#include <cstdint>
#include <cstdio>
#include <cstring>
#include <filesystem>
#include <stdexcept>
#include <string>
#include <vector>

#include "divdecomp/int128.hpp"

namespace divdecomp {

// Practical ceiling for one table: ~85 bytes/entry (values + 128-bit prefix
// sums), so 1e8 entries is already ~8 GB. Desk-scale work stays well below.
inline constexpr uint64_t kMaxSieveBound = 100'000'000;

// mu, phi, sigma1 and d up to a fixed bound, all from one linear
// (smallest-prime-factor) pass, plus exact prefix sums of each.
// Immutable once built; safe to share across threads.
struct SieveTable {
    uint64_t bound = 0;
    std::vector<int8_t> mobius;      // 1-indexed; entry 0 unused
    std::vector<uint64_t> phi;
    std::vector<uint64_t> sigma1;
    std::vector<uint32_t> divcount;
    std::vector<i128> mobius_prefix;  // prefix[n] = sum_{k<=n} f(k)
    std::vector<i128> phi_prefix;
    std::vector<i128> sigma1_prefix;
    std::vector<i128> divcount_prefix;
};

inline SieveTable build_sieve(uint64_t n) {
    if (n == 0) throw std::invalid_argument("build_sieve: N must be >= 1");
    if (n > kMaxSieveBound)
        throw std::length_error("build_sieve: N=" + std::to_string(n) + " exceeds ceiling " +
                                std::to_string(kMaxSieveBound));

    SieveTable t;
    t.bound = n;
    t.mobius.assign(n + 1, 0);
    t.phi.assign(n + 1, 0);
    t.sigma1.assign(n + 1, 0);
    t.divcount.assign(n + 1, 0);

    t.mobius[1] = 1;
    t.phi[1] = 1;
    t.sigma1[1] = 1;
    t.divcount[1] = 1;

    // spf_pow[i] = p^e where p = smallest prime factor of i and p^e || i.
    // Lets every composite split as a coprime product q * (i/q) with both
    // factors already sieved.
    std::vector<uint64_t> spf_pow(n + 1, 0);
    std::vector<uint32_t> primes;
    primes.reserve(size_t(n / 10 + 16));

    for (uint64_t i = 2; i <= n; ++i) {
        if (spf_pow[i] == 0) {
            primes.push_back(uint32_t(i));
            spf_pow[i] = i;
            t.mobius[i] = -1;
            t.phi[i] = i - 1;
            t.sigma1[i] = i + 1;
            t.divcount[i] = 2;
        }
        for (uint32_t p : primes) {
            uint64_t m = i * p;
            if (m > n) break;
            if (i % p == 0) {
                spf_pow[m] = spf_pow[i] * p;
                uint64_t q = spf_pow[m];
                if (q == m) {
                    // m = p^e, i = p^(e-1)
                    t.mobius[m] = 0;
                    t.phi[m] = t.phi[i] * p;
                    t.sigma1[m] = t.sigma1[i] + m;
                    t.divcount[m] = t.divcount[i] + 1;
                } else {
                    uint64_t r = m / q;  // coprime to q
                    t.mobius[m] = int8_t(t.mobius[q] * t.mobius[r]);
                    t.phi[m] = t.phi[q] * t.phi[r];
                    t.sigma1[m] = t.sigma1[q] * t.sigma1[r];
                    t.divcount[m] = t.divcount[q] * t.divcount[r];
                }
                break;
            }
            spf_pow[m] = p;
            t.mobius[m] = int8_t(-t.mobius[i]);
            t.phi[m] = t.phi[i] * (p - 1);
            t.sigma1[m] = t.sigma1[i] * (p + 1);
            t.divcount[m] = t.divcount[i] * 2;
        }
    }

    t.mobius_prefix.assign(n + 1, 0);
    t.phi_prefix.assign(n + 1, 0);
    t.sigma1_prefix.assign(n + 1, 0);
    t.divcount_prefix.assign(n + 1, 0);
    for (uint64_t i = 1; i <= n; ++i) {
        t.mobius_prefix[i] = t.mobius_prefix[i - 1] + t.mobius[i];
        t.phi_prefix[i] = t.phi_prefix[i - 1] + i128(t.phi[i]);
        t.sigma1_prefix[i] = t.sigma1_prefix[i - 1] + i128(t.sigma1[i]);
        t.divcount_prefix[i] = t.divcount_prefix[i - 1] + i128(t.divcount[i]);
    }
    return t;
}

// ---- cache file ----
// Layout: "ADSV1" | u64 N (LE) | four value arrays, entries 1..N as i64 LE
// (mobius, phi, sigma1, divcount) | four prefix arrays, entries 1..N as
// 128-bit two's-complement (low u64, high u64), same order.

namespace detail {

inline void put_u64(std::string& out, uint64_t v) {
    for (int i = 0; i < 8; ++i) out += char((v >> (8 * i)) & 0xff);
}

inline uint64_t get_u64(const unsigned char* p) {
    uint64_t v = 0;
    for (int i = 0; i < 8; ++i) v |= uint64_t(p[i]) << (8 * i);
    return v;
}

}  // namespace detail

inline constexpr char kSieveCacheMagic[5] = {'A', 'D', 'S', 'V', '1'};

inline uint64_t sieve_cache_file_size(uint64_t n) {
    return 5 + 8 + n * 8 * 4 + n * 16 * 4;
}

inline void save_sieve(const SieveTable& t, const std::filesystem::path& path) {
    std::string buf;
    buf.reserve(sieve_cache_file_size(t.bound));
    buf.append(kSieveCacheMagic, 5);
    detail::put_u64(buf, t.bound);
    for (uint64_t i = 1; i <= t.bound; ++i) detail::put_u64(buf, uint64_t(int64_t(t.mobius[i])));
    for (uint64_t i = 1; i <= t.bound; ++i) detail::put_u64(buf, t.phi[i]);
    for (uint64_t i = 1; i <= t.bound; ++i) detail::put_u64(buf, t.sigma1[i]);
    for (uint64_t i = 1; i <= t.bound; ++i) detail::put_u64(buf, uint64_t(t.divcount[i]));
    auto put_prefix = [&buf](const std::vector<i128>& v) {
        for (size_t i = 1; i < v.size(); ++i) {
            detail::put_u64(buf, i128_low(v[i]));
            detail::put_u64(buf, uint64_t(i128_high(v[i])));
        }
    };
    put_prefix(t.mobius_prefix);
    put_prefix(t.phi_prefix);
    put_prefix(t.sigma1_prefix);
    put_prefix(t.divcount_prefix);

    std::FILE* f = std::fopen(path.string().c_str(), "wb");
    if (!f) throw std::runtime_error("save_sieve: cannot open " + path.string());
    size_t written = std::fwrite(buf.data(), 1, buf.size(), f);
    std::fclose(f);
    if (written != buf.size()) throw std::runtime_error("save_sieve: short write to " + path.string());
}

// Peeks at an existing cache: returns the stored N, or 0 when the file is
// missing. Bad magic throws.
inline uint64_t sieve_cache_bound(const std::filesystem::path& path) {
    std::FILE* f = std::fopen(path.string().c_str(), "rb");
    if (!f) return 0;
    unsigned char hdr[13];
    size_t got = std::fread(hdr, 1, sizeof hdr, f);
    std::fclose(f);
    if (got < sizeof hdr || std::memcmp(hdr, kSieveCacheMagic, 5) != 0)
        throw std::runtime_error("sieve cache " + path.string() + ": bad magic");
    return detail::get_u64(hdr + 5);
}

inline SieveTable load_sieve(const std::filesystem::path& path) {
    std::FILE* f = std::fopen(path.string().c_str(), "rb");
    if (!f) throw std::runtime_error("load_sieve: cannot open " + path.string());
    std::fseek(f, 0, SEEK_END);
    long size = std::ftell(f);
    std::fseek(f, 0, SEEK_SET);
    std::vector<unsigned char> buf(static_cast<size_t>(size), 0);
    size_t got = std::fread(buf.data(), 1, buf.size(), f);
    std::fclose(f);
    if (got != buf.size()) throw std::runtime_error("load_sieve: short read from " + path.string());

    if (buf.size() < 13 || std::memcmp(buf.data(), kSieveCacheMagic, 5) != 0)
        throw std::runtime_error("sieve cache " + path.string() + ": bad magic");
    uint64_t n = detail::get_u64(buf.data() + 5);
    if (n == 0 || n > kMaxSieveBound)
        throw std::runtime_error("sieve cache " + path.string() + ": implausible N=" + std::to_string(n));
    if (buf.size() != sieve_cache_file_size(n))
        throw std::runtime_error("sieve cache " + path.string() + ": truncated or oversized");

    SieveTable t;
    t.bound = n;
    const unsigned char* p = buf.data() + 13;
    t.mobius.assign(n + 1, 0);
    for (uint64_t i = 1; i <= n; ++i, p += 8) t.mobius[i] = int8_t(int64_t(detail::get_u64(p)));
    t.phi.assign(n + 1, 0);
    for (uint64_t i = 1; i <= n; ++i, p += 8) t.phi[i] = detail::get_u64(p);
    t.sigma1.assign(n + 1, 0);
    for (uint64_t i = 1; i <= n; ++i, p += 8) t.sigma1[i] = detail::get_u64(p);
    t.divcount.assign(n + 1, 0);
    for (uint64_t i = 1; i <= n; ++i, p += 8) t.divcount[i] = uint32_t(detail::get_u64(p));
    auto get_prefix = [&p, n](std::vector<i128>& v) {
        v.assign(n + 1, 0);
        for (uint64_t i = 1; i <= n; ++i, p += 16)
            v[i] = i128_from_halves(detail::get_u64(p), int64_t(detail::get_u64(p + 8)));
    };
    get_prefix(t.mobius_prefix);
    get_prefix(t.phi_prefix);
    get_prefix(t.sigma1_prefix);
    get_prefix(t.divcount_prefix);
    return t;
}

}  // namespace divdecomp
