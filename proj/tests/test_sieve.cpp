#include <catch2/catch_amalgamated.hpp>

#include <cstdio>
#include <filesystem>
#include <fstream>

#include "divdecomp/sieve.hpp"
#include "support/fixtures.hpp"
#include "support/oracles.hpp"

using namespace divdecomp;
namespace fs = std::filesystem;

TEST_CASE("build_sieve n=1") {
    SieveTable t = build_sieve(1);
    CHECK(t.mobius[1] == 1);
    CHECK(t.phi[1] == 1);
    CHECK(t.sigma1[1] == 1);
    CHECK(t.divcount[1] == 1);
}

TEST_CASE("build_sieve n=10 frozen values") {
    SieveTable t = build_sieve(10);
    CHECK(t.sigma1[10] == 18);
    CHECK(t.divcount[10] == 4);
    CHECK(t.mobius[6] == 1);   // 6 = 2*3 squarefree
    CHECK(t.mobius[4] == 0);   // 4 = 2^2
}

TEST_CASE("build_sieve rejects bad sizes") {
    CHECK_THROWS_AS(build_sieve(0), std::invalid_argument);
    CHECK_THROWS_AS(build_sieve(kMaxSieveBound + 1), std::length_error);
}

TEST_CASE("sieve values match trial division up to 1e4") {
    const SieveTable& t = *fixtures::sieve_1e4();
    for (uint64_t n = 1; n <= t.bound; ++n) {
        REQUIRE(t.mobius[n] == oracle::mobius(n));
        REQUIRE(t.phi[n] == oracle::totient(n));
        REQUIRE(t.sigma1[n] == oracle::sigma1(n));
        REQUIRE(t.divcount[n] == oracle::divcount(n));
    }
}

TEST_CASE("mobius is -1 at primes and 0 at square multiples") {
    const SieveTable& t = *fixtures::sieve_1e4();
    for (uint64_t p = 2; p <= t.bound; ++p)
        if (oracle::is_prime(p)) REQUIRE(t.mobius[p] == -1);
    for (uint64_t m = 2; m * m <= t.bound; ++m)
        for (uint64_t k = m * m; k <= t.bound; k += m * m) REQUIRE(t.mobius[k] == 0);
}

TEST_CASE("totient divisor sum and Mobius inversion up to 1e4") {
    const SieveTable& t = *fixtures::sieve_1e4();
    for (uint64_t n = 1; n <= t.bound; ++n) {
        uint64_t phi_sum = 0;
        int64_t mob_inv = 0;
        for (uint64_t d = 1; d * d <= n; ++d) {
            if (n % d) continue;
            uint64_t e = n / d;
            phi_sum += t.phi[d];
            mob_inv += int64_t(t.mobius[d]) * int64_t(e);
            if (d != e) {
                phi_sum += t.phi[e];
                mob_inv += int64_t(t.mobius[e]) * int64_t(d);
            }
        }
        REQUIRE(phi_sum == n);                       // sum_{d|n} phi(d) = n
        REQUIRE(mob_inv == int64_t(t.phi[n]));       // sum_{d|n} mu(d) n/d = phi(n)
    }
}

TEST_CASE("prefix sums are monotone for nonnegative functions") {
    const SieveTable& t = *fixtures::sieve_1e4();
    for (uint64_t n = 1; n <= t.bound; ++n) {
        REQUIRE(t.phi_prefix[n] > t.phi_prefix[n - 1]);
        REQUIRE(t.sigma1_prefix[n] > t.sigma1_prefix[n - 1]);
        REQUIRE(t.divcount_prefix[n] > t.divcount_prefix[n - 1]);
    }
}

TEST_CASE("sieve cache round-trips") {
    SieveTable t = build_sieve(257);
    fs::path path = fs::temp_directory_path() / "divdecomp_test_sieve.adsv";
    save_sieve(t, path);
    CHECK(fs::file_size(path) == sieve_cache_file_size(257));
    CHECK(sieve_cache_bound(path) == 257);

    SieveTable u = load_sieve(path);
    REQUIRE(u.bound == t.bound);
    CHECK(u.mobius == t.mobius);
    CHECK(u.phi == t.phi);
    CHECK(u.sigma1 == t.sigma1);
    CHECK(u.divcount == t.divcount);
    CHECK(u.mobius_prefix == t.mobius_prefix);
    CHECK(u.phi_prefix == t.phi_prefix);
    CHECK(u.sigma1_prefix == t.sigma1_prefix);
    CHECK(u.divcount_prefix == t.divcount_prefix);
    fs::remove(path);
}

TEST_CASE("sieve cache rejects bad magic and truncation") {
    fs::path path = fs::temp_directory_path() / "divdecomp_test_badmagic.adsv";
    {
        std::ofstream out(path, std::ios::binary);
        out << "BOGUS data that is long enough to hold a header";
    }
    CHECK_THROWS_WITH(load_sieve(path), Catch::Matchers::ContainsSubstring("bad magic"));
    CHECK_THROWS_AS(sieve_cache_bound(path), std::runtime_error);
    fs::remove(path);

    SieveTable t = build_sieve(50);
    save_sieve(t, path);
    fs::resize_file(path, fs::file_size(path) - 9);
    CHECK_THROWS_WITH(load_sieve(path), Catch::Matchers::ContainsSubstring("truncated"));
    fs::remove(path);

    CHECK(sieve_cache_bound(fs::temp_directory_path() / "divdecomp_no_such_file.adsv") == 0);
}
