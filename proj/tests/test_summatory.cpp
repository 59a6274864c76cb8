#include <catch2/catch_amalgamated.hpp>

#include "divdecomp/summatory.hpp"
#include "support/fixtures.hpp"
#include "support/oracles.hpp"

using namespace divdecomp;

TEST_CASE("summatory_sigma1 examples") {
    CHECK(summatory_sigma1(0.5) == 0);
    i128 direct = 0;
    for (uint64_t n = 1; n <= 10; ++n) direct += i128(oracle::sigma1(n));
    CHECK(direct == 87);
    CHECK(summatory_sigma1(10.0) == 87);
}

TEST_CASE("summatory_sigma1 equals sieve prefix sums up to 1e4") {
    const SieveTable& t = *fixtures::sieve_1e4();
    for (uint64_t x = 1; x <= t.bound; ++x) REQUIRE(summatory_sigma1_u(x) == t.sigma1_prefix[x]);
}

TEST_CASE("summatory_phi examples") {
    const SieveTable& t = *fixtures::sieve_1e4();
    CHECK(summatory_phi(t, 1.0) == 1);
    CHECK(summatory_phi(t, 10.0) == 32);
    i128 direct = 0;
    for (uint64_t n = 1; n <= 100; ++n) direct += i128(oracle::totient(n));
    CHECK(summatory_phi(t, 100.0) == direct);
    CHECK_THROWS_AS(summatory_phi(t, 1e7), std::invalid_argument);
}

TEST_CASE("summatory_divcount examples and direct-sum route") {
    CHECK(summatory_divcount(1.0) == 1);
    i128 direct = 0;
    for (uint64_t n = 1; n <= 10; ++n) direct += i128(oracle::divcount(n));
    CHECK(direct == 27);
    CHECK(summatory_divcount(10.0) == 27);
    CHECK(summatory_divcount_u(100000) == floor_division_sum_u(100000));
    CHECK(summatory_divcount(0.0) == 0);
}

TEST_CASE("mertens examples") {
    const SieveTable& t = *fixtures::sieve_1e4();
    CHECK(mertens(t, 1.0) == 1);
    CHECK(mertens(t, 10.0) == -1);
    CHECK(mertens(t, 100.0) == 1);
    i128 direct = 0;
    for (uint64_t n = 1; n <= 5000; ++n) direct += i128(oracle::mobius(n));
    CHECK(mertens(t, 5000.0) == direct);
}

TEST_CASE("floor_sum_identity_check witnesses") {
    const SieveTable& small = *fixtures::sieve_1e4();
    auto w1 = floor_sum_identity_check(small, 1.0);
    CHECK(w1.mobius_floor_sum == 1);
    CHECK(w1.divisor_gap == 0);
    auto w2 = floor_sum_identity_check(small, 1000.5);
    CHECK(w2.holds());
    CHECK_THROWS_AS(floor_sum_identity_check(small, 0.5), std::invalid_argument);

    const SieveTable& big = *fixtures::sieve_1e6();
    CHECK(floor_sum_identity_check(big, 100000.0).holds());
}

TEST_CASE("floor identities at random real x") {
    const SieveTable& t = *fixtures::sieve_1e4();
    auto gen = oracle::rng(12);
    for (int i = 0; i < 20; ++i) {
        double x = oracle::uniform(gen, 1.0, 1e4);
        auto w = floor_sum_identity_check(t, x);
        REQUIRE(w.mobius_floor_sum == 1);
        REQUIRE(w.divisor_gap == 0);
    }
}

TEST_CASE("floor_index convention") {
    CHECK(floor_index(0.0) == 0);
    CHECK(floor_index(0.999) == 0);
    CHECK(floor_index(1.0) == 1);
    CHECK(floor_index(10.0) == 10);
    CHECK(floor_index(10.999) == 10);
}
