#include <catch2/catch_amalgamated.hpp>

#include "divdecomp/constants.hpp"
#include "divdecomp/zeta.hpp"
#include "support/oracles.hpp"

using namespace divdecomp;
using Catch::Matchers::WithinAbs;

TEST_CASE("classical closed forms") {
    CHECK(std::abs(zeta({2.0, 0.0}) - cplx(constants::pi_sq_over_6, 0.0)) <= 1e-14);
    CHECK(std::abs(zeta({4.0, 0.0}) - cplx(constants::pi_pow4_over_90, 0.0)) <= 1e-14);
}

TEST_CASE("zeta(3) against the independent alternating evaluator and reference") {
    // reference value of Apery's constant, 18 digits
    const double zeta3 = 1.20205690315959429;
    CHECK_THAT(zeta({3.0, 0.0}).real(), WithinAbs(zeta3, 1e-12));
    CHECK_THAT(zeta_alternating({3.0, 0.0}).real(), WithinAbs(zeta3, 1e-12));
}

TEST_CASE("pole and domain signaling") {
    CHECK_THROWS_AS(zeta({1.0, 0.0}), std::domain_error);
    CHECK_THROWS_AS(zeta({-1.5, 0.0}), std::domain_error);
    CHECK_THROWS_AS(zeta_alternating({1.0, 0.0}), std::domain_error);
    CHECK_THROWS_AS(zeta_alternating({-0.5, 0.0}), std::domain_error);
}

TEST_CASE("continuation values below sigma = 1") {
    // reference values: zeta(0) = -1/2, zeta(1/2), zeta(-1/2)
    CHECK_THAT(zeta({0.0, 0.0}).real(), WithinAbs(-0.5, 1e-12));
    CHECK_THAT(zeta({0.5, 0.0}).real(), WithinAbs(-1.46035450880958681, 1e-10));
    CHECK_THAT(zeta({-0.5, 0.0}).real(), WithinAbs(-0.207886224977354566, 1e-10));
    CHECK(std::abs(zeta({0.5, 0.0}).imag()) <= 1e-12);
}

TEST_CASE("zeta decreases along the real axis above 1") {
    double prev = zeta({1.05, 0.0}).real();
    for (double s = 1.15; s <= 12.0; s += 0.1) {
        double cur = zeta({s, 0.0}).real();
        REQUIRE(cur < prev);
        prev = cur;
    }
}

TEST_CASE("two independent evaluators agree on random samples") {
    auto gen = oracle::rng(1010);
    for (int i = 0; i < 20; ++i) {
        cplx s(oracle::uniform(gen, 2.0, 5.0), oracle::uniform(gen, -10.0, 10.0));
        cplx a = zeta(s);
        cplx b = zeta_alternating(s);
        INFO("s = " << s.real() << " + " << s.imag() << "i");
        REQUIRE(std::abs(a - b) <= 1e-10 * std::max(1.0, std::abs(a)));
    }
}

TEST_CASE("agreement also holds in the continuation strip") {
    auto gen = oracle::rng(1011);
    for (int i = 0; i < 10; ++i) {
        cplx s(oracle::uniform(gen, 0.1, 0.95), oracle::uniform(gen, -5.0, 5.0));
        cplx a = zeta(s);
        cplx b = zeta_alternating(s);
        REQUIRE(std::abs(a - b) <= 1e-9 * std::max(1.0, std::abs(a)));
    }
}
