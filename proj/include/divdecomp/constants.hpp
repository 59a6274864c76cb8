#pragma once

#include <numbers>

namespace divdecomp {

// Analytic constants evaluated once in binary64. Each is the correctly
// rounded value of its closed form.
namespace constants {

inline constexpr double pi = std::numbers::pi;
inline constexpr double pi_sq = pi * pi;

inline constexpr double pi_sq_over_6 = pi_sq / 6.0;    // zeta(2), 2*alpha for the unit seed
inline constexpr double pi_sq_over_12 = pi_sq / 12.0;  // alpha for the unit seed
inline constexpr double six_over_pi_sq = 6.0 / pi_sq;  // 1/zeta(2), 2*alpha for the mu seed
inline constexpr double three_over_pi_sq = 3.0 / pi_sq;
inline constexpr double pi_sq_over_15 = pi_sq / 15.0;  // zeta(4)/zeta(2), 2*alpha for the liouville seed
inline constexpr double pi_pow4_over_90 = pi_sq * pi_sq / 90.0;  // zeta(4)

inline constexpr double euler_gamma = std::numbers::egamma;

// exp(e): smallest abscissa where log log x >= 1 and the growth envelopes
// are well-defined.
inline constexpr double e_to_e = 15.154262241479262;

}  // namespace constants

// Spec'd constants table, mirroring the analytic definitions above.
struct Constants {
    double pi_sq_over_6 = constants::pi_sq_over_6;
    double pi_sq_over_12 = constants::pi_sq_over_12;
    double three_over_pi_sq = constants::three_over_pi_sq;
    double euler_gamma = constants::euler_gamma;
    double pi_sq_over_15 = constants::pi_sq_over_15;
};

}  // namespace divdecomp
