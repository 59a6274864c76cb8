#pragma once

#include <cmath>
#include <cstdint>
#include <limits>
#include <optional>
#include <stdexcept>
#include <vector>

#include "divdecomp/constants.hpp"
#include "divdecomp/kahan.hpp"
#include "divdecomp/seeds.hpp"
#include "divdecomp/summatory.hpp"

namespace divdecomp {

// Exact floor and fractional part of x/n. Double division alone can land on
// the wrong side of an integer quotient; the refinement loops compare with
// exact products (n*q stays far below 2^53 at desk scale).
struct QuotientParts {
    uint64_t q;
    double frac;
};

inline QuotientParts floor_frac(double x, uint64_t n) {
    double nd = double(n);
    auto q = uint64_t(x / nd);
    while (double(q + 1) * nd <= x) ++q;
    while (q > 0 && double(q) * nd > x) --q;
    return {q, (x - double(q) * nd) / nd};
}

// f(x) = -sum_{n>=1} a(n)/n {x/n}, evaluated through the finite closed
// form: past n = [x] the fractional part collapses to x/n, so the tail is
// -x (2a - sum_{n<=x} a(n)/n^2).
inline double f_value(const ArithmeticSeed& seed, double x) {
    if (!(x >= 0.0)) throw std::invalid_argument("f_value: requires x >= 0");
    uint64_t ix = floor_index(x);
    KahanSum frac_sum, inv_sq;
    seed.visit_coeffs(ix, [&](uint64_t n, double a) {
        auto [q, fr] = floor_frac(x, n);
        (void)q;
        frac_sum += a / double(n) * fr;
        inv_sq += a / (double(n) * double(n));
    });
    double tail = seed.two_alpha() - inv_sq.value();
    return -frac_sum.value() - x * tail;
}

// g(x) = sum a(n) {x/n}^2, same collapse: tail is x^2 (2a - partial).
inline double g_value(const ArithmeticSeed& seed, double x) {
    if (!(x >= 0.0)) throw std::invalid_argument("g_value: requires x >= 0");
    uint64_t ix = floor_index(x);
    KahanSum sq_sum, inv_sq;
    seed.visit_coeffs(ix, [&](uint64_t n, double a) {
        auto [q, fr] = floor_frac(x, n);
        (void)q;
        sq_sum += a * fr * fr;
        inv_sq += a / (double(n) * double(n));
    });
    double tail = seed.two_alpha() - inv_sq.value();
    return sq_sum.value() + x * x * tail;
}

// Er(x) = sum_{n<=x} b(n) - alpha x^2 with the summatory exact and the main
// term in floating point.
inline double er_value(const ArithmeticSeed& seed, double x) {
    if (!(x >= 0.0)) throw std::invalid_argument("er_value: requires x >= 0");
    double main_term = 0.5 * seed.two_alpha() * x * x;
    if (x < 1.0) return -main_term;
    return seed.b_summatory(x) - main_term;
}

// R(x) = sum a(n) (1/2 {x/n}^2 + 1/2 [x/n]); for n > x the bracket vanishes
// and the square collapses, so the tail is x^2/2 (2a - partial).
inline double r_value(const ArithmeticSeed& seed, double x) {
    if (!(x >= 0.0)) throw std::invalid_argument("r_value: requires x >= 0");
    uint64_t ix = floor_index(x);
    KahanSum bracket_sum, inv_sq;
    seed.visit_coeffs(ix, [&](uint64_t n, double a) {
        auto [q, fr] = floor_frac(x, n);
        bracket_sum += a * (0.5 * fr * fr + 0.5 * double(q));
        inv_sq += a / (double(n) * double(n));
    });
    double tail = seed.two_alpha() - inv_sq.value();
    return bracket_sum.value() + 0.5 * x * x * tail;
}

// The analytic part. mu and unit have closed splits of the bracket sum
// (sum mu(n)[x/n] = 1, sum [x/n] = D(x)); any other seed only has R(x).
struct AnalyticSplit {
    double value = 0.0;                      // exact form; equals r_value when a split exists
    std::optional<double> asymptotic;        // unit only: 1/2 g + x/2 (log x + 2 gamma - 1)
    bool split_defined = false;
};

inline AnalyticSplit analytic_part(const ArithmeticSeed& seed, double x) {
    if (!(x >= 1.0)) throw std::domain_error("analytic_part: requires x >= 1");
    AnalyticSplit out;
    switch (seed.kind()) {
        case SeedKind::mu:
            out.value = 0.5 * g_value(seed, x) + 0.5;
            out.split_defined = true;
            break;
        case SeedKind::unit: {
            double g = g_value(seed, x);
            out.value = 0.5 * g + 0.5 * to_double(summatory_divcount(x));
            out.asymptotic = 0.5 * g + 0.5 * x * (std::log(x) + 2.0 * constants::euler_gamma - 1.0);
            out.split_defined = true;
            break;
        }
        default:
            out.value = r_value(seed, x);
            out.split_defined = false;
            break;
    }
    return out;
}

// ---- Volterra residual ----
//
// Checks that F(x) = (f(x) + A) x solves F(x) - int_0^x F(t) dt/t = Er(x),
// with the integral taken by composite midpoint quadrature instead of the
// closed form of R. The integrand f(t) + A jumps exactly at the integers
// (the multiples m*n merge to Z>0) and is affine on each open unit panel:
// f(t) = S_k - 2a t on (k, k+1), with S_k = sum_{n<=k} a(n)[k/n]/n.
// Midpoint nodes never touch a breakpoint, so aligned quadrature is
// analytically exact and the budget is a rounding estimate; when the panel
// budget is too small to align, a jump/Lipschitz term dominates the budget
// and callers should treat the check as inconclusive.

struct VolterraCheck {
    double residual = 0.0;
    double budget = 0.0;
    uint64_t panels = 0;
    bool aligned = false;
};

inline VolterraCheck volterra_residual(const ArithmeticSeed& seed, double x, double a_const,
                                       uint64_t target_panels = 10000) {
    if (!(x > 0.0)) throw std::invalid_argument("volterra_residual: requires x > 0");
    if (target_panels == 0) target_panels = 1;
    uint64_t ix = floor_index(x);
    uint64_t unit_panels = ix + (x > double(ix) ? 1 : 0);

    double two_alpha = seed.two_alpha();
    double f_at_x = f_value(seed, x);
    double er = er_value(seed, x);
    double f_bound = seed.abs_coeff_over_n_sum(ix) + x * seed.tail_bound(std::max<uint64_t>(ix, 1));

    VolterraCheck out;
    out.aligned = target_panels >= unit_panels;
    KahanSum integral;

    if (out.aligned) {
        uint64_t sub = (target_panels + unit_panels - 1) / unit_panels;
        std::vector<double> jump(ix + 1, 0.0);  // jump[k] = sum_{n|k} a(n)/n
        seed.visit_coeffs(ix, [&](uint64_t n, double a) {
            double w = a / double(n);
            for (uint64_t k = n; k <= ix; k += n) jump[k] += w;
        });
        KahanSum s_acc;
        for (uint64_t k = 0; k <= ix; ++k) {
            if (k > 0) s_acc += jump[k];
            double lo = double(k);
            double hi = (k == ix) ? x : double(k + 1);
            if (!(hi > lo)) continue;
            double s_k = s_acc.value();
            double h = (hi - lo) / double(sub);
            for (uint64_t j = 0; j < sub; ++j) {
                double mid = lo + (double(j) + 0.5) * h;
                integral += h * (s_k - two_alpha * mid + a_const);
            }
            out.panels += sub;
        }
        constexpr double eps = std::numeric_limits<double>::epsilon();
        out.budget = eps * x * (64.0 * (f_bound + std::abs(a_const) + 1.0) + 4.0 * two_alpha * double(ix + 1));
    } else {
        if (double(target_panels) * double(ix) > 2e8)
            throw std::invalid_argument(
                "volterra_residual: panel budget below breakpoint count at this x is too slow; "
                "use at least " +
                std::to_string(unit_panels) + " panels");
        double h = x / double(target_panels);
        for (uint64_t j = 0; j < target_panels; ++j) {
            double mid = (double(j) + 0.5) * h;
            integral += h * (f_value(seed, mid) + a_const);
        }
        out.panels = target_panels;
        constexpr double eps = std::numeric_limits<double>::epsilon();
        // jump mass over (0,x] is at most sum_{n<=x} |a(n)|/n * (x/n) <= 2a x;
        // each straddling panel can be off by h * jump, plus the Lipschitz
        // midpoint term L h^2/4 per panel with L = 2a.
        out.budget = two_alpha * x * h + 0.25 * two_alpha * x * h +
                     eps * x * 64.0 * (f_bound + std::abs(a_const) + 1.0);
    }

    out.residual = (f_at_x + a_const) * x - integral.value() - er;
    return out;
}

// ---- one-abscissa decomposition sample ----

struct DecompositionSample {
    double x = 0.0;
    double er = 0.0;
    double f_val = 0.0;
    double g_val = 0.0;
    double arithmetic_part = 0.0;
    double analytic_part_exact = 0.0;
    std::optional<double> analytic_part_asymptotic;
    bool analytic_split_defined = false;
    double r_val = 0.0;
    double volterra_residual = 0.0;
    double volterra_budget = 0.0;
};

inline DecompositionSample decompose(const ArithmeticSeed& seed, double x, double a_const = 0.0,
                                     uint64_t target_panels = 10000) {
    if (!(x >= 1.0)) throw std::invalid_argument("decompose: requires x >= 1");
    DecompositionSample d;
    d.x = x;
    d.er = er_value(seed, x);
    d.f_val = f_value(seed, x);
    d.g_val = g_value(seed, x);
    d.arithmetic_part = x * d.f_val;
    d.r_val = r_value(seed, x);
    auto split = analytic_part(seed, x);
    d.analytic_part_exact = split.value;
    d.analytic_part_asymptotic = split.asymptotic;
    d.analytic_split_defined = split.split_defined;

    uint64_t unit_panels = floor_index(x) + 1;
    auto v = volterra_residual(seed, x, a_const, std::max(target_panels, unit_panels));
    d.volterra_residual = v.residual;
    d.volterra_budget = v.budget;

    double identity_gap = std::abs(d.er - (d.arithmetic_part + d.r_val));
    if (!(identity_gap <= 1e-9 * std::max(1.0, std::abs(d.er))))
        throw std::runtime_error("decompose: Er = x f + R identity violated at x=" + std::to_string(x) +
                                 " (gap " + std::to_string(identity_gap) + ")");
    return d;
}

}  // namespace divdecomp
