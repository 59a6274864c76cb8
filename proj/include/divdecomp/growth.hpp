#pragma once

#include <cmath>
#include <cstdint>
#include <stdexcept>
#include <string>
#include <vector>

#include "divdecomp/constants.hpp"
#include "divdecomp/decompose.hpp"
#include "divdecomp/seeds.hpp"

namespace divdecomp {

// RH-conditional growth envelopes. The bound shapes are taken verbatim:
//   thm111-2 : x^{1/2} exp(A log x / log log x)   (A a scan parameter)
//   thm121   : x^{delta'} exp(log x / log log x)  (coefficient 1, as printed)
//   thm122   : x^{delta' + eps}
// with delta' = max(1/2, delta).
enum class EnvelopeKind { thm111_2, thm121, thm122 };

inline std::string to_string(EnvelopeKind k) {
    switch (k) {
        case EnvelopeKind::thm111_2: return "thm111-2";
        case EnvelopeKind::thm121: return "thm121";
        case EnvelopeKind::thm122: return "thm122";
    }
    return "?";
}

inline EnvelopeKind envelope_kind_from_string(const std::string& s) {
    if (s == "thm111-2") return EnvelopeKind::thm111_2;
    if (s == "thm121") return EnvelopeKind::thm121;
    if (s == "thm122") return EnvelopeKind::thm122;
    throw std::invalid_argument("unknown envelope kind '" + s + "'");
}

struct Envelope {
    EnvelopeKind kind = EnvelopeKind::thm121;
    double delta = 0.5;
    double delta_prime = 0.5;
    double a_const = 1.0;
    double epsilon = 0.0;

    static Envelope thm111_2(double a_const) {
        if (!(a_const > 0.0)) throw std::invalid_argument("thm111-2: A must be positive");
        Envelope e;
        e.kind = EnvelopeKind::thm111_2;
        e.a_const = a_const;
        return e;
    }

    static Envelope thm121(double delta) {
        if (!(delta > 0.0 && delta < 1.0)) throw std::invalid_argument("thm121: delta must be in (0,1)");
        Envelope e;
        e.kind = EnvelopeKind::thm121;
        e.delta = delta;
        e.delta_prime = std::max(0.5, delta);
        return e;
    }

    static Envelope thm122(double delta, double epsilon) {
        if (!(delta > 0.0 && delta < 1.0)) throw std::invalid_argument("thm122: delta must be in (0,1)");
        if (!(epsilon > 0.0)) throw std::invalid_argument("thm122: epsilon must be positive");
        Envelope e;
        e.kind = EnvelopeKind::thm122;
        e.delta = delta;
        e.delta_prime = std::max(0.5, delta);
        e.epsilon = epsilon;
        return e;
    }
};

inline double envelope_value(const Envelope& e, double x) {
    if (!(x >= constants::e_to_e))
        throw std::domain_error("envelope_value: requires x >= e^e (log log x must be positive)");
    double lx = std::log(x);
    double llx = std::log(lx);
    switch (e.kind) {
        case EnvelopeKind::thm111_2: return std::sqrt(x) * std::exp(e.a_const * lx / llx);
        case EnvelopeKind::thm121: return std::pow(x, e.delta_prime) * std::exp(lx / llx);
        case EnvelopeKind::thm122: return std::pow(x, e.delta_prime + e.epsilon);
    }
    return 0.0;
}

enum class ScanCase { phi, sigma1 };

inline std::string to_string(ScanCase c) { return c == ScanCase::phi ? "phi" : "sigma1"; }

inline ScanCase scan_case_from_string(const std::string& s) {
    if (s == "phi") return ScanCase::phi;
    if (s == "sigma1") return ScanCase::sigma1;
    throw std::invalid_argument("unknown scan case '" + s + "' (expected phi or sigma1)");
}

struct GridSpec {
    double x_min = constants::e_to_e;
    double x_max = 1e4;
    uint32_t points = 30;
};

inline constexpr double kScanMaxX = 1e8;        // desk limit of the engine
inline constexpr double kEanLogFitFloor = 1e-12;  // |ean| below this is excluded from the fit

struct ScanReport {
    std::string scan_case;
    std::string seed_name;
    GridSpec grid_spec;
    std::vector<Envelope> envelopes;
    std::vector<double> grid;
    std::vector<double> ean;
    std::vector<std::vector<double>> envelope_vals;  // [envelope][point]
    std::vector<std::vector<double>> ratios;         // [envelope][point], |ean|/envelope
    double sup_ratio = 0.0;                          // max ratio over everything
    double fitted_exponent = 0.0;                    // OLS slope of log|ean| vs log x
    uint32_t excluded_points = 0;                    // below the log-fit floor
    double exclusion_threshold = kEanLogFitFloor;
};

namespace detail {

// OLS slope of y on x.
struct SlopeFit {
    double sx = 0, sy = 0, sxx = 0, sxy = 0;
    uint32_t n = 0;
    void add(double x, double y) {
        sx += x;
        sy += y;
        sxx += x * x;
        sxy += x * y;
        ++n;
    }
    double slope() const {
        double denom = double(n) * sxx - sx * sx;
        return denom == 0.0 ? 0.0 : (double(n) * sxy - sx * sy) / denom;
    }
};

}  // namespace detail

// Geometric grid, deterministic: x_i = x_min r^i with the last point pinned
// to x_max exactly.
inline std::vector<double> geometric_grid(const GridSpec& g) {
    if (!(g.x_min >= constants::e_to_e))
        throw std::invalid_argument("scan: x_min must be >= e^e (~15.154)");
    if (!(g.x_max > g.x_min)) throw std::invalid_argument("scan: x_max must exceed x_min");
    if (g.x_max > kScanMaxX) throw std::invalid_argument("scan: x_max above desk limit 1e8");
    if (g.points < 2) throw std::invalid_argument("scan: need at least 2 grid points");
    if (g.points > 100000) throw std::invalid_argument("scan: grid too dense");
    std::vector<double> grid(g.points);
    double ratio = std::pow(g.x_max / g.x_min, 1.0 / double(g.points - 1));
    double x = g.x_min;
    for (uint32_t i = 0; i < g.points; ++i, x *= ratio) grid[i] = x;
    grid.front() = g.x_min;
    grid.back() = g.x_max;
    return grid;
}

// Evaluates E^AN on the grid (phi: 1/2 g1 + 1/2 from the mu seed; sigma1:
// the exact form 1/2 g2 + 1/2 D(x) from the unit seed), ratios against each
// envelope, and the fitted log-log exponent.
inline ScanReport scan(const SeedRegistry& registry, ScanCase scan_case, const GridSpec& grid_spec,
                       std::vector<Envelope> envelopes) {
    ScanReport rep;
    rep.scan_case = to_string(scan_case);
    rep.grid_spec = grid_spec;
    rep.envelopes = std::move(envelopes);
    rep.grid = geometric_grid(grid_spec);

    ArithmeticSeed seed = registry.get(scan_case == ScanCase::phi ? "mu" : "unit");
    rep.seed_name = seed.name();
    if (scan_case == ScanCase::phi) seed.require_limit(floor_index(grid_spec.x_max));

    rep.ean.reserve(rep.grid.size());
    for (double x : rep.grid) rep.ean.push_back(analytic_part(seed, x).value);

    rep.envelope_vals.assign(rep.envelopes.size(), {});
    rep.ratios.assign(rep.envelopes.size(), {});
    for (size_t e = 0; e < rep.envelopes.size(); ++e) {
        rep.envelope_vals[e].reserve(rep.grid.size());
        rep.ratios[e].reserve(rep.grid.size());
        for (size_t i = 0; i < rep.grid.size(); ++i) {
            double env = envelope_value(rep.envelopes[e], rep.grid[i]);
            double ratio = std::abs(rep.ean[i]) / env;
            rep.envelope_vals[e].push_back(env);
            rep.ratios[e].push_back(ratio);
            rep.sup_ratio = std::max(rep.sup_ratio, ratio);
        }
    }

    detail::SlopeFit fit;
    for (size_t i = 0; i < rep.grid.size(); ++i) {
        double a = std::abs(rep.ean[i]);
        if (a < kEanLogFitFloor) {
            ++rep.excluded_points;
            continue;
        }
        fit.add(std::log(rep.grid[i]), std::log(a));
    }
    rep.fitted_exponent = fit.slope();
    return rep;
}

// Per-decade maxima of the ratio for one envelope: pairs (decade d covering
// [10^d, 10^{d+1}), max).
inline std::vector<std::pair<int, double>> per_decade_max_ratio(const ScanReport& rep, size_t env_index) {
    std::vector<std::pair<int, double>> out;
    for (size_t i = 0; i < rep.grid.size(); ++i) {
        int dec = int(std::floor(std::log10(rep.grid[i])));
        double r = rep.ratios.at(env_index)[i];
        if (!out.empty() && out.back().first == dec)
            out.back().second = std::max(out.back().second, r);
        else
            out.emplace_back(dec, r);
    }
    return out;
}

}  // namespace divdecomp
