#pragma once

#include <charconv>
#include <cmath>
#include <complex>
#include <cstdio>
#include <filesystem>
#include <stdexcept>
#include <string>

#include <json.hpp>

#include "divdecomp/decompose.hpp"
#include "divdecomp/growth.hpp"
#include "divdecomp/mellin.hpp"

namespace divdecomp {

using ordered_json = nlohmann::ordered_json;

// Shortest decimal representation that round-trips binary64.
inline std::string format_double(double v) {
    if (std::isnan(v)) return "nan";
    if (std::isinf(v)) return v > 0 ? "inf" : "-inf";
    char buf[32];
    auto res = std::to_chars(buf, buf + sizeof buf, v);
    return std::string(buf, res.ptr);
}

inline void write_text_file(const std::filesystem::path& path, const std::string& content) {
    std::FILE* f = std::fopen(path.string().c_str(), "wb");
    if (!f) throw std::runtime_error("cannot open " + path.string() + " for writing");
    size_t written = std::fwrite(content.data(), 1, content.size(), f);
    std::fclose(f);
    if (written != content.size()) throw std::runtime_error("short write to " + path.string());
}

// ---- JSON adapters ----

inline ordered_json to_json(const DecompositionSample& d, const std::string& seed_name, double a_const) {
    ordered_json j;
    j["seed"] = seed_name;
    j["x"] = d.x;
    j["a_const"] = a_const;
    j["er"] = d.er;
    j["f_val"] = d.f_val;
    j["g_val"] = d.g_val;
    j["arithmetic_part"] = d.arithmetic_part;
    j["analytic_part_exact"] = d.analytic_part_exact;
    if (d.analytic_part_asymptotic)
        j["analytic_part_asymptotic"] = *d.analytic_part_asymptotic;
    else
        j["analytic_part_asymptotic"] = nullptr;
    j["analytic_split_defined"] = d.analytic_split_defined;
    j["r_val"] = d.r_val;
    j["volterra_residual"] = d.volterra_residual;
    j["volterra_budget"] = d.volterra_budget;
    return j;
}

inline DecompositionSample sample_from_json(const ordered_json& j, std::string* seed_name = nullptr,
                                            double* a_const = nullptr) {
    DecompositionSample d;
    if (seed_name) *seed_name = j.at("seed").get<std::string>();
    if (a_const) *a_const = j.at("a_const").get<double>();
    d.x = j.at("x").get<double>();
    d.er = j.at("er").get<double>();
    d.f_val = j.at("f_val").get<double>();
    d.g_val = j.at("g_val").get<double>();
    d.arithmetic_part = j.at("arithmetic_part").get<double>();
    d.analytic_part_exact = j.at("analytic_part_exact").get<double>();
    if (!j.at("analytic_part_asymptotic").is_null())
        d.analytic_part_asymptotic = j.at("analytic_part_asymptotic").get<double>();
    d.analytic_split_defined = j.at("analytic_split_defined").get<bool>();
    d.r_val = j.at("r_val").get<double>();
    d.volterra_residual = j.at("volterra_residual").get<double>();
    d.volterra_budget = j.at("volterra_budget").get<double>();
    return d;
}

// Spec'd record shape: {case, s_re, s_im, X, lhs_re, lhs_im, rhs_re,
// rhs_im, abs_error, tail_bound, pass}.
inline ordered_json to_json(const MellinCheckReport& r) {
    ordered_json j;
    j["case"] = r.kind;
    j["s_re"] = r.s.real();
    j["s_im"] = r.s.imag();
    j["X"] = r.truncation;
    j["lhs_re"] = r.lhs.real();
    j["lhs_im"] = r.lhs.imag();
    j["rhs_re"] = r.rhs.real();
    j["rhs_im"] = r.rhs.imag();
    j["abs_error"] = r.abs_error;
    j["tail_bound"] = r.tail_bound;
    j["tolerance"] = r.tolerance;
    j["pass"] = r.pass;
    return j;
}

inline MellinCheckReport mellin_report_from_json(const ordered_json& j) {
    MellinCheckReport r;
    r.kind = j.at("case").get<std::string>();
    r.s = {j.at("s_re").get<double>(), j.at("s_im").get<double>()};
    r.truncation = j.at("X").get<double>();
    r.lhs = {j.at("lhs_re").get<double>(), j.at("lhs_im").get<double>()};
    r.rhs = {j.at("rhs_re").get<double>(), j.at("rhs_im").get<double>()};
    r.abs_error = j.at("abs_error").get<double>();
    r.tail_bound = j.at("tail_bound").get<double>();
    r.tolerance = j.at("tolerance").get<double>();
    r.pass = j.at("pass").get<bool>();
    return r;
}

inline ordered_json to_json(const Envelope& e) {
    ordered_json j;
    j["kind"] = to_string(e.kind);
    j["delta"] = e.delta;
    j["delta_prime"] = e.delta_prime;
    j["A_const"] = e.a_const;
    j["epsilon"] = e.epsilon;
    return j;
}

inline Envelope envelope_from_json(const ordered_json& j) {
    Envelope e;
    e.kind = envelope_kind_from_string(j.at("kind").get<std::string>());
    e.delta = j.at("delta").get<double>();
    e.delta_prime = j.at("delta_prime").get<double>();
    e.a_const = j.at("A_const").get<double>();
    e.epsilon = j.at("epsilon").get<double>();
    return e;
}

inline ordered_json to_json(const ScanReport& r) {
    ordered_json j;
    j["case"] = r.scan_case;
    j["seed"] = r.seed_name;
    j["grid_spec"] = {{"x_min", r.grid_spec.x_min}, {"x_max", r.grid_spec.x_max}, {"points", r.grid_spec.points}};
    j["envelopes"] = ordered_json::array();
    for (const auto& e : r.envelopes) j["envelopes"].push_back(to_json(e));
    j["grid"] = r.grid;
    j["ean"] = r.ean;
    j["envelope_values"] = r.envelope_vals;
    j["ratios"] = r.ratios;
    j["sup_ratio"] = r.sup_ratio;
    j["fitted_exponent"] = r.fitted_exponent;
    j["excluded_points"] = r.excluded_points;
    j["exclusion_threshold"] = r.exclusion_threshold;
    return j;
}

inline ScanReport scan_report_from_json(const ordered_json& j) {
    ScanReport r;
    r.scan_case = j.at("case").get<std::string>();
    r.seed_name = j.at("seed").get<std::string>();
    r.grid_spec.x_min = j.at("grid_spec").at("x_min").get<double>();
    r.grid_spec.x_max = j.at("grid_spec").at("x_max").get<double>();
    r.grid_spec.points = j.at("grid_spec").at("points").get<uint32_t>();
    for (const auto& e : j.at("envelopes")) r.envelopes.push_back(envelope_from_json(e));
    r.grid = j.at("grid").get<std::vector<double>>();
    r.ean = j.at("ean").get<std::vector<double>>();
    r.envelope_vals = j.at("envelope_values").get<std::vector<std::vector<double>>>();
    r.ratios = j.at("ratios").get<std::vector<std::vector<double>>>();
    r.sup_ratio = j.at("sup_ratio").get<double>();
    r.fitted_exponent = j.at("fitted_exponent").get<double>();
    r.excluded_points = j.at("excluded_points").get<uint32_t>();
    r.exclusion_threshold = j.at("exclusion_threshold").get<double>();
    return r;
}

// ---- CSV ----
// Schema: x,ean,ratio_<kind>...,envelope_<kind>...

inline std::string scan_csv(const ScanReport& r) {
    std::string out = "x,ean";
    for (const auto& e : r.envelopes) out += ",ratio_" + to_string(e.kind);
    for (const auto& e : r.envelopes) out += ",envelope_" + to_string(e.kind);
    out += "\n";
    for (size_t i = 0; i < r.grid.size(); ++i) {
        out += format_double(r.grid[i]);
        out += ',';
        out += format_double(r.ean[i]);
        for (size_t e = 0; e < r.envelopes.size(); ++e) {
            out += ',';
            out += format_double(r.ratios[e][i]);
        }
        for (size_t e = 0; e < r.envelopes.size(); ++e) {
            out += ',';
            out += format_double(r.envelope_vals[e][i]);
        }
        out += '\n';
    }
    return out;
}

inline std::string sample_csv(const DecompositionSample& d, const std::string& seed_name, double a_const) {
    std::string out =
        "seed,x,a_const,er,f_val,g_val,arithmetic_part,analytic_part_exact,"
        "analytic_part_asymptotic,r_val,volterra_residual,volterra_budget\n";
    out += seed_name;
    for (double v : {d.x, a_const, d.er, d.f_val, d.g_val, d.arithmetic_part, d.analytic_part_exact}) {
        out += ',';
        out += format_double(v);
    }
    out += ',';
    out += d.analytic_part_asymptotic ? format_double(*d.analytic_part_asymptotic) : std::string();
    for (double v : {d.r_val, d.volterra_residual, d.volterra_budget}) {
        out += ',';
        out += format_double(v);
    }
    out += '\n';
    return out;
}

// gnuplot script plotting log10|ean| and log10 of each envelope against
// log10 x, reading the CSV by relative path.
inline std::string scan_gnuplot_script(const ScanReport& r, const std::string& csv_relative_path) {
    std::string out;
    out += "set datafile separator ','\n";
    out += "set xlabel 'log10 x'\n";
    out += "set ylabel 'log10 value'\n";
    out += "set key left top\n";
    out += "plot '" + csv_relative_path + "' every ::1 using (log10($1)):(log10(abs($2))) with linespoints title 'log10 |E^{AN}| (" +
           r.scan_case + ")'";
    for (size_t e = 0; e < r.envelopes.size(); ++e) {
        size_t col = 3 + r.envelopes.size() + e;  // envelope columns follow the ratio columns
        out += ", \\\n     '" + csv_relative_path + "' every ::1 using (log10($1)):(log10($" +
               std::to_string(col) + ")) with lines title 'envelope " + to_string(r.envelopes[e].kind) + "'";
    }
    out += "\n";
    return out;
}

}  // namespace divdecomp
