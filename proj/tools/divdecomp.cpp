// Command-line frontend: sieve management, decomposition evaluation,
// identity verification, Mellin/Dirichlet checks and growth scans.
//
// Exit codes: 0 all requested checks pass, 1 check failure (or I/O error),
// 2 precondition/usage violation.

#include <cmath>
#include <complex>
#include <cstdlib>
#include <filesystem>
#include <iostream>
#include <memory>
#include <optional>
#include <random>
#include <string>
#include <vector>

#include <CLI11.hpp>

#include "divdecomp/divdecomp.hpp"

namespace fs = std::filesystem;
using namespace divdecomp;

namespace {

constexpr int kExitOk = 0;
constexpr int kExitCheckFailed = 1;
constexpr int kExitPrecondition = 2;

fs::path cache_dir() {
    if (const char* env = std::getenv("DIVDECOMP_CACHE")) return fs::path(env);
    return fs::path(".");
}

fs::path default_cache_file(uint64_t n) {
    return cache_dir() / ("sieve-" + std::to_string(n) + ".adsv");
}

// Provides a sieve of at least `need` entries, loading/refreshing the cache
// file when one is named and building in memory otherwise.
std::shared_ptr<const SieveTable> obtain_sieve(uint64_t need, const std::string& cache_flag) {
    if (need == 0) return nullptr;
    if (cache_flag.empty()) return std::make_shared<SieveTable>(build_sieve(need));
    fs::path path(cache_flag);
    uint64_t cached = fs::exists(path) ? sieve_cache_bound(path) : 0;
    if (cached >= need) return std::make_shared<SieveTable>(load_sieve(path));
    auto table = std::make_shared<SieveTable>(build_sieve(need));
    save_sieve(*table, path);
    return table;
}

std::complex<double> parse_complex(const std::string& tok) {
    std::string s = tok;
    bool has_i = !s.empty() && (s.back() == 'i' || s.back() == 'j');
    if (!has_i) return {std::stod(s), 0.0};
    s.pop_back();
    // split at the last +/- that is not the leading sign
    size_t split = std::string::npos;
    for (size_t i = s.size(); i-- > 1;) {
        if ((s[i] == '+' || s[i] == '-') && s[i - 1] != 'e' && s[i - 1] != 'E') {
            split = i;
            break;
        }
    }
    if (split == std::string::npos) return {0.0, std::stod(s)};  // pure imaginary
    double re = std::stod(s.substr(0, split));
    double im = (split + 1 == s.size()) ? (s[split] == '-' ? -1.0 : 1.0)
                                        : std::stod(s.substr(split));
    return {re, im};
}

std::vector<std::complex<double>> parse_s_list(const std::vector<std::string>& toks) {
    std::vector<std::complex<double>> out;
    for (const auto& t : toks) out.push_back(parse_complex(t));
    if (out.empty()) throw std::invalid_argument("no s values given (use --s)");
    return out;
}

struct ParsedGrid {
    GridSpec spec;
};

GridSpec parse_grid(const std::string& text) {
    GridSpec g;
    auto first = text.find(':');
    if (first == std::string::npos) throw std::invalid_argument("grid must be x_min:x_max[:points]");
    auto second = text.find(':', first + 1);
    g.x_min = std::stod(text.substr(0, first));
    if (second == std::string::npos) {
        g.x_max = std::stod(text.substr(first + 1));
        double decades = std::log10(g.x_max / g.x_min);
        g.points = uint32_t(std::max(2.0, std::ceil(30.0 * decades) + 1.0));  // 30/decade default
    } else {
        g.x_max = std::stod(text.substr(first + 1, second - first - 1));
        g.points = uint32_t(std::stoul(text.substr(second + 1)));
    }
    return g;
}

Envelope parse_envelope(const std::string& text) {
    // kind[:key=value[:key=value...]], e.g. thm121:delta=0.5
    auto colon = text.find(':');
    std::string kind = text.substr(0, colon);
    double delta = 0.5, eps = 0.1, a_const = 1.0;
    std::string rest = colon == std::string::npos ? "" : text.substr(colon + 1);
    while (!rest.empty()) {
        auto next = rest.find(':');
        std::string item = rest.substr(0, next);
        rest = next == std::string::npos ? "" : rest.substr(next + 1);
        auto eq = item.find('=');
        if (eq == std::string::npos) throw std::invalid_argument("envelope parameter must be key=value");
        std::string key = item.substr(0, eq);
        double val = std::stod(item.substr(eq + 1));
        if (key == "delta")
            delta = val;
        else if (key == "eps" || key == "epsilon")
            eps = val;
        else if (key == "A" || key == "a")
            a_const = val;
        else
            throw std::invalid_argument("unknown envelope parameter '" + key + "'");
    }
    switch (envelope_kind_from_string(kind)) {
        case EnvelopeKind::thm111_2: return Envelope::thm111_2(a_const);
        case EnvelopeKind::thm121: return Envelope::thm121(delta);
        case EnvelopeKind::thm122: return Envelope::thm122(delta, eps);
    }
    throw std::invalid_argument("unknown envelope '" + kind + "'");
}

void emit(const std::string& out_path, const std::string& content) {
    if (out_path.empty())
        std::cout << content;
    else
        write_text_file(out_path, content);
}

// ---- sieve ----

int cmd_sieve(uint64_t n, std::string cache_path) {
    fs::path path = cache_path.empty() ? default_cache_file(n) : fs::path(cache_path);
    if (fs::exists(path)) {
        uint64_t cached = sieve_cache_bound(path);  // throws on bad magic
        if (cached == n) {
            std::cout << "sieve cache " << path.string() << " already holds N=" << n << "\n";
            return kExitOk;
        }
        std::cout << "sieve cache " << path.string() << " holds N=" << cached << ", rebuilding for N=" << n
                  << "\n";
    }
    SieveTable t = build_sieve(n);
    save_sieve(t, path);
    std::cout << "wrote sieve cache " << path.string() << " (N=" << n << ")\n";
    return kExitOk;
}

// ---- eval ----

int cmd_eval(const std::string& seed_name, double x, double a_const, uint64_t panels,
             const std::string& format, const std::string& out_path, const std::string& cache) {
    if (!(x >= 1.0)) throw std::domain_error("eval: analytic split requires x >= 1");
    uint64_t need = (seed_name == "unit") ? 0 : floor_index(x);
    SeedRegistry registry(obtain_sieve(need, cache));
    ArithmeticSeed seed = registry.get(seed_name);
    DecompositionSample sample = decompose(seed, x, a_const, panels);
    if (format == "csv")
        emit(out_path, sample_csv(sample, seed_name, a_const));
    else
        emit(out_path, to_json(sample, seed_name, a_const).dump(2) + "\n");
    return kExitOk;
}

// ---- verify ----

struct SuiteTally {
    int passed = 0;
    int failed = 0;
    int inconclusive = 0;
    std::vector<std::string> failures;

    void check(bool ok, const std::string& what) {
        if (ok) {
            ++passed;
        } else {
            ++failed;
            failures.push_back(what);
        }
    }
};

void run_identity_suite(SuiteTally& tally, const SeedRegistry& registry) {
    const SieveTable& sieve = *registry.sieve();
    std::mt19937_64 rng(0x5eedULL);
    std::uniform_real_distribution<double> x_floor(1.0, 1e5);

    for (int i = 0; i < 50; ++i) {
        double x = x_floor(rng);
        auto w = floor_sum_identity_check(sieve, x);
        tally.check(w.holds(), "floor identity at x=" + std::to_string(x) + ": mu-sum=" +
                                   to_string(w.mobius_floor_sum) + " gap=" + to_string(w.divisor_gap));
    }

    for (uint64_t x = 1; x <= 10000; ++x) {
        if (summatory_divcount_u(x) != sieve.divcount_prefix[x]) {
            tally.check(false, "divisor identity at integer x=" + std::to_string(x));
            break;
        }
        if (x == 10000) tally.check(true, "");
    }

    std::uniform_real_distribution<double> x_small(1.0, 1e4);
    for (const char* name : {"mu", "unit", "liouville"}) {
        ArithmeticSeed seed = registry.get(name);
        for (int i = 0; i < 50; ++i) {
            double x = x_small(rng);
            double er = er_value(seed, x);
            double gap = std::abs(er - (x * f_value(seed, x) + r_value(seed, x)));
            tally.check(gap <= 1e-9 * std::max(1.0, std::abs(er)),
                        std::string("decomposition identity (") + name + ") at x=" + std::to_string(x) +
                            " residual=" + std::to_string(gap));
        }
    }

    ArithmeticSeed mu = registry.get("mu");
    ArithmeticSeed unit = registry.get("unit");
    for (int i = 0; i < 20; ++i) {
        double x = x_small(rng);
        double lhs_mu = analytic_part(mu, x).value;
        double r_mu = r_value(mu, x);
        tally.check(std::abs(lhs_mu - r_mu) <= 1e-9 * std::max(1.0, std::abs(r_mu)),
                    "mu analytic part != R at x=" + std::to_string(x));
        double lhs_unit = analytic_part(unit, x).value;
        double r_unit = r_value(unit, x);
        tally.check(std::abs(lhs_unit - r_unit) <= 1e-9 * std::max(1.0, std::abs(r_unit)),
                    "unit analytic part != R at x=" + std::to_string(x));
    }
}

void run_volterra_suite(SuiteTally& tally, const SeedRegistry& registry, uint64_t budget, double tol) {
    for (const char* name : {"mu", "unit", "liouville"}) {
        ArithmeticSeed seed = registry.get(name);
        for (double x : {10.0, 50.0, 100.0}) {
            for (double a : {-1.0, 0.0, 3.7}) {
                auto v = volterra_residual(seed, x, a, budget);
                if (v.budget > tol) {
                    ++tally.inconclusive;
                    continue;
                }
                tally.check(std::abs(v.residual) <= v.budget,
                            std::string("volterra (") + name + ") x=" + std::to_string(x) +
                                " A=" + std::to_string(a) + " residual=" + std::to_string(v.residual) +
                                " budget=" + std::to_string(v.budget));
            }
        }
    }
}

int cmd_verify(const std::string& suite, uint64_t budget, bool require_conclusive,
               const std::string& cache) {
    SeedRegistry registry(obtain_sieve(100000, cache));
    SuiteTally tally;
    if (suite == "identities" || suite == "all") run_identity_suite(tally, registry);
    if (suite == "volterra" || suite == "all") run_volterra_suite(tally, registry, budget, 1e-6);
    if (suite != "identities" && suite != "volterra" && suite != "all")
        throw std::invalid_argument("unknown suite '" + suite + "' (identities, volterra or all)");

    std::cout << "verify " << suite << ": " << tally.passed << " passed, " << tally.failed << " failed, "
              << tally.inconclusive << " inconclusive\n";
    for (const auto& f : tally.failures)
        if (!f.empty()) std::cout << "  FAIL " << f << "\n";
    if (tally.failed > 0) return kExitCheckFailed;
    if (require_conclusive && tally.inconclusive > 0) return kExitCheckFailed;
    return kExitOk;
}

// ---- mellin ----

int cmd_mellin(const std::string& mellin_case, const std::vector<std::string>& s_tokens, double x_trunc,
               double tol, const std::string& out_path, const std::string& cache) {
    auto s_values = parse_s_list(s_tokens);
    ordered_json reports = ordered_json::array();
    bool all_pass = true;

    if (mellin_case == "phi" || mellin_case == "summatory") {
        auto sieve = obtain_sieve(floor_index(x_trunc), cache);
        for (auto s : s_values) {
            MellinCheckReport rep = (mellin_case == "phi") ? mellin_ean_phi(*sieve, s, x_trunc, tol)
                                                           : mellin_summatory(*sieve, s, x_trunc, tol);
            reports.push_back(to_json(rep));
            all_pass = all_pass && rep.pass;
            std::cout << rep.kind << " s=" << format_double(s.real()) << "+" << format_double(s.imag())
                      << "i X=" << format_double(x_trunc) << " abs_error=" << format_double(rep.abs_error)
                      << " tail=" << format_double(rep.tail_bound) << (rep.pass ? " PASS" : " FAIL") << "\n";
        }
    } else if (mellin_case == "f2") {
        for (auto s : s_values) {
            MellinCheckReport rep = mellin_f2(s, x_trunc, tol);
            reports.push_back(to_json(rep));
            all_pass = all_pass && rep.pass;
            std::cout << rep.kind << " s=" << format_double(s.real()) << "+" << format_double(s.imag())
                      << "i X=" << format_double(x_trunc) << " abs_error=" << format_double(rep.abs_error)
                      << " tail=" << format_double(rep.tail_bound) << (rep.pass ? " PASS" : " FAIL") << "\n";
        }
    } else if (mellin_case == "sigma1") {
        // Only O(1) is promised: record residuals at X/10 and X and demand
        // the magnitude settles (within a factor 2).
        double x_small = std::max(2.0, x_trunc / 10.0);
        double sup_res = 0.0, max_factor = 0.0;
        for (auto s : s_values) {
            MellinCheckReport small = mellin_ean_sigma1(s, x_small, tol);
            MellinCheckReport big = mellin_ean_sigma1(s, x_trunc, tol);
            reports.push_back(to_json(big));
            double factor = big.abs_error / std::max(small.abs_error, 1e-300);
            sup_res = std::max(sup_res, big.abs_error);
            max_factor = std::max(max_factor, std::max(factor, 1.0 / factor));
            bool ok = std::isfinite(big.abs_error) && factor <= 2.0 && factor >= 0.5;
            all_pass = all_pass && ok;
            std::cout << "ean-sigma1 s=" << format_double(s.real()) << "+" << format_double(s.imag())
                      << "i residual(X=" << format_double(x_small) << ")=" << format_double(small.abs_error)
                      << " residual(X=" << format_double(x_trunc) << ")=" << format_double(big.abs_error)
                      << (ok ? " PASS" : " FAIL") << "\n";
        }
        std::cout << "boundedness summary: sup_residual=" << format_double(sup_res)
                  << " max_factor=" << format_double(max_factor) << (all_pass ? " PASS" : " FAIL") << "\n";
    } else {
        throw std::invalid_argument("unknown mellin case '" + mellin_case +
                                    "' (phi, sigma1, f2 or summatory)");
    }

    if (!out_path.empty()) write_text_file(out_path, reports.dump(2) + "\n");
    return all_pass ? kExitOk : kExitCheckFailed;
}

// ---- scan ----

int cmd_scan(const std::string& case_name, const std::string& grid_text,
             const std::vector<std::string>& envelope_texts, const std::string& out_path,
             const std::string& format, const std::string& plot_path, const std::string& cache) {
    ScanCase scan_case = scan_case_from_string(case_name);
    GridSpec grid = parse_grid(grid_text);
    std::vector<Envelope> envelopes;
    for (const auto& t : envelope_texts) envelopes.push_back(parse_envelope(t));
    if (envelopes.empty()) envelopes.push_back(Envelope::thm121(0.5));

    uint64_t need = scan_case == ScanCase::phi ? floor_index(grid.x_max) : 0;
    SeedRegistry registry(obtain_sieve(need, cache));
    ScanReport report = scan(registry, scan_case, grid, envelopes);

    if (format == "json")
        emit(out_path, to_json(report).dump(2) + "\n");
    else
        emit(out_path, scan_csv(report));

    if (!plot_path.empty()) {
        if (out_path.empty())
            throw std::invalid_argument("--plot requires --out (the script references the CSV file)");
        std::string csv_rel = fs::path(out_path).filename().string();
        write_text_file(plot_path, scan_gnuplot_script(report, csv_rel));
    }

    std::cerr << "scan " << case_name << ": " << report.grid.size()
              << " points, sup_ratio=" << format_double(report.sup_ratio)
              << ", fitted_exponent=" << format_double(report.fitted_exponent) << "\n";
    return kExitOk;
}

}  // namespace

int main(int argc, char** argv) {
    CLI::App app{"Arithmetic/analytic decomposition toolkit for totient and divisor error terms"};
    app.require_subcommand(1);

    std::string cache;

    auto* sieve_cmd = app.add_subcommand("sieve", "Build and persist a sieve table");
    uint64_t sieve_n = 1000000;
    sieve_cmd->add_option("--N", sieve_n, "table bound")->required();
    sieve_cmd->add_option("--cache", cache, "cache file path");

    auto* eval_cmd = app.add_subcommand("eval", "Evaluate the decomposition at one abscissa");
    std::string seed_name = "unit", format = "json", out_path;
    double eval_x = 0.0, eval_a = 0.0;
    uint64_t panels = 10000;
    eval_cmd->add_option("--seed", seed_name, "seed name (mu, unit, liouville)");
    eval_cmd->add_option("--x", eval_x, "abscissa (>= 1)")->required();
    eval_cmd->add_option("--A", eval_a, "Volterra solution constant");
    eval_cmd->add_option("--panels", panels, "quadrature panel target");
    eval_cmd->add_option("--format", format, "json or csv");
    eval_cmd->add_option("--out", out_path, "output file (stdout when omitted)");
    eval_cmd->add_option("--cache", cache, "sieve cache file");

    auto* verify_cmd = app.add_subcommand("verify", "Run identity/Volterra verification suites");
    std::string suite = "all";
    uint64_t budget = 10000;
    bool require_conclusive = false;
    verify_cmd->add_option("--suite", suite, "identities, volterra or all");
    verify_cmd->add_option("--budget", budget, "Volterra panel budget");
    verify_cmd->add_flag("--require-conclusive", require_conclusive,
                         "treat inconclusive Volterra runs as failures");
    verify_cmd->add_option("--cache", cache, "sieve cache file");

    auto* mellin_cmd = app.add_subcommand("mellin", "Mellin-transform identity checks");
    std::string mellin_case = "phi";
    std::vector<std::string> s_tokens;
    double x_trunc = 1e4, tol = 1e-3;
    mellin_cmd->add_option("--case", mellin_case, "phi, sigma1, f2 or summatory");
    mellin_cmd->add_option("--s", s_tokens, "s sample list, e.g. 3,3.5+0.5i,4")->delimiter(',');
    mellin_cmd->add_option("--X", x_trunc, "truncation");
    mellin_cmd->add_option("--tol", tol, "tolerance added to the tail bound");
    mellin_cmd->add_option("--out", out_path, "JSON report file");
    mellin_cmd->add_option("--cache", cache, "sieve cache file");

    auto* scan_cmd = app.add_subcommand("scan", "Growth scan of the analytic part");
    std::string scan_case_name = "sigma1", grid_text = "16:10000", plot_path;
    std::vector<std::string> envelope_texts;
    scan_cmd->add_option("--case", scan_case_name, "phi or sigma1");
    scan_cmd->add_option("--grid", grid_text, "x_min:x_max[:points]");
    scan_cmd->add_option("--envelope", envelope_texts,
                         "envelope spec (thm111-2:A=1, thm121:delta=0.5, thm122:delta=0.3:eps=0.1); repeatable");
    scan_cmd->add_option("--out", out_path, "report file");
    scan_cmd->add_option("--format", format, "csv or json");
    scan_cmd->add_option("--plot", plot_path, "gnuplot script path");
    scan_cmd->add_option("--cache", cache, "sieve cache file");

    CLI11_PARSE(app, argc, argv);

    try {
        if (app.got_subcommand(sieve_cmd)) return cmd_sieve(sieve_n, cache);
        if (app.got_subcommand(eval_cmd)) return cmd_eval(seed_name, eval_x, eval_a, panels, format, out_path, cache);
        if (app.got_subcommand(verify_cmd)) return cmd_verify(suite, budget, require_conclusive, cache);
        if (app.got_subcommand(mellin_cmd)) return cmd_mellin(mellin_case, s_tokens, x_trunc, tol, out_path, cache);
        if (app.got_subcommand(scan_cmd))
            return cmd_scan(scan_case_name, grid_text, envelope_texts, out_path, format, plot_path, cache);
    } catch (const std::domain_error& e) {
        std::cerr << "error: " << e.what() << "\n";
        return kExitPrecondition;
    } catch (const std::invalid_argument& e) {
        std::cerr << "error: " << e.what() << "\n";
        return kExitPrecondition;
    } catch (const std::length_error& e) {
        std::cerr << "error: " << e.what() << "\n";
        return kExitPrecondition;
    } catch (const std::exception& e) {
        std::cerr << "error: " << e.what() << "\n";
        return kExitCheckFailed;
    }
    return kExitPrecondition;
}
