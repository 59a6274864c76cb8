#pragma once

#include <cmath>
#include <cstdint>
#include <fstream>
#include <map>
#include <memory>
#include <sstream>
#include <stdexcept>
#include <string>
#include <string_view>
#include <utility>
#include <vector>

#include "divdecomp/constants.hpp"
#include "divdecomp/int128.hpp"
#include "divdecomp/kahan.hpp"
#include "divdecomp/sieve.hpp"
#include "divdecomp/summatory.hpp"

namespace divdecomp {

enum class SeedKind { mu, unit, liouville, custom };

enum class BSummatoryStrategy { direct_sieve, convolution };

// Liouville lambda(n) = (-1)^Omega(n), completely multiplicative.
inline std::shared_ptr<const std::vector<int8_t>> liouville_table(uint64_t n) {
    auto lam = std::make_shared<std::vector<int8_t>>(n + 1, int8_t(0));
    auto& v = *lam;
    if (n >= 1) v[1] = 1;
    std::vector<uint32_t> primes;
    std::vector<uint8_t> composite(n + 1, 0);
    for (uint64_t i = 2; i <= n; ++i) {
        if (!composite[i]) {
            primes.push_back(uint32_t(i));
            v[i] = -1;
        }
        for (uint32_t p : primes) {
            uint64_t m = i * p;
            if (m > n) break;
            composite[m] = 1;
            v[m] = int8_t(-v[i]);
            if (i % p == 0) break;
        }
    }
    return lam;
}

// A seed (a, b, alpha): coefficient stream a(n), its exact constant
// 2*alpha = sum a(n)/n^2, and the induced b = a * Id. The three built-ins
// take 2*alpha from closed forms; file-loaded seeds declare it together
// with a certified tail bound.
class ArithmeticSeed {
  public:
    static ArithmeticSeed make_mu(std::shared_ptr<const SieveTable> sieve) {
        if (!sieve) throw std::invalid_argument("mu seed needs a sieve table");
        ArithmeticSeed s;
        s.kind_ = SeedKind::mu;
        s.name_ = "mu";
        s.two_alpha_ = constants::six_over_pi_sq;
        s.sieve_ = std::move(sieve);
        s.strategy_ = BSummatoryStrategy::direct_sieve;
        return s;
    }

    static ArithmeticSeed make_unit() {
        ArithmeticSeed s;
        s.kind_ = SeedKind::unit;
        s.name_ = "unit";
        s.two_alpha_ = constants::pi_sq_over_6;
        s.strategy_ = BSummatoryStrategy::direct_sieve;
        return s;
    }

    static ArithmeticSeed make_liouville(uint64_t limit) {
        ArithmeticSeed s;
        s.kind_ = SeedKind::liouville;
        s.name_ = "liouville";
        s.two_alpha_ = constants::pi_sq_over_15;
        s.lambda_ = liouville_table(limit);
        s.strategy_ = BSummatoryStrategy::convolution;
        return s;
    }

    static ArithmeticSeed make_custom(std::string name, std::map<uint64_t, double> coeffs,
                                      double two_alpha, double declared_tail_bound) {
        ArithmeticSeed s;
        s.kind_ = SeedKind::custom;
        s.name_ = std::move(name);
        s.two_alpha_ = two_alpha;
        s.custom_ = std::move(coeffs);
        s.declared_tail_ = declared_tail_bound;
        s.strategy_ = BSummatoryStrategy::convolution;
        return s;
    }

    SeedKind kind() const { return kind_; }
    const std::string& name() const { return name_; }
    double two_alpha() const { return two_alpha_; }
    BSummatoryStrategy strategy() const { return strategy_; }

    // Largest n for which coeff(n) can be served.
    uint64_t limit() const {
        switch (kind_) {
            case SeedKind::mu: return sieve_->bound;
            case SeedKind::unit: return UINT64_MAX;
            case SeedKind::liouville: return lambda_->size() - 1;
            case SeedKind::custom: return UINT64_MAX;  // zero beyond support
        }
        return 0;
    }

    bool integral_coeffs() const { return kind_ != SeedKind::custom; }

    double coeff(uint64_t n) const {
        switch (kind_) {
            case SeedKind::mu: return double(sieve_->mobius[n]);
            case SeedKind::unit: return 1.0;
            case SeedKind::liouville: return double((*lambda_)[n]);
            case SeedKind::custom: {
                auto it = custom_.find(n);
                return it == custom_.end() ? 0.0 : it->second;
            }
        }
        return 0.0;
    }

    int coeff_int(uint64_t n) const {
        switch (kind_) {
            case SeedKind::mu: return sieve_->mobius[n];
            case SeedKind::unit: return 1;
            case SeedKind::liouville: return (*lambda_)[n];
            case SeedKind::custom: throw std::logic_error("custom seeds have non-integral coefficients");
        }
        return 0;
    }

    void require_limit(uint64_t n) const {
        if (n > limit())
            throw std::invalid_argument(name_ + " seed: needs coefficients up to " + std::to_string(n) +
                                        " but table bound is " + std::to_string(limit()));
    }

    // Calls f(n, a(n)) for every nonzero coefficient with n <= x, in
    // increasing n.
    template <class F>
    void visit_coeffs(uint64_t x, F&& f) const {
        if (kind_ == SeedKind::custom) {
            for (const auto& [n, a] : custom_) {
                if (n > x) break;
                if (a != 0.0) f(n, a);
            }
            return;
        }
        require_limit(x);
        for (uint64_t n = 1; n <= x; ++n) {
            int a = coeff_int(n);
            if (a != 0) f(n, double(a));
        }
    }

    // sum_{n<=X} |a(n)|/n: the local boundedness estimate for f.
    double abs_coeff_over_n_sum(uint64_t x) const {
        KahanSum acc;
        visit_coeffs(x, [&acc](uint64_t n, double a) { acc += std::abs(a) / double(n); });
        return acc.value();
    }

    // sum_{n<=X} a(n)/n^2, compensated.
    double partial_inv_square_sum(uint64_t x) const {
        if (kind_ == SeedKind::custom) {
            KahanSum acc;
            for (const auto& [n, a] : custom_) {
                if (n > x) break;
                acc += a / (double(n) * double(n));
            }
            return acc.value();
        }
        require_limit(x);
        KahanSum acc;
        for (uint64_t n = 1; n <= x; ++n) {
            int a = coeff_int(n);
            if (a != 0) acc += double(a) / (double(n) * double(n));
        }
        return acc.value();
    }

    // Certified bound on |2*alpha - sum_{n<=X} a(n)/n^2|. For the built-ins
    // |a(n)| <= 1, so the tail is below sum_{n>X} 1/n^2 < 1/X.
    double tail_bound(uint64_t x) const {
        if (kind_ == SeedKind::custom) {
            double b = declared_tail_;
            for (auto it = custom_.upper_bound(x); it != custom_.end(); ++it)
                b += std::abs(it->second) / (double(it->first) * double(it->first));
            return b;
        }
        return x == 0 ? two_alpha_ + 1.0 : 1.0 / double(x);
    }

    // b(n) = sum_{d|n} a(d) n/d, by trial division. Small-n verification use.
    double b_value(uint64_t n) const {
        KahanSum acc;
        for (uint64_t d = 1; d * d <= n; ++d) {
            if (n % d != 0) continue;
            uint64_t e = n / d;
            acc += coeff(d) * double(e);
            if (d != e) acc += coeff(e) * double(d);
        }
        return acc.value();
    }

    // sum_{n<=x} b(n), exact for integral coefficient seeds.
    // mu -> totient prefix sums; unit -> hyperbola; liouville -> the
    // convolution formula sum_{d<=x} a(d) T([x/d]).
    i128 b_summatory_exact(double x) const {
        uint64_t ix = floor_index(x);
        switch (kind_) {
            case SeedKind::mu:
                if (ix > sieve_->bound)
                    throw std::invalid_argument("mu seed: summatory needs sieve bound >= " +
                                                std::to_string(ix));
                return sieve_->phi_prefix[ix];
            case SeedKind::unit: return summatory_sigma1_u(ix);
            case SeedKind::liouville: {
                require_limit(ix);
                i128 total = 0;
                for (uint64_t d = 1; d <= ix; ++d) {
                    int a = (*lambda_)[d];
                    if (a != 0) total += i128(a) * triangular(ix / d);
                }
                return total;
            }
            case SeedKind::custom: throw std::logic_error("custom seeds have no exact summatory");
        }
        return 0;
    }

    double b_summatory(double x) const {
        if (integral_coeffs()) return to_double(b_summatory_exact(x));
        uint64_t ix = floor_index(x);
        KahanSum acc;
        for (const auto& [d, a] : custom_) {
            if (d > ix) break;
            acc += a * to_double(triangular(ix / d));
        }
        return acc.value();
    }

    std::shared_ptr<const SieveTable> sieve() const { return sieve_; }

  private:
    ArithmeticSeed() = default;

    SeedKind kind_ = SeedKind::unit;
    std::string name_;
    double two_alpha_ = 0.0;
    BSummatoryStrategy strategy_ = BSummatoryStrategy::direct_sieve;
    std::shared_ptr<const SieveTable> sieve_;                  // mu
    std::shared_ptr<const std::vector<int8_t>> lambda_;        // liouville
    std::map<uint64_t, double> custom_;                        // custom, sparse
    double declared_tail_ = 0.0;
};

// Declarative custom-seed file:
//   a header line of "key=value" tokens (two_alpha mandatory, tail_bound
//   and name optional), then one "n a(n)" pair per line. '#' starts a
//   comment. Coefficients not listed are zero.
inline ArithmeticSeed load_seed_file(const std::filesystem::path& path) {
    std::ifstream in(path);
    if (!in) throw std::runtime_error("load_seed_file: cannot open " + path.string());

    std::string name = path.stem().string();
    double two_alpha = 0.0, tail_bound = 0.0;
    bool have_two_alpha = false;
    std::map<uint64_t, double> coeffs;

    std::string line;
    bool header_done = false;
    size_t lineno = 0;
    while (std::getline(in, line)) {
        ++lineno;
        auto hash = line.find('#');
        if (hash != std::string::npos) line.erase(hash);
        std::istringstream ls(line);
        std::string tok;
        if (!(ls >> tok)) continue;  // blank

        if (!header_done && tok.find('=') != std::string::npos) {
            do {
                auto eq = tok.find('=');
                std::string key = tok.substr(0, eq), val = tok.substr(eq + 1);
                if (key == "two_alpha") {
                    two_alpha = std::stod(val);
                    have_two_alpha = true;
                } else if (key == "tail_bound") {
                    tail_bound = std::stod(val);
                } else if (key == "name") {
                    name = val;
                } else {
                    throw std::runtime_error(path.string() + ":" + std::to_string(lineno) +
                                             ": unknown header key '" + key + "'");
                }
            } while (ls >> tok);
            header_done = true;
            continue;
        }
        header_done = true;

        uint64_t n = 0;
        double a = 0.0;
        try {
            n = std::stoull(tok);
        } catch (const std::exception&) {
            throw std::runtime_error(path.string() + ":" + std::to_string(lineno) + ": bad index '" + tok + "'");
        }
        if (n == 0 || !(ls >> a))
            throw std::runtime_error(path.string() + ":" + std::to_string(lineno) + ": expected 'n a(n)'");
        coeffs[n] = a;
    }

    if (!have_two_alpha)
        throw std::runtime_error("load_seed_file: " + path.string() + " is missing two_alpha");
    return ArithmeticSeed::make_custom(std::move(name), std::move(coeffs), two_alpha, tail_bound);
}

// Name-addressable registry over one shared sieve table.
class SeedRegistry {
  public:
    explicit SeedRegistry(std::shared_ptr<const SieveTable> sieve) : sieve_(std::move(sieve)) {}

    ArithmeticSeed get(std::string_view name) const {
        if (name == "mu") return ArithmeticSeed::make_mu(sieve_);
        if (name == "unit") return ArithmeticSeed::make_unit();
        if (name == "liouville")
            return ArithmeticSeed::make_liouville(sieve_ ? sieve_->bound : uint64_t(1));
        throw std::invalid_argument("unknown seed '" + std::string(name) + "' (expected mu, unit or liouville)");
    }

    std::shared_ptr<const SieveTable> sieve() const { return sieve_; }

  private:
    std::shared_ptr<const SieveTable> sieve_;
};

}  // namespace divdecomp
