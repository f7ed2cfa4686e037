#pragma once

#include "jacaranda/complexity.hpp"

#include <json.hpp>

#include <cstdint>
#include <optional>
#include <string>
#include <vector>

namespace jacaranda {

inline constexpr double kLog2 = 0.693147180559945309417;

struct SequencePoint {
    int n = 0;
    double value = 0.0;
};

struct EntropySequence {
    std::vector<SequencePoint> points;

    [[nodiscard]] double at(int n) const;
    /// max value over n >= n0 (the finite shadow of a limsup).
    [[nodiscard]] double tail_max(int n0) const;
    /// Strictly decreasing over all computed n >= n0.
    [[nodiscard]] bool decreasing_from(int n0) const;
};

/// (1/2^n) log kappa_n. Throws unless every row is certified.
EntropySequence h_ps_sequence(const KappaTable& table);
/// (1/n) log log kappa_n for n >= 2. std::domain_error if kappa_n < 2.
EntropySequence h_bc_sequence(const KappaTable& table);

/// Which subwords psi of w the dynamical distance maximizes over: prefixes
/// in application order (psi applied first), or suffixes (w = eta psi).
enum class WindowOrder { prefix, suffix };

/// max over the |w| + 1 subwords psi of distance(shift(A, psi), shift(B, psi)).
/// Zero (at depth depth - |w|) when every pair agrees.
Dyadic d_omega(const TreePrefix& a, const TreePrefix& b, const Address& w, WindowOrder order = WindowOrder::prefix);

struct BufetovEstimate {
    int n = 0;
    int p = 0;
    /// mean over |w| = n of the number of distinct profiles
    double average = 0.0;
    double average_suffix = 0.0;
    std::uint64_t min_count = 0;
    std::uint64_t max_count = 0;
    /// kappa_{n+p+1}: no word can separate more points than there are patches
    std::uint64_t bound = 0;
    /// (1/n) log average, and its ceiling (1/n) log bound
    double h_estimate = 0.0;
    double h_bound = 0.0;
    bool stabilized = false;
};

/// Counts (w, 2^-p)-separated classes of K_{n+p+1}: two patches fall in one
/// class when their depth-(p+1) windows agree at every subword of w.
/// Needs p <= 5 so a window fits in one machine word.
BufetovEstimate bufetov_profile_count(int n, int p, const CertifiedPatches& k, int workers = 1);

struct Sandwich {
    int n = 0;
    int p = 0;
    std::uint64_t kappa = 0;  // kappa_{n+p}
    double lower = 0.0;       // (1/n) log 2^{n+p}
    double upper = 0.0;       // lower + (1/n) log kappa_{n+p}
    [[nodiscard]] double gap() const noexcept { return upper - lower; }
};

/// Bounds on (1/n) log r(n, 2^-p) from 2^{n+p} <= r <= 2^{n+p} kappa_{n+p}.
Sandwich htop_sandwich(int n, int p, const KappaTable& table);

struct SkewPoint {
    Address path;
    TreePrefix tree;
    friend bool operator==(const SkewPoint&, const SkewPoint&) = default;
};

/// x, F(x), ..., F^k(x) with F(w, A) = (w without its first letter, T_{w_0}(A)).
std::vector<SkewPoint> skew_orbit(const SkewPoint& x, int steps);

struct EntropyReport {
    KappaTable table;
    EntropySequence h_ps;
    EntropySequence h_bc;
    std::vector<BufetovEstimate> bufetov;
    std::vector<Sandwich> sandwich;
    int p = 0;
};

struct EntropyOptions {
    int n_max = 16;
    int p = 2;
    /// Bufetov profile counts for n = 1 .. bufetov_n_max (0 to skip).
    int bufetov_n_max = 8;
    int bufetov_p = 2;
    KappaOptions kappa;
};

EntropyReport entropy_report(FixedPointWindows& windows, const EntropyOptions& options);

nlohmann::json to_json(const EntropyReport& r);
std::string to_csv(const EntropyReport& r);

}  // namespace jacaranda
