#pragma once

#include "jacaranda/patches.hpp"

#include <json.hpp>

#include <cstdint>
#include <string>
#include <vector>

namespace jacaranda {

struct KappaOptions {
    /// Generation depths tried for K_n: n + first_margin, then every `step`.
    int first_margin = 8;
    int step = 2;
    /// Largest generation (address) depth tried before giving up.
    int depth_cap = 128;
    int workers = 1;
};

/// K_n for a fixed point together with how it was obtained.
///
/// `stabilized` is set only when the window sets of every size m <= n are
/// closed under images and children of images at `generation_depth`, which
/// proves they contain every window at every address length.
struct CertifiedPatches {
    PatchSet patches;
    int generation_depth = 0;
    bool stabilized = false;
};

CertifiedPatches certified_patches(FixedPointWindows& windows, int n, const KappaOptions& options = {});

struct KappaRow {
    int n = 0;
    std::uint64_t kappa = 0;
    std::uint64_t kappa_odd = 0;
    std::uint64_t kappa_even = 0;
    int generation_depth = 0;
    bool stabilized = false;
    friend bool operator==(const KappaRow&, const KappaRow&) = default;
};

struct KappaTable {
    std::vector<KappaRow> rows;  // rows[i].n == i + 1

    [[nodiscard]] int n_max() const noexcept { return static_cast<int>(rows.size()); }
    [[nodiscard]] const KappaRow& row(int n) const { return rows.at(static_cast<std::size_t>(n - 1)); }
    [[nodiscard]] std::uint64_t kappa(int n) const { return row(n).kappa; }
    [[nodiscard]] bool all_stabilized() const noexcept;
    friend bool operator==(const KappaTable&, const KappaTable&) = default;
};

KappaRow kappa(FixedPointWindows& windows, int n, const KappaOptions& options = {});
/// Jacaranda tree, root 0.
KappaRow kappa(int n, const KappaOptions& options = {});

/// Rows 1..n_max, computed in parallel over n.
KappaTable kappa_table(const Substreetution& s, Color root, int n_max, const KappaOptions& options = {});
KappaTable kappa_table(int n_max, const KappaOptions& options = {});

struct SplitCounts {
    std::uint64_t odd = 0;
    std::uint64_t even = 0;
    bool stabilized = false;
};

/// Patches with an odd-length / even-length occurrence (a patch may have both).
SplitCounts kappa_split(FixedPointWindows& windows, int n, const KappaOptions& options = {});

struct ImageCount {
    int n = 0;
    std::uint64_t kappa_n = 0;
    /// |{ H(P) truncated to 2n : P in K_n }|
    std::uint64_t image_count = 0;
    bool injective = false;
    bool stabilized = false;
};

/// Counts even-type patches of K_2n as images of K_n.
ImageCount kappa_even_via_bijection(FixedPointWindows& windows, int n, const KappaOptions& options = {});

// ---------------------------------------------------------------------------
// Inequality reports

struct Check {
    std::string name;
    int n = 0;
    std::int64_t lhs = 0;
    std::int64_t rhs = 0;
    std::string statement;
    bool holds = false;
    /// Listed for completeness but outside the range the bound is claimed for.
    bool exempt = false;
};

struct CheckReport {
    std::vector<Check> checks;

    [[nodiscard]] bool ok() const noexcept { return failures() == 0; }
    [[nodiscard]] std::size_t failures() const noexcept;
    [[nodiscard]] std::vector<Check> failed(std::string_view name = {}) const;
    [[nodiscard]] bool ok(std::string_view name) const { return failed(name).empty(); }
    void add(std::string name, int n, std::int64_t lhs, std::int64_t rhs, std::string statement,
             bool holds, bool exempt = false);
    void append(const CheckReport& other);
};

/// The comparison sequence with v_2 = alpha, v_3 = beta, v_2n = v_n + v_n+1
/// and v_2n+1 = v_2n+2 - 1 (n >= 2).
class VSequence {
public:
    VSequence(std::int64_t alpha, std::int64_t beta, int n_max);

    [[nodiscard]] std::int64_t alpha() const noexcept { return alpha_; }
    [[nodiscard]] std::int64_t beta() const noexcept { return beta_; }
    [[nodiscard]] int n_max() const noexcept { return n_max_; }
    [[nodiscard]] std::int64_t operator[](int n) const;

private:
    std::int64_t alpha_;
    std::int64_t beta_;
    int n_max_;
    std::vector<std::int64_t> values_;  // values_[n], n >= 2
};

VSequence v_sequence(std::int64_t alpha, std::int64_t beta, int n_max);

/// Identities v_4n = v_2n + v_2n+2 - 1 and v_4n+2 = 2 v_2n+2 - 1 (n >= 2),
/// steps v_2n+2 - v_2n in {beta, beta + alpha - 1} (n >= 1), the linear bound
/// v_2n <= (beta + alpha - 1)(n - 1) + alpha and strict growth, as far as
/// the computed range allows.
CheckReport verify_v_sequence(const VSequence& v);

/// Growth, lower/upper bounds, doubling inequality, split relations and
/// domination by the comparison sequence with (alpha, beta) = (kappa_2, kappa_3).
CheckReport check_inequalities(const KappaTable& table);

// ---------------------------------------------------------------------------
// Export

std::string to_csv(const KappaTable& table);
nlohmann::json to_json(const KappaTable& table);
nlohmann::json to_json(const CheckReport& report);
nlohmann::json to_json(const PatchSet& set);
PatchSet patch_set_from_json(const nlohmann::json& doc);

}  // namespace jacaranda
