#pragma once

#include "jacaranda/complexity.hpp"
#include "jacaranda/structure.hpp"

#include <json.hpp>

#include <optional>
#include <string>
#include <vector>

namespace jacaranda {

/// Odd words cannot stabilize anything: T_w keeps the parity of a tree only
/// when |w| is even. Throws on the empty word.
bool parity_obstruction(const Address& w);

enum class ParityCase { even, odd };

struct Halving {
    Address word;
    /// Odd case: `word` is the rotation w_1 ... w_n w_0, still to be halved.
    bool rotation = false;
};

/// One step of cutting a stabilizer word in half. Even trees are images, so
/// their stabilizer word halves to its source word. For an odd tree the
/// stabilizer of its first child is the rotated word.
Halving halve_candidate(const Address& w, ParityCase parity, const Substreetution& s);

/// Patches P of K_D whose shift by w is P itself cut to D - |w| lines.
std::vector<TreePrefix> overlap_candidates(const Address& w, const PatchSet& patches);

enum class Outcome { parity_obstruction, refuted, reduced, candidates_remain };

std::string to_string(Outcome o);
Outcome outcome_from_string(std::string_view s);

struct ReductionBranch {
    ParityCase parity = ParityCase::even;
    /// Words visited: [rotation,] halved word.
    std::vector<Address> chain;
    [[nodiscard]] const Address& target() const { return chain.back(); }
    friend bool operator==(const ReductionBranch&, const ReductionBranch&) = default;
};

struct Certificate {
    Address omega;
    Outcome outcome = Outcome::candidates_remain;
    /// Refuted: the depth where candidates vanished. Otherwise the deepest
    /// depth tried (0 for parity obstructions).
    int depth = 0;
    /// Left over at `depth` when no direct refutation was found.
    std::vector<TreePrefix> candidates;
    std::vector<ReductionBranch> reduction;

    [[nodiscard]] bool certified() const noexcept { return outcome != Outcome::candidates_remain; }
    friend bool operator==(const Certificate&, const Certificate&) = default;
};

/// Finite-depth shadow of T_w(A) = A: every depth-D prefix of A overlaps
/// itself at w. Refuses patch sets that are not certified complete.
Certificate refute_at_depth(const Address& w, const CertifiedPatches& k);
/// Same check on an exported patch set, trusted as complete.
Certificate refute_at_depth(const Address& w, const PatchSet& k);

struct SweepOptions {
    int max_length = 4;
    int max_depth = 14;
    int workers = 1;
    KappaOptions kappa;
};

struct SweepReport {
    int max_length = 0;
    int max_depth = 0;
    std::vector<Certificate> certificates;  // by length, then lexicographic

    [[nodiscard]] std::size_t unresolved() const noexcept;
    [[nodiscard]] bool ok() const noexcept { return unresolved() == 0; }
    [[nodiscard]] const Certificate& at(const Address& w) const;
    friend bool operator==(const SweepReport&, const SweepReport&) = default;
};

/// Every word with 1 <= |w| <= max_length: parity first, then direct
/// refutation at D = |w| + 4, |w| + 6, ... <= max_depth, then halving
/// chains down to words already certified. Both parity branches are
/// followed unless the surviving candidates all share one parity.
SweepReport sweep(FixedPointWindows& windows, const SweepOptions& options);
SweepReport sweep(const SweepOptions& options);

struct ReplayResult {
    std::size_t checked = 0;
    std::vector<std::string> mismatches;
    [[nodiscard]] bool ok() const noexcept { return mismatches.empty(); }
};

/// Recomputes every certificate of a report from freshly enumerated patch
/// sets and checks reductions against the certificates they point to.
ReplayResult replay(const SweepReport& report, FixedPointWindows& windows, const KappaOptions& options = {});

nlohmann::json to_json(const Certificate& c);
Certificate certificate_from_json(const nlohmann::json& doc);
nlohmann::json to_json(const SweepReport& r);
SweepReport sweep_report_from_json(const nlohmann::json& doc);

}  // namespace jacaranda
