#pragma once

#include "jacaranda/substitution.hpp"

#include <cstdint>
#include <map>
#include <optional>
#include <unordered_map>
#include <utility>
#include <vector>

namespace jacaranda {

/// Where a patch was seen: the shortest odd-length and even-length (>= 2)
/// occurrence addresses, and whether it is the root window.
struct PatchWitnesses {
    std::optional<Address> odd;
    std::optional<Address> even;
    bool root = false;

    [[nodiscard]] bool at_odd() const noexcept { return odd.has_value(); }
    /// The root window counts as even: the fixed point is its own image.
    [[nodiscard]] bool at_even() const noexcept { return root || even.has_value(); }
    /// Shortest recorded occurrence.
    [[nodiscard]] Address first() const;
    void merge(const PatchWitnesses& other);
    void record(const Address& w);
};

/// A set of depth-n patches in canonical order, each with witness addresses.
class PatchSet {
public:
    PatchSet() = default;
    PatchSet(int patch_depth, std::vector<std::pair<TreePrefix, PatchWitnesses>> entries);

    [[nodiscard]] int patch_depth() const noexcept { return depth_; }
    [[nodiscard]] std::size_t count() const noexcept { return patches_.size(); }
    [[nodiscard]] std::size_t odd_count() const noexcept;
    [[nodiscard]] std::size_t even_count() const noexcept;

    [[nodiscard]] const std::vector<TreePrefix>& patches() const noexcept { return patches_; }
    [[nodiscard]] const PatchWitnesses& witnesses(std::size_t i) const { return witnesses_.at(i); }
    [[nodiscard]] std::optional<std::size_t> find(const TreePrefix& p) const;
    [[nodiscard]] bool contains(const TreePrefix& p) const { return find(p).has_value(); }

    /// Same patches with the same root/odd/even flags (witness words may differ).
    [[nodiscard]] bool same_occurrence_classes(const PatchSet& other) const;

    /// Generation depth the set was enumerated at (0 when unknown).
    int generation_depth = 0;

private:
    int depth_ = 0;
    std::vector<TreePrefix> patches_;
    std::vector<PatchWitnesses> witnesses_;
};

/// All depth-n windows { shift(tree, w) truncated to n : |w| <= depth - n }
/// of a materialized prefix. The address space is split on its leading
/// letters across `workers` threads; the result does not depend on it.
PatchSet enumerate_patches(const TreePrefix& tree, int n, int workers = 1);

/// Windows of a substitution fixed point F at arbitrary address length,
/// without materializing F.
///
/// Level sets are built from F = H(F): windows at an even length 2k are
/// images of windows at length k, windows at an odd length 2k+1 are children
/// of images of windows at length k. windows(N, n) equals
/// enumerate_patches(fixed_point(s, root, N), n) for every N.
class FixedPointWindows {
public:
    struct Entry {
        std::uint32_t id;
        Address witness;
    };

    /// Result of checking that window sets of every size up to max_size are
    /// closed under "image" and "child of image". Closed sets contain every
    /// window of F, at every address length.
    struct ClosureCheck {
        bool complete = false;
        /// Smallest size whose sets are not closed yet (0 when complete).
        int first_open_size = 0;
    };

    FixedPointWindows(const Substreetution& s, Color root);

    [[nodiscard]] const Substreetution& substitution() const noexcept { return s_; }
    [[nodiscard]] Color root() const noexcept { return root_; }

    /// { T_w(F) truncated to `size` : |w| = length }, one witness each.
    const std::vector<Entry>& level(int length, int size);

    /// Union of level(L, size) for 0 <= L <= generation_depth - size.
    PatchSet windows(int generation_depth, int size);

    ClosureCheck check_closure(int generation_depth, int max_size);

    [[nodiscard]] const TreePrefix& patch(int size, std::uint32_t id) const;

private:
    struct Pool {
        std::vector<TreePrefix> patches;
        std::unordered_map<TreePrefix, std::uint32_t> ids;
    };
    std::uint32_t intern(int size, TreePrefix p);
    std::optional<std::uint32_t> lookup(int size, const TreePrefix& p) const;
    Address lift(const Address& w) const;
    bool size_closed(int generation_depth, int size);

    Substreetution s_;
    Color root_;
    std::map<int, Pool> pools_;
    std::map<std::pair<int, int>, std::vector<Entry>> levels_;
    std::map<std::pair<int, int>, bool> closed_;
};

}  // namespace jacaranda
