#pragma once

#include "jacaranda/address.hpp"
#include "jacaranda/bits.hpp"

#include <compare>
#include <cstddef>
#include <cstdint>
#include <functional>
#include <string>
#include <string_view>

namespace jacaranda {

using Color = std::uint8_t;

/// The first `depth` lines of a {0,1}-colored binary tree, stored in level
/// order: line k occupies indices 2^k - 1 .. 2^(k+1) - 2, left to right,
/// and the children of index i are 2i+1 (a) and 2i+2 (b).
class TreePrefix {
public:
    TreePrefix() = default;
    /// All-zero prefix with the given number of lines.
    explicit TreePrefix(int depth);
    TreePrefix(int depth, Bits bits);

    /// Lines separated by '/', e.g. "0/10/0010".
    static TreePrefix parse(std::string_view lines);

    [[nodiscard]] int depth() const noexcept { return depth_; }
    [[nodiscard]] std::size_t node_count() const noexcept { return bits_.size(); }
    [[nodiscard]] const Bits& bits() const noexcept { return bits_; }

    [[nodiscard]] Color at(std::size_t index) const noexcept { return bits_.get(index) ? 1 : 0; }
    void set(std::size_t index, Color c) noexcept { bits_.set(index, c != 0); }
    [[nodiscard]] Color root() const noexcept { return at(0); }

    /// Depth-`depth` window rooted at position `pos` of line `level`.
    [[nodiscard]] TreePrefix window(int level, std::uint64_t pos, int depth) const;
    [[nodiscard]] TreePrefix truncated(int depth) const;

    /// "0/10/0010"
    [[nodiscard]] std::string to_string() const;

    friend bool operator==(const TreePrefix& a, const TreePrefix& b) noexcept {
        return a.depth_ == b.depth_ && a.bits_ == b.bits_;
    }
    /// Canonical order: by depth, then level-order bit string.
    friend std::strong_ordering operator<=>(const TreePrefix& a, const TreePrefix& b) noexcept {
        if (auto c = a.depth_ <=> b.depth_; c != 0) return c;
        return Bits::compare(a.bits_, b.bits_) <=> 0;
    }

private:
    int depth_ = 0;
    Bits bits_;
};

/// A bit word forming one line of a tree (length 2^level).
struct LineWord {
    int level = 0;
    Bits bits;

    static LineWord parse(std::string_view digits);
    [[nodiscard]] std::string to_string() const { return bits.to_string(); }
    friend bool operator==(const LineWord&, const LineWord&) = default;
};

/// Tree distance 2^-N, or zero when the prefixes agree on every available line.
class Dyadic {
public:
    static Dyadic power(int exponent) { return Dyadic(exponent, false); }
    static Dyadic zero(int depth) { return Dyadic(depth, true); }

    [[nodiscard]] bool is_zero() const noexcept { return zero_; }
    /// N in 2^-N; for zero this is the depth that was compared.
    [[nodiscard]] int exponent() const noexcept { return exponent_; }
    [[nodiscard]] double value() const;
    [[nodiscard]] std::string to_string() const;

    friend bool operator==(const Dyadic&, const Dyadic&) = default;
    /// Orders by distance value: zero < 2^-N, and larger N is smaller.
    friend std::strong_ordering operator<=>(const Dyadic& x, const Dyadic& y) noexcept;

private:
    Dyadic(int exponent, bool zero) : exponent_(exponent), zero_(zero) {}
    int exponent_ = 0;
    bool zero_ = false;
};

Color node_at(const TreePrefix& t, const Address& w);
TreePrefix shift(const TreePrefix& t, const Address& w);
TreePrefix shift(const TreePrefix& t, Letter l);
LineWord line(const TreePrefix& t, int k);
Dyadic distance(const TreePrefix& a, const TreePrefix& b);

}  // namespace jacaranda

template <>
struct std::hash<jacaranda::TreePrefix> {
    std::size_t operator()(const jacaranda::TreePrefix& t) const noexcept {
        return static_cast<std::size_t>(t.bits().hash() ^ (static_cast<std::uint64_t>(t.depth()) << 56));
    }
};
