#pragma once

#include "jacaranda/tree_prefix.hpp"

#include <array>
#include <optional>
#include <string>

namespace jacaranda {

/// Which child subtree's image hangs at a depth-2 position of an image tree.
enum class Slot : std::uint8_t { A = 0, B = 1 };

/// The triple a single node of color c expands to.
struct RootImage {
    Color root = 0;
    Color a_child = 0;
    Color b_child = 0;
    friend bool operator==(const RootImage&, const RootImage&) = default;
};

/// A constant-length-2 substitution on colored binary trees.
///
/// A node of color c with subtrees (A, B) maps to the triple image(c) whose
/// four grandchild positions aa, ab, ba, bb carry H(A) or H(B) as selected by
/// the grammar word. Pair positions are indexed aa = 0, ab = 1, ba = 2, bb = 3.
class Substreetution {
public:
    /// Throws std::invalid_argument unless the root colors form a bijection
    /// of {0, 1} (the substitution is marked).
    Substreetution(std::array<RootImage, 2> images, std::array<Slot, 4> grammar);

    /// 0 -> 0(1,0), 1 -> 1(1,0), grammar BBAB.
    static Substreetution jacaranda();
    /// Grammar from a word such as "BBAB".
    static std::array<Slot, 4> parse_grammar(std::string_view word);

    [[nodiscard]] const RootImage& image(Color c) const noexcept { return images_[c & 1U]; }
    [[nodiscard]] Slot slot(int pair) const noexcept { return grammar_[static_cast<std::size_t>(pair)]; }
    [[nodiscard]] const std::array<Slot, 4>& grammar() const noexcept { return grammar_; }
    [[nodiscard]] std::string grammar_string() const;

    /// Letter of the source word for a pair position: A -> a, B -> b.
    [[nodiscard]] Letter source_letter(int pair) const noexcept {
        return grammar_[static_cast<std::size_t>(pair)] == Slot::A ? Letter::a : Letter::b;
    }
    /// Pair position that decoding reads a slot from: the last one in the
    /// grammar carrying it. Empty when the grammar never uses the slot.
    [[nodiscard]] std::optional<int> read_pair(Slot s) const noexcept;

    /// Color c' with image(c').root == c.
    [[nodiscard]] Color root_preimage(Color c) const noexcept;
    [[nodiscard]] bool fixes(Color c) const noexcept { return image(c).root == c; }

    friend bool operator==(const Substreetution&, const Substreetution&) = default;

private:
    std::array<RootImage, 2> images_;
    std::array<Slot, 4> grammar_;
};

/// Image of a depth-n prefix: exactly depth 2n.
TreePrefix apply_substitution(const TreePrefix& t, const Substreetution& s);

/// Image truncated to `depth` lines, computed from the shortest input prefix
/// that determines them.
TreePrefix apply_substitution(const TreePrefix& t, const Substreetution& s, int depth);

/// The depth-N prefix of the unique fixed point with the given root color.
TreePrefix fixed_point(const Substreetution& s, Color root, int depth);

}  // namespace jacaranda
