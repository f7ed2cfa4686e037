#pragma once

#include "jacaranda/substitution.hpp"

#include <stdexcept>
#include <string>
#include <vector>

namespace jacaranda {

/// Odd, 2^n-type (n >= 1), or undecidable from the available lines.
struct TypeTag {
    enum class Kind : std::uint8_t { odd, even, unresolved };

    Kind kind = Kind::unresolved;
    /// For even: the 2-adic exponent, or a lower bound when !exact.
    int exponent = 0;
    bool exact = true;

    static TypeTag odd() { return {Kind::odd, 0, true}; }
    static TypeTag even(int n, bool exact = true) { return {Kind::even, n, exact}; }
    static TypeTag unresolved() { return {Kind::unresolved, 0, false}; }

    [[nodiscard]] bool is_odd() const noexcept { return kind == Kind::odd; }
    [[nodiscard]] bool is_even() const noexcept { return kind == Kind::even; }
    [[nodiscard]] std::string to_string() const;

    friend bool operator==(const TypeTag&, const TypeTag&) = default;
};

/// Thrown when a prefix is not the image of any tree; `witness` is the first
/// node (in level order) where the image of the decoded source disagrees.
class StructureError : public std::runtime_error {
public:
    StructureError(const std::string& what, Address witness)
        : std::runtime_error(what), witness_(std::move(witness)) {}
    [[nodiscard]] const Address& witness() const noexcept { return witness_; }

private:
    Address witness_;
};

/// Line-doubling map: chi(10) = 0010, chi(00) = 0000 and, for halves C, D,
/// chi(CD) = chi(D) chi(D) chi(C) chi(D).
LineWord chi(const LineWord& w);
LineWord chi_power(const LineWord& w, int n);

struct LineFinding {
    int level = 0;
    std::size_t offset = 0;
    std::string message;
};

struct LineStructureReport {
    int depth = 0;
    int levels_checked = 0;
    std::vector<LineFinding> violations;
    [[nodiscard]] bool ok() const noexcept { return violations.empty(); }
};

/// Checks every line 1 <= l < depth: odd lines are (10)*, and a line at level
/// 2^n (2m + 1) is a concatenation of chi^n(10) / chi^n(00) blocks, starting
/// with chi^n(10) when m = 0.
LineStructureReport verify_line_structure(const TreePrefix& t);

/// Odd/even classification of a subtree of the Jacaranda tree from its first
/// lines. Even results carry exponent 1 as a lower bound.
TypeTag parity_from_patch(const TreePrefix& p);

/// Type of the shifted tree at w: odd for |w| odd, 2^v-type with v the
/// 2-adic valuation of |w| otherwise.
TypeTag type_of_address(const Address& w);

/// The unique B with apply_substitution(B) == t, for t of depth 2n.
TreePrefix source(const TreePrefix& t, const Substreetution& s);

/// Word source map: T_w o H == H o T_{source_word(w)}.
Address source_word(const Address& w, const Substreetution& s);

/// 2^n-type of a patch by repeated decoding; a lower bound (exact = false)
/// when the lines run out before an odd tree is reached.
TypeTag patch_type(const TreePrefix& p, const Substreetution& s);

}  // namespace jacaranda
