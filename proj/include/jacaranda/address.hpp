#pragma once

#include <compare>
#include <cstddef>
#include <cstdint>
#include <string>
#include <string_view>
#include <vector>

namespace jacaranda {

enum class Letter : std::uint8_t { a = 0, b = 1 };

constexpr char to_char(Letter l) noexcept { return l == Letter::a ? 'a' : 'b'; }

/// A finite word over {a, b}: a site of the binary tree and an element of
/// the free monoid acting on trees. Letters are read in application order,
/// so shift(t, uv) == shift(shift(t, u), v).
class Address {
public:
    Address() = default;
    explicit Address(std::vector<Letter> letters) : letters_(std::move(letters)) {}

    /// Parses "abba"; "" and "e" denote the empty word.
    static Address parse(std::string_view word);
    /// The address at `length` letters whose bits (MSB first, a = 0) are `index`.
    static Address from_index(int length, std::uint64_t index);
    static Address repeat(Letter l, int count);

    [[nodiscard]] int length() const noexcept { return static_cast<int>(letters_.size()); }
    [[nodiscard]] bool empty() const noexcept { return letters_.empty(); }
    [[nodiscard]] Letter operator[](int i) const noexcept { return letters_[static_cast<std::size_t>(i)]; }
    [[nodiscard]] const std::vector<Letter>& letters() const noexcept { return letters_; }

    /// Position within its level, letters as binary digits MSB first.
    [[nodiscard]] std::uint64_t level_index() const;
    /// Index in level-order storage: 2^|w| - 1 + level_index().
    [[nodiscard]] std::uint64_t node_index() const;

    [[nodiscard]] Address prefix(int count) const;
    [[nodiscard]] Address suffix(int count) const;
    [[nodiscard]] Address drop_front(int count) const { return suffix(length() - count); }
    /// w_1 ... w_n w_0.
    [[nodiscard]] Address rotate_left() const;

    void push_back(Letter l) { letters_.push_back(l); }

    [[nodiscard]] std::string to_string() const;

    friend Address operator+(const Address& u, const Address& v);
    friend bool operator==(const Address&, const Address&) = default;
    /// Shorter words first, then lexicographic with a < b.
    friend std::strong_ordering operator<=>(const Address& u, const Address& v);

private:
    std::vector<Letter> letters_;
};

/// All words of the given length in increasing order.
std::vector<Address> words_of_length(int length);

}  // namespace jacaranda
