#pragma once

#include <cstddef>
#include <cstdint>
#include <string>
#include <string_view>
#include <vector>

namespace jacaranda {

/// Growable bit string packed into 64-bit words.
///
/// Bit i lives in word i/64 at position i%64 (LSB first). Bits past size()
/// are always zero so that word-wise equality and hashing are exact.
class Bits {
public:
    Bits() = default;
    explicit Bits(std::size_t size) : words_((size + 63) / 64, 0), size_(size) {}

    static Bits from_string(std::string_view digits);

    [[nodiscard]] std::size_t size() const noexcept { return size_; }
    [[nodiscard]] bool empty() const noexcept { return size_ == 0; }

    [[nodiscard]] bool get(std::size_t i) const noexcept {
        return (words_[i >> 6] >> (i & 63)) & 1U;
    }
    void set(std::size_t i, bool v) noexcept {
        const std::uint64_t mask = std::uint64_t{1} << (i & 63);
        if (v)
            words_[i >> 6] |= mask;
        else
            words_[i >> 6] &= ~mask;
    }

    /// Up to 64 bits starting at `offset`, bit offset+j at position j.
    [[nodiscard]] std::uint64_t read_word(std::size_t offset, unsigned count = 64) const noexcept;
    /// Writes the low `count` bits of `value` starting at `offset`.
    void write_word(std::size_t offset, std::uint64_t value, unsigned count = 64) noexcept;

    /// Copies `count` bits from `src` at `src_offset` to this at `dst_offset`.
    void copy_from(const Bits& src, std::size_t src_offset, std::size_t dst_offset,
                   std::size_t count) noexcept;

    [[nodiscard]] Bits slice(std::size_t offset, std::size_t count) const;
    void append(const Bits& other);
    void resize(std::size_t size);

    [[nodiscard]] std::size_t popcount() const noexcept;
    [[nodiscard]] std::string to_string() const;

    [[nodiscard]] const std::vector<std::uint64_t>& words() const noexcept { return words_; }
    [[nodiscard]] std::uint64_t hash() const noexcept;

    /// Lexicographic order on the bit sequence read from index 0 (shorter
    /// prefix first).
    [[nodiscard]] static int compare(const Bits& a, const Bits& b) noexcept;

    friend bool operator==(const Bits& a, const Bits& b) noexcept {
        return a.size_ == b.size_ && a.words_ == b.words_;
    }

private:
    std::vector<std::uint64_t> words_;
    std::size_t size_ = 0;
};

}  // namespace jacaranda
