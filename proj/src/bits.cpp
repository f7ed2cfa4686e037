#include "jacaranda/bits.hpp"

#include <bit>
#include <stdexcept>

namespace jacaranda {

namespace {

constexpr std::uint64_t low_mask(unsigned count) noexcept {
    return count >= 64 ? ~std::uint64_t{0} : ((std::uint64_t{1} << count) - 1);
}

}  // namespace

Bits Bits::from_string(std::string_view digits) {
    std::size_t n = 0;
    for (char c : digits)
        if (c == '0' || c == '1') ++n;
    Bits out(n);
    std::size_t i = 0;
    for (char c : digits) {
        if (c == '0' || c == '1')
            out.set(i++, c == '1');
        else if (c != ' ' && c != '/' && c != '_')
            throw std::invalid_argument("bit string contains '" + std::string(1, c) + "'");
    }
    return out;
}

std::uint64_t Bits::read_word(std::size_t offset, unsigned count) const noexcept {
    if (count == 0) return 0;
    const std::size_t w = offset >> 6;
    const unsigned shift = offset & 63;
    std::uint64_t v = words_[w] >> shift;
    if (shift != 0 && shift + count > 64 && w + 1 < words_.size())
        v |= words_[w + 1] << (64 - shift);
    return v & low_mask(count);
}

void Bits::write_word(std::size_t offset, std::uint64_t value, unsigned count) noexcept {
    if (count == 0) return;
    value &= low_mask(count);
    const std::size_t w = offset >> 6;
    const unsigned shift = offset & 63;
    const std::uint64_t mask = low_mask(count);
    words_[w] = (words_[w] & ~(mask << shift)) | (value << shift);
    if (shift != 0 && shift + count > 64) {
        const unsigned spill = 64 - shift;
        words_[w + 1] = (words_[w + 1] & ~(mask >> spill)) | (value >> spill);
    }
}

void Bits::copy_from(const Bits& src, std::size_t src_offset, std::size_t dst_offset,
                     std::size_t count) noexcept {
    while (count >= 64) {
        write_word(dst_offset, src.read_word(src_offset, 64), 64);
        src_offset += 64;
        dst_offset += 64;
        count -= 64;
    }
    if (count > 0) {
        const auto c = static_cast<unsigned>(count);
        write_word(dst_offset, src.read_word(src_offset, c), c);
    }
}

Bits Bits::slice(std::size_t offset, std::size_t count) const {
    if (offset + count > size_) throw std::out_of_range("Bits::slice past end");
    Bits out(count);
    out.copy_from(*this, offset, 0, count);
    return out;
}

void Bits::append(const Bits& other) {
    const std::size_t old = size_;
    resize(size_ + other.size_);
    copy_from(other, 0, old, other.size_);
}

void Bits::resize(std::size_t size) {
    words_.resize((size + 63) / 64, 0);
    size_ = size;
    if ((size & 63) != 0) words_.back() &= low_mask(size & 63);
}

std::size_t Bits::popcount() const noexcept {
    std::size_t n = 0;
    for (auto w : words_) n += static_cast<std::size_t>(std::popcount(w));
    return n;
}

std::string Bits::to_string() const {
    std::string s(size_, '0');
    for (std::size_t i = 0; i < size_; ++i)
        if (get(i)) s[i] = '1';
    return s;
}

std::uint64_t Bits::hash() const noexcept {
    // splitmix-style mixing over the packed words
    std::uint64_t h = 0x9e3779b97f4a7c15ULL ^ size_;
    for (auto w : words_) {
        std::uint64_t z = w + 0x9e3779b97f4a7c15ULL + (h << 6) + (h >> 2);
        z = (z ^ (z >> 30)) * 0xbf58476d1ce4e5b9ULL;
        z = (z ^ (z >> 27)) * 0x94d049bb133111ebULL;
        h ^= z ^ (z >> 31);
    }
    return h;
}

int Bits::compare(const Bits& a, const Bits& b) noexcept {
    const std::size_t n = std::min(a.words_.size(), b.words_.size());
    for (std::size_t i = 0; i < n; ++i) {
        const std::uint64_t diff = a.words_[i] ^ b.words_[i];
        if (diff == 0) continue;
        const std::size_t bit = i * 64 + static_cast<std::size_t>(std::countr_zero(diff));
        if (bit < a.size_ && bit < b.size_) return a.get(bit) ? 1 : -1;
        break;
    }
    if (a.size_ == b.size_) return 0;
    return a.size_ < b.size_ ? -1 : 1;
}

}  // namespace jacaranda
