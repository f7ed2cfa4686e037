#include "jacaranda/tree_prefix.hpp"

#include <bit>
#include <cmath>
#include <stdexcept>

namespace jacaranda {

namespace {

constexpr int kMaxDepth = 40;

std::size_t nodes_for(int depth) { return (std::size_t{1} << depth) - 1; }
std::size_t line_offset(int k) { return (std::size_t{1} << k) - 1; }

void check_depth(int depth) {
    if (depth < 0 || depth > kMaxDepth)
        throw std::invalid_argument("tree depth " + std::to_string(depth) + " out of range");
}

}  // namespace

TreePrefix::TreePrefix(int depth) : depth_(depth) {
    check_depth(depth);
    bits_ = Bits(nodes_for(depth));
}

TreePrefix::TreePrefix(int depth, Bits bits) : depth_(depth), bits_(std::move(bits)) {
    check_depth(depth);
    if (bits_.size() != nodes_for(depth))
        throw std::invalid_argument("tree of depth " + std::to_string(depth) + " needs " +
                                    std::to_string(nodes_for(depth)) + " bits, got " +
                                    std::to_string(bits_.size()));
}

TreePrefix TreePrefix::parse(std::string_view lines) {
    Bits bits;
    int depth = 0;
    std::size_t start = 0;
    while (start <= lines.size()) {
        const std::size_t end = std::min(lines.find('/', start), lines.size());
        const Bits line_bits = Bits::from_string(lines.substr(start, end - start));
        if (line_bits.size() != (std::size_t{1} << depth))
            throw std::invalid_argument("line " + std::to_string(depth) + " must have " +
                                        std::to_string(std::size_t{1} << depth) + " digits");
        bits.append(line_bits);
        ++depth;
        start = end + 1;
    }
    return TreePrefix(depth, std::move(bits));
}

TreePrefix TreePrefix::window(int level, std::uint64_t pos, int depth) const {
    if (level < 0 || depth < 0 || level + depth > depth_)
        throw std::out_of_range("window below available depth");
    if (pos >= (std::uint64_t{1} << level)) throw std::out_of_range("window position");
    TreePrefix out(depth);
    for (int k = 0; k < depth; ++k) {
        const std::size_t width = std::size_t{1} << k;
        out.bits_.copy_from(bits_, line_offset(level + k) + pos * width, line_offset(k), width);
    }
    return out;
}

TreePrefix TreePrefix::truncated(int depth) const {
    if (depth < 0 || depth > depth_) throw std::out_of_range("truncation depth");
    return TreePrefix(depth, bits_.slice(0, nodes_for(depth)));
}

std::string TreePrefix::to_string() const {
    std::string s;
    for (int k = 0; k < depth_; ++k) {
        if (k) s.push_back('/');
        s += bits_.slice(line_offset(k), std::size_t{1} << k).to_string();
    }
    return s;
}

LineWord LineWord::parse(std::string_view digits) {
    LineWord w{0, Bits::from_string(digits)};
    if (w.bits.empty() || !std::has_single_bit(w.bits.size()))
        throw std::invalid_argument("line word length must be a power of two");
    w.level = std::countr_zero(w.bits.size());
    return w;
}

double Dyadic::value() const { return zero_ ? 0.0 : std::ldexp(1.0, -exponent_); }

std::string Dyadic::to_string() const {
    return zero_ ? "0 (agree on " + std::to_string(exponent_) + " lines)"
                 : "2^-" + std::to_string(exponent_);
}

std::strong_ordering operator<=>(const Dyadic& x, const Dyadic& y) noexcept {
    if (x.zero_ != y.zero_) return x.zero_ ? std::strong_ordering::less : std::strong_ordering::greater;
    if (x.zero_) return std::strong_ordering::equal;
    return y.exponent_ <=> x.exponent_;
}

Color node_at(const TreePrefix& t, const Address& w) {
    if (w.length() >= t.depth())
        throw std::out_of_range("address " + w.to_string() + " below depth " + std::to_string(t.depth()));
    return t.at(w.node_index());
}

TreePrefix shift(const TreePrefix& t, const Address& w) {
    if (w.length() >= t.depth())
        throw std::out_of_range("cannot shift depth-" + std::to_string(t.depth()) + " prefix by " +
                                w.to_string());
    return t.window(w.length(), w.level_index(), t.depth() - w.length());
}

TreePrefix shift(const TreePrefix& t, Letter l) {
    if (t.depth() < 2) throw std::out_of_range("cannot shift a single-line prefix");
    return t.window(1, static_cast<std::uint64_t>(l), t.depth() - 1);
}

LineWord line(const TreePrefix& t, int k) {
    if (k < 0 || k >= t.depth()) throw std::out_of_range("line " + std::to_string(k) + " out of range");
    return LineWord{k, t.bits().slice(line_offset(k), std::size_t{1} << k)};
}

Dyadic distance(const TreePrefix& a, const TreePrefix& b) {
    if (a.depth() != b.depth())
        throw std::invalid_argument("distance needs equal depths (" + std::to_string(a.depth()) +
                                    " vs " + std::to_string(b.depth()) + ")");
    const auto& wa = a.bits().words();
    const auto& wb = b.bits().words();
    for (std::size_t i = 0; i < wa.size(); ++i) {
        const std::uint64_t diff = wa[i] ^ wb[i];
        if (diff == 0) continue;
        const std::size_t index = i * 64 + static_cast<std::size_t>(std::countr_zero(diff));
        // level of level-order index i is floor(log2(i + 1))
        return Dyadic::power(static_cast<int>(std::bit_width(index + 1)) - 1);
    }
    return Dyadic::zero(a.depth());
}

}  // namespace jacaranda
