#include "jacaranda/structure.hpp"

#include <bit>
#include <stdexcept>

namespace jacaranda {

namespace {

std::size_t line_offset(int k) { return (std::size_t{1} << k) - 1; }

bool matches(const Bits& hay, std::size_t offset, const Bits& pattern) {
    std::size_t done = 0;
    while (done < pattern.size()) {
        const auto count = static_cast<unsigned>(std::min<std::size_t>(64, pattern.size() - done));
        if (hay.read_word(offset + done, count) != pattern.read_word(done, count)) return false;
        done += count;
    }
    return true;
}

Address address_of_index(std::size_t index) {
    const int level = static_cast<int>(std::bit_width(index + 1)) - 1;
    return Address::from_index(level, index + 1 - (std::size_t{1} << level));
}

}  // namespace

std::string TypeTag::to_string() const {
    switch (kind) {
        case Kind::odd: return "odd";
        case Kind::even:
            return "2^" + std::to_string(exponent) + "-type" + (exact ? "" : " (lower bound)");
        case Kind::unresolved: break;
    }
    return "unresolved";
}

LineWord chi(const LineWord& w) {
    const std::size_t len = w.bits.size();
    if (len < 2 || !std::has_single_bit(len))
        throw std::invalid_argument("chi needs a word of length 2^k with k >= 1, got length " +
                                    std::to_string(len));
    if (len == 2) {
        if (w.bits.get(1)) throw std::invalid_argument("chi base pair must be 10 or 00, got " + w.to_string());
        // 10 -> 0010, 00 -> 0000
        Bits out(4);
        out.set(2, w.bits.get(0));
        return LineWord{2, std::move(out)};
    }
    const std::size_t half = len / 2;
    const LineWord c = chi(LineWord{w.level - 1, w.bits.slice(0, half)});
    const LineWord d = chi(LineWord{w.level - 1, w.bits.slice(half, half)});
    Bits out;
    out.append(d.bits);
    out.append(d.bits);
    out.append(c.bits);
    out.append(d.bits);
    const int level = std::countr_zero(out.size());
    return LineWord{level, std::move(out)};
}

LineWord chi_power(const LineWord& w, int n) {
    LineWord out = w;
    for (int i = 0; i < n; ++i) out = chi(out);
    return out;
}

LineStructureReport verify_line_structure(const TreePrefix& t) {
    constexpr std::size_t kMaxFindingsPerLevel = 8;
    LineStructureReport report;
    report.depth = t.depth();

    std::vector<Bits> ten{Bits::from_string("10")};
    std::vector<Bits> zero{Bits::from_string("00")};
    for (int level = 1; level < t.depth(); ++level) {
        const int n = std::countr_zero(static_cast<unsigned>(level));
        while (static_cast<int>(ten.size()) <= n) {
            ten.push_back(chi(LineWord::parse(ten.back().to_string())).bits);
            zero.push_back(chi(LineWord::parse(zero.back().to_string())).bits);
        }
        const std::size_t width = std::size_t{1} << level;
        const std::size_t block = ten[static_cast<std::size_t>(n)].size();  // 2^(2^n)
        const std::size_t base = line_offset(level);
        std::size_t findings = 0;
        for (std::size_t off = 0; off < width && findings < kMaxFindingsPerLevel; off += block) {
            const bool is_ten = matches(t.bits(), base + off, ten[static_cast<std::size_t>(n)]);
            const bool is_zero = n > 0 && matches(t.bits(), base + off, zero[static_cast<std::size_t>(n)]);
            std::string problem;
            if (n == 0 && !is_ten)
                problem = "odd line is not a concatenation of 10";
            else if (n > 0 && !is_ten && !is_zero)
                problem = "block is neither chi^" + std::to_string(n) + "(10) nor chi^" + std::to_string(n) + "(00)";
            else if (n > 0 && off == 0 && level == (1 << n) && !is_ten)
                problem = "line " + std::to_string(level) + " does not start with chi^" + std::to_string(n) + "(10)";
            if (!problem.empty()) {
                report.violations.push_back({level, off, std::move(problem)});
                ++findings;
            }
        }
        ++report.levels_checked;
    }
    return report;
}

TypeTag parity_from_patch(const TreePrefix& p) {
    if (p.depth() < 2) throw std::invalid_argument("parity needs at least two lines");
    const bool a = p.at(1) != 0;
    const bool b = p.at(2) != 0;
    if (b) return TypeTag::unresolved();  // 01 and 11 never occur
    if (!a) return TypeTag::odd();        // line 1 = 00
    if (p.depth() < 3) return TypeTag::unresolved();
    const std::string l2 = p.bits().slice(3, 4).to_string();
    if (l2 == "1010") return TypeTag::odd();
    if (l2 == "0010" || l2 == "0000") return TypeTag::even(1, false);
    return TypeTag::unresolved();
}

TypeTag type_of_address(const Address& w) {
    if (w.empty()) throw std::invalid_argument("type of the empty address is not defined");
    const int v = std::countr_zero(static_cast<unsigned>(w.length()));
    return v == 0 ? TypeTag::odd() : TypeTag::even(v);
}

TreePrefix source(const TreePrefix& t, const Substreetution& s) {
    if (t.depth() < 2 || t.depth() % 2 != 0)
        throw std::invalid_argument("source needs an even depth >= 2, got " + std::to_string(t.depth()));
    const auto pair_a = s.read_pair(Slot::A);
    const auto pair_b = s.read_pair(Slot::B);
    if (!pair_a || !pair_b)
        throw std::invalid_argument("grammar " + s.grammar_string() + " does not determine both subtrees");
    const std::array<std::uint64_t, 2> pair_of{static_cast<std::uint64_t>(*pair_a),
                                               static_cast<std::uint64_t>(*pair_b)};

    const int n = t.depth() / 2;
    TreePrefix b(n);
    // lifted[pos] = position in line 2k of t read for node (k, pos) of b
    std::vector<std::uint64_t> lifted{0};
    for (int k = 0; k < n; ++k) {
        for (std::uint64_t pos = 0; pos < lifted.size(); ++pos)
            b.set(line_offset(k) + pos, s.root_preimage(t.at(line_offset(2 * k) + lifted[pos])));
        if (k + 1 == n) break;
        std::vector<std::uint64_t> next(lifted.size() * 2);
        for (std::uint64_t pos = 0; pos < lifted.size(); ++pos) {
            next[2 * pos] = 4 * lifted[pos] + pair_of[0];
            next[2 * pos + 1] = 4 * lifted[pos] + pair_of[1];
        }
        lifted = std::move(next);
    }

    const TreePrefix image = apply_substitution(b, s);
    if (!(image == t)) {
        const auto& wi = image.bits().words();
        const auto& wt = t.bits().words();
        for (std::size_t i = 0; i < wi.size(); ++i) {
            if (const std::uint64_t diff = wi[i] ^ wt[i]; diff != 0) {
                const Address w = address_of_index(i * 64 + static_cast<std::size_t>(std::countr_zero(diff)));
                throw StructureError("prefix is not an image of the substitution; first mismatch at " +
                                         w.to_string(),
                                     w);
            }
        }
    }
    return b;
}

Address source_word(const Address& w, const Substreetution& s) {
    if (w.length() % 2 != 0)
        throw std::invalid_argument("source word needs even length, got " + std::to_string(w.length()));
    std::vector<Letter> out;
    out.reserve(static_cast<std::size_t>(w.length() / 2));
    for (int i = 0; i < w.length(); i += 2)
        out.push_back(s.source_letter(2 * static_cast<int>(w[i]) + static_cast<int>(w[i + 1])));
    return Address(std::move(out));
}

TypeTag patch_type(const TreePrefix& p, const Substreetution& s) {
    TreePrefix cur = p;
    int exponent = 0;
    while (cur.depth() >= 2) {
        const TypeTag tag = parity_from_patch(cur);
        if (tag.is_odd()) return exponent == 0 ? TypeTag::odd() : TypeTag::even(exponent);
        if (!tag.is_even()) break;
        ++exponent;
        cur = source(cur.truncated(cur.depth() - cur.depth() % 2), s);
    }
    return exponent == 0 ? TypeTag::unresolved() : TypeTag::even(exponent, false);
}

}  // namespace jacaranda
