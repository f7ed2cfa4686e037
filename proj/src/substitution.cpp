#include "jacaranda/substitution.hpp"

#include <stdexcept>

namespace jacaranda {

Substreetution::Substreetution(std::array<RootImage, 2> images, std::array<Slot, 4> grammar)
    : images_(images), grammar_(grammar) {
    for (const auto& im : images_)
        if (im.root > 1 || im.a_child > 1 || im.b_child > 1)
            throw std::invalid_argument("colors must be 0 or 1");
    if (images_[0].root == images_[1].root)
        throw std::invalid_argument("substitution is not marked: both colors map to root " +
                                    std::to_string(images_[0].root));
}

Substreetution Substreetution::jacaranda() {
    return Substreetution({RootImage{0, 1, 0}, RootImage{1, 1, 0}}, parse_grammar("BBAB"));
}

std::array<Slot, 4> Substreetution::parse_grammar(std::string_view word) {
    if (word.size() != 4) throw std::invalid_argument("grammar must have four letters");
    std::array<Slot, 4> g{};
    for (std::size_t i = 0; i < 4; ++i) {
        if (word[i] == 'A')
            g[i] = Slot::A;
        else if (word[i] == 'B')
            g[i] = Slot::B;
        else
            throw std::invalid_argument("grammar letters must be 'A' or 'B'");
    }
    return g;
}

std::string Substreetution::grammar_string() const {
    std::string s;
    for (Slot g : grammar_) s.push_back(g == Slot::A ? 'A' : 'B');
    return s;
}

std::optional<int> Substreetution::read_pair(Slot s) const noexcept {
    for (int q = 3; q >= 0; --q)
        if (grammar_[static_cast<std::size_t>(q)] == s) return q;
    return std::nullopt;
}

Color Substreetution::root_preimage(Color c) const noexcept {
    return images_[0].root == c ? 0 : 1;
}

namespace {

struct Expander {
    const TreePrefix& in;
    const Substreetution& s;
    TreePrefix& out;
    int in_depth;   // lines of `in` that are read
    int out_depth;  // lines of `out` that are written

    // Writes the image of the input node (k, in_pos) at output line 2k, position out_pos.
    void expand(int k, std::uint64_t in_pos, std::uint64_t out_pos) {
        const std::size_t in_index = ((std::size_t{1} << k) - 1) + in_pos;
        const RootImage& im = s.image(in.at(in_index));
        const int level = 2 * k;
        out.set(((std::size_t{1} << level) - 1) + out_pos, im.root);
        if (level + 1 < out_depth) {
            const std::size_t child = ((std::size_t{1} << (level + 1)) - 1) + 2 * out_pos;
            out.set(child, im.a_child);
            out.set(child + 1, im.b_child);
        }
        if (level + 2 < out_depth && k + 1 < in_depth) {
            for (int q = 0; q < 4; ++q) {
                const auto g = static_cast<std::uint64_t>(s.slot(q));
                expand(k + 1, 2 * in_pos + g, 4 * out_pos + static_cast<std::uint64_t>(q));
            }
        }
    }
};

}  // namespace

TreePrefix apply_substitution(const TreePrefix& t, const Substreetution& s) {
    if (t.depth() < 1) throw std::invalid_argument("cannot substitute an empty prefix");
    return apply_substitution(t, s, 2 * t.depth());
}

TreePrefix apply_substitution(const TreePrefix& t, const Substreetution& s, int depth) {
    if (t.depth() < 1) throw std::invalid_argument("cannot substitute an empty prefix");
    if (depth < 1 || depth > 2 * t.depth())
        throw std::out_of_range("image depth " + std::to_string(depth) + " not determined by depth-" +
                                std::to_string(t.depth()) + " input");
    TreePrefix out(depth);
    Expander e{t, s, out, (depth + 1) / 2, depth};
    e.expand(0, 0, 0);
    return out;
}

TreePrefix fixed_point(const Substreetution& s, Color root, int depth) {
    if (root > 1) throw std::invalid_argument("root color must be 0 or 1");
    if (!s.fixes(root))
        throw std::invalid_argument("root color " + std::to_string(root) + " is not fixed by the substitution");
    if (depth < 1) throw std::invalid_argument("fixed point depth must be positive");
    TreePrefix t(1);
    t.set(0, root);
    while (t.depth() < depth) {
        const int need = (depth + 1) / 2;
        t = apply_substitution(t.depth() > need ? t.truncated(need) : t, s);
    }
    return t.truncated(depth);
}

}  // namespace jacaranda
