#pragma once
// Slow reference implementations used only by tests. They share no code with
// the library beyond plain strings: trees are level-order '0'/'1' strings and
// addresses are "ab" words.

#include <cstdint>
#include <map>
#include <random>
#include <set>
#include <string>
#include <vector>

namespace oracle {

// Jacaranda: 0 -> 0(1,0), 1 -> 1(1,0); grandchild pairs aa ab ba bb carry B B A B.
inline char image_root(char c) { return c; }
inline char image_child(char /*c*/, char letter) { return letter == 'a' ? '1' : '0'; }
inline char grammar_slot(char x, char y) { return (x == 'b' && y == 'a') ? 'A' : 'B'; }

inline std::size_t index_of(const std::string& w) {
    std::size_t pos = 0;
    for (char ch : w) pos = 2 * pos + (ch == 'b' ? 1 : 0);
    return (std::size_t{1} << w.size()) - 1 + pos;
}

inline int depth_of(const std::string& tree) {
    int d = 0;
    while (((std::size_t{1} << d) - 1) < tree.size()) ++d;
    return d;
}

inline char node(const std::string& tree, const std::string& w) { return tree.at(index_of(w)); }

// Subtree of `tree` at child `letter`, as a level-order string.
inline std::string child(const std::string& tree, char letter) {
    const int d = depth_of(tree);
    std::string out;
    for (int k = 1; k < d; ++k) {
        const std::size_t width = std::size_t{1} << (k - 1);
        const std::size_t start = ((std::size_t{1} << k) - 1) + (letter == 'b' ? width : 0);
        out += tree.substr(start, width);
    }
    return out;
}

// Color of H(tree) at address w, straight from the definition: each pair of
// letters steps into the subtree its grammar slot names.
inline char image_node(const std::string& tree, const std::string& w) {
    std::size_t idx = 0;
    std::size_t i = 0;
    for (; i + 1 < w.size(); i += 2) idx = 2 * idx + (grammar_slot(w[i], w[i + 1]) == 'A' ? 1 : 2);
    const char c = tree.at(idx);
    return i < w.size() ? image_child(c, w[i]) : image_root(c);
}

inline std::vector<std::string> words(int length) {
    std::vector<std::string> out;
    for (std::uint64_t i = 0; i < (std::uint64_t{1} << length); ++i) {
        std::string w;
        for (int j = length - 1; j >= 0; --j) w += ((i >> j) & 1U) ? 'b' : 'a';
        out.push_back(w);
    }
    return out;
}

// H(tree) truncated to `depth` lines (needs depth <= 2 * depth_of(tree)).
inline std::string image(const std::string& tree, int depth) {
    std::string out;
    for (int k = 0; k < depth; ++k)
        for (const auto& w : words(k)) out += image_node(tree, w);
    return out;
}

// Color of the fixed point J at address w. Since J = H(J), J at an even
// word equals J at its source word (one letter per pair, A -> a, B -> b),
// and J at an odd word is the fixed child color below the even prefix.
inline char fixed_node(const std::string& w) {
    if (w.empty()) return '0';
    std::string src;
    std::size_t i = 0;
    for (; i + 1 < w.size(); i += 2) src += grammar_slot(w[i], w[i + 1]) == 'A' ? 'a' : 'b';
    const char c = fixed_node(src);
    return i < w.size() ? image_child(c, w[i]) : image_root(c);
}

// The depth-d prefix of J, node by node.
inline std::string fixed_prefix(int depth) {
    std::string out;
    for (int k = 0; k < depth; ++k)
        for (const auto& w : words(k)) out += fixed_node(w);
    return out;
}

// Depth-n window of `tree` at address w.
inline std::string window(const std::string& tree, const std::string& w, int n) {
    std::string out;
    for (int k = 0; k < n; ++k)
        for (const auto& u : words(k)) out += node(tree, w + u);
    return out;
}

// All depth-n windows of a materialized prefix.
inline std::set<std::string> brute_windows(const std::string& tree, int n) {
    std::set<std::string> out;
    const int d = depth_of(tree);
    for (int len = 0; len <= d - n; ++len)
        for (const auto& w : words(len)) out.insert(window(tree, w, n));
    return out;
}

// Exact patch sets of J from J = H(J): every window at an even address is an
// image of a window, every window at an odd address is a child of an image.
// Sizes 1 and 2 refer to themselves and are iterated until nothing new appears.
struct PatchClasses {
    std::set<std::string> all;
    std::set<std::string> even;  // including the root window
    std::set<std::string> odd;
};

inline std::vector<PatchClasses> exact_patches(int n_max) {
    std::vector<PatchClasses> k(static_cast<std::size_t>(n_max + 2));
    auto step = [&](int m) {
        PatchClasses& c = k[static_cast<std::size_t>(m)];
        const std::string root = fixed_prefix(m);
        bool grew = true;
        while (grew) {
            const std::size_t before = c.all.size();
            c.even.insert(root);
            for (const auto& p : std::set<std::string>(k[static_cast<std::size_t>((m + 1) / 2)].all))
                c.even.insert(image(p, m));
            for (const auto& p : std::set<std::string>(k[static_cast<std::size_t>((m + 2) / 2)].all)) {
                const std::string big = image(p, m + 1);
                c.odd.insert(child(big, 'a'));
                c.odd.insert(child(big, 'b'));
            }
            c.all = c.even;
            c.all.insert(c.odd.begin(), c.odd.end());
            grew = c.all.size() != before;
            // sizes >= 3 draw only on smaller sizes
            if (m >= 3) break;
        }
    };
    for (int m = 1; m <= n_max; ++m) step(m);
    k.resize(static_cast<std::size_t>(n_max + 1));
    return k;
}

}  // namespace oracle
