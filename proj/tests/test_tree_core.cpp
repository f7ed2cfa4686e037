#include "jacaranda/sbtr.hpp"
#include "jacaranda/substitution.hpp"

#include "oracles.hpp"

#include <doctest.h>

#include <filesystem>
#include <random>

using namespace jacaranda;

namespace {

const Substreetution kJ = Substreetution::jacaranda();

TreePrefix random_tree(std::mt19937_64& rng, int depth) {
    TreePrefix t(depth);
    for (std::size_t i = 0; i < t.node_count(); ++i) t.set(i, static_cast<Color>(rng() & 1U));
    return t;
}

Address random_address(std::mt19937_64& rng, int length) {
    std::vector<Letter> letters;
    for (int i = 0; i < length; ++i) letters.push_back(static_cast<Letter>(rng() & 1U));
    return Address(std::move(letters));
}

std::string word(const Address& w) {
    std::string out;
    for (Letter l : w.letters()) out += to_char(l);
    return out;
}

}  // namespace

TEST_CASE("bits") {
    Bits b = Bits::from_string("1011 0/01");
    CHECK(b.size() == 7);
    CHECK(b.to_string() == "1011001");
    CHECK(b.popcount() == 4);
    CHECK(b.slice(2, 3).to_string() == "110");

    Bits big(200);
    big.write_word(60, 0xF0F0F0F0F0F0F0F0ULL, 64);
    CHECK(big.read_word(60, 64) == 0xF0F0F0F0F0F0F0F0ULL);
    CHECK(big.read_word(64, 8) == 0x0FU);
    big.resize(70);
    CHECK(big.popcount() == 4);  // only bits 64..67 survive

    CHECK(Bits::compare(Bits::from_string("01"), Bits::from_string("10")) < 0);
    CHECK(Bits::compare(Bits::from_string("1"), Bits::from_string("10")) < 0);
    CHECK(Bits::compare(Bits::from_string("10"), Bits::from_string("10")) == 0);
    CHECK_THROWS_AS(Bits::from_string("102"), std::invalid_argument);
}

TEST_CASE("addresses") {
    const Address w = Address::parse("abba");
    CHECK(w.length() == 4);
    CHECK(w.to_string() == "abba");
    CHECK(Address::parse("e").empty());
    CHECK(Address{}.to_string() == "e");
    CHECK(w.level_index() == 0b0110);
    CHECK(w.node_index() == 15 + 6);
    CHECK(Address::from_index(4, 6) == w);
    CHECK(w.rotate_left() == Address::parse("bbaa"));
    CHECK(w.prefix(2) + w.suffix(2) == w);
    CHECK(Address::parse("b") < Address::parse("aa"));
    CHECK(Address::parse("ab") < Address::parse("ba"));
    CHECK(words_of_length(2).size() == 4);
    CHECK(words_of_length(2).front() == Address::parse("aa"));
    CHECK_THROWS_AS(Address::parse("abc"), std::invalid_argument);
}

TEST_CASE("substitution images") {
    // single node 0 and 1
    CHECK(apply_substitution(TreePrefix::parse("0"), kJ).to_string() == "0/10");
    CHECK(apply_substitution(TreePrefix::parse("1"), kJ).to_string() == "1/10");
    CHECK(apply_substitution(TreePrefix::parse("0/10"), kJ).to_string() == "0/10/0010/10101010");
    CHECK_THROWS_AS(apply_substitution(TreePrefix{}, kJ), std::invalid_argument);

    // random inputs against the definition-level oracle
    std::mt19937_64 rng(11);
    for (int trial = 0; trial < 60; ++trial) {
        const int d = 1 + static_cast<int>(rng() % 6);
        const TreePrefix t = random_tree(rng, d);
        const std::string flat = t.bits().to_string();
        CHECK(apply_substitution(t, kJ).bits().to_string() == oracle::image(flat, 2 * d));
        const int cut = 1 + static_cast<int>(rng() % (2 * d));
        CHECK(apply_substitution(t, kJ, cut) == apply_substitution(t, kJ).truncated(cut));
    }

    CHECK_THROWS_AS(Substreetution({RootImage{0, 1, 0}, RootImage{0, 1, 0}}, Substreetution::parse_grammar("BBAB")),
                    std::invalid_argument);
    CHECK_THROWS_AS(Substreetution::parse_grammar("BBA"), std::invalid_argument);
    CHECK(kJ.grammar_string() == "BBAB");
}

TEST_CASE("fixed point prefixes") {
    CHECK(fixed_point(kJ, 0, 3).to_string() == "0/10/0010");
    CHECK(line(fixed_point(kJ, 0, 5), 4).to_string() == "0010001000000010");
    CHECK(fixed_point(kJ, 1, 3).to_string() == "1/10/0010");

    for (int n = 1; n <= 20; ++n) {
        const TreePrefix f = fixed_point(kJ, 0, n);
        CHECK(f.depth() == n);
        CHECK(apply_substitution(f, kJ, n) == f);
        if (n <= 10) CHECK(apply_substitution(f, kJ).truncated(n) == f);
    }
    CHECK(fixed_point(kJ, 0, 14).bits().to_string() == oracle::fixed_prefix(14));
    CHECK(fixed_point(kJ, 0, 17) == fixed_point(kJ, 0, 17));

    // a marked rule that swaps colors fixes nothing
    const Substreetution swap({RootImage{1, 0, 0}, RootImage{0, 1, 1}}, Substreetution::parse_grammar("ABAB"));
    CHECK_THROWS_AS(fixed_point(swap, 0, 4), std::invalid_argument);
    CHECK_THROWS_AS(fixed_point(kJ, 0, 0), std::invalid_argument);
}

TEST_CASE("fixed points of other rules") {
    for (const char* g : {"AABB", "ABBA", "BABA", "BBBA"}) {
        CAPTURE(g);
        const Substreetution s({RootImage{0, 0, 1}, RootImage{1, 1, 1}}, Substreetution::parse_grammar(g));
        for (Color root : {Color{0}, Color{1}}) {
            const TreePrefix f = fixed_point(s, root, 12);
            CHECK(f.root() == root);
            CHECK(apply_substitution(f, s).truncated(12) == f);
        }
    }
}

TEST_CASE("shift and node access") {
    const TreePrefix j4 = fixed_point(kJ, 0, 4);
    CHECK(shift(j4, Address{}) == j4);
    CHECK(shift(j4, Address::parse("a")).to_string() == "1/00/1010");
    CHECK(shift(j4, Address::parse("ba")).to_string() == "1/10");
    CHECK_THROWS_AS(shift(j4, Address::parse("abab")), std::out_of_range);

    CHECK(node_at(j4, Address{}) == 0);
    CHECK(node_at(j4, Address::parse("b")) == 0);
    CHECK_THROWS_AS(node_at(j4, Address::parse("aaaa")), std::out_of_range);

    CHECK(line(j4, 1).to_string() == "10");
    CHECK(line(j4, 2).to_string() == "0010");
    CHECK(line(j4, 3).to_string() == "10101010");
    CHECK_THROWS_AS(line(j4, 4), std::out_of_range);

    // composition: shift(shift(t, w), v) == shift(t, wv)
    std::mt19937_64 rng(3);
    for (int trial = 0; trial < 200; ++trial) {
        const int d = 2 + static_cast<int>(rng() % 9);
        const TreePrefix t = random_tree(rng, d);
        const int lw = static_cast<int>(rng() % static_cast<unsigned>(d));
        const int lv = static_cast<int>(rng() % static_cast<unsigned>(d - lw));
        const Address w = random_address(rng, lw);
        const Address v = random_address(rng, lv);
        CHECK(shift(shift(t, w), v) == shift(t, w + v));
        CHECK(node_at(t, w) == shift(t, w).root());
    }
}

TEST_CASE("node index agrees with the recursive descent oracle") {
    const TreePrefix j = fixed_point(kJ, 0, 13);
    for (int len = 0; len < 13; ++len)
        for (const auto& w : words_of_length(len)) REQUIRE(node_at(j, w) == (oracle::fixed_node(word(w)) - '0'));
}

TEST_CASE("paths along b and ab") {
    const TreePrefix j = fixed_point(kJ, 0, 24);
    for (int k = 1; k < 24; ++k) CHECK(node_at(j, Address::repeat(Letter::b, k)) == 0);

    std::string along;
    std::vector<Letter> path;
    for (int k = 0; k < 24; ++k) {
        along += static_cast<char>('0' + node_at(j, Address(path)));
        path.push_back(k % 2 == 0 ? Letter::a : Letter::b);
    }
    std::string expect = "0";
    while (expect.size() < along.size()) expect += "10";
    CHECK(along == expect.substr(0, along.size()));
}

TEST_CASE("distance") {
    const TreePrefix j = fixed_point(kJ, 0, 4);
    const TreePrefix j1 = fixed_point(kJ, 1, 4);
    CHECK(distance(j, j).is_zero());
    CHECK(distance(j, j1) == Dyadic::power(0));
    CHECK(distance(j, j1).value() == 1.0);
    TreePrefix k = j;
    k.set(7 + 5, k.at(7 + 5) ^ 1U);
    CHECK(distance(j, k) == Dyadic::power(3));
    CHECK(Dyadic::zero(4) < Dyadic::power(9));
    CHECK(Dyadic::power(9) < Dyadic::power(2));
    CHECK_THROWS_AS(distance(j, fixed_point(kJ, 0, 5)), std::invalid_argument);

    std::mt19937_64 rng(5);
    for (int trial = 0; trial < 500; ++trial) {
        const int d = 1 + static_cast<int>(rng() % 6);
        // near-copies so that distances are spread out
        TreePrefix a = random_tree(rng, d);
        TreePrefix b = a;
        TreePrefix c = a;
        b.set(rng() % b.node_count(), static_cast<Color>(rng() & 1U));
        c.set(rng() % c.node_count(), static_cast<Color>(rng() & 1U));
        if (rng() & 1U) c = random_tree(rng, d);
        CHECK(distance(a, c) <= std::max(distance(a, b), distance(b, c)));
        CHECK(distance(a, b) == distance(b, a));
    }
}

TEST_CASE("tree text form") {
    CHECK(TreePrefix::parse("0/10/0010").depth() == 3);
    CHECK_THROWS_AS(TreePrefix::parse("0/1/0010"), std::invalid_argument);
    CHECK_THROWS_AS(TreePrefix::parse("0/10/001"), std::invalid_argument);
    CHECK(TreePrefix::parse("1/00") < TreePrefix::parse("1/10"));
    CHECK(TreePrefix::parse("1/10") < TreePrefix::parse("0/00/0000"));
}

TEST_CASE("SBTR cache format") {
    const TreePrefix j5 = fixed_point(kJ, 0, 5);
    const auto bytes = encode_sbtr(j5);
    CHECK(bytes.size() == 13);  // 9 header bytes + ceil(31 / 8)
    CHECK(bytes[0] == 'S');
    CHECK(bytes[3] == 'R');
    CHECK(bytes[4] == 1);
    CHECK(bytes[5] == 5);
    CHECK(bytes[6] == 0);
    // 0 10 0010 10101010 0010001000000010 packed MSB first, one zero pad bit
    CHECK(bytes[9] == 0x45);
    CHECK(bytes[10] == 0x54);
    CHECK(bytes[11] == 0x44);
    CHECK(bytes[12] == 0x04);
    CHECK(decode_sbtr(bytes) == j5);

    std::mt19937_64 rng(9);
    for (int trial = 0; trial < 50; ++trial) {
        const TreePrefix t = random_tree(rng, 1 + static_cast<int>(rng() % 12));
        CHECK(decode_sbtr(encode_sbtr(t)) == t);
        CHECK(patch_from_hex(patch_to_hex(t)) == t);
    }

    auto bad = bytes;
    bad[0] = 'X';
    CHECK_THROWS_AS(decode_sbtr(bad), FormatError);
    bad = bytes;
    bad[4] = 2;
    CHECK_THROWS_AS(decode_sbtr(bad), FormatError);
    bad = bytes;
    bad.pop_back();
    CHECK_THROWS_AS(decode_sbtr(bad), FormatError);
    bad = bytes;
    bad.back() |= 1U;  // padding bit set
    CHECK_THROWS_AS(decode_sbtr(bad), FormatError);

    const auto path = std::filesystem::temp_directory_path() / "jacaranda_test_j12.sbtr";
    write_sbtr(path, fixed_point(kJ, 0, 12));
    CHECK(read_sbtr(path) == fixed_point(kJ, 0, 12));
    std::filesystem::remove(path);
    CHECK_THROWS_AS(read_sbtr(path), std::runtime_error);
}
