#include "jacaranda/entropy.hpp"

#include "oracles.hpp"

#include <doctest.h>

#include <cmath>
#include <random>

using namespace jacaranda;

namespace {

const Substreetution kJ = Substreetution::jacaranda();

const KappaTable& table18() {
    static const KappaTable t = kappa_table(18);
    return t;
}

const std::vector<oracle::PatchClasses>& exact() {
    static const auto k = oracle::exact_patches(9);
    return k;
}

// distinct tuples of depth-(p+1) windows along the prefixes of w
std::size_t oracle_profiles(const std::string& w, int p) {
    const int n = static_cast<int>(w.size());
    std::set<std::vector<std::string>> seen;
    for (const auto& patch : exact()[static_cast<std::size_t>(n + p + 1)].all) {
        std::vector<std::string> profile;
        for (int k = 0; k <= n; ++k) profile.push_back(oracle::window(patch, w.substr(0, static_cast<std::size_t>(k)), p + 1));
        seen.insert(profile);
    }
    return seen.size();
}

TreePrefix random_tree(std::mt19937_64& rng, int depth) {
    TreePrefix t(depth);
    for (std::size_t i = 0; i < t.node_count(); ++i) t.set(i, static_cast<Color>(rng() & 1U));
    return t;
}

TreePrefix flipped(TreePrefix t, const char* word) {
    const auto i = Address::parse(word).node_index();
    t.set(i, t.at(i) ^ 1U);
    return t;
}

}  // namespace

TEST_CASE("complexity entropies at small n") {
    const auto ps = h_ps_sequence(table18());
    const auto bc = h_bc_sequence(table18());
    CHECK(ps.at(1) == doctest::Approx(std::log(2.0) / 2));
    CHECK(ps.at(2) == doctest::Approx(0.34657).epsilon(1e-4));
    CHECK(bc.at(2) == doctest::Approx(std::log(std::log(4.0)) / 2));
    CHECK(bc.at(2) == doctest::Approx(0.16332).epsilon(1e-4));
    CHECK_THROWS_AS((void)bc.at(1), std::out_of_range);
    CHECK(bc.points.front().n == 2);
    CHECK(ps.points.size() == 18);
}

TEST_CASE("polynomial complexity drives both entropies down") {
    const auto ps = h_ps_sequence(table18());
    const auto bc = h_bc_sequence(table18());
    const VSequence v(table18().kappa(2), table18().kappa(3), 20);
    CHECK(ps.at(10) <= std::log(static_cast<double>(v[10])) / 1024.0);
    CHECK(ps.at(10) < 1e-2);
    CHECK(ps.at(16) < 1e-4);
    CHECK(ps.tail_max(10) == doctest::Approx(ps.at(10)));
    CHECK(bc.decreasing_from(8));
    CHECK(bc.at(16) < 0.2);
    CHECK(bc.tail_max(16) < 0.2);
}

TEST_CASE("entropies refuse uncertified tables") {
    KappaOptions tiny;
    tiny.depth_cap = 12;
    const KappaTable t = kappa_table(Substreetution::jacaranda(), 0, 8, tiny);
    REQUIRE_FALSE(t.all_stabilized());
    CHECK_THROWS_AS(h_ps_sequence(t), std::invalid_argument);
    CHECK_THROWS_AS(h_bc_sequence(t), std::invalid_argument);
}

TEST_CASE("dynamical distance") {
    const TreePrefix j = fixed_point(kJ, 0, 6);
    const Address ab = Address::parse("ab");
    CHECK(d_omega(j, j, ab).is_zero());
    CHECK(d_omega(j, j, ab).exponent() == 4);

    // a flip under a: every prefix of ab still sees it, closer each step
    const TreePrefix k1 = flipped(j, "aba");
    CHECK(distance(j, k1) == Dyadic::power(3));
    CHECK(d_omega(j, k1, ab) == Dyadic::power(1));
    CHECK(d_omega(j, k1, ab, WindowOrder::suffix) == Dyadic::power(1));

    // a flip under bb: only the suffix b brings it closer
    const TreePrefix k2 = flipped(j, "bba");
    CHECK(d_omega(j, k2, ab) == Dyadic::power(3));
    CHECK(d_omega(j, k2, ab, WindowOrder::suffix) == Dyadic::power(2));

    // a flip at the site w itself is seen at the root after the full shift
    CHECK(d_omega(j, flipped(j, "ab"), ab) == Dyadic::power(0));
    CHECK(d_omega(j, k2, Address{}) == distance(j, k2));
    CHECK_THROWS_AS(d_omega(j, fixed_point(kJ, 0, 5), ab), std::invalid_argument);
    CHECK_THROWS_AS(d_omega(j, j, Address::parse("aaaaaa")), std::invalid_argument);
}

TEST_CASE("dynamical distance is an ultrametric dominating the plain one") {
    std::mt19937_64 rng(11);
    for (int trial = 0; trial < 400; ++trial) {
        const int d = 3 + static_cast<int>(rng() % 4);
        const Address w = Address::from_index(1 + static_cast<int>(rng() % 2), rng() % 2);
        const TreePrefix a = random_tree(rng, d);
        TreePrefix b = a;
        TreePrefix c = a;
        b.set(rng() % b.node_count(), static_cast<Color>(rng() & 1U));
        c.set(rng() % c.node_count(), static_cast<Color>(rng() & 1U));
        for (auto order : {WindowOrder::prefix, WindowOrder::suffix}) {
            const Dyadic ab = d_omega(a, b, w, order);
            const Dyadic bc = d_omega(b, c, w, order);
            const Dyadic ac = d_omega(a, c, w, order);
            CHECK(ac <= std::max(ab, bc));
            CHECK(ab == d_omega(b, a, w, order));
            CHECK(distance(a, b) <= ab);
        }
    }
}

TEST_CASE("profile counts agree with the string oracle") {
    auto windows = FixedPointWindows(kJ, 0);
    {
        const auto e = bufetov_profile_count(1, 0, certified_patches(windows, 2));
        CHECK(oracle_profiles("a", 0) == 4);
        CHECK(e.max_count == 4);
        CHECK(e.bound == 4);
    }
    for (int p = 0; p <= 2; ++p) {
        for (int n = 1; n + p + 1 <= 9; ++n) {
            const auto k = certified_patches(windows, n + p + 1);
            REQUIRE(k.stabilized);
            const auto e = bufetov_profile_count(n, p, k);
            double sum = 0.0;
            std::size_t lo = SIZE_MAX;
            std::size_t hi = 0;
            for (const auto& w : oracle::words(n)) {
                const std::size_t c = oracle_profiles(w, p);
                sum += static_cast<double>(c);
                lo = std::min(lo, c);
                hi = std::max(hi, c);
            }
            CAPTURE(n);
            CAPTURE(p);
            CHECK(e.average == doctest::Approx(sum / std::ldexp(1.0, n)));
            CHECK(e.min_count == lo);
            CHECK(e.max_count == hi);
            CHECK(e.max_count <= e.bound);
            CHECK(e.bound == table18().kappa(n + p + 1));
            CHECK(e.h_estimate <= e.h_bound + 1e-12);
            CHECK(e.stabilized);
        }
    }
}

TEST_CASE("profile counting checks its inputs") {
    auto windows = FixedPointWindows(kJ, 0);
    const auto k5 = certified_patches(windows, 5);
    CHECK_THROWS_AS(bufetov_profile_count(2, 1, k5), std::invalid_argument);
    CHECK_THROWS_AS(bufetov_profile_count(0, 4, k5), std::invalid_argument);
    CHECK_THROWS_AS(bufetov_profile_count(1, 6, certified_patches(windows, 8)), std::invalid_argument);
    const auto k9 = certified_patches(windows, 9);
    CHECK(bufetov_profile_count(6, 2, k9, 1).average == bufetov_profile_count(6, 2, k9, 8).average);
    CHECK(bufetov_profile_count(6, 2, k9, 1).average_suffix == bufetov_profile_count(6, 2, k9, 8).average_suffix);
}

TEST_CASE("separated set sandwich") {
    const Sandwich s = htop_sandwich(8, 2, table18());
    CHECK(s.kappa == 34);
    CHECK(s.lower == doctest::Approx(0.8664).epsilon(1e-4));
    CHECK(s.gap() == doctest::Approx(std::log(34.0) / 8));
    CHECK(s.lower >= std::log(2.0));
    for (int n = 1; n <= 16; ++n) {
        const Sandwich t = htop_sandwich(n, 2, table18());
        CHECK(std::log(2.0) <= t.lower);
        CHECK(t.lower <= t.upper);
        CHECK(t.lower <= std::log(2.0) + t.gap());
    }
    CHECK(htop_sandwich(16, 2, table18()).gap() < htop_sandwich(8, 2, table18()).gap());
    CHECK_THROWS_AS(htop_sandwich(17, 2, table18()), std::out_of_range);
    CHECK_THROWS_AS(htop_sandwich(0, 2, table18()), std::invalid_argument);
}

TEST_CASE("skew product orbit") {
    const TreePrefix j = fixed_point(kJ, 0, 5);
    const SkewPoint x{Address::parse("ab"), j};
    const auto orbit = skew_orbit(x, 2);
    REQUIRE(orbit.size() == 3);
    CHECK(orbit[0] == x);
    CHECK(orbit[1].path == Address::parse("b"));
    CHECK(orbit[1].tree == shift(j, Letter::a));
    CHECK(orbit[2].path.empty());
    CHECK(orbit[2].tree == shift(j, Address::parse("ab")));
    CHECK(skew_orbit(x, 0).size() == 1);
    CHECK_THROWS_AS(skew_orbit(x, 3), std::invalid_argument);
    CHECK_THROWS_AS(skew_orbit({Address::parse("aaaaa"), j}, 5), std::invalid_argument);

    // the tree component follows the path one letter at a time
    std::mt19937_64 rng(3);
    for (int trial = 0; trial < 50; ++trial) {
        const int len = 1 + static_cast<int>(rng() % 4);
        const Address w = Address::from_index(len, rng() % (std::uint64_t{1} << len));
        const auto o = skew_orbit({w, j}, len);
        for (int k = 0; k <= len; ++k) {
            CHECK(o[static_cast<std::size_t>(k)].tree == shift(j, w.prefix(k)));
            CHECK(o[static_cast<std::size_t>(k)].path == w.drop_front(k));
        }
    }
}

TEST_CASE("entropy report") {
    auto windows = FixedPointWindows(kJ, 0);
    EntropyOptions o;
    o.n_max = 6;
    o.p = 2;
    o.bufetov_n_max = 3;
    const EntropyReport r = entropy_report(windows, o);
    CHECK(r.table.n_max() == 8);
    CHECK(r.sandwich.size() == 6);
    CHECK(r.bufetov.size() == 3);
    const auto doc = nlohmann::json::parse(to_json(r).dump());
    CHECK(doc["sandwich"].size() == 6);
    CHECK(doc["h_ps"].size() == 8);
    CHECK(doc["h_bc"].size() == 7);
    CHECK(doc["bufetov"][0]["bound"] == table18().kappa(4));
    const std::string csv = to_csv(r);
    CHECK(csv.rfind("n,kappa,h_ps,h_bc,", 0) == 0);
    CHECK(std::count(csv.begin(), csv.end(), '\n') == 9);

    o.n_max = 1;
    CHECK_THROWS_AS(entropy_report(windows, o), std::invalid_argument);
}
