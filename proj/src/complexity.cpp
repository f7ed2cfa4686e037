#include "jacaranda/complexity.hpp"

#include "jacaranda/parallel.hpp"

#include <algorithm>
#include <optional>
#include <sstream>
#include <stdexcept>
#include <unordered_set>

namespace jacaranda {

CertifiedPatches certified_patches(FixedPointWindows& windows, int n, const KappaOptions& options) {
    if (n < 1) throw std::invalid_argument("patch depth must be >= 1, got " + std::to_string(n));
    if (options.step < 1) throw std::invalid_argument("generation depth step must be >= 1");
    const int cap = std::max(options.depth_cap, n);
    int depth = std::min(n + std::max(0, options.first_margin), cap);
    for (;;) {
        if (windows.check_closure(depth, n).complete) return {windows.windows(depth, n), depth, true};
        if (depth == cap) break;
        depth = std::min(depth + options.step, cap);
    }
    return {windows.windows(depth, n), depth, false};
}

bool KappaTable::all_stabilized() const noexcept {
    return std::all_of(rows.begin(), rows.end(), [](const KappaRow& r) { return r.stabilized; });
}

KappaRow kappa(FixedPointWindows& windows, int n, const KappaOptions& options) {
    const CertifiedPatches c = certified_patches(windows, n, options);
    return {n, c.patches.count(), c.patches.odd_count(), c.patches.even_count(), c.generation_depth,
            c.stabilized};
}

KappaRow kappa(int n, const KappaOptions& options) {
    FixedPointWindows w(Substreetution::jacaranda(), 0);
    return kappa(w, n, options);
}

KappaTable kappa_table(const Substreetution& s, Color root, int n_max, const KappaOptions& options) {
    if (n_max < 1) throw std::invalid_argument("n_max must be >= 1");
    KappaTable table;
    table.rows.resize(static_cast<std::size_t>(n_max));
    const int workers = std::max(1, options.workers);
    std::vector<std::optional<FixedPointWindows>> state(static_cast<std::size_t>(workers));
    // largest n first: they dominate the run time
    parallel_for(static_cast<std::size_t>(n_max), workers, [&](std::size_t task, std::size_t worker) {
        auto& w = state[worker];
        if (!w) w.emplace(s, root);
        const int n = n_max - static_cast<int>(task);
        table.rows[static_cast<std::size_t>(n - 1)] = kappa(*w, n, options);
    });
    return table;
}

KappaTable kappa_table(int n_max, const KappaOptions& options) {
    return kappa_table(Substreetution::jacaranda(), 0, n_max, options);
}

SplitCounts kappa_split(FixedPointWindows& windows, int n, const KappaOptions& options) {
    const CertifiedPatches c = certified_patches(windows, n, options);
    return {c.patches.odd_count(), c.patches.even_count(), c.stabilized};
}

ImageCount kappa_even_via_bijection(FixedPointWindows& windows, int n, const KappaOptions& options) {
    const CertifiedPatches c = certified_patches(windows, n, options);
    std::unordered_set<TreePrefix> images;
    for (const auto& p : c.patches.patches()) images.insert(apply_substitution(p, windows.substitution()));
    ImageCount out;
    out.n = n;
    out.kappa_n = c.patches.count();
    out.image_count = images.size();
    out.injective = out.image_count == out.kappa_n;
    out.stabilized = c.stabilized;
    return out;
}

// ---------------------------------------------------------------------------

std::size_t CheckReport::failures() const noexcept {
    return static_cast<std::size_t>(
        std::count_if(checks.begin(), checks.end(), [](const Check& c) { return !c.holds && !c.exempt; }));
}

std::vector<Check> CheckReport::failed(std::string_view name) const {
    std::vector<Check> out;
    for (const auto& c : checks)
        if (!c.holds && !c.exempt && (name.empty() || c.name == name)) out.push_back(c);
    return out;
}

void CheckReport::add(std::string name, int n, std::int64_t lhs, std::int64_t rhs, std::string statement,
                      bool holds, bool exempt) {
    checks.push_back({std::move(name), n, lhs, rhs, std::move(statement), holds, exempt});
}

void CheckReport::append(const CheckReport& other) {
    checks.insert(checks.end(), other.checks.begin(), other.checks.end());
}

VSequence::VSequence(std::int64_t alpha, std::int64_t beta, int n_max)
    : alpha_(alpha), beta_(beta), n_max_(n_max) {
    if (alpha < 1) throw std::invalid_argument("alpha must be >= 1");
    if (beta < alpha + 1) throw std::invalid_argument("beta must be >= alpha + 1");
    if (n_max < 4) throw std::invalid_argument("n_max must be >= 4");
    values_.assign(static_cast<std::size_t>(n_max + 1), 0);
    values_[2] = alpha;
    values_[3] = beta;
    auto v = [&](int i) { return values_[static_cast<std::size_t>(i)]; };
    for (int i = 4; i <= n_max; ++i) {
        // v_2k+1 = v_2k+2 - 1 = v_k+1 + v_k+2 - 1, all below i
        const int h = (i + 1) / 2;
        values_[static_cast<std::size_t>(i)] = i % 2 == 0 ? v(h) + v(h + 1) : v(h) + v(h + 1) - 1;
    }
}

std::int64_t VSequence::operator[](int n) const {
    if (n < 2 || n > n_max_) throw std::out_of_range("v_" + std::to_string(n) + " outside [2, n_max]");
    return values_[static_cast<std::size_t>(n)];
}

VSequence v_sequence(std::int64_t alpha, std::int64_t beta, int n_max) { return VSequence(alpha, beta, n_max); }

namespace {

std::string str(std::int64_t x) { return std::to_string(x); }

}  // namespace

CheckReport verify_v_sequence(const VSequence& v) {
    CheckReport r;
    const int top = v.n_max();
    const std::int64_t a = v.alpha();
    const std::int64_t b = v.beta();
    for (int n = 2; 4 * n + 2 <= top; ++n) {
        const std::int64_t rhs4 = v[2 * n] + v[2 * n + 2] - 1;
        r.add("v_identity_4n", n, v[4 * n], rhs4,
              "v_" + str(4 * n) + " = v_" + str(2 * n) + " + v_" + str(2 * n + 2) + " - 1",
              v[4 * n] == rhs4);
        const std::int64_t rhs42 = 2 * v[2 * n + 2] - 1;
        r.add("v_identity_4n2", n, v[4 * n + 2], rhs42, "v_" + str(4 * n + 2) + " = 2 v_" + str(2 * n + 2) + " - 1",
              v[4 * n + 2] == rhs42);
    }
    for (int n = 1; 2 * n + 2 <= top; ++n) {
        const std::int64_t step = v[2 * n + 2] - v[2 * n];
        r.add("v_step", n, step, b, "v_" + str(2 * n + 2) + " - v_" + str(2 * n) + " in {beta, beta + alpha - 1}",
              step == b || step == b + a - 1);
    }
    for (int n = 1; 2 * n <= top; ++n) {
        const std::int64_t bound = (b + a - 1) * (n - 1) + a;
        r.add("v_linear", n, v[2 * n], bound, "v_" + str(2 * n) + " <= (beta + alpha - 1)(n - 1) + alpha",
              v[2 * n] <= bound);
    }
    for (int n = 2; n < top; ++n)
        r.add("v_monotone", n, v[n + 1], v[n], "v_" + str(n + 1) + " > v_" + str(n), v[n + 1] > v[n]);
    return r;
}

CheckReport check_inequalities(const KappaTable& table) {
    CheckReport r;
    const int top = table.n_max();
    // only the stabilized prefix of the table is trusted
    int last = 0;
    while (last < top && table.row(last + 1).stabilized) ++last;
    if (last < top)
        r.add("stabilized", last + 1, 0, 1, "row " + str(last + 1) + " is certified complete", false);
    if (last < 1) return r;

    auto k = [&](int n) { return static_cast<std::int64_t>(table.kappa(n)); };
    auto ko = [&](int n) { return static_cast<std::int64_t>(table.row(n).kappa_odd); };
    auto ke = [&](int n) { return static_cast<std::int64_t>(table.row(n).kappa_even); };

    for (int n = 1; n + 1 <= last; ++n)
        r.add("monotone", n, k(n + 1), k(n), "kappa_" + str(n + 1) + " > kappa_" + str(n), k(n + 1) > k(n));
    for (int n = 1; n <= last; ++n)
        r.add("lower_bound", n, k(n), n + 2, "kappa_" + str(n) + " >= n + 2", k(n) >= n + 2, n == 1);
    for (int n = 2; 2 * n <= last; ++n)
        r.add("doubling", n, k(2 * n), k(n) + k(n + 1),
              "kappa_" + str(2 * n) + " <= kappa_" + str(n) + " + kappa_" + str(n + 1), k(2 * n) <= k(n) + k(n + 1));

    if (last >= 3) {
        const std::int64_t beta = k(3);
        for (int n = 1; 2 * n <= last; ++n) {
            const std::int64_t bound = (beta + 3) * (n - 1) + 4;
            r.add("linear_even", n, k(2 * n), bound, "kappa_" + str(2 * n) + " <= (beta + 3)(n - 1) + 4",
                  k(2 * n) <= bound);
        }
        for (int n = 1; 2 * n + 1 <= last; ++n) {
            const std::int64_t bound = (beta + 3) * n + 3;
            r.add("linear_odd", n, k(2 * n + 1), bound, "kappa_" + str(2 * n + 1) + " <= (beta + 3) n + 3",
                  k(2 * n + 1) <= bound);
        }
        if (last >= 4) {
            const VSequence v(k(2), beta, last);
            for (int n = 2; n <= last; ++n)
                r.add("domination", n, k(n), v[n], "kappa_" + str(n) + " <= v_" + str(n), k(n) <= v[n]);
        }
    }
    for (int n = 1; n + 2 <= last; ++n) {
        const bool stalls = k(n + 1) == k(n) && k(n + 2) > k(n + 1);
        r.add("stationarity", n, k(n + 2), k(n + 1),
              "kappa_" + str(n + 1) + " = kappa_" + str(n) + " forces kappa_" + str(n + 2) + " = kappa_" + str(n + 1),
              !stalls);
    }
    for (int n = 2; 2 * n <= last; ++n) {
        r.add("even_split", n, ke(2 * n), k(n), "kappa_" + str(2 * n) + ",e = kappa_" + str(n), ke(2 * n) == k(n));
        if (n + 1 <= last) {
            r.add("odd_split", n, ko(2 * n), k(n + 1), "kappa_" + str(2 * n) + ",o <= kappa_" + str(n + 1),
                  ko(2 * n) <= k(n + 1));
            r.add("odd_split_children", n, ko(2 * n), 2 * k(n + 1),
                  "kappa_" + str(2 * n) + ",o <= 2 kappa_" + str(n + 1), ko(2 * n) <= 2 * k(n + 1));
        }
    }
    for (int n = 1; n <= last; ++n)
        r.add("split_cover", n, k(n), ko(n) + ke(n), "kappa_" + str(n) + " <= kappa_" + str(n) + ",o + kappa_" +
                                                         str(n) + ",e",
              k(n) <= ko(n) + ke(n) && k(n) > 0);
    return r;
}

// ---------------------------------------------------------------------------

std::string to_csv(const KappaTable& table) {
    std::ostringstream out;
    out << "n,kappa,kappa_odd,kappa_even,N_used,stabilized\n";
    for (const auto& r : table.rows)
        out << r.n << ',' << r.kappa << ',' << r.kappa_odd << ',' << r.kappa_even << ',' << r.generation_depth
            << ',' << (r.stabilized ? "true" : "false") << '\n';
    return out.str();
}

nlohmann::json to_json(const KappaTable& table) {
    nlohmann::json rows = nlohmann::json::array();
    for (const auto& r : table.rows)
        rows.push_back({{"n", r.n},
                        {"kappa", r.kappa},
                        {"kappa_odd", r.kappa_odd},
                        {"kappa_even", r.kappa_even},
                        {"N_used", r.generation_depth},
                        {"stabilized", r.stabilized}});
    return {{"rows", rows}, {"all_stabilized", table.all_stabilized()}};
}

nlohmann::json to_json(const CheckReport& report) {
    nlohmann::json checks = nlohmann::json::array();
    for (const auto& c : report.checks)
        checks.push_back({{"name", c.name},
                          {"n", c.n},
                          {"lhs", c.lhs},
                          {"rhs", c.rhs},
                          {"statement", c.statement},
                          {"holds", c.holds},
                          {"exempt", c.exempt}});
    return {{"ok", report.ok()}, {"failures", report.failures()}, {"checks", checks}};
}

nlohmann::json to_json(const PatchSet& set) {
    auto word = [](const std::optional<Address>& w) -> nlohmann::json {
        if (!w) return nullptr;
        return w->to_string();
    };
    nlohmann::json patches = nlohmann::json::array();
    for (std::size_t i = 0; i < set.count(); ++i) {
        const auto& w = set.witnesses(i);
        patches.push_back({{"patch", set.patches()[i].to_string()},
                           {"root", w.root},
                           {"odd", word(w.odd)},
                           {"even", word(w.even)}});
    }
    return {{"depth", set.patch_depth()}, {"generation_depth", set.generation_depth}, {"patches", patches}};
}

PatchSet patch_set_from_json(const nlohmann::json& doc) {
    try {
        const int depth = doc.at("depth").get<int>();
        std::vector<std::pair<TreePrefix, PatchWitnesses>> entries;
        for (const auto& item : doc.at("patches")) {
            PatchWitnesses w;
            w.root = item.at("root").get<bool>();
            if (!item.at("odd").is_null()) w.odd = Address::parse(item.at("odd").get<std::string>());
            if (!item.at("even").is_null()) w.even = Address::parse(item.at("even").get<std::string>());
            entries.emplace_back(TreePrefix::parse(item.at("patch").get<std::string>()), std::move(w));
        }
        PatchSet out(depth, std::move(entries));
        out.generation_depth = doc.value("generation_depth", 0);
        return out;
    } catch (const nlohmann::json::exception& e) {
        throw std::invalid_argument(std::string("malformed patch set: ") + e.what());
    }
}

}  // namespace jacaranda
