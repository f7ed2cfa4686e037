#include "jacaranda/entropy.hpp"

#include "jacaranda/parallel.hpp"

#include <algorithm>
#include <cmath>
#include <iomanip>
#include <limits>
#include <sstream>
#include <stdexcept>
#include <unordered_set>

namespace jacaranda {

double EntropySequence::at(int n) const {
    for (const auto& pt : points)
        if (pt.n == n) return pt.value;
    throw std::out_of_range("no entropy value at n = " + std::to_string(n));
}

double EntropySequence::tail_max(int n0) const {
    double best = -std::numeric_limits<double>::infinity();
    for (const auto& pt : points)
        if (pt.n >= n0) best = std::max(best, pt.value);
    return best;
}

bool EntropySequence::decreasing_from(int n0) const {
    const SequencePoint* prev = nullptr;
    for (const auto& pt : points) {
        if (pt.n < n0) continue;
        if (prev && !(pt.value < prev->value)) return false;
        prev = &pt;
    }
    return true;
}

namespace {

void require_certified(const KappaTable& table) {
    for (const auto& r : table.rows)
        if (!r.stabilized)
            throw std::invalid_argument("kappa_" + std::to_string(r.n) + " is not certified complete");
}

}  // namespace

EntropySequence h_ps_sequence(const KappaTable& table) {
    require_certified(table);
    EntropySequence s;
    for (const auto& r : table.rows)
        s.points.push_back({r.n, std::log(static_cast<double>(r.kappa)) / std::ldexp(1.0, r.n)});
    return s;
}

EntropySequence h_bc_sequence(const KappaTable& table) {
    require_certified(table);
    EntropySequence s;
    for (const auto& r : table.rows) {
        if (r.n < 2) continue;
        if (r.kappa < 2) throw std::domain_error("log log kappa_" + std::to_string(r.n) + " is undefined");
        s.points.push_back({r.n, std::log(std::log(static_cast<double>(r.kappa))) / r.n});
    }
    return s;
}

namespace {

std::vector<Address> subwords(const Address& w, WindowOrder order) {
    std::vector<Address> out;
    for (int k = 0; k <= w.length(); ++k)
        out.push_back(order == WindowOrder::prefix ? w.prefix(k) : w.suffix(k));
    return out;
}

}  // namespace

Dyadic d_omega(const TreePrefix& a, const TreePrefix& b, const Address& w, WindowOrder order) {
    if (a.depth() != b.depth())
        throw std::invalid_argument("d_omega needs equal depths (" + std::to_string(a.depth()) + " vs " +
                                    std::to_string(b.depth()) + ")");
    if (a.depth() < w.length() + 1)
        throw std::invalid_argument("depth " + std::to_string(a.depth()) + " too small for |w| = " +
                                    std::to_string(w.length()));
    Dyadic best = Dyadic::zero(a.depth() - w.length());
    for (const auto& psi : subwords(w, order)) {
        const Dyadic d = distance(shift(a, psi), shift(b, psi));
        if (!d.is_zero() && (best.is_zero() || d > best)) best = d;
    }
    return best;
}

namespace {

struct VectorHash {
    std::size_t operator()(const std::vector<std::uint64_t>& v) const noexcept {
        std::uint64_t h = 0x9E3779B97F4A7C15ULL;
        for (auto x : v) {
            h ^= x + 0x9E3779B97F4A7C15ULL + (h << 6) + (h >> 2);
        }
        return static_cast<std::size_t>(h);
    }
};

std::uint64_t window_key(const TreePrefix& p, const Address& at, int depth) {
    const TreePrefix win = shift(p, at).truncated(depth);
    return win.bits().read_word(0, static_cast<unsigned>(win.node_count()));
}

std::uint64_t count_profiles(const PatchSet& k, const Address& w, int p, WindowOrder order) {
    std::unordered_set<std::vector<std::uint64_t>, VectorHash> seen;
    const auto psis = subwords(w, order);
    for (const auto& patch : k.patches()) {
        std::vector<std::uint64_t> profile;
        profile.reserve(psis.size());
        for (const auto& psi : psis) profile.push_back(window_key(patch, psi, p + 1));
        seen.insert(std::move(profile));
    }
    return seen.size();
}

}  // namespace

BufetovEstimate bufetov_profile_count(int n, int p, const CertifiedPatches& k, int workers) {
    if (n < 1) throw std::invalid_argument("n must be >= 1");
    if (p < 0 || p > 5) throw std::invalid_argument("p must lie in [0, 5]");
    if (k.patches.patch_depth() != n + p + 1)
        throw std::invalid_argument("profile counting needs K_" + std::to_string(n + p + 1) + ", got K_" +
                                    std::to_string(k.patches.patch_depth()));
    const auto words = words_of_length(n);
    std::vector<std::uint64_t> prefix_counts(words.size());
    std::vector<std::uint64_t> suffix_counts(words.size());
    parallel_for(words.size(), workers, [&](std::size_t i) {
        prefix_counts[i] = count_profiles(k.patches, words[i], p, WindowOrder::prefix);
        suffix_counts[i] = count_profiles(k.patches, words[i], p, WindowOrder::suffix);
    });

    BufetovEstimate e;
    e.n = n;
    e.p = p;
    e.stabilized = k.stabilized;
    e.bound = k.patches.count();
    double sum = 0.0;
    double sum_suffix = 0.0;
    e.min_count = std::numeric_limits<std::uint64_t>::max();
    for (std::size_t i = 0; i < words.size(); ++i) {
        sum += static_cast<double>(prefix_counts[i]);
        sum_suffix += static_cast<double>(suffix_counts[i]);
        e.min_count = std::min(e.min_count, prefix_counts[i]);
        e.max_count = std::max(e.max_count, prefix_counts[i]);
    }
    e.average = sum / static_cast<double>(words.size());
    e.average_suffix = sum_suffix / static_cast<double>(words.size());
    e.h_estimate = std::log(e.average) / n;
    e.h_bound = std::log(static_cast<double>(e.bound)) / n;
    return e;
}

Sandwich htop_sandwich(int n, int p, const KappaTable& table) {
    if (n < 1 || p < 0) throw std::invalid_argument("sandwich needs n >= 1 and p >= 0");
    if (n + p > table.n_max())
        throw std::out_of_range("sandwich at n = " + std::to_string(n) + ", p = " + std::to_string(p) +
                                " needs kappa_" + std::to_string(n + p));
    const KappaRow& row = table.row(n + p);
    if (!row.stabilized) throw std::invalid_argument("kappa_" + std::to_string(n + p) + " is not certified");
    Sandwich s;
    s.n = n;
    s.p = p;
    s.kappa = row.kappa;
    s.lower = static_cast<double>(n + p) * kLog2 / n;
    s.upper = s.lower + std::log(static_cast<double>(row.kappa)) / n;
    return s;
}

std::vector<SkewPoint> skew_orbit(const SkewPoint& x, int steps) {
    if (steps < 0) throw std::invalid_argument("steps must be >= 0");
    if (x.path.length() < steps)
        throw std::invalid_argument("path of length " + std::to_string(x.path.length()) + " runs out before " +
                                    std::to_string(steps) + " steps");
    if (x.tree.depth() <= steps)
        throw std::invalid_argument("tree of depth " + std::to_string(x.tree.depth()) + " runs out before " +
                                    std::to_string(steps) + " steps");
    std::vector<SkewPoint> out{x};
    for (int i = 0; i < steps; ++i) {
        const SkewPoint& cur = out.back();
        out.push_back({cur.path.drop_front(1), shift(cur.tree, cur.path[0])});
    }
    return out;
}

EntropyReport entropy_report(FixedPointWindows& windows, const EntropyOptions& options) {
    if (options.n_max < 2) throw std::invalid_argument("entropy report needs n_max >= 2");
    EntropyReport r;
    r.p = options.p;
    r.table = kappa_table(windows.substitution(), windows.root(), options.n_max + options.p, options.kappa);
    r.h_ps = h_ps_sequence(r.table);
    r.h_bc = h_bc_sequence(r.table);
    for (int n = 1; n <= options.n_max; ++n) r.sandwich.push_back(htop_sandwich(n, options.p, r.table));
    for (int n = 1; n <= options.bufetov_n_max; ++n) {
        const auto k = certified_patches(windows, n + options.bufetov_p + 1, options.kappa);
        r.bufetov.push_back(bufetov_profile_count(n, options.bufetov_p, k, options.kappa.workers));
    }
    return r;
}

nlohmann::json to_json(const EntropyReport& r) {
    nlohmann::json ps = nlohmann::json::array();
    for (const auto& pt : r.h_ps.points) ps.push_back({{"n", pt.n}, {"value", pt.value}});
    nlohmann::json bc = nlohmann::json::array();
    for (const auto& pt : r.h_bc.points) bc.push_back({{"n", pt.n}, {"value", pt.value}});
    nlohmann::json sw = nlohmann::json::array();
    for (const auto& s : r.sandwich)
        sw.push_back({{"n", s.n},
                      {"p", s.p},
                      {"kappa", s.kappa},
                      {"lower", s.lower},
                      {"upper", s.upper},
                      {"gap", s.gap()}});
    nlohmann::json bu = nlohmann::json::array();
    for (const auto& b : r.bufetov)
        bu.push_back({{"n", b.n},
                      {"p", b.p},
                      {"average", b.average},
                      {"average_suffix", b.average_suffix},
                      {"orders_differ", b.average != b.average_suffix},
                      {"min", b.min_count},
                      {"max", b.max_count},
                      {"bound", b.bound},
                      {"h_estimate", b.h_estimate},
                      {"h_bound", b.h_bound},
                      {"stabilized", b.stabilized}});
    return {{"log2", kLog2},
            {"kappa", to_json(r.table)},
            {"h_ps", ps},
            {"h_bc", bc},
            {"sandwich", sw},
            {"bufetov", bu}};
}

std::string to_csv(const EntropyReport& r) {
    std::ostringstream out;
    out << std::setprecision(12);
    out << "n,kappa,h_ps,h_bc,lower,upper,gap,bufetov_average,bufetov_average_suffix,h_b_estimate,h_b_bound\n";
    for (const auto& row : r.table.rows) {
        const int n = row.n;
        out << n << ',' << row.kappa << ',' << r.h_ps.at(n) << ',';
        if (n >= 2) out << r.h_bc.at(n);
        out << ',';
        const auto s = std::find_if(r.sandwich.begin(), r.sandwich.end(), [&](const Sandwich& x) { return x.n == n; });
        if (s != r.sandwich.end())
            out << s->lower << ',' << s->upper << ',' << s->gap() << ',';
        else
            out << ",,,";
        const auto b = std::find_if(r.bufetov.begin(), r.bufetov.end(), [&](const BufetovEstimate& x) { return x.n == n; });
        if (b != r.bufetov.end())
            out << b->average << ',' << b->average_suffix << ',' << b->h_estimate << ',' << b->h_bound;
        else
            out << ",,,";
        out << '\n';
    }
    return out.str();
}

}  // namespace jacaranda
