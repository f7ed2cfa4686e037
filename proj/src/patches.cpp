#include "jacaranda/patches.hpp"

#include "jacaranda/parallel.hpp"

#include <algorithm>
#include <bit>
#include <stdexcept>
#include <unordered_set>

namespace jacaranda {

namespace {

void keep_min(std::optional<Address>& slot, const Address& w) {
    if (!slot || w < *slot) slot = w;
}

}  // namespace

Address PatchWitnesses::first() const {
    if (root) return {};
    if (odd && even) return std::min(*odd, *even);
    if (odd) return *odd;
    if (even) return *even;
    throw std::logic_error("patch has no recorded occurrence");
}

void PatchWitnesses::merge(const PatchWitnesses& other) {
    root = root || other.root;
    if (other.odd) keep_min(odd, *other.odd);
    if (other.even) keep_min(even, *other.even);
}

void PatchWitnesses::record(const Address& w) {
    if (w.empty())
        root = true;
    else if (w.length() % 2 == 1)
        keep_min(odd, w);
    else
        keep_min(even, w);
}

PatchSet::PatchSet(int patch_depth, std::vector<std::pair<TreePrefix, PatchWitnesses>> entries)
    : depth_(patch_depth) {
    std::sort(entries.begin(), entries.end(),
              [](const auto& x, const auto& y) { return x.first < y.first; });
    patches_.reserve(entries.size());
    witnesses_.reserve(entries.size());
    for (auto& [p, w] : entries) {
        if (p.depth() != patch_depth)
            throw std::invalid_argument("patch of depth " + std::to_string(p.depth()) +
                                        " in a set of depth " + std::to_string(patch_depth));
        if (!patches_.empty() && patches_.back() == p) {
            witnesses_.back().merge(w);
            continue;
        }
        patches_.push_back(std::move(p));
        witnesses_.push_back(std::move(w));
    }
}

std::size_t PatchSet::odd_count() const noexcept {
    return static_cast<std::size_t>(
        std::count_if(witnesses_.begin(), witnesses_.end(), [](const auto& w) { return w.at_odd(); }));
}

std::size_t PatchSet::even_count() const noexcept {
    return static_cast<std::size_t>(
        std::count_if(witnesses_.begin(), witnesses_.end(), [](const auto& w) { return w.at_even(); }));
}

std::optional<std::size_t> PatchSet::find(const TreePrefix& p) const {
    const auto it = std::lower_bound(patches_.begin(), patches_.end(), p);
    if (it == patches_.end() || !(*it == p)) return std::nullopt;
    return static_cast<std::size_t>(it - patches_.begin());
}

bool PatchSet::same_occurrence_classes(const PatchSet& other) const {
    if (depth_ != other.depth_ || patches_ != other.patches_) return false;
    for (std::size_t i = 0; i < witnesses_.size(); ++i) {
        const auto& x = witnesses_[i];
        const auto& y = other.witnesses_[i];
        if (x.root != y.root || x.at_odd() != y.at_odd() || x.even.has_value() != y.even.has_value())
            return false;
    }
    return true;
}

// ---------------------------------------------------------------------------
// Brute-force windows of a materialized prefix

namespace {

template <class Key>
using LocalMap = std::unordered_map<Key, PatchWitnesses>;

struct AddressRange {
    int level;
    std::uint64_t begin;
    std::uint64_t end;
};

// Address ranges owned by one task when the space is split on `split_letters`
// leading letters. Levels shallower than the split belong to task 0.
std::vector<AddressRange> task_ranges(std::size_t task, int split_letters, int max_level) {
    std::vector<AddressRange> out;
    for (int level = 0; level <= max_level; ++level) {
        if (level < split_letters) {
            if (task == 0) out.push_back({level, 0, std::uint64_t{1} << level});
            continue;
        }
        const int rest = level - split_letters;
        out.push_back({level, static_cast<std::uint64_t>(task) << rest,
                       static_cast<std::uint64_t>(task + 1) << rest});
    }
    return out;
}

template <class Key, class MakeKey>
LocalMap<Key> scan(const std::vector<AddressRange>& ranges, MakeKey&& make_key) {
    LocalMap<Key> local;
    for (const auto& r : ranges) {
        for (std::uint64_t pos = r.begin; pos < r.end; ++pos) {
            auto& w = local[make_key(r.level, pos)];
            const bool odd = r.level % 2 == 1;
            if (r.level == 0)
                w.root = true;
            else if (odd ? !w.odd : !w.even)
                w.record(Address::from_index(r.level, pos));
        }
    }
    return local;
}

}  // namespace

PatchSet enumerate_patches(const TreePrefix& tree, int n, int workers) {
    if (n < 1 || n > tree.depth())
        throw std::invalid_argument("patch depth " + std::to_string(n) + " not in [1, " +
                                    std::to_string(tree.depth()) + "]");
    const int max_level = tree.depth() - n;
    int split = 0;
    if (workers > 1)
        split = std::min(max_level, static_cast<int>(std::bit_width(static_cast<unsigned>(workers - 1))));
    const std::size_t tasks = std::size_t{1} << split;

    const std::size_t nodes = (std::size_t{1} << n) - 1;
    std::vector<std::pair<TreePrefix, PatchWitnesses>> merged_entries;

    if (nodes <= 64) {
        // small windows: key on the packed level-order bits
        auto key = [&](int level, std::uint64_t pos) {
            std::uint64_t k = 0;
            unsigned filled = 0;
            for (int j = 0; j < n; ++j) {
                const unsigned width = 1U << j;
                const std::size_t off = ((std::size_t{1} << (level + j)) - 1) + pos * width;
                k |= tree.bits().read_word(off, width) << filled;
                filled += width;
            }
            return k;
        };
        std::vector<LocalMap<std::uint64_t>> parts(tasks);
        parallel_for(tasks, workers, [&](std::size_t t) {
            parts[t] = scan<std::uint64_t>(task_ranges(t, split, max_level), key);
        });
        LocalMap<std::uint64_t> all;
        for (auto& part : parts)
            for (auto& [k, w] : part) all[k].merge(w);
        for (auto& [k, w] : all) {
            Bits bits(nodes);
            bits.write_word(0, k, static_cast<unsigned>(nodes));
            merged_entries.emplace_back(TreePrefix(n, std::move(bits)), std::move(w));
        }
    } else {
        auto key = [&](int level, std::uint64_t pos) { return tree.window(level, pos, n); };
        std::vector<LocalMap<TreePrefix>> parts(tasks);
        parallel_for(tasks, workers, [&](std::size_t t) {
            parts[t] = scan<TreePrefix>(task_ranges(t, split, max_level), key);
        });
        LocalMap<TreePrefix> all;
        for (auto& part : parts)
            for (auto& [k, w] : part) all[k].merge(w);
        merged_entries.reserve(all.size());
        for (auto& [k, w] : all) merged_entries.emplace_back(k, std::move(w));
    }
    PatchSet out(n, std::move(merged_entries));
    out.generation_depth = tree.depth();
    return out;
}

// ---------------------------------------------------------------------------
// Windows of a fixed point by address length

FixedPointWindows::FixedPointWindows(const Substreetution& s, Color root) : s_(s), root_(root) {
    if (!s_.fixes(root)) throw std::invalid_argument("root color is not fixed by the substitution");
    if (!s_.read_pair(Slot::A) || !s_.read_pair(Slot::B))
        throw std::invalid_argument("grammar " + s_.grammar_string() + " must use both slots");
}

std::uint32_t FixedPointWindows::intern(int size, TreePrefix p) {
    auto& pool = pools_[size];
    if (auto it = pool.ids.find(p); it != pool.ids.end()) return it->second;
    const auto id = static_cast<std::uint32_t>(pool.patches.size());
    pool.ids.emplace(p, id);
    pool.patches.push_back(std::move(p));
    return id;
}

std::optional<std::uint32_t> FixedPointWindows::lookup(int size, const TreePrefix& p) const {
    const auto pool = pools_.find(size);
    if (pool == pools_.end()) return std::nullopt;
    const auto it = pool->second.ids.find(p);
    if (it == pool->second.ids.end()) return std::nullopt;
    return it->second;
}

const TreePrefix& FixedPointWindows::patch(int size, std::uint32_t id) const {
    return pools_.at(size).patches.at(id);
}

Address FixedPointWindows::lift(const Address& w) const {
    const int qa = *s_.read_pair(Slot::A);
    const int qb = *s_.read_pair(Slot::B);
    std::vector<Letter> out;
    out.reserve(static_cast<std::size_t>(2 * w.length()));
    for (Letter l : w.letters()) {
        const int q = l == Letter::a ? qa : qb;
        out.push_back(static_cast<Letter>(q >> 1));
        out.push_back(static_cast<Letter>(q & 1));
    }
    return Address(std::move(out));
}

const std::vector<FixedPointWindows::Entry>& FixedPointWindows::level(int length, int size) {
    if (length < 0 || size < 1) throw std::invalid_argument("level windows need length >= 0, size >= 1");
    const auto key = std::make_pair(length, size);
    if (auto it = levels_.find(key); it != levels_.end()) return it->second;

    std::vector<Entry> out;
    std::unordered_set<std::uint32_t> seen;
    auto add = [&](TreePrefix p, Address w) {
        const auto id = intern(size, std::move(p));
        if (seen.insert(id).second) out.push_back({id, std::move(w)});
    };
    if (length == 0) {
        add(fixed_point(s_, root_, size), Address{});
    } else if (length % 2 == 0) {
        const int from = (size + 1) / 2;
        const auto& src = level(length / 2, from);
        for (const auto& e : src) add(apply_substitution(patch(from, e.id), s_, size), lift(e.witness));
    } else {
        const int from = (size + 2) / 2;
        const auto& src = level((length - 1) / 2, from);
        for (const auto& e : src) {
            const TreePrefix image = apply_substitution(patch(from, e.id), s_, size + 1);
            const Address base = lift(e.witness);
            for (Letter x : {Letter::a, Letter::b}) {
                Address w = base;
                w.push_back(x);
                add(shift(image, x), std::move(w));
            }
        }
    }
    return levels_.emplace(key, std::move(out)).first->second;
}

PatchSet FixedPointWindows::windows(int generation_depth, int size) {
    if (size < 1 || size > generation_depth)
        throw std::invalid_argument("window size " + std::to_string(size) + " not in [1, " +
                                    std::to_string(generation_depth) + "]");
    std::map<std::uint32_t, PatchWitnesses> found;
    for (int length = 0; length <= generation_depth - size; ++length)
        for (const auto& e : level(length, size)) found[e.id].record(e.witness);
    std::vector<std::pair<TreePrefix, PatchWitnesses>> entries;
    entries.reserve(found.size());
    for (auto& [id, w] : found) entries.emplace_back(patch(size, id), std::move(w));
    PatchSet out(size, std::move(entries));
    out.generation_depth = generation_depth;
    return out;
}

bool FixedPointWindows::size_closed(int generation_depth, int size) {
    const auto key = std::make_pair(generation_depth, size);
    if (auto it = closed_.find(key); it != closed_.end()) return it->second;

    std::unordered_set<std::uint32_t> even_ids;
    std::unordered_set<std::uint32_t> odd_ids;
    for (int length = 0; length <= generation_depth - size; ++length)
        for (const auto& e : level(length, size)) (length % 2 == 0 ? even_ids : odd_ids).insert(e.id);

    auto ids_up_to = [&](int sz) {
        std::vector<std::uint32_t> ids;
        std::unordered_set<std::uint32_t> seen;
        for (int length = 0; length <= generation_depth - sz; ++length)
            for (const auto& e : level(length, sz))
                if (seen.insert(e.id).second) ids.push_back(e.id);
        return ids;
    };
    auto in = [&](const std::unordered_set<std::uint32_t>& ids, const TreePrefix& p) {
        const auto id = lookup(size, p);
        return id && ids.contains(*id);
    };

    bool closed = true;
    const int from_even = (size + 1) / 2;
    for (auto id : ids_up_to(from_even)) {
        if (!in(even_ids, apply_substitution(patch(from_even, id), s_, size))) {
            closed = false;
            break;
        }
    }
    const int from_odd = (size + 2) / 2;
    if (closed) {
        for (auto id : ids_up_to(from_odd)) {
            const TreePrefix image = apply_substitution(patch(from_odd, id), s_, size + 1);
            if (!in(odd_ids, shift(image, Letter::a)) || !in(odd_ids, shift(image, Letter::b))) {
                closed = false;
                break;
            }
        }
    }
    closed_.emplace(key, closed);
    return closed;
}

FixedPointWindows::ClosureCheck FixedPointWindows::check_closure(int generation_depth, int max_size) {
    if (max_size < 1 || max_size > generation_depth)
        throw std::invalid_argument("closure check sizes must lie in [1, generation depth]");
    for (int size = 1; size <= max_size; ++size)
        if (!size_closed(generation_depth, size)) return {false, size};
    return {true, 0};
}

}  // namespace jacaranda
