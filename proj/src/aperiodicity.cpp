#include "jacaranda/aperiodicity.hpp"

#include "jacaranda/parallel.hpp"
#include "jacaranda/sbtr.hpp"

#include <algorithm>
#include <map>
#include <set>
#include <stdexcept>

namespace jacaranda {

bool parity_obstruction(const Address& w) {
    if (w.empty()) throw std::invalid_argument("the empty word stabilizes every tree; nothing to refute");
    return w.length() % 2 == 1;
}

Halving halve_candidate(const Address& w, ParityCase parity, const Substreetution& s) {
    if (w.empty() || w.length() % 2 != 0)
        throw std::invalid_argument("halving needs an even, nonempty word, got " + w.to_string());
    if (parity == ParityCase::even) return {source_word(w, s), false};
    return {w.rotate_left(), true};
}

std::vector<TreePrefix> overlap_candidates(const Address& w, const PatchSet& patches) {
    const int d = patches.patch_depth();
    if (w.length() >= d)
        throw std::invalid_argument("patch depth " + std::to_string(d) + " must exceed |w| = " +
                                    std::to_string(w.length()));
    std::vector<TreePrefix> out;
    for (const auto& p : patches.patches())
        if (shift(p, w) == p.truncated(d - w.length())) out.push_back(p);
    return out;
}

std::string to_string(Outcome o) {
    switch (o) {
        case Outcome::parity_obstruction: return "parity_obstruction";
        case Outcome::refuted: return "refuted";
        case Outcome::reduced: return "reduced";
        case Outcome::candidates_remain: break;
    }
    return "candidates_remain";
}

Outcome outcome_from_string(std::string_view s) {
    for (Outcome o : {Outcome::parity_obstruction, Outcome::refuted, Outcome::reduced, Outcome::candidates_remain})
        if (to_string(o) == s) return o;
    throw std::invalid_argument("unknown outcome '" + std::string(s) + "'");
}

Certificate refute_at_depth(const Address& w, const PatchSet& k) {
    Certificate c;
    c.omega = w;
    if (parity_obstruction(w)) {
        c.outcome = Outcome::parity_obstruction;
        return c;
    }
    c.depth = k.patch_depth();
    c.candidates = overlap_candidates(w, k);
    c.outcome = c.candidates.empty() ? Outcome::refuted : Outcome::candidates_remain;
    return c;
}

Certificate refute_at_depth(const Address& w, const CertifiedPatches& k) {
    if (!k.stabilized)
        throw std::invalid_argument("patch set of depth " + std::to_string(k.patches.patch_depth()) +
                                    " is not certified complete; refusing to refute on it");
    return refute_at_depth(w, k.patches);
}

std::size_t SweepReport::unresolved() const noexcept {
    return static_cast<std::size_t>(std::count_if(certificates.begin(), certificates.end(),
                                                  [](const Certificate& c) { return !c.certified(); }));
}

const Certificate& SweepReport::at(const Address& w) const {
    for (const auto& c : certificates)
        if (c.omega == w) return c;
    throw std::out_of_range("no certificate for " + w.to_string());
}

namespace {

std::vector<ParityCase> branches_for(const std::vector<TreePrefix>& candidates) {
    if (candidates.empty()) return {ParityCase::even, ParityCase::odd};
    bool any_even = false;
    bool any_odd = false;
    for (const auto& p : candidates) {
        const TypeTag t = parity_from_patch(p);
        if (t.is_odd())
            any_odd = true;
        else if (t.is_even())
            any_even = true;
        else
            return {ParityCase::even, ParityCase::odd};
    }
    std::vector<ParityCase> out;
    if (any_even) out.push_back(ParityCase::even);
    if (any_odd) out.push_back(ParityCase::odd);
    return out;
}

ReductionBranch reduce(const Address& w, ParityCase parity, const Substreetution& s) {
    ReductionBranch b;
    b.parity = parity;
    Halving h = halve_candidate(w, parity, s);
    b.chain.push_back(h.word);
    if (h.rotation) b.chain.push_back(halve_candidate(h.word, ParityCase::even, s).word);
    return b;
}

// candidates at depth d + 2 must cut down to candidates at depth d
void check_monotone(const std::vector<TreePrefix>& deeper, const std::vector<TreePrefix>& shallower, int depth,
                    const Address& w) {
    const std::set<TreePrefix> prev(shallower.begin(), shallower.end());
    for (const auto& p : deeper)
        if (!prev.contains(p.truncated(depth)))
            throw std::logic_error("overlap candidates for " + w.to_string() + " are not monotone at depth " +
                                   std::to_string(depth));
}

}  // namespace

SweepReport sweep(FixedPointWindows& windows, const SweepOptions& options) {
    if (options.max_length < 1) throw std::invalid_argument("max word length must be >= 1");
    if (options.max_depth <= options.max_length)
        throw std::invalid_argument("max depth must exceed the max word length");

    const Substreetution& s = windows.substitution();
    std::map<int, CertifiedPatches> sets;
    for (int len = 2; len <= options.max_length; len += 2)
        for (int d = len + 4; d <= options.max_depth; d += 2)
            if (!sets.contains(d)) sets.emplace(d, certified_patches(windows, d, options.kappa));

    SweepReport report;
    report.max_length = options.max_length;
    report.max_depth = options.max_depth;
    std::map<Address, const Certificate*> done;

    for (int len = 1; len <= options.max_length; ++len) {
        const auto words = words_of_length(len);
        std::vector<Certificate> certs(words.size());
        parallel_for(words.size(), options.workers, [&](std::size_t i) {
            const Address& w = words[i];
            Certificate c;
            c.omega = w;
            if (parity_obstruction(w)) {
                c.outcome = Outcome::parity_obstruction;
                certs[i] = std::move(c);
                return;
            }
            std::vector<TreePrefix> prev;
            int last = 0;
            for (int d = len + 4; d <= options.max_depth; d += 2) {
                const auto& k = sets.at(d);
                if (!k.stabilized) continue;
                Certificate at_d = refute_at_depth(w, k);
                if (last > 0) check_monotone(at_d.candidates, prev, last, w);
                if (at_d.outcome == Outcome::refuted) {
                    certs[i] = std::move(at_d);
                    return;
                }
                prev = std::move(at_d.candidates);
                last = d;
            }
            c.depth = last;
            bool all_certified = true;
            for (ParityCase p : branches_for(prev)) {
                ReductionBranch b = reduce(w, p, s);
                const auto it = done.find(b.target());
                all_certified = all_certified && it != done.end() && it->second->certified();
                c.reduction.push_back(std::move(b));
            }
            if (all_certified) {
                c.outcome = Outcome::reduced;
            } else {
                c.outcome = Outcome::candidates_remain;
                c.candidates = std::move(prev);
            }
            certs[i] = std::move(c);
        });
        for (auto& c : certs) report.certificates.push_back(std::move(c));
        // the vector may have moved; refresh every pointer
        for (std::size_t i = 0; i < report.certificates.size(); ++i)
            done[report.certificates[i].omega] = &report.certificates[i];
    }
    return report;
}

SweepReport sweep(const SweepOptions& options) {
    FixedPointWindows w(Substreetution::jacaranda(), 0);
    return sweep(w, options);
}

ReplayResult replay(const SweepReport& report, FixedPointWindows& windows, const KappaOptions& options) {
    ReplayResult r;
    const Substreetution& s = windows.substitution();
    std::map<int, CertifiedPatches> sets;
    auto patches = [&](int d) -> const CertifiedPatches& {
        auto it = sets.find(d);
        if (it == sets.end()) it = sets.emplace(d, certified_patches(windows, d, options)).first;
        return it->second;
    };
    auto fail = [&](const Certificate& c, const std::string& why) {
        r.mismatches.push_back(c.omega.to_string() + ": " + why);
    };

    for (const auto& c : report.certificates) {
        ++r.checked;
        if (c.omega.empty()) {
            fail(c, "empty word");
            continue;
        }
        const bool odd = parity_obstruction(c.omega);
        if (c.outcome == Outcome::parity_obstruction) {
            if (!odd) fail(c, "parity obstruction claimed for an even word");
            continue;
        }
        if (odd) {
            fail(c, "odd word without parity obstruction");
            continue;
        }
        if (c.depth != 0 && c.depth <= c.omega.length()) {
            fail(c, "depth " + std::to_string(c.depth) + " does not exceed |w|");
            continue;
        }
        std::vector<TreePrefix> candidates;
        if (c.depth > c.omega.length()) {
            const auto& k = patches(c.depth);
            if (!k.stabilized) {
                fail(c, "patch set at depth " + std::to_string(c.depth) + " does not certify");
                continue;
            }
            candidates = refute_at_depth(c.omega, k).candidates;
        }
        switch (c.outcome) {
            case Outcome::refuted:
                if (!candidates.empty()) fail(c, "candidates survive at depth " + std::to_string(c.depth));
                break;
            case Outcome::candidates_remain:
                if (candidates != c.candidates) fail(c, "candidate list differs");
                break;
            case Outcome::reduced: {
                std::vector<ReductionBranch> expect;
                for (ParityCase p : branches_for(candidates)) expect.push_back(reduce(c.omega, p, s));
                if (expect != c.reduction) fail(c, "reduction branches differ");
                for (const auto& b : c.reduction) {
                    const auto it = std::find_if(report.certificates.begin(), report.certificates.end(),
                                                 [&](const Certificate& x) { return x.omega == b.target(); });
                    if (it == report.certificates.end() || !it->certified())
                        fail(c, "reduction target " + b.target().to_string() + " is not certified");
                }
                break;
            }
            case Outcome::parity_obstruction: break;
        }
    }
    return r;
}

// ---------------------------------------------------------------------------

nlohmann::json to_json(const Certificate& c) {
    nlohmann::json j{{"omega", c.omega.to_string()}, {"outcome", to_string(c.outcome)}, {"depth", c.depth}};
    if (!c.candidates.empty()) {
        nlohmann::json list = nlohmann::json::array();
        for (const auto& p : c.candidates) list.push_back(patch_to_hex(p));
        j["candidates"] = list;
    }
    if (!c.reduction.empty()) {
        nlohmann::json chain = nlohmann::json::array();
        for (const auto& b : c.reduction) {
            nlohmann::json words = nlohmann::json::array();
            for (const auto& w : b.chain) words.push_back(w.to_string());
            chain.push_back({{"parity", b.parity == ParityCase::even ? "even" : "odd"}, {"words", words}});
        }
        j["reduction_chain"] = chain;
    }
    return j;
}

Certificate certificate_from_json(const nlohmann::json& doc) {
    try {
        Certificate c;
        c.omega = Address::parse(doc.at("omega").get<std::string>());
        c.outcome = outcome_from_string(doc.at("outcome").get<std::string>());
        c.depth = doc.at("depth").get<int>();
        if (doc.contains("candidates"))
            for (const auto& p : doc.at("candidates")) c.candidates.push_back(patch_from_hex(p.get<std::string>()));
        if (doc.contains("reduction_chain")) {
            for (const auto& b : doc.at("reduction_chain")) {
                ReductionBranch br;
                const auto parity = b.at("parity").get<std::string>();
                if (parity != "even" && parity != "odd") throw std::invalid_argument("bad parity " + parity);
                br.parity = parity == "even" ? ParityCase::even : ParityCase::odd;
                for (const auto& w : b.at("words")) br.chain.push_back(Address::parse(w.get<std::string>()));
                if (br.chain.empty()) throw std::invalid_argument("empty reduction chain");
                c.reduction.push_back(std::move(br));
            }
        }
        return c;
    } catch (const nlohmann::json::exception& e) {
        throw std::invalid_argument(std::string("malformed certificate: ") + e.what());
    }
}

nlohmann::json to_json(const SweepReport& r) {
    nlohmann::json certs = nlohmann::json::array();
    for (const auto& c : r.certificates) certs.push_back(to_json(c));
    return {{"max_length", r.max_length},
            {"max_depth", r.max_depth},
            {"unresolved", r.unresolved()},
            {"certificates", certs}};
}

SweepReport sweep_report_from_json(const nlohmann::json& doc) {
    try {
        SweepReport r;
        r.max_length = doc.at("max_length").get<int>();
        r.max_depth = doc.at("max_depth").get<int>();
        for (const auto& c : doc.at("certificates")) r.certificates.push_back(certificate_from_json(c));
        return r;
    } catch (const nlohmann::json::exception& e) {
        throw std::invalid_argument(std::string("malformed sweep report: ") + e.what());
    }
}

}  // namespace jacaranda
