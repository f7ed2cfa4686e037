// jacaranda: generate fixed-point prefixes, patch-complexity tables,
// stabilizer certificates and entropy reports.
//
// Exit status: 0 when every check passed and every row is certified,
// 1 when something is unresolved, unstabilized or failed, 2 on usage or I/O
// errors.

#include "jacaranda/aperiodicity.hpp"
#include "jacaranda/complexity.hpp"
#include "jacaranda/entropy.hpp"
#include "jacaranda/sbtr.hpp"
#include "jacaranda/substitution.hpp"

#include <CLI11.hpp>
#include <json.hpp>

#include <cstdlib>
#include <filesystem>
#include <fstream>
#include <iostream>
#include <sstream>
#include <string>

namespace fs = std::filesystem;
using namespace jacaranda;

namespace {

constexpr int kExitOk = 0;
constexpr int kExitUnresolved = 1;
constexpr int kExitUsage = 2;

// Every knob any command reads. All of them go into the report header, so a
// report can be regenerated from its own first lines.
struct RunConfig {
    std::string command;
    int depth = 0;
    int root = 0;
    int n_max = 18;
    int p = 2;
    int bufetov_n_max = 8;
    int max_length = 4;
    int max_depth = 14;
    int workers = 1;
    int cap = 26;            // materialized depth for gen
    int generation_cap = 128;  // address depth for patch certification
    bool verify = false;
    std::string replay;
    std::string cache_dir = "jacaranda-cache";
    std::string format = "csv";
    std::string out;

    [[nodiscard]] nlohmann::json to_json() const {
        nlohmann::json j{{"command", command}, {"root", root}, {"workers", workers}, {"cache_dir", cache_dir},
                         {"format", format}, {"out", out.empty() ? "-" : out}};
        if (command == "gen") {
            j["depth"] = depth;
            j["cap"] = cap;
        } else if (command == "kappa") {
            j["nmax"] = n_max;
            j["verify"] = verify;
            j["generation_cap"] = generation_cap;
        } else if (command == "stabilizers") {
            j["L"] = max_length;
            j["Dmax"] = max_depth;
            j["generation_cap"] = generation_cap;
            j["replay"] = replay.empty() ? "-" : replay;
        } else if (command == "entropy") {
            j["nmax"] = n_max;
            j["p"] = p;
            j["bufetov_nmax"] = bufetov_n_max;
            j["generation_cap"] = generation_cap;
        }
        return j;
    }

    [[nodiscard]] std::string header() const {
        std::ostringstream h;
        h << "# jacaranda " << command << '\n';
        const nlohmann::json j = to_json();
        for (const auto& [key, value] : j.items()) h << "# " << key << " = " << value.dump() << '\n';
        return h.str();
    }

    [[nodiscard]] KappaOptions kappa_options() const {
        KappaOptions o;
        o.depth_cap = generation_cap;
        o.workers = workers;
        return o;
    }
};

struct UsageError : std::runtime_error {
    using std::runtime_error::runtime_error;
};

void emit(const RunConfig& cfg, const std::string& body) {
    if (cfg.out.empty() || cfg.out == "-") {
        std::cout << body;
        return;
    }
    std::ofstream f(cfg.out, std::ios::binary);
    if (!f) throw std::runtime_error("cannot write " + cfg.out);
    f << body;
    if (!f) throw std::runtime_error("write failed: " + cfg.out);
}

// JSON reports carry the config inline, CSV reports as comment lines.
std::string render(const RunConfig& cfg, nlohmann::json doc, const std::string& csv) {
    if (cfg.format == "json") {
        doc["config"] = cfg.to_json();
        return doc.dump(2) + '\n';
    }
    return cfg.header() + csv;
}

std::string checks_csv(const CheckReport& r) {
    std::ostringstream out;
    out << "check,n,lhs,rhs,holds,exempt,statement\n";
    for (const auto& c : r.checks)
        out << c.name << ',' << c.n << ',' << c.lhs << ',' << c.rhs << ',' << (c.holds ? "true" : "false") << ','
            << (c.exempt ? "true" : "false") << ",\"" << c.statement << "\"\n";
    return out.str();
}

int cmd_gen(const RunConfig& cfg) {
    if (cfg.depth < 1) throw UsageError("--depth must be >= 1");
    if (cfg.depth > cfg.cap)
        throw UsageError("depth " + std::to_string(cfg.depth) + " exceeds the cap " + std::to_string(cfg.cap) +
                         " (raise --cap)");
    fs::path path = cfg.out;
    if (path.empty()) {
        fs::create_directories(cfg.cache_dir);
        path = fs::path(cfg.cache_dir) /
               ("jacaranda-r" + std::to_string(cfg.root) + "-d" + std::to_string(cfg.depth) + ".sbtr");
    }
    const TreePrefix t = fixed_point(Substreetution::jacaranda(), static_cast<Color>(cfg.root), cfg.depth);
    write_sbtr(path, t);

    std::cout << cfg.header();
    std::cout << "file = " << path.string() << '\n';
    std::cout << "bytes = " << fs::file_size(path) << '\n';
    std::cout << "nodes = " << t.node_count() << '\n';
    for (int k = 0; k < std::min(4, t.depth()); ++k) std::cout << "line " << k << " = " << line(t, k).to_string() << '\n';
    return kExitOk;
}

int cmd_kappa(const RunConfig& cfg) {
    if (cfg.n_max < 2) throw UsageError("--nmax must be >= 2");
    const KappaTable table =
        kappa_table(Substreetution::jacaranda(), static_cast<Color>(cfg.root), cfg.n_max, cfg.kappa_options());
    bool ok = table.all_stabilized();
    for (const auto& r : table.rows)
        if (!r.stabilized)
            std::cerr << "kappa_" << r.n << ": not certified up to generation depth " << r.generation_depth << '\n';

    nlohmann::json doc{{"kappa", to_json(table)}};
    std::string csv = to_csv(table);
    if (cfg.verify) {
        CheckReport report = check_inequalities(table);
        if (table.n_max() >= 3) report.append(verify_v_sequence(VSequence(4, static_cast<std::int64_t>(table.kappa(3)), 100)));
        doc["checks"] = to_json(report);
        csv += "\n# checks: " + std::to_string(report.checks.size()) + ", failed: " +
               std::to_string(report.failures()) + '\n' + checks_csv(report);
        for (const auto& c : report.failed())
            std::cerr << "failed " << c.name << " at n = " << c.n << ": " << c.statement << " (" << c.lhs << " vs "
                      << c.rhs << ")\n";
        ok = ok && report.ok();
    }
    emit(cfg, render(cfg, doc, csv));
    return ok ? kExitOk : kExitUnresolved;
}

std::string certificates_csv(const SweepReport& r) {
    std::ostringstream out;
    out << "omega,outcome,depth,candidates,reduction\n";
    for (const auto& c : r.certificates) {
        out << c.omega.to_string() << ',' << to_string(c.outcome) << ',' << c.depth << ',' << c.candidates.size()
            << ',';
        for (std::size_t i = 0; i < c.reduction.size(); ++i) {
            if (i) out << ' ';
            out << (c.reduction[i].parity == ParityCase::even ? "even:" : "odd:");
            for (std::size_t k = 0; k < c.reduction[i].chain.size(); ++k)
                out << (k ? ">" : "") << c.reduction[i].chain[k].to_string();
        }
        out << '\n';
    }
    return out.str();
}

nlohmann::json read_json(const std::string& path) {
    std::ifstream f(path);
    if (!f) throw std::runtime_error("cannot open " + path);
    try {
        return nlohmann::json::parse(f);
    } catch (const nlohmann::json::exception& e) {
        throw std::runtime_error(path + ": " + e.what());
    }
}

int cmd_stabilizers(const RunConfig& cfg) {
    auto windows = FixedPointWindows(Substreetution::jacaranda(), static_cast<Color>(cfg.root));
    if (!cfg.replay.empty()) {
        const nlohmann::json doc = read_json(cfg.replay);
        const SweepReport report = sweep_report_from_json(doc.contains("sweep") ? doc["sweep"] : doc);
        const ReplayResult result = replay(report, windows, cfg.kappa_options());
        for (const auto& m : result.mismatches) std::cerr << "mismatch " << m << '\n';
        std::cout << cfg.header();
        std::cout << "checked = " << result.checked << '\n';
        std::cout << "mismatches = " << result.mismatches.size() << '\n';
        std::cout << "unresolved = " << report.unresolved() << '\n';
        return result.ok() && report.ok() ? kExitOk : kExitUnresolved;
    }
    if (cfg.max_length < 1) throw UsageError("--L must be >= 1");
    SweepOptions o;
    o.max_length = cfg.max_length;
    o.max_depth = cfg.max_depth;
    o.workers = cfg.workers;
    o.kappa = cfg.kappa_options();
    const SweepReport report = sweep(windows, o);
    for (const auto& c : report.certificates)
        if (!c.certified()) std::cerr << "unresolved " << c.omega.to_string() << '\n';
    emit(cfg, render(cfg, {{"sweep", to_json(report)}}, certificates_csv(report)));
    return report.ok() ? kExitOk : kExitUnresolved;
}

int cmd_entropy(const RunConfig& cfg) {
    if (cfg.n_max < 2) throw UsageError("--nmax must be >= 2");
    if (cfg.p < 0 || cfg.p > 5) throw UsageError("--p must lie in [0, 5]");
    auto windows = FixedPointWindows(Substreetution::jacaranda(), static_cast<Color>(cfg.root));
    EntropyOptions o;
    o.n_max = cfg.n_max;
    o.p = cfg.p;
    o.bufetov_n_max = cfg.bufetov_n_max;
    o.bufetov_p = cfg.p;
    o.kappa = cfg.kappa_options();
    const EntropyReport report = entropy_report(windows, o);
    bool ok = report.table.all_stabilized();
    for (const auto& b : report.bufetov) ok = ok && b.stabilized;
    emit(cfg, render(cfg, to_json(report), to_csv(report)));
    return ok ? kExitOk : kExitUnresolved;
}

}  // namespace

int main(int argc, char** argv) {
    RunConfig cfg;
    CLI::App app{"Substitutions on colored binary trees: the Jacaranda fixed point"};
    app.require_subcommand(1);

    if (const char* env = std::getenv("JACARANDA_CACHE_DIR"); env && *env) cfg.cache_dir = env;
    app.add_option("--workers", cfg.workers, "Worker threads")->capture_default_str()->check(CLI::Range(1, 256));
    app.add_option("--cache-dir", cfg.cache_dir, "Cache directory (env JACARANDA_CACHE_DIR)")->capture_default_str();
    app.add_option("--format", cfg.format, "Report format")
        ->capture_default_str()
        ->check(CLI::IsMember({"csv", "json"}));
    app.add_option("--out", cfg.out, "Output path (default stdout)");
    app.add_option("--root", cfg.root, "Root color of the fixed point")->capture_default_str()->check(CLI::Range(0, 1));
    app.add_option("--cap", cfg.cap, "Largest depth gen will materialize")->capture_default_str();
    app.add_option("--generation-cap", cfg.generation_cap, "Largest address depth tried when certifying K_n")
        ->capture_default_str();

    auto* gen = app.add_subcommand("gen", "Write the depth-N prefix of the fixed point as an SBTR file");
    gen->add_option("--depth", cfg.depth, "Number of lines")->required();

    auto* kap = app.add_subcommand("kappa", "Certified patch-complexity table");
    kap->add_option("--nmax", cfg.n_max, "Largest n")->capture_default_str();
    kap->add_flag("--verify", cfg.verify, "Check the growth inequalities and embed the report");

    auto* stab = app.add_subcommand("stabilizers", "Certificates that no short word stabilizes a tree");
    stab->add_option("--L", cfg.max_length, "Longest word")->capture_default_str();
    stab->add_option("--Dmax", cfg.max_depth, "Deepest patch depth for direct refutation")->capture_default_str();
    stab->add_option("--replay", cfg.replay, "Recheck a JSON certificate bundle instead of sweeping");

    auto* ent = app.add_subcommand("entropy", "Entropy sequences, profile counts and the separated-set sandwich");
    ent->add_option("--nmax", cfg.n_max, "Largest n")->capture_default_str();
    ent->add_option("--p", cfg.p, "Resolution 2^-p")->capture_default_str();
    ent->add_option("--bufetov-nmax", cfg.bufetov_n_max, "Largest n for profile counts (0 skips them)")
        ->capture_default_str();

    // options may sit before or after the subcommand name
    for (auto* sub : {gen, kap, stab, ent}) sub->fallthrough();
    ent->callback([&] {
        if (ent->count("--nmax") == 0) cfg.n_max = 16;
    });

    try {
        app.parse(argc, argv);
    } catch (const CLI::CallForHelp& e) {
        return app.exit(e);
    } catch (const CLI::ParseError& e) {
        app.exit(e);
        return kExitUsage;
    }

    try {
        if (*gen) {
            cfg.command = "gen";
            return cmd_gen(cfg);
        }
        if (*kap) {
            cfg.command = "kappa";
            return cmd_kappa(cfg);
        }
        if (*stab) {
            cfg.command = "stabilizers";
            return cmd_stabilizers(cfg);
        }
        cfg.command = "entropy";
        return cmd_entropy(cfg);
    } catch (const UsageError& e) {
        std::cerr << "usage: " << e.what() << '\n';
        return kExitUsage;
    } catch (const std::exception& e) {
        std::cerr << "error: " << e.what() << '\n';
        return kExitUsage;
    }
}
