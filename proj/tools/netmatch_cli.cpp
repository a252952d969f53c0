// netmatch command-line driver. JSON summaries go to stdout, artifacts to
// files, diagnostics to stderr.

#include <cstdio>
#include <filesystem>
#include <fstream>
#include <iostream>
#include <optional>
#include <sstream>
#include <string>
#include <vector>

#include "CLI11.hpp"
#include "json.hpp"
#include "netmatch/dynamics.hpp"
#include "netmatch/experiments.hpp"
#include "netmatch/generators.hpp"
#include "netmatch/graph.hpp"
#include "netmatch/ingest.hpp"
#include "netmatch/matching.hpp"
#include "netmatch/structural.hpp"

namespace fs = std::filesystem;
using json = nlohmann::ordered_json;
using namespace netmatch;

namespace {

enum Exit : int {
    kOk = 0,
    kFailure = 1,
    kUsage = 2,
    kInfeasible = 3,
    kShortfall = 4,
    kCheckMismatch = 5,
};

bool g_quiet = false;

void log(const std::string& msg) {
    if (!g_quiet) std::cerr << "netmatch: " << msg << '\n';
}

const auto kAtLeastOne = CLI::Range(std::size_t{1}, std::size_t{1} << 40);

/// Output paths must have an existing parent directory; checked up front so
/// that no work is done for a run that cannot write its result.
const auto kWritablePath = CLI::Validator(
    [](std::string& path) -> std::string {
        const fs::path parent = fs::absolute(fs::path(path)).parent_path();
        if (!fs::is_directory(parent)) return "directory does not exist: " + parent.string();
        return {};
    },
    "WRITABLE", "writable path");

void write_file(const std::string& path, const std::string& content) {
    std::ofstream out(path, std::ios::binary);
    if (!out) throw std::runtime_error("cannot open " + path + " for writing");
    out << content;
    if (!out) throw std::runtime_error("write failed: " + path);
}

/// Resolves the input graph: an explicit path, or the Route-views file under
/// $NETMATCH_DATA_DIR when `route_views` is set.
LoadedGraph load_input(const std::string& path, bool route_views) {
    if (route_views) {
        const auto found = find_route_views();
        if (!found) {
            throw std::runtime_error(std::string("Route-views file ") + kRouteViewsFile +
                                     " not found; set NETMATCH_DATA_DIR");
        }
        auto loaded = load_edge_list(*found);
        if (loaded.stats.nodes != kRouteViewsNodes || loaded.stats.edges != kRouteViewsEdges) {
            throw std::runtime_error("Route-views file has " + std::to_string(loaded.stats.nodes) +
                                     " nodes / " + std::to_string(loaded.stats.edges) +
                                     " edges, expected 6474 / 13895");
        }
        return loaded;
    }
    if (path.empty()) throw CLI::ValidationError("input", "an input edge list or --route-views is required");
    return load_edge_list(fs::path(path));
}

std::int64_t original_id(const LoadedGraph& lg, NodeId i) {
    return lg.id_map.empty() ? static_cast<std::int64_t>(i) : lg.id_map[i];
}

json edge_json(const LoadedGraph& lg, const Edge& e) {
    return json::array({original_id(lg, e.u), original_id(lg, e.v)});
}

// -- generate -----------------------------------------------------------------

struct GenerateArgs {
    std::string model = "ba";
    std::size_t n = 100;
    std::size_t m = 5;
    std::string seed_graph = "path";
    std::size_t links = 2;
    std::size_t l1 = 1;
    std::size_t l2 = 1;
    std::string triad = "uniform";
    std::uint64_t seed = 1;
    std::string out;
};

int cmd_generate(const GenerateArgs& a) {
    GeneratorParams p;
    p.model = parse_model(a.model);
    p.n = a.n;
    p.m = a.m;
    p.seed_graph = parse_seed_graph(a.seed_graph);
    p.links = a.links;
    p.attach_links = a.l1;
    p.triad_links = a.l2;
    p.triad_rule = parse_triad_rule(a.triad);
    p.rng_seed = a.seed;
    try {
        p.validate();
    } catch (const std::invalid_argument& e) {
        std::cerr << "netmatch generate: " << e.what() << '\n';
        return kUsage;
    }
    GeneratorStats stats;
    const Graph g = generate(p, &stats);
    write_file(a.out, save_edge_list(g));
    log("wrote " + a.out);

    json j;
    j["model"] = std::string(to_string(p.model));
    j["n"] = g.node_count();
    j["edges"] = g.edge_count();
    j["avg_degree"] = g.average_degree();
    j["seed"] = a.seed;
    if (p.model == Model::HK) {
        j["triad_rule"] = std::string(to_string(p.triad_rule));
        j["triad_fallbacks"] = stats.triad_fallbacks;
    }
    j["exhausted_links"] = stats.exhausted_links;
    j["out"] = a.out;
    std::cout << j.dump(2) << '\n';
    return kOk;
}

// -- analyze ------------------------------------------------------------------

struct AnalyzeArgs {
    std::string input;
    bool route_views = false;
    bool check = false;
    std::size_t sample = 10;
};

int cmd_analyze(const AnalyzeArgs& a) {
    const LoadedGraph lg = load_input(a.input, a.route_views);
    const Graph& g = lg.graph;
    const auto mr = maximum_matching(g);

    json j;
    j["nodes"] = g.node_count();
    j["edges"] = g.edge_count();
    j["avg_degree"] = g.average_degree();
    j["deficiency"] = mr.deficiency;
    json sample = json::array();
    for (std::size_t k = 0; k < mr.unmatched_minus.size() && k < a.sample; ++k) {
        sample.push_back(original_id(lg, mr.unmatched_minus[k]));
    }
    j["unmatched_sample"] = sample;
    j["clustering"] = global_clustering(g);
    j["self_loops_dropped"] = lg.stats.self_loops_dropped;
    j["duplicates_collapsed"] = lg.stats.duplicates_collapsed;

    int status = kOk;
    if (a.check) {
        if (g.node_count() > kHallOreMaxNodes) {
            log("--check skipped: brute force is limited to " + std::to_string(kHallOreMaxNodes) + " nodes");
            j["check"] = "skipped";
        } else {
            const std::size_t oracle = hall_ore_deficiency_bruteforce(g);
            j["hall_ore_deficiency"] = oracle;
            j["check"] = oracle == mr.deficiency ? "pass" : "fail";
            if (oracle != mr.deficiency) status = kCheckMismatch;
        }
    }
    std::cout << j.dump(2) << '\n';
    return status;
}

// -- augment ------------------------------------------------------------------

struct AugmentArgs {
    std::string input;
    bool route_views = false;
    std::size_t links = 0;
    std::string out;
    std::string plan;
    std::string mode = "per-link";
};

int cmd_augment(const AugmentArgs& a) {
    LoadedGraph lg = load_input(a.input, a.route_views);
    AugmentationPlan plan;
    try {
        plan = reduce_unmatched(lg.graph, a.links, parse_recompute(a.mode));
    } catch (const InfeasibleLinkCount& e) {
        std::cerr << "netmatch augment: T=" << e.requested() << " exceeds the maximum of "
                  << e.bound() << " links (sum of floor(|C_i|/2) over contractions)\n";
        json j;
        j["error"] = "infeasible";
        j["requested"] = e.requested();
        j["max_links"] = e.bound();
        std::cout << j.dump(2) << '\n';
        return kInfeasible;
    }

    write_file(a.out, save_edge_list(lg.graph, lg.id_map.empty() ? nullptr : &lg.id_map));
    if (!a.plan.empty()) {
        AugmentationPlan remapped = plan;
        for (auto& e : remapped.added_edges) {
            e.u = static_cast<NodeId>(original_id(lg, e.u));
            e.v = static_cast<NodeId>(original_id(lg, e.v));
        }
        write_file(a.plan, format_plan(remapped));
    }

    json j;
    j["requested"] = plan.requested;
    j["added"] = plan.added_edges.size();
    j["mode"] = a.mode;
    j["max_links"] = plan.max_addable;
    j["before"] = {{"deficiency", plan.deficiency_before}, {"clustering", plan.clustering_before}};
    j["after"] = {{"deficiency", plan.deficiency_after}, {"clustering", plan.clustering_after}};
    json edges = json::array();
    for (const auto& e : plan.added_edges) edges.push_back(edge_json(lg, e));
    j["added_edges"] = edges;
    j["rejected_proposals"] = plan.rejected_proposals;
    j["shortfall"] = plan.shortfall;
    std::cout << j.dump(2) << '\n';
    if (plan.shortfall) {
        log("placed " + std::to_string(plan.added_edges.size()) + " of " + std::to_string(plan.requested) +
            " links; partial plan written");
        return kShortfall;
    }
    return kOk;
}

// -- kalman -------------------------------------------------------------------

struct KalmanArgs {
    std::string input;
    std::uint64_t seed = 1;
    std::size_t horizon = 200;
    std::size_t trials = 50;
    std::optional<std::size_t> drop;
    double rho = 1.2;
    std::string diagonal = "random";
    double self_weight = 1.1;
    std::size_t max_nodes = 500;
    std::string out;
};

int cmd_kalman(const KalmanArgs& a) {
    const LoadedGraph lg = load_input(a.input, false);
    if (lg.graph.node_count() > a.max_nodes) {
        std::cerr << "netmatch kalman: " << lg.graph.node_count() << " nodes exceeds --max-nodes "
                  << a.max_nodes << " (dense filter)\n";
        return kUsage;
    }
    SystemOptions sys;
    sys.rho_target = a.rho;
    sys.diagonal = parse_diagonal_policy(a.diagonal);
    sys.self_weight = a.self_weight;
    KalmanOptions ko;
    ko.horizon = a.horizon;
    ko.trials = a.trials;
    const auto run = run_observability(lg.graph, a.seed, ko, a.drop, sys);
    write_file(a.out, format_msee_csv(run.trace));

    json j;
    json measured = json::array();
    for (NodeId i : run.measured) measured.push_back(original_id(lg, i));
    j["measured"] = measured;
    j["q"] = run.measured.size();
    j["spectral_radius"] = run.spectral_radius;
    j["diagonal"] = a.diagonal;
    j["growth_ratio"] = run.trace.growth_ratio();
    j["final_window_mean"] = run.trace.final_window_mean();
    j["bounded"] = run.bounded;
    j["divergent"] = run.divergent;
    j["out"] = a.out;
    std::cout << j.dump(2) << '\n';
    return kOk;
}

// -- sweep, table1, table2 ----------------------------------------------------

struct SweepArgs {
    bool paper_scale = false;
    std::vector<std::size_t> sizes;
    std::optional<std::size_t> trials;
    std::uint64_t seed = 1;
    std::size_t jobs = 0;
    std::string triad = "uniform";
    bool timing = false;
    std::string out;
};

int cmd_sweep(const SweepArgs& a) {
    SweepConfig cfg = a.paper_scale ? SweepConfig::paper_scale() : SweepConfig::desk_scale();
    if (!a.sizes.empty()) cfg.sizes = a.sizes;
    if (a.trials) cfg.trials = *a.trials;
    cfg.master_seed = a.seed;
    cfg.jobs = a.jobs;
    cfg.hk_triad_rule = parse_triad_rule(a.triad);
    try {
        cfg.validate();
    } catch (const std::invalid_argument& e) {
        std::cerr << "netmatch sweep: " << e.what() << '\n';
        return kUsage;
    }
    log("sweeping " + std::to_string(cfg.sizes.size()) + " sizes x " + std::to_string(cfg.trials) + " trials");
    const auto records = run_comparison_sweep(cfg);
    write_file(a.out, format_sweep_csv(records, a.timing));

    json j;
    j["config"] = {{"trials", cfg.trials},      {"m", cfg.m},
                   {"L", cfg.ba_links},         {"L1", cfg.hk_attach_links},
                   {"L2", cfg.hk_triad_links},  {"triad_rule", std::string(to_string(cfg.hk_triad_rule))},
                   {"master_seed", cfg.master_seed}};
    json rows = json::array();
    for (const auto& s : summarize(records)) {
        rows.push_back({{"model", std::string(to_string(s.model))},
                        {"n", s.n},
                        {"mean_deficiency", s.mean_deficiency},
                        {"mean_clustering", s.mean_clustering},
                        {"mean_degree", s.mean_degree}});
    }
    j["summary"] = rows;
    j["out"] = a.out;
    std::cout << j.dump(2) << '\n';
    return kOk;
}

int cmd_table1(std::uint64_t seed, const std::string& out) {
    const std::string text = format_table1_json(run_table1_report(seed));
    if (!out.empty()) write_file(out, text);
    std::cout << text;
    return kOk;
}

struct Table2Args {
    std::string input;
    bool route_views = false;
    std::vector<std::size_t> links{0, 20, 40, 60, 80, 100, 120};
    std::string mode = "per-link";
    std::string out;
};

int cmd_table2(const Table2Args& a) {
    const LoadedGraph lg = load_input(a.input, a.route_views);
    const auto rows = run_table2_sweep(lg.graph, a.links, parse_recompute(a.mode));
    if (!a.out.empty()) write_file(a.out, format_table2_csv(rows));
    json j = json::array();
    bool ok = true;
    for (const auto& r : rows) {
        json row = {{"links", r.links},
                    {"added", r.added},
                    {"deficiency", r.deficiency},
                    {"clustering", r.clustering},
                    {"shortfall", r.shortfall}};
        if (r.error) {
            row["error"] = *r.error;
            ok = false;
        }
        ok = ok && !r.shortfall;
        j.push_back(row);
    }
    std::cout << j.dump(2) << '\n';
    return ok ? kOk : kShortfall;
}

}  // namespace

int main(int argc, char** argv) {
    CLI::App app{"Unmatched nodes, clustering and link addition for undirected networks"};
    app.set_config("--config", "", "TOML/INI file with option values");
    app.add_flag("-q,--quiet", g_quiet, "Suppress log messages on stderr");
    app.require_subcommand(1);
    app.fallthrough();

    GenerateArgs gen;
    auto* g = app.add_subcommand("generate", "Grow a BA or HK network and write it as an edge list");
    g->add_option("--model", gen.model, "ba or hk")->check(CLI::IsMember({"ba", "hk"}));
    g->add_option("--n", gen.n, "Final number of nodes")->check(kAtLeastOne);
    g->add_option("--m", gen.m, "Seed graph size")->check(CLI::Range(std::size_t{2}, std::size_t{1} << 40));
    g->add_option("--seed-graph", gen.seed_graph, "path, cycle or complete")
        ->check(CLI::IsMember({"path", "cycle", "complete"}));
    g->add_option("--L", gen.links, "BA links per new node")->check(kAtLeastOne);
    g->add_option("--L1", gen.l1, "HK preferential links per new node")->check(kAtLeastOne);
    g->add_option("--L2", gen.l2, "HK triad links per preferential link");
    g->add_option("--triad", gen.triad, "HK triad rule: uniform or degree")
        ->check(CLI::IsMember({"uniform", "degree"}));
    g->add_option("--seed", gen.seed, "RNG seed");
    g->add_option("-o,--out", gen.out, "Output edge list")->required()->check(kWritablePath);

    AnalyzeArgs an;
    auto* a = app.add_subcommand("analyze", "Deficiency, unmatched nodes and clustering of an edge list");
    a->add_option("input", an.input, "Edge list file")->check(CLI::ExistingFile);
    a->add_flag("--route-views", an.route_views, "Use $NETMATCH_DATA_DIR/as20000102.txt");
    a->add_flag("--check", an.check, "Verify the deficiency by brute force (n <= 22)");
    a->add_option("--sample", an.sample, "Unmatched nodes to list");

    AugmentArgs au;
    auto* u = app.add_subcommand("augment", "Add T links that close triplets inside contractions");
    u->add_option("input", au.input, "Edge list file")->check(CLI::ExistingFile);
    u->add_flag("--route-views", au.route_views, "Use $NETMATCH_DATA_DIR/as20000102.txt");
    u->add_option("-T,--links", au.links, "Number of links to add")->required();
    u->add_option("-o,--out", au.out, "Augmented edge list")->required()->check(kWritablePath);
    u->add_option("--plan", au.plan, "Plan file listing the added links")->check(kWritablePath);
    u->add_option("--mode", au.mode, "per-link or once")->check(CLI::IsMember({"per-link", "once"}));

    KalmanArgs ka;
    auto* k = app.add_subcommand("kalman", "Kalman filter MSEE when measuring the unmatched nodes");
    k->add_option("input", ka.input, "Edge list file")->required()->check(CLI::ExistingFile);
    k->add_option("--seed", ka.seed, "RNG seed for weights and noise");
    k->add_option("--horizon", ka.horizon, "Time steps")->check(kAtLeastOne);
    k->add_option("--trials", ka.trials, "Monte-Carlo trials")->check(kAtLeastOne);
    k->add_option("--drop", ka.drop, "Leave the i-th unmatched node unmeasured");
    k->add_option("--rho", ka.rho, "Target spectral radius")->check(CLI::PositiveNumber);
    k->add_option("--diagonal", ka.diagonal, "Self-weights: random, zero or uniform")
        ->check(CLI::IsMember({"random", "zero", "uniform"}));
    k->add_option("--self-weight", ka.self_weight, "Diagonal value for --diagonal uniform");
    k->add_option("--max-nodes", ka.max_nodes, "Refuse larger graphs");
    k->add_option("-o,--out", ka.out, "MSEE csv")->required()->check(kWritablePath);

    SweepArgs sw;
    auto* s = app.add_subcommand("sweep", "BA vs HK Monte-Carlo comparison");
    s->add_flag("--paper-scale", sw.paper_scale, "Sizes 100..1200, 100 trials");
    s->add_option("--sizes", sw.sizes, "Override network sizes")->delimiter(',');
    s->add_option("--trials", sw.trials, "Override trials per size");
    s->add_option("--seed", sw.seed, "Master seed");
    s->add_option("-j,--jobs", sw.jobs, "Worker threads (0 = all cores)");
    s->add_option("--triad", sw.triad, "HK triad rule")->check(CLI::IsMember({"uniform", "degree"}));
    s->add_flag("--timing", sw.timing, "Add a per-record elapsed column");
    s->add_option("-o,--out", sw.out, "Sweep csv")->required()->check(kWritablePath);

    std::uint64_t t1_seed = 1;
    std::string t1_out;
    auto* t1 = app.add_subcommand("table1", "Single-realization BA/HK report (25 nodes)");
    t1->add_option("--seed", t1_seed, "Seed");
    t1->add_option("-o,--out", t1_out, "Report json")->check(kWritablePath);

    Table2Args t2a;
    auto* t2 = app.add_subcommand("table2", "Deficiency and clustering after T added links, per T");
    t2->add_option("input", t2a.input, "Edge list file")->check(CLI::ExistingFile);
    t2->add_flag("--route-views", t2a.route_views, "Use $NETMATCH_DATA_DIR/as20000102.txt");
    t2->add_option("-T,--links", t2a.links, "Comma-separated T values")->delimiter(',');
    t2->add_option("--mode", t2a.mode, "per-link or once")->check(CLI::IsMember({"per-link", "once"}));
    t2->add_option("-o,--out", t2a.out, "Table csv")->check(kWritablePath);

    try {
        app.parse(argc, argv);
    } catch (const CLI::ParseError& e) {
        const int code = app.exit(e);
        return code == 0 ? kOk : kUsage;
    }

    try {
        if (g->parsed()) return cmd_generate(gen);
        if (a->parsed()) return cmd_analyze(an);
        if (u->parsed()) return cmd_augment(au);
        if (k->parsed()) return cmd_kalman(ka);
        if (s->parsed()) return cmd_sweep(sw);
        if (t1->parsed()) return cmd_table1(t1_seed, t1_out);
        if (t2->parsed()) return cmd_table2(t2a);
    } catch (const CLI::ValidationError& e) {
        std::cerr << "netmatch: " << e.what() << '\n';
        return kUsage;
    } catch (const ParseError& e) {
        std::cerr << "netmatch: parse error: " << e.what() << '\n';
        return kFailure;
    } catch (const std::exception& e) {
        std::cerr << "netmatch: " << e.what() << '\n';
        return kFailure;
    }
    return kUsage;
}
