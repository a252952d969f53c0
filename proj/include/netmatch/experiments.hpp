#pragma once

#include <cstdint>
#include <optional>
#include <string>
#include <vector>

#include "netmatch/dynamics.hpp"
#include "netmatch/generators.hpp"
#include "netmatch/graph.hpp"
#include "netmatch/structural.hpp"

namespace netmatch {

// -- BA vs HK Monte-Carlo comparison -----------------------------------------

struct SweepConfig {
    std::vector<std::size_t> sizes;
    std::size_t trials = 25;
    std::size_t m = 5;
    SeedGraph seed_graph = SeedGraph::Path;
    std::size_t ba_links = 2;
    std::size_t hk_attach_links = 1;
    std::size_t hk_triad_links = 1;
    TriadRule hk_triad_rule = TriadRule::Uniform;
    std::uint64_t master_seed = 1;
    /// Worker threads; 0 picks std::thread::hardware_concurrency().
    std::size_t jobs = 0;

    /// Sizes 100..600 step 100, 25 trials.
    static SweepConfig desk_scale();
    /// Sizes 100..1200 step 100, 100 trials.
    static SweepConfig paper_scale();

    GeneratorParams params(Model model, std::size_t n, std::size_t trial) const;

    /// Throws std::invalid_argument unless L == L1 + L1*L2 and all generator
    /// parameters are valid.
    void validate() const;
};

struct SweepRecord {
    Model model = Model::BA;
    std::size_t n = 0;
    std::size_t trial = 0;
    std::size_t deficiency = 0;
    double global_clustering = 0.0;
    double avg_degree = 0.0;
    double elapsed_seconds = 0.0;
};

/// One record per (model, n, trial), sorted in that order.
std::vector<SweepRecord> run_comparison_sweep(const SweepConfig& cfg);

/// Timing is excluded unless requested so that the output is a pure function
/// of the configuration.
std::string format_sweep_csv(const std::vector<SweepRecord>& records, bool include_timing = false);

struct SweepSummary {
    Model model = Model::BA;
    std::size_t n = 0;
    std::size_t trials = 0;
    double mean_deficiency = 0.0;
    double mean_clustering = 0.0;
    double mean_degree = 0.0;
};

std::vector<SweepSummary> summarize(const std::vector<SweepRecord>& records);

/// Spearman rank correlation with average ranks for ties.
double spearman(const std::vector<double>& x, const std::vector<double>& y);

// -- Single-realization report ------------------------------------------------

struct NetworkReport {
    Model model = Model::BA;
    std::size_t nodes = 0;
    std::size_t edges = 0;
    double avg_degree = 0.0;
    std::size_t deficiency = 0;
    double clustering = 0.0;
    std::vector<NodeId> unmatched;
};

NetworkReport analyze_network(const Graph& g, Model model);

struct Table1Report {
    std::uint64_t seed = 0;
    NetworkReport ba;
    NetworkReport hk;
};

/// Two 25-node networks grown from a 5-node path: BA with L = 2 and HK with
/// L1 = L2 = 1, both seeded from `seed`.
Table1Report run_table1_report(std::uint64_t seed);
std::string format_table1_json(const Table1Report& report);

// -- Augmentation sweep --------------------------------------------------------

struct Table2Row {
    std::size_t links = 0;
    std::size_t added = 0;
    std::size_t deficiency = 0;
    double clustering = 0.0;
    bool shortfall = false;
    std::optional<std::string> error;
};

/// Runs reduce_unmatched on a fresh copy of g for every requested T.
std::vector<Table2Row> run_table2_sweep(const Graph& g, const std::vector<std::size_t>& links,
                                        Recompute mode = Recompute::PerLink);
std::string format_table2_csv(const std::vector<Table2Row>& rows);

// -- Kalman observability check ---------------------------------------------

/// Final/initial MSEE window ratio below which a trace counts as bounded.
inline constexpr double kBoundedRatio = 10.0;
/// Final-window MSEE above which a trace counts as divergent.
inline constexpr double kDivergenceLevel = 1e6;

struct ObservabilityRun {
    std::vector<NodeId> measured;
    MseeTrace trace;
    double spectral_radius = 0.0;
    bool bounded = false;
    bool divergent = false;
};

/// Builds a random system on g measuring its unmatched nodes (minus the
/// node at `drop_index` in the unmatched list, if given) and filters it.
ObservabilityRun run_observability(const Graph& g, std::uint64_t seed, const KalmanOptions& kalman,
                                   std::optional<std::size_t> drop_index = std::nullopt,
                                   const SystemOptions& system = {});

}  // namespace netmatch
