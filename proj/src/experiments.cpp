#include "netmatch/experiments.hpp"

#include <algorithm>
#include <atomic>
#include <chrono>
#include <cmath>
#include <cstdio>
#include <map>
#include <numeric>
#include <sstream>
#include <stdexcept>
#include <thread>

#include "json.hpp"
#include "netmatch/matching.hpp"
#include "netmatch/rng.hpp"

namespace netmatch {

namespace {

std::string fmt_double(double v) {
    char buf[64];
    std::snprintf(buf, sizeof buf, "%.10g", v);
    return buf;
}

/// Runs task(i) for i in [0, count) on `jobs` threads.
template <typename Task>
void parallel_for(std::size_t count, std::size_t jobs, Task task) {
    if (jobs == 0) jobs = std::max(1u, std::thread::hardware_concurrency());
    jobs = std::min(jobs, count);
    if (jobs <= 1) {
        for (std::size_t i = 0; i < count; ++i) task(i);
        return;
    }
    std::atomic<std::size_t> next{0};
    std::exception_ptr failure;
    std::atomic<bool> failed{false};
    std::vector<std::thread> workers;
    workers.reserve(jobs);
    for (std::size_t w = 0; w < jobs; ++w) {
        workers.emplace_back([&] {
            for (std::size_t i = next++; i < count && !failed; i = next++) {
                try {
                    task(i);
                } catch (...) {
                    if (!failed.exchange(true)) failure = std::current_exception();
                }
            }
        });
    }
    for (auto& t : workers) t.join();
    if (failure) std::rethrow_exception(failure);
}

}  // namespace

SweepConfig SweepConfig::desk_scale() {
    SweepConfig cfg;
    for (std::size_t n = 100; n <= 600; n += 100) cfg.sizes.push_back(n);
    cfg.trials = 25;
    return cfg;
}

SweepConfig SweepConfig::paper_scale() {
    SweepConfig cfg;
    for (std::size_t n = 100; n <= 1200; n += 100) cfg.sizes.push_back(n);
    cfg.trials = 100;
    return cfg;
}

GeneratorParams SweepConfig::params(Model model, std::size_t n, std::size_t trial) const {
    GeneratorParams p;
    p.model = model;
    p.n = n;
    p.m = m;
    p.seed_graph = seed_graph;
    p.links = ba_links;
    p.attach_links = hk_attach_links;
    p.triad_links = hk_triad_links;
    p.triad_rule = hk_triad_rule;
    p.rng_seed = derive_seed(master_seed, {static_cast<std::uint64_t>(model), n, trial});
    return p;
}

void SweepConfig::validate() const {
    if (ba_links != hk_attach_links + hk_attach_links * hk_triad_links) {
        throw std::invalid_argument("sweep config: BA L must equal HK L1 + L1*L2 so that average degrees match");
    }
    if (sizes.empty() || trials == 0) {
        throw std::invalid_argument("sweep config: need at least one size and one trial");
    }
    for (std::size_t n : sizes) {
        params(Model::BA, n, 0).validate();
        params(Model::HK, n, 0).validate();
    }
}

std::vector<SweepRecord> run_comparison_sweep(const SweepConfig& cfg) {
    cfg.validate();
    std::vector<SweepRecord> records;
    for (Model model : {Model::BA, Model::HK}) {
        for (std::size_t n : cfg.sizes) {
            for (std::size_t t = 0; t < cfg.trials; ++t) {
                SweepRecord r;
                r.model = model;
                r.n = n;
                r.trial = t;
                records.push_back(r);
            }
        }
    }
    parallel_for(records.size(), cfg.jobs, [&](std::size_t i) {
        auto& r = records[i];
        const auto start = std::chrono::steady_clock::now();
        const Graph g = generate(cfg.params(r.model, r.n, r.trial));
        r.deficiency = maximum_matching(g).deficiency;
        r.global_clustering = global_clustering(g);
        r.avg_degree = g.average_degree();
        r.elapsed_seconds =
            std::chrono::duration<double>(std::chrono::steady_clock::now() - start).count();
    });
    return records;
}

std::string format_sweep_csv(const std::vector<SweepRecord>& records, bool include_timing) {
    std::ostringstream out;
    out << "# netmatch sweep v1\n";
    out << "model,n,trial,deficiency,global_clustering,avg_degree";
    if (include_timing) out << ",elapsed";
    out << '\n';
    for (const auto& r : records) {
        out << to_string(r.model) << ',' << r.n << ',' << r.trial << ',' << r.deficiency << ','
            << fmt_double(r.global_clustering) << ',' << fmt_double(r.avg_degree);
        if (include_timing) out << ',' << fmt_double(r.elapsed_seconds);
        out << '\n';
    }
    return out.str();
}

std::vector<SweepSummary> summarize(const std::vector<SweepRecord>& records) {
    std::map<std::pair<int, std::size_t>, SweepSummary> groups;
    for (const auto& r : records) {
        auto& s = groups[{static_cast<int>(r.model), r.n}];
        s.model = r.model;
        s.n = r.n;
        ++s.trials;
        s.mean_deficiency += static_cast<double>(r.deficiency);
        s.mean_clustering += r.global_clustering;
        s.mean_degree += r.avg_degree;
    }
    std::vector<SweepSummary> out;
    for (auto& [key, s] : groups) {
        const double k = static_cast<double>(s.trials);
        s.mean_deficiency /= k;
        s.mean_clustering /= k;
        s.mean_degree /= k;
        out.push_back(s);
    }
    return out;
}

namespace {

std::vector<double> average_ranks(const std::vector<double>& v) {
    std::vector<std::size_t> order(v.size());
    std::iota(order.begin(), order.end(), 0);
    std::sort(order.begin(), order.end(), [&](std::size_t a, std::size_t b) { return v[a] < v[b]; });
    std::vector<double> ranks(v.size());
    for (std::size_t i = 0; i < order.size();) {
        std::size_t j = i;
        while (j + 1 < order.size() && v[order[j + 1]] == v[order[i]]) ++j;
        const double rank = 0.5 * static_cast<double>(i + j) + 1.0;
        for (std::size_t k = i; k <= j; ++k) ranks[order[k]] = rank;
        i = j + 1;
    }
    return ranks;
}

}  // namespace

double spearman(const std::vector<double>& x, const std::vector<double>& y) {
    if (x.size() != y.size() || x.size() < 2) {
        throw std::invalid_argument("spearman: need two equally sized samples of length >= 2");
    }
    const auto rx = average_ranks(x);
    const auto ry = average_ranks(y);
    const double n = static_cast<double>(x.size());
    const double mx = std::accumulate(rx.begin(), rx.end(), 0.0) / n;
    const double my = std::accumulate(ry.begin(), ry.end(), 0.0) / n;
    double sxy = 0.0, sxx = 0.0, syy = 0.0;
    for (std::size_t i = 0; i < rx.size(); ++i) {
        sxy += (rx[i] - mx) * (ry[i] - my);
        sxx += (rx[i] - mx) * (rx[i] - mx);
        syy += (ry[i] - my) * (ry[i] - my);
    }
    if (sxx == 0.0 || syy == 0.0) return 0.0;
    return sxy / std::sqrt(sxx * syy);
}

NetworkReport analyze_network(const Graph& g, Model model) {
    NetworkReport r;
    r.model = model;
    r.nodes = g.node_count();
    r.edges = g.edge_count();
    r.avg_degree = g.average_degree();
    const auto mr = maximum_matching(g);
    r.deficiency = mr.deficiency;
    r.unmatched = mr.unmatched_minus;
    r.clustering = global_clustering(g);
    return r;
}

Table1Report run_table1_report(std::uint64_t seed) {
    GeneratorParams p;
    p.n = 25;
    p.m = 5;
    p.seed_graph = SeedGraph::Path;
    p.links = 2;
    p.attach_links = 1;
    p.triad_links = 1;

    Table1Report report;
    report.seed = seed;
    p.model = Model::BA;
    p.rng_seed = derive_seed(seed, {static_cast<std::uint64_t>(Model::BA)});
    report.ba = analyze_network(generate(p), Model::BA);
    p.model = Model::HK;
    p.rng_seed = derive_seed(seed, {static_cast<std::uint64_t>(Model::HK)});
    report.hk = analyze_network(generate(p), Model::HK);
    return report;
}

std::string format_table1_json(const Table1Report& report) {
    auto row = [](const NetworkReport& r) {
        nlohmann::ordered_json j;
        j["model"] = std::string(to_string(r.model));
        j["nodes"] = r.nodes;
        j["edges"] = r.edges;
        j["avg_degree"] = r.avg_degree;
        j["deficiency"] = r.deficiency;
        j["clustering"] = r.clustering;
        j["unmatched"] = r.unmatched;
        return j;
    };
    nlohmann::ordered_json j;
    j["seed"] = report.seed;
    j["config"] = {{"n", 25}, {"m", 5}, {"seed_graph", "path"}, {"L", 2}, {"L1", 1}, {"L2", 1}};
    j["rows"] = nlohmann::ordered_json::array({row(report.ba), row(report.hk)});
    return j.dump(2) + "\n";
}

std::vector<Table2Row> run_table2_sweep(const Graph& g, const std::vector<std::size_t>& links,
                                        Recompute mode) {
    std::vector<Table2Row> rows;
    for (std::size_t t : links) {
        Table2Row row;
        row.links = t;
        Graph copy = g;
        try {
            const auto plan = reduce_unmatched(copy, t, mode);
            row.added = plan.added_edges.size();
            row.deficiency = plan.deficiency_after;
            row.clustering = plan.clustering_after;
            row.shortfall = plan.shortfall;
        } catch (const std::exception& e) {
            row.error = e.what();
            row.deficiency = maximum_matching(g).deficiency;
            row.clustering = global_clustering(g);
        }
        rows.push_back(std::move(row));
    }
    return rows;
}

std::string format_table2_csv(const std::vector<Table2Row>& rows) {
    std::ostringstream out;
    out << "# netmatch table2 v1\n";
    out << "links,added,deficiency,clustering,shortfall,error\n";
    for (const auto& r : rows) {
        std::string err = r.error.value_or("");
        std::replace(err.begin(), err.end(), ',', ';');
        out << r.links << ',' << r.added << ',' << r.deficiency << ',' << fmt_double(r.clustering)
            << ',' << (r.shortfall ? 1 : 0) << ',' << err << '\n';
    }
    return out.str();
}

ObservabilityRun run_observability(const Graph& g, std::uint64_t seed, const KalmanOptions& kalman,
                                   std::optional<std::size_t> drop_index, const SystemOptions& system) {
    const auto mr = maximum_matching(g);
    ObservabilityRun run;
    run.measured = mr.unmatched_minus;
    // A perfectly matched graph still needs one sensor.
    if (run.measured.empty() && g.node_count() > 0) run.measured.push_back(0);
    if (drop_index) {
        if (*drop_index >= run.measured.size()) {
            throw std::invalid_argument("run_observability: drop index out of range");
        }
        run.measured.erase(run.measured.begin() + static_cast<std::ptrdiff_t>(*drop_index));
    }
    const auto sys = build_system(g, run.measured, derive_seed(seed, {0}), system);
    run.spectral_radius = spectral_radius(sys.A);
    KalmanOptions opts = kalman;
    opts.rng_seed = derive_seed(seed, {1});
    run.trace = run_kalman(sys, opts);
    run.bounded = run.trace.growth_ratio() < kBoundedRatio;
    run.divergent = run.trace.final_window_mean() > kDivergenceLevel;
    return run;
}

}  // namespace netmatch
