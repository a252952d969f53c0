#include <cmath>
#include <stdexcept>

#include "corpus.hpp"
#include "doctest.h"
#include "netmatch/experiments.hpp"
#include "netmatch/matching.hpp"

using namespace netmatch;

namespace {

SweepConfig small_sweep() {
    SweepConfig cfg;
    cfg.sizes = {60, 120};
    cfg.trials = 4;
    cfg.master_seed = 3;
    cfg.jobs = 1;
    return cfg;
}

}  // namespace

TEST_CASE("sweep is deterministic and independent of thread count") {
    auto cfg = small_sweep();
    const auto a = format_sweep_csv(run_comparison_sweep(cfg));
    const auto b = format_sweep_csv(run_comparison_sweep(cfg));
    cfg.jobs = 3;
    const auto c = format_sweep_csv(run_comparison_sweep(cfg));
    CHECK(a == b);
    CHECK(a == c);
    cfg.master_seed = 4;
    CHECK(a != format_sweep_csv(run_comparison_sweep(cfg)));
}

TEST_CASE("sweep records and csv layout") {
    const auto records = run_comparison_sweep(small_sweep());
    REQUIRE(records.size() == 2 * 2 * 4);
    CHECK(records.front().model == Model::BA);
    CHECK(records.back().model == Model::HK);
    CHECK(records.back().n == 120);
    CHECK(records.back().trial == 3);

    const auto csv = format_sweep_csv(records);
    CHECK(csv.rfind("# netmatch sweep v1\nmodel,n,trial,deficiency,global_clustering,avg_degree\n", 0) == 0);
    CHECK(format_sweep_csv(records, true).find(",elapsed\n") != std::string::npos);

    const auto summary = summarize(records);
    REQUIRE(summary.size() == 4);
    for (const auto& s : summary) CHECK(s.trials == 4);
    double total = 0.0;
    for (const auto& r : records)
        if (r.model == Model::BA && r.n == 60) total += static_cast<double>(r.deficiency);
    CHECK(summary[0].mean_deficiency == doctest::Approx(total / 4));
}

TEST_CASE("sweep config validation") {
    auto cfg = small_sweep();
    cfg.ba_links = 3;
    CHECK_THROWS_AS(run_comparison_sweep(cfg), std::invalid_argument);
    cfg = small_sweep();
    cfg.sizes.clear();
    CHECK_THROWS_AS(cfg.validate(), std::invalid_argument);
    cfg = small_sweep();
    cfg.sizes = {3};
    CHECK_THROWS_AS(cfg.validate(), std::invalid_argument);
    CHECK(SweepConfig::desk_scale().sizes.size() == 6);
    CHECK(SweepConfig::paper_scale().sizes.back() == 1200);
}

TEST_CASE("spearman") {
    CHECK(spearman({1, 2, 3, 4}, {10, 20, 30, 40}) == doctest::Approx(1.0));
    CHECK(spearman({1, 2, 3, 4}, {4, 3, 2, 1}) == doctest::Approx(-1.0));
    // Distinct values: 1 - 6 sum d^2 / (n (n^2 - 1)).
    CHECK(spearman({1, 2, 3, 4, 5}, {2, 1, 4, 3, 5}) == doctest::Approx(1.0 - 6.0 * 4 / 120.0));
    // Ties get average ranks: Pearson of {1, 2.5, 2.5, 4} and {1, 3, 2, 4}.
    CHECK(spearman({1, 2, 2, 3}, {1, 3, 2, 4}) == doctest::Approx(4.5 / std::sqrt(22.5)));
    CHECK(spearman({1, 1, 1}, {1, 2, 3}) == 0.0);
    CHECK_THROWS_AS(spearman({1}, {1}), std::invalid_argument);
    CHECK_THROWS_AS(spearman({1, 2}, {1, 2, 3}), std::invalid_argument);
}

TEST_CASE("single realization report") {
    const auto r = analyze_network(corpus::star(3), Model::BA);
    CHECK(r.nodes == 4);
    CHECK(r.edges == 3);
    CHECK(r.deficiency == 2);
    CHECK(r.unmatched.size() == 2);
    CHECK(r.clustering == 0.0);
}

TEST_CASE("25-node comparison over many seeds") {
    double ba_def = 0, hk_def = 0;
    std::size_t wins = 0;
    const std::size_t seeds = 100;
    for (std::uint64_t s = 0; s < seeds; ++s) {
        const auto rep = run_table1_report(s);
        CHECK(rep.ba.nodes == 25);
        CHECK(rep.ba.avg_degree == doctest::Approx(3.52));
        CHECK(rep.hk.avg_degree >= 3.3);
        CHECK(rep.hk.avg_degree <= 3.6);
        CHECK(rep.ba.unmatched.size() == rep.ba.deficiency);
        ba_def += static_cast<double>(rep.ba.deficiency);
        hk_def += static_cast<double>(rep.hk.deficiency);
        wins += rep.hk.deficiency < rep.ba.deficiency;
    }
    MESSAGE("HK strictly below BA in " << wins << "/" << seeds << " seeds; means " << ba_def / seeds
                                       << " vs " << hk_def / seeds);
    CHECK(hk_def < ba_def);

    const auto json = format_table1_json(run_table1_report(7));
    CHECK(json.find("\"seed\": 7") != std::string::npos);
    CHECK(json.find("\"model\": \"hk\"") != std::string::npos);
    CHECK(format_table1_json(run_table1_report(7)) == json);
}

TEST_CASE("augmentation sweep") {
    GeneratorParams p;
    p.n = 300;
    p.rng_seed = 11;
    const Graph g = generate(p);
    const auto base = analyze_network(g, Model::BA);
    const auto rows = run_table2_sweep(g, {0, 2, 5, 100000});
    REQUIRE(rows.size() == 4);
    CHECK(rows[0].added == 0);
    CHECK(rows[0].deficiency == base.deficiency);
    CHECK(rows[0].clustering == doctest::Approx(base.clustering));
    CHECK(rows[1].deficiency + 2 <= base.deficiency);
    CHECK(rows[2].clustering > rows[1].clustering);
    CHECK(rows[3].error);
    CHECK(rows[3].deficiency == base.deficiency);

    const auto csv = format_table2_csv(rows);
    CHECK(csv.rfind("# netmatch table2 v1\nlinks,added,deficiency,clustering,shortfall,error\n", 0) == 0);
    CHECK(csv.find("\n0,0," + std::to_string(base.deficiency) + ",") != std::string::npos);
}

TEST_CASE("observability run") {
    GeneratorParams p;
    p.n = 25;
    p.rng_seed = 2;
    const Graph g = generate(p);
    KalmanOptions k;
    k.trials = 5;
    const auto run = run_observability(g, 9, k);
    CHECK(run.measured == maximum_matching(g).unmatched_minus);
    CHECK(std::abs(run.spectral_radius - 1.2) < 1e-6);
    CHECK(run.trace.msee.size() == k.horizon);

    const auto dropped = run_observability(g, 9, k, 0);
    CHECK(dropped.measured.size() + 1 == run.measured.size());
    CHECK_THROWS_AS(run_observability(g, 9, k, run.measured.size()), std::invalid_argument);

    // A perfectly matched graph gets a single sensor.
    CHECK(run_observability(corpus::cycle(6), 1, k).measured == std::vector<NodeId>{0});
}
