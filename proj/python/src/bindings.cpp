#include <pybind11/pybind11.h>
#include <pybind11/stl.h>
#include <pybind11/stl/filesystem.h>

#include "netmatch/dynamics.hpp"
#include "netmatch/experiments.hpp"
#include "netmatch/generators.hpp"
#include "netmatch/graph.hpp"
#include "netmatch/ingest.hpp"
#include "netmatch/matching.hpp"
#include "netmatch/structural.hpp"

namespace py = pybind11;
using namespace netmatch;

namespace {

Graph graph_from_edges(std::size_t n, const std::vector<std::pair<NodeId, NodeId>>& edges) {
    Graph g(n);
    for (const auto& [u, v] : edges) g.add_edge(u, v);
    return g;
}

py::list edge_list(const std::vector<Edge>& edges) {
    py::list out;
    for (const auto& e : edges) out.append(py::make_tuple(e.u, e.v));
    return out;
}

}  // namespace

PYBIND11_MODULE(_core, m) {
    m.doc() = "netmatch core bindings";

    py::class_<Graph>(m, "Graph")
        .def(py::init<std::size_t>(), py::arg("n") = 0)
        .def(py::init(&graph_from_edges), py::arg("n"), py::arg("edges"))
        .def("add_edge", &Graph::add_edge)
        .def("remove_edge", &Graph::remove_edge)
        .def("has_edge", &Graph::has_edge)
        .def("degree", &Graph::degree)
        .def("neighbors", [](const Graph& g, NodeId i) {
            if (i >= g.node_count()) throw py::index_error("node id out of range");
            auto span = g.neighbors(i);
            return std::vector<NodeId>(span.begin(), span.end());
        })
        .def("edges", [](const Graph& g) { return edge_list(g.edges()); })
        .def("average_degree", &Graph::average_degree)
        .def_property_readonly("node_count", &Graph::node_count)
        .def_property_readonly("edge_count", &Graph::edge_count)
        .def("copy", [](const Graph& g) { return Graph(g); })
        .def("__eq__", [](const Graph& a, const Graph& b) { return a == b; })
        .def("__repr__", [](const Graph& g) {
            return "<Graph n=" + std::to_string(g.node_count()) + " m=" + std::to_string(g.edge_count()) + ">";
        });

    py::class_<TripletCounts>(m, "TripletCounts")
        .def_readonly("closed_triplets", &TripletCounts::closed_triplets)
        .def_readonly("open_triplets", &TripletCounts::open_triplets)
        .def_property_readonly("triangles", &TripletCounts::triangles);

    m.def("count_triplets", &count_triplets);
    m.def("global_clustering", [](const Graph& g) { return global_clustering(g); });

    py::class_<MatchResult>(m, "MatchResult")
        .def_property_readonly("pairs", [](const MatchResult& r) {
            py::list out;
            for (const auto& p : r.matching) out.append(py::make_tuple(p.begin, p.end));
            return out;
        })
        .def_readonly("unmatched_plus", &MatchResult::unmatched_plus)
        .def_readonly("unmatched_minus", &MatchResult::unmatched_minus)
        .def_readonly("deficiency", &MatchResult::deficiency);

    m.def("maximum_matching", &maximum_matching);
    m.def("deficiency", [](const Graph& g) { return maximum_matching(g).deficiency; });
    m.def("hall_ore_deficiency", &hall_ore_deficiency_bruteforce,
          "Exhaustive deficiency; graphs up to 22 nodes");

    py::class_<Contraction>(m, "Contraction")
        .def_readonly("members", &Contraction::members)
        .def_readonly("neighborhood", &Contraction::neighborhood)
        .def_readonly("anchor", &Contraction::anchor);

    m.def("find_contractions", [](const Graph& g) { return find_contractions(g, maximum_matching(g)); });
    m.def("max_addable_links",
          [](const Graph& g) { return max_addable_links(find_contractions(g, maximum_matching(g))); });

    py::class_<AugmentationPlan>(m, "AugmentationPlan")
        .def_property_readonly("added_edges", [](const AugmentationPlan& p) { return edge_list(p.added_edges); })
        .def_readonly("requested", &AugmentationPlan::requested)
        .def_readonly("deficiency_before", &AugmentationPlan::deficiency_before)
        .def_readonly("deficiency_after", &AugmentationPlan::deficiency_after)
        .def_readonly("clustering_before", &AugmentationPlan::clustering_before)
        .def_readonly("clustering_after", &AugmentationPlan::clustering_after)
        .def_readonly("max_addable", &AugmentationPlan::max_addable)
        .def_readonly("shortfall", &AugmentationPlan::shortfall)
        .def_readonly("rejected_proposals", &AugmentationPlan::rejected_proposals);

    auto infeasible = py::register_exception<InfeasibleLinkCount>(m, "InfeasibleLinkCount", PyExc_ValueError);
    (void)infeasible;

    // Works on a copy; the augmented graph is returned alongside the plan.
    m.def(
        "reduce_unmatched",
        [](const Graph& g, std::size_t links, const std::string& mode) {
            Graph copy = g;
            auto plan = reduce_unmatched(copy, links, parse_recompute(mode));
            return py::make_tuple(std::move(copy), std::move(plan));
        },
        py::arg("graph"), py::arg("links"), py::arg("mode") = "per-link");

    m.def(
        "generate",
        [](const std::string& model, std::size_t n, std::size_t m_seed, std::size_t links,
           std::size_t l1, std::size_t l2, const std::string& seed_graph, const std::string& triad,
           std::uint64_t seed) {
            GeneratorParams p;
            p.model = parse_model(model);
            p.n = n;
            p.m = m_seed;
            p.links = links;
            p.attach_links = l1;
            p.triad_links = l2;
            p.seed_graph = parse_seed_graph(seed_graph);
            p.triad_rule = parse_triad_rule(triad);
            p.rng_seed = seed;
            return generate(p);
        },
        py::arg("model"), py::arg("n"), py::arg("m") = 5, py::arg("L") = 2, py::arg("L1") = 1,
        py::arg("L2") = 1, py::arg("seed_graph") = "path", py::arg("triad") = "uniform", py::arg("seed") = 0);

    m.def(
        "load_edge_list",
        [](const std::filesystem::path& path) {
            auto lg = load_edge_list(path);
            return py::make_tuple(std::move(lg.graph), std::move(lg.id_map));
        },
        "Returns (graph, original ids)");
    m.def(
        "save_edge_list", [](const Graph& g) { return save_edge_list(g); }, "Edge list text");

    m.def("analyze", [](const Graph& g) {
        const auto r = analyze_network(g, Model::BA);
        py::dict d;
        d["nodes"] = r.nodes;
        d["edges"] = r.edges;
        d["avg_degree"] = r.avg_degree;
        d["deficiency"] = r.deficiency;
        d["clustering"] = r.clustering;
        d["unmatched"] = r.unmatched;
        return d;
    });

    m.def("table1", [](std::uint64_t seed) { return format_table1_json(run_table1_report(seed)); },
          py::arg("seed") = 1, "Table I style report as JSON text");

    m.def(
        "sweep",
        [](const std::vector<std::size_t>& sizes, std::size_t trials, std::uint64_t seed, std::size_t jobs) {
            SweepConfig cfg = SweepConfig::desk_scale();
            cfg.sizes = sizes;
            cfg.trials = trials;
            cfg.master_seed = seed;
            cfg.jobs = jobs;
            py::gil_scoped_release release;
            return format_sweep_csv(run_comparison_sweep(cfg));
        },
        py::arg("sizes"), py::arg("trials") = 25, py::arg("seed") = 1, py::arg("jobs") = 0,
        "BA vs HK sweep as CSV text");

    m.def("spectral_radius", [](const std::vector<std::vector<double>>& rows) {
        const auto n = static_cast<Eigen::Index>(rows.size());
        Eigen::MatrixXd a(n, n);
        for (Eigen::Index i = 0; i < n; ++i) {
            if (static_cast<Eigen::Index>(rows[i].size()) != n) throw py::value_error("matrix must be square");
            for (Eigen::Index j = 0; j < n; ++j) a(i, j) = rows[i][j];
        }
        return spectral_radius(a);
    });

    m.def(
        "run_observability",
        [](const Graph& g, std::uint64_t seed, std::size_t horizon, std::size_t trials,
           std::optional<std::size_t> drop, const std::string& diagonal) {
            KalmanOptions ko;
            ko.horizon = horizon;
            ko.trials = trials;
            SystemOptions so;
            so.diagonal = parse_diagonal_policy(diagonal);
            const auto run = run_observability(g, seed, ko, drop, so);
            py::dict d;
            d["measured"] = run.measured;
            d["msee"] = run.trace.msee;
            d["spectral_radius"] = run.spectral_radius;
            d["growth_ratio"] = run.trace.growth_ratio();
            d["bounded"] = run.bounded;
            d["divergent"] = run.divergent;
            return d;
        },
        py::arg("graph"), py::arg("seed") = 1, py::arg("horizon") = 200, py::arg("trials") = 50,
        py::arg("drop") = py::none(), py::arg("diagonal") = "random");
}
