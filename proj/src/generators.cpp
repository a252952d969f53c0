#include "netmatch/generators.hpp"

#include <stdexcept>
#include <string>
#include <vector>

#include "netmatch/rng.hpp"

namespace netmatch {

std::string_view to_string(Model model) {
    return model == Model::BA ? "ba" : "hk";
}

std::string_view to_string(SeedGraph kind) {
    switch (kind) {
        case SeedGraph::Path: return "path";
        case SeedGraph::Cycle: return "cycle";
        case SeedGraph::Complete: return "complete";
    }
    return "path";
}

std::string_view to_string(TriadRule rule) {
    return rule == TriadRule::Uniform ? "uniform" : "degree";
}

TriadRule parse_triad_rule(std::string_view text) {
    if (text == "uniform") return TriadRule::Uniform;
    if (text == "degree") return TriadRule::Degree;
    throw std::invalid_argument("unknown triad rule '" + std::string(text) + "' (expected uniform or degree)");
}

Model parse_model(std::string_view text) {
    if (text == "ba" || text == "BA") return Model::BA;
    if (text == "hk" || text == "HK") return Model::HK;
    throw std::invalid_argument("unknown model '" + std::string(text) + "' (expected ba or hk)");
}

SeedGraph parse_seed_graph(std::string_view text) {
    if (text == "path") return SeedGraph::Path;
    if (text == "cycle") return SeedGraph::Cycle;
    if (text == "complete") return SeedGraph::Complete;
    throw std::invalid_argument("unknown seed graph '" + std::string(text) + "'");
}

std::size_t GeneratorParams::links_per_node() const {
    return model == Model::BA ? links : attach_links + attach_links * triad_links;
}

void GeneratorParams::validate() const {
    if (m < 2) {
        throw std::invalid_argument("seed graph size m must be at least 2");
    }
    if (n < m) {
        throw std::invalid_argument("final size n must not be smaller than seed size m");
    }
    if (model == Model::BA) {
        if (links < 1) throw std::invalid_argument("BA requires L >= 1");
        if (links > m) throw std::invalid_argument("BA requires L <= m");
    } else {
        if (attach_links < 1) throw std::invalid_argument("HK requires L1 >= 1");
        if (attach_links > m) throw std::invalid_argument("HK requires L1 <= m");
    }
}

Graph make_seed_graph(SeedGraph kind, std::size_t m) {
    if (m < 2) {
        throw std::invalid_argument("seed graph needs at least 2 nodes");
    }
    Graph g(m);
    switch (kind) {
        case SeedGraph::Path:
            for (NodeId i = 0; i + 1 < m; ++i) g.add_edge(i, i + 1);
            break;
        case SeedGraph::Cycle:
            for (NodeId i = 0; i + 1 < m; ++i) g.add_edge(i, i + 1);
            // m == 2 collapses to a single edge.
            if (m > 2) g.add_edge(static_cast<NodeId>(m - 1), 0);
            break;
        case SeedGraph::Complete:
            for (NodeId i = 0; i < m; ++i)
                for (NodeId j = i + 1; j < m; ++j) g.add_edge(i, j);
            break;
    }
    return g;
}

namespace {

/// Growth state shared by both models. Degree-proportional sampling draws a
/// uniform slot of the edge-endpoint list: node i occupies exactly d_i slots.
/// Slots appended while a node is being attached lie past the snapshot taken
/// at the start of its round, so the round samples from fixed probabilities.
class Grower {
public:
    Grower(Graph seed, std::uint64_t rng_seed) : graph_(std::move(seed)), rng_(rng_seed) {
        for (const auto& e : graph_.edges()) {
            endpoints_.push_back(e.u);
            endpoints_.push_back(e.v);
        }
    }

    NodeId begin_round() {
        snapshot_ = endpoints_.size();
        old_count_ = graph_.node_count();
        return graph_.add_node();
    }

    /// Preferential draw over the old nodes, re-drawn while the target is
    /// already linked to `a`. Returns kNoNode if every old node is linked.
    NodeId draw_preferential(NodeId a) {
        if (graph_.degree(a) >= old_count_ || snapshot_ == 0) {
            return kNoNode;
        }
        for (;;) {
            const NodeId b = endpoints_[rng_.below(snapshot_)];
            if (!graph_.has_edge(a, b)) {
                return b;
            }
        }
    }

    void link(NodeId a, NodeId b) {
        if (graph_.add_edge(a, b)) {
            endpoints_.push_back(a);
            endpoints_.push_back(b);
        }
    }

    Graph& graph() { return graph_; }
    Rng& rng() { return rng_; }
    Graph release() { return std::move(graph_); }

private:
    Graph graph_;
    Rng rng_;
    std::vector<NodeId> endpoints_;
    std::size_t snapshot_ = 0;
    std::size_t old_count_ = 0;
};

}  // namespace

Graph generate_ba(const GeneratorParams& params, GeneratorStats* stats) {
    params.validate();
    if (params.model != Model::BA) {
        throw std::invalid_argument("generate_ba called with HK parameters");
    }
    GeneratorStats local;
    Grower grower(make_seed_graph(params.seed_graph, params.m), params.rng_seed);
    for (std::size_t k = params.m; k < params.n; ++k) {
        const NodeId a = grower.begin_round();
        for (std::size_t l = 0; l < params.links; ++l) {
            const NodeId b = grower.draw_preferential(a);
            if (b == kNoNode) {
                ++local.exhausted_links;
                continue;
            }
            grower.link(a, b);
        }
    }
    if (stats != nullptr) *stats = local;
    return grower.release();
}

Graph generate_hk(const GeneratorParams& params, GeneratorStats* stats) {
    params.validate();
    if (params.model != Model::HK) {
        throw std::invalid_argument("generate_hk called with BA parameters");
    }
    GeneratorStats local;
    Grower grower(make_seed_graph(params.seed_graph, params.m), params.rng_seed);
    Graph& g = grower.graph();
    std::vector<NodeId> candidates;
    std::vector<double> weights;

    for (std::size_t k = params.m; k < params.n; ++k) {
        const NodeId a = grower.begin_round();
        for (std::size_t l = 0; l < params.attach_links; ++l) {
            const NodeId b = grower.draw_preferential(a);
            if (b == kNoNode) {
                local.exhausted_links += 1 + params.triad_links;
                continue;
            }
            grower.link(a, b);

            // Triad formation among the neighbors of b, weighted per the triad
            // rule. `a` and nodes already linked to `a` are ineligible.
            candidates.clear();
            weights.clear();
            for (NodeId c : g.neighbors(b)) {
                if (c != a && !g.has_edge(a, c)) {
                    candidates.push_back(c);
                    weights.push_back(params.triad_rule == TriadRule::Degree
                                          ? static_cast<double>(g.degree(c))
                                          : 1.0);
                }
            }
            for (std::size_t h = 0; h < params.triad_links; ++h) {
                double total = 0.0;
                for (double w : weights) total += w;
                if (total <= 0.0) {
                    ++local.triad_fallbacks;
                    const NodeId c = grower.draw_preferential(a);
                    if (c == kNoNode) {
                        ++local.exhausted_links;
                    } else {
                        grower.link(a, c);
                    }
                    continue;
                }
                double target = grower.rng().uniform() * total;
                std::size_t pick = weights.size();
                for (std::size_t i = 0; i < weights.size(); ++i) {
                    if (weights[i] <= 0.0) continue;
                    pick = i;
                    if (target < weights[i]) break;
                    target -= weights[i];
                }
                grower.link(a, candidates[pick]);
                weights[pick] = 0.0;
            }
        }
    }
    if (stats != nullptr) *stats = local;
    return grower.release();
}

Graph generate(const GeneratorParams& params, GeneratorStats* stats) {
    return params.model == Model::BA ? generate_ba(params, stats) : generate_hk(params, stats);
}

}  // namespace netmatch
