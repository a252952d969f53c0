#include "netmatch/structural.hpp"

#include <algorithm>
#include <cstdio>
#include <deque>
#include <sstream>

namespace netmatch {

std::vector<Contraction> find_contractions(const Graph& g, const MatchResult& mr) {
    const std::size_t n = g.node_count();
    if (mr.graph_revision != g.revision() || mr.mate_plus.size() != n || mr.mate_minus.size() != n) {
        throw std::invalid_argument("find_contractions: match result is stale for this graph");
    }
    std::vector<Contraction> out;
    out.reserve(mr.unmatched_minus.size());
    // Stamps avoid clearing the visited arrays between anchors.
    std::vector<std::size_t> minus_stamp(n, 0);
    std::vector<std::size_t> plus_stamp(n, 0);
    std::size_t stamp = 0;
    std::deque<NodeId> queue;

    for (NodeId anchor : mr.unmatched_minus) {
        ++stamp;
        Contraction c;
        c.anchor = anchor;
        minus_stamp[anchor] = stamp;
        queue.assign(1, anchor);
        while (!queue.empty()) {
            const NodeId y = queue.front();
            queue.pop_front();
            c.members.push_back(y);
            for (NodeId u : g.neighbors(y)) {
                if (plus_stamp[u] == stamp) continue;
                plus_stamp[u] = stamp;
                c.neighborhood.push_back(u);
                const NodeId next = mr.mate_plus[u];
                if (next == kNoNode) {
                    // A free u+ next to a reachable y- would be an augmenting path.
                    throw std::invalid_argument("find_contractions: matching is not maximum");
                }
                if (minus_stamp[next] != stamp) {
                    minus_stamp[next] = stamp;
                    queue.push_back(next);
                }
            }
        }
        std::sort(c.members.begin(), c.members.end());
        std::sort(c.neighborhood.begin(), c.neighborhood.end());
        out.push_back(std::move(c));
    }
    return out;
}

std::optional<Edge> successive_pair(const Contraction& c, const Graph& g) {
    return for_each_successive_pair(c, g, [](const Edge&) { return true; });
}

std::size_t max_addable_links(const std::vector<Contraction>& contractions) {
    std::size_t total = 0;
    for (const auto& c : contractions) total += c.members.size() / 2;
    return total;
}

std::string to_string(Recompute mode) {
    return mode == Recompute::Once ? "once" : "per_link";
}

Recompute parse_recompute(const std::string& text) {
    if (text == "once") return Recompute::Once;
    if (text == "per_link" || text == "per-link") return Recompute::PerLink;
    throw std::invalid_argument("unknown recompute mode '" + text + "'");
}

InfeasibleLinkCount::InfeasibleLinkCount(std::size_t requested, std::size_t bound)
    : std::invalid_argument("requested " + std::to_string(requested) +
                            " links but at most sum |C_i|/2 = " + std::to_string(bound) +
                            " can be added"),
      requested_(requested),
      bound_(bound) {}

namespace {

std::vector<Contraction> sorted_contractions(const Graph& g, const MatchResult& mr) {
    auto contractions = find_contractions(g, mr);
    std::stable_sort(contractions.begin(), contractions.end(),
                     [](const Contraction& a, const Contraction& b) {
                         return a.members.size() < b.members.size();
                     });
    return contractions;
}

}  // namespace

AugmentationPlan reduce_unmatched(Graph& g, std::size_t links, Recompute mode) {
    AugmentationPlan plan;
    plan.requested = links;
    MatchResult mr = maximum_matching(g);
    const auto before = count_triplets(g);
    plan.deficiency_before = mr.deficiency;
    plan.clustering_before = global_clustering(g);
    plan.closed_triplets_before = before.closed_triplets;

    auto contractions = sorted_contractions(g, mr);
    plan.max_addable = max_addable_links(contractions);
    if (links > plan.max_addable) {
        throw InfeasibleLinkCount(links, plan.max_addable);
    }

    if (mode == Recompute::PerLink) {
        for (std::size_t k = 0; k < links; ++k) {
            if (k > 0) {
                mr = maximum_matching(g);
                contractions = sorted_contractions(g, mr);
            }
            std::optional<Edge> accepted;
            for (const auto& c : contractions) {
                accepted = for_each_successive_pair(c, g, [&](const Edge& e) {
                    g.add_edge(e.u, e.v);
                    MatchResult trial = mr;
                    if (augment_once(g, trial)) return true;
                    g.remove_edge(e.u, e.v);
                    ++plan.rejected_proposals;
                    return false;
                });
                if (accepted) break;
            }
            if (!accepted) break;
            plan.added_edges.push_back(*accepted);
        }
    } else {
        std::size_t cursor = 0;
        for (std::size_t k = 0; k < links && !contractions.empty(); ++k) {
            std::optional<Edge> pair;
            for (std::size_t j = 0; j < contractions.size() && !pair; ++j) {
                const std::size_t idx = (cursor + j) % contractions.size();
                pair = successive_pair(contractions[idx], g);
                if (pair) cursor = idx + 1;
            }
            if (!pair) break;
            g.add_edge(pair->u, pair->v);
            plan.added_edges.push_back(*pair);
        }
    }

    plan.shortfall = plan.added_edges.size() < links;
    plan.deficiency_after = maximum_matching(g).deficiency;
    plan.clustering_after = global_clustering(g);
    plan.closed_triplets_after = count_triplets(g).closed_triplets;
    return plan;
}

std::string format_plan(const AugmentationPlan& plan) {
    std::ostringstream out;
    for (const auto& e : plan.added_edges) out << e.u << '\t' << e.v << '\n';
    char buf[64];
    out << "# requested: " << plan.requested << '\n';
    out << "# added: " << plan.added_edges.size() << '\n';
    out << "# shortfall: " << (plan.shortfall ? "true" : "false") << '\n';
    out << "# deficiency_before: " << plan.deficiency_before << '\n';
    out << "# deficiency_after: " << plan.deficiency_after << '\n';
    std::snprintf(buf, sizeof buf, "%.9g", plan.clustering_before);
    out << "# clustering_before: " << buf << '\n';
    std::snprintf(buf, sizeof buf, "%.9g", plan.clustering_after);
    out << "# clustering_after: " << buf << '\n';
    return out.str();
}

}  // namespace netmatch
