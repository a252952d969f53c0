#pragma once

#include <algorithm>
#include <optional>
#include <stdexcept>
#include <string>
#include <vector>

#include "netmatch/graph.hpp"
#include "netmatch/matching.hpp"

namespace netmatch {

/// A node set C with |N(C)| < |C|.
struct Contraction {
    std::vector<NodeId> members;       // sorted
    std::vector<NodeId> neighborhood;  // sorted N(C)
    NodeId anchor = kNoNode;           // unmatched V- node that generated C

    std::size_t surplus() const { return members.size() - neighborhood.size(); }
};

/// One contraction per unmatched V- node: the V- nodes reachable from it by
/// alternating paths (a non-matching link traversed backwards to some u+,
/// then u+'s matching link). Ordered by anchor.
///
/// Throws std::invalid_argument if `mr` was computed for a different graph
/// state.
std::vector<Contraction> find_contractions(const Graph& g, const MatchResult& mr);

/// Lexicographically smallest non-adjacent pair u < v of members that share a
/// common neighbor, or nullopt.
std::optional<Edge> successive_pair(const Contraction& c, const Graph& g);

/// All such pairs in lexicographic order, produced lazily through `visit`;
/// enumeration stops when visit returns true. Returns the accepted pair.
template <typename Visit>
std::optional<Edge> for_each_successive_pair(const Contraction& c, const Graph& g, Visit&& visit);

/// Σ floor(|C_i| / 2).
std::size_t max_addable_links(const std::vector<Contraction>& contractions);

enum class Recompute {
    /// Contractions are computed once up front and walked in ascending size
    /// order, cycling when T exceeds their number.
    Once,
    /// Matching and contractions are recomputed after every insertion, and a
    /// proposal is only accepted if it admits an augmenting path.
    PerLink,
};

std::string to_string(Recompute mode);
Recompute parse_recompute(const std::string& text);

struct AugmentationPlan {
    std::vector<Edge> added_edges;
    std::size_t requested = 0;
    std::size_t deficiency_before = 0;
    std::size_t deficiency_after = 0;
    double clustering_before = 0.0;
    double clustering_after = 0.0;
    std::uint64_t closed_triplets_before = 0;
    std::uint64_t closed_triplets_after = 0;
    std::size_t max_addable = 0;
    /// Fewer than `requested` links could be placed.
    bool shortfall = false;
    /// Sharing pairs rejected because they would not reduce the deficiency
    /// (per-link mode only).
    std::size_t rejected_proposals = 0;

    /// deficiency_after <= deficiency_before - |added_edges|
    bool guarantee_holds() const {
        return deficiency_after + added_edges.size() <= deficiency_before;
    }
};

/// Thrown when T is outside [0, max_addable_links]. Carries the bound.
class InfeasibleLinkCount : public std::invalid_argument {
public:
    InfeasibleLinkCount(std::size_t requested, std::size_t bound);
    std::size_t requested() const { return requested_; }
    std::size_t bound() const { return bound_; }

private:
    std::size_t requested_;
    std::size_t bound_;
};

/// Adds up to `links` edges to `g`, each closing an open triplet inside a
/// contraction, smallest contractions first.
AugmentationPlan reduce_unmatched(Graph& g, std::size_t links, Recompute mode = Recompute::PerLink);

/// Plan file: one `u v` line per added edge followed by `#` trailer lines, so
/// the file doubles as an edge list that can be replayed.
std::string format_plan(const AugmentationPlan& plan);

// -- implementation of the template -----------------------------------------

template <typename Visit>
std::optional<Edge> for_each_successive_pair(const Contraction& c, const Graph& g, Visit&& visit) {
    const auto& members = c.members;
    std::vector<char> in_contraction(g.node_count(), 0);
    for (NodeId u : members) in_contraction[u] = 1;
    std::vector<char> partner(g.node_count(), 0);
    std::vector<NodeId> touched;
    for (NodeId u : members) {
        // Members v > u reachable in two steps from u and not adjacent to u.
        touched.clear();
        for (NodeId w : g.neighbors(u)) {
            for (NodeId v : g.neighbors(w)) {
                if (v > u && in_contraction[v] && !partner[v]) {
                    partner[v] = 1;
                    touched.push_back(v);
                }
            }
        }
        std::sort(touched.begin(), touched.end());
        std::optional<Edge> accepted;
        for (NodeId v : touched) {
            if (!accepted && !g.has_edge(u, v) && visit(Edge{u, v})) {
                accepted = Edge{u, v};
            }
            partner[v] = 0;
        }
        if (accepted) return accepted;
    }
    return std::nullopt;
}

}  // namespace netmatch
