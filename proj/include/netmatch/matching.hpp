#pragma once

#include <cstdint>
#include <vector>

#include "netmatch/graph.hpp"

namespace netmatch {

/// A link (begin+, end-) of the bipartite representation, where every graph
/// edge {i, j} yields the two links (i+, j-) and (j+, i-).
struct MatchedPair {
    NodeId begin;
    NodeId end;
    friend bool operator==(const MatchedPair&, const MatchedPair&) = default;
};

using Matching = std::vector<MatchedPair>;

struct MatchResult {
    Matching matching;
    /// mate_plus[i] is the V- partner of i+, or kNoNode.
    std::vector<NodeId> mate_plus;
    /// mate_minus[j] is the V+ partner of j-, or kNoNode.
    std::vector<NodeId> mate_minus;
    std::vector<NodeId> unmatched_plus;
    std::vector<NodeId> unmatched_minus;
    /// n - |matching|: the minimum number of driver (or observer) nodes.
    std::size_t deficiency = 0;
    /// Revision of the graph the result was computed from.
    std::uint64_t graph_revision = 0;
};

/// Maximum matching of the bipartite representation by Hopcroft-Karp.
///
/// Ties are broken deterministically: a greedy pass in ascending node order,
/// then each phase scans free V+ nodes in ascending order.
MatchResult maximum_matching(const Graph& g);

/// Deficiency by exhaustive Hall-Ore enumeration: max over X of |X| - |Λ(X)|.
/// Exponential; refuses graphs with more than kHallOreMaxNodes nodes.
inline constexpr std::size_t kHallOreMaxNodes = 22;
std::size_t hall_ore_deficiency_bruteforce(const Graph& g);

/// True iff no two pairs share a begin or end node and every pair is an edge.
bool verify_matching(const Graph& g, const Matching& m);

/// Searches for one augmenting path relative to `result` in `g` (which may
/// contain edges absent when `result` was computed). Applies it to `result`
/// and returns true when found.
bool augment_once(const Graph& g, MatchResult& result);

}  // namespace netmatch
