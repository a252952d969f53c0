#pragma once

#include <cstddef>
#include <cstdint>
#include <limits>
#include <span>
#include <utility>
#include <vector>

namespace netmatch {

using NodeId = std::uint32_t;
inline constexpr NodeId kNoNode = std::numeric_limits<NodeId>::max();

struct Edge {
    NodeId u;
    NodeId v;
    friend bool operator==(const Edge&, const Edge&) = default;
    friend auto operator<=>(const Edge&, const Edge&) = default;
};

/// Simple undirected graph on the dense node set 0..n-1.
///
/// Each adjacency list is kept sorted and duplicate-free, so membership is a
/// binary search and iteration order is deterministic.
class Graph {
public:
    Graph() = default;
    explicit Graph(std::size_t node_count);

    std::size_t node_count() const { return adjacency_.size(); }
    std::size_t edge_count() const { return edge_count_; }

    /// Adds the undirected edge {i, j}. Returns false if it was already present.
    /// Throws std::invalid_argument on a self-loop or an out-of-range id.
    bool add_edge(NodeId i, NodeId j);

    /// Removes {i, j}; returns false if it was absent.
    bool remove_edge(NodeId i, NodeId j);

    bool has_edge(NodeId i, NodeId j) const;

    std::span<const NodeId> neighbors(NodeId i) const { return adjacency_[i]; }
    std::size_t degree(NodeId i) const { return adjacency_[i].size(); }
    double average_degree() const;

    /// Appends an isolated node and returns its id.
    NodeId add_node();

    /// Edges with u < v in lexicographic order.
    std::vector<Edge> edges() const;

    /// Incremented on every successful mutation; lets derived results detect
    /// that the graph changed underneath them.
    std::uint64_t revision() const { return revision_; }

    /// Full scan of the symmetry, no-self-loop, sortedness and edge-count
    /// invariants.
    bool check_invariants() const;

    friend bool operator==(const Graph& a, const Graph& b) {
        return a.adjacency_ == b.adjacency_;
    }

private:
    void check_id(NodeId i) const;

    std::vector<std::vector<NodeId>> adjacency_;
    std::size_t edge_count_ = 0;
    std::uint64_t revision_ = 0;
};

struct TripletCounts {
    /// Ordered closed triplets, i.e. three per triangle.
    std::uint64_t closed_triplets = 0;
    /// Connected triplets (2-wedges) that are not closed.
    std::uint64_t open_triplets = 0;

    std::uint64_t triangles() const { return closed_triplets / 3; }
    std::uint64_t connected_triplets() const { return closed_triplets + open_triplets; }
};

std::uint64_t count_triangles(const Graph& g);
TripletCounts count_triplets(const Graph& g);

/// Transitivity: closed / (closed + open) connected triplets. A graph without
/// any connected triplet yields 0 and sets *no_triplets when given.
double global_clustering(const Graph& g, bool* no_triplets = nullptr);

/// Common neighbors of i and j (sorted).
std::vector<NodeId> common_neighbors(const Graph& g, NodeId i, NodeId j);

/// Mean-field clustering estimate for a BA network, (L-1)/8 * (log n)^2 / n.
/// `log_base` <= 0 selects the natural logarithm.
double theoretical_clustering_ba(std::size_t n, std::size_t links, double log_base = 0.0);

/// HK estimate: 4*L2/d + the BA term.
double theoretical_clustering_hk(std::size_t n, std::size_t links, std::size_t triad_links,
                                 std::size_t degree, double log_base = 0.0);

}  // namespace netmatch
