#include "netmatch/graph.hpp"

#include <algorithm>
#include <cmath>
#include <stdexcept>
#include <string>

namespace netmatch {

Graph::Graph(std::size_t node_count) : adjacency_(node_count) {}

void Graph::check_id(NodeId i) const {
    if (i >= adjacency_.size()) {
        throw std::invalid_argument("node id " + std::to_string(i) + " out of range (n = " +
                                    std::to_string(adjacency_.size()) + ")");
    }
}

bool Graph::add_edge(NodeId i, NodeId j) {
    check_id(i);
    check_id(j);
    if (i == j) {
        throw std::invalid_argument("self-loop on node " + std::to_string(i) + " rejected");
    }
    auto& ai = adjacency_[i];
    auto pos = std::lower_bound(ai.begin(), ai.end(), j);
    if (pos != ai.end() && *pos == j) {
        return false;
    }
    ai.insert(pos, j);
    auto& aj = adjacency_[j];
    aj.insert(std::lower_bound(aj.begin(), aj.end(), i), i);
    ++edge_count_;
    ++revision_;
    return true;
}

bool Graph::remove_edge(NodeId i, NodeId j) {
    check_id(i);
    check_id(j);
    auto& ai = adjacency_[i];
    auto pos = std::lower_bound(ai.begin(), ai.end(), j);
    if (pos == ai.end() || *pos != j) {
        return false;
    }
    ai.erase(pos);
    auto& aj = adjacency_[j];
    aj.erase(std::lower_bound(aj.begin(), aj.end(), i));
    --edge_count_;
    ++revision_;
    return true;
}

bool Graph::has_edge(NodeId i, NodeId j) const {
    if (i >= adjacency_.size() || j >= adjacency_.size()) {
        return false;
    }
    const auto& a = adjacency_[i].size() <= adjacency_[j].size() ? adjacency_[i] : adjacency_[j];
    const NodeId other = &a == &adjacency_[i] ? j : i;
    return std::binary_search(a.begin(), a.end(), other);
}

double Graph::average_degree() const {
    if (adjacency_.empty()) {
        return 0.0;
    }
    return 2.0 * static_cast<double>(edge_count_) / static_cast<double>(adjacency_.size());
}

NodeId Graph::add_node() {
    adjacency_.emplace_back();
    ++revision_;
    return static_cast<NodeId>(adjacency_.size() - 1);
}

std::vector<Edge> Graph::edges() const {
    std::vector<Edge> out;
    out.reserve(edge_count_);
    for (NodeId u = 0; u < adjacency_.size(); ++u) {
        for (NodeId v : adjacency_[u]) {
            if (u < v) {
                out.push_back({u, v});
            }
        }
    }
    return out;
}

bool Graph::check_invariants() const {
    std::size_t endpoint_sum = 0;
    for (NodeId u = 0; u < adjacency_.size(); ++u) {
        const auto& a = adjacency_[u];
        endpoint_sum += a.size();
        for (std::size_t k = 0; k < a.size(); ++k) {
            const NodeId v = a[k];
            if (v == u || v >= adjacency_.size()) {
                return false;
            }
            if (k > 0 && a[k - 1] >= v) {
                return false;
            }
            const auto& b = adjacency_[v];
            if (!std::binary_search(b.begin(), b.end(), u)) {
                return false;
            }
        }
    }
    return endpoint_sum == 2 * edge_count_;
}

std::uint64_t count_triangles(const Graph& g) {
    const std::size_t n = g.node_count();
    // Orient every edge from lower to higher (degree, id) rank; each triangle
    // is then found exactly once as an intersection of forward lists.
    auto ranks_before = [&g](NodeId a, NodeId b) {
        const auto da = g.degree(a);
        const auto db = g.degree(b);
        return da < db || (da == db && a < b);
    };
    std::vector<std::vector<NodeId>> forward(n);
    for (NodeId u = 0; u < n; ++u) {
        for (NodeId v : g.neighbors(u)) {
            if (ranks_before(u, v)) {
                forward[u].push_back(v);
            }
        }
    }
    std::uint64_t triangles = 0;
    for (NodeId u = 0; u < n; ++u) {
        const auto& fu = forward[u];
        for (NodeId v : fu) {
            const auto& fv = forward[v];
            auto a = fu.begin();
            auto b = fv.begin();
            while (a != fu.end() && b != fv.end()) {
                if (*a < *b) {
                    ++a;
                } else if (*b < *a) {
                    ++b;
                } else {
                    ++triangles;
                    ++a;
                    ++b;
                }
            }
        }
    }
    return triangles;
}

TripletCounts count_triplets(const Graph& g) {
    std::uint64_t wedges = 0;
    for (NodeId u = 0; u < g.node_count(); ++u) {
        const std::uint64_t d = g.degree(u);
        wedges += d * (d - (d > 0 ? 1 : 0)) / 2;
    }
    TripletCounts counts;
    counts.closed_triplets = 3 * count_triangles(g);
    counts.open_triplets = wedges - counts.closed_triplets;
    return counts;
}

double global_clustering(const Graph& g, bool* no_triplets) {
    const auto counts = count_triplets(g);
    const auto total = counts.connected_triplets();
    if (no_triplets != nullptr) {
        *no_triplets = total == 0;
    }
    if (total == 0) {
        return 0.0;
    }
    return static_cast<double>(counts.closed_triplets) / static_cast<double>(total);
}

std::vector<NodeId> common_neighbors(const Graph& g, NodeId i, NodeId j) {
    std::vector<NodeId> out;
    const auto a = g.neighbors(i);
    const auto b = g.neighbors(j);
    std::set_intersection(a.begin(), a.end(), b.begin(), b.end(), std::back_inserter(out));
    return out;
}

namespace {

double log_in_base(double x, double base) {
    return base <= 0.0 ? std::log(x) : std::log(x) / std::log(base);
}

}  // namespace

double theoretical_clustering_ba(std::size_t n, std::size_t links, double log_base) {
    if (n < 2 || links < 1) {
        throw std::invalid_argument("theoretical_clustering_ba requires n >= 2 and L >= 1");
    }
    const double nn = static_cast<double>(n);
    const double lg = log_in_base(nn, log_base);
    return (static_cast<double>(links) - 1.0) / 8.0 * lg * lg / nn;
}

double theoretical_clustering_hk(std::size_t n, std::size_t links, std::size_t triad_links,
                                 std::size_t degree, double log_base) {
    if (degree < 1) {
        throw std::invalid_argument("theoretical_clustering_hk requires d >= 1");
    }
    return 4.0 * static_cast<double>(triad_links) / static_cast<double>(degree) +
           theoretical_clustering_ba(n, links, log_base);
}

}  // namespace netmatch
