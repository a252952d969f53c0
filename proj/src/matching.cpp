#include "netmatch/matching.hpp"

#include <bit>
#include <deque>
#include <limits>
#include <stdexcept>
#include <string>

namespace netmatch {

namespace {

constexpr std::size_t kUnreached = std::numeric_limits<std::size_t>::max();

void finalize(const Graph& g, MatchResult& r) {
    const std::size_t n = g.node_count();
    r.matching.clear();
    r.unmatched_plus.clear();
    r.unmatched_minus.clear();
    for (NodeId u = 0; u < n; ++u) {
        if (r.mate_plus[u] == kNoNode) {
            r.unmatched_plus.push_back(u);
        } else {
            r.matching.push_back({u, r.mate_plus[u]});
        }
        if (r.mate_minus[u] == kNoNode) {
            r.unmatched_minus.push_back(u);
        }
    }
    r.deficiency = n - r.matching.size();
    r.graph_revision = g.revision();
}

class HopcroftKarp {
public:
    explicit HopcroftKarp(const Graph& g)
        : g_(g), n_(g.node_count()), mate_plus_(n_, kNoNode), mate_minus_(n_, kNoNode),
          dist_(n_), next_(n_) {}

    void run() {
        for (NodeId u = 0; u < n_; ++u) {
            for (NodeId v : g_.neighbors(u)) {
                if (mate_minus_[v] == kNoNode) {
                    mate_plus_[u] = v;
                    mate_minus_[v] = u;
                    break;
                }
            }
        }
        while (layer()) {
            std::fill(next_.begin(), next_.end(), 0);
            for (NodeId u = 0; u < n_; ++u) {
                if (mate_plus_[u] == kNoNode) {
                    augment_from(u);
                }
            }
        }
    }

    MatchResult result() && {
        MatchResult r;
        r.mate_plus = std::move(mate_plus_);
        r.mate_minus = std::move(mate_minus_);
        finalize(g_, r);
        return r;
    }

private:
    /// BFS layering from all free V+ nodes; true if some free V- is reachable.
    bool layer() {
        std::deque<NodeId> queue;
        for (NodeId u = 0; u < n_; ++u) {
            if (mate_plus_[u] == kNoNode) {
                dist_[u] = 0;
                queue.push_back(u);
            } else {
                dist_[u] = kUnreached;
            }
        }
        bool found = false;
        while (!queue.empty()) {
            const NodeId u = queue.front();
            queue.pop_front();
            for (NodeId v : g_.neighbors(u)) {
                const NodeId w = mate_minus_[v];
                if (w == kNoNode) {
                    found = true;
                } else if (dist_[w] == kUnreached) {
                    dist_[w] = dist_[u] + 1;
                    queue.push_back(w);
                }
            }
        }
        return found;
    }

    /// Iterative layered DFS; next_[u] is the index of the link u+ is trying.
    bool augment_from(NodeId root) {
        stack_.clear();
        stack_.push_back(root);
        while (!stack_.empty()) {
            const NodeId u = stack_.back();
            const auto adj = g_.neighbors(u);
            if (next_[u] == adj.size()) {
                dist_[u] = kUnreached;
                stack_.pop_back();
                if (!stack_.empty()) ++next_[stack_.back()];
                continue;
            }
            const NodeId v = adj[next_[u]];
            const NodeId w = mate_minus_[v];
            if (w == kNoNode) {
                for (NodeId x : stack_) {
                    const NodeId y = g_.neighbors(x)[next_[x]];
                    mate_plus_[x] = y;
                    mate_minus_[y] = x;
                }
                return true;
            }
            if (dist_[w] != kUnreached && dist_[w] == dist_[u] + 1) {
                stack_.push_back(w);
            } else {
                ++next_[u];
            }
        }
        return false;
    }

    const Graph& g_;
    std::size_t n_;
    std::vector<NodeId> mate_plus_;
    std::vector<NodeId> mate_minus_;
    std::vector<std::size_t> dist_;
    std::vector<std::size_t> next_;
    std::vector<NodeId> stack_;
};

}  // namespace

MatchResult maximum_matching(const Graph& g) {
    HopcroftKarp hk(g);
    hk.run();
    return std::move(hk).result();
}

std::size_t hall_ore_deficiency_bruteforce(const Graph& g) {
    const std::size_t n = g.node_count();
    if (n > kHallOreMaxNodes) {
        throw std::invalid_argument("Hall-Ore enumeration refused for n = " + std::to_string(n) +
                                    " (limit " + std::to_string(kHallOreMaxNodes) + ")");
    }
    std::vector<std::uint32_t> neighbor_mask(n, 0);
    for (NodeId u = 0; u < n; ++u) {
        for (NodeId v : g.neighbors(u)) neighbor_mask[u] |= std::uint32_t{1} << v;
    }
    const std::uint32_t subsets = std::uint32_t{1} << n;
    // lambda[X] = Λ(X), built from X without its lowest member.
    std::vector<std::uint32_t> lambda(subsets, 0);
    std::size_t best = 0;
    for (std::uint32_t x = 1; x < subsets; ++x) {
        const int low = std::countr_zero(x);
        lambda[x] = lambda[x & (x - 1)] | neighbor_mask[low];
        const int gap = std::popcount(x) - std::popcount(lambda[x]);
        if (gap > 0 && static_cast<std::size_t>(gap) > best) best = static_cast<std::size_t>(gap);
    }
    return best;
}

bool verify_matching(const Graph& g, const Matching& m) {
    const std::size_t n = g.node_count();
    std::vector<bool> used_begin(n, false);
    std::vector<bool> used_end(n, false);
    for (const auto& p : m) {
        if (p.begin >= n || p.end >= n) return false;
        if (used_begin[p.begin] || used_end[p.end]) return false;
        if (!g.has_edge(p.begin, p.end)) return false;
        used_begin[p.begin] = true;
        used_end[p.end] = true;
    }
    return true;
}

bool augment_once(const Graph& g, MatchResult& r) {
    const std::size_t n = g.node_count();
    if (r.mate_plus.size() != n || r.mate_minus.size() != n) {
        throw std::invalid_argument("augment_once: matching does not fit the graph");
    }
    std::vector<NodeId> reached_from(n, kNoNode);
    std::vector<bool> seen(n, false);
    std::deque<NodeId> queue;
    for (NodeId u = 0; u < n; ++u) {
        if (r.mate_plus[u] == kNoNode) queue.push_back(u);
    }
    while (!queue.empty()) {
        const NodeId u = queue.front();
        queue.pop_front();
        for (NodeId v : g.neighbors(u)) {
            if (seen[v]) continue;
            seen[v] = true;
            reached_from[v] = u;
            const NodeId w = r.mate_minus[v];
            if (w != kNoNode) {
                queue.push_back(w);
                continue;
            }
            // Flip the alternating path ending at the free node v-.
            NodeId end = v;
            while (end != kNoNode) {
                const NodeId begin = reached_from[end];
                const NodeId previous = r.mate_plus[begin];
                r.mate_plus[begin] = end;
                r.mate_minus[end] = begin;
                end = previous;
            }
            finalize(g, r);
            return true;
        }
    }
    return false;
}

}  // namespace netmatch
