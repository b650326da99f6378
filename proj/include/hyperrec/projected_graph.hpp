// projected_graph.hpp - undirected graph with positive integer edge weights
#pragma once

#include "hyperrec/hypergraph.hpp"
#include "hyperrec/types.hpp"

#include <algorithm>
#include <span>
#include <unordered_map>

namespace hyperrec {

struct WeightedEdge {
    NodeId u;
    NodeId v;
    Weight weight;

    friend bool operator==(const WeightedEdge&, const WeightedEdge&) = default;
};

/// Weighted projected graph. Pairs of weight 0 are never stored; adjacency
/// lists are kept sorted so neighbour iteration and edges() are canonical,
/// with each list's weights stored alongside it. Weighted degree (strength)
/// is maintained incrementally.
class ProjectedGraph {
public:
    ProjectedGraph() = default;
    explicit ProjectedGraph(std::size_t node_count)
        : adjacency_(node_count), adjacency_w_(node_count), strength_(node_count, 0) {}

    /// Bulk construction from a pair-key -> weight map; zero weights are dropped.
    static ProjectedGraph from_weights(std::size_t node_count,
                                       const std::unordered_map<std::uint64_t, Weight>& weights) {
        ProjectedGraph g(node_count);
        g.weights_.reserve(weights.size());
        std::vector<std::vector<std::pair<NodeId, Weight>>> lists(node_count);
        for (const auto& [key, w] : weights) {
            if (w == 0) continue;
            NodeId u = pair_first(key), v = pair_second(key);
            if (u == v) throw ValidationError("self loop in projected graph");
            if (v >= node_count) throw ValidationError("edge endpoint outside node range");
            g.weights_.emplace(key, w);
            lists[u].emplace_back(v, w);
            lists[v].emplace_back(u, w);
            g.strength_[u] += w;
            g.strength_[v] += w;
            g.total_weight_ += w;
        }
        for (std::size_t u = 0; u < node_count; ++u) {
            std::sort(lists[u].begin(), lists[u].end());
            g.adjacency_[u].reserve(lists[u].size());
            g.adjacency_w_[u].reserve(lists[u].size());
            for (auto [v, w] : lists[u]) {
                g.adjacency_[u].push_back(v);
                g.adjacency_w_[u].push_back(w);
            }
        }
        return g;
    }

    std::size_t node_count() const noexcept { return adjacency_.size(); }
    std::size_t edge_count() const noexcept { return weights_.size(); }
    Weight total_weight() const noexcept { return total_weight_; }
    bool has_edges() const noexcept { return !weights_.empty(); }

    void set_node_count(std::size_t n) {
        if (n < adjacency_.size()) {
            for (std::size_t u = n; u < adjacency_.size(); ++u)
                if (!adjacency_[u].empty())
                    throw ValidationError("set_node_count: would drop a non-isolated node");
        }
        adjacency_.resize(n);
        adjacency_w_.resize(n);
        strength_.resize(n, 0);
    }

    Weight weight(NodeId u, NodeId v) const {
        auto it = weights_.find(pair_key(u, v));
        return it == weights_.end() ? 0 : it->second;
    }

    bool has_edge(NodeId u, NodeId v) const { return u != v && weights_.count(pair_key(u, v)) != 0; }

    std::span<const NodeId> neighbors(NodeId u) const { return adjacency_.at(u); }
    /// Weights aligned with neighbors(u).
    std::span<const Weight> neighbor_weights(NodeId u) const { return adjacency_w_.at(u); }
    std::size_t degree(NodeId u) const { return adjacency_.at(u).size(); }

    /// Sum of incident weights.
    Weight strength(NodeId u) const { return strength_.at(u); }

    std::size_t max_degree() const noexcept {
        std::size_t d = 0;
        for (const auto& nbrs : adjacency_) d = std::max(d, nbrs.size());
        return d;
    }

    /// Adds `w` to the pair, creating the edge when absent.
    void add_weight(NodeId u, NodeId v, Weight w) {
        if (u == v) throw ValidationError("self loop in projected graph");
        if (w == 0) return;
        std::size_t need = std::size_t{std::max(u, v)} + 1;
        if (need > adjacency_.size()) set_node_count(need);
        auto [it, inserted] = weights_.try_emplace(pair_key(u, v), 0);
        it->second += w;
        set_slot(u, v, it->second);
        set_slot(v, u, it->second);
        strength_[u] += w;
        strength_[v] += w;
        total_weight_ += w;
    }

    /// Subtracts `w` from an existing pair, deleting it at zero.
    void reduce_weight(NodeId u, NodeId v, Weight w) {
        auto it = weights_.find(pair_key(u, v));
        if (it == weights_.end()) throw ValidationError("reduce_weight on absent edge");
        if (w > it->second) throw ValidationError("reduce_weight below zero");
        it->second -= w;
        strength_[u] -= w;
        strength_[v] -= w;
        total_weight_ -= w;
        set_slot(u, v, it->second);
        set_slot(v, u, it->second);
        if (it->second == 0) weights_.erase(it);
    }

    /// All edges with u < v, ordered by (u, v).
    std::vector<WeightedEdge> edges() const {
        std::vector<WeightedEdge> out;
        out.reserve(weights_.size());
        for (NodeId u = 0; u < adjacency_.size(); ++u)
            for (std::size_t i = 0; i < adjacency_[u].size(); ++i)
                if (u < adjacency_[u][i]) out.push_back({u, adjacency_[u][i], adjacency_w_[u][i]});
        return out;
    }

    const std::unordered_map<std::uint64_t, Weight>& weight_map() const noexcept { return weights_; }

    friend bool operator==(const ProjectedGraph& a, const ProjectedGraph& b) {
        return a.node_count() == b.node_count() && a.weights_ == b.weights_;
    }

private:
    // Writes w as the weight of v in u's list, inserting or erasing the slot.
    void set_slot(NodeId u, NodeId v, Weight w) {
        auto& nbrs = adjacency_[u];
        auto& ws = adjacency_w_[u];
        auto it = std::lower_bound(nbrs.begin(), nbrs.end(), v);
        const auto pos = it - nbrs.begin();
        const bool present = it != nbrs.end() && *it == v;
        if (w == 0) {
            if (present) {
                nbrs.erase(it);
                ws.erase(ws.begin() + pos);
            }
        } else if (present) {
            ws[static_cast<std::size_t>(pos)] = w;
        } else {
            nbrs.insert(it, v);
            ws.insert(ws.begin() + pos, w);
        }
    }

    std::vector<std::vector<NodeId>> adjacency_;
    std::vector<std::vector<Weight>> adjacency_w_;
    std::vector<Weight> strength_;
    std::unordered_map<std::uint64_t, Weight> weights_;
    Weight total_weight_ = 0;
};

/// Clique expansion: the weight of {u,v} counts hyperedge instances holding both.
inline ProjectedGraph clique_expansion(const Hypergraph& h) {
    std::unordered_map<std::uint64_t, Weight> weights;
    for (const auto& [e, m] : h.edges())
        for (std::size_t i = 0; i < e.size(); ++i)
            for (std::size_t j = i + 1; j < e.size(); ++j) weights[pair_key(e[i], e[j])] += m;
    return ProjectedGraph::from_weights(h.node_count(), weights);
}

} // namespace hyperrec
