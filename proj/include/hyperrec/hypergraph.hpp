// hypergraph.hpp - multiset of hyperedges stored as canonical node set -> multiplicity
#pragma once

#include "hyperrec/types.hpp"

#include <algorithm>
#include <map>
#include <span>
#include <string>

namespace hyperrec {

/// Sort and deduplicate in place.
inline NodeSet canonical(NodeSet nodes) {
    std::sort(nodes.begin(), nodes.end());
    nodes.erase(std::unique(nodes.begin(), nodes.end()), nodes.end());
    return nodes;
}

inline bool is_canonical(std::span<const NodeId> nodes) noexcept {
    for (std::size_t i = 1; i < nodes.size(); ++i)
        if (nodes[i - 1] >= nodes[i]) return false;
    return true;
}

/// Hypergraph over nodes [0, node_count). Each unique hyperedge maps to its
/// multiplicity; the instance multiset is the expansion of that map.
///
/// Iteration over edges() is in lexicographic order of the canonical node
/// sets, which every deterministic consumer relies on.
class Hypergraph {
public:
    using EdgeMap = std::map<NodeSet, Multiplicity>;

    Hypergraph() = default;
    explicit Hypergraph(std::size_t node_count) : node_count_(node_count) {}

    std::size_t node_count() const noexcept { return node_count_; }

    /// Grows the node universe. Shrinking below an existing member is refused.
    void set_node_count(std::size_t n) {
        if (n < node_count_) {
            for (const auto& [e, m] : edges_)
                if (e.back() >= n)
                    throw ValidationError("set_node_count: hyperedge member " +
                                          std::to_string(e.back()) + " outside new node range");
        }
        node_count_ = n;
    }

    /// Adds `mult` instances of `nodes` (canonicalised here). Members beyond
    /// node_count extend the universe.
    void add(NodeSet nodes, Multiplicity mult = 1) {
        nodes = canonical(std::move(nodes));
        if (nodes.size() < 2)
            throw ValidationError("hyperedge must contain at least 2 distinct nodes");
        if (mult == 0) return;
        node_count_ = std::max<std::size_t>(node_count_, std::size_t{nodes.back()} + 1);
        edges_[std::move(nodes)] += mult;
    }

    /// Removes up to `mult` instances; returns how many were removed.
    Multiplicity remove(const NodeSet& nodes, Multiplicity mult = 1) {
        auto it = edges_.find(nodes);
        if (it == edges_.end()) return 0;
        Multiplicity taken = std::min(mult, it->second);
        it->second -= taken;
        if (it->second == 0) edges_.erase(it);
        return taken;
    }

    void merge(const Hypergraph& other) {
        node_count_ = std::max(node_count_, other.node_count_);
        for (const auto& [e, m] : other.edges_) edges_[e] += m;
    }

    Multiplicity multiplicity(const NodeSet& nodes) const {
        auto it = edges_.find(nodes);
        return it == edges_.end() ? 0 : it->second;
    }

    bool contains(const NodeSet& nodes) const { return edges_.count(nodes) != 0; }

    const EdgeMap& edges() const noexcept { return edges_; }
    std::size_t unique_count() const noexcept { return edges_.size(); }
    bool empty() const noexcept { return edges_.empty(); }

    Multiplicity instance_count() const noexcept {
        Multiplicity total = 0;
        for (const auto& [e, m] : edges_) total += m;
        return total;
    }

    /// Instances in canonical order, each unique edge repeated by multiplicity.
    std::vector<NodeSet> instances() const {
        std::vector<NodeSet> out;
        out.reserve(instance_count());
        for (const auto& [e, m] : edges_)
            for (Multiplicity i = 0; i < m; ++i) out.push_back(e);
        return out;
    }

    /// Throws ValidationError when an invariant is broken.
    void validate() const {
        for (const auto& [e, m] : edges_) {
            if (e.size() < 2) throw ValidationError("hyperedge of size < 2");
            if (!is_canonical(e)) throw ValidationError("hyperedge not in canonical order");
            if (e.back() >= node_count_) throw ValidationError("hyperedge member outside node range");
            if (m == 0) throw ValidationError("zero multiplicity stored");
        }
    }

    friend bool operator==(const Hypergraph&, const Hypergraph&) = default;

private:
    std::size_t node_count_ = 0;
    EdgeMap edges_;
};

/// Every multiplicity forced to 1; the unique edge set is untouched.
inline Hypergraph reduce_multiplicity(const Hypergraph& h) {
    Hypergraph out(h.node_count());
    for (const auto& [e, m] : h.edges()) out.add(e, 1);
    return out;
}

} // namespace hyperrec
