// cliques.hpp - maximal clique enumeration and sub-clique sampling
#pragma once

#include "hyperrec/projected_graph.hpp"
#include "hyperrec/random.hpp"

#include <algorithm>
#include <iterator>

namespace hyperrec {

/// Hyperedge candidate. Always canonical (strictly increasing ids).
using Clique = NodeSet;

namespace detail {

inline std::vector<NodeId> intersect(std::span<const NodeId> a, std::span<const NodeId> b) {
    std::vector<NodeId> out;
    out.reserve(std::min(a.size(), b.size()));
    std::set_intersection(a.begin(), a.end(), b.begin(), b.end(), std::back_inserter(out));
    return out;
}

inline std::size_t intersect_size(std::span<const NodeId> a, std::span<const NodeId> b) {
    std::size_t n = 0;
    auto i = a.begin();
    auto j = b.begin();
    while (i != a.end() && j != b.end()) {
        if (*i < *j) ++i;
        else if (*j < *i) ++j;
        else { ++n; ++i; ++j; }
    }
    return n;
}

/// Degeneracy (smallest-last) ordering via bucket queue.
inline std::vector<NodeId> degeneracy_order(const ProjectedGraph& g) {
    const std::size_t n = g.node_count();
    std::vector<std::size_t> deg(n);
    std::size_t maxd = 0;
    for (NodeId u = 0; u < n; ++u) maxd = std::max(maxd, deg[u] = g.degree(u));
    std::vector<std::vector<NodeId>> buckets(maxd + 1);
    for (NodeId u = n; u-- > 0;) buckets[deg[u]].push_back(u);
    std::vector<char> done(n, 0);
    std::vector<NodeId> order;
    order.reserve(n);
    std::size_t d = 0;
    while (order.size() < n) {
        d = d == 0 ? 0 : d - 1;
        while (buckets[d].empty()) ++d;
        NodeId u = buckets[d].back();
        buckets[d].pop_back();
        if (done[u] || deg[u] != d) continue; // stale entry
        done[u] = 1;
        order.push_back(u);
        for (NodeId v : g.neighbors(u))
            if (!done[v]) buckets[--deg[v]].push_back(v);
    }
    return order;
}

class BronKerbosch {
public:
    BronKerbosch(const ProjectedGraph& g, std::vector<Clique>& out) : g_(g), out_(out) {}

    void expand(std::vector<NodeId>& r, std::vector<NodeId> p, std::vector<NodeId> x) {
        if (p.empty()) {
            if (x.empty() && r.size() >= 2) {
                Clique c = r;
                std::sort(c.begin(), c.end());
                out_.push_back(std::move(c));
            }
            return;
        }
        // Tomita pivot: the vertex of P u X with most neighbours in P.
        NodeId pivot = p.front();
        std::size_t best = 0;
        bool first = true;
        for (const auto* set : {&p, &x})
            for (NodeId u : *set) {
                std::size_t c = intersect_size(p, g_.neighbors(u));
                if (first || c > best) {
                    best = c;
                    pivot = u;
                    first = false;
                }
            }
        std::vector<NodeId> candidates;
        auto pn = g_.neighbors(pivot);
        std::set_difference(p.begin(), p.end(), pn.begin(), pn.end(), std::back_inserter(candidates));
        for (NodeId v : candidates) {
            auto nv = g_.neighbors(v);
            r.push_back(v);
            expand(r, intersect(p, nv), intersect(x, nv));
            r.pop_back();
            p.erase(std::lower_bound(p.begin(), p.end(), v));
            x.insert(std::lower_bound(x.begin(), x.end(), v), v);
        }
    }

private:
    const ProjectedGraph& g_;
    std::vector<Clique>& out_;
};

} // namespace detail

/// Every maximal clique (size >= 2) of the unweighted skeleton, in
/// lexicographic order. Pivoted Bron-Kerbosch, outer loop in degeneracy order.
inline std::vector<Clique> maximal_cliques(const ProjectedGraph& g) {
    std::vector<Clique> out;
    const auto order = detail::degeneracy_order(g);
    std::vector<std::size_t> rank(g.node_count());
    for (std::size_t i = 0; i < order.size(); ++i) rank[order[i]] = i;

    detail::BronKerbosch bk(g, out);
    std::vector<NodeId> r;
    for (NodeId v : order) {
        if (g.degree(v) == 0) continue;
        std::vector<NodeId> p, x;
        for (NodeId w : g.neighbors(v)) (rank[w] > rank[v] ? p : x).push_back(w);
        r.assign(1, v);
        bk.expand(r, std::move(p), std::move(x));
    }
    std::sort(out.begin(), out.end());
    return out;
}

/// True iff |q| >= 2 and every pair of q is an edge of g.
inline bool is_clique(const ProjectedGraph& g, std::span<const NodeId> q) {
    if (q.size() < 2) return false;
    for (std::size_t i = 0; i < q.size(); ++i)
        for (std::size_t j = i + 1; j < q.size(); ++j)
            if (!g.has_edge(q[i], q[j])) return false;
    return true;
}

/// No outside node is adjacent to all of q. Requires q to be a clique of g.
inline bool is_maximal_in(const ProjectedGraph& g, std::span<const NodeId> q) {
    if (!is_clique(g, q)) throw ValidationError("is_maximal_in: node set is not a clique of the graph");
    NodeId anchor = *std::min_element(q.begin(), q.end(),
                                      [&](NodeId a, NodeId b) { return g.degree(a) < g.degree(b); });
    for (NodeId z : g.neighbors(anchor)) {
        if (std::find(q.begin(), q.end(), z) != q.end()) continue;
        bool extends = true;
        for (NodeId u : q)
            if (u != anchor && !g.has_edge(u, z)) {
                extends = false;
                break;
            }
        if (extends) return false;
    }
    return true;
}

/// One uniformly drawn k-subset of q for each k in [2, |q|-1], canonical.
inline std::vector<Clique> sample_subcliques(std::span<const NodeId> q, Rng& rng) {
    std::vector<Clique> out;
    if (q.size() < 3) return out;
    out.reserve(q.size() - 2);
    for (std::size_t k = 2; k + 1 <= q.size(); ++k) {
        Clique sub;
        sub.reserve(k);
        std::sample(q.begin(), q.end(), std::back_inserter(sub), k, rng);
        out.push_back(canonical(std::move(sub)));
    }
    return out;
}

} // namespace hyperrec
