// baselines.hpp - clique decomposition baselines (multiplicity-blind)
#pragma once

#include "hyperrec/cliques.hpp"

#include <queue>
#include <unordered_set>

namespace hyperrec {

/// Every maximal clique as a multiplicity-1 hyperedge.
inline Hypergraph max_clique_baseline(const ProjectedGraph& g) {
    Hypergraph h(g.node_count());
    for (auto& q : maximal_cliques(g)) h.add(std::move(q));
    return h;
}

/// Greedy edge clique cover: repeatedly emit the maximal clique that covers
/// the most still-uncovered edges. Ties go to the lexicographically smallest
/// clique. Uses lazy re-evaluation since coverage gains only shrink.
inline Hypergraph clique_cover_baseline(const ProjectedGraph& g) {
    Hypergraph h(g.node_count());
    const auto cliques = maximal_cliques(g);
    std::unordered_set<std::uint64_t> covered;
    covered.reserve(g.edge_count());

    auto gain = [&](const Clique& q) {
        std::size_t n = 0;
        for (std::size_t i = 0; i < q.size(); ++i)
            for (std::size_t j = i + 1; j < q.size(); ++j) n += covered.count(pair_key(q[i], q[j])) == 0;
        return n;
    };

    // (gain, -index): larger gain first, then smaller index.
    using Entry = std::pair<std::size_t, std::ptrdiff_t>;
    std::priority_queue<Entry> heap;
    for (std::size_t i = 0; i < cliques.size(); ++i)
        heap.push({choose2(cliques[i].size()), -static_cast<std::ptrdiff_t>(i)});

    while (!heap.empty() && covered.size() < g.edge_count()) {
        auto [stale, neg] = heap.top();
        heap.pop();
        const Clique& q = cliques[static_cast<std::size_t>(-neg)];
        const std::size_t fresh = gain(q);
        if (fresh == 0) continue;
        if (fresh < stale) {
            heap.push({fresh, neg});
            continue;
        }
        for (std::size_t i = 0; i < q.size(); ++i)
            for (std::size_t j = i + 1; j < q.size(); ++j) covered.insert(pair_key(q[i], q[j]));
        h.add(q);
    }
    return h;
}

} // namespace hyperrec
