// filtering.hpp - guaranteed size-2 hyperedge extraction
//
// MHH(u,v) = sum over common neighbours z of min(w(u,z), w(v,z)) bounds the
// number of size>=3 hyperedges holding both u and v, so any surplus
// r = w(u,v) - MHH(u,v) > 0 must consist of size-2 hyperedges {u,v}.
#pragma once

#include "hyperrec/hypergraph.hpp"
#include "hyperrec/projected_graph.hpp"

#include <map>
#include <ostream>

namespace hyperrec {

namespace detail {

// mhh() without the edge check.
inline Weight mhh_unchecked(const ProjectedGraph& g, NodeId u, NodeId v) {
    if (g.degree(u) > g.degree(v)) std::swap(u, v);
    const auto nu = g.neighbors(u), nv = g.neighbors(v);
    const auto wu = g.neighbor_weights(u), wv = g.neighbor_weights(v);
    Weight total = 0;
    if (nv.size() > 8 * nu.size()) {
        // Binary search each short-list entry in the long list.
        auto from = nv.begin();
        for (std::size_t i = 0; i < nu.size(); ++i) {
            from = std::lower_bound(from, nv.end(), nu[i]);
            if (from == nv.end()) break;
            if (*from == nu[i]) total += std::min(wu[i], wv[static_cast<std::size_t>(from - nv.begin())]);
        }
        return total;
    }
    for (std::size_t i = 0, j = 0; i < nu.size() && j < nv.size();) {
        if (nu[i] < nv[j]) ++i;
        else if (nv[j] < nu[i]) ++j;
        else total += std::min(wu[i++], wv[j++]);
    }
    return total;
}

} // namespace detail

inline Weight mhh(const ProjectedGraph& g, NodeId u, NodeId v) {
    if (!g.has_edge(u, v)) throw ValidationError("mhh: {u,v} is not an edge");
    return detail::mhh_unchecked(g, u, v);
}

/// w(u,v) - MHH(u,v); negative means no guarantee.
inline std::int64_t residual(const ProjectedGraph& g, NodeId u, NodeId v) {
    Weight h = mhh(g, u, v); // throws on a missing edge
    return static_cast<std::int64_t>(g.weight(u, v)) - static_cast<std::int64_t>(h);
}

struct FilterReport {
    std::map<std::pair<NodeId, NodeId>, Multiplicity> guaranteed;
    std::size_t edges_removed = 0;
    Weight total_multiplicity_removed = 0;
    std::size_t edges_examined = 0;
    std::size_t negative_residuals = 0;
    std::size_t zero_residuals = 0;

    /// Line-oriented "key=value" summary.
    void write(std::ostream& os) const {
        os << "filter.edges_examined=" << edges_examined << '\n'
           << "filter.guaranteed_pairs=" << guaranteed.size() << '\n'
           << "filter.edges_removed=" << edges_removed << '\n'
           << "filter.total_multiplicity_removed=" << total_multiplicity_removed << '\n'
           << "filter.zero_residuals=" << zero_residuals << '\n'
           << "filter.negative_residuals=" << negative_residuals << '\n';
    }
};

struct FilterResult {
    ProjectedGraph remaining;
    Hypergraph emitted;
    FilterReport report;
};

/// Single pass over the edges in canonical order. Every MHH is evaluated on
/// the input weights; reductions are applied to a copy afterwards.
inline FilterResult filter_guaranteed(const ProjectedGraph& g) {
    FilterResult out{g, Hypergraph(g.node_count()), {}};
    const auto edges = g.edges();
    out.report.edges_examined = edges.size();

    std::vector<std::int64_t> r(edges.size());
    for (std::size_t i = 0; i < edges.size(); ++i)
        r[i] = static_cast<std::int64_t>(edges[i].weight) -
               static_cast<std::int64_t>(detail::mhh_unchecked(g, edges[i].u, edges[i].v));

    for (std::size_t i = 0; i < edges.size(); ++i) {
        const auto& e = edges[i];
        if (r[i] < 0) ++out.report.negative_residuals;
        if (r[i] == 0) ++out.report.zero_residuals;
        if (r[i] <= 0) continue;
        auto count = static_cast<Multiplicity>(r[i]);
        out.emitted.add({e.u, e.v}, count);
        out.report.guaranteed[{e.u, e.v}] = count;
        out.report.total_multiplicity_removed += count;
        if (count == e.weight) ++out.report.edges_removed;
        out.remaining.reduce_weight(e.u, e.v, count);
    }
    return out;
}

} // namespace hyperrec
