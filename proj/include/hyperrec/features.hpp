// features.hpp - multiplicity-aware clique features
#pragma once

#include "hyperrec/cliques.hpp"
#include "hyperrec/filtering.hpp"

#include <array>
#include <cmath>
#include <string_view>

namespace hyperrec {

inline constexpr std::size_t kFeatureCount = 23;
/// Bump whenever the layout below changes; stored models refuse a mismatch.
inline constexpr int kFeatureLayoutVersion = 1;

// Layout: four aggregate blocks of (sum, mean, min, max, population std)
//   [0,5)   weighted degree of each member node
//   [5,10)  w(u,v) of each member pair
//   [10,15) MHH(u,v) of each member pair
//   [15,20) MHH(u,v) / w(u,v) of each member pair
// followed by clique size, clique cut ratio, maximality indicator.
inline constexpr std::size_t kSizeFeature = 20;
inline constexpr std::size_t kCutRatioFeature = 21;
inline constexpr std::size_t kMaximalFeature = 22;

using CliqueFeatures = std::array<double, kFeatureCount>;

inline constexpr std::array<std::string_view, kFeatureCount> kFeatureNames = {
    "degree_sum", "degree_mean", "degree_min", "degree_max", "degree_std",
    "weight_sum", "weight_mean", "weight_min", "weight_max", "weight_std",
    "mhh_sum",    "mhh_mean",    "mhh_min",    "mhh_max",    "mhh_std",
    "ratio_sum",  "ratio_mean",  "ratio_min",  "ratio_max",  "ratio_std",
    "size",       "cut_ratio",   "maximal"};

inline Weight weighted_degree(const ProjectedGraph& g, NodeId u) { return g.strength(u); }

/// Intra-clique weight over the weight of every edge touching the clique.
inline double clique_cut_ratio(const ProjectedGraph& g, std::span<const NodeId> q) {
    if (!is_clique(g, q)) throw ValidationError("clique_cut_ratio: node set is not a clique");
    Weight intra = 0, incident = 0;
    for (std::size_t i = 0; i < q.size(); ++i) {
        incident += g.strength(q[i]);
        for (std::size_t j = i + 1; j < q.size(); ++j) intra += g.weight(q[i], q[j]);
    }
    // Each intra edge is counted from both endpoints in the strength sum.
    incident -= intra;
    return static_cast<double>(intra) / static_cast<double>(incident);
}

namespace detail {

inline void aggregate(std::span<const double> xs, CliqueFeatures& f, std::size_t at) {
    double sum = 0.0, lo = xs[0], hi = xs[0];
    for (double x : xs) {
        sum += x;
        lo = std::min(lo, x);
        hi = std::max(hi, x);
    }
    const double mean = sum / static_cast<double>(xs.size());
    double ss = 0.0;
    for (double x : xs) ss += (x - mean) * (x - mean);
    f[at] = sum;
    f[at + 1] = mean;
    f[at + 2] = lo;
    f[at + 3] = hi;
    f[at + 4] = std::sqrt(ss / static_cast<double>(xs.size()));
}

} // namespace detail

/// Features of q. Multiplicity-dependent entries read `current`; the
/// maximality indicator reads `original`, the graph the run started from.
inline CliqueFeatures extract_features(const ProjectedGraph& current, const ProjectedGraph& original,
                                       std::span<const NodeId> q_in) {
    Clique q(q_in.begin(), q_in.end());
    std::sort(q.begin(), q.end());
    if (!is_clique(current, q)) throw ValidationError("extract_features: node set is not a clique");

    CliqueFeatures f{};
    std::vector<double> node_vals;
    node_vals.reserve(q.size());
    for (NodeId u : q) node_vals.push_back(static_cast<double>(current.strength(u)));
    detail::aggregate(node_vals, f, 0);

    const std::size_t pairs = choose2(q.size());
    std::vector<double> w, h, ratio;
    w.reserve(pairs);
    h.reserve(pairs);
    ratio.reserve(pairs);
    for (std::size_t i = 0; i < q.size(); ++i)
        for (std::size_t j = i + 1; j < q.size(); ++j) {
            const auto wij = static_cast<double>(current.weight(q[i], q[j]));
            const auto hij = static_cast<double>(mhh(current, q[i], q[j]));
            w.push_back(wij);
            h.push_back(hij);
            ratio.push_back(hij / wij);
        }
    detail::aggregate(w, f, 5);
    detail::aggregate(h, f, 10);
    detail::aggregate(ratio, f, 15);

    f[kSizeFeature] = static_cast<double>(q.size());
    f[kCutRatioFeature] = clique_cut_ratio(current, q);
    f[kMaximalFeature] = is_maximal_in(original, q) ? 1.0 : 0.0;
    return f;
}

} // namespace hyperrec
