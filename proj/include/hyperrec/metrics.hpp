// metrics.hpp - reconstruction accuracy and structure-preservation measures
#pragma once

#include "hyperrec/projected_graph.hpp"

#include <array>
#include <cmath>
#include <cstdio>
#include <map>
#include <ostream>

namespace hyperrec {

/// |E1 & E2| / |E1 | E2| over unique hyperedges; 1 when both are empty.
inline double jaccard(const Hypergraph& a, const Hypergraph& b) {
    std::size_t inter = 0, uni = 0;
    auto i = a.edges().begin(), ie = a.edges().end();
    auto j = b.edges().begin(), je = b.edges().end();
    while (i != ie || j != je) {
        ++uni;
        if (j == je || (i != ie && i->first < j->first)) ++i;
        else if (i == ie || j->first < i->first) ++j;
        else { ++inter; ++i; ++j; }
    }
    return uni == 0 ? 1.0 : static_cast<double>(inter) / static_cast<double>(uni);
}

/// Sum of min multiplicities over sum of max multiplicities; 1 when both are empty.
inline double multi_jaccard(const Hypergraph& a, const Hypergraph& b) {
    Multiplicity lo = 0, hi = 0;
    auto i = a.edges().begin(), ie = a.edges().end();
    auto j = b.edges().begin(), je = b.edges().end();
    while (i != ie || j != je) {
        if (j == je || (i != ie && i->first < j->first)) { hi += i->second; ++i; }
        else if (i == ie || j->first < i->first) { hi += j->second; ++j; }
        else {
            lo += std::min(i->second, j->second);
            hi += std::max(i->second, j->second);
            ++i;
            ++j;
        }
    }
    return hi == 0 ? 1.0 : static_cast<double>(lo) / static_cast<double>(hi);
}

/// |x - y| / max(x, y), 0 when both are 0.
inline double normalized_difference(double x, double y) {
    const double m = std::max(x, y);
    return m == 0.0 ? 0.0 : std::abs(x - y) / m;
}

/// Two-sample Kolmogorov-Smirnov D: sup |F1 - F2| of the empirical CDFs.
inline double ks_statistic(std::vector<double> a, std::vector<double> b) {
    if (a.empty() || b.empty()) throw ValidationError("ks_statistic: empty sample");
    std::sort(a.begin(), a.end());
    std::sort(b.begin(), b.end());
    const auto na = static_cast<double>(a.size()), nb = static_cast<double>(b.size());
    std::size_t i = 0, j = 0;
    double d = 0.0;
    while (i < a.size() && j < b.size()) {
        const double x = std::min(a[i], b[j]);
        while (i < a.size() && a[i] == x) ++i;
        while (j < b.size() && b[j] == x) ++j;
        d = std::max(d, std::abs(static_cast<double>(i) / na - static_cast<double>(j) / nb));
    }
    return d;
}

struct ScalarProperty {
    std::string name;
    double truth = 0.0;
    double recon = 0.0;
    double difference = 0.0;
};

struct DistributionProperty {
    std::string name;
    double ks = 0.0;
};

struct PropertyReport {
    std::vector<ScalarProperty> scalars;
    std::vector<DistributionProperty> distributions;

    void write_table(std::ostream& os) const {
        char buf[200];
        std::snprintf(buf, sizeof buf, "%-24s %14s %14s %12s\n", "property", "truth", "recon", "norm.diff");
        os << buf;
        for (const auto& s : scalars) {
            std::snprintf(buf, sizeof buf, "%-24s %14.6f %14.6f %12.6f\n", s.name.c_str(), s.truth, s.recon,
                          s.difference);
            os << buf;
        }
        std::snprintf(buf, sizeof buf, "%-24s %14s\n", "distribution", "KS D");
        os << buf;
        for (const auto& d : distributions) {
            std::snprintf(buf, sizeof buf, "%-24s %14.6f\n", d.name.c_str(), d.ks);
            os << buf;
        }
    }

    void write_keyvalue(std::ostream& os) const {
        char buf[64];
        auto num = [&](double v) {
            std::snprintf(buf, sizeof buf, "%.17g", v);
            return std::string(buf);
        };
        for (const auto& s : scalars) {
            os << "property." << s.name << ".truth=" << num(s.truth) << '\n';
            os << "property." << s.name << ".recon=" << num(s.recon) << '\n';
            os << "property." << s.name << ".normdiff=" << num(s.difference) << '\n';
        }
        for (const auto& d : distributions) os << "distribution." << d.name << ".ks=" << num(d.ks) << '\n';
    }
};

namespace detail {

// Instances containing each node, non-isolated nodes only.
inline std::vector<double> node_degrees(const Hypergraph& h) {
    std::vector<Multiplicity> deg(h.node_count(), 0);
    for (const auto& [e, m] : h.edges())
        for (NodeId u : e) deg[u] += m;
    std::vector<double> out;
    for (auto d : deg)
        if (d) out.push_back(static_cast<double>(d));
    return out;
}

inline std::vector<double> pair_degrees(const Hypergraph& h) {
    const auto g = clique_expansion(h);
    std::vector<double> out;
    for (const auto& [k, w] : g.weight_map()) out.push_back(static_cast<double>(w));
    return out;
}

using Triple = std::array<NodeId, 3>;

inline void count_triples(const Hypergraph& h, std::map<Triple, std::array<Multiplicity, 2>>& acc, int side) {
    for (const auto& [e, m] : h.edges())
        for (std::size_t i = 0; i < e.size(); ++i)
            for (std::size_t j = i + 1; j < e.size(); ++j)
                for (std::size_t k = j + 1; k < e.size(); ++k) acc[{e[i], e[j], e[k]}][side] += m;
}

// KS with the empty-sample conventions used by the report: 0 when both
// sides are empty, 1 when exactly one is.
inline double ks_or_convention(std::vector<double> a, std::vector<double> b) {
    if (a.empty() && b.empty()) return 0.0;
    if (a.empty() || b.empty()) return 1.0;
    return ks_statistic(std::move(a), std::move(b));
}

} // namespace detail

/// Scalar and distributional comparison. Degrees count hyperedge instances;
/// the triple-degree distribution is taken over every triple that co-occurs
/// in at least one hyperedge of either side (zeros included).
inline PropertyReport property_report(const Hypergraph& truth, const Hypergraph& recon) {
    PropertyReport rep;
    auto scalar = [&](std::string name, double t, double r) {
        rep.scalars.push_back({std::move(name), t, r, normalized_difference(t, r)});
    };
    auto summary = [](const Hypergraph& h) {
        struct S {
            double nodes, edges, avg_degree, avg_size, density;
        } s{};
        s.nodes = static_cast<double>(h.node_count());
        const auto inst = static_cast<double>(h.instance_count());
        s.edges = inst;
        double size_sum = 0.0;
        for (const auto& [e, m] : h.edges()) size_sum += static_cast<double>(e.size() * m);
        const auto deg = detail::node_degrees(h);
        double deg_sum = 0.0;
        for (double d : deg) deg_sum += d;
        s.avg_degree = deg.empty() ? 0.0 : deg_sum / static_cast<double>(deg.size());
        s.avg_size = inst == 0.0 ? 0.0 : size_sum / inst;
        s.density = s.nodes == 0.0 ? 0.0 : inst / s.nodes;
        return s;
    };
    const auto st = summary(truth), sr = summary(recon);
    scalar("num_nodes", st.nodes, sr.nodes);
    scalar("num_hyperedges", st.edges, sr.edges);
    scalar("avg_node_degree", st.avg_degree, sr.avg_degree);
    scalar("avg_hyperedge_size", st.avg_size, sr.avg_size);
    scalar("density", st.density, sr.density);

    rep.distributions.push_back(
        {"node_degree", detail::ks_or_convention(detail::node_degrees(truth), detail::node_degrees(recon))});
    rep.distributions.push_back(
        {"node_pair_degree", detail::ks_or_convention(detail::pair_degrees(truth), detail::pair_degrees(recon))});

    std::map<detail::Triple, std::array<Multiplicity, 2>> triples;
    detail::count_triples(truth, triples, 0);
    detail::count_triples(recon, triples, 1);
    std::vector<double> t3, r3;
    t3.reserve(triples.size());
    r3.reserve(triples.size());
    for (const auto& [k, c] : triples) {
        t3.push_back(static_cast<double>(c[0]));
        r3.push_back(static_cast<double>(c[1]));
    }
    rep.distributions.push_back({"node_triple_degree", detail::ks_or_convention(t3, r3)});
    return rep;
}

} // namespace hyperrec
