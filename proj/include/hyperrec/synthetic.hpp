// synthetic.hpp - small seeded hypergraph generators for tests and scaling runs
#pragma once

#include "hyperrec/hypergraph.hpp"
#include "hyperrec/random.hpp"

#include <unordered_set>

namespace hyperrec {

struct SyntheticConfig {
    std::size_t n_nodes = 0;
    std::size_t n_hyperedges = 0; // instances, duplicates included
    std::size_t min_size = 2;
    std::size_t max_size = 5;
    double duplicate_prob = 0.0;
    std::uint64_t seed = 0;
};

namespace detail {

// Floyd's sampling: k distinct values from [0, n).
inline NodeSet sample_distinct(std::size_t n, std::size_t k, Rng& rng) {
    std::unordered_set<NodeId> chosen;
    chosen.reserve(k * 2);
    for (std::size_t j = n - k; j < n; ++j) {
        std::uniform_int_distribution<std::size_t> pick(0, j);
        auto t = static_cast<NodeId>(pick(rng));
        if (!chosen.insert(t).second) chosen.insert(static_cast<NodeId>(j));
    }
    NodeSet out(chosen.begin(), chosen.end());
    std::sort(out.begin(), out.end());
    return out;
}

} // namespace detail

/// Uniform-size, uniform-membership generator. With probability
/// duplicate_prob an instance repeats a previously drawn one, which is how
/// hyperedge multiplicity > 1 arises.
inline Hypergraph generate_synthetic(const SyntheticConfig& cfg) {
    if (cfg.min_size < 2 || cfg.min_size > cfg.max_size)
        throw ConfigError("generate_synthetic: need 2 <= min_size <= max_size");
    if (cfg.duplicate_prob < 0.0 || cfg.duplicate_prob > 1.0)
        throw ConfigError("generate_synthetic: duplicate_prob must be in [0, 1]");
    if (cfg.n_hyperedges > 0 && cfg.n_nodes < cfg.max_size)
        throw ConfigError("generate_synthetic: n_nodes must be >= max_size");

    Hypergraph h(cfg.n_nodes);
    auto rng = make_rng(cfg.seed, "synthetic");
    std::uniform_int_distribution<std::size_t> size_dist(cfg.min_size, cfg.max_size);
    std::uniform_real_distribution<double> coin(0.0, 1.0);
    std::vector<NodeSet> drawn;
    drawn.reserve(cfg.n_hyperedges);
    for (std::size_t i = 0; i < cfg.n_hyperedges; ++i) {
        if (!drawn.empty() && coin(rng) < cfg.duplicate_prob) {
            std::uniform_int_distribution<std::size_t> pick(0, drawn.size() - 1);
            drawn.push_back(drawn[pick(rng)]);
        } else {
            drawn.push_back(detail::sample_distinct(cfg.n_nodes, size_dist(rng), rng));
        }
        h.add(drawn.back());
    }
    return h;
}

struct DisjointConfig {
    std::size_t n_unique = 0;
    std::size_t min_size = 2;
    std::size_t max_size = 5;
    Multiplicity max_multiplicity = 3;
    std::uint64_t seed = 0;
};

/// Pairwise node-disjoint unique hyperedges with random multiplicities in
/// [1, max_multiplicity]. Node ids are shuffled so blocks are not contiguous.
inline Hypergraph generate_disjoint(const DisjointConfig& cfg) {
    if (cfg.min_size < 2 || cfg.min_size > cfg.max_size || cfg.max_multiplicity == 0)
        throw ConfigError("generate_disjoint: invalid size or multiplicity range");
    auto rng = make_rng(cfg.seed, "disjoint");
    std::uniform_int_distribution<std::size_t> size_dist(cfg.min_size, cfg.max_size);
    std::uniform_int_distribution<Multiplicity> mult_dist(1, cfg.max_multiplicity);
    std::vector<std::size_t> sizes(cfg.n_unique);
    std::size_t total = 0;
    for (auto& s : sizes) total += (s = size_dist(rng));
    std::vector<NodeId> perm(total);
    for (std::size_t i = 0; i < total; ++i) perm[i] = static_cast<NodeId>(i);
    std::shuffle(perm.begin(), perm.end(), rng);

    Hypergraph h(total);
    std::size_t at = 0;
    for (std::size_t s : sizes) {
        NodeSet e(perm.begin() + static_cast<std::ptrdiff_t>(at),
                  perm.begin() + static_cast<std::ptrdiff_t>(at + s));
        at += s;
        h.add(std::move(e), mult_dist(rng));
    }
    return h;
}

} // namespace hyperrec
