// split.hpp - halving a hyperedge multiset into source and target hypergraphs
#pragma once

#include "hyperrec/hypergraph.hpp"
#include "hyperrec/random.hpp"

#include <algorithm>
#include <numeric>
#include <optional>

namespace hyperrec {

enum class SplitMode { RandomHalves, TimestampHalves };

struct SplitSpec {
    SplitMode mode = SplitMode::RandomHalves;
    std::uint64_t seed = 0;
    /// One entry per instance, aligned with Hypergraph::instances() order.
    std::optional<std::vector<std::int64_t>> timestamps;
};

struct SplitResult {
    Hypergraph source;
    Hypergraph target;
};

/// Partitions the instances into two halves. The source half gets the extra
/// instance when the count is odd. Timestamp mode sends the earliest
/// instances to the source; ties keep canonical instance order. Both halves
/// keep the full node_count of the input.
inline SplitResult split_hyperedges(const Hypergraph& h, const SplitSpec& spec) {
    if (h.empty()) throw ConfigError("split_hyperedges: hypergraph has no hyperedges");
    auto inst = h.instances();
    std::vector<std::size_t> order(inst.size());
    std::iota(order.begin(), order.end(), std::size_t{0});

    if (spec.mode == SplitMode::TimestampHalves) {
        if (!spec.timestamps)
            throw ConfigError("split_hyperedges: timestamp mode requires per-instance timestamps");
        const auto& ts = *spec.timestamps;
        if (ts.size() != inst.size())
            throw ConfigError("split_hyperedges: expected " + std::to_string(inst.size()) +
                              " timestamps, got " + std::to_string(ts.size()));
        std::stable_sort(order.begin(), order.end(),
                         [&](std::size_t a, std::size_t b) { return ts[a] < ts[b]; });
    } else {
        if (spec.timestamps)
            throw ConfigError("split_hyperedges: timestamps given but mode is random-halves");
        auto rng = make_rng(spec.seed, "split");
        std::shuffle(order.begin(), order.end(), rng);
    }

    SplitResult out{Hypergraph(h.node_count()), Hypergraph(h.node_count())};
    const std::size_t source_size = (inst.size() + 1) / 2;
    for (std::size_t i = 0; i < order.size(); ++i)
        (i < source_size ? out.source : out.target).add(inst[order[i]]);
    return out;
}

} // namespace hyperrec
