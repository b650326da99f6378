// helpers.hpp - conversions between oracle containers and library types
#pragma once

#include "hyperrec/hyperrec.hpp"
#include "oracles.hpp"

#include <filesystem>
#include <string>

namespace testing_support {

inline hyperrec::Hypergraph to_hypergraph(const oracle::Multiset& inst, std::size_t node_count) {
    hyperrec::Hypergraph h(node_count);
    for (const auto& e : inst) h.add(e);
    return h;
}

inline hyperrec::ProjectedGraph graph_from(std::size_t n,
                                           std::initializer_list<std::tuple<hyperrec::NodeId, hyperrec::NodeId,
                                                                            hyperrec::Weight>> edges) {
    hyperrec::ProjectedGraph g(n);
    for (auto [u, v, w] : edges) g.add_weight(u, v, w);
    return g;
}

/// Fresh scratch directory under the system temp dir.
inline std::filesystem::path scratch_dir(const std::string& name) {
    auto dir = std::filesystem::temp_directory_path() / ("hyperrec_test_" + name);
    std::filesystem::remove_all(dir);
    std::filesystem::create_directories(dir);
    return dir;
}

} // namespace testing_support
