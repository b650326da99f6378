#include "support/helpers.hpp"

#include <gtest/gtest.h>

#include <sstream>

using namespace hyperrec;
using testing_support::graph_from;

namespace {

// Looks scores up by clique, `fallback` otherwise.
struct TableScorer {
    std::map<Clique, double> table;
    double fallback = 0.0;
    double operator()(const ProjectedGraph&, const ProjectedGraph&, const Clique& q) const {
        auto it = table.find(q);
        return it == table.end() ? fallback : it->second;
    }
};

struct ConstantScorer {
    double value;
    double operator()(const ProjectedGraph&, const ProjectedGraph&, const Clique&) const { return value; }
};

// High for cliques maximal in the input graph, zero otherwise.
struct MaximalityScorer {
    double operator()(const ProjectedGraph&, const ProjectedGraph& original, const Clique& q) const {
        return is_maximal_in(original, q) ? 0.9 : 0.0;
    }
};

// Deterministic pseudo-random score in (0, 1) per clique.
struct HashScorer {
    std::uint64_t salt;
    double operator()(const ProjectedGraph&, const ProjectedGraph&, const Clique& q) const {
        std::uint64_t h = salt;
        for (NodeId u : q) h = splitmix64(h ^ u);
        return (static_cast<double>(h >> 11) + 0.5) / 9007199254740992.0;
    }
};

Weight pair_units(const Hypergraph& h) {
    Weight total = 0;
    for (const auto& [e, m] : h.edges()) total += m * choose2(e.size());
    return total;
}

ScorerModel trained_model() {
    auto src = generate_synthetic({30, 60, 2, 5, 0.2, 17});
    TrainConfig cfg;
    cfg.hidden = 8;
    cfg.epochs = 20;
    cfg.seed = 17;
    return train(build_training_set(clique_expansion(src), src, cfg), cfg).model;
}

} // namespace

TEST(BidirectionalSearch, GuardRejectsCliqueBrokenByEarlierAcceptance) {
    // K4 on {2,3,5,6} plus node 7 joined to 5 and 6; every weight 1.
    auto g = graph_from(8, {{2, 3, 1}, {2, 5, 1}, {2, 6, 1}, {3, 5, 1}, {3, 6, 1}, {5, 6, 1}, {5, 7, 1}, {6, 7, 1}});
    ASSERT_EQ(maximal_cliques(g), (std::vector<Clique>{{2, 3, 5, 6}, {5, 6, 7}}));
    TableScorer scorer{{{{5, 6, 7}, 0.95}, {{2, 3, 5, 6}, 0.9}}, 0.0};
    Rng rng(1);
    const auto original = g;
    auto step = bidirectional_search(g, original, scorer, 0.5, 10.0, rng);
    EXPECT_EQ(step.accepted, (std::vector<Clique>{{5, 6, 7}}));
    EXPECT_EQ(step.stats.positive, 2u);
    EXPECT_EQ(step.stats.accepted_phase1, 1u);
    EXPECT_FALSE(g.has_edge(5, 6));
    EXPECT_FALSE(g.has_edge(5, 7));
    EXPECT_TRUE(g.has_edge(2, 3));
}

TEST(BidirectionalSearch, PairsOnlyAndThresholdAboveAllScoresAcceptsNothing) {
    auto g = graph_from(6, {{0, 1, 2}, {2, 3, 1}, {4, 5, 3}});
    const auto original = g;
    Rng rng(2);
    auto step = bidirectional_search(g, original, ConstantScorer{0.3}, 0.9, 100.0, rng);
    EXPECT_TRUE(step.accepted.empty());
    EXPECT_EQ(step.stats.negative, 3u);
    EXPECT_EQ(step.stats.subcliques_sampled, 0u);
    EXPECT_EQ(g, original);
}

TEST(BidirectionalSearch, SingleIsolatedEdgeIsAccepted) {
    auto g = graph_from(2, {{0, 1, 1}});
    const auto original = g;
    Rng rng(3);
    auto step = bidirectional_search(g, original, ConstantScorer{0.8}, 0.5, 10.0, rng);
    EXPECT_EQ(step.accepted, (std::vector<Clique>{{0, 1}}));
    EXPECT_FALSE(g.has_edges());
}

TEST(BidirectionalSearch, PhaseTwoAcceptsPromisingSubclique) {
    // One triangle scored low, its sub-cliques scored high.
    auto g = graph_from(3, {{0, 1, 1}, {0, 2, 1}, {1, 2, 1}});
    const auto original = g;
    TableScorer scorer{{{{0, 1, 2}, 0.1}}, 0.7};
    Rng rng(4);
    auto step = bidirectional_search(g, original, scorer, 0.5, 100.0, rng);
    EXPECT_EQ(step.stats.negative, 1u);
    EXPECT_EQ(step.stats.subcliques_sampled, 1u);
    ASSERT_EQ(step.stats.accepted_phase2, 1u);
    EXPECT_EQ(step.accepted[0].size(), 2u);
    EXPECT_EQ(g.total_weight(), 2u);
}

TEST(BidirectionalSearch, NegativeCountUsesCeiling) {
    // five disjoint pairs, none promising: ceil(10% of 5) = 1
    auto g = graph_from(10, {{0, 1, 1}, {2, 3, 1}, {4, 5, 1}, {6, 7, 1}, {8, 9, 1}});
    const auto original = g;
    Rng rng(5);
    auto step = bidirectional_search(g, original, ConstantScorer{0.2}, 0.5, 10.0, rng);
    EXPECT_EQ(step.stats.negative, 1u);
}

TEST(Reconstruct, DisjointPairsNeedNoSearch) {
    Hypergraph h(8);
    h.add({0, 1}, 3);
    h.add({2, 3});
    h.add({4, 7}, 2);
    auto rec = reconstruct(clique_expansion(h), ConstantScorer{0.5}, {});
    EXPECT_EQ(rec.hypergraph, h);
    EXPECT_TRUE(rec.trace.iterations.empty());
}

TEST(Reconstruct, SingleWeightedEdge) {
    Hypergraph h(3);
    h.add({1, 2}, 2);
    auto rec = reconstruct(clique_expansion(h), ConstantScorer{0.5}, {});
    EXPECT_EQ(rec.hypergraph, h);
}

TEST(Reconstruct, ThresholdDecaysByAlphaThetaInit) {
    auto g = graph_from(4, {{0, 1, 1}, {0, 2, 1}, {1, 2, 1}, {2, 3, 1}, {1, 3, 1}});
    SearchConfig cfg;
    cfg.theta_init = 0.8;
    cfg.alpha = 1.0 / 20.0;
    auto rec = reconstruct(g, ConstantScorer{0.01}, cfg);
    ASSERT_GE(rec.trace.iterations.size(), 4u);
    EXPECT_DOUBLE_EQ(rec.trace.iterations[0].theta, 0.8);
    EXPECT_NEAR(rec.trace.iterations[3].theta, 0.68, 1e-12);
    double prev = 1.0;
    for (const auto& r : rec.trace.iterations) {
        EXPECT_LE(r.theta, prev);
        EXPECT_GE(r.theta, 0.0);
        prev = r.theta;
    }
    EXPECT_FALSE(rec.trace.hit_iteration_cap);
}

TEST(Reconstruct, ExactOnDisjointHyperedges) {
    std::mt19937_64 rng(31);
    const std::vector<std::function<Reconstruction(const ProjectedGraph&)>> runs = {
        [](const ProjectedGraph& g) { return reconstruct(g, ConstantScorer{0.3}, {}); },
        [](const ProjectedGraph& g) { return reconstruct(g, ConstantScorer{0.95}, {}); },
        [](const ProjectedGraph& g) { return reconstruct(g, MaximalityScorer{}, {}); },
    };
    for (int trial = 0; trial < 40; ++trial) {
        auto h = generate_disjoint({static_cast<std::size_t>(1 + rng() % 8), 2, 6, 4, rng()});
        auto g = clique_expansion(h);
        for (const auto& run : runs) EXPECT_EQ(multi_jaccard(run(g).hypergraph, h), 1.0) << "trial " << trial;
    }
}

TEST(Reconstruct, ProjectionIsConservedOnRandomInputs) {
    std::mt19937_64 rng(8);
    for (int trial = 0; trial < 40; ++trial) {
        auto inst = oracle::random_instances(rng, 12, 1 + rng() % 20, 2, 5, 0.3);
        auto g = clique_expansion(testing_support::to_hypergraph(inst, 12));
        auto rec = reconstruct(g, HashScorer{rng()}, {});
        EXPECT_EQ(clique_expansion(rec.hypergraph).weight_map(), g.weight_map());
        EXPECT_EQ(pair_units(rec.hypergraph), g.total_weight());
        // remaining weight is non-increasing and strictly drops when something is accepted
        Weight prev = g.total_weight() - rec.trace.filter.total_multiplicity_removed;
        for (const auto& r : rec.trace.iterations) {
            EXPECT_LE(r.remaining_weight, prev);
            if (r.accepted_phase1 + r.accepted_phase2 > 0) {
                EXPECT_LT(r.remaining_weight, prev);
            }
            prev = r.remaining_weight;
        }
        EXPECT_EQ(prev, 0u);
    }
}

TEST(Reconstruct, DeterministicWithTrainedModel) {
    auto model = trained_model();
    auto target = generate_synthetic({30, 60, 2, 5, 0.2, 99});
    auto g = clique_expansion(target);
    SearchConfig cfg;
    cfg.seed = 5;
    auto a = reconstruct(g, model, cfg);
    auto b = reconstruct(g, model, cfg);
    EXPECT_EQ(a.hypergraph, b.hypergraph);
    std::ostringstream ta, tb;
    a.trace.write_tsv(ta);
    b.trace.write_tsv(tb);
    EXPECT_EQ(ta.str(), tb.str());
    EXPECT_EQ(clique_expansion(a.hypergraph).weight_map(), g.weight_map());

    cfg.threads = 4;
    EXPECT_EQ(reconstruct(g, model, cfg).hypergraph, a.hypergraph);
}

TEST(Reconstruct, CapWithoutSweepThrowsWithPartialResult) {
    auto g = graph_from(4, {{0, 1, 1}, {0, 2, 1}, {1, 2, 1}, {2, 3, 1}});
    SearchConfig cfg;
    cfg.max_iterations = 2;
    cfg.final_sweep = false;
    try {
        reconstruct(g, ConstantScorer{0.01}, cfg);
        FAIL();
    } catch (const IncompleteReconstruction& e) {
        EXPECT_TRUE(e.trace().hit_iteration_cap);
        EXPECT_EQ(e.trace().iterations.size(), 2u);
    }
    cfg.final_sweep = true;
    auto rec = reconstruct(g, ConstantScorer{0.01}, cfg);
    EXPECT_TRUE(rec.trace.hit_iteration_cap);
    EXPECT_TRUE(rec.trace.iterations.back().sweep);
    EXPECT_EQ(clique_expansion(rec.hypergraph).weight_map(), g.weight_map());
}

TEST(SearchConfig, Validation) {
    SearchConfig cfg;
    EXPECT_EQ(cfg.iteration_cap(), 200u);
    cfg.r_percent = 0;
    EXPECT_THROW(cfg.validate(), ConfigError);
    cfg = {};
    cfg.theta_init = 1.5;
    EXPECT_THROW(cfg.validate(), ConfigError);
    cfg = {};
    cfg.alpha = 0;
    EXPECT_THROW(cfg.validate(), ConfigError);
}
