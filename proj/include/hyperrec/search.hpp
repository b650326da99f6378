// search.hpp - bidirectional clique search and the outer reconstruction loop
#pragma once

#include "hyperrec/classifier.hpp"
#include "hyperrec/cliques.hpp"
#include "hyperrec/filtering.hpp"

#include <cmath>
#include <concepts>
#include <cstdio>
#include <ostream>
#include <thread>

namespace hyperrec {

/// Anything that scores a clique of `current`, given the run's input graph.
template <class S>
concept CliqueScorer = requires(const S& s, const ProjectedGraph& g, const Clique& q) {
    { s(g, g, q) } -> std::convertible_to<double>;
};

/// Scores with a trained model. Thread-safe.
struct ModelScorer {
    const ScorerModel* model;

    double operator()(const ProjectedGraph& current, const ProjectedGraph& original, const Clique& q) const {
        return score(*model, extract_features(current, original, q));
    }
};

struct SearchConfig {
    double theta_init = 0.9;
    double r_percent = 10.0;
    double alpha = 1.0 / 20.0;
    /// 0 selects the default cap 10 * ceil(1 / alpha).
    std::size_t max_iterations = 0;
    std::uint64_t seed = 0;
    /// Once the cap is hit, accept every remaining maximal clique until the
    /// graph is empty. Disabled: throw IncompleteReconstruction instead.
    bool final_sweep = true;
    /// Experimental: re-run guaranteed filtering after every iteration.
    bool refilter = false;
    unsigned threads = 1;

    std::size_t iteration_cap() const {
        return max_iterations ? max_iterations : 10 * static_cast<std::size_t>(std::ceil(1.0 / alpha));
    }

    void validate() const {
        if (!(theta_init > 0.0 && theta_init <= 1.0)) throw ConfigError("theta_init must be in (0, 1]");
        if (!(r_percent > 0.0 && r_percent <= 100.0)) throw ConfigError("r must be in (0, 100]");
        if (!(alpha > 0.0)) throw ConfigError("alpha must be positive");
        if (threads == 0) throw ConfigError("threads must be positive");
    }
};

struct IterationRecord {
    std::size_t iteration = 0;
    double theta = 0.0;
    std::size_t cliques = 0;
    std::size_t positive = 0;
    std::size_t negative = 0;
    std::size_t accepted_phase1 = 0;
    std::size_t subcliques_sampled = 0;
    std::size_t subcliques_promising = 0;
    std::size_t accepted_phase2 = 0;
    Weight remaining_weight = 0;
    bool sweep = false;
};

struct ReconstructionTrace {
    FilterReport filter;
    std::vector<IterationRecord> iterations;
    bool hit_iteration_cap = false;

    void write_table(std::ostream& os) const {
        os << "iter  theta     |Q|  |Qpos|  |Qneg|  acc1  sub  subpos  acc2  remaining\n";
        char buf[160];
        for (const auto& r : iterations) {
            std::snprintf(buf, sizeof buf, "%4zu  %.6f %5zu %7zu %7zu %5zu %4zu %7zu %5zu %10llu%s\n", r.iteration,
                          r.theta, r.cliques, r.positive, r.negative, r.accepted_phase1, r.subcliques_sampled,
                          r.subcliques_promising, r.accepted_phase2,
                          static_cast<unsigned long long>(r.remaining_weight), r.sweep ? "  sweep" : "");
            os << buf;
        }
    }

    /// Tab-separated, header first.
    void write_tsv(std::ostream& os) const {
        os << "iteration\ttheta\tcliques\tpositive\tnegative\taccepted_phase1\tsubcliques_sampled\t"
              "subcliques_promising\taccepted_phase2\tremaining_weight\tsweep\n";
        for (const auto& r : iterations) {
            char theta[32];
            std::snprintf(theta, sizeof theta, "%.17g", r.theta);
            os << r.iteration << '\t' << theta << '\t' << r.cliques << '\t' << r.positive << '\t' << r.negative
               << '\t' << r.accepted_phase1 << '\t' << r.subcliques_sampled << '\t' << r.subcliques_promising
               << '\t' << r.accepted_phase2 << '\t' << r.remaining_weight << '\t' << (r.sweep ? 1 : 0) << '\n';
        }
    }
};

struct SearchStep {
    std::vector<Clique> accepted;
    IterationRecord stats;
};

class IncompleteReconstruction : public Error {
public:
    IncompleteReconstruction(Hypergraph partial, ReconstructionTrace trace)
        : Error("reconstruction stopped at the iteration cap with edges remaining"),
          partial_(std::move(partial)), trace_(std::move(trace)) {}

    const Hypergraph& partial() const noexcept { return partial_; }
    const ReconstructionTrace& trace() const noexcept { return trace_; }

private:
    Hypergraph partial_;
    ReconstructionTrace trace_;
};

namespace detail {

struct Scored {
    Clique clique;
    double score;
};

// Descending score, then smaller clique, then lexicographic.
inline bool more_promising(const Scored& a, const Scored& b) {
    if (a.score != b.score) return a.score > b.score;
    if (a.clique.size() != b.clique.size()) return a.clique.size() < b.clique.size();
    return a.clique < b.clique;
}

inline bool less_promising(const Scored& a, const Scored& b) {
    if (a.score != b.score) return a.score < b.score;
    if (a.clique.size() != b.clique.size()) return a.clique.size() < b.clique.size();
    return a.clique < b.clique;
}

template <class Scorer>
std::vector<Scored> score_all(std::vector<Clique> cliques, const ProjectedGraph& current,
                              const ProjectedGraph& original, const Scorer& scorer, unsigned threads) {
    std::vector<Scored> out(cliques.size());
    auto work = [&](std::size_t lo, std::size_t hi) {
        for (std::size_t i = lo; i < hi; ++i) {
            const auto sc = static_cast<double>(scorer(current, original, cliques[i]));
            out[i] = {std::move(cliques[i]), sc};
        }
    };
    const std::size_t n = cliques.size();
    if (threads <= 1 || n < 256) {
        work(0, n);
        return out;
    }
    std::vector<std::thread> pool;
    const std::size_t chunk = (n + threads - 1) / threads;
    for (std::size_t lo = 0; lo < n; lo += chunk) pool.emplace_back(work, lo, std::min(n, lo + chunk));
    for (auto& t : pool) t.join();
    return out;
}

/// Accepts q when every pair is still an edge, decrementing each pair by one.
inline bool try_accept(ProjectedGraph& g, const Clique& q) {
    if (!is_clique(g, q)) return false;
    for (std::size_t i = 0; i < q.size(); ++i)
        for (std::size_t j = i + 1; j < q.size(); ++j) g.reduce_weight(q[i], q[j], 1);
    return true;
}

} // namespace detail

/// One round: score the maximal cliques of `g`, accept the promising ones
/// in score order (phase 1), then probe random sub-cliques of the lowest
/// r% of the rest (phase 2). `g` is updated in place.
template <CliqueScorer Scorer>
SearchStep bidirectional_search(ProjectedGraph& g, const ProjectedGraph& original, const Scorer& scorer,
                                double theta, double r_percent, Rng& rng, unsigned threads = 1) {
    SearchStep step;
    step.stats.theta = theta;
    auto scored = detail::score_all(maximal_cliques(g), g, original, scorer, threads);
    step.stats.cliques = scored.size();

    std::vector<detail::Scored> pos, rest;
    for (auto& s : scored) (s.score > theta ? pos : rest).push_back(std::move(s));
    std::sort(pos.begin(), pos.end(), detail::more_promising);
    std::sort(rest.begin(), rest.end(), detail::less_promising);
    const auto n_neg = static_cast<std::size_t>(std::ceil(r_percent / 100.0 * static_cast<double>(rest.size())));
    rest.resize(std::min(rest.size(), n_neg));
    step.stats.positive = pos.size();
    step.stats.negative = rest.size();

    for (const auto& s : pos)
        if (detail::try_accept(g, s.clique)) {
            step.accepted.push_back(s.clique);
            ++step.stats.accepted_phase1;
        }

    std::vector<Clique> subs;
    for (const auto& s : rest)
        for (auto& sub : sample_subcliques(s.clique, rng)) subs.push_back(std::move(sub));
    step.stats.subcliques_sampled = subs.size();
    std::sort(subs.begin(), subs.end());
    subs.erase(std::unique(subs.begin(), subs.end()), subs.end());
    // Sub-cliques broken by phase 1 cannot pass the guard; skip them before scoring.
    std::erase_if(subs, [&](const Clique& q) { return !is_clique(g, q); });

    auto sub_scored = detail::score_all(std::move(subs), g, original, scorer, threads);
    std::erase_if(sub_scored, [&](const detail::Scored& s) { return !(s.score > theta); });
    std::sort(sub_scored.begin(), sub_scored.end(), detail::more_promising);
    step.stats.subcliques_promising = sub_scored.size();
    for (const auto& s : sub_scored)
        if (detail::try_accept(g, s.clique)) {
            step.accepted.push_back(s.clique);
            ++step.stats.accepted_phase2;
        }
    step.stats.remaining_weight = g.total_weight();
    return step;
}

struct Reconstruction {
    Hypergraph hypergraph;
    ReconstructionTrace trace;
};

/// Guaranteed filtering once, then bidirectional search rounds with the
/// threshold lowered by alpha * theta_init per round (floor 0) until no
/// edge is left.
template <CliqueScorer Scorer>
Reconstruction reconstruct(const ProjectedGraph& g, const Scorer& scorer, const SearchConfig& cfg) {
    cfg.validate();
    auto filtered = filter_guaranteed(g);
    Reconstruction out{std::move(filtered.emitted), {}};
    out.trace.filter = std::move(filtered.report);
    ProjectedGraph current = std::move(filtered.remaining);

    auto rng = make_rng(cfg.seed, "subcliques");
    double theta = cfg.theta_init;
    const std::size_t cap = cfg.iteration_cap();
    std::size_t iter = 0;
    while (current.has_edges() && iter < cap) {
        auto step = bidirectional_search(current, g, scorer, theta, cfg.r_percent, rng, cfg.threads);
        step.stats.iteration = ++iter;
        for (auto& q : step.accepted) out.hypergraph.add(std::move(q));
        if (cfg.refilter && current.has_edges()) {
            auto again = filter_guaranteed(current);
            out.hypergraph.merge(again.emitted);
            current = std::move(again.remaining);
            step.stats.remaining_weight = current.total_weight();
        }
        out.trace.iterations.push_back(step.stats);
        theta = std::max(theta - cfg.alpha * cfg.theta_init, 0.0);
    }

    if (current.has_edges()) {
        out.trace.hit_iteration_cap = true;
        if (!cfg.final_sweep) throw IncompleteReconstruction(std::move(out.hypergraph), std::move(out.trace));
        while (current.has_edges()) {
            IterationRecord rec;
            rec.iteration = ++iter;
            rec.sweep = true;
            auto cliques = maximal_cliques(current);
            rec.cliques = rec.positive = cliques.size();
            for (auto& q : cliques)
                if (detail::try_accept(current, q)) {
                    out.hypergraph.add(std::move(q));
                    ++rec.accepted_phase1;
                }
            rec.remaining_weight = current.total_weight();
            out.trace.iterations.push_back(rec);
        }
    }
    out.hypergraph.set_node_count(std::max(out.hypergraph.node_count(), g.node_count()));
    return out;
}

inline Reconstruction reconstruct(const ProjectedGraph& g, const ScorerModel& model, const SearchConfig& cfg) {
    return reconstruct(g, ModelScorer{&model}, cfg);
}

} // namespace hyperrec
