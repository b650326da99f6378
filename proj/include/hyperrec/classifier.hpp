// classifier.hpp - feed-forward clique scorer, training set construction, model files
#pragma once

#include "hyperrec/features.hpp"
#include "hyperrec/random.hpp"

#include <json.hpp>

#include <algorithm>
#include <cmath>
#include <fstream>
#include <limits>
#include <set>

namespace hyperrec {

struct TrainConfig {
    std::size_t hidden = 64;
    double learning_rate = 1e-3;
    std::size_t epochs = 100;
    std::size_t batch_size = 128;
    double negative_ratio = 5.0;
    std::uint64_t seed = 0;

    void validate() const {
        if (hidden == 0 || epochs == 0 || batch_size == 0 || !(learning_rate > 0.0) || !(negative_ratio > 0.0))
            throw ConfigError("train config: hidden, learning_rate, epochs, batch_size and "
                              "negative_ratio must all be positive");
    }
};

struct TrainingSet {
    std::vector<CliqueFeatures> features;
    std::vector<int> labels; // 1 = hyperedge, 0 = not
    std::vector<Clique> cliques;
    std::size_t positives = 0;
    std::size_t negatives_maximal = 0;
    std::size_t negatives_subclique = 0;

    std::size_t size() const noexcept { return labels.size(); }

    void push(Clique c, const CliqueFeatures& f, int label) {
        cliques.push_back(std::move(c));
        features.push_back(f);
        labels.push_back(label);
    }
};

/// Positives: every unique hyperedge of `source`. Negatives: maximal cliques
/// of `graph` that are not hyperedges, then random proper sub-cliques of
/// maximal cliques that are not hyperedges, until negative_ratio x positives
/// distinct negatives are found or the candidate space runs dry.
inline TrainingSet build_training_set(const ProjectedGraph& graph, const Hypergraph& source,
                                      const TrainConfig& cfg) {
    cfg.validate();
    if (clique_expansion(source).weight_map() != graph.weight_map())
        throw ValidationError("training graph is not the clique expansion of the training hypergraph");

    TrainingSet set;
    for (const auto& [e, m] : source.edges()) {
        set.push(e, extract_features(graph, graph, e), 1);
        ++set.positives;
    }

    const auto needed = static_cast<std::size_t>(std::llround(cfg.negative_ratio * static_cast<double>(set.positives)));
    auto rng = make_rng(cfg.seed, "negatives");
    const auto maximal = maximal_cliques(graph);
    std::set<Clique> taken;

    std::vector<const Clique*> pool;
    for (const auto& q : maximal)
        if (!source.contains(q)) pool.push_back(&q);
    std::shuffle(pool.begin(), pool.end(), rng);
    for (const Clique* q : pool) {
        if (taken.size() >= needed) break;
        taken.insert(*q);
        set.push(*q, extract_features(graph, graph, *q), 0);
        ++set.negatives_maximal;
    }

    std::vector<const Clique*> parents;
    for (const auto& q : maximal)
        if (q.size() >= 3) parents.push_back(&q);
    if (!parents.empty()) {
        std::uniform_int_distribution<std::size_t> pick(0, parents.size() - 1);
        std::size_t budget = 50 * needed + 1000;
        while (taken.size() < needed && budget-- > 0) {
            const Clique& q = *parents[pick(rng)];
            std::uniform_int_distribution<std::size_t> ksize(2, q.size() - 1);
            Clique sub;
            std::sample(q.begin(), q.end(), std::back_inserter(sub), ksize(rng), rng);
            if (source.contains(sub) || !taken.insert(sub).second) continue;
            set.push(sub, extract_features(graph, graph, sub), 0);
            ++set.negatives_subclique;
        }
    }
    return set;
}

/// 23 -> hidden (ReLU) -> 1 (logistic). Parameters live in one flat vector:
/// [W1 row-major hidden x 23 | b1 | w2 | b2].
struct ScorerModel {
    int layout_version = kFeatureLayoutVersion;
    std::size_t hidden = 0;
    std::vector<double> mean;
    std::vector<double> stddev;
    std::vector<double> params;
    TrainConfig config;

    static std::size_t param_count(std::size_t hidden) { return hidden * kFeatureCount + 2 * hidden + 1; }

    /// All-zero weights and identity normalisation; scores 0.5 everywhere.
    static ScorerModel zeros(std::size_t hidden) {
        ScorerModel m;
        m.hidden = hidden;
        m.mean.assign(kFeatureCount, 0.0);
        m.stddev.assign(kFeatureCount, 1.0);
        m.params.assign(param_count(hidden), 0.0);
        m.config.hidden = hidden;
        return m;
    }

    std::size_t b1_offset() const { return hidden * kFeatureCount; }
    std::size_t w2_offset() const { return b1_offset() + hidden; }
    std::size_t b2_offset() const { return w2_offset() + hidden; }

    CliqueFeatures normalize(const CliqueFeatures& f) const {
        CliqueFeatures z;
        for (std::size_t i = 0; i < kFeatureCount; ++i) z[i] = (f[i] - mean[i]) / stddev[i];
        return z;
    }

    /// Output logit for an already-normalised input.
    double logit(const CliqueFeatures& z) const {
        const double* w1 = params.data();
        double out = params[b2_offset()];
        for (std::size_t j = 0; j < hidden; ++j) {
            double a = params[b1_offset() + j];
            for (std::size_t i = 0; i < kFeatureCount; ++i) a += w1[j * kFeatureCount + i] * z[i];
            if (a > 0.0) out += params[w2_offset() + j] * a;
        }
        return out;
    }
};

/// Logistic squashing kept strictly inside (0, 1).
inline double squash(double x) {
    double p = x >= 0 ? 1.0 / (1.0 + std::exp(-x)) : std::exp(x) / (1.0 + std::exp(x));
    constexpr double lo = std::numeric_limits<double>::denorm_min();
    return std::clamp(p, lo, std::nextafter(1.0, 0.0));
}

inline double score(const ScorerModel& model, const CliqueFeatures& f) {
    if (model.layout_version != kFeatureLayoutVersion)
        throw ValidationError("model feature layout version " + std::to_string(model.layout_version) +
                              " does not match this build (" + std::to_string(kFeatureLayoutVersion) +
                              "); retrain the model");
    return squash(model.logit(model.normalize(f)));
}

/// Mean binary cross-entropy of a batch of normalised inputs. When `grad` is
/// given it receives d(loss)/d(params), same layout as model.params.
inline double batch_loss(const ScorerModel& model, std::span<const CliqueFeatures> z, std::span<const int> y,
                         std::vector<double>* grad = nullptr) {
    const std::size_t h = model.hidden;
    const double* p = model.params.data();
    if (grad) grad->assign(model.params.size(), 0.0);
    const double inv_n = 1.0 / static_cast<double>(z.size());
    std::vector<double> pre(h);
    double loss = 0.0;
    for (std::size_t s = 0; s < z.size(); ++s) {
        double out = p[model.b2_offset()];
        for (std::size_t j = 0; j < h; ++j) {
            double a = p[model.b1_offset() + j];
            for (std::size_t i = 0; i < kFeatureCount; ++i) a += p[j * kFeatureCount + i] * z[s][i];
            pre[j] = a;
            if (a > 0.0) out += p[model.w2_offset() + j] * a;
        }
        // softplus(out) - y*out, evaluated without overflow
        const double softplus = out > 0 ? out + std::log1p(std::exp(-out)) : std::log1p(std::exp(out));
        loss += softplus - y[s] * out;
        if (!grad) continue;
        const double sig = out >= 0 ? 1.0 / (1.0 + std::exp(-out)) : std::exp(out) / (1.0 + std::exp(out));
        const double d_out = (sig - y[s]) * inv_n;
        auto& g = *grad;
        g[model.b2_offset()] += d_out;
        for (std::size_t j = 0; j < h; ++j) {
            if (pre[j] <= 0.0) continue;
            g[model.w2_offset() + j] += d_out * pre[j];
            const double d_pre = d_out * p[model.w2_offset() + j];
            g[model.b1_offset() + j] += d_pre;
            for (std::size_t i = 0; i < kFeatureCount; ++i) g[j * kFeatureCount + i] += d_pre * z[s][i];
        }
    }
    return loss * inv_n;
}

struct TrainResult {
    ScorerModel model;
    std::vector<double> epoch_loss; // mean loss over each epoch's batches
    double train_accuracy = 0.0;
};

inline double accuracy(const ScorerModel& model, std::span<const CliqueFeatures> x, std::span<const int> y,
                       double threshold = 0.5) {
    if (x.empty()) return 0.0;
    std::size_t hit = 0;
    for (std::size_t i = 0; i < x.size(); ++i) hit += (score(model, x[i]) > threshold) == (y[i] == 1);
    return static_cast<double>(hit) / static_cast<double>(x.size());
}

/// Mini-batch Adam on mean binary cross-entropy, fixed epoch count.
inline TrainResult train(std::span<const CliqueFeatures> x, std::span<const int> y, const TrainConfig& cfg) {
    cfg.validate();
    if (x.size() != y.size() || x.empty()) throw ValidationError("train: empty or misaligned dataset");
    const bool has_pos = std::find(y.begin(), y.end(), 1) != y.end();
    const bool has_neg = std::find(y.begin(), y.end(), 0) != y.end();
    if (!has_pos || !has_neg) throw ValidationError("train: dataset must contain both labels");

    ScorerModel m = ScorerModel::zeros(cfg.hidden);
    m.config = cfg;
    const auto n = static_cast<double>(x.size());
    for (std::size_t i = 0; i < kFeatureCount; ++i) {
        double mu = 0.0, ss = 0.0;
        for (const auto& f : x) mu += f[i];
        mu /= n;
        for (const auto& f : x) ss += (f[i] - mu) * (f[i] - mu);
        const double sd = std::sqrt(ss / n);
        m.mean[i] = mu;
        m.stddev[i] = sd > 0.0 ? sd : 1.0;
    }
    std::vector<CliqueFeatures> z;
    z.reserve(x.size());
    for (const auto& f : x) z.push_back(m.normalize(f));

    auto rng = make_rng(cfg.seed, "init");
    const double lim1 = std::sqrt(6.0 / static_cast<double>(kFeatureCount));
    const double lim2 = std::sqrt(6.0 / static_cast<double>(cfg.hidden + 1));
    std::uniform_real_distribution<double> u1(-lim1, lim1), u2(-lim2, lim2);
    for (std::size_t k = 0; k < m.b1_offset(); ++k) m.params[k] = u1(rng);
    for (std::size_t j = 0; j < cfg.hidden; ++j) m.params[m.w2_offset() + j] = u2(rng);

    constexpr double beta1 = 0.9, beta2 = 0.999, eps = 1e-8;
    std::vector<double> mom(m.params.size(), 0.0), vel(m.params.size(), 0.0), grad;
    std::vector<std::size_t> order(x.size());
    for (std::size_t i = 0; i < order.size(); ++i) order[i] = i;
    auto shuffle_rng = make_rng(cfg.seed, "batches");
    std::vector<CliqueFeatures> bx;
    std::vector<int> by;
    std::uint64_t step = 0;

    TrainResult out;
    for (std::size_t epoch = 0; epoch < cfg.epochs; ++epoch) {
        std::shuffle(order.begin(), order.end(), shuffle_rng);
        double total = 0.0;
        std::size_t batches = 0;
        for (std::size_t start = 0; start < order.size(); start += cfg.batch_size) {
            const std::size_t end = std::min(order.size(), start + cfg.batch_size);
            bx.clear();
            by.clear();
            for (std::size_t k = start; k < end; ++k) {
                bx.push_back(z[order[k]]);
                by.push_back(y[order[k]]);
            }
            total += batch_loss(m, bx, by, &grad);
            ++batches;
            ++step;
            const double c1 = 1.0 - std::pow(beta1, static_cast<double>(step));
            const double c2 = 1.0 - std::pow(beta2, static_cast<double>(step));
            for (std::size_t k = 0; k < m.params.size(); ++k) {
                mom[k] = beta1 * mom[k] + (1.0 - beta1) * grad[k];
                vel[k] = beta2 * vel[k] + (1.0 - beta2) * grad[k] * grad[k];
                m.params[k] -= cfg.learning_rate * (mom[k] / c1) / (std::sqrt(vel[k] / c2) + eps);
            }
        }
        out.epoch_loss.push_back(total / static_cast<double>(batches));
    }
    out.train_accuracy = accuracy(m, x, y);
    out.model = std::move(m);
    return out;
}

inline TrainResult train(const TrainingSet& set, const TrainConfig& cfg) {
    return train(set.features, set.labels, cfg);
}

// ---- model files ----

inline constexpr std::string_view kModelFormat = "hyperrec-scorer";

inline nlohmann::json model_to_json(const ScorerModel& m) {
    nlohmann::json j;
    j["format"] = kModelFormat;
    j["layout_version"] = m.layout_version;
    j["feature_count"] = kFeatureCount;
    j["feature_names"] = std::vector<std::string>(kFeatureNames.begin(), kFeatureNames.end());
    j["hidden"] = m.hidden;
    j["config"] = {{"hidden", m.config.hidden},
                   {"learning_rate", m.config.learning_rate},
                   {"epochs", m.config.epochs},
                   {"batch_size", m.config.batch_size},
                   {"negative_ratio", m.config.negative_ratio},
                   {"seed", m.config.seed}};
    j["norm_mean"] = m.mean;
    j["norm_std"] = m.stddev;
    j["params"] = m.params;
    return j;
}

inline ScorerModel model_from_json(const nlohmann::json& j) {
    auto field = [&](const nlohmann::json& obj, const char* name) -> const nlohmann::json& {
        if (!obj.is_object() || !obj.contains(name))
            throw ValidationError(std::string("model file: missing field '") + name + "'");
        return obj.at(name);
    };
    try {
        if (field(j, "format").get<std::string>() != kModelFormat)
            throw ValidationError("model file: unexpected format tag");
        ScorerModel m;
        m.layout_version = field(j, "layout_version").get<int>();
        if (m.layout_version != kFeatureLayoutVersion)
            throw ValidationError("model file: feature layout version " + std::to_string(m.layout_version) +
                                  " but this build expects " + std::to_string(kFeatureLayoutVersion) +
                                  "; retrain with the current 'train' command");
        if (field(j, "feature_count").get<std::size_t>() != kFeatureCount)
            throw ValidationError("model file: feature_count mismatch");
        m.hidden = field(j, "hidden").get<std::size_t>();
        const auto& c = field(j, "config");
        m.config.hidden = field(c, "hidden").get<std::size_t>();
        m.config.learning_rate = field(c, "learning_rate").get<double>();
        m.config.epochs = field(c, "epochs").get<std::size_t>();
        m.config.batch_size = field(c, "batch_size").get<std::size_t>();
        m.config.negative_ratio = field(c, "negative_ratio").get<double>();
        m.config.seed = field(c, "seed").get<std::uint64_t>();
        m.mean = field(j, "norm_mean").get<std::vector<double>>();
        m.stddev = field(j, "norm_std").get<std::vector<double>>();
        m.params = field(j, "params").get<std::vector<double>>();
        if (m.mean.size() != kFeatureCount || m.stddev.size() != kFeatureCount)
            throw ValidationError("model file: normalisation vectors must have 23 entries");
        if (m.params.size() != ScorerModel::param_count(m.hidden))
            throw ValidationError("model file: parameter count does not match hidden size");
        for (double s : m.stddev)
            if (!(s > 0.0)) throw ValidationError("model file: non-positive normalisation std");
        return m;
    } catch (const nlohmann::json::exception& e) {
        throw ValidationError(std::string("model file: ") + e.what());
    }
}

inline void save_model(const std::string& path, const ScorerModel& m) {
    std::ofstream out(path, std::ios::trunc);
    if (!out) throw IoError("cannot open '" + path + "' for writing");
    out << model_to_json(m).dump(1) << '\n';
    if (!out) throw IoError("write failed for '" + path + "'");
}

inline ScorerModel load_model(const std::string& path) {
    std::ifstream in(path);
    if (!in) throw IoError("cannot open '" + path + "' for reading");
    nlohmann::json j;
    try {
        in >> j;
    } catch (const nlohmann::json::parse_error& e) {
        throw IoError("model file '" + path + "' is corrupt: " + e.what());
    }
    return model_from_json(j);
}

} // namespace hyperrec
