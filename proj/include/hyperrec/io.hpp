// io.hpp - text formats for hypergraphs, projected graphs and id maps
//
// Hypergraph file: one hyperedge per line, node labels separated by
// whitespace or commas, optional "@t=<int>" timestamp token and optional
// trailing "# m=<int>" multiplicity. Lines starting with '%' are comments.
// Projected-graph file: "u v w" per line. Files written by this library
// start with "% nodes=<N>", which pins labels to dense ids 0..N-1 so that
// isolated nodes survive a round trip.
#pragma once

#include "hyperrec/hypergraph.hpp"
#include "hyperrec/projected_graph.hpp"

#include <charconv>
#include <fstream>
#include <optional>
#include <sstream>
#include <string_view>
#include <unordered_map>

namespace hyperrec {

/// Dense id <-> original label.
class IdMap {
public:
    IdMap() = default;
    explicit IdMap(std::vector<std::string> labels) : labels_(std::move(labels)) {
        for (std::size_t i = 0; i < labels_.size(); ++i)
            if (!index_.emplace(labels_[i], static_cast<NodeId>(i)).second)
                throw ValidationError("id map: duplicate label '" + labels_[i] + "'");
    }

    /// Identity map over 0..n-1.
    static IdMap identity(std::size_t n) {
        std::vector<std::string> labels(n);
        for (std::size_t i = 0; i < n; ++i) labels[i] = std::to_string(i);
        return IdMap(std::move(labels));
    }

    std::size_t size() const noexcept { return labels_.size(); }
    const std::string& label(NodeId id) const { return labels_.at(id); }
    std::optional<NodeId> find(const std::string& label) const {
        auto it = index_.find(label);
        if (it == index_.end()) return std::nullopt;
        return it->second;
    }

    friend bool operator==(const IdMap& a, const IdMap& b) { return a.labels_ == b.labels_; }

private:
    std::vector<std::string> labels_;
    std::unordered_map<std::string, NodeId> index_;
};

enum class HypergraphFormat {
    Lines,  // the line format above
    Benson, // <prefix>-nverts.txt / -simplices.txt / -times.txt
};

struct LoadOptions {
    /// Downgrade hyperedges with < 2 distinct nodes to a warning.
    bool skip_invalid = false;
    /// Fixed label mapping; unknown labels are an error.
    const IdMap* ids = nullptr;
};

struct LoadedHypergraph {
    Hypergraph hypergraph;
    IdMap ids;
    /// Aligned with hypergraph.instances(); present only when every line had "@t=".
    std::optional<std::vector<std::int64_t>> timestamps;
    std::vector<std::string> warnings;
};

struct LoadedGraph {
    ProjectedGraph graph;
    IdMap ids;
};

namespace detail {

inline std::string_view trim(std::string_view s) {
    auto b = s.find_first_not_of(" \t\r\n");
    if (b == std::string_view::npos) return {};
    auto e = s.find_last_not_of(" \t\r\n");
    return s.substr(b, e - b + 1);
}

template <class Int>
std::optional<Int> parse_int(std::string_view s) {
    Int value{};
    auto [ptr, ec] = std::from_chars(s.data(), s.data() + s.size(), value);
    if (ec != std::errc{} || ptr != s.data() + s.size()) return std::nullopt;
    return value;
}

inline std::vector<std::string_view> split_tokens(std::string_view s) {
    std::vector<std::string_view> out;
    std::size_t i = 0;
    auto sep = [](char c) { return c == ' ' || c == '\t' || c == ',' || c == '\r'; };
    while (i < s.size()) {
        while (i < s.size() && sep(s[i])) ++i;
        std::size_t j = i;
        while (j < s.size() && !sep(s[j])) ++j;
        if (j > i) out.push_back(s.substr(i, j - i));
        i = j;
    }
    return out;
}

/// "% nodes=N" directive, or nullopt for an ordinary comment.
inline std::optional<std::size_t> nodes_directive(std::string_view line) {
    auto body = trim(line.substr(1));
    constexpr std::string_view key = "nodes=";
    if (body.substr(0, key.size()) != key) return std::nullopt;
    return parse_int<std::size_t>(body.substr(key.size()));
}

inline std::ifstream open_in(const std::string& path) {
    std::ifstream in(path);
    if (!in) throw IoError("cannot open '" + path + "' for reading");
    return in;
}

inline std::ofstream open_out(const std::string& path) {
    std::ofstream out(path, std::ios::trunc);
    if (!out) throw IoError("cannot open '" + path + "' for writing");
    return out;
}

// Resolves raw labels to dense ids. Precedence: explicit map, then the
// "% nodes=N" directive (labels must be 0..N-1), then sorted order of the
// labels seen (numeric when every label is a non-negative integer).
class LabelResolver {
public:
    LabelResolver(const std::string& path, const LoadOptions& opts, std::optional<std::size_t> declared)
        : path_(path), fixed_(opts.ids), declared_(declared) {}

    void observe(std::string_view label) { seen_.emplace(std::string(label), 0); }

    void finalize() {
        if (fixed_) {
            ids_ = *fixed_;
            return;
        }
        if (declared_) {
            ids_ = IdMap::identity(*declared_);
            return;
        }
        std::vector<std::string> labels;
        labels.reserve(seen_.size());
        bool numeric = true;
        for (const auto& [l, _] : seen_) {
            labels.push_back(l);
            numeric = numeric && parse_int<std::uint64_t>(l).has_value();
        }
        if (numeric)
            std::sort(labels.begin(), labels.end(), [](const std::string& a, const std::string& b) {
                return *parse_int<std::uint64_t>(a) < *parse_int<std::uint64_t>(b);
            });
        else
            std::sort(labels.begin(), labels.end());
        ids_ = IdMap(std::move(labels));
    }

    NodeId resolve(std::string_view label, std::size_t line) const {
        auto id = ids_.find(std::string(label));
        if (!id) {
            if (fixed_) throw ParseError(path_, line, "label '" + std::string(label) + "' not in id map");
            throw ParseError(path_, line, "label '" + std::string(label) + "' outside declared node range");
        }
        return *id;
    }

    IdMap take() { return std::move(ids_); }
    std::size_t node_count() const { return ids_.size(); }

private:
    std::string path_;
    const IdMap* fixed_;
    std::optional<std::size_t> declared_;
    std::unordered_map<std::string, int> seen_;
    IdMap ids_;
};

struct RawHyperedge {
    std::vector<std::string_view> labels;
    Multiplicity mult = 1;
    std::optional<std::int64_t> time;
    std::size_t line = 0;
};

inline LoadedHypergraph assemble(const std::string& path, std::vector<RawHyperedge>& raw,
                                 const LoadOptions& opts, std::optional<std::size_t> declared) {
    LoadedHypergraph out;
    LabelResolver resolver(path, opts, declared);
    for (const auto& r : raw)
        for (auto l : r.labels) resolver.observe(l);
    resolver.finalize();

    bool any_time = false, all_time = true;
    for (const auto& r : raw) {
        any_time = any_time || r.time.has_value();
        all_time = all_time && r.time.has_value();
    }
    if (any_time && !all_time)
        throw ParseError(path, 0, "timestamps must be given on every line or on none");

    std::vector<std::pair<NodeSet, std::int64_t>> timed;
    Hypergraph h(resolver.node_count());
    for (const auto& r : raw) {
        NodeSet nodes;
        nodes.reserve(r.labels.size());
        for (auto l : r.labels) nodes.push_back(resolver.resolve(l, r.line));
        nodes = canonical(std::move(nodes));
        if (nodes.size() < 2) {
            std::string msg = path + ":" + std::to_string(r.line) + ": hyperedge with fewer than 2 distinct nodes";
            if (!opts.skip_invalid) throw ValidationError(msg);
            out.warnings.push_back(msg + " (skipped)");
            continue;
        }
        if (any_time)
            for (Multiplicity i = 0; i < r.mult; ++i) timed.emplace_back(nodes, *r.time);
        h.add(std::move(nodes), r.mult);
    }
    if (any_time) {
        std::sort(timed.begin(), timed.end());
        std::vector<std::int64_t> ts;
        ts.reserve(timed.size());
        for (auto& [n, t] : timed) ts.push_back(t);
        out.timestamps = std::move(ts);
    }
    out.hypergraph = std::move(h);
    out.ids = resolver.take();
    return out;
}

inline LoadedHypergraph load_lines(const std::string& path, const LoadOptions& opts) {
    auto in = open_in(path);
    std::vector<std::string> lines;
    for (std::string line; std::getline(in, line);) lines.push_back(std::move(line));

    std::optional<std::size_t> declared;
    std::vector<RawHyperedge> raw;
    for (std::size_t i = 0; i < lines.size(); ++i) {
        const std::size_t lineno = i + 1;
        std::string_view line = trim(lines[i]);
        if (line.empty()) continue;
        if (line.front() == '%') {
            if (auto n = nodes_directive(line)) declared = n;
            continue;
        }
        RawHyperedge r;
        r.line = lineno;
        if (auto hash = line.find('#'); hash != std::string_view::npos) {
            auto ann = trim(line.substr(hash + 1));
            if (ann.substr(0, 2) != "m=") throw ParseError(path, lineno, "expected '# m=<int>' annotation");
            auto m = parse_int<Multiplicity>(ann.substr(2));
            if (!m || *m == 0) throw ParseError(path, lineno, "multiplicity must be a positive integer");
            r.mult = *m;
            line = trim(line.substr(0, hash));
        }
        for (auto tok : split_tokens(line)) {
            if (tok.substr(0, 3) == "@t=") {
                auto t = parse_int<std::int64_t>(tok.substr(3));
                if (!t) throw ParseError(path, lineno, "bad timestamp '" + std::string(tok) + "'");
                if (r.time) throw ParseError(path, lineno, "more than one timestamp");
                r.time = t;
            } else if (tok.front() == '@' || tok.front() == '#') {
                throw ParseError(path, lineno, "unexpected token '" + std::string(tok) + "'");
            } else {
                r.labels.push_back(tok);
            }
        }
        raw.push_back(std::move(r));
    }
    return assemble(path, raw, opts, declared);
}

inline std::vector<std::string> read_lines(const std::string& path) {
    auto in = open_in(path);
    std::vector<std::string> out;
    for (std::string line; std::getline(in, line);)
        if (!trim(line).empty()) out.push_back(line);
    return out;
}

inline LoadedHypergraph load_benson(const std::string& prefix, const LoadOptions& opts) {
    const auto nverts = read_lines(prefix + "-nverts.txt");
    const auto simplices = read_lines(prefix + "-simplices.txt");
    std::optional<std::vector<std::string>> times;
    if (std::ifstream probe(prefix + "-times.txt"); probe) times = read_lines(prefix + "-times.txt");
    if (times && times->size() != nverts.size())
        throw ParseError(prefix + "-times.txt", times->size(), "line count differs from nverts");

    std::vector<RawHyperedge> raw;
    raw.reserve(nverts.size());
    std::size_t at = 0;
    for (std::size_t i = 0; i < nverts.size(); ++i) {
        auto k = parse_int<std::size_t>(trim(nverts[i]));
        if (!k) throw ParseError(prefix + "-nverts.txt", i + 1, "expected a vertex count");
        if (at + *k > simplices.size()) throw ParseError(prefix + "-simplices.txt", simplices.size(), "truncated");
        RawHyperedge r;
        r.line = i + 1;
        for (std::size_t j = 0; j < *k; ++j) r.labels.push_back(trim(simplices[at + j]));
        at += *k;
        if (times) {
            r.time = parse_int<std::int64_t>(trim((*times)[i]));
            if (!r.time) throw ParseError(prefix + "-times.txt", i + 1, "expected an integer timestamp");
        }
        raw.push_back(std::move(r));
    }
    return assemble(prefix, raw, opts, std::nullopt);
}

} // namespace detail

inline LoadedHypergraph load_hypergraph(const std::string& path,
                                        HypergraphFormat format = HypergraphFormat::Lines,
                                        const LoadOptions& opts = {}) {
    return format == HypergraphFormat::Benson ? detail::load_benson(path, opts) : detail::load_lines(path, opts);
}

/// Writes one line per unique hyperedge. With `ids`, original labels are
/// written and the "% nodes=" directive is omitted.
inline void save_hypergraph(const std::string& path, const Hypergraph& h, const IdMap* ids = nullptr) {
    auto out = detail::open_out(path);
    if (!ids) out << "% nodes=" << h.node_count() << '\n';
    for (const auto& [e, m] : h.edges()) {
        for (std::size_t i = 0; i < e.size(); ++i) {
            if (i) out << ' ';
            if (ids) out << ids->label(e[i]);
            else out << e[i];
        }
        if (m > 1) out << " # m=" << m;
        out << '\n';
    }
    if (!out) throw IoError("write failed for '" + path + "'");
}

inline LoadedGraph load_graph(const std::string& path, const LoadOptions& opts = {}) {
    auto in = detail::open_in(path);
    std::optional<std::size_t> declared;
    struct RawEdge {
        std::string u, v;
        Weight w;
        std::size_t line;
    };
    std::vector<RawEdge> raw;
    std::size_t lineno = 0;
    for (std::string buf; std::getline(in, buf);) {
        ++lineno;
        auto line = detail::trim(buf);
        if (line.empty()) continue;
        if (line.front() == '%') {
            if (auto n = detail::nodes_directive(line)) declared = n;
            continue;
        }
        auto tok = detail::split_tokens(line);
        if (tok.size() != 3) throw ParseError(path, lineno, "expected 'u v weight'");
        auto w = detail::parse_int<Weight>(tok[2]);
        if (!w || *w == 0) throw ParseError(path, lineno, "weight must be a positive integer");
        if (tok[0] == tok[1]) throw ParseError(path, lineno, "self loop");
        raw.push_back({std::string(tok[0]), std::string(tok[1]), *w, lineno});
    }
    detail::LabelResolver resolver(path, opts, declared);
    for (const auto& r : raw) {
        resolver.observe(r.u);
        resolver.observe(r.v);
    }
    resolver.finalize();
    std::unordered_map<std::uint64_t, Weight> weights;
    for (const auto& r : raw) {
        auto key = pair_key(resolver.resolve(r.u, r.line), resolver.resolve(r.v, r.line));
        if (!weights.emplace(key, r.w).second) throw ParseError(path, r.line, "duplicate edge");
    }
    LoadedGraph out;
    out.graph = ProjectedGraph::from_weights(resolver.node_count(), weights);
    out.ids = resolver.take();
    return out;
}

inline void save_graph(const std::string& path, const ProjectedGraph& g, const IdMap* ids = nullptr) {
    auto out = detail::open_out(path);
    if (!ids) out << "% nodes=" << g.node_count() << '\n';
    for (const auto& e : g.edges()) {
        if (ids) out << ids->label(e.u) << ' ' << ids->label(e.v);
        else out << e.u << ' ' << e.v;
        out << ' ' << e.weight << '\n';
    }
    if (!out) throw IoError("write failed for '" + path + "'");
}

/// Sidecar "<original-label> <dense-id>" per line.
inline void save_id_map(const std::string& path, const IdMap& ids) {
    auto out = detail::open_out(path);
    for (std::size_t i = 0; i < ids.size(); ++i) out << ids.label(static_cast<NodeId>(i)) << ' ' << i << '\n';
    if (!out) throw IoError("write failed for '" + path + "'");
}

inline IdMap load_id_map(const std::string& path) {
    auto in = detail::open_in(path);
    std::vector<std::pair<std::size_t, std::string>> rows;
    std::size_t lineno = 0;
    for (std::string buf; std::getline(in, buf);) {
        ++lineno;
        auto line = detail::trim(buf);
        if (line.empty() || line.front() == '%') continue;
        auto tok = detail::split_tokens(line);
        if (tok.size() != 2) throw ParseError(path, lineno, "expected '<label> <id>'");
        auto id = detail::parse_int<std::size_t>(tok[1]);
        if (!id) throw ParseError(path, lineno, "bad dense id");
        rows.emplace_back(*id, std::string(tok[0]));
    }
    std::sort(rows.begin(), rows.end());
    std::vector<std::string> labels;
    for (std::size_t i = 0; i < rows.size(); ++i) {
        if (rows[i].first != i) throw ParseError(path, 0, "dense ids are not 0..n-1");
        labels.push_back(std::move(rows[i].second));
    }
    return IdMap(std::move(labels));
}

} // namespace hyperrec
