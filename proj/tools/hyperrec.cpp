// hyperrec - command-line front end: project, split, train, reconstruct,
// evaluate, stats, synth.
//
// Exit codes: 0 success, 1 validation or configuration error, 2 I/O or parse error.
#include "hyperrec/hyperrec.hpp"

#include <CLI11.hpp>

#include <cstdio>
#include <fstream>
#include <iostream>

using namespace hyperrec;

namespace {

struct InputOptions {
    std::string format = "lines";
    bool skip_invalid = false;

    HypergraphFormat parsed() const { return format == "benson" ? HypergraphFormat::Benson : HypergraphFormat::Lines; }
};

void add_input_options(CLI::App* cmd, InputOptions& in) {
    cmd->add_option("--format", in.format, "Hypergraph file format")
        ->check(CLI::IsMember({"lines", "benson"}));
    cmd->add_flag("--skip-invalid", in.skip_invalid, "Warn about and drop hyperedges with fewer than 2 nodes");
}

LoadedHypergraph read_hypergraph(const std::string& path, const InputOptions& in, const IdMap* ids = nullptr) {
    LoadOptions opts;
    opts.skip_invalid = in.skip_invalid;
    opts.ids = ids;
    auto loaded = load_hypergraph(path, in.parsed(), opts);
    for (const auto& w : loaded.warnings) std::cerr << "warning: " << w << '\n';
    return loaded;
}

// Dense ids that already spell 0..n-1 are written as ids so the node count
// header survives; anything else is written with its original labels.
const IdMap* output_labels(const IdMap& ids) {
    for (std::size_t i = 0; i < ids.size(); ++i)
        if (ids.label(static_cast<NodeId>(i)) != std::to_string(i)) return &ids;
    return nullptr;
}

std::string fmt(double v, int digits = 6) {
    char buf[64];
    std::snprintf(buf, sizeof buf, "%.*f", digits, v);
    return buf;
}

void print_hypergraph_stats(std::ostream& os, const Hypergraph& h) {
    os << "nodes=" << h.node_count() << '\n'
       << "hyperedges_unique=" << h.unique_count() << '\n'
       << "hyperedges_instances=" << h.instance_count() << '\n'
       << "avg_multiplicity="
       << fmt(h.unique_count() ? static_cast<double>(h.instance_count()) / static_cast<double>(h.unique_count()) : 0.0)
       << '\n';
    std::size_t max_size = 0;
    for (const auto& [e, m] : h.edges()) max_size = std::max(max_size, e.size());
    os << "max_hyperedge_size=" << max_size << '\n';
}

void print_graph_stats(std::ostream& os, const ProjectedGraph& g, bool with_nodes) {
    if (with_nodes) os << "nodes=" << g.node_count() << '\n';
    os << "graph_edges=" << g.edge_count() << '\n'
       << "total_weight=" << g.total_weight() << '\n'
       << "avg_weight="
       << fmt(g.edge_count() ? static_cast<double>(g.total_weight()) / static_cast<double>(g.edge_count()) : 0.0)
       << '\n'
       << "max_degree=" << g.max_degree() << '\n';
}

int run_project(const std::string& in_path, const std::string& out_path, const std::string& id_map,
                const InputOptions& in) {
    auto loaded = read_hypergraph(in_path, in);
    if (loaded.hypergraph.empty()) std::cerr << "warning: '" << in_path << "' contains no hyperedges\n";
    const auto g = clique_expansion(loaded.hypergraph);
    save_graph(out_path, g, output_labels(loaded.ids));
    if (!id_map.empty()) save_id_map(id_map, loaded.ids);
    std::cout << "graph_edges=" << g.edge_count() << "\ntotal_weight=" << g.total_weight() << '\n';
    return 0;
}

// Earliest timestamp of each unique hyperedge, in canonical edge order.
std::vector<std::int64_t> first_times(const Hypergraph& h, const std::vector<std::int64_t>& times) {
    std::map<NodeSet, std::int64_t> first;
    const auto inst = h.instances();
    for (std::size_t i = 0; i < inst.size(); ++i) {
        auto [it, fresh] = first.emplace(inst[i], times[i]);
        if (!fresh) it->second = std::min(it->second, times[i]);
    }
    std::vector<std::int64_t> out;
    for (const auto& [e, t] : first) out.push_back(t);
    return out;
}

int run_split(const std::string& in_path, const std::string& source_path, const std::string& target_path,
              const std::string& mode, std::uint64_t seed, bool reduce, const InputOptions& in) {
    auto loaded = read_hypergraph(in_path, in);
    SplitSpec spec;
    spec.seed = seed;
    spec.mode = mode == "time" ? SplitMode::TimestampHalves : SplitMode::RandomHalves;
    Hypergraph h = std::move(loaded.hypergraph);
    if (spec.mode == SplitMode::TimestampHalves) {
        if (!loaded.timestamps) throw ConfigError("--mode time needs '@t=' on every line of '" + in_path + "'");
        spec.timestamps = reduce ? first_times(h, *loaded.timestamps) : *loaded.timestamps;
    }
    if (reduce) h = reduce_multiplicity(h);
    auto halves = split_hyperedges(h, spec);
    const IdMap* labels = output_labels(loaded.ids);
    save_hypergraph(source_path, halves.source, labels);
    save_hypergraph(target_path, halves.target, labels);
    std::cout << "source_instances=" << halves.source.instance_count()
              << "\ntarget_instances=" << halves.target.instance_count() << '\n';
    return 0;
}

int run_train(const std::string& hyper_path, const std::string& graph_path, const std::string& out_path,
              const std::string& dump_path, const TrainConfig& cfg, const InputOptions& in) {
    auto loaded = read_hypergraph(hyper_path, in);
    ProjectedGraph g;
    if (graph_path.empty()) {
        g = clique_expansion(loaded.hypergraph);
    } else {
        LoadOptions opts;
        opts.ids = &loaded.ids;
        g = load_graph(graph_path, opts).graph;
    }
    auto set = build_training_set(g, loaded.hypergraph, cfg);
    if (!dump_path.empty()) {
        std::ofstream dump(dump_path);
        if (!dump) throw IoError("cannot open '" + dump_path + "' for writing");
        dump << "label";
        for (auto name : kFeatureNames) dump << '\t' << name;
        dump << '\n';
        for (std::size_t i = 0; i < set.size(); ++i) {
            dump << set.labels[i];
            for (double v : set.features[i]) dump << '\t' << v;
            dump << '\n';
        }
    }
    auto res = train(set, cfg);
    save_model(out_path, res.model);
    std::cout << "positives=" << set.positives << "\nnegatives_maximal=" << set.negatives_maximal
              << "\nnegatives_subclique=" << set.negatives_subclique
              << "\nfinal_loss=" << fmt(res.epoch_loss.back()) << "\ntrain_accuracy=" << fmt(res.train_accuracy)
              << '\n';
    return 0;
}

int run_reconstruct(const std::string& graph_path, const std::string& model_path, const std::string& out_path,
                    const std::string& method, const std::string& trace_path, const SearchConfig& cfg) {
    cfg.validate();
    auto loaded = load_graph(graph_path);
    if (!loaded.graph.has_edges()) std::cerr << "warning: '" << graph_path << "' has no edges\n";
    Hypergraph h;
    if (method == "maxclique") {
        h = max_clique_baseline(loaded.graph);
    } else if (method == "cover") {
        h = clique_cover_baseline(loaded.graph);
    } else {
        if (model_path.empty()) throw ConfigError("--method search needs --model");
        const auto model = load_model(model_path);
        Reconstruction rec;
        try {
            rec = reconstruct(loaded.graph, model, cfg);
        } catch (const IncompleteReconstruction& e) {
            save_hypergraph(out_path + ".partial", e.partial(), output_labels(loaded.ids));
            throw;
        }
        rec.trace.filter.write(std::cout);
        rec.trace.write_table(std::cerr);
        std::cout << "iterations=" << rec.trace.iterations.size()
                  << "\nhit_iteration_cap=" << (rec.trace.hit_iteration_cap ? 1 : 0) << '\n';
        if (!trace_path.empty()) {
            std::ofstream tf(trace_path);
            if (!tf) throw IoError("cannot open '" + trace_path + "' for writing");
            rec.trace.write_tsv(tf);
        }
        h = std::move(rec.hypergraph);
    }
    h.set_node_count(std::max(h.node_count(), loaded.graph.node_count()));
    save_hypergraph(out_path, h, output_labels(loaded.ids));
    std::cout << "hyperedges_unique=" << h.unique_count() << "\nhyperedges_instances=" << h.instance_count() << '\n';
    return 0;
}

int run_evaluate(const std::string& truth_path, const std::string& recon_path, const std::string& mode,
                 const InputOptions& in) {
    auto truth = read_hypergraph(truth_path, in);
    InputOptions lines;
    lines.skip_invalid = in.skip_invalid;
    auto recon = read_hypergraph(recon_path, lines, &truth.ids);
    Hypergraph t = std::move(truth.hypergraph), r = std::move(recon.hypergraph);
    if (mode == "reduced") {
        t = reduce_multiplicity(t);
        r = reduce_multiplicity(r);
    }
    const auto n = std::max(t.node_count(), r.node_count());
    t.set_node_count(n);
    r.set_node_count(n);
    const double j = jaccard(t, r), mj = multi_jaccard(t, r);
    auto rep = property_report(t, r);
    std::cout << "mode: " << mode << '\n'
              << "jaccard        " << fmt(j) << '\n'
              << "multi_jaccard  " << fmt(mj) << "\n\n";
    rep.write_table(std::cout);
    std::cout << '\n' << "mode=" << mode << "\njaccard=" << fmt(j, 17) << "\nmulti_jaccard=" << fmt(mj, 17) << '\n';
    rep.write_keyvalue(std::cout);
    return 0;
}

int run_stats(const std::string& hyper_path, const std::string& graph_path, const InputOptions& in) {
    if (hyper_path.empty() == graph_path.empty()) throw ConfigError("stats: give exactly one of --hypergraph, --graph");
    ProjectedGraph g;
    if (!hyper_path.empty()) {
        auto loaded = read_hypergraph(hyper_path, in);
        print_hypergraph_stats(std::cout, loaded.hypergraph);
        g = clique_expansion(loaded.hypergraph);
        print_graph_stats(std::cout, g, false);
    } else {
        g = load_graph(graph_path).graph;
        print_graph_stats(std::cout, g, true);
    }
    filter_guaranteed(g).report.write(std::cout);
    return 0;
}

int run_synth(const std::string& out_path, const std::string& kind, const SyntheticConfig& s,
              const DisjointConfig& d) {
    Hypergraph h = kind == "disjoint" ? generate_disjoint(d) : generate_synthetic(s);
    save_hypergraph(out_path, h);
    std::cout << "hyperedges_unique=" << h.unique_count() << "\nhyperedges_instances=" << h.instance_count()
              << '\n';
    return 0;
}

} // namespace

int main(int argc, char** argv) {
    CLI::App app{"Reconstruct hypergraphs from weighted projected graphs"};
    app.require_subcommand(1);
    app.option_defaults()->always_capture_default();

    InputOptions in;

    auto* project = app.add_subcommand("project", "Write the weighted clique expansion of a hypergraph");
    std::string p_in, p_out, p_ids;
    project->add_option("input", p_in, "Hypergraph file (or Benson prefix)")->required();
    project->add_option("-o,--out", p_out, "Output graph file")->required();
    project->add_option("--id-map", p_ids, "Also write a '<label> <id>' sidecar");
    add_input_options(project, in);

    auto* split = app.add_subcommand("split", "Split hyperedge instances into source and target halves");
    std::string s_in, s_source, s_target, s_mode = "random";
    std::uint64_t seed = 0;
    bool s_reduce = false;
    split->add_option("input", s_in, "Hypergraph file (or Benson prefix)")->required();
    split->add_option("--source", s_source, "Output for the source half")->required();
    split->add_option("--target", s_target, "Output for the target half")->required();
    split->add_option("--mode", s_mode, "random: shuffled halves; time: earliest half is the source")
        ->check(CLI::IsMember({"random", "time"}));
    split->add_option("--seed", seed, "Random seed");
    split->add_flag("--reduce", s_reduce, "Collapse multiplicities to 1 before splitting");
    add_input_options(split, in);

    auto* trn = app.add_subcommand("train", "Train a clique scorer on a source hypergraph");
    std::string t_hyper, t_graph, t_out, t_dump;
    TrainConfig tcfg;
    trn->add_option("--hypergraph", t_hyper, "Source hypergraph")->required();
    trn->add_option("--graph", t_graph, "Source projected graph (default: projection of --hypergraph)");
    trn->add_option("-o,--out", t_out, "Model file to write")->required();
    trn->add_option("--hidden", tcfg.hidden, "Hidden units");
    trn->add_option("--lr", tcfg.learning_rate, "Adam learning rate");
    trn->add_option("--epochs", tcfg.epochs, "Training epochs");
    trn->add_option("--batch-size", tcfg.batch_size, "Mini-batch size");
    trn->add_option("--negative-ratio", tcfg.negative_ratio, "Negatives per positive");
    trn->add_option("--seed", tcfg.seed, "Random seed");
    trn->add_option("--dump-features", t_dump, "Write the training features as TSV");
    add_input_options(trn, in);

    auto* rec = app.add_subcommand("reconstruct", "Reconstruct a hypergraph from a projected graph");
    std::string r_graph, r_model, r_out, r_method = "search", r_trace;
    SearchConfig scfg;
    bool no_sweep = false;
    rec->add_option("--graph", r_graph, "Projected graph")->required();
    rec->add_option("--model", r_model, "Model file from 'train'");
    rec->add_option("-o,--out", r_out, "Output hypergraph file")->required();
    rec->add_option("--method", r_method, "search: trained scorer with bidirectional search; maxclique / cover: baselines")
        ->check(CLI::IsMember({"search", "maxclique", "cover"}));
    rec->add_option("--theta-init", scfg.theta_init, "Initial score threshold");
    rec->add_option("--r", scfg.r_percent, "Percent of low-scoring cliques probed for sub-cliques");
    rec->add_option("--alpha", scfg.alpha, "Threshold decay per iteration, as a fraction of theta-init");
    rec->add_option("--max-iterations", scfg.max_iterations, "Iteration cap (0: 10 * ceil(1 / alpha))");
    rec->add_option("--seed", scfg.seed, "Random seed");
    rec->add_option("--threads", scfg.threads, "Scoring threads")->envname("HYPERREC_THREADS");
    rec->add_flag("--no-sweep", no_sweep, "Fail instead of sweeping remaining cliques at the cap");
    rec->add_flag("--refilter", scfg.refilter, "Re-run guaranteed filtering after every iteration");
    rec->add_option("--trace", r_trace, "Write the per-iteration trace as TSV");

    auto* eval = app.add_subcommand("evaluate", "Compare a reconstruction with the truth");
    std::string e_truth, e_recon, e_mode = "preserved";
    eval->add_option("--truth", e_truth, "Ground-truth hypergraph")->required();
    eval->add_option("--recon", e_recon, "Reconstructed hypergraph (line format)")->required();
    eval->add_option("--mode", e_mode, "reduced: collapse multiplicities first")
        ->check(CLI::IsMember({"reduced", "preserved"}));
    add_input_options(eval, in);

    auto* stats = app.add_subcommand("stats", "Dataset summary and guaranteed-filtering counts");
    std::string st_hyper, st_graph;
    stats->add_option("--hypergraph", st_hyper, "Hypergraph file (or Benson prefix)");
    stats->add_option("--graph", st_graph, "Projected graph file");
    add_input_options(stats, in);

    auto* synth = app.add_subcommand("synth", "Generate a synthetic hypergraph");
    std::string y_out, y_kind = "random";
    SyntheticConfig ycfg{100, 200, 2, 5, 0.1, 0};
    DisjointConfig dcfg{50, 2, 5, 3, 0};
    synth->add_option("-o,--out", y_out, "Output hypergraph file")->required();
    synth->add_option("--kind", y_kind, "random: overlapping hyperedges; disjoint: node-disjoint blocks")
        ->check(CLI::IsMember({"random", "disjoint"}));
    synth->add_option("--nodes", ycfg.n_nodes, "Node count (random)");
    synth->add_option("--instances", ycfg.n_hyperedges, "Hyperedge instances, duplicates included (random)");
    synth->add_option("--duplicate-prob", ycfg.duplicate_prob, "Chance an instance repeats an earlier one (random)");
    synth->add_option("--unique", dcfg.n_unique, "Unique hyperedges (disjoint)");
    synth->add_option("--max-multiplicity", dcfg.max_multiplicity, "Largest multiplicity (disjoint)");
    synth->add_option("--min-size", ycfg.min_size, "Smallest hyperedge size");
    synth->add_option("--max-size", ycfg.max_size, "Largest hyperedge size");
    synth->add_option("--seed", ycfg.seed, "Random seed");

    try {
        app.parse(argc, argv);
    } catch (const CLI::ParseError& e) {
        return app.exit(e) == 0 ? 0 : 1;
    }

    try {
        if (*project) return run_project(p_in, p_out, p_ids, in);
        if (*split) return run_split(s_in, s_source, s_target, s_mode, seed, s_reduce, in);
        if (*trn) return run_train(t_hyper, t_graph, t_out, t_dump, tcfg, in);
        if (*rec) {
            scfg.final_sweep = !no_sweep;
            return run_reconstruct(r_graph, r_model, r_out, r_method, r_trace, scfg);
        }
        if (*eval) return run_evaluate(e_truth, e_recon, e_mode, in);
        if (*stats) return run_stats(st_hyper, st_graph, in);
        if (*synth) {
            dcfg.min_size = ycfg.min_size;
            dcfg.max_size = ycfg.max_size;
            dcfg.seed = ycfg.seed;
            return run_synth(y_out, y_kind, ycfg, dcfg);
        }
    } catch (const IncompleteReconstruction& e) {
        std::cerr << "error: " << e.what() << " (partial result written next to --out)\n";
        return 1;
    } catch (const ValidationError& e) {
        std::cerr << "error: " << e.what() << '\n';
        return 1;
    } catch (const IoError& e) {
        std::cerr << "error: " << e.what() << '\n';
        return 2;
    } catch (const Error& e) {
        std::cerr << "error: " << e.what() << '\n';
        return 1;
    }
    return 1;
}
