#include "litclust/cli.hpp"

#include "litclust/artifacts.hpp"
#include "litclust/embed.hpp"
#include "litclust/error.hpp"
#include "litclust/metrics.hpp"
#include "litclust/parallel.hpp"
#include "litclust/pca.hpp"
#include "litclust/report.hpp"
#include "litclust/synthetic.hpp"

#include <CLI11.hpp>
#include <json.hpp>

#include <algorithm>
#include <charconv>
#include <cstdio>
#include <ostream>

namespace litclust {

namespace fs = std::filesystem;
using ojson = nlohmann::ordered_json;

std::string RunConfig::to_json() const
{
    ojson j;
    j["corpus"] = corpus_path.string();
    j["vectors"] = vectors_path ? ojson(vectors_path->string()) : ojson(nullptr);
    j["interchange"] = interchange_path ? ojson(interchange_path->string()) : ojson(nullptr);
    j["pca_k"] = pca_k;
    j["k"] = k ? ojson(*k) : ojson(nullptr);
    j["s"] = s ? ojson(*s) : ojson(nullptr);
    j["search"] = {{"seed", search.seed},
                   {"restarts", search.restarts},
                   {"patience", search.patience},
                   {"max_proposals", search.max_proposals}};
    j["output_dir"] = output_dir.string();
    j["seed"] = seed;
    return j.dump();
}

namespace {

struct Options {
    RunConfig cfg;
    bool json_errors = false;

    // embed
    std::string manifest;
    // cluster
    std::string embeddings;
    bool brute_force = false;
    // eval
    std::string partition;
    std::string triplets;
    std::string method = "Embedding";
    std::size_t trials = 10000;
    std::size_t ooo_trials = 1000;
    std::size_t triplet_count = 100;
    std::string sampling = "group";
    // neighbors
    std::string id;
    std::size_t m = 5;
    // count-space / synthetic
    std::vector<std::string> positional;
    std::size_t dim = 50;
    // agreement
    std::string annotations;
};

/// {"config": ..., "inputs": {name: sha256}} members for an output file.
std::string provenance(const RunConfig& cfg, const std::vector<std::pair<std::string, fs::path>>& inputs)
{
    ojson j;
    j["config"] = ojson::parse(cfg.to_json());
    ojson hashes = ojson::object();
    for (const auto& [name, path] : inputs)
        hashes[name] = {{"path", path.string()}, {"sha256", file_sha256(path)}};
    j["inputs"] = std::move(hashes);
    return j.dump();
}

void write_sidecar(const fs::path& file, const RunConfig& cfg,
                   const std::vector<std::pair<std::string, fs::path>>& inputs)
{
    auto j = ojson::parse(provenance(cfg, inputs));
    j["output"] = {{"path", file.filename().string()}, {"sha256", file_sha256(file)}};
    write_file(fs::path(file.string() + ".meta.json"), j.dump(2) + "\n");
}

std::size_t edit_distance(const std::string& a, const std::string& b)
{
    std::vector<std::size_t> prev(b.size() + 1), cur(b.size() + 1);
    for (std::size_t j = 0; j <= b.size(); ++j)
        prev[j] = j;
    for (std::size_t i = 1; i <= a.size(); ++i) {
        cur[0] = i;
        for (std::size_t j = 1; j <= b.size(); ++j)
            cur[j] = std::min({prev[j] + 1, cur[j - 1] + 1,
                               prev[j - 1] + (a[i - 1] == b[j - 1] ? 0 : 1)});
        std::swap(prev, cur);
    }
    return prev[b.size()];
}

std::uint64_t parse_count(const std::string& s, const char* what)
{
    std::uint64_t v = 0;
    auto [ptr, ec] = std::from_chars(s.data(), s.data() + s.size(), v);
    if (ec != std::errc() || ptr != s.data() + s.size())
        fail(std::string(what) + " must be a non-negative integer, got '" + s + "'");
    return v;
}

void require(const std::string& value, const char* flag)
{
    if (value.empty())
        fail(std::string("missing required option ") + flag);
}

// ---------------------------------------------------------------- commands

void cmd_synthetic(Options& o, std::ostream& out)
{
    if (o.positional.size() < 4 || o.positional.size() > 5)
        fail("usage: synthetic N K S SEP [SEED]");
    SyntheticCorpusParams p;
    p.n = parse_count(o.positional[0], "N");
    p.k = parse_count(o.positional[1], "K");
    p.s = parse_count(o.positional[2], "S");
    try {
        p.sep = std::stod(o.positional[3]);
    } catch (const std::exception&) {
        fail("SEP must be a number, got '" + o.positional[3] + "'");
    }
    if (o.positional.size() == 5)
        o.cfg.seed = parse_count(o.positional[4], "SEED");
    p.seed = o.cfg.seed;
    p.dim = o.dim;

    auto synth = make_synthetic_corpus(p);
    const auto corpus_file = o.cfg.output_dir / "corpus.json";
    const auto vectors_file = o.cfg.output_dir / "vectors.txt";
    write_file(corpus_file, corpus_to_json(synth.corpus));
    write_file(vectors_file, synth.vectors_text);

    ojson meta;
    meta["generator"] = {{"n", p.n}, {"k", p.k}, {"s", p.s}, {"sep", p.sep},
                         {"seed", p.seed}, {"dim", p.dim}};
    meta["outputs"] = {{"corpus.json", file_sha256(corpus_file)},
                       {"vectors.txt", file_sha256(vectors_file)}};
    write_file(o.cfg.output_dir / "synthetic.meta.json", meta.dump(2) + "\n");
    out << "wrote " << corpus_file.string() << " (" << p.n << " documents) and "
        << vectors_file.string() << '\n';
}

void cmd_tfidf(Options& o, std::ostream& out)
{
    require(o.cfg.corpus_path.string(), "--corpus");
    const auto corpus = load_corpus(o.cfg.corpus_path);
    const auto table = compute_tfidf(tokenize_corpus(corpus));
    const auto file = o.cfg.output_dir / "tfidf.json";
    write_file(file, tfidf_to_json(table));
    out << "wrote " << file.string() << " (" << table.doc_freq().size() << " token types)\n";
}

void cmd_embed(Options& o, std::ostream& out, std::ostream& err)
{
    auto& cfg = o.cfg;
    require(cfg.corpus_path.string(), "--corpus");
    if (cfg.vectors_path.has_value() == cfg.interchange_path.has_value())
        fail("embed needs exactly one of --vectors or --interchange");

    const auto corpus = load_corpus(cfg.corpus_path);
    const auto docs = tokenize_corpus(corpus);
    const auto tfidf = compute_tfidf(docs);
    std::vector<std::pair<std::string, fs::path>> inputs{{"corpus", cfg.corpus_path}};

    EmbeddingSet set;
    if (cfg.vectors_path) {
        std::unordered_set<std::string> vocab;
        for (const auto& [tok, _] : tfidf.doc_freq())
            vocab.insert(tok);
        const auto lexicon = load_static_vectors(*cfg.vectors_path, vocab);
        std::vector<Coverage> coverage;
        set = embed_corpus_static(corpus, tfidf, lexicon, &coverage);
        for (const auto& c : coverage)
            err << "coverage " << c.doc_id << ": " << c.covered << "/" << c.tokens << " tokens\n";
        inputs.emplace_back("vectors", *cfg.vectors_path);
    } else {
        const auto records = load_token_embeddings(*cfg.interchange_path);
        if (!o.manifest.empty()) {
            check_against_manifest(records, read_file(o.manifest));
            inputs.emplace_back("manifest", o.manifest);
        }
        set = embed_corpus_contextual(corpus, tfidf, records);
        for (const auto& r : records)
            err << "coverage " << r.doc_id << ": " << r.tokens.size() << " tokens\n";
        inputs.emplace_back("interchange", *cfg.interchange_path);
    }

    if (cfg.pca_k > 0) {
        const auto kept = clamp_components(cfg.pca_k, set.size(), set.dim());
        if (kept < cfg.pca_k)
            err << "warning: PCA keeps " << kept << " components, not " << cfg.pca_k
                << " (limited by N - 1 = " << set.size() - 1 << " and D = " << set.dim() << ")\n";
        const auto model = fit_pca(set, cfg.pca_k);
        set = transform_pca(model, set);
    }
    const auto file = cfg.output_dir / "embeddings.json";
    write_file(file, embeddings_to_json(set, provenance(cfg, inputs)));
    out << "wrote " << file.string() << " (" << set.size() << " x " << set.dim() << ")\n";
}

void cmd_cluster(Options& o, std::ostream& out)
{
    auto& cfg = o.cfg;
    require(o.embeddings, "--embeddings");
    const auto set = load_embeddings(o.embeddings);
    std::vector<std::pair<std::string, fs::path>> inputs{{"embeddings", o.embeddings}};
    if (!cfg.k || !cfg.s) {
        if (cfg.corpus_path.empty())
            fail("cluster needs --k and --s, or a labelled --corpus to take them from");
        const auto shape = balanced_shape(load_corpus(cfg.corpus_path));
        inputs.emplace_back("corpus", cfg.corpus_path);
        if (!cfg.k)
            cfg.k = shape.k;
        if (!cfg.s)
            cfg.s = shape.s;
    }
    if (*cfg.k * *cfg.s != set.size())
        fail("K*S = " + std::to_string(*cfg.k) + "*" + std::to_string(*cfg.s) + " = " +
             std::to_string(*cfg.k * *cfg.s) + " does not match " + std::to_string(set.size()) +
             " embeddings");
    cfg.search.seed = cfg.seed;

    SearchResult result;
    if (o.brute_force) {
        auto bf = brute_force_partition(set, *cfg.k, *cfg.s);
        result.partition = std::move(bf.partition);
        result.report = bf.report;
        result.trace.proposals_evaluated = bf.evaluated;
    } else {
        result = swap_search(set, *cfg.k, *cfg.s, cfg.search);
    }
    const auto file = cfg.output_dir / "partition.json";
    auto extra = ojson::parse(provenance(cfg, inputs));
    extra["method"] = o.brute_force ? "brute_force" : "swap_search";
    write_file(file, partition_to_json(set, result, extra.dump()));

    char buf[64];
    std::snprintf(buf, sizeof buf, "%.6f", result.report.strength);
    out << "strength " << buf << '\n';
    const auto clusters = result.partition.clusters();
    for (std::size_t c = 0; c < clusters.size(); ++c) {
        out << "cluster " << c << ':';
        for (auto i : clusters[c])
            out << ' ' << set.ids()[i];
        out << '\n';
    }
    out << "wrote " << file.string() << '\n';
}

TripletSampling sampling_mode(const std::string& name)
{
    if (name == "group")
        return TripletSampling::uniform_group;
    if (name == "pair")
        return TripletSampling::uniform_pair;
    fail("--sampling must be 'group' or 'pair', got '" + name + "'");
}

void cmd_triplets(Options& o, std::ostream& out)
{
    require(o.cfg.corpus_path.string(), "--corpus");
    const auto corpus = load_corpus(o.cfg.corpus_path);
    const auto gold = GoldPartition::from_corpus(corpus);
    const auto triplets = sample_triplets(gold, o.triplet_count, o.cfg.seed, sampling_mode(o.sampling));
    const auto file = o.cfg.output_dir / "triplets.json";
    write_file(file, triplets_to_json(triplets));
    write_sidecar(file, o.cfg, {{"corpus", o.cfg.corpus_path}});
    out << "wrote " << file.string() << " (" << triplets.size() << " triplets)\n";
}

void fill_baselines(EvalReport& r, const GoldPartition& gold, const Options& o, std::size_t triplets)
{
    const auto pb = random_purity_baseline(gold, o.trials, o.cfg.seed);
    r.purity_baseline = pb;
    r.baselines["random_purity"] = pb.mean;
    r.baselines["random_purity_q99"] = pb.q99;
    if (triplets > 0) {
        const auto ob = random_ooo_baseline(triplets, o.ooo_trials, o.cfg.seed);
        r.ooo_baseline = ob;
        r.baselines["random_ooo_accuracy"] = ob.mean;
    }
}

void cmd_baseline(Options& o, std::ostream& out)
{
    require(o.cfg.corpus_path.string(), "--corpus");
    const auto corpus = load_corpus(o.cfg.corpus_path);
    const auto gold = GoldPartition::from_corpus(corpus);
    EvalReport r;
    r.method = "Random";
    fill_baselines(r, gold, o, o.triplet_count);
    ojson j;
    j["purity"] = {{"mean", r.purity_baseline->mean},
                   {"stderr", r.purity_baseline->stderr_mean},
                   {"q99", r.purity_baseline->q99},
                   {"trials", r.purity_baseline->trials}};
    j["ooo_accuracy"] = {{"mean", r.ooo_baseline->mean},
                         {"stderr", r.ooo_baseline->stderr_mean},
                         {"triplets", o.triplet_count},
                         {"trials", r.ooo_baseline->trials}};
    auto prov = ojson::parse(provenance(o.cfg, {{"corpus", o.cfg.corpus_path}}));
    for (auto& [k, v] : prov.items())
        j[k] = v;
    const auto file = o.cfg.output_dir / "baseline.json";
    write_file(file, j.dump(2) + "\n");
    char buf[96];
    std::snprintf(buf, sizeof buf, "random purity %.4f (stderr %.4f), random accuracy %.1f\n",
                  r.purity_baseline->mean, r.purity_baseline->stderr_mean,
                  r.ooo_baseline->mean * 100.0);
    out << buf << "wrote " << file.string() << '\n';
}

void cmd_eval(Options& o, std::ostream& out)
{
    auto& cfg = o.cfg;
    require(cfg.corpus_path.string(), "--corpus");
    require(o.partition, "--partition");
    const auto corpus = load_corpus(cfg.corpus_path);
    if (!corpus.labeled())
        fail("eval needs a labelled corpus");
    const auto gold = GoldPartition::from_corpus(corpus);
    const auto pred = load_partition(o.partition);
    std::vector<std::pair<std::string, fs::path>> inputs{{"corpus", cfg.corpus_path},
                                                         {"partition", o.partition}};

    EvalReport r;
    r.method = o.method;
    r.purity = purity(pred.ids, pred.partition, gold);

    std::size_t triplet_count = 0;
    if (!o.embeddings.empty()) {
        const auto set = load_embeddings(o.embeddings);
        inputs.emplace_back("embeddings", o.embeddings);
        std::vector<Triplet> triplets;
        if (!o.triplets.empty()) {
            triplets = load_triplets(o.triplets);
            for (const auto& t : triplets)
                validate_triplet(gold, t);
            inputs.emplace_back("triplets", o.triplets);
        } else {
            triplets = sample_triplets(gold, o.triplet_count, cfg.seed, sampling_mode(o.sampling));
        }
        const auto acc = ooo_accuracy(set, triplets, &gold);
        r.ooo_accuracy = acc.accuracy;
        r.per_group = acc.per_group;
        r.triplets = triplets.size();
        triplet_count = triplets.size();
    }
    fill_baselines(r, gold, o, triplet_count == 0 ? o.triplet_count : triplet_count);

    const auto json_file = cfg.output_dir / "report.json";
    const auto text_file = cfg.output_dir / "report.txt";
    write_file(json_file, report_to_json(r, provenance(cfg, inputs)));
    const auto table = report_to_table(r);
    write_file(text_file, table);
    out << table << "wrote " << json_file.string() << " and " << text_file.string() << '\n';
}

void cmd_neighbors(Options& o, std::ostream& out)
{
    require(o.embeddings, "--embeddings");
    require(o.id, "--id");
    if (o.m == 0)
        fail("--m must be at least 1");
    const auto set = load_embeddings(o.embeddings);
    if (!set.index_of(o.id)) {
        std::vector<std::pair<std::size_t, std::string>> ranked;
        for (const auto& id : set.ids())
            ranked.emplace_back(edit_distance(o.id, id), id);
        std::stable_sort(ranked.begin(), ranked.end(),
                         [](const auto& a, const auto& b) { return a.first < b.first; });
        std::string hint;
        for (std::size_t i = 0; i < std::min<std::size_t>(3, ranked.size()); ++i)
            hint += (i ? ", " : "") + ranked[i].second;
        fail("unknown id '" + o.id + "'; closest ids: " + hint);
    }
    const auto nn = nearest_neighbors(set, o.id, o.m);
    std::size_t width = 4;
    for (const auto& n : nn)
        width = std::max(width, n.id.size() + 2);
    out << "rank  " << std::string("id").append(width - 2, ' ') << "distance\n";
    char buf[32];
    for (std::size_t i = 0; i < nn.size(); ++i) {
        std::snprintf(buf, sizeof buf, "%-6zu", i + 1);
        out << buf << nn[i].id << std::string(width - nn[i].id.size(), ' ');
        std::snprintf(buf, sizeof buf, "%.6f", nn[i].distance);
        out << buf << '\n';
    }
}

void cmd_count_space(Options& o, std::ostream& out)
{
    if (o.positional.size() != 3)
        fail("usage: count-space N K S");
    const auto n = parse_count(o.positional[0], "N");
    const auto k = parse_count(o.positional[1], "K");
    const auto s = parse_count(o.positional[2], "S");
    if (k == 0 || s == 0 || n != k * s)
        fail(std::to_string(n) + " != " + std::to_string(k) + " * " + std::to_string(s));
    const auto c = count_partitions(n, k, s);
    out << "ordered: " << c.ordered.str() << ", unordered: " << c.unordered.str() << '\n';
}

void cmd_agreement(Options& o, std::ostream& out)
{
    require(o.annotations, "--annotations");
    const auto m = load_annotations(o.annotations);
    char buf[128];
    std::snprintf(buf, sizeof buf, "items %zu, raters %zu, fleiss kappa %.4f, majority agreement %.4f\n",
                  m.items().size(), m.raters(), fleiss_kappa(m), majority_agreement_rate(m));
    out << buf;
}

void report_error(const Options& o, std::ostream& err, const std::string& kind,
                  const std::string& message, int code)
{
    if (o.json_errors) {
        ojson j;
        j["error"] = {{"kind", kind}, {"message", message}, {"exit_code", code}};
        err << j.dump() << '\n';
    } else {
        err << "error: " << message << '\n';
    }
}

} // namespace

int run_cli(int argc, const char* const* argv, std::ostream& out, std::ostream& err)
{
    Options o;
    CLI::App app{"Embed, cluster and evaluate document collections with balanced clusters",
                 "litclust"};
    app.require_subcommand(1);
    app.fallthrough();

    std::string output_dir = ".";
    app.add_option("--seed", o.cfg.seed, "Random seed for every stochastic step");
    app.add_option("--threads", o.cfg.threads, "Worker threads (0: runtime default)");
    app.add_option("--output-dir", output_dir, "Directory for output files");
    app.add_flag("--json-errors", o.json_errors, "Report errors as JSON on stderr");

    std::string corpus, vectors, interchange;
    auto corpus_opt = [&](CLI::App* sub) {
        sub->add_option("--corpus", corpus, "Corpus JSON file");
    };
    auto search_opts = [&](CLI::App* sub) {
        sub->add_option("--restarts", o.cfg.search.restarts, "Independent restarts");
        sub->add_option("--patience", o.cfg.search.patience,
                        "Consecutive rejected proposals that end a restart");
        sub->add_option("--max-proposals", o.cfg.search.max_proposals,
                        "Proposal cap per restart");
    };
    std::size_t k = 0, s = 0;

    auto* synthetic = app.add_subcommand("synthetic", "Write a planted-theme corpus and toy vectors");
    synthetic->add_option("params", o.positional, "N K S SEP [SEED]")->expected(4, 5);
    synthetic->add_option("--dim", o.dim, "Vector dimension");

    auto* tfidf = app.add_subcommand("tfidf", "Dump the corpus tf-idf table as JSON");
    corpus_opt(tfidf);

    auto* embed = app.add_subcommand("embed", "Pool token vectors into document embeddings");
    corpus_opt(embed);
    embed->add_option("--vectors", vectors, "Static vectors file (token v1 ... vD)");
    embed->add_option("--interchange", interchange, "Token embedding JSON Lines file");
    embed->add_option("--manifest", o.manifest, "Exporter manifest to check the interchange file");
    embed->add_option("--pca-k", o.cfg.pca_k, "PCA components (0 disables PCA)");

    auto* cluster = app.add_subcommand("cluster", "Balanced clustering by swap search");
    cluster->add_option("--embeddings", o.embeddings, "Embedding cache from `embed`");
    corpus_opt(cluster);
    cluster->add_option("--k", k, "Number of clusters");
    cluster->add_option("--s", s, "Cluster size");
    search_opts(cluster);
    cluster->add_flag("--brute-force", o.brute_force, "Exhaustive search (small inputs only)");

    auto* eval = app.add_subcommand("eval", "Purity and odd-one-out report");
    corpus_opt(eval);
    eval->add_option("--partition", o.partition, "Partition file from `cluster`");
    eval->add_option("--embeddings", o.embeddings, "Embedding cache for odd-one-out accuracy");
    eval->add_option("--triplets", o.triplets, "Triplets file (sampled when absent)");
    eval->add_option("--method", o.method, "Row label in the report");
    eval->add_option("--trials", o.trials, "Monte Carlo trials for the purity baseline");
    eval->add_option("--ooo-trials", o.ooo_trials, "Monte Carlo trials for the accuracy baseline");
    eval->add_option("--count", o.triplet_count, "Triplets to sample when none are given");
    eval->add_option("--sampling", o.sampling, "Triplet sampling: group or pair");

    auto* triplets = app.add_subcommand("triplets", "Sample odd-one-out triplets");
    corpus_opt(triplets);
    triplets->add_option("--count", o.triplet_count, "Number of distinct triplets");
    triplets->add_option("--sampling", o.sampling, "group (default) or pair");

    auto* baseline = app.add_subcommand("baseline", "Monte Carlo random baselines");
    corpus_opt(baseline);
    baseline->add_option("--trials", o.trials, "Random partitions to score");
    baseline->add_option("--ooo-trials", o.ooo_trials, "Repetitions of random guessing");
    baseline->add_option("--count", o.triplet_count, "Triplets per guessing repetition");

    auto* neighbors = app.add_subcommand("neighbors", "Nearest documents by Euclidean distance");
    neighbors->add_option("--embeddings", o.embeddings, "Embedding cache");
    neighbors->add_option("--id", o.id, "Query document id");
    neighbors->add_option("--m", o.m, "Number of neighbours");

    auto* count_space = app.add_subcommand("count-space", "Count balanced assignments");
    count_space->add_option("params", o.positional, "N K S")->expected(3);

    auto* agreement = app.add_subcommand("agreement", "Fleiss kappa of an annotation file");
    agreement->add_option("--annotations", o.annotations, "Annotation JSON file");

    try {
        app.parse(argc, argv);
    } catch (const CLI::CallForHelp&) {
        out << app.help();
        return 0;
    } catch (const CLI::CallForAllHelp&) {
        out << app.help("", CLI::AppFormatMode::All);
        return 0;
    } catch (const CLI::ParseError& e) {
        report_error(o, err, "usage", e.what(), 2);
        return 2;
    }

    try {
        o.cfg.output_dir = output_dir;
        o.cfg.corpus_path = corpus;
        if (!vectors.empty())
            o.cfg.vectors_path = vectors;
        if (!interchange.empty())
            o.cfg.interchange_path = interchange;
        if (k)
            o.cfg.k = k;
        if (s)
            o.cfg.s = s;
        set_threads(o.cfg.threads);

        if (synthetic->parsed())
            cmd_synthetic(o, out);
        else if (tfidf->parsed())
            cmd_tfidf(o, out);
        else if (embed->parsed())
            cmd_embed(o, out, err);
        else if (cluster->parsed())
            cmd_cluster(o, out);
        else if (eval->parsed())
            cmd_eval(o, out);
        else if (triplets->parsed())
            cmd_triplets(o, out);
        else if (baseline->parsed())
            cmd_baseline(o, out);
        else if (neighbors->parsed())
            cmd_neighbors(o, out);
        else if (count_space->parsed())
            cmd_count_space(o, out);
        else if (agreement->parsed())
            cmd_agreement(o, out);
    } catch (const Error& e) {
        set_threads(0);
        report_error(o, err, kind_name(e.kind()), e.what(), exit_code(e.kind()));
        return exit_code(e.kind());
    } catch (const std::exception& e) {
        set_threads(0);
        report_error(o, err, "internal", e.what(), 1);
        return 1;
    }
    set_threads(0);
    return 0;
}

} // namespace litclust
