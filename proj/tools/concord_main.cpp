// concord: logical relation checking for formalized clinical rule sets.
//
// Subcommands: validate, relate, scan, graph, export smtlib, and a bench
// family (gen-gold, gen-noise, run, score). Exit codes: 0 success,
// 1 validation/input failure, 2 usage error.

#include <fstream>
#include <iostream>
#include <optional>
#include <sstream>

#include <CLI11.hpp>

#include "concord/bench.hpp"
#include "concord/document.hpp"
#include "concord/errors.hpp"
#include "concord/pipeline.hpp"
#include "concord/synthetic.hpp"

namespace {

using namespace concord;

std::string read_file(const std::string& path) {
    std::ifstream in(path, std::ios::binary);
    if (!in) throw ValidationError("cannot open file", path);
    std::ostringstream buffer;
    buffer << in.rdbuf();
    return buffer.str();
}

void write_output(const std::string& path, const std::string& bytes) {
    if (path.empty() || path == "-") {
        std::cout << bytes;
        return;
    }
    std::ofstream out(path, std::ios::binary);
    if (!out) throw ValidationError("cannot write file", path);
    out << bytes;
}

struct CommonArgs {
    std::string doc_path;
    std::string axioms_path;
};

std::unique_ptr<Analysis> load_analysis(const CommonArgs& args) {
    Document doc = load_document(read_file(args.doc_path));
    AxiomSet extra;
    if (!args.axioms_path.empty()) extra = load_axioms(read_file(args.axioms_path), doc);
    return Analysis::compile(std::move(doc), extra);
}

void add_axioms_option(CLI::App* cmd, std::string& path) {
    cmd->add_option("--axioms", path, "axiom file conjoined into every query")
        ->envname("CONCORD_AXIOMS");
}

void scan_config_options(CLI::App* cmd, bool& exhaustive, bool& spec_prior, LshConfig& lsh) {
    cmd->add_flag("--exhaustive", exhaustive, "classify every pair instead of LSH candidates");
    cmd->add_flag("--spec-prior", spec_prior, "suppress conflicts covered by declared exceptions");
    cmd->add_option("--lsh-hashes", lsh.num_hashes, "MinHash permutations");
    cmd->add_option("--lsh-bands", lsh.bands, "LSH bands");
    cmd->add_option("--lsh-rows", lsh.rows, "rows per band");
    cmd->add_option("--lsh-shingle", lsh.shingle_tokens, "tokens per shingle");
    cmd->add_option("--seed", lsh.seed, "MinHash seed");
}

int run_validate(const CommonArgs& args) {
    auto analysis = load_analysis(args);
    const Document& doc = analysis->doc();
    std::cout << "ok: " << doc.predicates.size() << " predicates, " << doc.rules.size()
              << " rules, " << analysis->axioms().size() << " axioms, "
              << analysis->session().vars().size() << " theory variables\n";
    return 0;
}

std::pair<std::size_t, std::size_t> resolve_pair(const Analysis& analysis, const std::string& a,
                                                 const std::string& b) {
    const std::size_t ia = analysis.doc().rule_index(a);
    const std::size_t ib = analysis.doc().rule_index(b);
    if (ia == static_cast<std::size_t>(-1)) throw ValidationError("unknown rule id '" + a + "'");
    if (ib == static_cast<std::size_t>(-1)) throw ValidationError("unknown rule id '" + b + "'");
    return {ia, ib};
}

int run_relate(const CommonArgs& args, const std::string& rule_a, const std::string& rule_b,
               bool spec_prior, const std::string& format) {
    auto analysis = load_analysis(args);
    const auto [ia, ib] = resolve_pair(*analysis, rule_a, rule_b);
    ClassifyConfig config;
    config.spec_prior = spec_prior;
    const RelationVerdict verdict = classify_pair(*analysis, ia, ib, config);
    const Rule& a = analysis->doc().rules[ia];
    const Rule& b = analysis->doc().rules[ib];
    if (format == "json") {
        nlohmann::json out{
            {"rule_a", a.id},
            {"rule_b", b.id},
            {"label", std::string(to_token(verdict.label))},
            {"benchmark_label", std::string(to_token(benchmark_of(verdict.label)))},
            {"coarse", std::string(to_token(coarse_of(verdict.label)))},
            {"condition_relation", std::string(to_token(verdict.condition_relation))},
            {"action_relation",
             nlohmann::json{{"value", std::string(to_token(verdict.action.relation))},
                            {"witnesses", verdict.action.witness_subjects}}},
            {"witness_model", verdict.witness
                                  ? model_to_json(*verdict.witness, analysis->session())
                                  : nlohmann::json(nullptr)},
            {"spec_prior_applied", verdict.spec_prior_applied},
            {"explanation", explain(verdict, a, b, analysis->session())}};
        std::cout << out.dump(2) << "\n";
    } else {
        std::cout << to_token(verdict.label) << "\n";
        std::cout << "condition: " << to_token(verdict.condition_relation)
                  << ", actions: " << to_token(verdict.action.relation) << "\n";
        if (verdict.witness)
            std::cout << "witness: " << verdict.witness->to_text(analysis->session()) << "\n";
        std::cout << explain(verdict, a, b, analysis->session()) << "\n";
    }
    return 0;
}

int run_scan(const CommonArgs& args, const ScanConfig& config, const std::string& format,
             const std::string& out_path) {
    auto analysis = load_analysis(args);
    const ScanResult result = scan(*analysis, config);
    write_output(out_path,
                 emit_report(*analysis, result,
                             format == "json" ? ReportFormat::Json : ReportFormat::Text));
    return 0;
}

int run_graph(const CommonArgs& args, const ScanConfig& config, const std::string& out_path) {
    auto analysis = load_analysis(args);
    const ScanResult result = scan(*analysis, config);
    const Document& doc = analysis->doc();
    nlohmann::json nodes = nlohmann::json::array();
    for (const std::size_t node : result.graph.nodes) nodes.push_back(doc.rules[node].id);
    nlohmann::json edges = nlohmann::json::array();
    for (const auto& edge : result.graph.edges) {
        edges.push_back(nlohmann::json{
            {"rule_a", doc.rules[edge.rule_a].id},
            {"rule_b", doc.rules[edge.rule_b].id},
            {"label", std::string(to_token(edge.verdict.label))},
            {"benchmark_label", std::string(to_token(benchmark_of(edge.verdict.label)))}});
    }
    nlohmann::json out{{"schema_version", 1},
                       {"nodes", std::move(nodes)},
                       {"edges", std::move(edges)},
                       {"isolated", isolated_rules(result.graph, doc)},
                       {"scan_mode", result.exhaustive ? "exhaustive" : "lsh"}};
    write_output(out_path, out.dump(2) + "\n");
    return 0;
}

int run_export_smtlib(const CommonArgs& args, const std::string& rule_a, const std::string& rule_b,
                      const std::string& query, const std::string& out_path) {
    auto analysis = load_analysis(args);
    const auto [ia, ib] = resolve_pair(*analysis, rule_a, rule_b);
    const Formula& ca = analysis->condition_formula(ia);
    const Formula& cb = analysis->condition_formula(ib);
    auto script = [&](const std::string& which) {
        Formula f;
        if (which == "overlap") f = Formula::conjunction({ca, cb});
        else if (which == "forward") f = Formula::conjunction({ca, negate(cb)});
        else f = Formula::conjunction({cb, negate(ca)});
        return "; query: " + which + " (" + rule_a + ", " + rule_b + ")\n" +
               emit_smtlib(analysis->session(), f, analysis->axioms());
    };
    std::string out;
    if (query == "all") {
        out = script("forward") + "(reset)\n" + script("backward") + "(reset)\n" +
              script("overlap");
    } else {
        out = script(query);
    }
    write_output(out_path, out);
    return 0;
}

int run_gen_gold(std::uint64_t seed, const std::string& rules_out, const std::string& gold_out) {
    const SyntheticDataset dataset = make_synthetic_dataset(seed);
    write_output(rules_out, serialize_document(dataset.doc));
    write_output(gold_out, serialize_gold_jsonl(dataset.gold));
    std::cerr << "wrote " << dataset.doc.rules.size() << " rules, " << dataset.gold.size()
              << " gold pairs\n";
    return 0;
}

int run_gen_noise(const std::string& rules_path, const std::string& gold_path, int k,
                  std::uint64_t seed, const std::string& axioms_path,
                  const std::string& out_path) {
    CommonArgs args{rules_path, axioms_path};
    auto analysis = load_analysis(args);
    const auto gold =
        load_gold_jsonl(read_file(gold_path), LabelGranularity::Benchmark, &analysis->doc());
    // Isolation must be judged against the full graph, so the scan is
    // exhaustive here regardless of the scan command's default.
    ScanConfig config;
    config.exhaustive = true;
    const ScanResult result = scan(*analysis, config);
    const std::vector<std::string> isolated = isolated_rules(result.graph, analysis->doc());
    const NoiseDataset dataset = inject_noise(gold, isolated, k, seed);
    write_output(out_path, serialize_noise(dataset));
    return 0;
}

std::vector<GoldPair> load_samples(const std::string& gold_path, const std::string& noise_path,
                                   LabelGranularity granularity, const Document* doc) {
    if (!noise_path.empty()) {
        const NoiseDataset dataset = load_noise(read_file(noise_path), granularity);
        std::vector<GoldPair> samples;
        for (const auto& sample : dataset.samples) samples.push_back(sample.base);
        return samples;
    }
    return load_gold_jsonl(read_file(gold_path), granularity, doc);
}

int run_bench_run(const std::string& rules_path, const std::string& gold_path,
                  const std::string& noise_path, const std::string& axioms_path, bool fine,
                  bool spec_prior, const std::string& format, const std::string& out_path) {
    CommonArgs args{rules_path, axioms_path};
    auto analysis = load_analysis(args);
    const LabelGranularity granularity =
        fine ? LabelGranularity::Fine : LabelGranularity::Benchmark;
    const auto samples = load_samples(gold_path, noise_path, granularity, &analysis->doc());
    ClassifyConfig config;
    config.spec_prior = spec_prior;
    const auto predictions = run_engine_as_system(*analysis, samples, granularity, config);
    write_output(out_path,
                 serialize_predictions(predictions, format == "json" ? PredictionFormat::Json
                                                                     : PredictionFormat::Csv));
    return 0;
}

int run_bench_score(const std::string& gold_path, const std::string& noise_path,
                    const std::string& pred_path, const std::string& pred_format, bool fine,
                    const std::string& format) {
    const LabelGranularity granularity =
        fine ? LabelGranularity::Fine : LabelGranularity::Benchmark;
    const auto gold = load_samples(gold_path, noise_path, granularity, nullptr);
    const auto predictions =
        import_predictions(read_file(pred_path),
                           pred_format == "json" ? PredictionFormat::Json : PredictionFormat::Csv,
                           granularity);
    const ScoreTable table = score(predictions, gold, granularity);
    if (format == "json") std::cout << table.to_json().dump(2) << "\n";
    else std::cout << table.to_text();
    return 0;
}

} // namespace

int main(int argc, char** argv) {
    CLI::App app{"logical relation checking for formalized clinical rule sets"};
    app.require_subcommand(1);

    // validate
    CommonArgs validate_args;
    CLI::App* validate = app.add_subcommand("validate", "load and validate a rules document");
    validate->add_option("doc", validate_args.doc_path, "rules document")->required();
    add_axioms_option(validate, validate_args.axioms_path);

    // relate
    CommonArgs relate_args;
    std::string relate_a, relate_b, relate_format = "text";
    bool relate_spec_prior = false;
    CLI::App* relate = app.add_subcommand("relate", "classify the relation of one rule pair");
    relate->add_option("doc", relate_args.doc_path)->required();
    relate->add_option("rule_a", relate_a)->required();
    relate->add_option("rule_b", relate_b)->required();
    add_axioms_option(relate, relate_args.axioms_path);
    relate->add_flag("--spec-prior", relate_spec_prior,
                     "suppress conflicts covered by declared exceptions");
    relate->add_option("--format", relate_format)->check(CLI::IsMember({"text", "json"}));

    // scan
    CommonArgs scan_args;
    ScanConfig scan_cfg;
    std::string scan_format = "json", scan_out;
    CLI::App* scan_cmd = app.add_subcommand("scan", "classify rule pairs across the corpus");
    scan_cmd->add_option("doc", scan_args.doc_path)->required();
    add_axioms_option(scan_cmd, scan_args.axioms_path);
    scan_config_options(scan_cmd, scan_cfg.exhaustive, scan_cfg.classify.spec_prior, scan_cfg.lsh);
    scan_cmd->add_option("--format", scan_format)->check(CLI::IsMember({"text", "json"}));
    scan_cmd->add_option("--out", scan_out, "output path (default stdout)");

    // graph
    CommonArgs graph_args;
    ScanConfig graph_cfg;
    std::string graph_out;
    CLI::App* graph_cmd =
        app.add_subcommand("graph", "emit the relationship graph and isolated rules");
    graph_cmd->add_option("doc", graph_args.doc_path)->required();
    add_axioms_option(graph_cmd, graph_args.axioms_path);
    scan_config_options(graph_cmd, graph_cfg.exhaustive, graph_cfg.classify.spec_prior,
                        graph_cfg.lsh);
    graph_cmd->add_option("--out", graph_out);

    // export smtlib
    CommonArgs export_args;
    std::string export_a, export_b, export_query = "all", export_out;
    CLI::App* export_cmd = app.add_subcommand("export", "export solver queries");
    CLI::App* smtlib = export_cmd->add_subcommand("smtlib", "SMT-LIB2 scripts for a rule pair");
    smtlib->add_option("doc", export_args.doc_path)->required();
    smtlib->add_option("rule_a", export_a)->required();
    smtlib->add_option("rule_b", export_b)->required();
    add_axioms_option(smtlib, export_args.axioms_path);
    smtlib->add_option("--query", export_query)
        ->check(CLI::IsMember({"overlap", "forward", "backward", "all"}));
    smtlib->add_option("--out", export_out);
    export_cmd->require_subcommand(1);

    // bench
    CLI::App* bench = app.add_subcommand("bench", "benchmark utilities");
    bench->require_subcommand(1);

    std::uint64_t gen_gold_seed = 7;
    std::string gen_gold_rules, gen_gold_gold;
    CLI::App* gen_gold = bench->add_subcommand("gen-gold", "generate the synthetic gold dataset");
    gen_gold->add_option("--seed", gen_gold_seed);
    gen_gold->add_option("--rules-out", gen_gold_rules, "rules document output")->required();
    gen_gold->add_option("--gold-out", gen_gold_gold, "gold JSONL output")->required();

    std::string gn_rules, gn_gold, gn_axioms, gn_out;
    int gn_k = 4;
    std::uint64_t gn_seed = 1;
    CLI::App* gen_noise = bench->add_subcommand("gen-noise", "inject isolated-rule distractors");
    gen_noise->add_option("--rules", gn_rules)->required();
    gen_noise->add_option("--gold", gn_gold)->required();
    gen_noise->add_option("--k", gn_k, "distractors per sample")
        ->required()
        ->check(CLI::Range(0, 8));
    gen_noise->add_option("--seed", gn_seed)->required();
    add_axioms_option(gen_noise, gn_axioms);
    gen_noise->add_option("--out", gn_out, "noise dataset output (default stdout)");

    std::string br_rules, br_gold, br_noise, br_axioms, br_format = "csv", br_out;
    bool br_fine = false, br_spec_prior = false;
    CLI::App* bench_run = bench->add_subcommand("run", "run the engine over a dataset");
    bench_run->add_option("--rules", br_rules)->required();
    CLI::Option* br_gold_opt = bench_run->add_option("--gold", br_gold);
    bench_run->add_option("--noise", br_noise)->excludes(br_gold_opt);
    add_axioms_option(bench_run, br_axioms);
    bench_run->add_flag("--fine", br_fine, "emit leaf labels instead of benchmark labels");
    bench_run->add_flag("--spec-prior", br_spec_prior);
    bench_run->add_option("--format", br_format)->check(CLI::IsMember({"csv", "json"}));
    bench_run->add_option("--out", br_out);

    std::string bs_gold, bs_noise, bs_pred, bs_pred_format = "csv", bs_format = "text";
    bool bs_fine = false;
    CLI::App* bench_score = bench->add_subcommand("score", "score predictions against gold");
    CLI::Option* bs_gold_opt = bench_score->add_option("--gold", bs_gold);
    bench_score->add_option("--noise", bs_noise)->excludes(bs_gold_opt);
    bench_score->add_option("--pred", bs_pred)->required();
    bench_score->add_option("--pred-format", bs_pred_format)
        ->check(CLI::IsMember({"csv", "json"}));
    bench_score->add_flag("--fine", bs_fine);
    bench_score->add_option("--format", bs_format)->check(CLI::IsMember({"text", "json"}));

    try {
        app.parse(argc, argv);
    } catch (const CLI::CallForHelp& e) {
        return app.exit(e);
    } catch (const CLI::ParseError& e) {
        app.exit(e);
        return 2;
    }

    try {
        if (*validate) return run_validate(validate_args);
        if (*relate)
            return run_relate(relate_args, relate_a, relate_b, relate_spec_prior, relate_format);
        if (*scan_cmd) return run_scan(scan_args, scan_cfg, scan_format, scan_out);
        if (*graph_cmd) return run_graph(graph_args, graph_cfg, graph_out);
        if (*smtlib)
            return run_export_smtlib(export_args, export_a, export_b, export_query, export_out);
        if (*gen_gold) return run_gen_gold(gen_gold_seed, gen_gold_rules, gen_gold_gold);
        if (*gen_noise) return run_gen_noise(gn_rules, gn_gold, gn_k, gn_seed, gn_axioms, gn_out);
        if (*bench_run) {
            if (br_gold.empty() && br_noise.empty())
                throw CLI::ValidationError("bench run", "one of --gold or --noise is required");
            return run_bench_run(br_rules, br_gold, br_noise, br_axioms, br_fine, br_spec_prior,
                                 br_format, br_out);
        }
        if (*bench_score) {
            if (bs_gold.empty() && bs_noise.empty())
                throw CLI::ValidationError("bench score", "one of --gold or --noise is required");
            return run_bench_score(bs_gold, bs_noise, bs_pred, bs_pred_format, bs_fine, bs_format);
        }
    } catch (const CLI::Error& e) {
        std::cerr << e.what() << "\n";
        return 2;
    } catch (const ValidationError& e) {
        std::cerr << "error: " << e.what() << "\n";
        return 1;
    } catch (const std::exception& e) {
        std::cerr << "error: " << e.what() << "\n";
        return 1;
    }
    return 2;
}
