#include "concord/pipeline.hpp"

#include <algorithm>
#include <array>
#include <map>

#include "concord/errors.hpp"

namespace concord {

using nlohmann::json;

ScanResult scan(const Analysis& analysis, const ScanConfig& config) {
    const Document& doc = analysis.doc();
    ScanResult result;
    result.exhaustive = config.exhaustive;

    std::vector<std::size_t> scanned;
    std::vector<const Rule*> scanned_rules;
    for (std::size_t i = 0; i < doc.rules.size(); ++i) {
        if (doc.rules[i].semantic_category == SemanticCategory::Pharmacological) {
            scanned.push_back(i);
            scanned_rules.push_back(&doc.rules[i]);
        }
    }
    result.graph.nodes = scanned;

    result.candidate_pairs = candidate_pairs(scanned_rules, doc, config.lsh);
    result.candidate_pair_count = result.candidate_pairs.size();

    std::vector<std::pair<std::size_t, std::size_t>> pairs;
    if (config.exhaustive) {
        for (std::size_t i = 0; i < scanned.size(); ++i)
            for (std::size_t j = i + 1; j < scanned.size(); ++j) pairs.emplace_back(i, j);
    } else {
        pairs = result.candidate_pairs;
    }
    result.scanned_pair_count = pairs.size();

    for (const auto& [i, j] : pairs) {
        GraphEdge edge;
        edge.rule_a = scanned[i];
        edge.rule_b = scanned[j];
        edge.verdict = classify_pair(analysis, edge.rule_a, edge.rule_b, config.classify);
        if (edge.verdict.label != RelationLabel::None) result.graph.edges.push_back(edge);
        result.verdicts.push_back(std::move(edge));
    }
    return result;
}

std::vector<std::string> isolated_rules(const RelationshipGraph& graph, const Document& doc) {
    std::map<std::size_t, std::size_t> degree;
    for (const std::size_t node : graph.nodes) degree[node] = 0;
    for (const auto& edge : graph.edges) {
        ++degree[edge.rule_a];
        ++degree[edge.rule_b];
    }
    std::vector<std::string> isolated;
    for (const std::size_t node : graph.nodes) {
        if (degree[node] == 0) isolated.push_back(doc.rules[node].id);
    }
    return isolated;
}

namespace {

// Report ordering: conflicts from the most context-dependent to the most
// direct, then redundancies.
int label_rank(RelationLabel label) {
    static constexpr std::array<RelationLabel, 8> kOrder{
        RelationLabel::LocalConflict,        RelationLabel::ImplicationConflict,
        RelationLabel::ImplicationDisagreement, RelationLabel::IntrinsicConflict,
        RelationLabel::IntrinsicDisagreement,   RelationLabel::ContainedRedundancy,
        RelationLabel::CompleteRedundancy,      RelationLabel::None};
    for (std::size_t i = 0; i < kOrder.size(); ++i)
        if (kOrder[i] == label) return static_cast<int>(i);
    return static_cast<int>(kOrder.size());
}

std::vector<const GraphEdge*> ordered_edges(const ScanResult& result) {
    std::vector<const GraphEdge*> edges;
    for (const auto& edge : result.graph.edges) edges.push_back(&edge);
    std::stable_sort(edges.begin(), edges.end(), [](const GraphEdge* a, const GraphEdge* b) {
        const int ra = label_rank(a->verdict.label);
        const int rb = label_rank(b->verdict.label);
        if (ra != rb) return ra < rb;
        if (a->rule_a != b->rule_a) return a->rule_a < b->rule_a;
        return a->rule_b < b->rule_b;
    });
    return edges;
}

json source_to_json(const std::string& rule_id, const RuleSource& source) {
    return json{{"rule", rule_id},
                {"guideline_id", source.guideline_id},
                {"section", source.section},
                {"publication_year", source.publication_year}};
}

json label_counts(const std::vector<GraphEdge>& verdicts) {
    std::map<std::string, std::size_t> counts;
    for (int i = 0; i < kRelationLabelCount; ++i)
        counts[std::string(to_token(static_cast<RelationLabel>(i)))] = 0;
    for (const auto& edge : verdicts) ++counts[std::string(to_token(edge.verdict.label))];
    json out = json::object();
    for (const auto& [label, count] : counts) out[label] = count;
    return out;
}

} // namespace

json model_to_json(const Model& model, const CompileSession& session) {
    json out = json::object();
    for (const auto& [var, value] : model.values) {
        const std::string name = session.var(var).display;
        if (const bool* b = std::get_if<bool>(&value)) out[name] = *b;
        else if (const Rat* r = std::get_if<Rat>(&value)) out[name] = rat_to_string(*r);
        else out[name] = std::get<std::string>(value);
    }
    return out;
}

json report_json(const Analysis& analysis, const ScanResult& result) {
    const Document& doc = analysis.doc();
    json edges = json::array();
    for (const GraphEdge* edge : ordered_edges(result)) {
        const Rule& a = doc.rules[edge->rule_a];
        const Rule& b = doc.rules[edge->rule_b];
        const RelationVerdict& v = edge->verdict;
        json evidence{{"condition_relation", std::string(to_token(v.condition_relation))},
                      {"action_relation",
                       json{{"value", std::string(to_token(v.action.relation))},
                            {"witnesses", v.action.witness_subjects}}},
                      {"witness_model", v.witness ? model_to_json(*v.witness, analysis.session())
                                                  : json(nullptr)}};
        if (v.spec_prior_applied) evidence["spec_prior_applied"] = true;
        edges.push_back(json{{"rule_a", a.id},
                             {"rule_b", b.id},
                             {"label", std::string(to_token(v.label))},
                             {"benchmark_label", std::string(to_token(benchmark_of(v.label)))},
                             {"coarse", std::string(to_token(coarse_of(v.label)))},
                             {"evidence", std::move(evidence)},
                             {"sources", json::array({source_to_json(a.id, a.source),
                                                      source_to_json(b.id, b.source)})}});
    }

    json stats{{"scan_mode", result.exhaustive ? "exhaustive" : "lsh"},
               {"rules_scanned", result.graph.nodes.size()},
               {"pairs", json{{"candidate", result.candidate_pair_count},
                              {"scanned", result.scanned_pair_count}}}};
    json counts = json::object();
    // Candidate-subset counts are always available; a full-universe count is
    // only meaningful after an exhaustive scan.
    if (result.exhaustive) {
        counts["exhaustive"] = label_counts(result.verdicts);
        std::vector<GraphEdge> candidate_verdicts;
        std::map<std::pair<std::size_t, std::size_t>, const GraphEdge*> by_pair;
        std::map<std::size_t, std::size_t> node_pos;
        for (std::size_t i = 0; i < result.graph.nodes.size(); ++i)
            node_pos[result.graph.nodes[i]] = i;
        for (const auto& edge : result.verdicts)
            by_pair[{node_pos.at(edge.rule_a), node_pos.at(edge.rule_b)}] = &edge;
        for (const auto& pair : result.candidate_pairs) {
            auto it = by_pair.find(pair);
            if (it != by_pair.end()) candidate_verdicts.push_back(*it->second);
        }
        counts["candidate"] = label_counts(candidate_verdicts);
    } else {
        counts["candidate"] = label_counts(result.verdicts);
    }
    stats["counts"] = std::move(counts);

    return json{{"schema_version", 1}, {"edges", std::move(edges)}, {"stats", std::move(stats)}};
}

std::string emit_report(const Analysis& analysis, const ScanResult& result, ReportFormat format) {
    if (format == ReportFormat::Json) return report_json(analysis, result).dump(2) + "\n";

    const Document& doc = analysis.doc();
    std::string out;
    out += "relation scan: " + std::to_string(result.graph.nodes.size()) + " rules, " +
           std::to_string(result.scanned_pair_count) + " pairs (" +
           (result.exhaustive ? "exhaustive" : "lsh candidates") + "), " +
           std::to_string(result.graph.edges.size()) + " related\n";
    CoarseLabel current = CoarseLabel::None;
    bool first = true;
    for (const GraphEdge* edge : ordered_edges(result)) {
        const Rule& a = doc.rules[edge->rule_a];
        const Rule& b = doc.rules[edge->rule_b];
        const CoarseLabel coarse = coarse_of(edge->verdict.label);
        if (first || coarse != current) {
            out += "\n== " + std::string(to_token(coarse)) + " ==\n";
            current = coarse;
            first = false;
        }
        out += "\n[" + std::string(to_token(edge->verdict.label)) + "] " + a.id + " / " + b.id +
               "\n";
        out += "  A (" + a.source.guideline_id + " " + a.source.section + ", " +
               std::to_string(a.source.publication_year) + "): " + a.provenance_text + "\n";
        out += "  B (" + b.source.guideline_id + " " + b.source.section + ", " +
               std::to_string(b.source.publication_year) + "): " + b.provenance_text + "\n";
        out += "  " + explain(edge->verdict, a, b, analysis.session()) + "\n";
    }
    if (result.graph.edges.empty()) out += "\nno related pairs\n";
    return out;
}

} // namespace concord
