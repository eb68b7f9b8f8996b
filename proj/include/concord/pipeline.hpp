#pragma once

#include <string>
#include <vector>

#include <json.hpp>

#include "concord/minhash.hpp"
#include "concord/relations.hpp"

namespace concord {

struct ScanConfig {
    bool exhaustive = false;
    LshConfig lsh;
    ClassifyConfig classify;
};

struct GraphEdge {
    std::size_t rule_a = 0; // indices into Document::rules, rule_a < rule_b
    std::size_t rule_b = 0;
    RelationVerdict verdict;
};

/// Undirected relationship graph over the scanned (pharmacological) rules.
/// Edges carry every verdict with a label other than none; no self-loops.
struct RelationshipGraph {
    std::vector<std::size_t> nodes; // rule indices, document order
    std::vector<GraphEdge> edges;
};

struct ScanResult {
    RelationshipGraph graph;
    std::vector<GraphEdge> verdicts; // every classified pair, incl. label none
    bool exhaustive = false;
    std::size_t candidate_pair_count = 0;
    std::size_t scanned_pair_count = 0;
    std::vector<std::pair<std::size_t, std::size_t>> candidate_pairs; // node-order indices
};

/// Classifies rule pairs across the corpus: LSH candidates by default, every
/// pair under `exhaustive`. Only pharmacological rules enter the scan.
/// Deterministic: pairs are classified and reported in document order.
ScanResult scan(const Analysis& analysis, const ScanConfig& config = {});

/// Rules with no incident edge (degree zero), in document order.
std::vector<std::string> isolated_rules(const RelationshipGraph& graph, const Document& doc);

enum class ReportFormat { Json, Text };

/// Serializes a scan into the report format: edges ordered by label
/// priority then rule ids, each with its evidence and sources, plus a stats
/// block with per-label counts. Byte-deterministic for a fixed corpus and
/// seed. The candidate-subset counts are always reported; exhaustive counts
/// are included when the scan was exhaustive, so readers can tell which
/// universe a count refers to.
std::string emit_report(const Analysis& analysis, const ScanResult& result, ReportFormat format);

nlohmann::json report_json(const Analysis& analysis, const ScanResult& result);

nlohmann::json model_to_json(const Model& model, const CompileSession& session);

} // namespace concord
