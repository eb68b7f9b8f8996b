#pragma once

#include <cstdint>
#include <map>
#include <span>
#include <string>
#include <vector>

#include <json.hpp>

#include "concord/relations.hpp"

namespace concord {

/// Scoring granularity: the six merged benchmark labels (standard), or the
/// full leaf taxonomy.
enum class LabelGranularity { Benchmark, Fine };

std::vector<std::string> label_universe(LabelGranularity granularity);
/// Throws ValidationError naming the token when it is outside the universe.
void validate_label_token(const std::string& token, LabelGranularity granularity);
CoarseLabel coarse_of_token(const std::string& token, LabelGranularity granularity);

struct GoldPair {
    std::string id;
    std::string rule_a;
    std::string rule_b;
    std::string label; // validated against the active granularity

    bool operator==(const GoldPair&) const = default;
};

/// JSON-lines gold file: one pair per line. Rule ids are resolved against
/// `doc` when provided.
std::vector<GoldPair> load_gold_jsonl(std::string_view bytes,
                                      LabelGranularity granularity = LabelGranularity::Benchmark,
                                      const Document* doc = nullptr);
std::string serialize_gold_jsonl(std::span<const GoldPair> gold);

struct NoisySample {
    GoldPair base;
    std::vector<std::string> distractors; // isolated rule ids, no repeats
    std::vector<std::string> order;       // permutation of base pair + distractors
    std::uint64_t sample_seed = 0;
};

struct NoiseDataset {
    std::uint64_t master_seed = 0;
    int k = 0;
    std::vector<NoisySample> samples;
};

/// Builds one noisy sample per gold pair: k distractors drawn without
/// replacement from the isolated pool (base rules excluded), then the k+2
/// rules shuffled. Sampling is driven by a per-sample seed derived from
/// `seed` and the sample index, so any sample can be reproduced alone.
/// Throws ValidationError when k is outside [0, 8] or the pool is too small.
NoiseDataset inject_noise(std::span<const GoldPair> gold, std::span<const std::string> isolated,
                          int k, std::uint64_t seed);

std::string serialize_noise(const NoiseDataset& dataset);
NoiseDataset load_noise(std::string_view bytes,
                        LabelGranularity granularity = LabelGranularity::Benchmark);

struct PrfRow {
    std::size_t tp = 0;
    std::size_t fp = 0;
    std::size_t fn = 0;

    double precision() const;
    double recall() const;
    double f1() const; // 2PR/(P+R), 0 when P+R == 0
};

struct ScoreTable {
    std::vector<std::string> labels;                  // universe, fixed order
    std::vector<std::vector<std::size_t>> confusion;  // [gold][pred]
    std::map<std::string, PrfRow> per_class;          // one-vs-rest
    std::map<std::string, PrfRow> per_coarse;         // redundancy / conflict / none
    std::size_t total = 0;

    nlohmann::json to_json() const;
    std::string to_text() const;
};

/// One-vs-rest precision/recall/F1 per class plus coarse-category rows.
/// A prediction in the right coarse category counts as a coarse true
/// positive even when the fine label differs. Missing predictions score as
/// "none"; unknown prediction tokens raise ValidationError.
ScoreTable score(const std::map<std::string, std::string>& predictions,
                 std::span<const GoldPair> gold,
                 LabelGranularity granularity = LabelGranularity::Benchmark);

/// Runs the engine over the designated base pairs: each sample is classified
/// from its two rule ids alone, so distractors cannot change the verdict.
std::vector<std::pair<std::string, std::string>> run_engine_as_system(
    const Analysis& analysis, std::span<const GoldPair> samples,
    LabelGranularity granularity = LabelGranularity::Benchmark,
    const ClassifyConfig& config = {});

enum class PredictionFormat { Csv, Json };

/// Parses prediction files: CSV "sample_id,label" (optional header) or JSON
/// [{"sample_id": ..., "label": ...}]. Malformed rows are reported with
/// their line number; unknown labels name the offending token.
std::map<std::string, std::string> import_predictions(
    std::string_view bytes, PredictionFormat format,
    LabelGranularity granularity = LabelGranularity::Benchmark);

std::string serialize_predictions(std::span<const std::pair<std::string, std::string>> predictions,
                                  PredictionFormat format);

} // namespace concord
