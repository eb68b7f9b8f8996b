#include "concord/bench.hpp"

#include <algorithm>
#include <cmath>
#include <sstream>

#include "concord/errors.hpp"
#include "concord/minhash.hpp"

namespace concord {

using nlohmann::json;

// --- label universes -------------------------------------------------------------

std::vector<std::string> label_universe(LabelGranularity granularity) {
    std::vector<std::string> labels;
    if (granularity == LabelGranularity::Benchmark) {
        for (int i = 0; i < kBenchmarkLabelCount; ++i)
            labels.emplace_back(to_token(static_cast<BenchmarkLabel>(i)));
    } else {
        for (int i = 0; i < kRelationLabelCount; ++i)
            labels.emplace_back(to_token(static_cast<RelationLabel>(i)));
    }
    return labels;
}

void validate_label_token(const std::string& token, LabelGranularity granularity) {
    if (granularity == LabelGranularity::Benchmark) benchmark_label_from_token(token);
    else relation_label_from_token(token);
}

CoarseLabel coarse_of_token(const std::string& token, LabelGranularity granularity) {
    if (granularity == LabelGranularity::Benchmark)
        return coarse_of(benchmark_label_from_token(token));
    return coarse_of(relation_label_from_token(token));
}

// --- gold io ----------------------------------------------------------------------

std::vector<GoldPair> load_gold_jsonl(std::string_view bytes, LabelGranularity granularity,
                                      const Document* doc) {
    std::vector<GoldPair> gold;
    std::size_t line_no = 0;
    std::istringstream stream{std::string(bytes)};
    std::string line;
    while (std::getline(stream, line)) {
        ++line_no;
        if (line.find_first_not_of(" \t\r") == std::string::npos) continue;
        const std::string path = "line " + std::to_string(line_no);
        json v;
        try {
            v = json::parse(line);
        } catch (const json::parse_error& e) {
            throw ValidationError(e.what(), path);
        }
        if (!v.is_object() || !v.contains("id") || !v.contains("rule_a") ||
            !v.contains("rule_b") || !v.contains("label"))
            throw ValidationError("gold pair needs 'id', 'rule_a', 'rule_b', 'label'", path);
        GoldPair pair;
        pair.id = v.at("id").get<std::string>();
        pair.rule_a = v.at("rule_a").get<std::string>();
        pair.rule_b = v.at("rule_b").get<std::string>();
        pair.label = v.at("label").get<std::string>();
        try {
            validate_label_token(pair.label, granularity);
        } catch (const ValidationError& e) {
            throw ValidationError(e.what(), path);
        }
        if (doc != nullptr) {
            if (doc->find_rule(pair.rule_a) == nullptr)
                throw ValidationError("unknown rule id '" + pair.rule_a + "'", path);
            if (doc->find_rule(pair.rule_b) == nullptr)
                throw ValidationError("unknown rule id '" + pair.rule_b + "'", path);
        }
        gold.push_back(std::move(pair));
    }
    return gold;
}

std::string serialize_gold_jsonl(std::span<const GoldPair> gold) {
    std::string out;
    for (const auto& pair : gold) {
        out += json{{"id", pair.id},
                    {"rule_a", pair.rule_a},
                    {"rule_b", pair.rule_b},
                    {"label", pair.label}}
                   .dump();
        out += '\n';
    }
    return out;
}

// --- noise injection ---------------------------------------------------------------

namespace {

// Minimal deterministic RNG (splitmix64 stream); std:: distributions are
// implementation-defined and would break byte-for-byte reproducibility.
class SplitMix {
public:
    explicit SplitMix(std::uint64_t seed) : state_(seed) {}

    std::uint64_t next() {
        state_ += 0x9e3779b97f4a7c15ULL;
        return mix64(state_);
    }

    std::uint64_t below(std::uint64_t n) {
        const std::uint64_t bound = (UINT64_MAX % n + 1) % n; // reject below this many top values
        std::uint64_t r = next();
        if (bound != 0) {
            while (r >= UINT64_MAX - bound + 1) r = next();
        }
        return r % n;
    }

    template <typename T>
    void shuffle(std::vector<T>& values) {
        for (std::size_t i = values.size(); i > 1; --i)
            std::swap(values[i - 1], values[below(i)]);
    }

private:
    std::uint64_t state_;
};

} // namespace

NoiseDataset inject_noise(std::span<const GoldPair> gold, std::span<const std::string> isolated,
                          int k, std::uint64_t seed) {
    if (k < 0 || k > 8)
        throw ValidationError("noise level k must lie in [0, 8], got " + std::to_string(k));

    NoiseDataset dataset;
    dataset.master_seed = seed;
    dataset.k = k;
    for (std::size_t index = 0; index < gold.size(); ++index) {
        const GoldPair& base = gold[index];
        NoisySample sample;
        sample.base = base;
        sample.sample_seed = mix64(seed ^ mix64(static_cast<std::uint64_t>(index) + 1));
        SplitMix rng(sample.sample_seed);

        std::vector<std::string> pool;
        for (const auto& id : isolated) {
            if (id != base.rule_a && id != base.rule_b) pool.push_back(id);
        }
        if (pool.size() < static_cast<std::size_t>(k))
            throw ValidationError("insufficient isolated rules: need " + std::to_string(k) +
                                  ", have " + std::to_string(pool.size()) + " for sample '" +
                                  base.id + "'");
        for (int i = 0; i < k; ++i) {
            const std::size_t j = static_cast<std::size_t>(i) +
                                  rng.below(pool.size() - static_cast<std::size_t>(i));
            std::swap(pool[static_cast<std::size_t>(i)], pool[j]);
            sample.distractors.push_back(pool[static_cast<std::size_t>(i)]);
        }

        sample.order = {base.rule_a, base.rule_b};
        sample.order.insert(sample.order.end(), sample.distractors.begin(),
                            sample.distractors.end());
        rng.shuffle(sample.order);
        dataset.samples.push_back(std::move(sample));
    }
    return dataset;
}

std::string serialize_noise(const NoiseDataset& dataset) {
    json samples = json::array();
    for (const auto& sample : dataset.samples) {
        samples.push_back(json{{"id", sample.base.id},
                               {"rule_a", sample.base.rule_a},
                               {"rule_b", sample.base.rule_b},
                               {"label", sample.base.label},
                               {"distractors", sample.distractors},
                               {"order", sample.order},
                               {"sample_seed", sample.sample_seed}});
    }
    return json{{"schema_version", 1},
                {"master_seed", dataset.master_seed},
                {"k", dataset.k},
                {"samples", std::move(samples)}}
               .dump(2) +
           "\n";
}

NoiseDataset load_noise(std::string_view bytes, LabelGranularity granularity) {
    json root;
    try {
        root = json::parse(bytes);
    } catch (const json::parse_error& e) {
        throw ValidationError(e.what(), "noise dataset");
    }
    NoiseDataset dataset;
    dataset.master_seed = root.at("master_seed").get<std::uint64_t>();
    dataset.k = root.at("k").get<int>();
    for (const auto& v : root.at("samples")) {
        NoisySample sample;
        sample.base.id = v.at("id").get<std::string>();
        sample.base.rule_a = v.at("rule_a").get<std::string>();
        sample.base.rule_b = v.at("rule_b").get<std::string>();
        sample.base.label = v.at("label").get<std::string>();
        validate_label_token(sample.base.label, granularity);
        sample.distractors = v.at("distractors").get<std::vector<std::string>>();
        sample.order = v.at("order").get<std::vector<std::string>>();
        sample.sample_seed = v.at("sample_seed").get<std::uint64_t>();
        dataset.samples.push_back(std::move(sample));
    }
    return dataset;
}

// --- scoring -------------------------------------------------------------------------

double PrfRow::precision() const {
    return tp + fp == 0 ? 0.0 : static_cast<double>(tp) / static_cast<double>(tp + fp);
}

double PrfRow::recall() const {
    return tp + fn == 0 ? 0.0 : static_cast<double>(tp) / static_cast<double>(tp + fn);
}

double PrfRow::f1() const {
    const double p = precision();
    const double r = recall();
    return p + r == 0.0 ? 0.0 : 2.0 * p * r / (p + r);
}

namespace {

json prf_to_json(const PrfRow& row) {
    return json{{"tp", row.tp},          {"fp", row.fp},       {"fn", row.fn},
                {"precision", row.precision()}, {"recall", row.recall()}, {"f1", row.f1()}};
}

std::string format3(double v) {
    char buffer[16];
    std::snprintf(buffer, sizeof(buffer), "%.3f", v);
    return buffer;
}

} // namespace

json ScoreTable::to_json() const {
    json confusion_json = json::object();
    for (std::size_t g = 0; g < labels.size(); ++g) {
        json row = json::object();
        for (std::size_t p = 0; p < labels.size(); ++p) {
            if (confusion[g][p] != 0) row[labels[p]] = confusion[g][p];
        }
        confusion_json[labels[g]] = std::move(row);
    }
    json per_class_json = json::object();
    for (const auto& [label, row] : per_class) per_class_json[label] = prf_to_json(row);
    json per_coarse_json = json::object();
    for (const auto& [label, row] : per_coarse) per_coarse_json[label] = prf_to_json(row);
    return json{{"total", total},
                {"confusion", std::move(confusion_json)},
                {"per_class", std::move(per_class_json)},
                {"per_coarse", std::move(per_coarse_json)}};
}

std::string ScoreTable::to_text() const {
    std::string out = "samples: " + std::to_string(total) + "\n";
    out += "class                                     prec   rec    f1\n";
    auto row_text = [&out](const std::string& name, const PrfRow& row) {
        std::string line = name;
        line.resize(40, ' ');
        out += line + "  " + format3(row.precision()) + "  " + format3(row.recall()) + "  " +
               format3(row.f1()) + "\n";
    };
    for (const auto& label : labels) row_text(label, per_class.at(label));
    out += "--\n";
    for (const auto& [label, row] : per_coarse) row_text(label, row);
    return out;
}

ScoreTable score(const std::map<std::string, std::string>& predictions,
                 std::span<const GoldPair> gold, LabelGranularity granularity) {
    ScoreTable table;
    table.labels = label_universe(granularity);
    table.confusion.assign(table.labels.size(), std::vector<std::size_t>(table.labels.size(), 0));
    auto label_index = [&table](const std::string& token) {
        return static_cast<std::size_t>(
            std::find(table.labels.begin(), table.labels.end(), token) - table.labels.begin());
    };

    for (const auto& pair : gold) {
        validate_label_token(pair.label, granularity);
        std::string predicted = "none";
        auto it = predictions.find(pair.id);
        if (it != predictions.end()) {
            validate_label_token(it->second, granularity);
            predicted = it->second;
        }
        ++table.confusion[label_index(pair.label)][label_index(predicted)];
        ++table.total;
    }

    for (std::size_t c = 0; c < table.labels.size(); ++c) {
        PrfRow row;
        for (std::size_t g = 0; g < table.labels.size(); ++g) {
            for (std::size_t p = 0; p < table.labels.size(); ++p) {
                const std::size_t count = table.confusion[g][p];
                if (g == c && p == c) row.tp += count;
                else if (p == c) row.fp += count;
                else if (g == c) row.fn += count;
            }
        }
        table.per_class[table.labels[c]] = row;
    }

    for (const CoarseLabel coarse : {CoarseLabel::Redundancy, CoarseLabel::Conflict,
                                     CoarseLabel::None}) {
        PrfRow row;
        for (std::size_t g = 0; g < table.labels.size(); ++g) {
            const bool gold_in = coarse_of_token(table.labels[g], granularity) == coarse;
            for (std::size_t p = 0; p < table.labels.size(); ++p) {
                const std::size_t count = table.confusion[g][p];
                const bool pred_in = coarse_of_token(table.labels[p], granularity) == coarse;
                if (gold_in && pred_in) row.tp += count;
                else if (pred_in) row.fp += count;
                else if (gold_in) row.fn += count;
            }
        }
        table.per_coarse[std::string(to_token(coarse))] = row;
    }
    return table;
}

// --- engine runs & prediction io ---------------------------------------------------------

std::vector<std::pair<std::string, std::string>> run_engine_as_system(
    const Analysis& analysis, std::span<const GoldPair> samples, LabelGranularity granularity,
    const ClassifyConfig& config) {
    std::vector<std::pair<std::string, std::string>> predictions;
    predictions.reserve(samples.size());
    for (const auto& sample : samples) {
        const std::size_t a = analysis.doc().rule_index(sample.rule_a);
        const std::size_t b = analysis.doc().rule_index(sample.rule_b);
        if (a == static_cast<std::size_t>(-1) || b == static_cast<std::size_t>(-1))
            throw ValidationError("sample '" + sample.id + "' references unknown rules");
        const RelationVerdict verdict = classify_pair(analysis, a, b, config);
        const std::string label =
            granularity == LabelGranularity::Benchmark
                ? std::string(to_token(benchmark_of(verdict.label)))
                : std::string(to_token(verdict.label));
        predictions.emplace_back(sample.id, label);
    }
    return predictions;
}

std::map<std::string, std::string> import_predictions(std::string_view bytes,
                                                      PredictionFormat format,
                                                      LabelGranularity granularity) {
    std::map<std::string, std::string> predictions;
    if (format == PredictionFormat::Json) {
        json root;
        try {
            root = json::parse(bytes);
        } catch (const json::parse_error& e) {
            throw ValidationError(e.what(), "predictions");
        }
        const json& list = root.is_object() && root.contains("predictions")
                               ? root.at("predictions")
                               : root;
        if (!list.is_array())
            throw ValidationError("prediction JSON must be an array of {sample_id, label}",
                                  "predictions");
        std::size_t i = 0;
        for (const auto& v : list) {
            const std::string path = "predictions[" + std::to_string(i++) + "]";
            if (!v.is_object() || !v.contains("sample_id") || !v.contains("label"))
                throw ValidationError("entry needs 'sample_id' and 'label'", path);
            const std::string id = v.at("sample_id").get<std::string>();
            const std::string label = v.at("label").get<std::string>();
            try {
                validate_label_token(label, granularity);
            } catch (const ValidationError& e) {
                throw ValidationError(e.what(), path);
            }
            predictions[id] = label;
        }
        return predictions;
    }

    std::istringstream stream{std::string(bytes)};
    std::string line;
    std::size_t line_no = 0;
    while (std::getline(stream, line)) {
        ++line_no;
        if (!line.empty() && line.back() == '\r') line.pop_back();
        if (line.empty()) continue;
        if (line_no == 1 && line == "sample_id,label") continue;
        const std::string path = "line " + std::to_string(line_no);
        const auto comma = line.find(',');
        if (comma == std::string::npos || comma == 0 || comma + 1 >= line.size())
            throw ValidationError("malformed row, expected 'sample_id,label'", path);
        const std::string id = line.substr(0, comma);
        const std::string label = line.substr(comma + 1);
        try {
            validate_label_token(label, granularity);
        } catch (const ValidationError& e) {
            throw ValidationError(e.what(), path);
        }
        predictions[id] = label;
    }
    return predictions;
}

std::string serialize_predictions(
    std::span<const std::pair<std::string, std::string>> predictions, PredictionFormat format) {
    if (format == PredictionFormat::Json) {
        json list = json::array();
        for (const auto& [id, label] : predictions)
            list.push_back(json{{"sample_id", id}, {"label", label}});
        return list.dump(2) + "\n";
    }
    std::string out = "sample_id,label\n";
    for (const auto& [id, label] : predictions) out += id + "," + label + "\n";
    return out;
}

} // namespace concord
