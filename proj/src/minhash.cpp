#include "concord/minhash.hpp"

#include <algorithm>
#include <cctype>
#include <limits>
#include <set>
#include <unordered_map>

#include "concord/errors.hpp"

namespace concord {

std::uint64_t stable_hash64(std::string_view text) {
    std::uint64_t h = 0xcbf29ce484222325ULL;
    for (const char c : text) {
        h ^= static_cast<std::uint8_t>(c);
        h *= 0x100000001b3ULL;
    }
    return h;
}

std::uint64_t mix64(std::uint64_t x) {
    x += 0x9e3779b97f4a7c15ULL;
    x = (x ^ (x >> 30)) * 0xbf58476d1ce4e5b9ULL;
    x = (x ^ (x >> 27)) * 0x94d049bb133111ebULL;
    return x ^ (x >> 31);
}

namespace {

std::vector<std::string> tokenize(std::string_view text) {
    std::vector<std::string> tokens;
    std::string current;
    for (const char c : text) {
        if (std::isalnum(static_cast<unsigned char>(c))) {
            current += static_cast<char>(std::tolower(static_cast<unsigned char>(c)));
        } else if (!current.empty()) {
            tokens.push_back(std::move(current));
            current.clear();
        }
    }
    if (!current.empty()) tokens.push_back(std::move(current));
    return tokens;
}

void validate(const LshConfig& config) {
    if (config.num_hashes <= 0 || config.bands <= 0 || config.rows <= 0 ||
        config.bands * config.rows != config.num_hashes)
        throw ValidationError("LSH config requires num_hashes == bands * rows, all positive");
    if (config.shingle_tokens <= 0)
        throw ValidationError("LSH shingle size must be positive");
}

} // namespace

std::vector<std::string> rule_shingles(const Rule& rule, const Document& doc, int shingle_tokens) {
    std::set<std::string> shingles;
    const std::vector<std::string> tokens = tokenize(rule.provenance_text);
    const std::size_t n = static_cast<std::size_t>(shingle_tokens);
    if (tokens.size() < n) {
        if (!tokens.empty()) {
            std::string joined;
            for (const auto& t : tokens) joined += joined.empty() ? t : " " + t;
            shingles.insert(std::move(joined));
        }
    } else {
        for (std::size_t i = 0; i + n <= tokens.size(); ++i) {
            std::string joined = tokens[i];
            for (std::size_t j = 1; j < n; ++j) joined += " " + tokens[i + j];
            shingles.insert(std::move(joined));
        }
    }
    for (const auto& pred_id : rule.condition.referenced_predicates()) {
        const PredicateDef* p = doc.find_predicate(pred_id);
        if (p == nullptr) continue;
        shingles.insert("pred:" + std::string(to_token(p->op)) + ":" + p->entity.key() +
                        (p->qualifier ? ":" + p->qualifier->key() : ""));
    }
    for (const auto& item : rule.action.items()) shingles.insert("subject:" + item.subject.key());
    return {shingles.begin(), shingles.end()};
}

MinHashSignature minhash_signature(const Rule& rule, const Document& doc,
                                   const LshConfig& config) {
    validate(config);
    MinHashSignature sig;
    sig.rule_id = rule.id;
    sig.k = config.num_hashes;
    sig.values.assign(static_cast<std::size_t>(config.num_hashes),
                      std::numeric_limits<std::uint64_t>::max());
    for (const auto& shingle : rule_shingles(rule, doc, config.shingle_tokens)) {
        const std::uint64_t base = stable_hash64(shingle);
        for (int i = 0; i < config.num_hashes; ++i) {
            const std::uint64_t h = mix64(base ^ mix64(config.seed + static_cast<std::uint64_t>(i)));
            auto& slot = sig.values[static_cast<std::size_t>(i)];
            slot = std::min(slot, h);
        }
    }
    return sig;
}

double shingle_jaccard(const Rule& a, const Rule& b, const Document& doc, int shingle_tokens) {
    const auto sa = rule_shingles(a, doc, shingle_tokens);
    const auto sb = rule_shingles(b, doc, shingle_tokens);
    std::vector<std::string> inter;
    std::set_intersection(sa.begin(), sa.end(), sb.begin(), sb.end(), std::back_inserter(inter));
    const std::size_t uni = sa.size() + sb.size() - inter.size();
    return uni == 0 ? 0.0 : static_cast<double>(inter.size()) / static_cast<double>(uni);
}

std::vector<std::pair<std::size_t, std::size_t>> candidate_pairs(
    const std::vector<const Rule*>& rules, const Document& doc, const LshConfig& config) {
    validate(config);
    std::set<std::pair<std::size_t, std::size_t>> pairs;

    // Banded index: rules sharing any band bucket become candidates.
    std::vector<MinHashSignature> signatures;
    signatures.reserve(rules.size());
    for (const Rule* rule : rules) signatures.push_back(minhash_signature(*rule, doc, config));
    for (int band = 0; band < config.bands; ++band) {
        std::unordered_map<std::uint64_t, std::vector<std::size_t>> buckets;
        for (std::size_t i = 0; i < signatures.size(); ++i) {
            std::uint64_t key = mix64(static_cast<std::uint64_t>(band) + 0x51ed270b0a1bULL);
            for (int r = 0; r < config.rows; ++r) {
                const std::size_t idx = static_cast<std::size_t>(band * config.rows + r);
                key = mix64(key ^ signatures[i].values[idx]);
            }
            buckets[key].push_back(i);
        }
        for (const auto& [key, members] : buckets) {
            for (std::size_t x = 0; x < members.size(); ++x)
                for (std::size_t y = x + 1; y < members.size(); ++y)
                    pairs.emplace(members[x], members[y]);
        }
    }

    // Safety net: any shared action subject makes a pair a candidate, so no
    // same-drug interaction can be missed by hashing.
    std::unordered_map<std::string, std::vector<std::size_t>> by_subject;
    for (std::size_t i = 0; i < rules.size(); ++i) {
        for (const auto& item : rules[i]->action.items())
            by_subject[item.subject.key()].push_back(i);
    }
    for (const auto& [subject, members] : by_subject) {
        for (std::size_t x = 0; x < members.size(); ++x)
            for (std::size_t y = x + 1; y < members.size(); ++y)
                pairs.emplace(members[x], members[y]);
    }

    return {pairs.begin(), pairs.end()};
}

} // namespace concord
