#pragma once

#include <cstdint>
#include <string>
#include <vector>

#include "concord/model.hpp"

namespace concord {

/// MinHash/LSH parameters. k = bands * rows must hold. Defaults target high
/// recall on short clinical sentences; a subject-overlap safety net in the
/// pairing step guarantees same-drug pairs are never missed regardless of
/// these settings.
struct LshConfig {
    int num_hashes = 128;
    int bands = 32;
    int rows = 4;
    int shingle_tokens = 3;
    std::uint64_t seed = 1;
};

/// MinHash signature of one rule: k 64-bit minima over the rule's shingle
/// set. Shingles combine the provenance text (token n-grams) with the
/// rule's predicate keys and action subjects, so formalized rules that share
/// logic collide even under divergent phrasing.
///
/// For two rules with Jaccard similarity s over their shingle sets, the
/// banded index pairs them with probability 1 - (1 - s^r)^b.
struct MinHashSignature {
    std::string rule_id;
    int k = 0;
    std::vector<std::uint64_t> values;
};

/// Deterministic 64-bit string hash (FNV-1a core); stable across platforms.
std::uint64_t stable_hash64(std::string_view text);

/// splitmix64 finalizer; used to derive per-permutation and per-sample seeds.
std::uint64_t mix64(std::uint64_t x);

/// Shingle set of one rule: lowercase token n-grams of the provenance text
/// plus predicate-key and action-subject tokens.
std::vector<std::string> rule_shingles(const Rule& rule, const Document& doc, int shingle_tokens);

MinHashSignature minhash_signature(const Rule& rule, const Document& doc, const LshConfig& config);

/// Exact Jaccard similarity of two rules' shingle sets (reference for the
/// banding probability; not used by the index itself).
double shingle_jaccard(const Rule& a, const Rule& b, const Document& doc, int shingle_tokens);

/// Banded LSH candidate pairing over the given rules, unioned with the
/// subject-overlap safety net: every pair sharing at least one action
/// subject is a candidate regardless of signature collisions. Returns
/// sorted (i, j) index pairs with i < j.
std::vector<std::pair<std::size_t, std::size_t>> candidate_pairs(
    const std::vector<const Rule*>& rules, const Document& doc, const LshConfig& config);

} // namespace concord
