#pragma once

#include <cstdint>

#include "concord/bench.hpp"

namespace concord {

/// A generated evaluation corpus: a rules document, gold pairs with a fixed
/// reference label distribution (226 pairs:
/// 20 local, 40 implication, 37 intrinsic, 15 complete-redundancy,
/// 54 contained-redundancy, 60 none), and dedicated isolated rules for
/// noise injection. Every pair is built from fresh entities and a fresh
/// drug, so pairs cannot interact with each other.
struct SyntheticDataset {
    Document doc;
    std::vector<GoldPair> gold;
    std::vector<std::string> isolated_rule_ids;
};

inline constexpr std::size_t kSyntheticGoldTotal = 226;

SyntheticDataset make_synthetic_dataset(std::uint64_t seed = 7);

} // namespace concord
