#pragma once

#include <boost/rational.hpp>

#include <cstdint>
#include <string>
#include <string_view>

namespace concord {

/// Exact rational arithmetic for thresholds. Comparisons like eGFR boundaries
/// must never go through floating point.
using Rat = boost::rational<std::int64_t>;

std::int64_t rat_floor(const Rat& r);
std::int64_t rat_ceil(const Rat& r);

bool rat_is_integral(const Rat& r);

/// "45", "-3/2", "91/2".
std::string rat_to_string(const Rat& r);

/// Accepts integers ("45", "-7"), fractions ("3/2"), and exact decimals
/// ("12.5"). Throws std::invalid_argument on anything else.
Rat parse_rational(std::string_view text);

} // namespace concord
