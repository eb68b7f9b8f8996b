#pragma once

#include <string>
#include <string_view>

#include "concord/model.hpp"

namespace concord {

/// Parses and validates an interchange document (UTF-8 JSON). Every schema
/// invariant is checked: reference resolution, sort/comparator pairing,
/// duplicate ids, one permission per subject, unit normalization. Throws
/// ValidationError with a line number (syntax) or element path (semantics).
Document load_document(std::string_view bytes);

/// Canonical JSON rendering; load_document(serialize_document(d)) == d.
std::string serialize_document(const Document& doc);

/// Loads a standalone axiom file whose conditions reference `doc`'s
/// predicates.
AxiomSet load_axioms(std::string_view bytes, const Document& doc);

std::string serialize_axioms(const AxiomSet& axioms);

/// Parses the text condition grammar:
///   expr := term (("AND"|"OR") term)* ;  term := "NOT"? ("(" expr ")" | id)
/// with precedence NOT > AND > OR. The result is normalized (no double
/// negation). Reference resolution is the caller's job.
ConditionExpr parse_condition_text(std::string_view text, const std::string& path);

/// Unit normalization: maps a unit spelling to its canonical unit and the
/// factor that converts a value into it (e.g. weeks -> days, x7). Unknown
/// units are canonical for themselves.
struct UnitConversion {
    std::string canonical;
    Rat factor;
};
UnitConversion normalize_unit(std::string_view unit);

/// True when the unit belongs to the built-in time table (canonical: days).
bool is_time_unit(std::string_view unit);

} // namespace concord
