#pragma once

#include <cstdint>
#include <optional>
#include <span>
#include <string>
#include <variant>
#include <vector>

#include "concord/compile.hpp"

namespace concord {

/// Value assigned to a theory variable in a satisfying model. Real and
/// integer variables use exact rationals; enum variables a token (possibly
/// the open-domain sentinel).
using ModelValue = std::variant<bool, Rat, std::string>;

/// Satisfying assignment over the queried variables, ordered by variable id.
struct Model {
    std::vector<std::pair<VarId, ModelValue>> values;

    const ModelValue* find(VarId var) const;
    std::string to_text(const CompileSession& session) const;
};

struct SatResult {
    bool sat = false;
    std::optional<Model> model; // present iff sat
};

struct SolveLimits {
    std::size_t max_nodes = 4'000'000;
};

/// Decides satisfiability of an NNF formula over the fragment: boolean
/// variables, single-variable rational/integer comparisons, enum
/// (in)equalities. Axioms are conjoined into the query. Sound and complete
/// for the fragment; throws CapacityError past the node budget.
///
/// Search is a DPLL-style DFS over the atom universe in canonical order
/// (true branch first), pruning on three-valued formula evaluation and
/// per-variable theory consistency. Single-variable feasibility is decided
/// by an endpoint sweep over candidate points, so no general arithmetic is
/// needed.
SatResult check_sat(const CompileSession& session, const Formula& query,
                    std::span<const Formula> axioms = {}, const SolveLimits& limits = {});

/// Compiled background implication, kept in both clause and (lhs, rhs) form
/// so emitters can render it as an implication.
struct CompiledAxiom {
    Formula antecedent;
    Formula consequent;
    Formula clause; // OR(NOT antecedent, consequent)
    std::string justification;
};

/// Renders an SMT-LIB2 script whose (check-sat) verdict matches check_sat:
/// declarations for every variable in the universe, enum domains as integer
/// ranges, each axiom asserted as an implication, then the query. Rational
/// literals are exact `(/ n d)` terms.
std::string emit_smtlib(const CompileSession& session, const Formula& query,
                        std::span<const CompiledAxiom> axioms = {});

} // namespace concord
