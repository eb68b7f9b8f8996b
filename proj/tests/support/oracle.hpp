// Test-only brute-force oracles. These decide satisfiability and rule
// relations by enumerating discretized variable domains and evaluating
// formulas directly; they share no code with the DPLL search, the endpoint
// sweep, or the classifier's decision logic.
#pragma once

#include <map>
#include <span>
#include <vector>

#include "concord/relations.hpp"
#include "concord/solver.hpp"

namespace concord::testing {

using Valuation = std::map<VarId, ModelValue>;

/// Candidate values for one variable, derived from the thresholds/tokens of
/// the universe's atoms on it: booleans {false,true}; reals: each threshold,
/// midpoints of consecutive thresholds, one point past each end; integers:
/// integer neighbourhoods of each threshold; enums: domain incl. sentinel.
std::vector<ModelValue> var_candidates(const CompileSession& session, VarId var,
                                       std::span<const AtomId> universe);

bool atom_holds(const CompileSession& session, AtomId atom, const Valuation& valuation);
bool formula_holds(const CompileSession& session, const Formula& f, const Valuation& valuation);

/// Direct evaluation of a predicate definition against a valuation, without
/// going through compiled atoms.
bool predicate_holds(const PredicateDef& p, const CompileSession& session,
                     const Valuation& valuation);

/// Direct evaluation of a condition tree via predicate_holds.
bool condition_holds(const ConditionExpr& c, const Document& doc, const CompileSession& session,
                     const Valuation& valuation);

/// Every grid valuation over the universe's variables.
std::vector<Valuation> all_valuations(const CompileSession& session,
                                      std::span<const AtomId> universe);

/// Brute-force satisfiability of f (conjoined with axiom clauses) over the
/// discretized grid.
bool oracle_sat(const CompileSession& session, const Formula& f,
                std::span<const Formula> axioms = {});

/// Brute-force rule-pair classification: condition relations from grid
/// enumeration, action relations and the label table restated from their
/// definitions.
struct OracleVerdict {
    RelationLabel label;
    ConditionRelationKind condition_relation;
    ActionRelationKind action_relation;
};
OracleVerdict oracle_classify(const Analysis& analysis, std::size_t rule_a, std::size_t rule_b);

} // namespace concord::testing
