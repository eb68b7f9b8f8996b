#pragma once

#include <atomic>
#include <memory>
#include <optional>
#include <string>
#include <vector>

#include "concord/document.hpp"
#include "concord/solver.hpp"

namespace concord {

enum class ConditionRelationKind {
    Equivalent,
    ImpliesForward,  // C_a entails C_b
    ImpliesBackward, // C_b entails C_a
    Mutex,
    Intersect,
};
std::string_view to_token(ConditionRelationKind v);

enum class ActionRelationKind { Equivalent, Conflict, Disagreement, PartialAgreement, Independent };
std::string_view to_token(ActionRelationKind v);

/// A compiled document plus its solver context. Immutable once built;
/// classification over it is pure and safe to share across threads.
class Analysis {
public:
    /// Compiles every predicate, rule condition, and axiom. `extra_axioms`
    /// (e.g. from a standalone axiom file) are appended to the document's
    /// own. Throws ValidationError if the axiom conjunction is
    /// unsatisfiable.
    static std::unique_ptr<Analysis> compile(Document doc, const AxiomSet& extra_axioms = {});

    const Document& doc() const noexcept { return doc_; }
    const CompileSession& session() const noexcept { return session_; }
    const std::vector<CompiledAxiom>& axioms() const noexcept { return axioms_; }
    const Formula& condition_formula(std::size_t rule_index) const {
        return conditions_[rule_index];
    }

    /// check_sat with this analysis' axioms conjoined; counts queries.
    SatResult check(const Formula& query) const;
    std::size_t sat_queries() const noexcept { return sat_queries_.load(); }

    SolveLimits limits;

private:
    Analysis() = default;

    Document doc_;
    CompileSession session_{DocumentMeta{}};
    std::vector<Formula> conditions_; // parallel to doc_.rules
    std::vector<Formula> axiom_clauses_;
    std::vector<CompiledAxiom> axioms_;
    mutable std::atomic<std::size_t> sat_queries_{0};
};

struct ConditionEvidence {
    ConditionRelationKind relation = ConditionRelationKind::Intersect;
    std::optional<Model> overlap_model; // model of C_a AND C_b, when satisfiable
};

/// Decides the condition relation from exactly three satisfiability queries:
/// SAT(Ca AND NOT Cb), SAT(Cb AND NOT Ca), SAT(Ca AND Cb). Equivalence is
/// derived from the first two; it is never re-queried.
ConditionEvidence condition_relation(const Analysis& analysis, const Formula& ca,
                                     const Formula& cb);

struct ActionEvidence {
    ActionRelationKind relation = ActionRelationKind::Independent;
    /// Subjects (entity names) that triggered the verdict: opposing pairs
    /// for conflict, differing pairs for disagreement, the shared agreeing
    /// subjects for equivalent/partial agreement.
    std::vector<std::string> witness_subjects;
};

/// Set comparison of two action sets. Conflict means some shared subject
/// carries opposite-polarity permissions (positive or caution against
/// negative, or directionally opposite dose adjustments); disagreement means
/// shared subjects differ without opposition.
ActionEvidence action_relation(const ActionSet& a, const ActionSet& b);

/// True when the two permissions are clinically incompatible.
bool permissions_oppose(Permission a, Permission b);

struct ClassifyConfig {
    /// Enables the specificity-priority exception: a conflict between a
    /// declared exception rule and its general rule is suppressed. Driven by
    /// rule metadata (exception_of / exception_section), never inferred.
    bool spec_prior = false;
};

struct RelationVerdict {
    RelationLabel label = RelationLabel::None;
    ConditionRelationKind condition_relation = ConditionRelationKind::Intersect;
    ActionEvidence action;
    std::optional<Model> witness; // overlap model; always present for local_conflict
    bool spec_prior_applied = false;
};

/// Classifies one rule pair through the decision table over condition and
/// action relations. Symmetric in its arguments up to the recorded
/// implication direction. Both rules must be pharmacological.
RelationVerdict classify_pair(const Analysis& analysis, std::size_t rule_a, std::size_t rule_b,
                              const ClassifyConfig& config = {});

/// Deterministic human-readable account of a verdict.
std::string explain(const RelationVerdict& verdict, const Rule& a, const Rule& b,
                    const CompileSession& session);

} // namespace concord
