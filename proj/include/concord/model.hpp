#pragma once

#include <map>
#include <optional>
#include <string>
#include <string_view>
#include <variant>
#include <vector>

#include "concord/rational.hpp"

namespace concord {

// ---------------------------------------------------------------------------
// Entities
// ---------------------------------------------------------------------------

enum class EntityNamespace { Cond, Med, Meas, Proc, Assess };

enum class CodeSystem { SnomedCt, Loinc, RxNorm, Local };

/// A grounded clinical concept: a condition, drug, measurement, procedure,
/// or assessment. Identity follows the terminology code when one is present;
/// uncoded entities are identified by their namespaced name, so textual
/// synonyms stay distinct unless their codes match.
struct EntityRef {
    EntityNamespace ns = EntityNamespace::Cond;
    std::string local_id; // lowercase snake_case, non-empty
    std::optional<CodeSystem> code_system;
    std::string code; // non-empty iff code_system is set

    /// "cond.t2dm"
    std::string name() const;
    /// Unification key: "code:SNOMED-CT:44054006" when coded, else the name.
    std::string key() const;

    bool operator==(const EntityRef&) const = default;
};

// ---------------------------------------------------------------------------
// Predicates
// ---------------------------------------------------------------------------

enum class OperatorKind { Has, On, History, Assess, Risk, Stage, Value, Duration, Delta };

/// Value sort an operator evaluates to. Stage resolves to Integer or Enum via
/// the document's per-entity declaration.
enum class ValueSort { Boolean, Real, Integer, Enum };

enum class Comparator { Lt, Le, Gt, Ge, Eq, Ne };

/// Typed right-hand side of a comparison: exact rational (with the
/// predicate's unit), integer, or enum token.
using RhsLiteral = std::variant<Rat, std::int64_t, std::string>;

struct PredicateDef {
    std::string id;
    OperatorKind op = OperatorKind::Has;
    EntityRef entity;
    std::optional<EntityRef> qualifier; // present iff op == Assess
    std::optional<Comparator> comparator;
    std::optional<RhsLiteral> rhs;
    std::optional<std::string> unit; // canonical after load-time normalization

    bool operator==(const PredicateDef&) const = default;
};

// ---------------------------------------------------------------------------
// Conditions
// ---------------------------------------------------------------------------

/// Boolean combination of predicate references. After construction the tree
/// carries no double negation; AND/OR keep arity >= 2.
struct ConditionExpr {
    enum class Kind { And, Or, Not, Ref };

    Kind kind = Kind::Ref;
    std::string ref;                     // Kind::Ref
    std::vector<ConditionExpr> children; // And/Or: >=2, Not: exactly 1

    static ConditionExpr make_ref(std::string predicate_id);
    static ConditionExpr make_not(ConditionExpr child);
    static ConditionExpr make_and(std::vector<ConditionExpr> children);
    static ConditionExpr make_or(std::vector<ConditionExpr> children);

    /// Collapses NOT(NOT(x)) everywhere.
    ConditionExpr normalized() const;

    /// Predicate ids referenced anywhere in the tree, first-seen order.
    std::vector<std::string> referenced_predicates() const;

    bool operator==(const ConditionExpr&) const = default;
};

// ---------------------------------------------------------------------------
// Actions
// ---------------------------------------------------------------------------

enum class Permission {
    Allow,
    Recommend,
    Require,
    Consider,
    Caution,
    Avoid,
    Contraindicate,
    Continue,
    Stop,
    ReduceDose,
    IncreaseDose,
    StartLowDose,
    MaxDoseLimit,
    Titrate,
};
inline constexpr int kPermissionCount = 14;

enum class PermissionCategory { UsageControl, ContinuationControl, DoseAdjustment };

enum class Polarity { Positive, Negative, Caution, Neutral };

PermissionCategory category(Permission p);

/// Total allow/prohibit reading of the vocabulary. Dose adjustments are
/// neutral; CAUTION is its own pole so conflict and disagreement can treat
/// it differently.
Polarity polarity(Permission p);

struct ActionItem {
    EntityRef subject;
    Permission permission = Permission::Allow;

    bool operator==(const ActionItem&) const = default;
};

/// Set of (subject, permission) pairs with at most one permission per
/// subject. A directive that both allows and prohibits the same drug is
/// rejected at construction; compound directives become separate rules.
class ActionSet {
public:
    ActionSet() = default;

    /// Throws ValidationError when two items target the same subject with
    /// different permissions. Exact duplicates collapse.
    static ActionSet of(std::vector<ActionItem> items);

    const std::vector<ActionItem>& items() const noexcept { return items_; }
    bool empty() const noexcept { return items_.empty(); }
    std::size_t size() const noexcept { return items_.size(); }

    const ActionItem* find(std::string_view subject_key) const;

    bool operator==(const ActionSet&) const = default;

private:
    std::vector<ActionItem> items_; // sorted by subject key
};

// ---------------------------------------------------------------------------
// Rules
// ---------------------------------------------------------------------------

enum class SemanticCategory { RiskAssessment, Pharmacological, NonPharmacological, Other };

struct RuleSource {
    std::string guideline_id;
    std::string section;
    int publication_year = 0;
    bool exception_section = false; // section is a declared exception list

    bool operator==(const RuleSource&) const = default;
};

struct Rule {
    std::string id;
    ConditionExpr condition;
    ActionSet action;
    RuleSource source;
    std::string provenance_text;
    SemanticCategory semantic_category = SemanticCategory::Pharmacological;
    std::optional<std::string> exception_of; // rule id this rule is a declared exception to

    bool operator==(const Rule&) const = default;
};

// ---------------------------------------------------------------------------
// Relation taxonomy
// ---------------------------------------------------------------------------

enum class RelationLabel {
    CompleteRedundancy,
    ContainedRedundancy,
    IntrinsicConflict,
    IntrinsicDisagreement,
    ImplicationConflict,
    ImplicationDisagreement,
    LocalConflict,
    None,
};
inline constexpr int kRelationLabelCount = 8;

enum class CoarseLabel { Redundancy, Conflict, None };

/// Six-way labels used by benchmark datasets: conflict and disagreement are
/// merged at intrinsic and implication granularity.
enum class BenchmarkLabel {
    LocalConflict,
    ImplicationConflictOrDisagreement,
    IntrinsicConflictOrDisagreement,
    CompleteRedundancy,
    ContainedRedundancy,
    None,
};
inline constexpr int kBenchmarkLabelCount = 6;

CoarseLabel coarse_of(RelationLabel label);
CoarseLabel coarse_of(BenchmarkLabel label);
BenchmarkLabel benchmark_of(RelationLabel label);

// ---------------------------------------------------------------------------
// Axioms
// ---------------------------------------------------------------------------

/// Background domain knowledge as implications between conditions, e.g.
/// chronic kidney disease entailing a high cardiovascular risk rating.
/// Optional and empty by default.
struct Axiom {
    ConditionExpr antecedent;
    ConditionExpr consequent;
    std::string justification;

    bool operator==(const Axiom&) const = default;
};

struct AxiomSet {
    std::vector<Axiom> axioms;

    bool empty() const noexcept { return axioms.empty(); }
    bool operator==(const AxiomSet&) const = default;
};

// ---------------------------------------------------------------------------
// Document
// ---------------------------------------------------------------------------

struct StageSort {
    bool is_integer = true;
    std::vector<std::string> domain; // enum stages, in declared order

    bool operator==(const StageSort&) const = default;
};

struct DocumentMeta {
    int schema_version = 1;
    std::map<std::string, std::string> units;                      // entity name -> canonical unit
    std::map<std::string, StageSort> stage_sorts;                  // entity name -> STAGE sort
    std::map<std::string, std::vector<std::string>> enum_domains;  // entity name -> RISK domain

    bool operator==(const DocumentMeta&) const = default;
};

/// Immutable after load; safe to share across concurrent readers.
struct Document {
    DocumentMeta meta;
    std::vector<PredicateDef> predicates;
    std::vector<Rule> rules;
    AxiomSet axioms;

    const PredicateDef* find_predicate(std::string_view id) const;
    const Rule* find_rule(std::string_view id) const;
    /// Index into `rules`, or npos.
    std::size_t rule_index(std::string_view id) const;

    bool operator==(const Document&) const = default;
};

// ---------------------------------------------------------------------------
// Token conversions (canonical wire spellings)
// ---------------------------------------------------------------------------

std::string_view to_token(EntityNamespace v);
std::string_view to_token(CodeSystem v);
std::string_view to_token(OperatorKind v);
std::string_view to_token(Comparator v);
std::string_view to_token(Permission v);
std::string_view to_token(PermissionCategory v);
std::string_view to_token(Polarity v);
std::string_view to_token(SemanticCategory v);
std::string_view to_token(RelationLabel v);
std::string_view to_token(BenchmarkLabel v);
std::string_view to_token(CoarseLabel v);

EntityNamespace entity_namespace_from_token(std::string_view token);
CodeSystem code_system_from_token(std::string_view token);
OperatorKind operator_from_token(std::string_view token);
Comparator comparator_from_token(std::string_view token); // accepts "LT" and "<"
Permission permission_from_token(std::string_view token);
SemanticCategory semantic_category_from_token(std::string_view token);
RelationLabel relation_label_from_token(std::string_view token);
BenchmarkLabel benchmark_label_from_token(std::string_view token);

/// Return sort of an operator; Stage needs the document's declaration and is
/// reported by the loader/compiler, so plain Stage maps to Integer here only
/// when `stage_is_integer` says so.
ValueSort operator_sort(OperatorKind op, bool stage_is_integer = true);
bool operator_is_boolean(OperatorKind op);

/// Parses "cond.t2dm" (no code) into an EntityRef. Throws ValidationError.
EntityRef parse_entity(std::string_view text, const std::string& path);

} // namespace concord
