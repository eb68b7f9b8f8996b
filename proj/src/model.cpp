#include "concord/model.hpp"

#include <algorithm>
#include <array>
#include <cctype>

#include "concord/errors.hpp"

namespace concord {

namespace {

template <std::size_t N>
std::string_view lookup(const std::array<std::string_view, N>& table, int index) {
    return table[static_cast<std::size_t>(index)];
}

template <typename E, std::size_t N>
E from_table(const std::array<std::string_view, N>& table, std::string_view token,
             std::string_view what) {
    for (std::size_t i = 0; i < N; ++i) {
        if (table[i] == token) return static_cast<E>(i);
    }
    throw ValidationError("unknown " + std::string(what) + " token: '" + std::string(token) + "'");
}

constexpr std::array<std::string_view, 5> kNamespaceTokens{"cond", "med", "meas", "proc", "assess"};
constexpr std::array<std::string_view, 4> kCodeSystemTokens{"SNOMED-CT", "LOINC", "RxNorm", "LOCAL"};
constexpr std::array<std::string_view, 9> kOperatorTokens{
    "HAS", "ON", "HISTORY", "ASSESS", "RISK", "STAGE", "VALUE", "DURATION", "DELTA"};
constexpr std::array<std::string_view, 6> kComparatorTokens{"LT", "LE", "GT", "GE", "EQ", "NE"};
constexpr std::array<std::string_view, 14> kPermissionTokens{
    "ALLOW", "RECOMMEND", "REQUIRE", "CONSIDER", "CAUTION", "AVOID", "CONTRAINDICATE",
    "CONTINUE", "STOP", "REDUCE_DOSE", "INCREASE_DOSE", "START_LOW_DOSE", "MAX_DOSE_LIMIT",
    "TITRATE"};
constexpr std::array<std::string_view, 3> kCategoryTokens{
    "usage_control", "continuation_control", "dose_adjustment"};
constexpr std::array<std::string_view, 4> kPolarityTokens{"positive", "negative", "caution",
                                                          "neutral"};
constexpr std::array<std::string_view, 4> kSemanticTokens{
    "risk_assessment", "pharmacological", "non_pharmacological", "other"};
constexpr std::array<std::string_view, 8> kRelationTokens{
    "complete_redundancy", "contained_redundancy", "intrinsic_conflict",
    "intrinsic_disagreement", "implication_conflict", "implication_disagreement",
    "local_conflict", "none"};
constexpr std::array<std::string_view, 6> kBenchmarkTokens{
    "local_conflict", "implication_conflict_or_disagreement",
    "intrinsic_conflict_or_disagreement", "complete_redundancy", "contained_redundancy", "none"};
constexpr std::array<std::string_view, 3> kCoarseTokens{"redundancy", "conflict", "none"};

bool valid_local_id(std::string_view id) {
    if (id.empty()) return false;
    if (!std::islower(static_cast<unsigned char>(id.front()))) return false;
    return std::all_of(id.begin(), id.end(), [](char c) {
        return std::islower(static_cast<unsigned char>(c)) ||
               std::isdigit(static_cast<unsigned char>(c)) || c == '_';
    });
}

} // namespace

// --- EntityRef --------------------------------------------------------------

std::string EntityRef::name() const {
    return std::string(to_token(ns)) + "." + local_id;
}

std::string EntityRef::key() const {
    if (code_system.has_value())
        return "code:" + std::string(to_token(*code_system)) + ":" + code;
    return name();
}

EntityRef parse_entity(std::string_view text, const std::string& path) {
    const auto dot = text.find('.');
    if (dot == std::string_view::npos)
        throw ValidationError("entity must be '<namespace>.<local_id>', got '" +
                                  std::string(text) + "'",
                              path);
    EntityRef ref;
    ref.ns = entity_namespace_from_token(text.substr(0, dot));
    ref.local_id = std::string(text.substr(dot + 1));
    if (!valid_local_id(ref.local_id))
        throw ValidationError("entity local id must be non-empty lowercase snake_case, got '" +
                                  ref.local_id + "'",
                              path);
    return ref;
}

// --- ConditionExpr ----------------------------------------------------------

ConditionExpr ConditionExpr::make_ref(std::string predicate_id) {
    ConditionExpr e;
    e.kind = Kind::Ref;
    e.ref = std::move(predicate_id);
    return e;
}

ConditionExpr ConditionExpr::make_not(ConditionExpr child) {
    ConditionExpr e;
    e.kind = Kind::Not;
    e.children.push_back(std::move(child));
    return e;
}

ConditionExpr ConditionExpr::make_and(std::vector<ConditionExpr> children) {
    ConditionExpr e;
    e.kind = Kind::And;
    e.children = std::move(children);
    return e;
}

ConditionExpr ConditionExpr::make_or(std::vector<ConditionExpr> children) {
    ConditionExpr e;
    e.kind = Kind::Or;
    e.children = std::move(children);
    return e;
}

ConditionExpr ConditionExpr::normalized() const {
    if (kind == Kind::Not) {
        const ConditionExpr& child = children.front();
        if (child.kind == Kind::Not) return child.children.front().normalized();
        return make_not(child.normalized());
    }
    if (kind == Kind::Ref) return *this;
    std::vector<ConditionExpr> normalized_children;
    normalized_children.reserve(children.size());
    for (const auto& child : children) normalized_children.push_back(child.normalized());
    ConditionExpr e;
    e.kind = kind;
    e.children = std::move(normalized_children);
    return e;
}

std::vector<std::string> ConditionExpr::referenced_predicates() const {
    std::vector<std::string> out;
    auto walk = [&out](const ConditionExpr& node, auto&& self) -> void {
        if (node.kind == Kind::Ref) {
            if (std::find(out.begin(), out.end(), node.ref) == out.end()) out.push_back(node.ref);
            return;
        }
        for (const auto& child : node.children) self(child, self);
    };
    walk(*this, walk);
    return out;
}

// --- Permissions ------------------------------------------------------------

PermissionCategory category(Permission p) {
    switch (p) {
    case Permission::Allow:
    case Permission::Recommend:
    case Permission::Require:
    case Permission::Consider:
    case Permission::Caution:
    case Permission::Avoid:
    case Permission::Contraindicate:
        return PermissionCategory::UsageControl;
    case Permission::Continue:
    case Permission::Stop:
        return PermissionCategory::ContinuationControl;
    case Permission::ReduceDose:
    case Permission::IncreaseDose:
    case Permission::StartLowDose:
    case Permission::MaxDoseLimit:
    case Permission::Titrate:
        return PermissionCategory::DoseAdjustment;
    }
    return PermissionCategory::UsageControl;
}

Polarity polarity(Permission p) {
    switch (p) {
    case Permission::Allow:
    case Permission::Recommend:
    case Permission::Require:
    case Permission::Consider:
    case Permission::Continue:
        return Polarity::Positive;
    case Permission::Avoid:
    case Permission::Contraindicate:
    case Permission::Stop:
        return Polarity::Negative;
    case Permission::Caution:
        return Polarity::Caution;
    case Permission::ReduceDose:
    case Permission::IncreaseDose:
    case Permission::StartLowDose:
    case Permission::MaxDoseLimit:
    case Permission::Titrate:
        return Polarity::Neutral;
    }
    return Polarity::Neutral;
}

// --- ActionSet ----------------------------------------------------------------

ActionSet ActionSet::of(std::vector<ActionItem> items) {
    std::sort(items.begin(), items.end(), [](const ActionItem& a, const ActionItem& b) {
        if (a.subject.key() != b.subject.key()) return a.subject.key() < b.subject.key();
        return a.permission < b.permission;
    });
    items.erase(std::unique(items.begin(), items.end()), items.end());
    for (std::size_t i = 1; i < items.size(); ++i) {
        if (items[i - 1].subject.key() == items[i].subject.key())
            throw ValidationError("duplicate permission per subject: '" + items[i].subject.name() +
                                  "' carries both " + std::string(to_token(items[i - 1].permission)) +
                                  " and " + std::string(to_token(items[i].permission)));
    }
    ActionSet set;
    set.items_ = std::move(items);
    return set;
}

const ActionItem* ActionSet::find(std::string_view subject_key) const {
    for (const auto& item : items_) {
        if (item.subject.key() == subject_key) return &item;
    }
    return nullptr;
}

// --- Taxonomy ----------------------------------------------------------------

CoarseLabel coarse_of(RelationLabel label) {
    switch (label) {
    case RelationLabel::CompleteRedundancy:
    case RelationLabel::ContainedRedundancy:
        return CoarseLabel::Redundancy;
    case RelationLabel::None:
        return CoarseLabel::None;
    default:
        return CoarseLabel::Conflict;
    }
}

CoarseLabel coarse_of(BenchmarkLabel label) {
    switch (label) {
    case BenchmarkLabel::CompleteRedundancy:
    case BenchmarkLabel::ContainedRedundancy:
        return CoarseLabel::Redundancy;
    case BenchmarkLabel::None:
        return CoarseLabel::None;
    default:
        return CoarseLabel::Conflict;
    }
}

BenchmarkLabel benchmark_of(RelationLabel label) {
    switch (label) {
    case RelationLabel::CompleteRedundancy:
        return BenchmarkLabel::CompleteRedundancy;
    case RelationLabel::ContainedRedundancy:
        return BenchmarkLabel::ContainedRedundancy;
    case RelationLabel::IntrinsicConflict:
    case RelationLabel::IntrinsicDisagreement:
        return BenchmarkLabel::IntrinsicConflictOrDisagreement;
    case RelationLabel::ImplicationConflict:
    case RelationLabel::ImplicationDisagreement:
        return BenchmarkLabel::ImplicationConflictOrDisagreement;
    case RelationLabel::LocalConflict:
        return BenchmarkLabel::LocalConflict;
    case RelationLabel::None:
        return BenchmarkLabel::None;
    }
    return BenchmarkLabel::None;
}

// --- Document ----------------------------------------------------------------

const PredicateDef* Document::find_predicate(std::string_view id) const {
    for (const auto& p : predicates) {
        if (p.id == id) return &p;
    }
    return nullptr;
}

const Rule* Document::find_rule(std::string_view id) const {
    const std::size_t i = rule_index(id);
    return i == static_cast<std::size_t>(-1) ? nullptr : &rules[i];
}

std::size_t Document::rule_index(std::string_view id) const {
    for (std::size_t i = 0; i < rules.size(); ++i) {
        if (rules[i].id == id) return i;
    }
    return static_cast<std::size_t>(-1);
}

// --- Tokens -------------------------------------------------------------------

std::string_view to_token(EntityNamespace v) { return lookup(kNamespaceTokens, static_cast<int>(v)); }
std::string_view to_token(CodeSystem v) { return lookup(kCodeSystemTokens, static_cast<int>(v)); }
std::string_view to_token(OperatorKind v) { return lookup(kOperatorTokens, static_cast<int>(v)); }
std::string_view to_token(Comparator v) { return lookup(kComparatorTokens, static_cast<int>(v)); }
std::string_view to_token(Permission v) { return lookup(kPermissionTokens, static_cast<int>(v)); }
std::string_view to_token(PermissionCategory v) { return lookup(kCategoryTokens, static_cast<int>(v)); }
std::string_view to_token(Polarity v) { return lookup(kPolarityTokens, static_cast<int>(v)); }
std::string_view to_token(SemanticCategory v) { return lookup(kSemanticTokens, static_cast<int>(v)); }
std::string_view to_token(RelationLabel v) { return lookup(kRelationTokens, static_cast<int>(v)); }
std::string_view to_token(BenchmarkLabel v) { return lookup(kBenchmarkTokens, static_cast<int>(v)); }
std::string_view to_token(CoarseLabel v) { return lookup(kCoarseTokens, static_cast<int>(v)); }

EntityNamespace entity_namespace_from_token(std::string_view token) {
    return from_table<EntityNamespace>(kNamespaceTokens, token, "entity namespace");
}
CodeSystem code_system_from_token(std::string_view token) {
    return from_table<CodeSystem>(kCodeSystemTokens, token, "code system");
}
OperatorKind operator_from_token(std::string_view token) {
    return from_table<OperatorKind>(kOperatorTokens, token, "operator");
}
Comparator comparator_from_token(std::string_view token) {
    if (token == "<") return Comparator::Lt;
    if (token == "<=") return Comparator::Le;
    if (token == ">") return Comparator::Gt;
    if (token == ">=") return Comparator::Ge;
    if (token == "=" || token == "==") return Comparator::Eq;
    if (token == "!=") return Comparator::Ne;
    return from_table<Comparator>(kComparatorTokens, token, "comparator");
}
Permission permission_from_token(std::string_view token) {
    return from_table<Permission>(kPermissionTokens, token, "permission");
}
SemanticCategory semantic_category_from_token(std::string_view token) {
    return from_table<SemanticCategory>(kSemanticTokens, token, "semantic category");
}
RelationLabel relation_label_from_token(std::string_view token) {
    return from_table<RelationLabel>(kRelationTokens, token, "relation label");
}
BenchmarkLabel benchmark_label_from_token(std::string_view token) {
    return from_table<BenchmarkLabel>(kBenchmarkTokens, token, "benchmark label");
}

ValueSort operator_sort(OperatorKind op, bool stage_is_integer) {
    switch (op) {
    case OperatorKind::Has:
    case OperatorKind::On:
    case OperatorKind::History:
    case OperatorKind::Assess:
        return ValueSort::Boolean;
    case OperatorKind::Risk:
        return ValueSort::Enum;
    case OperatorKind::Stage:
        return stage_is_integer ? ValueSort::Integer : ValueSort::Enum;
    case OperatorKind::Value:
    case OperatorKind::Duration:
    case OperatorKind::Delta:
        return ValueSort::Real;
    }
    return ValueSort::Boolean;
}

bool operator_is_boolean(OperatorKind op) {
    return operator_sort(op) == ValueSort::Boolean;
}

} // namespace concord
