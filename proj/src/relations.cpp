#include "concord/relations.hpp"

#include <algorithm>
#include <array>

#include "concord/errors.hpp"

namespace concord {

std::string_view to_token(ConditionRelationKind v) {
    static constexpr std::array<std::string_view, 5> kTokens{
        "equivalent", "implies_forward", "implies_backward", "mutex", "intersect"};
    return kTokens[static_cast<std::size_t>(v)];
}

std::string_view to_token(ActionRelationKind v) {
    static constexpr std::array<std::string_view, 5> kTokens{
        "equivalent", "conflict", "disagreement", "partial_agreement", "independent"};
    return kTokens[static_cast<std::size_t>(v)];
}

// --- Analysis -------------------------------------------------------------------

std::unique_ptr<Analysis> Analysis::compile(Document doc, const AxiomSet& extra_axioms) {
    std::unique_ptr<Analysis> analysis(new Analysis());
    analysis->doc_ = std::move(doc);
    const Document& d = analysis->doc_;
    analysis->session_ = CompileSession(d.meta);

    // Interning every predicate up front keeps atom identity independent of
    // rule order and surfaces sort clashes immediately.
    for (const auto& p : d.predicates) analysis->session_.compile_predicate(p);

    analysis->conditions_.reserve(d.rules.size());
    for (const auto& rule : d.rules)
        analysis->conditions_.push_back(compile_condition(rule.condition, d, analysis->session_));

    auto add_axiom = [&](const Axiom& axiom) {
        CompiledAxiom compiled;
        compiled.antecedent = compile_condition(axiom.antecedent, d, analysis->session_);
        compiled.consequent = compile_condition(axiom.consequent, d, analysis->session_);
        compiled.clause = Formula::disjunction(
            {negate(compiled.antecedent), compiled.consequent});
        compiled.justification = axiom.justification;
        analysis->axiom_clauses_.push_back(compiled.clause);
        analysis->axioms_.push_back(std::move(compiled));
    };
    for (const auto& axiom : d.axioms.axioms) add_axiom(axiom);
    for (const auto& axiom : extra_axioms.axioms) add_axiom(axiom);

    if (!analysis->axioms_.empty()) {
        const SatResult result =
            check_sat(analysis->session_, Formula::constant(true), analysis->axiom_clauses_);
        if (!result.sat)
            throw ValidationError("the conjunction of the loaded axioms is unsatisfiable",
                                  "axioms");
    }
    return analysis;
}

SatResult Analysis::check(const Formula& query) const {
    sat_queries_.fetch_add(1, std::memory_order_relaxed);
    return check_sat(session_, query, axiom_clauses_, limits);
}

// --- Condition relation -----------------------------------------------------------

ConditionEvidence condition_relation(const Analysis& analysis, const Formula& ca,
                                     const Formula& cb) {
    const SatResult a_not_b = analysis.check(Formula::conjunction({ca, negate(cb)}));
    const SatResult b_not_a = analysis.check(Formula::conjunction({cb, negate(ca)}));
    SatResult overlap = analysis.check(Formula::conjunction({ca, cb}));

    ConditionEvidence evidence;
    evidence.overlap_model = std::move(overlap.model);
    if (!a_not_b.sat && !b_not_a.sat) evidence.relation = ConditionRelationKind::Equivalent;
    else if (!a_not_b.sat) evidence.relation = ConditionRelationKind::ImpliesForward;
    else if (!b_not_a.sat) evidence.relation = ConditionRelationKind::ImpliesBackward;
    else if (!overlap.sat) evidence.relation = ConditionRelationKind::Mutex;
    else evidence.relation = ConditionRelationKind::Intersect;
    return evidence;
}

// --- Action relation ---------------------------------------------------------------

bool permissions_oppose(Permission a, Permission b) {
    const Polarity pa = polarity(a);
    const Polarity pb = polarity(b);
    const auto is_opposing_pole = [](Polarity x, Polarity y) {
        return (x == Polarity::Positive || x == Polarity::Caution) && y == Polarity::Negative;
    };
    if (is_opposing_pole(pa, pb) || is_opposing_pole(pb, pa)) return true;
    // Directionally opposite dose adjustments are incompatible; other
    // pairings inside the neutral category merely disagree.
    return (a == Permission::ReduceDose && b == Permission::IncreaseDose) ||
           (a == Permission::IncreaseDose && b == Permission::ReduceDose);
}

ActionEvidence action_relation(const ActionSet& a, const ActionSet& b) {
    ActionEvidence evidence;
    if (a == b) {
        evidence.relation = ActionRelationKind::Equivalent;
        for (const auto& item : a.items()) evidence.witness_subjects.push_back(item.subject.name());
        return evidence;
    }

    std::vector<std::string> conflicts;
    std::vector<std::string> differing;
    std::vector<std::string> agreeing;
    for (const auto& item : a.items()) {
        const ActionItem* other = b.find(item.subject.key());
        if (other == nullptr) continue;
        if (permissions_oppose(item.permission, other->permission))
            conflicts.push_back(item.subject.name());
        else if (item.permission != other->permission)
            differing.push_back(item.subject.name());
        else
            agreeing.push_back(item.subject.name());
    }

    if (!conflicts.empty()) {
        evidence.relation = ActionRelationKind::Conflict;
        evidence.witness_subjects = std::move(conflicts);
    } else if (!differing.empty()) {
        evidence.relation = ActionRelationKind::Disagreement;
        evidence.witness_subjects = std::move(differing);
    } else if (!agreeing.empty()) {
        evidence.relation = ActionRelationKind::PartialAgreement;
        evidence.witness_subjects = std::move(agreeing);
    } else {
        evidence.relation = ActionRelationKind::Independent;
    }
    return evidence;
}

// --- Rule classification --------------------------------------------------------------

namespace {

bool is_implication(ConditionRelationKind r) {
    return r == ConditionRelationKind::ImpliesForward ||
           r == ConditionRelationKind::ImpliesBackward;
}

// The specificity-priority exception. For implications the more specific
// rule is the implying side; it must be declared an exception of the general
// rule, either explicitly or by sitting in an exception-list section of the
// same guideline. Overlapping (intersecting) rules carry no specific side,
// so only an explicit declaration in either direction counts.
bool spec_prior_applies(const Rule& a, const Rule& b, ConditionRelationKind relation) {
    const auto declared_exception = [](const Rule& specific, const Rule& general) {
        if (specific.exception_of && *specific.exception_of == general.id) return true;
        return specific.source.guideline_id == general.source.guideline_id &&
               specific.source.exception_section;
    };
    switch (relation) {
    case ConditionRelationKind::ImpliesForward:
        return declared_exception(a, b);
    case ConditionRelationKind::ImpliesBackward:
        return declared_exception(b, a);
    case ConditionRelationKind::Intersect:
        return (a.exception_of && *a.exception_of == b.id) ||
               (b.exception_of && *b.exception_of == a.id);
    default:
        return false;
    }
}

} // namespace

RelationVerdict classify_pair(const Analysis& analysis, std::size_t rule_a, std::size_t rule_b,
                              const ClassifyConfig& config) {
    const Rule& a = analysis.doc().rules[rule_a];
    const Rule& b = analysis.doc().rules[rule_b];
    if (a.semantic_category != SemanticCategory::Pharmacological ||
        b.semantic_category != SemanticCategory::Pharmacological)
        throw ValidationError("relation analysis requires pharmacological rules ('" + a.id +
                              "' vs '" + b.id + "')");

    ConditionEvidence cond = condition_relation(analysis, analysis.condition_formula(rule_a),
                                                analysis.condition_formula(rule_b));
    ActionEvidence action = action_relation(a.action, b.action);

    RelationVerdict verdict;
    verdict.condition_relation = cond.relation;
    verdict.action = std::move(action);

    const bool equivalent = cond.relation == ConditionRelationKind::Equivalent;
    const bool implies = is_implication(cond.relation);
    const bool intersect = cond.relation == ConditionRelationKind::Intersect;

    switch (verdict.action.relation) {
    case ActionRelationKind::Equivalent:
        if (equivalent) verdict.label = RelationLabel::CompleteRedundancy;
        else if (implies) verdict.label = RelationLabel::ContainedRedundancy;
        break;
    case ActionRelationKind::Conflict:
        if (equivalent) {
            verdict.label = RelationLabel::IntrinsicConflict;
        } else if (implies || intersect) {
            if (config.spec_prior && spec_prior_applies(a, b, cond.relation))
                verdict.spec_prior_applied = true;
            else
                verdict.label = implies ? RelationLabel::ImplicationConflict
                                        : RelationLabel::LocalConflict;
        }
        break;
    case ActionRelationKind::Disagreement:
        if (equivalent) verdict.label = RelationLabel::IntrinsicDisagreement;
        else if (implies) verdict.label = RelationLabel::ImplicationDisagreement;
        break;
    case ActionRelationKind::PartialAgreement:
    case ActionRelationKind::Independent:
        break;
    }

    if (verdict.label != RelationLabel::None || verdict.spec_prior_applied)
        verdict.witness = std::move(cond.overlap_model);
    return verdict;
}

// --- Explanation -------------------------------------------------------------------------

namespace {

std::string permission_pair_text(const RelationVerdict& verdict, const Rule& a, const Rule& b) {
    std::string out;
    for (const auto& subject : verdict.action.witness_subjects) {
        const ActionItem* ia = nullptr;
        const ActionItem* ib = nullptr;
        for (const auto& item : a.action.items())
            if (item.subject.name() == subject) ia = &item;
        for (const auto& item : b.action.items())
            if (item.subject.name() == subject) ib = &item;
        if (ia == nullptr || ib == nullptr) continue;
        if (!out.empty()) out += "; ";
        out += std::string(to_token(ia->permission)) + " vs " +
               std::string(to_token(ib->permission)) + " on " + subject;
    }
    return out;
}

} // namespace

std::string explain(const RelationVerdict& verdict, const Rule& a, const Rule& b,
                    const CompileSession& session) {
    const std::string pair = "'" + a.id + "' and '" + b.id + "'";
    switch (verdict.label) {
    case RelationLabel::CompleteRedundancy:
        return "Rules " + pair +
               " cover the same population and direct identical actions; one can be "
               "deduplicated.";
    case RelationLabel::ContainedRedundancy: {
        const bool forward = verdict.condition_relation == ConditionRelationKind::ImpliesForward;
        const std::string& specific = forward ? a.id : b.id;
        const std::string& general = forward ? b.id : a.id;
        return "The population of rule '" + specific + "' lies inside that of rule '" + general +
               "' and both direct identical actions; the specific rule is redundant where it "
               "applies.";
    }
    case RelationLabel::IntrinsicConflict:
        return "Rules " + pair + " cover the exact same population with opposing directives (" +
               permission_pair_text(verdict, a, b) + ").";
    case RelationLabel::IntrinsicDisagreement:
        return "Rules " + pair + " cover the exact same population with differing directives (" +
               permission_pair_text(verdict, a, b) + ").";
    case RelationLabel::ImplicationConflict:
        return "One population of " + pair +
               " contains the other, yet the directives oppose each other (" +
               permission_pair_text(verdict, a, b) + ").";
    case RelationLabel::ImplicationDisagreement:
        return "One population of " + pair +
               " contains the other, with differing directives (" +
               permission_pair_text(verdict, a, b) + ").";
    case RelationLabel::LocalConflict: {
        std::string text = "Rules " + pair +
                           " overlap on a shared patient group; for those patients the "
                           "directives clash (" +
                           permission_pair_text(verdict, a, b) + ").";
        if (verdict.witness) text += " Example patient: " + verdict.witness->to_text(session) + ".";
        return text;
    }
    case RelationLabel::None:
        if (verdict.spec_prior_applied)
            return "No actionable interaction: the specific rule is a declared exception of "
                   "the general one.";
        return "no logical interaction";
    }
    return {};
}

} // namespace concord
