#include "oracle.hpp"

#include <algorithm>
#include <set>
#include <stdexcept>

namespace concord::testing {

namespace {

bool compare(const Rat& lhs, Comparator cmp, const Rat& rhs) {
    switch (cmp) {
    case Comparator::Lt: return lhs < rhs;
    case Comparator::Le: return lhs <= rhs;
    case Comparator::Gt: return lhs > rhs;
    case Comparator::Ge: return lhs >= rhs;
    case Comparator::Eq: return lhs == rhs;
    case Comparator::Ne: return lhs != rhs;
    }
    return false;
}

std::vector<VarId> universe_vars(const CompileSession& session, std::span<const AtomId> universe) {
    std::vector<VarId> vars;
    for (const AtomId id : universe) vars.push_back(session.atom(id).var);
    std::sort(vars.begin(), vars.end());
    vars.erase(std::unique(vars.begin(), vars.end()), vars.end());
    return vars;
}

} // namespace

std::vector<ModelValue> var_candidates(const CompileSession& session, VarId var,
                                       std::span<const AtomId> universe) {
    const TheoryVar& v = session.var(var);
    switch (v.sort) {
    case ValueSort::Boolean:
        return {ModelValue(false), ModelValue(true)};
    case ValueSort::Real:
    case ValueSort::Integer: {
        std::set<Rat> thresholds;
        for (const AtomId id : universe) {
            const TheoryAtom& atom = session.atom(id);
            if (atom.var == var && atom.constraint.kind == AtomConstraint::Kind::Cmp)
                thresholds.insert(atom.constraint.value);
        }
        std::set<Rat> points;
        if (thresholds.empty()) {
            points.insert(Rat(0));
        } else if (v.sort == ValueSort::Integer) {
            for (const Rat& t : thresholds) {
                for (const std::int64_t base : {rat_floor(t), rat_ceil(t)}) {
                    points.insert(Rat(base - 1));
                    points.insert(Rat(base));
                    points.insert(Rat(base + 1));
                }
            }
        } else {
            std::vector<Rat> sorted(thresholds.begin(), thresholds.end());
            for (const Rat& t : sorted) points.insert(t);
            for (std::size_t i = 0; i + 1 < sorted.size(); ++i)
                points.insert((sorted[i] + sorted[i + 1]) / 2);
            points.insert(sorted.front() - 1);
            points.insert(sorted.back() + 1);
        }
        std::vector<ModelValue> out;
        for (const Rat& p : points) out.emplace_back(p);
        return out;
    }
    case ValueSort::Enum: {
        std::vector<ModelValue> out;
        for (const auto& token : session.enum_domain(var)) out.emplace_back(token);
        return out;
    }
    }
    return {};
}

bool atom_holds(const CompileSession& session, AtomId atom, const Valuation& valuation) {
    const TheoryAtom& a = session.atom(atom);
    const ModelValue& value = valuation.at(a.var);
    switch (a.constraint.kind) {
    case AtomConstraint::Kind::IsTrue:
        return std::get<bool>(value);
    case AtomConstraint::Kind::Cmp:
        return compare(std::get<Rat>(value), a.constraint.cmp, a.constraint.value);
    case AtomConstraint::Kind::EnumEq:
        return std::get<std::string>(value) == a.constraint.token;
    case AtomConstraint::Kind::EnumNe:
        return std::get<std::string>(value) != a.constraint.token;
    }
    return false;
}

bool formula_holds(const CompileSession& session, const Formula& f, const Valuation& valuation) {
    switch (f.kind) {
    case Formula::Kind::True:
        return true;
    case Formula::Kind::False:
        return false;
    case Formula::Kind::Lit:
        return atom_holds(session, f.atom, valuation) != f.negated;
    case Formula::Kind::And:
        return std::all_of(f.children.begin(), f.children.end(), [&](const Formula& child) {
            return formula_holds(session, child, valuation);
        });
    case Formula::Kind::Or:
        return std::any_of(f.children.begin(), f.children.end(), [&](const Formula& child) {
            return formula_holds(session, child, valuation);
        });
    }
    return false;
}

bool predicate_holds(const PredicateDef& p, const CompileSession& session,
                     const Valuation& valuation) {
    const VarKey key{p.op, p.entity.key(), p.qualifier ? p.qualifier->key() : ""};
    for (std::size_t i = 0; i < session.vars().size(); ++i) {
        if (session.vars()[i].key != key) continue;
        const ModelValue& value = valuation.at(static_cast<VarId>(i));
        if (!p.comparator.has_value()) return std::get<bool>(value);
        if (const Rat* r = std::get_if<Rat>(&*p.rhs))
            return compare(std::get<Rat>(value), *p.comparator, *r);
        if (const std::int64_t* n = std::get_if<std::int64_t>(&*p.rhs))
            return compare(std::get<Rat>(value), *p.comparator, Rat(*n));
        const std::string& token = std::get<std::string>(*p.rhs);
        const bool equal = std::get<std::string>(value) == token;
        return *p.comparator == Comparator::Eq ? equal : !equal;
    }
    throw std::logic_error("predicate variable missing from valuation: " + p.id);
}

bool condition_holds(const ConditionExpr& c, const Document& doc, const CompileSession& session,
                     const Valuation& valuation) {
    switch (c.kind) {
    case ConditionExpr::Kind::Ref:
        return predicate_holds(*doc.find_predicate(c.ref), session, valuation);
    case ConditionExpr::Kind::Not:
        return !condition_holds(c.children.front(), doc, session, valuation);
    case ConditionExpr::Kind::And:
        return std::all_of(c.children.begin(), c.children.end(), [&](const ConditionExpr& child) {
            return condition_holds(child, doc, session, valuation);
        });
    case ConditionExpr::Kind::Or:
        return std::any_of(c.children.begin(), c.children.end(), [&](const ConditionExpr& child) {
            return condition_holds(child, doc, session, valuation);
        });
    }
    return false;
}

std::vector<Valuation> all_valuations(const CompileSession& session,
                                      std::span<const AtomId> universe) {
    const std::vector<VarId> vars = universe_vars(session, universe);
    std::vector<std::vector<ModelValue>> candidates;
    for (const VarId var : vars) candidates.push_back(var_candidates(session, var, universe));

    std::vector<Valuation> valuations;
    std::vector<std::size_t> odometer(vars.size(), 0);
    while (true) {
        Valuation valuation;
        for (std::size_t i = 0; i < vars.size(); ++i)
            valuation.emplace(vars[i], candidates[i][odometer[i]]);
        valuations.push_back(std::move(valuation));
        std::size_t i = 0;
        for (; i < vars.size(); ++i) {
            if (++odometer[i] < candidates[i].size()) break;
            odometer[i] = 0;
        }
        if (i == vars.size()) break;
    }
    return valuations;
}

bool oracle_sat(const CompileSession& session, const Formula& f, std::span<const Formula> axioms) {
    std::vector<Formula> parts;
    parts.push_back(f);
    parts.insert(parts.end(), axioms.begin(), axioms.end());
    const std::vector<AtomId> universe = atom_universe(session, parts);
    for (const Valuation& valuation : all_valuations(session, universe)) {
        const bool ok = std::all_of(parts.begin(), parts.end(), [&](const Formula& part) {
            return formula_holds(session, part, valuation);
        });
        if (ok) return true;
    }
    return false;
}

namespace {

// Restatement of the polarity-opposition table: positive or caution against
// negative, or directionally opposite dose adjustments.
bool oracle_oppose(Permission a, Permission b) {
    const auto positive_side = [](Permission p) {
        return p == Permission::Allow || p == Permission::Recommend ||
               p == Permission::Require || p == Permission::Consider ||
               p == Permission::Continue || p == Permission::Caution;
    };
    const auto negative_side = [](Permission p) {
        return p == Permission::Avoid || p == Permission::Contraindicate ||
               p == Permission::Stop;
    };
    if (positive_side(a) && negative_side(b)) return true;
    if (negative_side(a) && positive_side(b)) return true;
    return (a == Permission::ReduceDose && b == Permission::IncreaseDose) ||
           (a == Permission::IncreaseDose && b == Permission::ReduceDose);
}

ActionRelationKind oracle_action_relation(const ActionSet& a, const ActionSet& b) {
    std::map<std::string, Permission> ma;
    std::map<std::string, Permission> mb;
    for (const auto& item : a.items()) ma[item.subject.key()] = item.permission;
    for (const auto& item : b.items()) mb[item.subject.key()] = item.permission;
    if (ma == mb) return ActionRelationKind::Equivalent;
    bool any_overlap = false;
    bool any_conflict = false;
    bool any_difference = false;
    for (const auto& [subject, pa] : ma) {
        auto it = mb.find(subject);
        if (it == mb.end()) continue;
        any_overlap = true;
        if (oracle_oppose(pa, it->second)) any_conflict = true;
        else if (pa != it->second) any_difference = true;
    }
    if (!any_overlap) return ActionRelationKind::Independent;
    if (any_conflict) return ActionRelationKind::Conflict;
    if (any_difference) return ActionRelationKind::Disagreement;
    return ActionRelationKind::PartialAgreement;
}

} // namespace

OracleVerdict oracle_classify(const Analysis& analysis, std::size_t rule_a, std::size_t rule_b) {
    const CompileSession& session = analysis.session();
    const Formula& ca = analysis.condition_formula(rule_a);
    const Formula& cb = analysis.condition_formula(rule_b);

    std::vector<Formula> parts{ca, cb};
    const std::vector<AtomId> universe = atom_universe(session, parts);
    bool a_only = false;
    bool b_only = false;
    bool both = false;
    for (const Valuation& valuation : all_valuations(session, universe)) {
        const bool ha = formula_holds(session, ca, valuation);
        const bool hb = formula_holds(session, cb, valuation);
        a_only |= ha && !hb;
        b_only |= hb && !ha;
        both |= ha && hb;
    }

    OracleVerdict verdict{};
    if (!a_only && !b_only) verdict.condition_relation = ConditionRelationKind::Equivalent;
    else if (!a_only) verdict.condition_relation = ConditionRelationKind::ImpliesForward;
    else if (!b_only) verdict.condition_relation = ConditionRelationKind::ImpliesBackward;
    else if (!both) verdict.condition_relation = ConditionRelationKind::Mutex;
    else verdict.condition_relation = ConditionRelationKind::Intersect;

    verdict.action_relation = oracle_action_relation(analysis.doc().rules[rule_a].action,
                                                     analysis.doc().rules[rule_b].action);

    const bool equivalent = verdict.condition_relation == ConditionRelationKind::Equivalent;
    const bool implies = verdict.condition_relation == ConditionRelationKind::ImpliesForward ||
                         verdict.condition_relation == ConditionRelationKind::ImpliesBackward;
    const bool intersect = verdict.condition_relation == ConditionRelationKind::Intersect;

    verdict.label = RelationLabel::None;
    switch (verdict.action_relation) {
    case ActionRelationKind::Equivalent:
        if (equivalent) verdict.label = RelationLabel::CompleteRedundancy;
        else if (implies) verdict.label = RelationLabel::ContainedRedundancy;
        break;
    case ActionRelationKind::Conflict:
        if (equivalent) verdict.label = RelationLabel::IntrinsicConflict;
        else if (implies) verdict.label = RelationLabel::ImplicationConflict;
        else if (intersect) verdict.label = RelationLabel::LocalConflict;
        break;
    case ActionRelationKind::Disagreement:
        if (equivalent) verdict.label = RelationLabel::IntrinsicDisagreement;
        else if (implies) verdict.label = RelationLabel::ImplicationDisagreement;
        break;
    default:
        break;
    }
    return verdict;
}

} // namespace concord::testing
