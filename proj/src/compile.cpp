#include "concord/compile.hpp"

#include <algorithm>

#include "concord/errors.hpp"

namespace concord {

namespace {

std::string constraint_to_string(const AtomConstraint& c) {
    switch (c.kind) {
    case AtomConstraint::Kind::IsTrue:
        return "true";
    case AtomConstraint::Kind::Cmp:
        return std::string(to_token(c.cmp)) + " " + rat_to_string(c.value);
    case AtomConstraint::Kind::EnumEq:
        return "= " + c.token;
    case AtomConstraint::Kind::EnumNe:
        return "!= " + c.token;
    }
    return {};
}

int constraint_kind_rank(AtomConstraint::Kind k) { return static_cast<int>(k); }

} // namespace

bool constraint_less(const AtomConstraint& a, const AtomConstraint& b) {
    if (a.kind != b.kind) return constraint_kind_rank(a.kind) < constraint_kind_rank(b.kind);
    switch (a.kind) {
    case AtomConstraint::Kind::IsTrue:
        return false;
    case AtomConstraint::Kind::Cmp:
        if (a.cmp != b.cmp) return a.cmp < b.cmp;
        return a.value < b.value;
    case AtomConstraint::Kind::EnumEq:
    case AtomConstraint::Kind::EnumNe:
        return a.token < b.token;
    }
    return false;
}

// --- CompileSession ------------------------------------------------------------

CompileSession::CompileSession(DocumentMeta meta) : meta_(std::move(meta)) {}

VarId CompileSession::intern_var(const PredicateDef& p, ValueSort sort, const std::string& unit) {
    VarKey key{p.op, p.entity.key(), p.qualifier ? p.qualifier->key() : ""};
    auto it = var_index_.find(key);
    if (it != var_index_.end()) {
        const TheoryVar& existing = vars_[static_cast<std::size_t>(it->second)];
        if (existing.sort != sort)
            throw ValidationError("sort clash on " + existing.display + ": predicate '" + p.id +
                                  "' assigns a different sort");
        if (sort == ValueSort::Real && existing.unit != unit)
            throw ValidationError("unit clash on " + existing.display + ": '" + existing.unit +
                                  "' vs '" + unit + "' (predicate '" + p.id + "')");
        return it->second;
    }

    TheoryVar var;
    var.key = key;
    var.sort = sort;
    var.unit = unit;
    var.display = std::string(to_token(p.op)) + "(" + p.entity.name() +
                  (p.qualifier ? ", " + p.qualifier->name() : "") + ")";
    if (sort == ValueSort::Enum) {
        if (p.op == OperatorKind::Risk) {
            auto domain = meta_.enum_domains.find(p.entity.name());
            if (domain != meta_.enum_domains.end()) {
                var.domain_open = false;
                var.domain = domain->second;
            }
        } else if (p.op == OperatorKind::Stage) {
            var.domain_open = false;
            var.domain = meta_.stage_sorts.at(p.entity.name()).domain;
        }
    }
    const VarId id = static_cast<VarId>(vars_.size());
    vars_.push_back(std::move(var));
    var_index_.emplace(std::move(key), id);
    return id;
}

AtomId CompileSession::intern_atom(VarId var, AtomConstraint constraint) {
    auto key = std::make_pair(var, constraint_to_string(constraint));
    auto it = atom_index_.find(key);
    if (it != atom_index_.end()) return it->second;
    const AtomId id = static_cast<AtomId>(atoms_.size());
    atoms_.push_back(TheoryAtom{var, std::move(constraint)});
    atom_index_.emplace(std::move(key), id);
    return id;
}

void CompileSession::mention_token(VarId var, const std::string& token) {
    TheoryVar& v = vars_[static_cast<std::size_t>(var)];
    if (!v.domain_open) {
        if (std::find(v.domain.begin(), v.domain.end(), token) == v.domain.end())
            throw ValidationError("token '" + token + "' is outside the declared domain of " +
                                  v.display);
        return;
    }
    auto it = std::lower_bound(v.domain.begin(), v.domain.end(), token);
    if (it == v.domain.end() || *it != token) v.domain.insert(it, token);
}

AtomId CompileSession::compile_predicate(const PredicateDef& p) {
    ValueSort sort;
    if (p.op == OperatorKind::Stage) {
        auto it = meta_.stage_sorts.find(p.entity.name());
        if (it == meta_.stage_sorts.end())
            throw ValidationError("STAGE predicate '" + p.id + "' on " + p.entity.name() +
                                  " has no stage sort declaration");
        sort = it->second.is_integer ? ValueSort::Integer : ValueSort::Enum;
    } else {
        sort = operator_sort(p.op);
    }

    const std::string unit = (sort == ValueSort::Real && p.unit) ? *p.unit : "";
    const VarId var = intern_var(p, sort, unit);

    AtomConstraint constraint;
    switch (sort) {
    case ValueSort::Boolean:
        constraint.kind = AtomConstraint::Kind::IsTrue;
        break;
    case ValueSort::Real:
        constraint.kind = AtomConstraint::Kind::Cmp;
        constraint.cmp = *p.comparator;
        constraint.value = std::get<Rat>(*p.rhs);
        break;
    case ValueSort::Integer:
        constraint.kind = AtomConstraint::Kind::Cmp;
        constraint.cmp = *p.comparator;
        constraint.value = Rat(std::get<std::int64_t>(*p.rhs));
        break;
    case ValueSort::Enum:
        constraint.kind = *p.comparator == Comparator::Eq ? AtomConstraint::Kind::EnumEq
                                                          : AtomConstraint::Kind::EnumNe;
        constraint.token = std::get<std::string>(*p.rhs);
        mention_token(var, constraint.token);
        break;
    }
    return intern_atom(var, std::move(constraint));
}

std::vector<std::string> CompileSession::enum_domain(VarId id) const {
    const TheoryVar& v = var(id);
    std::vector<std::string> domain = v.domain;
    if (v.domain_open) domain.push_back(kEnumSentinel);
    return domain;
}

std::string CompileSession::atom_display(AtomId id) const {
    const TheoryAtom& a = atom(id);
    const TheoryVar& v = var(a.var);
    switch (a.constraint.kind) {
    case AtomConstraint::Kind::IsTrue:
        return v.display;
    case AtomConstraint::Kind::Cmp: {
        static constexpr const char* kCmp[] = {"<", "<=", ">", ">=", "=", "!="};
        std::string out = v.display + " " + kCmp[static_cast<int>(a.constraint.cmp)] + " " +
                          rat_to_string(a.constraint.value);
        if (!v.unit.empty()) out += " " + v.unit;
        return out;
    }
    case AtomConstraint::Kind::EnumEq:
        return v.display + " = " + a.constraint.token;
    case AtomConstraint::Kind::EnumNe:
        return v.display + " != " + a.constraint.token;
    }
    return {};
}

// --- Formula ---------------------------------------------------------------------

Formula Formula::constant(bool value) {
    Formula f;
    f.kind = value ? Kind::True : Kind::False;
    return f;
}

Formula Formula::lit(AtomId atom, bool negated) {
    Formula f;
    f.kind = Kind::Lit;
    f.atom = atom;
    f.negated = negated;
    return f;
}

Formula Formula::conjunction(std::vector<Formula> children) {
    std::vector<Formula> kept;
    for (auto& child : children) {
        if (child.kind == Kind::False) return constant(false);
        if (child.kind == Kind::True) continue;
        kept.push_back(std::move(child));
    }
    if (kept.empty()) return constant(true);
    if (kept.size() == 1) return std::move(kept.front());
    Formula f;
    f.kind = Kind::And;
    f.children = std::move(kept);
    return f;
}

Formula Formula::disjunction(std::vector<Formula> children) {
    std::vector<Formula> kept;
    for (auto& child : children) {
        if (child.kind == Kind::True) return constant(true);
        if (child.kind == Kind::False) continue;
        kept.push_back(std::move(child));
    }
    if (kept.empty()) return constant(false);
    if (kept.size() == 1) return std::move(kept.front());
    Formula f;
    f.kind = Kind::Or;
    f.children = std::move(kept);
    return f;
}

Formula negate(const Formula& f) {
    switch (f.kind) {
    case Formula::Kind::True:
        return Formula::constant(false);
    case Formula::Kind::False:
        return Formula::constant(true);
    case Formula::Kind::Lit:
        return Formula::lit(f.atom, !f.negated);
    case Formula::Kind::And:
    case Formula::Kind::Or: {
        std::vector<Formula> flipped;
        flipped.reserve(f.children.size());
        for (const auto& child : f.children) flipped.push_back(negate(child));
        return f.kind == Formula::Kind::And ? Formula::disjunction(std::move(flipped))
                                            : Formula::conjunction(std::move(flipped));
    }
    }
    return Formula::constant(true);
}

namespace {

Formula compile_node(const ConditionExpr& node, bool negated, const Document& doc,
                     CompileSession& session) {
    switch (node.kind) {
    case ConditionExpr::Kind::Ref: {
        const PredicateDef* p = doc.find_predicate(node.ref);
        if (p == nullptr)
            throw ValidationError("unresolved predicate reference '" + node.ref + "'");
        return Formula::lit(session.compile_predicate(*p), negated);
    }
    case ConditionExpr::Kind::Not:
        return compile_node(node.children.front(), !negated, doc, session);
    case ConditionExpr::Kind::And:
    case ConditionExpr::Kind::Or: {
        std::vector<Formula> children;
        children.reserve(node.children.size());
        for (const auto& child : node.children)
            children.push_back(compile_node(child, negated, doc, session));
        const bool conjunctive = (node.kind == ConditionExpr::Kind::And) != negated;
        return conjunctive ? Formula::conjunction(std::move(children))
                           : Formula::disjunction(std::move(children));
    }
    }
    return Formula::constant(true);
}

} // namespace

Formula compile_condition(const ConditionExpr& condition, const Document& doc,
                          CompileSession& session) {
    return compile_node(condition.normalized(), false, doc, session);
}

namespace {

void collect_atoms(const Formula& f, std::vector<AtomId>& out) {
    if (f.kind == Formula::Kind::Lit) {
        out.push_back(f.atom);
        return;
    }
    for (const auto& child : f.children) collect_atoms(child, out);
}

} // namespace

std::vector<AtomId> atom_universe(const CompileSession& session,
                                  std::span<const Formula> formulas) {
    std::vector<AtomId> ids;
    for (const auto& f : formulas) collect_atoms(f, ids);
    std::sort(ids.begin(), ids.end(), [&session](AtomId a, AtomId b) {
        const TheoryAtom& ta = session.atom(a);
        const TheoryAtom& tb = session.atom(b);
        const VarKey& ka = session.var(ta.var).key;
        const VarKey& kb = session.var(tb.var).key;
        if (ka != kb) return ka < kb;
        return constraint_less(ta.constraint, tb.constraint);
    });
    ids.erase(std::unique(ids.begin(), ids.end()), ids.end());
    return ids;
}

std::string universe_to_string(const CompileSession& session, std::span<const AtomId> universe) {
    std::string out;
    for (AtomId id : universe) {
        out += session.atom_display(id);
        out += '\n';
    }
    return out;
}

} // namespace concord
