#include <algorithm>
#include <string>

#include "concord/solver.hpp"

namespace concord {

namespace {

std::string symbol(const TheoryVar& var) { return "|" + var.display + "|"; }

std::string int_literal(std::int64_t v) {
    if (v < 0) return "(- " + std::to_string(-v) + ")";
    return std::to_string(v);
}

// Exact rational term; never a floating-point literal.
std::string real_literal(const Rat& r) {
    const bool negative = r.numerator() < 0;
    const std::int64_t num = negative ? -r.numerator() : r.numerator();
    const std::string body =
        "(/ " + std::to_string(num) + " " + std::to_string(r.denominator()) + ")";
    return negative ? "(- " + body + ")" : body;
}

std::string numeric_literal(const TheoryVar& var, const Rat& value) {
    if (var.sort == ValueSort::Integer) return int_literal(value.numerator());
    return real_literal(value);
}

int enum_index(const CompileSession& session, VarId var, const std::string& token) {
    const auto domain = session.enum_domain(var);
    const auto it = std::find(domain.begin(), domain.end(), token);
    return static_cast<int>(it - domain.begin());
}

std::string atom_term(const CompileSession& session, const TheoryAtom& atom) {
    const TheoryVar& var = session.var(atom.var);
    const std::string sym = symbol(var);
    switch (atom.constraint.kind) {
    case AtomConstraint::Kind::IsTrue:
        return sym;
    case AtomConstraint::Kind::Cmp: {
        const std::string rhs = numeric_literal(var, atom.constraint.value);
        switch (atom.constraint.cmp) {
        case Comparator::Lt: return "(< " + sym + " " + rhs + ")";
        case Comparator::Le: return "(<= " + sym + " " + rhs + ")";
        case Comparator::Gt: return "(> " + sym + " " + rhs + ")";
        case Comparator::Ge: return "(>= " + sym + " " + rhs + ")";
        case Comparator::Eq: return "(= " + sym + " " + rhs + ")";
        case Comparator::Ne: return "(not (= " + sym + " " + rhs + "))";
        }
        return {};
    }
    case AtomConstraint::Kind::EnumEq:
        return "(= " + sym + " " + std::to_string(enum_index(session, atom.var, atom.constraint.token)) + ")";
    case AtomConstraint::Kind::EnumNe:
        return "(not (= " + sym + " " +
               std::to_string(enum_index(session, atom.var, atom.constraint.token)) + "))";
    }
    return {};
}

std::string formula_term(const CompileSession& session, const Formula& f) {
    switch (f.kind) {
    case Formula::Kind::True:
        return "true";
    case Formula::Kind::False:
        return "false";
    case Formula::Kind::Lit: {
        const std::string term = atom_term(session, session.atom(f.atom));
        return f.negated ? "(not " + term + ")" : term;
    }
    case Formula::Kind::And:
    case Formula::Kind::Or: {
        std::string out = f.kind == Formula::Kind::And ? "(and" : "(or";
        for (const auto& child : f.children) out += " " + formula_term(session, child);
        return out + ")";
    }
    }
    return {};
}

} // namespace

std::string emit_smtlib(const CompileSession& session, const Formula& query,
                        std::span<const CompiledAxiom> axioms) {
    std::vector<Formula> parts;
    parts.push_back(query);
    for (const auto& axiom : axioms) parts.push_back(axiom.clause);
    const std::vector<AtomId> universe = atom_universe(session, parts);

    std::vector<VarId> vars;
    for (AtomId id : universe) vars.push_back(session.atom(id).var);
    std::sort(vars.begin(), vars.end());
    vars.erase(std::unique(vars.begin(), vars.end()), vars.end());

    bool has_real = false;
    bool has_int = false;
    for (VarId v : vars) {
        const ValueSort sort = session.var(v).sort;
        has_real |= sort == ValueSort::Real;
        has_int |= sort == ValueSort::Integer || sort == ValueSort::Enum;
    }
    std::string logic = "QF_LIA";
    if (has_real && has_int) logic = "QF_LIRA";
    else if (has_real) logic = "QF_LRA";

    std::string out = "(set-logic " + logic + ")\n";
    for (VarId v : vars) {
        const TheoryVar& var = session.var(v);
        switch (var.sort) {
        case ValueSort::Boolean:
            out += "(declare-const " + symbol(var) + " Bool)\n";
            break;
        case ValueSort::Real:
            out += "(declare-const " + symbol(var) + " Real)\n";
            break;
        case ValueSort::Integer:
            out += "(declare-const " + symbol(var) + " Int)\n";
            break;
        case ValueSort::Enum: {
            const auto domain = session.enum_domain(v);
            out += "(declare-const " + symbol(var) + " Int)\n";
            out += "; " + var.display + " domain:";
            for (std::size_t i = 0; i < domain.size(); ++i)
                out += " " + std::to_string(i) + "=" + domain[i];
            out += "\n(assert (and (>= " + symbol(var) + " 0) (< " + symbol(var) + " " +
                   std::to_string(domain.size()) + ")))\n";
            break;
        }
        }
    }
    for (const auto& axiom : axioms) {
        out += "(assert (=> " + formula_term(session, axiom.antecedent) + " " +
               formula_term(session, axiom.consequent) + "))\n";
    }
    out += "(assert " + formula_term(session, query) + ")\n";
    out += "(check-sat)\n";
    return out;
}

} // namespace concord
