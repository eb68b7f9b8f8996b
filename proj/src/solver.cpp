#include "concord/solver.hpp"

#include <algorithm>
#include <unordered_map>

#include "concord/errors.hpp"

namespace concord {

namespace {

enum class Tri { False, True, Unknown };

// Comparator flip for a negated literal: the fragment's comparator set is
// closed under negation, so a negated comparison stays a single comparison.
Comparator negate_cmp(Comparator c) {
    switch (c) {
    case Comparator::Lt: return Comparator::Ge;
    case Comparator::Le: return Comparator::Gt;
    case Comparator::Gt: return Comparator::Le;
    case Comparator::Ge: return Comparator::Lt;
    case Comparator::Eq: return Comparator::Ne;
    case Comparator::Ne: return Comparator::Eq;
    }
    return c;
}

bool cmp_holds(const Rat& lhs, Comparator c, const Rat& rhs) {
    switch (c) {
    case Comparator::Lt: return lhs < rhs;
    case Comparator::Le: return lhs <= rhs;
    case Comparator::Gt: return lhs > rhs;
    case Comparator::Ge: return lhs >= rhs;
    case Comparator::Eq: return lhs == rhs;
    case Comparator::Ne: return lhs != rhs;
    }
    return false;
}

// A positive-form theory literal after folding the assignment's sign into
// the constraint.
struct NormLiteral {
    AtomConstraint::Kind kind;
    Comparator cmp = Comparator::Lt;
    Rat value;
    std::string token;
    bool bool_value = true; // IsTrue literals
};

NormLiteral normalize_literal(const AtomConstraint& c, bool assigned_true) {
    NormLiteral lit;
    lit.kind = c.kind;
    switch (c.kind) {
    case AtomConstraint::Kind::IsTrue:
        lit.bool_value = assigned_true;
        break;
    case AtomConstraint::Kind::Cmp:
        lit.cmp = assigned_true ? c.cmp : negate_cmp(c.cmp);
        lit.value = c.value;
        break;
    case AtomConstraint::Kind::EnumEq:
        lit.kind = assigned_true ? AtomConstraint::Kind::EnumEq : AtomConstraint::Kind::EnumNe;
        lit.token = c.token;
        break;
    case AtomConstraint::Kind::EnumNe:
        lit.kind = assigned_true ? AtomConstraint::Kind::EnumNe : AtomConstraint::Kind::EnumEq;
        lit.token = c.token;
        break;
    }
    return lit;
}

bool literal_holds_numeric(const NormLiteral& lit, const Rat& candidate) {
    return cmp_holds(candidate, lit.cmp, lit.value);
}

/// Feasibility of a conjunction of single-variable numeric comparisons,
/// decided by sweeping candidate points: every threshold, midpoints of
/// consecutive thresholds, and one point beyond each end. For integer
/// variables only integer candidates around each threshold are swept, which
/// covers the least feasible integer (it sits on a ceiling of a bound or one
/// past an excluded point).
std::optional<Rat> sweep_numeric(const std::vector<NormLiteral>& literals, bool integer_sorted) {
    std::vector<Rat> thresholds;
    for (const auto& lit : literals) thresholds.push_back(lit.value);
    std::sort(thresholds.begin(), thresholds.end());
    thresholds.erase(std::unique(thresholds.begin(), thresholds.end()), thresholds.end());

    std::vector<Rat> candidates;
    if (thresholds.empty()) {
        candidates.push_back(Rat(0));
    } else if (integer_sorted) {
        for (const Rat& t : thresholds) {
            const std::int64_t f = rat_floor(t);
            const std::int64_t c = rat_ceil(t);
            for (std::int64_t v : {f - 1, f, f + 1, c, c + 1}) candidates.push_back(Rat(v));
        }
    } else {
        candidates = thresholds;
        for (std::size_t i = 0; i + 1 < thresholds.size(); ++i)
            candidates.push_back((thresholds[i] + thresholds[i + 1]) / 2);
        candidates.push_back(thresholds.front() - 1);
        candidates.push_back(thresholds.back() + 1);
    }
    std::sort(candidates.begin(), candidates.end());
    candidates.erase(std::unique(candidates.begin(), candidates.end()), candidates.end());

    for (const Rat& candidate : candidates) {
        const bool ok = std::all_of(literals.begin(), literals.end(), [&](const NormLiteral& lit) {
            return literal_holds_numeric(lit, candidate);
        });
        if (ok) return candidate;
    }
    return std::nullopt;
}

std::optional<std::string> pick_enum_value(const std::vector<NormLiteral>& literals,
                                           const std::vector<std::string>& domain) {
    std::optional<std::string> required;
    std::vector<std::string_view> excluded;
    for (const auto& lit : literals) {
        if (lit.kind == AtomConstraint::Kind::EnumEq) {
            if (required.has_value() && *required != lit.token) return std::nullopt;
            required = lit.token;
        } else {
            excluded.push_back(lit.token);
        }
    }
    auto is_excluded = [&excluded](std::string_view token) {
        return std::find(excluded.begin(), excluded.end(), token) != excluded.end();
    };
    if (required.has_value()) {
        if (is_excluded(*required)) return std::nullopt;
        if (std::find(domain.begin(), domain.end(), *required) == domain.end()) return std::nullopt;
        return required;
    }
    for (const auto& token : domain) {
        if (!is_excluded(token)) return token;
    }
    return std::nullopt;
}

class Search {
public:
    Search(const CompileSession& session, const Formula& query, std::span<const Formula> axioms,
           const SolveLimits& limits)
        : session_(session), limits_(limits) {
        std::vector<Formula> parts;
        parts.push_back(query);
        parts.insert(parts.end(), axioms.begin(), axioms.end());
        universe_ = atom_universe(session, parts);
        query_ = Formula::conjunction(std::move(parts));

        position_of_.reserve(universe_.size());
        for (std::size_t i = 0; i < universe_.size(); ++i)
            position_of_[universe_[i]] = i;
        assignment_.assign(universe_.size(), Tri::Unknown);

        for (std::size_t i = 0; i < universe_.size(); ++i) {
            const VarId var = session.atom(universe_[i]).var;
            atoms_of_var_[var].push_back(i);
        }
    }

    SatResult run() {
        if (query_.kind == Formula::Kind::False) return {};
        SatResult result;
        if (dfs(0, result)) return result;
        return {};
    }

private:
    bool dfs(std::size_t next, SatResult& result) {
        if (++nodes_ > limits_.max_nodes)
            throw CapacityError("satisfiability search exceeded " +
                                std::to_string(limits_.max_nodes) + " nodes");
        switch (evaluate(query_)) {
        case Tri::False:
            return false;
        case Tri::True:
            result.sat = true;
            result.model = extract_model();
            return true;
        case Tri::Unknown:
            break;
        }
        // An unknown verdict needs at least one unassigned atom.
        while (assignment_[next] != Tri::Unknown) ++next;
        for (const Tri branch : {Tri::True, Tri::False}) {
            assignment_[next] = branch;
            if (var_feasible(session_.atom(universe_[next]).var) && dfs(next + 1, result))
                return true;
            assignment_[next] = Tri::Unknown;
        }
        return false;
    }

    Tri evaluate(const Formula& f) const {
        switch (f.kind) {
        case Formula::Kind::True:
            return Tri::True;
        case Formula::Kind::False:
            return Tri::False;
        case Formula::Kind::Lit: {
            const Tri value = assignment_[position_of_.at(f.atom)];
            if (value == Tri::Unknown) return Tri::Unknown;
            const bool holds = (value == Tri::True) != f.negated;
            return holds ? Tri::True : Tri::False;
        }
        case Formula::Kind::And: {
            bool unknown = false;
            for (const auto& child : f.children) {
                const Tri v = evaluate(child);
                if (v == Tri::False) return Tri::False;
                if (v == Tri::Unknown) unknown = true;
            }
            return unknown ? Tri::Unknown : Tri::True;
        }
        case Formula::Kind::Or: {
            bool unknown = false;
            for (const auto& child : f.children) {
                const Tri v = evaluate(child);
                if (v == Tri::True) return Tri::True;
                if (v == Tri::Unknown) unknown = true;
            }
            return unknown ? Tri::Unknown : Tri::False;
        }
        }
        return Tri::Unknown;
    }

    std::vector<NormLiteral> assigned_literals(VarId var) const {
        std::vector<NormLiteral> literals;
        auto it = atoms_of_var_.find(var);
        if (it == atoms_of_var_.end()) return literals;
        for (const std::size_t pos : it->second) {
            if (assignment_[pos] == Tri::Unknown) continue;
            literals.push_back(normalize_literal(session_.atom(universe_[pos]).constraint,
                                                 assignment_[pos] == Tri::True));
        }
        return literals;
    }

    std::optional<ModelValue> var_witness(VarId var) const {
        const TheoryVar& v = session_.var(var);
        const std::vector<NormLiteral> literals = assigned_literals(var);
        switch (v.sort) {
        case ValueSort::Boolean: {
            // One IsTrue atom per boolean variable; any assignment is
            // feasible on its own.
            bool value = false;
            for (const auto& lit : literals) value = lit.bool_value;
            return ModelValue(value);
        }
        case ValueSort::Real:
        case ValueSort::Integer: {
            auto witness = sweep_numeric(literals, v.sort == ValueSort::Integer);
            if (!witness.has_value()) return std::nullopt;
            return ModelValue(*witness);
        }
        case ValueSort::Enum: {
            auto witness = pick_enum_value(literals, session_.enum_domain(var));
            if (!witness.has_value()) return std::nullopt;
            return ModelValue(*witness);
        }
        }
        return std::nullopt;
    }

    bool var_feasible(VarId var) const { return var_witness(var).has_value(); }

    Model extract_model() const {
        Model model;
        for (const auto& [var, _] : atoms_of_var_) {
            auto witness = var_witness(var);
            // Feasibility held at every assignment step, so a witness exists.
            model.values.emplace_back(var, *witness);
        }
        std::sort(model.values.begin(), model.values.end(),
                  [](const auto& a, const auto& b) { return a.first < b.first; });
        return model;
    }

    const CompileSession& session_;
    SolveLimits limits_;
    Formula query_;
    std::vector<AtomId> universe_;
    std::unordered_map<AtomId, std::size_t> position_of_;
    std::map<VarId, std::vector<std::size_t>> atoms_of_var_;
    std::vector<Tri> assignment_;
    std::size_t nodes_ = 0;
};

} // namespace

const ModelValue* Model::find(VarId var) const {
    for (const auto& [v, value] : values) {
        if (v == var) return &value;
    }
    return nullptr;
}

std::string Model::to_text(const CompileSession& session) const {
    std::string out;
    for (const auto& [var, value] : values) {
        if (!out.empty()) out += ", ";
        out += session.var(var).display;
        out += "=";
        if (const bool* b = std::get_if<bool>(&value)) {
            out += *b ? "true" : "false";
        } else if (const Rat* r = std::get_if<Rat>(&value)) {
            out += rat_to_string(*r);
            if (!session.var(var).unit.empty()) out += " " + session.var(var).unit;
        } else {
            out += std::get<std::string>(value);
        }
    }
    return out;
}

SatResult check_sat(const CompileSession& session, const Formula& query,
                    std::span<const Formula> axioms, const SolveLimits& limits) {
    Search search(session, query, axioms, limits);
    return search.run();
}

} // namespace concord
