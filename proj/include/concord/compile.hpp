#pragma once

#include <compare>
#include <cstdint>
#include <map>
#include <span>
#include <string>
#include <vector>

#include "concord/model.hpp"

namespace concord {

/// Identity of a patient attribute: one variable per distinct
/// (operator, entity, qualifier) key across a whole analysis session.
struct VarKey {
    OperatorKind op = OperatorKind::Has;
    std::string entity_key;
    std::string qualifier_key; // empty unless ASSESS

    auto operator<=>(const VarKey&) const = default;
};

struct TheoryVar {
    VarKey key;
    ValueSort sort = ValueSort::Boolean;
    std::string unit;    // Real vars only, canonical
    std::string display; // "VALUE(meas.egfr)"

    // Enum vars: declared domains are closed; open domains accumulate the
    // tokens mentioned by compiled predicates and implicitly contain one
    // fresh sentinel value beyond them.
    bool domain_open = true;
    std::vector<std::string> domain; // sorted when open, declared order when closed
};

/// Sentinel token standing for "any value outside the mentioned tokens" of
/// an open enum domain.
inline constexpr const char* kEnumSentinel = "__other__";

struct AtomConstraint {
    enum class Kind { IsTrue, Cmp, EnumEq, EnumNe };

    Kind kind = Kind::IsTrue;
    Comparator cmp = Comparator::Lt; // Kind::Cmp
    Rat value;                       // Kind::Cmp
    std::string token;               // EnumEq / EnumNe

    bool operator==(const AtomConstraint&) const = default;
};

/// True when the two constraints differ and `canonical_order` would place
/// `a` before `b`. Ordering: kind, comparator, value, token.
bool constraint_less(const AtomConstraint& a, const AtomConstraint& b);

struct TheoryAtom {
    std::int32_t var = -1;
    AtomConstraint constraint;
};

using AtomId = std::int32_t;
using VarId = std::int32_t;

/// Interning environment for theory variables and atoms. Single-writer
/// during compilation; the compiled artifacts are immutable afterwards.
class CompileSession {
public:
    explicit CompileSession(DocumentMeta meta = {});

    /// Compiles one predicate to its (deduplicated) theory atom. The same
    /// PredicateDef always yields the identical atom. Throws ValidationError
    /// on a sort or unit clash with an existing variable of the same key.
    AtomId compile_predicate(const PredicateDef& p);

    const std::vector<TheoryVar>& vars() const noexcept { return vars_; }
    const std::vector<TheoryAtom>& atoms() const noexcept { return atoms_; }
    const TheoryVar& var(VarId id) const { return vars_[static_cast<std::size_t>(id)]; }
    const TheoryAtom& atom(AtomId id) const { return atoms_[static_cast<std::size_t>(id)]; }
    const DocumentMeta& meta() const noexcept { return meta_; }

    /// Effective enum domain including the sentinel for open domains.
    std::vector<std::string> enum_domain(VarId id) const;

    std::string atom_display(AtomId id) const;

private:
    VarId intern_var(const PredicateDef& p, ValueSort sort, const std::string& unit);
    AtomId intern_atom(VarId var, AtomConstraint constraint);
    void mention_token(VarId var, const std::string& token);

    DocumentMeta meta_;
    std::vector<TheoryVar> vars_;
    std::vector<TheoryAtom> atoms_;
    std::map<VarKey, VarId> var_index_;
    std::map<std::pair<VarId, std::string>, AtomId> atom_index_; // keyed by rendered constraint
};

/// Negation-normal formula over theory atoms: negation only on literals,
/// boolean constants folded away during construction.
struct Formula {
    enum class Kind { True, False, Lit, And, Or };

    Kind kind = Kind::True;
    AtomId atom = -1;
    bool negated = false;
    std::vector<Formula> children;

    static Formula constant(bool value);
    static Formula lit(AtomId atom, bool negated = false);
    static Formula conjunction(std::vector<Formula> children);
    static Formula disjunction(std::vector<Formula> children);
};

/// NNF dual: swaps AND/OR, flips literal signs.
Formula negate(const Formula& f);

/// Compiles a condition into an equivalent NNF formula, interning atoms in
/// the session. `doc` provides predicate definitions for REF resolution.
Formula compile_condition(const ConditionExpr& condition, const Document& doc,
                          CompileSession& session);

/// Deduplicated atoms of the given formulas in canonical order (variable key,
/// then constraint); independent of formula order and duplication.
std::vector<AtomId> atom_universe(const CompileSession& session, std::span<const Formula> formulas);

/// Renders the universe as one line per atom (golden-test format).
std::string universe_to_string(const CompileSession& session, std::span<const AtomId> universe);

} // namespace concord
