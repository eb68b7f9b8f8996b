#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include <functional>
#include <random>

#include "concord/compile.hpp"
#include "concord/document.hpp"
#include "concord/errors.hpp"
#include "support/fixtures.hpp"
#include "support/generators.hpp"
#include "support/oracle.hpp"

using namespace concord;
namespace ct = concord::testing;

namespace {

PredicateDef value_predicate(const std::string& id, const std::string& entity, Comparator cmp,
                             Rat value, const std::string& unit = "") {
    PredicateDef p;
    p.id = id;
    p.op = OperatorKind::Value;
    p.entity = parse_entity(entity, "t");
    p.comparator = cmp;
    p.rhs = value;
    p.unit = unit;
    return p;
}

PredicateDef bool_predicate(const std::string& id, const std::string& entity,
                            OperatorKind op = OperatorKind::Has) {
    PredicateDef p;
    p.id = id;
    p.op = op;
    p.entity = parse_entity(entity, "t");
    return p;
}

} // namespace

TEST_CASE("compile_predicate: comparison, boolean, and percent-delta atoms") {
    CompileSession session;
    const AtomId egfr = session.compile_predicate(
        value_predicate("p1", "meas.egfr", Comparator::Lt, Rat(45), "mL/min/1.73m2"));
    const TheoryAtom& atom = session.atom(egfr);
    CHECK(atom.constraint.kind == AtomConstraint::Kind::Cmp);
    CHECK(atom.constraint.cmp == Comparator::Lt);
    CHECK(atom.constraint.value == Rat(45));
    CHECK(session.var(atom.var).sort == ValueSort::Real);
    CHECK(session.var(atom.var).display == "VALUE(meas.egfr)");

    const AtomId t2dm = session.compile_predicate(bool_predicate("p2", "cond.t2dm"));
    CHECK(session.atom(t2dm).constraint.kind == AtomConstraint::Kind::IsTrue);
    CHECK(session.var(session.atom(t2dm).var).sort == ValueSort::Boolean);

    PredicateDef delta;
    delta.id = "p3";
    delta.op = OperatorKind::Delta;
    delta.entity = parse_entity("meas.creatinine", "t");
    delta.comparator = Comparator::Ge;
    delta.rhs = Rat(50);
    delta.unit = "percent";
    const AtomId d = session.compile_predicate(delta);
    CHECK(session.atom(d).constraint.cmp == Comparator::Ge);
    CHECK(session.var(session.atom(d).var).unit == "percent");
}

TEST_CASE("compile_predicate is deterministic and reuses variables by key") {
    CompileSession session;
    const auto p = value_predicate("a", "meas.egfr", Comparator::Lt, Rat(45));
    const auto q = value_predicate("b", "meas.egfr", Comparator::Ge, Rat(30));
    const AtomId a1 = session.compile_predicate(p);
    const AtomId a2 = session.compile_predicate(p);
    CHECK(a1 == a2);
    const AtomId b = session.compile_predicate(q);
    CHECK(session.atom(a1).var == session.atom(b).var);
}

TEST_CASE("textual synonyms stay distinct unless codes match") {
    CompileSession session;
    auto lhs = value_predicate("a", "meas.egfr", Comparator::Lt, Rat(45));
    auto rhs = value_predicate("b", "meas.gfr_estimate", Comparator::Lt, Rat(45));
    CHECK(session.atom(session.compile_predicate(lhs)).var !=
          session.atom(session.compile_predicate(rhs)).var);

    auto coded = [](std::string id, std::string local) {
        auto p = value_predicate(std::move(id), "meas." + local, Comparator::Lt, Rat(45));
        p.entity.code_system = CodeSystem::Loinc;
        p.entity.code = "33914-3";
        return p;
    };
    CompileSession coded_session;
    CHECK(coded_session.atom(coded_session.compile_predicate(coded("a", "egfr"))).var ==
          coded_session.atom(coded_session.compile_predicate(coded("b", "gfr_estimate"))).var);
}

TEST_CASE("sort and unit clashes are rejected") {
    CompileSession session;
    session.compile_predicate(value_predicate("a", "meas.egfr", Comparator::Lt, Rat(45), "mL/min/1.73m2"));
    CHECK_THROWS_WITH_AS(
        session.compile_predicate(value_predicate("b", "meas.egfr", Comparator::Lt, Rat(1), "mmol/L")),
        doctest::Contains("unit clash"), ValidationError);
}

TEST_CASE("compile_condition produces NNF with negation only on literals") {
    Document doc;
    doc.predicates = {bool_predicate("a", "cond.a"), bool_predicate("b", "cond.b"),
                      bool_predicate("c", "cond.c")};
    CompileSession session;

    // NOT(NOT(a)) reduces to the bare literal.
    const ConditionExpr double_neg =
        ConditionExpr::make_not(ConditionExpr::make_not(ConditionExpr::make_ref("a")));
    const Formula lit = compile_condition(double_neg, doc, session);
    CHECK(lit.kind == Formula::Kind::Lit);
    CHECK_FALSE(lit.negated);

    // AND(a, OR(b, NOT c)): only c ends up negated.
    const ConditionExpr tree = ConditionExpr::make_and(
        {ConditionExpr::make_ref("a"),
         ConditionExpr::make_or({ConditionExpr::make_ref("b"),
                                 ConditionExpr::make_not(ConditionExpr::make_ref("c"))})});
    const Formula f = compile_condition(tree, doc, session);
    REQUIRE(f.kind == Formula::Kind::And);
    REQUIRE(f.children.size() == 2);
    CHECK_FALSE(f.children[0].negated);
    const Formula& disj = f.children[1];
    REQUIRE(disj.kind == Formula::Kind::Or);
    CHECK_FALSE(disj.children[0].negated);
    CHECK(disj.children[1].negated);

    // De Morgan pushes negation across NOT(AND(...)).
    const Formula pushed =
        compile_condition(ConditionExpr::make_not(tree).normalized(), doc, session);
    CHECK(pushed.kind == Formula::Kind::Or);
}

TEST_CASE("fixture condition compiles to the expected four-atom conjunction") {
    const Document doc = ct::load_fixture_corpus();
    CompileSession session(doc.meta);
    const Rule* rule = doc.find_rule("dm_ckd_recommend_empagliflozin");
    REQUIRE(rule != nullptr);
    const Formula f = compile_condition(rule->condition, doc, session);
    REQUIRE(f.kind == Formula::Kind::And);
    CHECK(f.children.size() == 4);
    const std::vector<Formula> fs{f};
    const std::vector<AtomId> universe = atom_universe(session, fs);
    CHECK(universe.size() == 4);
    const std::string rendered = universe_to_string(session, universe);
    CHECK(rendered.find("HAS(cond.t2dm)") != std::string::npos);
    CHECK(rendered.find("VALUE(meas.egfr) >= 30") != std::string::npos);
    CHECK(rendered.find("VALUE(meas.egfr) < 45") != std::string::npos);
}

TEST_CASE("atom_universe deduplicates, orders canonically, handles empty input") {
    Document doc;
    doc.predicates = {bool_predicate("p", "cond.p"), bool_predicate("q", "cond.q"),
                      bool_predicate("r", "cond.r")};
    CompileSession session;
    const Formula pq = compile_condition(
        ConditionExpr::make_and({ConditionExpr::make_ref("p"), ConditionExpr::make_ref("q")}), doc,
        session);
    const Formula qr = compile_condition(
        ConditionExpr::make_and({ConditionExpr::make_ref("q"), ConditionExpr::make_ref("r")}), doc,
        session);
    const std::vector<Formula> both{pq, qr};
    CHECK(atom_universe(session, both).size() == 3);

    const std::vector<Formula> none{};
    CHECK(atom_universe(session, none).empty());

    // Shared atoms listed once even when formulas repeat them.
    const std::vector<Formula> repeated{pq, pq};
    CHECK(atom_universe(session, repeated).size() == 2);
}

TEST_CASE("compiling the same document twice yields byte-identical universes") {
    const Document doc = ct::load_fixture_corpus();
    auto render = [&doc]() {
        CompileSession session(doc.meta);
        std::vector<Formula> formulas;
        for (const auto& rule : doc.rules)
            formulas.push_back(compile_condition(rule.condition, doc, session));
        return universe_to_string(session, atom_universe(session, formulas));
    };
    CHECK(render() == render());
}

TEST_CASE("equisatisfiability: compiled formula agrees with the condition on every grid point") {
    std::mt19937_64 rng(20240811);
    for (int round = 0; round < 300; ++round) {
        DocumentMeta meta;
        Document doc;
        doc.predicates = [&] {
            ct::RandomCase c = ct::random_formula_case(rng, 3, 5);
            meta = c.meta;
            return c.doc.predicates;
        }();
        doc.meta = meta;
        std::vector<std::string> ids;
        for (const auto& p : doc.predicates) ids.push_back(p.id);

        // Random condition tree over those predicates.
        std::uniform_int_distribution<std::size_t> pick_id(0, ids.size() - 1);
        std::function<ConditionExpr(int)> build = [&](int depth) -> ConditionExpr {
            if (depth <= 0 || rng() % 3 == 0) {
                ConditionExpr ref = ConditionExpr::make_ref(ids[pick_id(rng)]);
                return rng() % 3 == 0 ? ConditionExpr::make_not(std::move(ref)) : ref;
            }
            std::vector<ConditionExpr> children;
            const int arity = 2 + static_cast<int>(rng() % 2);
            for (int i = 0; i < arity; ++i) children.push_back(build(depth - 1));
            ConditionExpr node = rng() % 2 == 0 ? ConditionExpr::make_and(std::move(children))
                                                : ConditionExpr::make_or(std::move(children));
            return rng() % 4 == 0 ? ConditionExpr::make_not(std::move(node)) : node;
        };
        const ConditionExpr condition = build(2).normalized();

        CompileSession session(meta);
        for (const auto& p : doc.predicates) session.compile_predicate(p);
        const Formula compiled = compile_condition(condition, doc, session);

        // The universe of the compiled formula may omit variables the
        // condition never mentions; valuations cover all session atoms.
        std::vector<AtomId> all_atoms;
        for (std::size_t i = 0; i < session.atoms().size(); ++i)
            all_atoms.push_back(static_cast<AtomId>(i));
        for (const auto& valuation : ct::all_valuations(session, all_atoms)) {
            CHECK(ct::formula_holds(session, compiled, valuation) ==
                  ct::condition_holds(condition, doc, session, valuation));
        }
    }
}
