#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include <random>

#include "concord/errors.hpp"
#include "concord/solver.hpp"
#include "support/generators.hpp"
#include "support/oracle.hpp"

using namespace concord;
namespace ct = concord::testing;

namespace {

struct MiniEnv {
    CompileSession session;
    AtomId egfr_lt_30;
    AtomId egfr_lt_45;
    AtomId t2dm;
    AtomId hypotension;
    AtomId risk_high;

    MiniEnv() {
        auto value = [](const char* id, Comparator cmp, Rat v) {
            PredicateDef p;
            p.id = id;
            p.op = OperatorKind::Value;
            p.entity = parse_entity("meas.egfr", "t");
            p.comparator = cmp;
            p.rhs = v;
            p.unit = "mL/min/1.73m2";
            return p;
        };
        auto flag = [](const char* id, const char* entity) {
            PredicateDef p;
            p.id = id;
            p.op = OperatorKind::Has;
            p.entity = parse_entity(entity, "t");
            return p;
        };
        egfr_lt_30 = session.compile_predicate(value("a", Comparator::Lt, Rat(30)));
        egfr_lt_45 = session.compile_predicate(value("b", Comparator::Lt, Rat(45)));
        t2dm = session.compile_predicate(flag("c", "cond.t2dm"));
        hypotension = session.compile_predicate(flag("d", "cond.hypotension"));
        PredicateDef risk;
        risk.id = "e";
        risk.op = OperatorKind::Risk;
        risk.entity = parse_entity("cond.ascvd", "t");
        risk.comparator = Comparator::Eq;
        risk.rhs = std::string("High");
        risk_high = session.compile_predicate(risk);
    }
};

} // namespace

TEST_CASE("empty interval is unsatisfiable: egfr<30 and not(egfr<45)") {
    MiniEnv env;
    const Formula f = Formula::conjunction(
        {Formula::lit(env.egfr_lt_30), Formula::lit(env.egfr_lt_45, true)});
    CHECK_FALSE(check_sat(env.session, f).sat);
}

TEST_CASE("independent booleans are satisfiable with both true") {
    MiniEnv env;
    const Formula f =
        Formula::conjunction({Formula::lit(env.t2dm), Formula::lit(env.hypotension)});
    const SatResult result = check_sat(env.session, f);
    REQUIRE(result.sat);
    REQUIRE(result.model.has_value());
    const TheoryAtom& ta = env.session.atom(env.t2dm);
    const TheoryAtom& tb = env.session.atom(env.hypotension);
    CHECK(std::get<bool>(*result.model->find(ta.var)));
    CHECK(std::get<bool>(*result.model->find(tb.var)));
}

TEST_CASE("enum equality clashes with its own negation") {
    MiniEnv env;
    const Formula f = Formula::conjunction(
        {Formula::lit(env.risk_high), Formula::lit(env.risk_high, true)});
    CHECK_FALSE(check_sat(env.session, f).sat);
}

TEST_CASE("open enum domains keep a sentinel value available") {
    MiniEnv env;
    // RISK != High alone must stay satisfiable even though High is the only
    // mentioned token.
    const Formula f = Formula::lit(env.risk_high, true);
    const SatResult result = check_sat(env.session, f);
    REQUIRE(result.sat);
    const VarId var = env.session.atom(env.risk_high).var;
    CHECK(std::get<std::string>(*result.model->find(var)) == kEnumSentinel);
}

TEST_CASE("threshold boundaries are exact") {
    MiniEnv env;
    // egfr >= 30 and egfr < 45 and not(egfr < 30): the boundary point 30.
    const Formula f = Formula::conjunction(
        {Formula::lit(env.egfr_lt_30, true), Formula::lit(env.egfr_lt_45)});
    const SatResult result = check_sat(env.session, f);
    REQUIRE(result.sat);
    const VarId var = env.session.atom(env.egfr_lt_30).var;
    const Rat value = std::get<Rat>(*result.model->find(var));
    CHECK(value >= Rat(30));
    CHECK(value < Rat(45));
}

TEST_CASE("axioms are conjoined as implications into the query") {
    MiniEnv env;
    // Axiom: t2dm -> egfr < 45. Query t2dm and not(egfr<45) becomes UNSAT.
    const Formula clause = Formula::disjunction(
        {Formula::lit(env.t2dm, true), Formula::lit(env.egfr_lt_45)});
    const std::vector<Formula> axioms{clause};
    const Formula query = Formula::conjunction(
        {Formula::lit(env.t2dm), Formula::lit(env.egfr_lt_45, true)});
    CHECK(check_sat(env.session, query).sat);
    CHECK_FALSE(check_sat(env.session, query, axioms).sat);
}

TEST_CASE("capacity limit surfaces as CapacityError") {
    MiniEnv env;
    SolveLimits limits;
    limits.max_nodes = 1;
    const Formula f =
        Formula::conjunction({Formula::lit(env.t2dm), Formula::lit(env.hypotension)});
    CHECK_THROWS_AS(check_sat(env.session, f, {}, limits), CapacityError);
}

TEST_CASE("oracle equivalence on random formulas") {
    std::mt19937_64 rng(987654321);
    int sat_count = 0;
    for (int round = 0; round < 2000; ++round) {
        ct::RandomCase c = ct::random_formula_case(rng);
        const SatResult result = check_sat(*c.session, c.formula);
        CHECK(result.sat == ct::oracle_sat(*c.session, c.formula));
        if (result.sat) {
            ++sat_count;
            // Model soundness: the returned model satisfies the query.
            ct::Valuation valuation;
            for (const auto& [var, value] : result.model->values) valuation[var] = value;
            CHECK(ct::formula_holds(*c.session, c.formula, valuation));
        }
    }
    // The generator must exercise both verdicts.
    CHECK(sat_count > 100);
    CHECK(sat_count < 1900);
}

TEST_CASE("monotonicity: conjoining anything preserves UNSAT") {
    std::mt19937_64 rng(13572468);
    int unsat_seen = 0;
    for (int round = 0; round < 400 && unsat_seen < 60; ++round) {
        ct::RandomCase c = ct::random_formula_case(rng);
        if (check_sat(*c.session, c.formula).sat) continue;
        ++unsat_seen;
        // Any extra conjunct keeps it UNSAT; reuse atoms from the same case.
        std::vector<AtomId> atoms;
        for (std::size_t i = 0; i < c.session->atoms().size(); ++i)
            atoms.push_back(static_cast<AtomId>(i));
        const Formula extra = Formula::lit(atoms[rng() % atoms.size()], rng() % 2 == 0);
        CHECK_FALSE(check_sat(*c.session, Formula::conjunction({c.formula, extra})).sat);
    }
    CHECK(unsat_seen > 0);
}

TEST_CASE("deterministic models: identical queries give identical models") {
    std::mt19937_64 rng(11223344);
    for (int round = 0; round < 50; ++round) {
        ct::RandomCase c = ct::random_formula_case(rng);
        const SatResult r1 = check_sat(*c.session, c.formula);
        const SatResult r2 = check_sat(*c.session, c.formula);
        REQUIRE(r1.sat == r2.sat);
        if (r1.sat) CHECK(r1.model->to_text(*c.session) == r2.model->to_text(*c.session));
    }
}

TEST_CASE("smtlib: boolean-only script") {
    MiniEnv env;
    const Formula f =
        Formula::conjunction({Formula::lit(env.t2dm), Formula::lit(env.hypotension, true)});
    const std::string script = emit_smtlib(env.session, f);
    CHECK(script.find("(set-logic") != std::string::npos);
    CHECK(script.find("(declare-const |HAS(cond.t2dm)| Bool)") != std::string::npos);
    CHECK(script.find("(assert (and |HAS(cond.t2dm)| (not |HAS(cond.hypotension)|)))") !=
          std::string::npos);
    CHECK(script.find("(check-sat)") != std::string::npos);
}

TEST_CASE("smtlib: exact rational literals, no float rounding") {
    CompileSession session;
    PredicateDef p;
    p.id = "p";
    p.op = OperatorKind::Value;
    p.entity = parse_entity("meas.egfr", "t");
    p.comparator = Comparator::Lt;
    p.rhs = Rat(91, 2);
    p.unit = "";
    const AtomId atom = session.compile_predicate(p);
    const std::string script = emit_smtlib(session, Formula::lit(atom));
    CHECK(script.find("(declare-const |VALUE(meas.egfr)| Real)") != std::string::npos);
    CHECK(script.find("(< |VALUE(meas.egfr)| (/ 91 2))") != std::string::npos);
    CHECK(script.find("45.5") == std::string::npos); // no decimal rendering of 91/2
}

TEST_CASE("smtlib: axioms are asserted as implications before the query") {
    MiniEnv env;
    CompiledAxiom axiom;
    axiom.antecedent = Formula::lit(env.t2dm);
    axiom.consequent = Formula::lit(env.egfr_lt_45);
    axiom.clause =
        Formula::disjunction({negate(axiom.antecedent), axiom.consequent});
    const std::vector<CompiledAxiom> axioms{axiom};
    const std::string script = emit_smtlib(env.session, Formula::lit(env.t2dm), axioms);
    const auto axiom_pos = script.find("(assert (=> |HAS(cond.t2dm)|");
    const auto query_pos = script.rfind("(assert |HAS(cond.t2dm)|)");
    REQUIRE(axiom_pos != std::string::npos);
    REQUIRE(query_pos != std::string::npos);
    CHECK(axiom_pos < query_pos);
}
