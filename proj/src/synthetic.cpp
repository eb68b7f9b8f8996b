#include "concord/synthetic.hpp"

#include <cstdio>

#include "concord/minhash.hpp"

namespace concord {

namespace {

std::string pad3(std::size_t n) {
    char buffer[8];
    std::snprintf(buffer, sizeof(buffer), "%03zu", n);
    return buffer;
}

// Fresh entity/drug names for one pair.
struct Names {
    std::string n;
    std::string cx, cy, lab, drug, alt;
};

struct Builder {
    Document doc;
    std::vector<GoldPair> gold;
    std::size_t pair_no = 0;

    Names next_names() const {
        const std::string n = pad3(pair_no);
        return Names{n, "cnd" + n + "x", "cnd" + n + "y", "lab" + n, "drg" + n, "alt" + n};
    }

    std::string add_bool_predicate(const std::string& id, EntityNamespace ns,
                                   const std::string& local) {
        PredicateDef p;
        p.id = id;
        p.op = OperatorKind::Has;
        p.entity.ns = ns;
        p.entity.local_id = local;
        doc.predicates.push_back(std::move(p));
        return id;
    }

    std::string add_value_predicate(const std::string& id, const std::string& local,
                                    Comparator cmp, std::int64_t threshold) {
        PredicateDef p;
        p.id = id;
        p.op = OperatorKind::Value;
        p.entity.ns = EntityNamespace::Meas;
        p.entity.local_id = local;
        p.comparator = cmp;
        p.rhs = Rat(threshold);
        p.unit = "";
        doc.predicates.push_back(std::move(p));
        return id;
    }

    void add_rule(const std::string& id, ConditionExpr condition, const std::string& drug,
                  Permission permission, const std::string& text) {
        Rule rule;
        rule.id = id;
        rule.condition = std::move(condition);
        EntityRef subject;
        subject.ns = EntityNamespace::Med;
        subject.local_id = drug;
        rule.action = ActionSet::of({ActionItem{std::move(subject), permission}});
        rule.source.guideline_id = "syn_guide_" + std::to_string(pair_no % 5);
        rule.source.section = "s" + std::to_string(pair_no);
        rule.source.publication_year = 2019 + static_cast<int>(pair_no % 6);
        rule.provenance_text = text;
        rule.semantic_category = SemanticCategory::Pharmacological;
        doc.rules.push_back(std::move(rule));
    }

    void add_gold(const std::string& rule_a, const std::string& rule_b, BenchmarkLabel label) {
        GoldPair pair;
        pair.id = "g" + pad3(gold.size());
        pair.rule_a = rule_a;
        pair.rule_b = rule_b;
        pair.label = std::string(to_token(label));
        gold.push_back(std::move(pair));
    }
};

std::string spell(Permission p) { return std::string(to_token(p)); }

} // namespace

SyntheticDataset make_synthetic_dataset(std::uint64_t seed) {
    // Each pair draws on its own entities and drug, so relations never leak
    // across pairs and none-pair rules stay isolated in the graph.
    Builder b;

    // local_conflict: independent conditions, opposing directives.
    for (int i = 0; i < 20; ++i) {
        const Names nm = b.next_names();
        const Permission pa = i % 2 == 0 ? Permission::Recommend : Permission::Continue;
        const Permission pb = i % 2 == 0 ? Permission::Contraindicate : Permission::Stop;
        const std::string px = b.add_bool_predicate("has_" + nm.cx, EntityNamespace::Cond, nm.cx);
        const std::string py = b.add_bool_predicate("has_" + nm.cy, EntityNamespace::Cond, nm.cy);
        b.add_rule("r" + nm.n + "a", ConditionExpr::make_ref(px), nm.drug, pa,
                   "For patients with condition " + nm.cx + ", " + spell(pa) + " " + nm.drug + ".");
        b.add_rule("r" + nm.n + "b", ConditionExpr::make_ref(py), nm.drug, pb,
                   "In the presence of " + nm.cy + ", " + spell(pb) + " use of " + nm.drug + ".");
        b.add_gold("r" + nm.n + "a", "r" + nm.n + "b", BenchmarkLabel::LocalConflict);
        ++b.pair_no;
    }

    // implication conflict/disagreement: nested thresholds on one measurement.
    for (int i = 0; i < 40; ++i) {
        const Names nm = b.next_names();
        const std::string lo = b.add_value_predicate(nm.lab + "_lt_30", nm.lab, Comparator::Lt, 30);
        const std::string hi = b.add_value_predicate(nm.lab + "_lt_45", nm.lab, Comparator::Lt, 45);
        const Permission pb = i % 2 == 0 ? Permission::Recommend : Permission::Avoid;
        b.add_rule("r" + nm.n + "a", ConditionExpr::make_ref(lo), nm.drug,
                   Permission::Contraindicate,
                   "When " + nm.lab + " falls below 30, CONTRAINDICATE " + nm.drug + ".");
        b.add_rule("r" + nm.n + "b", ConditionExpr::make_ref(hi), nm.drug, pb,
                   "Below a " + nm.lab + " of 45, " + spell(pb) + " " + nm.drug + ".");
        b.add_gold("r" + nm.n + "a", "r" + nm.n + "b",
                   BenchmarkLabel::ImplicationConflictOrDisagreement);
        ++b.pair_no;
    }

    // intrinsic conflict/disagreement: identical condition, clashing directives.
    for (int i = 0; i < 37; ++i) {
        const Names nm = b.next_names();
        const std::string px = b.add_bool_predicate("has_" + nm.cx, EntityNamespace::Cond, nm.cx);
        const Permission pa = i % 2 == 0 ? Permission::Continue : Permission::Contraindicate;
        const Permission pb = i % 2 == 0 ? Permission::Stop : Permission::Avoid;
        b.add_rule("r" + nm.n + "a", ConditionExpr::make_ref(px), nm.drug, pa,
                   "Patients with " + nm.cx + " should " + spell(pa) + " " + nm.drug + ".");
        b.add_rule("r" + nm.n + "b", ConditionExpr::make_ref(px), nm.drug, pb,
                   "Guidance for " + nm.cx + ": " + spell(pb) + " " + nm.drug + ".");
        b.add_gold("r" + nm.n + "a", "r" + nm.n + "b",
                   BenchmarkLabel::IntrinsicConflictOrDisagreement);
        ++b.pair_no;
    }

    // complete redundancy: identical condition and action.
    for (int i = 0; i < 15; ++i) {
        const Names nm = b.next_names();
        const std::string px = b.add_bool_predicate("has_" + nm.cx, EntityNamespace::Cond, nm.cx);
        b.add_rule("r" + nm.n + "a", ConditionExpr::make_ref(px), nm.drug, Permission::Recommend,
                   "Recommend " + nm.drug + " for anyone with " + nm.cx + ".");
        b.add_rule("r" + nm.n + "b", ConditionExpr::make_ref(px), nm.drug, Permission::Recommend,
                   "In " + nm.cx + ", " + nm.drug + " is the recommended agent.");
        b.add_gold("r" + nm.n + "a", "r" + nm.n + "b", BenchmarkLabel::CompleteRedundancy);
        ++b.pair_no;
    }

    // contained redundancy: conjunction against one of its conjuncts.
    for (int i = 0; i < 54; ++i) {
        const Names nm = b.next_names();
        const std::string px = b.add_bool_predicate("has_" + nm.cx, EntityNamespace::Cond, nm.cx);
        const std::string py = b.add_bool_predicate("has_" + nm.cy, EntityNamespace::Cond, nm.cy);
        b.add_rule("r" + nm.n + "a",
                   ConditionExpr::make_and(
                       {ConditionExpr::make_ref(px), ConditionExpr::make_ref(py)}),
                   nm.drug, Permission::Recommend,
                   "With both " + nm.cx + " and " + nm.cy + ", recommend " + nm.drug + ".");
        b.add_rule("r" + nm.n + "b", ConditionExpr::make_ref(px), nm.drug, Permission::Recommend,
                   "Recommend " + nm.drug + " whenever " + nm.cx + " is present.");
        b.add_gold("r" + nm.n + "a", "r" + nm.n + "b", BenchmarkLabel::ContainedRedundancy);
        ++b.pair_no;
    }

    // none: mutually exclusive thresholds / distinct drugs / mere disagreement
    // over intersecting conditions.
    for (int i = 0; i < 60; ++i) {
        const Names nm = b.next_names();
        switch (i % 3) {
        case 0: {
            const std::string lo =
                b.add_value_predicate(nm.lab + "_lt_30", nm.lab, Comparator::Lt, 30);
            const std::string hi =
                b.add_value_predicate(nm.lab + "_ge_30", nm.lab, Comparator::Ge, 30);
            b.add_rule("r" + nm.n + "a", ConditionExpr::make_ref(lo), nm.drug,
                       Permission::Recommend,
                       "Use " + nm.drug + " when " + nm.lab + " is under 30.");
            b.add_rule("r" + nm.n + "b", ConditionExpr::make_ref(hi), nm.drug,
                       Permission::Contraindicate,
                       "Do not give " + nm.drug + " at " + nm.lab + " of 30 or more.");
            break;
        }
        case 1: {
            const std::string px =
                b.add_bool_predicate("has_" + nm.cx, EntityNamespace::Cond, nm.cx);
            b.add_rule("r" + nm.n + "a", ConditionExpr::make_ref(px), nm.drug,
                       Permission::Recommend,
                       "Offer " + nm.drug + " to patients with " + nm.cx + ".");
            b.add_rule("r" + nm.n + "b", ConditionExpr::make_ref(px), nm.alt,
                       Permission::Recommend,
                       "Offer " + nm.alt + " to patients with " + nm.cx + ".");
            break;
        }
        default: {
            const std::string px =
                b.add_bool_predicate("has_" + nm.cx, EntityNamespace::Cond, nm.cx);
            const std::string py =
                b.add_bool_predicate("has_" + nm.cy, EntityNamespace::Cond, nm.cy);
            b.add_rule("r" + nm.n + "a", ConditionExpr::make_ref(px), nm.drug,
                       Permission::Recommend, "Recommend " + nm.drug + " in " + nm.cx + ".");
            b.add_rule("r" + nm.n + "b", ConditionExpr::make_ref(py), nm.drug,
                       Permission::Consider, "Consider " + nm.drug + " in " + nm.cy + ".");
            break;
        }
        }
        b.add_gold("r" + nm.n + "a", "r" + nm.n + "b", BenchmarkLabel::None);
        ++b.pair_no;
    }

    SyntheticDataset dataset;
    for (int i = 0; i < 12; ++i) {
        const std::string n = pad3(b.pair_no + static_cast<std::size_t>(i));
        const std::string px =
            b.add_bool_predicate("has_iso" + n, EntityNamespace::Cond, "iso" + n);
        b.add_rule("iso" + n, ConditionExpr::make_ref(px), "isodrg" + n, Permission::Recommend,
                   "Standalone advice " + n + ": recommend isodrg" + n + " in iso" + n + ".");
        dataset.isolated_rule_ids.push_back("iso" + n);
    }

    // The seed shuffles gold order only; rules and labels are fixed.
    std::uint64_t state = seed;
    auto next_rand = [&state]() { return state = mix64(state + 0x9e3779b97f4a7c15ULL); };
    for (std::size_t i = b.gold.size(); i > 1; --i)
        std::swap(b.gold[i - 1], b.gold[next_rand() % i]);

    dataset.doc = std::move(b.doc);
    dataset.gold = std::move(b.gold);
    return dataset;
}

} // namespace concord
