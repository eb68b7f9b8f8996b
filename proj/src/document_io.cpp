#include <algorithm>
#include <string>
#include <unordered_map>
#include <unordered_set>

#include <json.hpp>

#include "concord/document.hpp"
#include "concord/errors.hpp"

namespace concord {

using nlohmann::json;

namespace {

std::size_t line_of_byte(std::string_view bytes, std::size_t byte_pos) {
    std::size_t line = 1;
    for (std::size_t i = 0; i < byte_pos && i < bytes.size(); ++i) {
        if (bytes[i] == '\n') ++line;
    }
    return line;
}

void require_keys(const json& obj, std::initializer_list<std::string_view> required,
                  std::initializer_list<std::string_view> optional, const std::string& path) {
    for (auto key : required) {
        if (!obj.contains(std::string(key)))
            throw ValidationError("missing required key '" + std::string(key) + "'", path);
    }
    for (auto it = obj.begin(); it != obj.end(); ++it) {
        const std::string& key = it.key();
        auto matches = [&key](std::string_view k) { return k == key; };
        if (!std::any_of(required.begin(), required.end(), matches) &&
            !std::any_of(optional.begin(), optional.end(), matches))
            throw ValidationError("unknown key '" + key + "'", path);
    }
}

std::string get_string(const json& obj, const char* key, const std::string& path) {
    const json& v = obj.at(key);
    if (!v.is_string()) throw ValidationError(std::string("'") + key + "' must be a string", path);
    return v.get<std::string>();
}

EntityRef parse_entity_json(const json& v, const std::string& path) {
    if (v.is_string()) return parse_entity(v.get<std::string>(), path);
    if (!v.is_object())
        throw ValidationError("entity must be a '<ns>.<id>' string or an object", path);
    require_keys(v, {"id"}, {"code_system", "code"}, path);
    EntityRef ref = parse_entity(get_string(v, "id", path), path);
    const bool has_system = v.contains("code_system");
    const bool has_code = v.contains("code");
    if (has_system != has_code)
        throw ValidationError("code and code_system must be present together", path);
    if (has_system) {
        ref.code_system = code_system_from_token(get_string(v, "code_system", path));
        ref.code = get_string(v, "code", path);
        if (ref.code.empty()) throw ValidationError("code must be non-empty", path);
    }
    return ref;
}

json entity_to_json(const EntityRef& e) {
    if (!e.code_system.has_value()) return e.name();
    return json{{"id", e.name()},
                {"code_system", std::string(to_token(*e.code_system))},
                {"code", e.code}};
}

Rat parse_rhs_number(const json& v, const std::string& path) {
    if (v.is_number_integer()) return Rat(v.get<std::int64_t>());
    if (v.is_string()) {
        try {
            return parse_rational(v.get<std::string>());
        } catch (const std::invalid_argument& e) {
            throw ValidationError(e.what(), path);
        }
    }
    if (v.is_number_float())
        throw ValidationError(
            "non-integer values must be written as exact strings (\"12.5\" or \"25/2\"), "
            "not JSON floats",
            path);
    throw ValidationError("'value' must be an integer or an exact numeric string", path);
}

ConditionExpr parse_condition_json(const json& v, const std::string& path);

std::vector<ConditionExpr> parse_condition_list(const json& v, const std::string& path) {
    if (!v.is_array()) throw ValidationError("expected an array of conditions", path);
    std::vector<ConditionExpr> out;
    std::size_t i = 0;
    for (const auto& item : v) out.push_back(parse_condition_json(item, path + "[" + std::to_string(i++) + "]"));
    return out;
}

ConditionExpr parse_condition_json(const json& v, const std::string& path) {
    if (v.is_string()) return ConditionExpr::make_ref(v.get<std::string>());
    if (!v.is_object())
        throw ValidationError("condition node must be a predicate-id string or an object", path);
    require_keys(v, {}, {"and", "or", "not", "ref"}, path);
    if (v.size() != 1)
        throw ValidationError("condition node must have exactly one of 'and', 'or', 'not', 'ref'",
                              path);
    if (v.contains("ref")) return ConditionExpr::make_ref(get_string(v, "ref", path));
    if (v.contains("not"))
        return ConditionExpr::make_not(parse_condition_json(v.at("not"), path + ".not"));
    const char* key = v.contains("and") ? "and" : "or";
    auto children = parse_condition_list(v.at(key), path + "." + key);
    if (children.size() < 2)
        throw ValidationError(std::string("'") + key + "' requires at least two children", path);
    return v.contains("and") ? ConditionExpr::make_and(std::move(children))
                             : ConditionExpr::make_or(std::move(children));
}

ConditionExpr parse_condition_field(const json& v, const std::string& path) {
    // A bare string may be a single predicate id or a grammar expression;
    // the text parser handles both.
    if (v.is_string()) return parse_condition_text(v.get<std::string>(), path);
    return parse_condition_json(v, path).normalized();
}

json condition_to_json(const ConditionExpr& c) {
    switch (c.kind) {
    case ConditionExpr::Kind::Ref:
        return c.ref;
    case ConditionExpr::Kind::Not:
        return json{{"not", condition_to_json(c.children.front())}};
    case ConditionExpr::Kind::And:
    case ConditionExpr::Kind::Or: {
        json children = json::array();
        for (const auto& child : c.children) children.push_back(condition_to_json(child));
        return json{{c.kind == ConditionExpr::Kind::And ? "and" : "or", std::move(children)}};
    }
    }
    return nullptr;
}

// --- meta --------------------------------------------------------------------

DocumentMeta parse_meta(const json& v) {
    DocumentMeta meta;
    if (v.is_null()) return meta;
    const std::string path = "meta";
    require_keys(v, {}, {"schema_version", "units", "stage_sorts", "enum_domains"}, path);
    if (v.contains("schema_version")) {
        if (!v.at("schema_version").is_number_integer())
            throw ValidationError("'schema_version' must be an integer", path);
        meta.schema_version = v.at("schema_version").get<int>();
        if (meta.schema_version != 1)
            throw ValidationError("unsupported schema_version " +
                                      std::to_string(meta.schema_version),
                                  path);
    }
    if (v.contains("units")) {
        for (auto it = v.at("units").begin(); it != v.at("units").end(); ++it) {
            parse_entity(it.key(), path + ".units");
            if (!it.value().is_string())
                throw ValidationError("unit declaration must be a string", path + ".units");
            meta.units[it.key()] = it.value().get<std::string>();
        }
    }
    if (v.contains("stage_sorts")) {
        for (auto it = v.at("stage_sorts").begin(); it != v.at("stage_sorts").end(); ++it) {
            const std::string p = path + ".stage_sorts." + it.key();
            parse_entity(it.key(), p);
            StageSort sort;
            if (it.value().is_string() && it.value().get<std::string>() == "int") {
                sort.is_integer = true;
            } else if (it.value().is_array()) {
                sort.is_integer = false;
                for (const auto& tok : it.value()) {
                    if (!tok.is_string()) throw ValidationError("stage domain tokens must be strings", p);
                    sort.domain.push_back(tok.get<std::string>());
                }
                if (sort.domain.empty()) throw ValidationError("stage enum domain must be non-empty", p);
            } else {
                throw ValidationError("stage sort must be \"int\" or an array of stage tokens", p);
            }
            meta.stage_sorts[it.key()] = std::move(sort);
        }
    }
    if (v.contains("enum_domains")) {
        for (auto it = v.at("enum_domains").begin(); it != v.at("enum_domains").end(); ++it) {
            const std::string p = path + ".enum_domains." + it.key();
            parse_entity(it.key(), p);
            if (!it.value().is_array()) throw ValidationError("enum domain must be an array", p);
            std::vector<std::string> domain;
            for (const auto& tok : it.value()) {
                if (!tok.is_string()) throw ValidationError("enum domain tokens must be strings", p);
                domain.push_back(tok.get<std::string>());
            }
            if (domain.empty()) throw ValidationError("enum domain must be non-empty", p);
            meta.enum_domains[it.key()] = std::move(domain);
        }
    }
    return meta;
}

json meta_to_json(const DocumentMeta& meta) {
    json v{{"schema_version", meta.schema_version}};
    if (!meta.units.empty()) {
        json units = json::object();
        for (const auto& [k, u] : meta.units) units[k] = u;
        v["units"] = std::move(units);
    }
    if (!meta.stage_sorts.empty()) {
        json sorts = json::object();
        for (const auto& [k, s] : meta.stage_sorts) {
            if (s.is_integer) sorts[k] = "int";
            else sorts[k] = s.domain;
        }
        v["stage_sorts"] = std::move(sorts);
    }
    if (!meta.enum_domains.empty()) {
        json domains = json::object();
        for (const auto& [k, d] : meta.enum_domains) domains[k] = d;
        v["enum_domains"] = std::move(domains);
    }
    return v;
}

// --- predicates ----------------------------------------------------------------

ValueSort predicate_sort(const PredicateDef& p, const DocumentMeta& meta, const std::string& path) {
    if (p.op == OperatorKind::Stage) {
        auto it = meta.stage_sorts.find(p.entity.name());
        if (it == meta.stage_sorts.end())
            throw ValidationError("STAGE predicate on '" + p.entity.name() +
                                      "' requires a meta.stage_sorts declaration",
                                  path);
        return it->second.is_integer ? ValueSort::Integer : ValueSort::Enum;
    }
    return operator_sort(p.op);
}

PredicateDef parse_predicate(const json& v, const DocumentMeta& meta, const std::string& path) {
    require_keys(v, {"id", "operator", "entity"}, {"qualifier", "comparator", "value", "unit"},
                 path);
    PredicateDef p;
    p.id = get_string(v, "id", path);
    if (p.id.empty()) throw ValidationError("predicate id must be non-empty", path);
    p.op = operator_from_token(get_string(v, "operator", path));
    p.entity = parse_entity_json(v.at("entity"), path + ".entity");

    if (p.op == OperatorKind::Assess) {
        if (!v.contains("qualifier"))
            throw ValidationError("ASSESS requires a 'qualifier' (the assessed subject)", path);
        p.qualifier = parse_entity_json(v.at("qualifier"), path + ".qualifier");
    } else if (v.contains("qualifier")) {
        throw ValidationError("'qualifier' is only valid for ASSESS", path);
    }

    const ValueSort sort = predicate_sort(p, meta, path);
    const bool needs_cmp = sort != ValueSort::Boolean;
    if (needs_cmp != v.contains("comparator") || needs_cmp != v.contains("value"))
        throw ValidationError(needs_cmp
                                  ? "non-boolean operator requires 'comparator' and 'value'"
                                  : "boolean operator takes no 'comparator', 'value', or 'unit'",
                              path);
    if (!needs_cmp && v.contains("unit"))
        throw ValidationError("boolean operator takes no 'comparator', 'value', or 'unit'", path);
    if (!needs_cmp) return p;

    p.comparator = comparator_from_token(get_string(v, "comparator", path));
    switch (sort) {
    case ValueSort::Real: {
        Rat value = parse_rhs_number(v.at("value"), path + ".value");
        std::string unit = v.contains("unit") ? get_string(v, "unit", path) : "";
        if (p.op == OperatorKind::Delta && unit.empty())
            throw ValidationError("DELTA requires an explicit unit: 'percent' or an absolute unit",
                                  path);
        if (p.op == OperatorKind::Duration && unit.empty()) unit = "days";
        if (!unit.empty()) {
            const UnitConversion conv = normalize_unit(unit);
            if (p.op == OperatorKind::Duration && conv.canonical != "days")
                throw ValidationError("DURATION unit must be a time unit, got '" + unit + "'",
                                      path);
            value *= conv.factor;
            unit = conv.canonical;
        }
        auto declared = meta.units.find(p.entity.name());
        if (declared != meta.units.end()) {
            const std::string canonical_declared = normalize_unit(declared->second).canonical;
            if (p.op == OperatorKind::Value && unit != canonical_declared)
                throw ValidationError("unit '" + unit + "' does not match declared unit '" +
                                          canonical_declared + "' for " + p.entity.name(),
                                      path);
        }
        p.rhs = value;
        p.unit = unit;
        break;
    }
    case ValueSort::Integer: {
        const json& val = v.at("value");
        if (!val.is_number_integer())
            throw ValidationError("integer-sorted STAGE requires an integer 'value'", path);
        if (v.contains("unit")) throw ValidationError("STAGE takes no 'unit'", path);
        p.rhs = val.get<std::int64_t>();
        break;
    }
    case ValueSort::Enum: {
        const json& val = v.at("value");
        if (!val.is_string())
            throw ValidationError("enum-sorted operator requires a string token 'value'", path);
        if (v.contains("unit")) throw ValidationError("enum operator takes no 'unit'", path);
        if (*p.comparator != Comparator::Eq && *p.comparator != Comparator::Ne)
            throw ValidationError("enum operator supports only EQ or NE comparators", path);
        const std::string token = val.get<std::string>();
        // Tokens must stay within a declared (closed) domain.
        auto check_domain = [&](const std::vector<std::string>& domain) {
            if (std::find(domain.begin(), domain.end(), token) == domain.end())
                throw ValidationError("token '" + token + "' is outside the declared domain of " +
                                          p.entity.name(),
                                      path);
        };
        if (p.op == OperatorKind::Risk) {
            auto it = meta.enum_domains.find(p.entity.name());
            if (it != meta.enum_domains.end()) check_domain(it->second);
        } else { // enum STAGE
            check_domain(meta.stage_sorts.at(p.entity.name()).domain);
        }
        p.rhs = token;
        break;
    }
    case ValueSort::Boolean:
        break;
    }
    return p;
}

json predicate_to_json(const PredicateDef& p) {
    json v{{"id", p.id},
           {"operator", std::string(to_token(p.op))},
           {"entity", entity_to_json(p.entity)}};
    if (p.qualifier) v["qualifier"] = entity_to_json(*p.qualifier);
    if (p.comparator) v["comparator"] = std::string(to_token(*p.comparator));
    if (p.rhs) {
        if (const Rat* r = std::get_if<Rat>(&*p.rhs)) {
            if (rat_is_integral(*r)) v["value"] = r->numerator();
            else v["value"] = rat_to_string(*r);
        } else if (const std::int64_t* i = std::get_if<std::int64_t>(&*p.rhs)) {
            v["value"] = *i;
        } else {
            v["value"] = std::get<std::string>(*p.rhs);
        }
    }
    if (p.unit && !p.unit->empty()) v["unit"] = *p.unit;
    return v;
}

// --- rules ----------------------------------------------------------------------

Rule parse_rule(const json& v, const std::string& path) {
    require_keys(v, {"id", "condition", "action", "source", "provenance_text", "semantic_category"},
                 {"exception_of"}, path);
    Rule rule;
    rule.id = get_string(v, "id", path);
    if (rule.id.empty()) throw ValidationError("rule id must be non-empty", path);
    rule.condition = parse_condition_field(v.at("condition"), path + ".condition");

    const json& action = v.at("action");
    if (!action.is_array() || action.empty())
        throw ValidationError("'action' must be a non-empty array", path);
    std::vector<ActionItem> items;
    std::size_t i = 0;
    for (const auto& entry : action) {
        const std::string p = path + ".action[" + std::to_string(i++) + "]";
        require_keys(entry, {"subject", "permission"}, {}, p);
        ActionItem item;
        item.subject = parse_entity_json(entry.at("subject"), p + ".subject");
        item.permission = permission_from_token(get_string(entry, "permission", p));
        items.push_back(std::move(item));
    }
    try {
        rule.action = ActionSet::of(std::move(items));
    } catch (const ValidationError& e) {
        throw ValidationError(e.what(), path + ".action");
    }

    const json& source = v.at("source");
    require_keys(source, {"guideline_id", "section", "publication_year"}, {"exception_section"},
                 path + ".source");
    rule.source.guideline_id = get_string(source, "guideline_id", path + ".source");
    rule.source.section = get_string(source, "section", path + ".source");
    if (!source.at("publication_year").is_number_integer())
        throw ValidationError("'publication_year' must be an integer", path + ".source");
    rule.source.publication_year = source.at("publication_year").get<int>();
    if (source.contains("exception_section")) {
        if (!source.at("exception_section").is_boolean())
            throw ValidationError("'exception_section' must be a boolean", path + ".source");
        rule.source.exception_section = source.at("exception_section").get<bool>();
    }

    rule.provenance_text = get_string(v, "provenance_text", path);
    rule.semantic_category = semantic_category_from_token(get_string(v, "semantic_category", path));
    if (v.contains("exception_of")) rule.exception_of = get_string(v, "exception_of", path);
    return rule;
}

json rule_to_json(const Rule& rule) {
    json action = json::array();
    for (const auto& item : rule.action.items())
        action.push_back(json{{"subject", entity_to_json(item.subject)},
                              {"permission", std::string(to_token(item.permission))}});
    json source{{"guideline_id", rule.source.guideline_id},
                {"section", rule.source.section},
                {"publication_year", rule.source.publication_year}};
    if (rule.source.exception_section) source["exception_section"] = true;
    json v{{"id", rule.id},
           {"condition", condition_to_json(rule.condition)},
           {"action", std::move(action)},
           {"source", std::move(source)},
           {"provenance_text", rule.provenance_text},
           {"semantic_category", std::string(to_token(rule.semantic_category))}};
    if (rule.exception_of) v["exception_of"] = *rule.exception_of;
    return v;
}

// --- axioms ----------------------------------------------------------------------

Axiom parse_axiom(const json& v, const std::string& path) {
    require_keys(v, {"if", "then"}, {"justification"}, path);
    Axiom axiom;
    axiom.antecedent = parse_condition_field(v.at("if"), path + ".if");
    axiom.consequent = parse_condition_field(v.at("then"), path + ".then");
    if (v.contains("justification")) axiom.justification = get_string(v, "justification", path);
    return axiom;
}

json axiom_to_json(const Axiom& axiom) {
    return json{{"if", condition_to_json(axiom.antecedent)},
                {"then", condition_to_json(axiom.consequent)},
                {"justification", axiom.justification}};
}

// --- cross checks ------------------------------------------------------------------

void check_condition_refs(const ConditionExpr& c, const Document& doc, const std::string& path) {
    for (const auto& ref : c.referenced_predicates()) {
        if (doc.find_predicate(ref) == nullptr)
            throw ValidationError("unresolved predicate reference '" + ref + "'", path);
    }
}

void check_entity_coding_consistency(const Document& doc) {
    // One (namespace, local_id) must not appear with two different codings;
    // unification keys would silently split otherwise.
    std::unordered_map<std::string, std::string> seen;
    auto visit = [&seen](const EntityRef& e, const std::string& path) {
        auto [it, inserted] = seen.emplace(e.name(), e.key());
        if (!inserted && it->second != e.key())
            throw ValidationError("entity '" + e.name() + "' appears with inconsistent coding",
                                  path);
    };
    for (std::size_t i = 0; i < doc.predicates.size(); ++i) {
        const std::string path = "predicates[" + std::to_string(i) + "]";
        visit(doc.predicates[i].entity, path);
        if (doc.predicates[i].qualifier) visit(*doc.predicates[i].qualifier, path);
    }
    for (std::size_t i = 0; i < doc.rules.size(); ++i) {
        for (const auto& item : doc.rules[i].action.items())
            visit(item.subject, "rules[" + std::to_string(i) + "].action");
    }
}

json parse_top_level(std::string_view bytes) {
    try {
        return json::parse(bytes);
    } catch (const json::parse_error& e) {
        throw ValidationError(e.what(), "line " + std::to_string(line_of_byte(bytes, e.byte)));
    }
}

} // namespace

// --- public API ------------------------------------------------------------------

UnitConversion normalize_unit(std::string_view unit) {
    static const std::unordered_map<std::string_view, UnitConversion> kTable = {
        {"days", {"days", Rat(1)}},      {"day", {"days", Rat(1)}},
        {"d", {"days", Rat(1)}},         {"weeks", {"days", Rat(7)}},
        {"week", {"days", Rat(7)}},      {"w", {"days", Rat(7)}},
        {"months", {"days", Rat(30)}},   {"month", {"days", Rat(30)}},
        {"years", {"days", Rat(365)}},   {"year", {"days", Rat(365)}},
        {"hours", {"days", Rat(1, 24)}}, {"hour", {"days", Rat(1, 24)}},
        {"h", {"days", Rat(1, 24)}},     {"percent", {"percent", Rat(1)}},
        {"%", {"percent", Rat(1)}},
    };
    auto it = kTable.find(unit);
    if (it != kTable.end()) return it->second;
    return {std::string(unit), Rat(1)};
}

bool is_time_unit(std::string_view unit) { return normalize_unit(unit).canonical == "days"; }

Document load_document(std::string_view bytes) {
    const json root = parse_top_level(bytes);
    if (!root.is_object()) throw ValidationError("document must be a JSON object", "$");
    require_keys(root, {"predicates", "rules"}, {"meta", "axioms"}, "$");

    Document doc;
    doc.meta = parse_meta(root.contains("meta") ? root.at("meta") : json());

    if (!root.at("predicates").is_array())
        throw ValidationError("'predicates' must be an array", "$");
    std::unordered_set<std::string> predicate_ids;
    std::size_t i = 0;
    for (const auto& entry : root.at("predicates")) {
        const std::string path = "predicates[" + std::to_string(i++) + "]";
        PredicateDef p = parse_predicate(entry, doc.meta, path);
        if (!predicate_ids.insert(p.id).second)
            throw ValidationError("duplicate predicate id '" + p.id + "'", path);
        doc.predicates.push_back(std::move(p));
    }

    if (!root.at("rules").is_array()) throw ValidationError("'rules' must be an array", "$");
    std::unordered_set<std::string> rule_ids;
    i = 0;
    for (const auto& entry : root.at("rules")) {
        const std::string path = "rules[" + std::to_string(i++) + "]";
        Rule rule = parse_rule(entry, path);
        if (!rule_ids.insert(rule.id).second)
            throw ValidationError("duplicate rule id '" + rule.id + "'", path);
        doc.rules.push_back(std::move(rule));
    }

    if (root.contains("axioms")) {
        if (!root.at("axioms").is_array()) throw ValidationError("'axioms' must be an array", "$");
        i = 0;
        for (const auto& entry : root.at("axioms"))
            doc.axioms.axioms.push_back(parse_axiom(entry, "axioms[" + std::to_string(i++) + "]"));
    }

    // Reference resolution and remaining invariants.
    for (std::size_t r = 0; r < doc.rules.size(); ++r) {
        const std::string path = "rules[" + std::to_string(r) + "]";
        const Rule& rule = doc.rules[r];
        check_condition_refs(rule.condition, doc, path + ".condition");
        if (rule.condition.referenced_predicates().empty())
            throw ValidationError("rule condition must reference at least one predicate", path);
        if (rule.exception_of) {
            if (*rule.exception_of == rule.id)
                throw ValidationError("rule cannot be an exception of itself", path);
            if (doc.find_rule(*rule.exception_of) == nullptr)
                throw ValidationError("exception_of references unknown rule '" +
                                          *rule.exception_of + "'",
                                      path);
        }
    }
    for (std::size_t a = 0; a < doc.axioms.axioms.size(); ++a) {
        const std::string path = "axioms[" + std::to_string(a) + "]";
        check_condition_refs(doc.axioms.axioms[a].antecedent, doc, path + ".if");
        check_condition_refs(doc.axioms.axioms[a].consequent, doc, path + ".then");
    }
    check_entity_coding_consistency(doc);
    return doc;
}

std::string serialize_document(const Document& doc) {
    json root;
    root["meta"] = meta_to_json(doc.meta);
    json predicates = json::array();
    for (const auto& p : doc.predicates) predicates.push_back(predicate_to_json(p));
    root["predicates"] = std::move(predicates);
    json rules = json::array();
    for (const auto& r : doc.rules) rules.push_back(rule_to_json(r));
    root["rules"] = std::move(rules);
    if (!doc.axioms.empty()) {
        json axioms = json::array();
        for (const auto& a : doc.axioms.axioms) axioms.push_back(axiom_to_json(a));
        root["axioms"] = std::move(axioms);
    }
    return root.dump(2) + "\n";
}

AxiomSet load_axioms(std::string_view bytes, const Document& doc) {
    const json root = parse_top_level(bytes);
    if (!root.is_object() || !root.contains("axioms"))
        throw ValidationError("axiom file must be an object with an 'axioms' array", "$");
    require_keys(root, {"axioms"}, {"meta"}, "$");
    AxiomSet set;
    std::size_t i = 0;
    for (const auto& entry : root.at("axioms")) {
        const std::string path = "axioms[" + std::to_string(i++) + "]";
        Axiom axiom = parse_axiom(entry, path);
        check_condition_refs(axiom.antecedent, doc, path + ".if");
        check_condition_refs(axiom.consequent, doc, path + ".then");
        set.axioms.push_back(std::move(axiom));
    }
    return set;
}

std::string serialize_axioms(const AxiomSet& axioms) {
    json list = json::array();
    for (const auto& a : axioms.axioms) list.push_back(axiom_to_json(a));
    return json{{"axioms", std::move(list)}}.dump(2) + "\n";
}

} // namespace concord
