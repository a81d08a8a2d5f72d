#include "dcx/json_io.hpp"

namespace dcx {

namespace {

const Json& expect(const Json& j, const std::string& key, const std::string& where) {
    auto it = j.find(key);
    if (it == j.end()) throw ParseError(where + ": missing field '" + key + "'");
    return *it;
}

std::vector<std::string> string_array(const Json& j, const std::string& where) {
    if (!j.is_array()) throw ParseError(where + ": expected an array of strings");
    std::vector<std::string> out;
    for (const auto& e : j) {
        if (!e.is_string()) throw ParseError(where + ": expected an array of strings");
        out.push_back(e.get<std::string>());
    }
    return out;
}

}  // namespace

Rational rational_from_json(const Json& j, const std::string& field) {
    try {
        if (j.is_string()) return parse_rational(j.get<std::string>());
        if (j.is_number_integer()) return Rational(j.get<long long>());
        if (j.is_number_unsigned()) return Rational(j.get<unsigned long long>());
    } catch (const std::invalid_argument& e) {
        throw ParseError(field + ": " + e.what());
    }
    if (j.is_number_float())
        throw ParseError(field + ": write non-integer values as strings (\"1/3\" or \"0.25\") "
                                 "so they stay exact");
    throw ParseError(field + ": expected a rational");
}

Json rational_to_json(const Rational& value) {
    if (denominator(value) == 1) {
        // Integers small enough for a JSON number stay numeric.
        Integer n = numerator(value);
        if (n >= -((Integer(1) << 53)) && n <= (Integer(1) << 53))
            return Json(static_cast<long long>(n));
    }
    return Json(to_string(value));
}

Schema schema_from_json(const Json& j) {
    Schema schema;
    const Json& spaces = expect(j, "spaces", "schema");
    if (!spaces.is_array()) throw ParseError("schema.spaces: expected an array");
    for (size_t si = 0; si < spaces.size(); ++si) {
        std::string where = "schema.spaces[" + std::to_string(si) + "]";
        const Json& js = spaces[si];
        ValueSpace vs;
        vs.id = expect(js, "id", where).get<std::string>();
        vs.points = string_array(expect(js, "points", where), where + ".points");
        const Json& metric = expect(js, "metric", where);
        if (!metric.is_array()) throw ParseError(where + ".metric: expected an array of rows");
        for (size_t r = 0; r < metric.size(); ++r) {
            const Json& row = metric[r];
            std::string rw = where + ".metric[" + std::to_string(r) + "]";
            if (!row.is_array()) throw ParseError(rw + ": expected an array");
            std::vector<Rational> out;
            for (size_t c = 0; c < row.size(); ++c)
                out.push_back(rational_from_json(row[c], rw + "[" + std::to_string(c) + "]"));
            vs.metric.push_back(std::move(out));
        }
        schema.spaces.push_back(std::move(vs));
    }
    const Json& attrs = expect(j, "attributes", "schema");
    if (!attrs.is_array()) throw ParseError("schema.attributes: expected an array");
    for (size_t ai = 0; ai < attrs.size(); ++ai) {
        std::string where = "schema.attributes[" + std::to_string(ai) + "]";
        schema.attributes.push_back({expect(attrs[ai], "name", where).get<std::string>(),
                                     expect(attrs[ai], "space", where).get<std::string>()});
    }
    return schema;
}

Json schema_to_json(const Schema& schema) {
    Json j;
    j["spaces"] = Json::array();
    for (const auto& vs : schema.spaces) {
        Json js;
        js["id"] = vs.id;
        js["points"] = vs.points;
        Json metric = Json::array();
        for (const auto& row : vs.metric) {
            Json r = Json::array();
            for (const auto& d : row) r.push_back(rational_to_json(d));
            metric.push_back(std::move(r));
        }
        js["metric"] = std::move(metric);
        j["spaces"].push_back(std::move(js));
    }
    j["attributes"] = Json::array();
    for (const auto& a : schema.attributes)
        j["attributes"].push_back(Json{{"name", a.name}, {"space", a.space}});
    return j;
}

DataTable table_from_json(const Json& j) {
    DataTable t;
    t.list = string_array(expect(j, "list", "table"), "table.list");
    const Json& atoms = expect(j, "atoms", "table");
    if (!atoms.is_array()) throw ParseError("table.atoms: expected an array");
    for (size_t i = 0; i < atoms.size(); ++i) {
        std::string where = "table.atoms[" + std::to_string(i) + "]";
        Tuple tuple = string_array(expect(atoms[i], "tuple", where), where + ".tuple");
        Rational mass = rational_from_json(expect(atoms[i], "mass", where), where + ".mass");
        if (mass <= 0) throw ParseError(where + ".mass: atom masses must be positive");
        if (tuple.size() != t.list.size())
            throw ParseError(where + ".tuple: arity does not match the list");
        t.add_mass(tuple, mass);
    }
    return t;
}

Json table_to_json(const DataTable& table) {
    Json j;
    j["list"] = table.list;
    j["atoms"] = Json::array();
    for (const auto& [tuple, mass] : table.atoms)
        j["atoms"].push_back(Json{{"tuple", tuple}, {"mass", to_string(mass)}});
    return j;
}

AttributeInclusion inclusion_from_json(const Json& j) {
    AttributeInclusion inc;
    inc.source = string_array(expect(j, "source", "inclusion"), "inclusion.source");
    inc.target = string_array(expect(j, "target", "inclusion"), "inclusion.target");
    const Json& map = expect(j, "map", "inclusion");
    if (!map.is_array()) throw ParseError("inclusion.map: expected an array of indices");
    for (const auto& e : map) {
        if (!e.is_number_unsigned() && !e.is_number_integer())
            throw ParseError("inclusion.map: expected nonnegative indices");
        long long v = e.get<long long>();
        if (v < 0) throw ParseError("inclusion.map: expected nonnegative indices");
        inc.index_map.push_back(static_cast<size_t>(v));
    }
    if (!validate_inclusion(inc)) throw ParseError("inclusion: not a valid attribute inclusion");
    return inc;
}

Json inclusion_to_json(const AttributeInclusion& inc) {
    return Json{{"source", inc.source}, {"target", inc.target}, {"map", inc.index_map}};
}

Json coupling_to_json(const Coupling& coupling) {
    Json j;
    j["list"] = coupling.list;
    j["red1"] = inclusion_to_json(coupling.red1);
    j["red2"] = inclusion_to_json(coupling.red2);
    j["atoms"] = Json::array();
    for (const auto& [pair, mass] : coupling.atoms)
        j["atoms"].push_back(
            Json{{"first", pair.first}, {"second", pair.second}, {"mass", to_string(mass)}});
    return j;
}

Json fill_result_to_json(const FillResult& fill) {
    Json j;
    switch (fill.status) {
        case FillStatus::Filled: j["status"] = "filled"; break;
        case FillStatus::Infeasible: j["status"] = "infeasible"; break;
        case FillStatus::BudgetExceeded: j["status"] = "budget_exceeded"; break;
    }
    if (fill.status == FillStatus::Filled) {
        j["table"] = table_to_json(fill.table);
        Json slacks = Json::object();
        for (const auto& [i, d] : fill.achieved_slacks) slacks[std::to_string(i)] = to_string(d);
        j["achieved_slacks"] = std::move(slacks);
    }
    if (fill.minimal_slack) j["minimal_slack"] = to_string(*fill.minimal_slack);
    if (fill.fallback_to_lp) j["fallback_to_lp"] = true;
    if (!fill.message.empty()) j["message"] = fill.message;
    return j;
}

Json filtration_to_json(const FiltrationResult& result) {
    Json j;
    j["member"] = result.member;
    Json witnesses = Json::object();
    for (const auto& [pos, w] : result.witnesses) {
        Json jw;
        jw["inclusion"] = inclusion_to_json(w.inclusion);
        jw["closure_table"] = table_to_json(w.closure_table);
        jw["distance"] = to_string(w.distance);
        witnesses[std::to_string(pos)] = std::move(jw);
    }
    j["witnesses"] = std::move(witnesses);
    if (!result.notes.empty()) j["notes"] = result.notes;
    return j;
}

Json cocycle_report_to_json(const CocycleReport& report) {
    Json j;
    j["level"] = report.level;
    j["slack"] = to_string(report.slack);
    j["all_trivial"] = report.all_trivial();
    Json cells = Json::array();
    for (const auto& [cell, verdict] : report.values) {
        Json jc;
        jc["cell"] = cell;
        jc["value"] = verdict.trivial ? "trivial" : "nontrivial";
        jc["fill"] = fill_result_to_json(verdict.fill);
        cells.push_back(std::move(jc));
    }
    j["cells"] = std::move(cells);
    return j;
}

Json section_to_json(const DataSection& section) {
    Json j;
    j["level"] = section.level;
    Json cells = Json::array();
    for (const auto& [list, table] : section.cells) cells.push_back(table_to_json(table));
    j["cells"] = std::move(cells);
    return j;
}

Json coboundary_to_json(const CoboundaryResult& result) {
    Json j;
    // The search space is witness-restricted, so label the verdict as such.
    j["coboundary_restricted_search"] = result.coboundary;
    if (result.coboundary) {
        j["modified_section"] = section_to_json(result.modified);
        Json fills = Json::array();
        for (const auto& [cell, table] : result.fills) {
            Json jf;
            jf["cell"] = cell;
            jf["table"] = table_to_json(table);
            fills.push_back(std::move(jf));
        }
        j["fills"] = std::move(fills);
    }
    if (result.minimal_slack) j["minimal_slack"] = to_string(*result.minimal_slack);
    return j;
}

Json trichotomy_to_json(const TrichotomyVerdict& verdict) {
    Json j;
    j["case"] = verdict.case_number;
    j["cocycle"] = cocycle_report_to_json(verdict.cocycle);
    if (verdict.repair) j["repair"] = coboundary_to_json(*verdict.repair);
    return j;
}

Json persistence_to_json(const PersistenceResult& result) {
    Json j;
    j["t_n"] = result.t_n ? Json(to_string(*result.t_n)) : Json("infinity");
    j["t_prime_n"] = result.t_prime_n ? Json(to_string(*result.t_prime_n)) : Json("infinity");
    if (!result.t_witnesses.empty()) {
        Json w = Json::array();
        for (const auto& [cell, table] : result.t_witnesses) {
            Json jc;
            jc["cell"] = cell;
            jc["table"] = table_to_json(table);
            w.push_back(std::move(jc));
        }
        j["t_witnesses"] = std::move(w);
    }
    if (result.t_prime_witness) j["t_prime_witness"] = coboundary_to_json(*result.t_prime_witness);
    return j;
}

HornProblem horn_from_json(const Json& j) {
    HornProblem h;
    h.full_list = string_array(expect(j, "list", "horn"), "horn.list");
    const Json& faces = expect(j, "faces", "horn");
    if (!faces.is_object()) throw ParseError("horn.faces: expected an object keyed by face index");
    for (const auto& [key, value] : faces.items()) {
        size_t idx = 0;
        try {
            idx = static_cast<size_t>(std::stoul(key));
        } catch (...) {
            throw ParseError("horn.faces: key '" + key + "' is not a face index");
        }
        h.faces[idx] = table_from_json(value);
    }
    if (j.contains("slack")) h.slack = rational_from_json(j["slack"], "horn.slack");
    return h;
}

}  // namespace dcx
