#pragma once

#include "sullivan/selfequiv.hpp"
#include "sullivan/verification.hpp"

#include <json.hpp>

#include <regex>
#include <sstream>
#include <string>
#include <vector>

namespace sullivan {

using nlohmann::json;

/// Machine-readable report wrapper.  `result` is the per-command payload;
/// exact rationals inside payloads are serialized as "num/den" strings so no
/// precision is lost.
struct ReportDocument {
    std::string command;
    json input = json::object();
    json result = json::object();
    std::vector<Discrepancy> discrepancies;
    std::int64_t timing_ms = 0;

    json to_json() const {
        json d = json::array();
        for (auto& x : discrepancies) d.push_back({{"code", x.code}, {"detail", x.detail}});
        return json{{"command", command},
                    {"input", input},
                    {"result", result},
                    {"discrepancies", d},
                    {"timing_ms", timing_ms}};
    }

    static ReportDocument from_json(const json& j) {
        ReportDocument doc;
        doc.command = j.at("command").get<std::string>();
        doc.input = j.at("input");
        doc.result = j.at("result");
        for (auto& d : j.at("discrepancies"))
            doc.discrepancies.push_back(
                {d.at("code").get<std::string>(), d.at("detail").get<std::string>()});
        doc.timing_ms = j.at("timing_ms").get<std::int64_t>();
        return doc;
    }

    /// Text rendering generated from the same payload, so the two formats
    /// cannot drift apart on any field.
    std::string to_text() const {
        std::ostringstream out;
        out << "command: " << command << "\n";
        if (!input.empty()) out << "input: " << input.dump() << "\n";
        render(out, result, 0);
        if (!discrepancies.empty()) {
            out << "discrepancies:\n";
            for (auto& d : discrepancies) out << "  [" << d.code << "] " << d.detail << "\n";
        }
        out << "timing_ms: " << timing_ms << "\n";
        return out.str();
    }

private:
    static void render(std::ostringstream& out, const json& j, int indent) {
        const std::string pad(indent * 2, ' ');
        if (j.is_object()) {
            for (auto it = j.begin(); it != j.end(); ++it) {
                if (it.value().is_object() || it.value().is_array()) {
                    out << pad << it.key() << ":\n";
                    render(out, it.value(), indent + 1);
                } else {
                    out << pad << it.key() << ": " << scalar(it.value()) << "\n";
                }
            }
        } else if (j.is_array()) {
            for (auto& v : j) {
                if (v.is_object() || v.is_array()) {
                    out << pad << "-\n";
                    render(out, v, indent + 1);
                } else {
                    out << pad << "- " << scalar(v) << "\n";
                }
            }
        } else {
            out << pad << scalar(j) << "\n";
        }
    }

    static std::string scalar(const json& v) {
        if (v.is_string()) return v.get<std::string>();
        return v.dump();
    }
};

// ---------------------------------------------------------------------------
// Payload builders
// ---------------------------------------------------------------------------

inline json solution_to_json(const UnitSolution& s, const ParameterTable& params) {
    json out;
    json names = json::array();
    for (auto p : s.unknowns) names.push_back(params.name(p));
    out["unknowns"] = names;
    json signs = json::array();
    for (auto& v : s.sign_solutions) signs.push_back(v);
    out["sign_solutions"] = signs;
    json lattice = json::array();
    for (auto& v : s.lattice_basis) lattice.push_back(v);
    out["free_directions"] = lattice;
    out["finite"] = s.finite();
    return out;
}

inline json selfequiv_to_json(const SelfEquivGroupReport& r) {
    json out;
    out["algebra"] = r.algebra;
    if (r.family_n > 0) out["n"] = r.family_n;
    json stages = json::array();
    for (auto& st : r.stages) {
        json eqs = json::array();
        for (auto& e : st.equations) eqs.push_back(e.to_string(*r.params));
        stages.push_back({{"degree", st.degree},
                          {"generator", st.generator},
                          {"uniqueness", st.uniqueness.branch},
                          {"cocycle_dim", st.uniqueness.cocycle_dim},
                          {"h_dim", st.uniqueness.h_dim},
                          {"equations", eqs},
                          {"eliminated", st.killed}});
    }
    out["stages"] = stages;
    json eqs = json::array();
    for (auto& e : r.system.equations) eqs.push_back(e.to_string(*r.params));
    out["equations"] = eqs;
    out["solution"] = solution_to_json(r.solution, *r.params);
    out["order"] = r.order ? json(*r.order) : json("infinite");
    out["exponent"] = r.exponent ? json(*r.exponent) : json("infinite");
    out["elementary_abelian"] = r.elementary_abelian;
    out["elementary_rank"] = r.elementary_rank;
    out["group_closed"] = r.group_closed;
    out["uniqueness_all_stages"] = r.uniqueness_all;
    out["classes_determined_by_linear_part"] = r.classes_determined;
    out["warnings"] = r.warnings;
    out["correction_legend"] = r.correction_legend;
    out["comparison"] = r.comparison;
    return out;
}

inline json claim_report_to_json(const ClaimReport& r) {
    json out;
    out["claim"] = r.id;
    out["n"] = r.n;
    out["pass"] = r.pass;
    json degrees = json::array();
    for (auto& d : r.degrees) {
        degrees.push_back({{"degree", d.degree},
                           {"cap", d.cap},
                           {"basis_dim", d.basis_dim},
                           {"cocycle_dim", d.cocycle_dim},
                           {"coboundary_dim", d.coboundary_dim},
                           {"h_dim", d.h_dim},
                           {"expected_dim", d.expected_dim},
                           {"preimages_checked", d.preimages_checked},
                           {"preimages_missing", d.preimages_missing},
                           {"sample_preimages", d.sample_preimages},
                           {"sample_non_bounding", d.sample_non_bounding}});
    }
    out["degrees"] = degrees;
    return out;
}

inline json oracle_to_json(const OracleResult& o) {
    json out;
    json sols = json::array();
    for (auto& s : o.solutions) sols.push_back(s);
    out["solutions"] = sols;
    out["count"] = o.solutions.size();
    out["closed_under_product"] = o.closed;
    out["contains_identity"] = o.contains_identity;
    return out;
}

// ---------------------------------------------------------------------------
// Minimal JSON-schema validation (type / required / properties / items /
// enum / pattern / additionalProperties) — enough to pin the report format.
// ---------------------------------------------------------------------------

inline void schema_validate(const json& schema, const json& value, const std::string& path,
                            std::vector<std::string>& errors) {
    if (schema.contains("type")) {
        const std::string t = schema["type"].get<std::string>();
        bool ok = (t == "object" && value.is_object()) || (t == "array" && value.is_array()) ||
                  (t == "string" && value.is_string()) ||
                  (t == "integer" && value.is_number_integer()) ||
                  (t == "number" && value.is_number()) ||
                  (t == "boolean" && value.is_boolean());
        if (!ok) {
            errors.push_back(path + ": expected " + t);
            return;
        }
    }
    if (schema.contains("enum")) {
        bool ok = false;
        for (auto& v : schema["enum"]) ok = ok || v == value;
        if (!ok) errors.push_back(path + ": value not in enum");
    }
    if (schema.contains("pattern") && value.is_string()) {
        std::regex re(schema["pattern"].get<std::string>());
        if (!std::regex_match(value.get<std::string>(), re))
            errors.push_back(path + ": pattern mismatch");
    }
    if (value.is_object()) {
        if (schema.contains("required"))
            for (auto& k : schema["required"])
                if (!value.contains(k.get<std::string>()))
                    errors.push_back(path + ": missing required key " + k.get<std::string>());
        if (schema.contains("properties")) {
            for (auto it = schema["properties"].begin(); it != schema["properties"].end(); ++it)
                if (value.contains(it.key()))
                    schema_validate(it.value(), value[it.key()], path + "/" + it.key(), errors);
            if (schema.value("additionalProperties", true) == false)
                for (auto it = value.begin(); it != value.end(); ++it)
                    if (!schema["properties"].contains(it.key()))
                        errors.push_back(path + ": unexpected key " + it.key());
        }
    }
    if (value.is_array() && schema.contains("items"))
        for (std::size_t i = 0; i < value.size(); ++i)
            schema_validate(schema["items"], value[i], path + "[" + std::to_string(i) + "]",
                            errors);
}

inline std::vector<std::string> schema_check(const json& schema, const json& value) {
    std::vector<std::string> errors;
    schema_validate(schema, value, "$", errors);
    return errors;
}

} // namespace sullivan
