#pragma once

// JSON bindings for the public value types. Rationals travel as strings
// ("a/b", "a" or "inf") so descriptors stay exact; floating point values are
// rounded to the printed precision before serialization.

#include "morrey/classify.hpp"
#include "morrey/coeffs.hpp"
#include "morrey/experiment.hpp"
#include "morrey/format.hpp"
#include "morrey/grid.hpp"
#include "morrey/spaces.hpp"

#include "json.hpp"

#include <stdexcept>
#include <string>
#include <vector>

namespace morrey {

using Json = nlohmann::json;

inline ExtRational rational_from_json(const Json& j, const std::string& field) {
    if (j.is_string()) return ExtRational::parse(j.get<std::string>());
    if (j.is_number_integer() || j.is_number_unsigned())
        return ExtRational(j.get<std::int64_t>());
    throw std::invalid_argument("field '" + field + "' must be a rational string or integer");
}

inline ExtRational require_rational(const Json& obj, const std::string& field) {
    if (!obj.contains(field))
        throw std::invalid_argument("space descriptor missing field '" + field + "'");
    return rational_from_json(obj.at(field), field);
}

inline Setting setting_from_json(const Json& obj) {
    std::string s = obj.value("setting", "domain");
    if (s == "domain") return Setting::Domain;
    if (s == "rn") return Setting::Rn;
    throw std::invalid_argument("setting must be \"domain\" or \"rn\", got \"" + s + "\"");
}

inline Scale scale_from_string(const std::string& s) {
    if (s == "B") return Scale::B;
    if (s == "F") return Scale::F;
    throw std::invalid_argument("scale must be \"B\" or \"F\", got \"" + s + "\"");
}

inline SpaceParams space_from_json(const Json& obj) {
    if (!obj.is_object()) throw std::invalid_argument("space descriptor must be a JSON object");

    if (obj.contains("named")) {
        NamedSpace ns;
        std::string name = obj.at("named").get<std::string>();
        if (name == "bmo")
            ns.kind = NamedSpace::Kind::Bmo;
        else if (name == "besov_morrey")
            ns.kind = NamedSpace::Kind::BesovMorrey;
        else if (name == "tl_morrey")
            ns.kind = NamedSpace::Kind::TriebelLizorkinMorrey;
        else if (name == "hybrid")
            ns.kind = NamedSpace::Kind::Hybrid;
        else
            throw std::invalid_argument("unknown named space \"" + name + "\"");
        if (obj.contains("s")) ns.s = rational_from_json(obj.at("s"), "s");
        if (obj.contains("u")) ns.u = rational_from_json(obj.at("u"), "u");
        if (obj.contains("p")) ns.p = rational_from_json(obj.at("p"), "p");
        if (obj.contains("q")) ns.q = rational_from_json(obj.at("q"), "q");
        if (obj.contains("r")) ns.r = rational_from_json(obj.at("r"), "r");
        if (obj.contains("scale")) ns.scale = scale_from_string(obj.at("scale").get<std::string>());
        ns.d = obj.value("d", 1);
        ns.setting = setting_from_json(obj);
        return resolve_named(ns);
    }

    SpaceParams sp;
    if (!obj.contains("scale"))
        throw std::invalid_argument("space descriptor needs \"scale\" or \"named\"");
    sp.scale = scale_from_string(obj.at("scale").get<std::string>());
    sp.s = require_rational(obj, "s");
    sp.p = require_rational(obj, "p");
    sp.q = require_rational(obj, "q");
    sp.tau = require_rational(obj, "tau");
    sp.d = obj.value("d", 1);
    sp.setting = setting_from_json(obj);
    sp.validate();
    return sp;
}

inline Json space_to_json(const SpaceParams& sp) {
    Json obj;
    obj["scale"] = sp.scale == Scale::B ? "B" : "F";
    obj["s"] = sp.s.str();
    obj["p"] = sp.p.str();
    obj["q"] = sp.q.str();
    obj["tau"] = sp.tau.str();
    obj["d"] = sp.d;
    obj["setting"] = sp.setting == Setting::Domain ? "domain" : "rn";
    return obj;
}

inline Json verdict_to_json(const Verdict& v, bool include_trace = true) {
    Json obj;
    obj["relation"] = to_string(v.relation);
    obj["gamma"] = v.gamma_value.gamma.str();
    obj["branch"] = to_string(v.gamma_value.branch);
    obj["delta"] = v.delta.str();
    if (!v.unknown_detail.empty()) {
        obj["unknown_detail"] = v.unknown_detail;
        if (v.unknown_detail == "gap") {
            obj["sufficient_failed"] = v.sufficient_failed;
            obj["necessary_satisfied"] = v.necessary_satisfied;
        }
    }
    if (include_trace) {
        Json trace = Json::array();
        for (const RuleApplication& ra : v.trace) {
            Json step;
            step["rule_id"] = ra.rule_id;
            step["citation"] = ra.citation;
            Json values = Json::object();
            for (const auto& [key, val] : ra.values) values[key] = val;
            step["values"] = values;
            trace.push_back(step);
        }
        obj["trace"] = trace;
    }
    return obj;
}

// ---------------------
// Coefficient sequences
// ---------------------

inline double coeff_from_json(const Json& j) {
    if (j.is_number()) return j.get<double>();
    if (j.is_string()) return ExtRational::parse(j.get<std::string>()).to_double();
    throw std::invalid_argument("coefficient must be a number or rational string");
}

inline CoeffSeq coeffs_from_json(const Json& obj) {
    if (!obj.is_object() || !obj.contains("d") || !obj.contains("entries"))
        throw std::invalid_argument("sequence file needs {\"d\":..., \"entries\":[...]}");
    CoeffSeq t(obj.at("d").get<int>());
    for (const Json& e : obj.at("entries")) {
        std::vector<std::int64_t> m = e.at("m").get<std::vector<std::int64_t>>();
        t.set(e.at("i").get<int>(), e.at("j").get<int>(), m, coeff_from_json(e.at("t")));
    }
    return t;
}

inline Json coeffs_to_json(const CoeffSeq& t) {
    Json obj;
    obj["d"] = t.dim();
    Json entries = Json::array();
    for (const auto& [key, value] : t.entries()) {
        Json e;
        e["i"] = key.i;
        e["j"] = key.j;
        e["m"] = key.m;
        e["t"] = sig12(value);
        entries.push_back(e);
    }
    obj["entries"] = entries;
    return obj;
}

// -----------
// Experiments
// -----------

inline std::string family_kind_name(FamilyKind k) { return to_string(k); }

inline FamilyKind family_kind_from_string(const std::string& s) {
    if (s == "level_diagonal") return FamilyKind::LevelDiagonal;
    if (s == "unit_column") return FamilyKind::UnitColumn;
    if (s == "sparse_hierarchical") return FamilyKind::SparseHierarchical;
    if (s == "random") return FamilyKind::Random;
    throw std::invalid_argument("unknown family kind \"" + s + "\"");
}

inline Json scenario_to_json(const Scenario& sc) {
    Json obj;
    obj["name"] = sc.name;
    obj["paper_ref"] = sc.paper_ref;
    obj["description"] = sc.description;
    obj["src"] = space_to_json(sc.src);
    obj["tgt"] = space_to_json(sc.tgt);
    obj["family"] = family_kind_name(sc.family);
    if (sc.predicted_alpha) obj["predicted_alpha"] = sig12(*sc.predicted_alpha);
    return obj;
}

inline Scenario scenario_from_json(const Json& obj) {
    Scenario sc;
    sc.name = obj.at("name").get<std::string>();
    sc.paper_ref = obj.value("paper_ref", "");
    sc.description = obj.value("description", "");
    sc.src = space_from_json(obj.at("src"));
    sc.tgt = space_from_json(obj.at("tgt"));
    sc.family = family_kind_from_string(obj.at("family").get<std::string>());
    if (obj.contains("predicted_alpha")) sc.predicted_alpha = obj.at("predicted_alpha").get<double>();
    return sc;
}

inline std::vector<Scenario> scenarios_from_json(const Json& obj) {
    if (!obj.is_object() || !obj.contains("version") || !obj.contains("scenarios"))
        throw std::invalid_argument("scenario file needs {\"version\":1, \"scenarios\":[...]}");
    if (obj.at("version").get<int>() != 1)
        throw std::invalid_argument("unsupported scenario file version");
    std::vector<Scenario> out;
    for (const Json& e : obj.at("scenarios")) out.push_back(scenario_from_json(e));
    return out;
}

// -----------
// Grid sweeps
// -----------

inline GridSpec grid_from_json(const Json& obj) {
    GridSpec g = GridSpec::default_grid();
    auto read_list = [&](const char* field, std::vector<ExtRational>& into) {
        if (!obj.contains(field)) return;
        into.clear();
        for (const Json& e : obj.at(field)) into.push_back(rational_from_json(e, field));
        if (into.empty()) throw std::invalid_argument(std::string("grid field '") + field + "' is empty");
    };
    read_list("s", g.s_values);
    read_list("p", g.p_values);
    read_list("q", g.q_values);
    read_list("tau", g.tau_values);
    if (obj.contains("scales")) {
        g.scales.clear();
        for (const Json& e : obj.at("scales")) g.scales.push_back(scale_from_string(e.get<std::string>()));
        if (g.scales.empty()) throw std::invalid_argument("grid field 'scales' is empty");
    }
    if (obj.contains("settings")) {
        g.settings.clear();
        for (const Json& e : obj.at("settings")) {
            std::string s = e.get<std::string>();
            if (s == "domain")
                g.settings.push_back(Setting::Domain);
            else if (s == "rn")
                g.settings.push_back(Setting::Rn);
            else
                throw std::invalid_argument("grid settings must be \"domain\" or \"rn\"");
        }
        if (g.settings.empty()) throw std::invalid_argument("grid field 'settings' is empty");
    }
    g.d = obj.value("d", 1);
    if (g.d < 1) throw std::invalid_argument("grid dimension must be positive");
    return g;
}

inline Json ratio_report_to_json(const RatioReport& report) {
    Json obj;
    obj["scenario"] = scenario_to_json(report.scenario);
    obj["verdict"] = to_string(report.verdict);
    Json rows = Json::array();
    for (const RatioRow& r : report.rows) {
        Json row;
        row["J"] = r.J;
        row["src_norm"] = sig12(r.src_norm);
        row["tgt_norm"] = sig12(r.tgt_norm);
        row["ratio"] = sig12(r.ratio);
        rows.push_back(row);
    }
    obj["rows"] = rows;
    Json fit;
    fit["alpha"] = sig12(report.fit.alpha);
    fit["residual"] = sig12(report.fit.residual);
    if (report.fit.predicted) fit["predicted"] = sig12(*report.fit.predicted);
    fit["consistent"] = report.fit.consistent;
    obj["fit"] = fit;
    return obj;
}

}  // namespace morrey
