#include "endex/config.hpp"

#include <cmath>
#include <fstream>
#include <functional>
#include <map>

namespace endex {

namespace {

using nlohmann::json;

struct UnitAlt {
    const char* unit;
    double factor;
};

struct FieldInfo {
    const char* unit;  // canonical (SI) unit string
    std::vector<UnitAlt> alternates;
    std::function<void(ModelParams&, double)> set;
    std::function<double(const ModelParams&)> get;
};

const std::map<std::string, FieldInfo>& field_table() {
    static const std::map<std::string, FieldInfo> table = [] {
        std::map<std::string, FieldInfo> t;
        auto tunable = [&](TunableParam p, std::vector<UnitAlt> alts) {
            t[param_name(p)] = FieldInfo{
                param_unit(p), std::move(alts),
                [p](ModelParams& P, double v) { set_param(P, p, v); },
                [p](const ModelParams& P) { return get_param(P, p); }};
        };
        tunable(TunableParam::T1_in, {});
        tunable(TunableParam::tau1, {});
        tunable(TunableParam::tau2, {});
        tunable(TunableParam::Fs, {});
        tunable(TunableParam::Lex, {{"kW/K", 1e3}});
        tunable(TunableParam::pc_in, {{"kPa", 1e3}, {"MPa", 1e6}});
        tunable(TunableParam::Ts_in, {});

        t["A"] = {"mol/(m^3 s)", {},
                  [](ModelParams& P, double v) { P.kinetics.pre_exponential = v; },
                  [](const ModelParams& P) { return P.kinetics.pre_exponential; }};
        t["E"] = {"J/mol", {{"kJ/mol", 1e3}},
                  [](ModelParams& P, double v) { P.kinetics.activation_energy = v; },
                  [](const ModelParams& P) { return P.kinetics.activation_energy; }};
        t["dH"] = {"J/mol", {{"kJ/mol", 1e3}},
                   [](ModelParams& P, double v) { P.kinetics.reaction_enthalpy = v; },
                   [](const ModelParams& P) { return P.kinetics.reaction_enthalpy; }};
        t["p0"] = {"Pa", {{"kPa", 1e3}, {"MPa", 1e6}},
                   [](ModelParams& P, double v) { P.kinetics.p0 = v; },
                   [](const ModelParams& P) { return P.kinetics.p0; }};
        t["eps"] = {"1", {{"dimensionless", 1.0}},
                    [](ModelParams& P, double v) { P.kinetics.porosity = v; },
                    [](const ModelParams& P) { return P.kinetics.porosity; }};
        t["S"] = {"m^2/m^3", {},
                  [](ModelParams& P, double v) { P.kinetics.surface_area = v; },
                  [](const ModelParams& P) { return P.kinetics.surface_area; }};
        t["kappa"] = {"1", {{"dimensionless", 1.0}},
                      [](ModelParams& P, double v) { P.kinetics.rate_scale = v; },
                      [](const ModelParams& P) { return P.kinetics.rate_scale; }};

        t["V1"] = {"m^3", {},
                   [](ModelParams& P, double v) { P.carboniser.volume = v; },
                   [](const ModelParams& P) { return P.carboniser.volume; }};
        t["V2"] = {"m^3", {},
                   [](ModelParams& P, double v) { P.calciner.volume = v; },
                   [](const ModelParams& P) { return P.calciner.volume; }};
        t["zeta1"] = {"1", {{"dimensionless", 1.0}},
                      [](ModelParams& P, double v) { P.carboniser.solid_fraction = v; },
                      [](const ModelParams& P) { return P.carboniser.solid_fraction; }};
        t["zeta2"] = {"1", {{"dimensionless", 1.0}},
                      [](ModelParams& P, double v) { P.calciner.solid_fraction = v; },
                      [](const ModelParams& P) { return P.calciner.solid_fraction; }};
        t["C1"] = {"J/(K m^3)", {{"kJ/(K m^3)", 1e3}},
                   [](ModelParams& P, double v) { P.carboniser.contents_heat_capacity = v; },
                   [](const ModelParams& P) { return P.carboniser.contents_heat_capacity; }};
        t["C2"] = {"J/(K m^3)", {{"kJ/(K m^3)", 1e3}},
                   [](ModelParams& P, double v) { P.calciner.contents_heat_capacity = v; },
                   [](const ModelParams& P) { return P.calciner.contents_heat_capacity; }};
        t["C1g"] = {"J/(K m^3)", {{"kJ/(K m^3)", 1e3}},
                    [](ModelParams& P, double v) { P.carboniser.gas_heat_capacity = v; },
                    [](const ModelParams& P) { return P.carboniser.gas_heat_capacity; }};
        t["C2g"] = {"J/(K m^3)", {{"kJ/(K m^3)", 1e3}},
                    [](ModelParams& P, double v) { P.calciner.gas_heat_capacity = v; },
                    [](const ModelParams& P) { return P.calciner.gas_heat_capacity; }};
        t["Cs"] = {"J/(K kg)", {{"kJ/(K kg)", 1e3}},
                   [](ModelParams& P, double v) { P.flow.sorbent_heat_capacity = v; },
                   [](const ModelParams& P) { return P.flow.sorbent_heat_capacity; }};
        return t;
    }();
    return table;
}

[[noreturn]] void fail(const std::string& msg) { throw ConfigError(msg); }

void require_keys(const json& j, const std::string& where,
                  std::initializer_list<const char*> allowed) {
    for (const auto& [key, val] : j.items()) {
        bool ok = false;
        for (const char* a : allowed)
            if (key == a) ok = true;
        if (!ok) fail("unknown field '" + key + "' in " + where);
    }
}

// {"value": 20, "unit": "kg/s"} -> SI double for the named field
double parse_quantity(const std::string& field, const json& j) {
    if (!j.is_object()) fail("field '" + field + "' must be {\"value\": ..., \"unit\": ...}");
    require_keys(j, "'" + field + "'", {"value", "unit"});
    if (!j.contains("value") || !j["value"].is_number())
        fail("field '" + field + "' needs a numeric \"value\"");
    if (!j.contains("unit") || !j["unit"].is_string())
        fail("field '" + field + "' needs a \"unit\" string");
    return convert_to_si(field, j["value"].get<double>(), j["unit"].get<std::string>());
}

TunableParam parse_param_name(const std::string& name, const std::string& where) {
    auto p = param_from_name(name);
    if (!p) fail("unknown parameter '" + name + "' in " + where);
    return *p;
}

void apply_overrides(ModelParams& P, const json& j) {
    for (const auto& [key, val] : j.items()) {
        auto it = field_table().find(key);
        if (it == field_table().end()) fail("unknown parameter name '" + key + "' in overrides");
        it->second.set(P, parse_quantity(key, val));
    }
}

Mode parse_mode(const json& j) {
    const std::string m = j.get<std::string>();
    if (m == "endex") return Mode::endex;
    if (m == "standalone") return Mode::standalone;
    fail("mode must be \"endex\" or \"standalone\", got \"" + m + "\"");
}

OutputKind parse_kind(const json& j) {
    const std::string k = j.get<std::string>();
    if (k == "branch") return OutputKind::branch;
    if (k == "trajectory") return OutputKind::trajectory;
    if (k == "quasistatic") return OutputKind::quasistatic;
    fail("kind must be branch, trajectory, or quasistatic, got \"" + k + "\"");
}

InitialCondition parse_initial(const json& j) {
    const std::string s = j.get<std::string>();
    if (s == "steady_state") return InitialCondition::steady_state;
    if (s == "zero_gas_steady_temps") return InitialCondition::zero_gas_steady_temps;
    fail("initial must be steady_state or zero_gas_steady_temps, got \"" + s + "\"");
}

ScenarioSpec parse_custom_scenario(const json& j) {
    require_keys(j, "scenario", {"name", "mode", "kind", "params", "sweep", "family", "events",
                                 "t_end", "initial"});
    ScenarioSpec s;
    s.name = j.value("name", std::string("custom"));
    if (j.contains("mode")) s.mode = parse_mode(j["mode"]);
    if (j.contains("kind")) s.kind = parse_kind(j["kind"]);
    if (j.contains("params")) apply_overrides(s.base, j["params"]);
    if (j.contains("t_end")) s.t_end = j["t_end"].get<double>();
    if (j.contains("initial")) s.initial = parse_initial(j["initial"]);

    if (j.contains("sweep")) {
        const json& sw = j["sweep"];
        require_keys(sw, "sweep", {"param", "from", "to", "points"});
        SweepSpec spec{};
        const std::string pname = sw.at("param").get<std::string>();
        spec.param = parse_param_name(pname, "sweep");
        spec.from = parse_quantity(pname, sw.at("from"));
        spec.to = parse_quantity(pname, sw.at("to"));
        spec.points = sw.value("points", 200);
        s.sweep = spec;
    }
    if (j.contains("family")) {
        for (const json& fc : j["family"]) {
            require_keys(fc, "family entry", {"label", "overrides"});
            FamilyCase c;
            c.label = fc.at("label").get<std::string>();
            for (const auto& [key, val] : fc.at("overrides").items()) {
                const TunableParam p = parse_param_name(key, "family overrides");
                c.overrides.emplace_back(p, parse_quantity(key, val));
            }
            s.family.push_back(std::move(c));
        }
    }
    if (j.contains("events")) {
        for (const json& ev : j["events"]) {
            require_keys(ev, "event", {"time", "param", "value"});
            TimedChange tc{};
            tc.time = ev.at("time").get<double>();
            const std::string pname = ev.at("param").get<std::string>();
            tc.param = parse_param_name(pname, "events");
            tc.value = parse_quantity(pname, ev.at("value"));
            s.events.push_back(tc);
        }
    }
    return s;
}

}  // namespace

std::string expected_unit(const std::string& field) {
    auto it = field_table().find(field);
    if (it == field_table().end()) fail("unknown parameter name '" + field + "'");
    return it->second.unit;
}

double convert_to_si(const std::string& field, double value, const std::string& unit) {
    auto it = field_table().find(field);
    if (it == field_table().end()) fail("unknown parameter name '" + field + "'");
    if (unit == it->second.unit) return value;
    for (const auto& alt : it->second.alternates)
        if (unit == alt.unit) return value * alt.factor;
    fail("unit mismatch for '" + field + "': got \"" + unit + "\", expected \"" +
         it->second.unit + "\"");
}

void set_model_field(ModelParams& P, const std::string& field, double si_value) {
    auto it = field_table().find(field);
    if (it == field_table().end()) fail("unknown parameter name '" + field + "'");
    it->second.set(P, si_value);
}

RunConfig config_from_json(const nlohmann::json& j) {
    require_keys(j, "config", {"scenario", "overrides", "output_dir", "format", "tolerances"});
    RunConfig cfg;

    if (!j.contains("scenario")) {
        // no scenario: a plain transient at the design-point defaults
        cfg.spec.name = "default";
        cfg.spec.kind = OutputKind::trajectory;
        cfg.spec.initial = InitialCondition::steady_state;
    } else if (j["scenario"].is_string()) {
        cfg.spec = scenario_by_name(j["scenario"].get<std::string>());
    } else if (j["scenario"].is_object()) {
        cfg.spec = parse_custom_scenario(j["scenario"]);
    } else {
        fail("\"scenario\" must be a name or an object");
    }

    if (j.contains("overrides")) {
        // user overrides take effect after the scenario's own pinned values
        for (const auto& [key, val] : j["overrides"].items()) {
            auto it = field_table().find(key);
            if (it == field_table().end())
                fail("unknown parameter name '" + key + "' in overrides");
            const double si = parse_quantity(key, val);
            if (auto p = param_from_name(key))
                cfg.spec.overrides.emplace_back(*p, si);
            else
                it->second.set(cfg.spec.base, si);
        }
    }

    if (j.contains("output_dir")) cfg.output_dir = j["output_dir"].get<std::string>();
    if (j.contains("format")) {
        require_keys(j["format"], "format", {"csv", "json"});
        cfg.format.csv = j["format"].value("csv", true);
        cfg.format.json = j["format"].value("json", true);
    }
    if (j.contains("tolerances")) {
        const json& t = j["tolerances"];
        require_keys(t, "tolerances",
                     {"newton_tol", "newton_max_iter", "integrate_rel", "integrate_abs"});
        cfg.tolerances.newton_tol = t.value("newton_tol", cfg.tolerances.newton_tol);
        cfg.tolerances.newton_max_iter =
            t.value("newton_max_iter", cfg.tolerances.newton_max_iter);
        cfg.tolerances.integration.rel =
            t.value("integrate_rel", cfg.tolerances.integration.rel);
        cfg.tolerances.integration.abs =
            t.value("integrate_abs", cfg.tolerances.integration.abs);
    }

    try {
        cfg.spec.validate();
    } catch (const DomainError& e) {
        fail(std::string("invalid scenario: ") + e.what());
    }
    return cfg;
}

RunConfig load_config(const std::string& path) {
    std::ifstream in(path);
    if (!in) fail("cannot open config file: " + path);
    nlohmann::json j;
    try {
        in >> j;
    } catch (const nlohmann::json::exception& e) {
        fail("config parse error in " + path + ": " + e.what());
    }
    return config_from_json(j);
}

nlohmann::json resolved_config_json(const RunConfig& cfg) {
    using nlohmann::json;
    json j;

    // the scenario is emitted fully resolved: base + overrides folded into
    // an explicit parameter set, so the block is a reloadable config
    const ModelParams P = cfg.spec.resolved_params();
    json params = json::object();
    for (const auto& [name, info] : field_table())
        params[name] = {{"value", info.get(P)}, {"unit", info.unit}};

    json sc;
    sc["name"] = cfg.spec.name;
    sc["mode"] = cfg.spec.mode == Mode::endex ? "endex" : "standalone";
    switch (cfg.spec.kind) {
        case OutputKind::branch: sc["kind"] = "branch"; break;
        case OutputKind::trajectory: sc["kind"] = "trajectory"; break;
        case OutputKind::quasistatic: sc["kind"] = "quasistatic"; break;
    }
    sc["params"] = params;
    if (cfg.spec.sweep) {
        const auto& sw = *cfg.spec.sweep;
        sc["sweep"] = {{"param", param_name(sw.param)},
                       {"from", {{"value", sw.from}, {"unit", param_unit(sw.param)}}},
                       {"to", {{"value", sw.to}, {"unit", param_unit(sw.param)}}},
                       {"points", sw.points}};
    }
    if (!cfg.spec.family.empty()) {
        json fam = json::array();
        for (const auto& fc : cfg.spec.family) {
            json ov = json::object();
            for (const auto& [p, v] : fc.overrides)
                ov[param_name(p)] = {{"value", v}, {"unit", param_unit(p)}};
            fam.push_back({{"label", fc.label}, {"overrides", ov}});
        }
        sc["family"] = fam;
    }
    if (!cfg.spec.events.empty()) {
        json evs = json::array();
        for (const auto& ev : cfg.spec.events)
            evs.push_back({{"time", ev.time},
                           {"param", param_name(ev.param)},
                           {"value", {{"value", ev.value}, {"unit", param_unit(ev.param)}}}});
        sc["events"] = evs;
    }
    if (cfg.spec.kind == OutputKind::trajectory) {
        sc["t_end"] = cfg.spec.t_end;
        sc["initial"] = cfg.spec.initial == InitialCondition::steady_state
                            ? "steady_state"
                            : "zero_gas_steady_temps";
    }

    j["scenario"] = sc;
    j["output_dir"] = cfg.output_dir;
    j["format"] = {{"csv", cfg.format.csv}, {"json", cfg.format.json}};
    j["tolerances"] = {{"newton_tol", cfg.tolerances.newton_tol},
                       {"newton_max_iter", cfg.tolerances.newton_max_iter},
                       {"integrate_rel", cfg.tolerances.integration.rel},
                       {"integrate_abs", cfg.tolerances.integration.abs}};
    return j;
}

}  // namespace endex
