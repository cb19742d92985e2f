#include "endex/scenarios.hpp"

#include <algorithm>
#include <cmath>
#include <sstream>

namespace endex {

namespace {

std::string format_value(double v) {
    std::ostringstream os;
    os << v;
    return os.str();
}

Vec reactor_rhs_vec(const ModelParams& P, Mode mode, const Vec& x) {
    if (mode == Mode::endex) {
        const auto d = endex_rhs(EndexState{x[0], x[1], x[2], x[3]}, P);
        return Vec(d.begin(), d.end());
    }
    const auto d = standalone_rhs(CarboniserState{x[0], x[1]}, P);
    return Vec(d.begin(), d.end());
}

StateGuard concentration_guard() {
    return [](double, Vec& y) -> std::optional<std::string> {
        bool acted = false;
        for (size_t i = 0; i < y.size(); i += 2)
            if (y[i] < 0.0) {
                y[i] = 0.0;
                acted = true;
            }
        if (acted) return std::string("clamped negative concentration");
        return std::nullopt;
    };
}

NewtonOptions newton_for(const ModelParams& P, Mode mode, const RunTolerances& tol) {
    NewtonOptions opt = reactor_newton_options(P, mode);
    opt.tol = tol.newton_tol;
    opt.max_iter = tol.newton_max_iter;
    return opt;
}

}  // namespace

void ScenarioSpec::validate() const {
    if (!events.empty() && kind != OutputKind::trajectory)
        throw DomainError("ScenarioSpec '" + name + "': events require trajectory output");
    if ((kind == OutputKind::branch || kind == OutputKind::quasistatic) && !sweep)
        throw DomainError("ScenarioSpec '" + name + "': branch/quasistatic output needs a sweep");
    if (kind == OutputKind::trajectory && !(t_end > 0.0))
        throw DomainError("ScenarioSpec '" + name + "': t_end must be > 0");
    resolved_params().validate();
}

ModelParams ScenarioSpec::resolved_params() const {
    ModelParams P = base;
    for (const auto& [p, v] : overrides) set_param(P, p, v);
    return P;
}

ScenarioResult run_scenario(const ScenarioSpec& spec, const RunTolerances& tol) {
    spec.validate();
    ScenarioResult out;
    out.spec = spec;

    std::vector<FamilyCase> cases = spec.family;
    if (cases.empty()) cases.push_back({"run", {}});

    for (const auto& fc : cases) {
        ModelParams P = spec.resolved_params();
        for (const auto& [p, v] : fc.overrides) set_param(P, p, v);
        P.validate();

        try {
        if (spec.kind == OutputKind::branch || spec.kind == OutputKind::quasistatic) {
            StepControl ctrl;
            if (spec.sweep->points > 0)
                ctrl.initial_fraction = 1.0 / spec.sweep->points;
            // a quasistatic ramp keeps its resolution fixed so local slopes
            // (e.g. d p1 / d pc_in) are well resolved along the whole ramp
            if (spec.kind == OutputKind::quasistatic)
                ctrl.max_fraction = ctrl.initial_fraction;
            Branch b = trace_branch(P, spec.mode, spec.sweep->param, spec.sweep->from,
                                    spec.sweep->to, {}, ctrl, newton_for(P, spec.mode, tol));
            out.branches.push_back({fc.label, std::move(b)});
        } else {
            const NewtonOptions nopt = newton_for(P, spec.mode, tol);
            const Vec ss = steady_state(P, spec.mode, std::nullopt, nopt);
            Vec y0 = ss;
            if (spec.initial == InitialCondition::zero_gas_steady_temps)
                for (size_t i = 0; i < y0.size(); i += 2) y0[i] = 0.0;

            // each event freezes a fresh parameter set for the rest of the run
            std::vector<RhsChange> changes;
            ModelParams cur = P;
            std::vector<TimedChange> evs = spec.events;
            std::sort(evs.begin(), evs.end(),
                      [](const TimedChange& a, const TimedChange& b) { return a.time < b.time; });
            for (const auto& ev : evs) {
                set_param(cur, ev.param, ev.value);  // changes accumulate
                ModelParams frozen = cur;
                const Mode mode = spec.mode;
                changes.push_back({ev.time,
                                   std::string(param_name(ev.param)) + " -> " +
                                       format_value(ev.value),
                                   [frozen, mode](const Vec& y) {
                                       return reactor_rhs_vec(frozen, mode, y);
                                   }});
            }

            const ModelParams start = P;
            const Mode mode = spec.mode;
            auto rhs = [start, mode](const Vec& y) { return reactor_rhs_vec(start, mode, y); };
            Trajectory traj = integrate(rhs, y0, 0.0, spec.t_end, tol.integration, changes,
                                        concentration_guard());
            out.trajectories.push_back({fc.label, std::move(traj), P});
        }
        } catch (const std::exception& e) {
            out.error = "case '" + fc.label + "': " + e.what();
            break;  // completed cases are returned as partial output
        }
    }

    if (spec.mode == Mode::endex) {
        out.notes.push_back("adiabatic_temperature_rise_K=" +
                            format_value(adiabatic_temperature_rise(spec.resolved_params())));
    }
    return out;
}

// ---------------------------------------------------------------------------
// Named campaigns

namespace {

FamilyCase one(const std::string& label, TunableParam p, double v) {
    return {label, {{p, v}}};
}

}  // namespace

ScenarioSpec standalone_sweep_spec() {
    ScenarioSpec s;
    s.name = "standalone_sweep";
    s.mode = Mode::standalone;
    s.kind = OutputKind::branch;
    s.overrides = {{TunableParam::T1_in, 1060.0}, {TunableParam::Ts_in, 1021.0}};
    s.sweep = SweepSpec{TunableParam::tau1, 0.1, 20.0, 200};
    for (double fs : {10.0, 20.0, 30.0, 40.0})
        s.family.push_back(one("Fs_" + format_value(fs), TunableParam::Fs, fs));
    return s;
}

ScenarioSpec endex_inlet_sweep_spec(double tau2, std::pair<double, double> tau1_pair) {
    ScenarioSpec s;
    s.name = "endex_inlet_sweep_tau2_" + format_value(tau2);
    s.mode = Mode::endex;
    s.kind = OutputKind::branch;
    s.overrides = {{TunableParam::tau2, tau2},
                   {TunableParam::Fs, 20.0},
                   {TunableParam::Lex, 0.0}};
    s.sweep = SweepSpec{TunableParam::T1_in, 973.0, 1273.0, 200};
    for (double t1 : {tau1_pair.first, tau1_pair.second})
        s.family.push_back(one("tau1_" + format_value(t1), TunableParam::tau1, t1));
    return s;
}

ScenarioSpec sorbent_flow_compare_spec() {
    ScenarioSpec s;
    s.name = "sorbent_flow_compare";
    s.mode = Mode::endex;
    s.kind = OutputKind::branch;
    s.overrides = {{TunableParam::tau1, 15.0},
                   {TunableParam::tau2, 15.0},
                   {TunableParam::Lex, 0.0}};
    s.sweep = SweepSpec{TunableParam::T1_in, 973.0, 1273.0, 200};
    for (double fs : {10.0, 40.0})
        s.family.push_back(one("Fs_" + format_value(fs), TunableParam::Fs, fs));
    return s;
}

ScenarioSpec endex_tau_sweep_spec() {
    ScenarioSpec s;
    s.name = "endex_tau_sweep";
    s.mode = Mode::endex;
    s.kind = OutputKind::branch;
    s.overrides = {{TunableParam::tau2, 30.0},
                   {TunableParam::T1_in, 1060.0},
                   {TunableParam::Lex, 0.0}};
    s.sweep = SweepSpec{TunableParam::tau1, 0.1, 20.0, 200};
    for (double fs : {10.0, 20.0, 30.0, 40.0})
        s.family.push_back(one("Fs_" + format_value(fs), TunableParam::Fs, fs));
    return s;
}

ScenarioSpec wall_coupling_sweep_spec() {
    ScenarioSpec s;
    s.name = "wall_coupling_sweep";
    s.mode = Mode::endex;
    s.kind = OutputKind::branch;
    s.overrides = {{TunableParam::tau2, 30.0}, {TunableParam::T1_in, 1060.0}};
    s.sweep = SweepSpec{TunableParam::Lex, 0.0, 100.0e3, 200};
    s.family = {
        {"tau1_10_Fs_20", {{TunableParam::tau1, 10.0}, {TunableParam::Fs, 20.0}}},
        {"tau1_15_Fs_20", {{TunableParam::tau1, 15.0}, {TunableParam::Fs, 20.0}}},
        {"tau1_15_Fs_40", {{TunableParam::tau1, 15.0}, {TunableParam::Fs, 40.0}}},
        {"tau1_20_Fs_40", {{TunableParam::tau1, 20.0}, {TunableParam::Fs, 40.0}}},
    };
    return s;
}

ScenarioSpec startup_spec() {
    ScenarioSpec s;
    s.name = "startup";
    s.mode = Mode::endex;
    s.kind = OutputKind::trajectory;
    s.initial = InitialCondition::zero_gas_steady_temps;
    s.t_end = 200.0;
    s.overrides = {{TunableParam::tau1, 15.0},
                   {TunableParam::Fs, 20.0},
                   {TunableParam::Lex, 0.0},
                   {TunableParam::T1_in, 1060.0}};
    // both endpoints of the studied calciner residence-time range are run
    for (double t2 : {10.0, 60.0})
        s.family.push_back(one("tau2_" + format_value(t2), TunableParam::tau2, t2));
    return s;
}

ScenarioSpec shutdown_ramp_spec() {
    ScenarioSpec s;
    s.name = "shutdown_ramp";
    s.mode = Mode::endex;
    s.kind = OutputKind::quasistatic;
    s.overrides = {{TunableParam::Fs, 20.0},
                   {TunableParam::tau1, 15.0},
                   {TunableParam::tau2, 15.0},
                   {TunableParam::T1_in, 1060.0},
                   {TunableParam::Lex, 0.0}};
    s.sweep = SweepSpec{TunableParam::pc_in, ModelParams{}.flow.inlet_co2_pressure, 1.0e3, 400};
    return s;
}

ScenarioSpec solids_interruption_spec() {
    ScenarioSpec s;
    s.name = "solids_interruption";
    s.mode = Mode::endex;
    s.kind = OutputKind::trajectory;
    s.initial = InitialCondition::steady_state;
    s.t_end = 700.0;
    s.overrides = {{TunableParam::tau1, 15.0},
                   {TunableParam::tau2, 15.0},
                   {TunableParam::T1_in, 1060.0},
                   {TunableParam::Fs, 40.0}};
    s.events = {{100.0, TunableParam::Fs, 0.0}};
    for (double lex : {0.0, 1.0e3, 5.0e3, 10.0e3})
        s.family.push_back(one("Lex_" + format_value(lex), TunableParam::Lex, lex));
    return s;
}

ScenarioSpec hysteresis_scan_spec() {
    ScenarioSpec s;
    s.name = "hysteresis_scan";
    s.mode = Mode::endex;
    s.kind = OutputKind::branch;
    s.overrides = {{TunableParam::Fs, 5.0},
                   {TunableParam::tau1, 2.4},
                   {TunableParam::tau2, 15.0},
                   {TunableParam::Lex, 0.0}};
    s.sweep = SweepSpec{TunableParam::T1_in, 473.0, 1100.0, 200};
    return s;
}

std::vector<std::string> scenario_names() {
    return {"standalone_sweep",      "endex_inlet_sweep_tau2_30",
            "endex_inlet_sweep_tau2_60", "sorbent_flow_compare",
            "endex_tau_sweep",       "wall_coupling_sweep",
            "startup",               "shutdown_ramp",
            "solids_interruption",   "hysteresis_scan"};
}

ScenarioSpec scenario_by_name(const std::string& name) {
    if (name == "standalone_sweep") return standalone_sweep_spec();
    if (name == "endex_inlet_sweep_tau2_30") return endex_inlet_sweep_spec(30.0);
    if (name == "endex_inlet_sweep_tau2_60") return endex_inlet_sweep_spec(60.0);
    if (name == "sorbent_flow_compare") return sorbent_flow_compare_spec();
    if (name == "endex_tau_sweep") return endex_tau_sweep_spec();
    if (name == "wall_coupling_sweep") return wall_coupling_sweep_spec();
    if (name == "startup") return startup_spec();
    if (name == "shutdown_ramp") return shutdown_ramp_spec();
    if (name == "solids_interruption") return solids_interruption_spec();
    if (name == "hysteresis_scan") return hysteresis_scan_spec();
    throw DomainError("unknown scenario: " + name);
}

// ---------------------------------------------------------------------------
// Regime grid

std::vector<RegimeAxis> regime_axes() {
    return {{TunableParam::T1_in, 973.0, 1273.0},
            {TunableParam::tau1, 0.1, 20.0},
            {TunableParam::Fs, 10.0, 40.0},
            {TunableParam::tau2, 15.0, 60.0},
            {TunableParam::Lex, 0.0, 100.0e3}};
}

std::vector<RegimePoint> regime_grid(const ModelParams& base, int points_per_axis) {
    const auto axes = regime_axes();
    const int n = points_per_axis;
    std::vector<RegimePoint> out;

    std::vector<int> idx(axes.size(), 0);
    while (true) {
        ModelParams P = base;
        for (size_t a = 0; a < axes.size(); ++a) {
            const double f = (n == 1) ? 0.0 : static_cast<double>(idx[a]) / (n - 1);
            set_param(P, axes[a].param, axes[a].lo + f * (axes[a].hi - axes[a].lo));
        }
        RegimePoint pt;
        pt.params = P;
        pt.record = solve_record(P, Mode::endex);
        out.push_back(std::move(pt));

        size_t a = 0;
        while (a < axes.size() && ++idx[a] == n) idx[a++] = 0;
        if (a == axes.size()) break;
    }
    return out;
}

double adiabatic_temperature_rise(const ModelParams& P) {
    return P.c1_in() * std::abs(P.kinetics.reaction_enthalpy) /
           P.carboniser.gas_heat_capacity;
}

}  // namespace endex
