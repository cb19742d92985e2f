// Named simulation campaigns: each experiment of the study is encoded as a
// ScenarioSpec carrying the design-point defaults plus its own overrides,
// producing branches (steady-state sweeps) or trajectories (transients).

#ifndef ENDEX_SCENARIOS_HPP
#define ENDEX_SCENARIOS_HPP

#include <optional>
#include <string>
#include <utility>
#include <vector>

#include "endex/continuation.hpp"
#include "endex/model.hpp"
#include "endex/numerics.hpp"

namespace endex {

struct SweepSpec {
    TunableParam param;
    double from;
    double to;
    int points = 200;  // resolution hint: initial continuation step = range/points
};

// One member of a scenario family (one curve of a figure).
struct FamilyCase {
    std::string label;
    std::vector<std::pair<TunableParam, double>> overrides;
};

struct TimedChange {
    double time;  // s
    TunableParam param;
    double value;
};

enum class OutputKind { branch, trajectory, quasistatic };

enum class InitialCondition {
    steady_state,           // start on the operating point
    zero_gas_steady_temps,  // c = 0, temperatures at their steady values
};

struct ScenarioSpec {
    std::string name;
    ModelParams base{};
    std::vector<std::pair<TunableParam, double>> overrides;
    std::optional<SweepSpec> sweep;    // required for branch/quasistatic kinds
    std::vector<FamilyCase> family;    // empty: a single unnamed case
    std::vector<TimedChange> events;   // only valid for trajectory kind
    Mode mode = Mode::endex;
    OutputKind kind = OutputKind::branch;
    double t_end = 200.0;  // trajectory horizon [s]
    InitialCondition initial = InitialCondition::steady_state;

    void validate() const;               // throws DomainError on a bad combination
    ModelParams resolved_params() const; // base with scenario overrides applied
};

struct LabelledBranch {
    std::string label;
    Branch branch;
};

struct LabelledTrajectory {
    std::string label;
    Trajectory trajectory;
    ModelParams params;  // parameters the trajectory started with
};

struct ScenarioResult {
    ScenarioSpec spec;
    std::vector<LabelledBranch> branches;
    std::vector<LabelledTrajectory> trajectories;
    std::vector<std::string> notes;
    std::optional<std::string> error;  // solver failure; completed cases are kept
};

struct RunTolerances {
    double newton_tol = 1e-9;
    int newton_max_iter = 100;
    Tolerances integration{1e-8, 1e-10};
};

ScenarioResult run_scenario(const ScenarioSpec& spec, const RunTolerances& tol = {});

// ---------------------------------------------------------------------------
// Named campaigns

// Standalone carboniser steady states vs tau1 for four solids flow rates.
ScenarioSpec standalone_sweep_spec();
// Coupled steady states vs inlet gas temperature at two carboniser residence
// times; tau2 selects the calciner residence time (30 or 60 s commonly).
ScenarioSpec endex_inlet_sweep_spec(double tau2 = 30.0,
                                    std::pair<double, double> tau1_pair = {10.0, 15.0});
// Inlet-temperature sweeps at two sorbent flow rates, tau1 = tau2 = 15 s.
ScenarioSpec sorbent_flow_compare_spec();
// Coupled steady states vs tau1 for four solids flow rates, tau2 = 30 s.
ScenarioSpec endex_tau_sweep_spec();
// Steady states vs wall heat-exchange coefficient at four (tau1, Fs) pairs.
ScenarioSpec wall_coupling_sweep_spec();
// Start-up transient from zero CO2 at steady temperatures, tau2 in {10, 60} s.
ScenarioSpec startup_spec();
// Quasistatic shutdown: inlet CO2 pressure ramped from nominal to near zero.
ScenarioSpec shutdown_ramp_spec();
// Solids flow switched off at t = 100 s for four wall couplings.
ScenarioSpec solids_interruption_spec();
// Inlet-temperature scan from 473 K upward at weak solids flow (multiplicity
// region).
ScenarioSpec hysteresis_scan_spec();

std::vector<std::string> scenario_names();
ScenarioSpec scenario_by_name(const std::string& name);  // throws DomainError if unknown

// ---------------------------------------------------------------------------
// Operating-regime grid (product grid over the studied parameter ranges)

struct RegimeAxis {
    TunableParam param;
    double lo;
    double hi;
};

// The studied regime: T1_in 973-1273 K, tau1 0.1-20 s, Fs 10-40 kg/s,
// tau2 15-60 s, Lex 0-100 kW/K.
std::vector<RegimeAxis> regime_axes();

struct RegimePoint {
    ModelParams params;
    SteadyStateRecord record;
};

std::vector<RegimePoint> regime_grid(const ModelParams& base, int points_per_axis = 5);

// Adiabatic temperature rise for complete conversion of the inflow against
// the gas-only heat capacity, c1_in |dH| / C1g  [K].
double adiabatic_temperature_rise(const ModelParams& P);

}  // namespace endex

#endif  // ENDEX_SCENARIOS_HPP
