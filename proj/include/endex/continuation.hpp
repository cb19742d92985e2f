// Steady-state branch continuation: traces solution branches against a
// bifurcation parameter, classifies stability pointwise, detects and refines
// singular points (folds, Hopf points), and continues fold points in a
// second parameter.
//
// The engine is generic over a parametrized residual so the synthetic test
// systems share the exact code path used for the reactor model.

#ifndef ENDEX_CONTINUATION_HPP
#define ENDEX_CONTINUATION_HPP

#include <array>
#include <complex>
#include <functional>
#include <optional>
#include <string>
#include <vector>

#include "endex/model.hpp"
#include "endex/numerics.hpp"

namespace endex {

// Tunable scalars of ModelParams usable as bifurcation parameters.
enum class TunableParam { T1_in, tau1, tau2, Fs, Lex, pc_in, Ts_in };

const char* param_name(TunableParam p);
const char* param_unit(TunableParam p);
std::optional<TunableParam> param_from_name(const std::string& name);
double get_param(const ModelParams& P, TunableParam p);
void set_param(ModelParams& P, TunableParam p, double value);

// Which dynamical system a branch belongs to.
enum class Mode { standalone, endex };

// Pressures and conversion recomputed from a steady state; the calciner
// entries are NaN for standalone-mode records.
struct DerivedQuantities {
    double p1 = 0, p1_eq = 0;
    double p2 = 0, p2_eq = 0;
    double conversion = 0;  // 1 - c1/c1_in
};

struct SteadyStateRecord {
    double param_value;
    Vec state;
    EigenSet eigen;
    StabilityClass stability;
    double residual_norm;  // scaled infinity norm
    DerivedQuantities derived;
};

enum class SingularKind { fold, hopf };

struct SingularPoint {
    SingularKind kind;
    double param_value;
    Vec state;
    std::complex<double> crossing_eigenvalue;
    bool low_confidence = false;  // refinement hit its iteration cap
};

struct StepControl {
    double initial_fraction = 1.0 / 200;  // of the parameter range
    double min_fraction = 1e-5;
    double max_fraction = 1.0 / 50;
    enum class Mode { automatic, natural, arclength } stepping = Mode::automatic;
    int max_records = 4000;
    // treat |Im lambda| below this as real when classifying crossings [1/s]
    double imag_tol = 1e-9;
};

struct Branch {
    std::string param;  // bifurcation parameter name
    std::vector<SteadyStateRecord> records;     // ordered by arclength
    std::vector<SingularPoint> singular_points;
    bool truncated = false;  // trace ended before reaching the far end
};

// Seeding at the starting parameter value failed.
class SeedError : public std::runtime_error {
public:
    explicit SeedError(const std::string& what) : std::runtime_error(what) {}
};

// Fold-locus continuation lost the fold immediately.
class DegenerateLocusError : public std::runtime_error {
public:
    explicit DegenerateLocusError(const std::string& what) : std::runtime_error(what) {}
};

// ---------------------------------------------------------------------------
// Generic engine

// Residual of a one-parameter family of steady-state problems.
struct ParametrizedSystem {
    std::function<Vec(const Vec& x, double param)> rhs;
    Vec state_scales;        // componentwise norms/FD floors; empty = ones
    double param_scale = 1;  // magnitude used for relative parameter tolerances
    // optional per-record decoration (pressures, conversion)
    std::function<DerivedQuantities(const Vec& x, double param)> derive;
};

Branch trace_branch_generic(const ParametrizedSystem& sys, double from, double to,
                            const Vec& seed_guess, StepControl ctrl = {},
                            NewtonOptions nopt = {});

std::vector<SingularPoint> detect_singularities_generic(const ParametrizedSystem& sys,
                                                        const Branch& b,
                                                        StepControl ctrl = {},
                                                        NewtonOptions nopt = {});

// Two-parameter residual family for fold-locus continuation.
struct TwoParamSystem {
    std::function<Vec(const Vec& x, double primary, double second)> rhs;
    Vec state_scales;
    double primary_scale = 1;
};

// Polyline of (primary, second) fold locations. fold_lost is set when the
// fold ceased to exist (bracket lost) before the second parameter reached
// the end of its range.
struct FoldLocus {
    std::vector<std::array<double, 2>> points;
    bool fold_lost = false;
};

FoldLocus trace_fold_locus_generic(const TwoParamSystem& sys, const SingularPoint& fold,
                                   double second_from, double second_to,
                                   StepControl ctrl = {}, NewtonOptions nopt = {});

// ---------------------------------------------------------------------------
// Reactor-model wrappers

// Residual closure for one reactor mode with one tunable parameter freed.
ParametrizedSystem reactor_system(const ModelParams& P, Mode mode, TunableParam param);

// Default Newton options for reactor steady states (scaled residual norm).
NewtonOptions reactor_newton_options(const ModelParams& P, Mode mode);

// Transient-settled seed: integrate 200 s from (c1 = c1_in, T1 = T1_in,
// c2 = 0, T2 = T1_in) and return the terminal state.
Vec transient_seed(const ModelParams& P, Mode mode, double settle_time = 200.0);

// Newton steady state from the transient seed (or a supplied guess).
Vec steady_state(const ModelParams& P, Mode mode, std::optional<Vec> guess = {},
                 std::optional<NewtonOptions> nopt = {});

// Full record (eigenvalues, stability, derived pressures) at fixed parameters.
SteadyStateRecord solve_record(const ModelParams& P, Mode mode,
                               std::optional<Vec> guess = {},
                               std::optional<NewtonOptions> nopt = {});

Branch trace_branch(const ModelParams& P, Mode mode, TunableParam param, double from,
                    double to, std::optional<Vec> initial_guess = {}, StepControl ctrl = {},
                    std::optional<NewtonOptions> nopt = {});

std::vector<SingularPoint> detect_singularities(const ModelParams& P, Mode mode,
                                                TunableParam param, const Branch& b);

FoldLocus trace_fold_locus(const ModelParams& P, Mode mode, TunableParam primary,
                           const SingularPoint& fold, TunableParam second, double from,
                           double to, StepControl ctrl = {});

}  // namespace endex

#endif  // ENDEX_CONTINUATION_HPP
