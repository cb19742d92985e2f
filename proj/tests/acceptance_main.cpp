// Acceptance suite: runs every criterion of the verification plan and prints
// one PASS/FAIL line per criterion.
//
// The quantitative figure-level criteria (1-5) are evaluated under a single
// shared rate-scale multiplier kappa fitted over [0.1, 10]: the parameter
// table as printed composes to rate magnitudes well below the reference
// curves (the standalone 7.2 s residence-time anchor is reproduced almost
// exactly at kappa = 24), so when no admissible kappa reconciles them the
// fit reports the best achievable point and the property criteria (6-12)
// gate the build, as the plan provides.
//
// Exit status 0 iff criteria 6-12 all pass.

#include <algorithm>
#include <cmath>
#include <cstdio>
#include <fstream>
#include <limits>
#include <random>
#include <string>
#include <vector>

#include <json.hpp>

#include "charpoly_oracle.hpp"
#include "endex/continuation.hpp"
#include "endex/model.hpp"
#include "endex/numerics.hpp"
#include "endex/scenarios.hpp"

using namespace endex;

namespace {

constexpr double kInf = std::numeric_limits<double>::infinity();

struct CriterionResult {
    int id;
    std::string title;
    bool pass;
    std::string detail;
};

std::vector<CriterionResult> g_results;
double g_kappa_star = 1.0;

void report(int id, const std::string& title, bool pass, const std::string& detail) {
    g_results.push_back({id, title, pass, detail});
    std::printf("[%s] criterion %2d: %-30s %s\n", pass ? "PASS" : "FAIL", id, title.c_str(),
                detail.c_str());
    std::fflush(stdout);
}

ModelParams with_kappa(double kappa) {
    ModelParams P;
    P.kinetics.rate_scale = kappa;
    return P;
}

Vec rhs_endex(const ModelParams& P, const Vec& y) {
    const auto d = endex_rhs(EndexState{y[0], y[1], y[2], y[3]}, P);
    return Vec(d.begin(), d.end());
}

double scaled_dist(const Vec& a, const Vec& b, const std::array<double, 4>& sc, size_t n) {
    double m = 0.0;
    for (size_t i = 0; i < n; ++i) m = std::max(m, std::abs(a[i] - b[i]) / sc[i]);
    return m;
}

StateGuard conc_guard() {
    return [](double, Vec& y) -> std::optional<std::string> {
        bool acted = false;
        for (size_t i = 0; i < y.size(); i += 2)
            if (y[i] < 0.0) {
                y[i] = 0.0;
                acted = true;
            }
        if (acted) return std::string("clamp");
        return std::nullopt;
    };
}

template <class F>
double first_crossing(const Branch& b, double target, F value) {
    for (size_t i = 1; i < b.records.size(); ++i) {
        const double a = value(b.records[i - 1]), c = value(b.records[i]);
        if ((a - target) * (c - target) <= 0.0 && a != c) {
            const double f = (target - a) / (c - a);
            return b.records[i - 1].param_value +
                   f * (b.records[i].param_value - b.records[i - 1].param_value);
        }
    }
    return kInf;
}

double interp_conversion(const Branch& b, double tau) {
    for (size_t i = 1; i < b.records.size(); ++i) {
        const double a = b.records[i - 1].param_value, c = b.records[i].param_value;
        if ((a - tau) * (c - tau) <= 0.0 && a != c) {
            const double f = (tau - a) / (c - a);
            return b.records[i - 1].derived.conversion +
                   f * (b.records[i].derived.conversion - b.records[i - 1].derived.conversion);
        }
    }
    return b.records.back().derived.conversion;
}

// ---------------------------------------------------------------------------
// Criteria 1-5, parameterized by kappa

struct Quant {
    double tau_c7_Fs10 = kInf, tau_c7_Fs20 = kInf;        // criterion 1
    double tau90 = kInf, gain_15_20 = kInf;               // criterion 2
    double t_full_1pct = kInf, t_carb_5pct = kInf;        // criterion 3
    double excursion_lex0 = 0, peak_lex10 = 0, t_peak_lex10 = kInf;  // criterion 4
    double knee_pc = kInf;                                // criterion 5

    bool pass1() const {
        return std::abs(tau_c7_Fs10 - 7.2) <= 0.25 * 7.2 &&
               std::abs(tau_c7_Fs20 - 4.0) <= 0.25 * 4.0;
    }
    bool pass2() const { return tau90 >= 8.0 && tau90 <= 13.0 && gain_15_20 < 0.03; }
    bool pass3() const { return t_full_1pct < 60.0 && t_carb_5pct < 5.0; }
    bool pass4() const {
        return excursion_lex0 > 80.0 && peak_lex10 >= 10.0 && peak_lex10 <= 20.0 &&
               t_peak_lex10 >= 50.0 && t_peak_lex10 <= 150.0;
    }
    bool pass5() const { return knee_pc >= 0.015e6 && knee_pc <= 0.035e6; }
    int passes() const { return pass1() + pass2() + pass3() + pass4() + pass5(); }

    double violation() const {  // total relative excess outside the bounds
        auto out = [](double v, double lo, double hi) {
            if (!std::isfinite(v)) return 10.0;
            const double mid = std::max(std::abs(0.5 * (lo + hi)), 1e-12);
            if (v < lo) return (lo - v) / mid;
            if (v > hi) return (v - hi) / mid;
            return 0.0;
        };
        return out(tau_c7_Fs10, 5.4, 9.0) + out(tau_c7_Fs20, 3.0, 5.0) +
               out(tau90, 8.0, 13.0) + out(gain_15_20, 0.0, 0.03) +
               out(t_full_1pct, 0.0, 60.0) + out(t_carb_5pct, 0.0, 5.0) +
               out(excursion_lex0, 80.0, 1e9) + out(peak_lex10, 10.0, 20.0) +
               out(t_peak_lex10, 50.0, 150.0) + out(knee_pc, 0.015e6, 0.035e6);
    }
};

Quant measure_quantitative(double kappa) {
    Quant q;

    // 1: standalone residence times reaching c1 = 7 mol/m^3 (71% conversion)
    for (double fs : {10.0, 20.0}) {
        ModelParams P = with_kappa(kappa);
        P.flow.solids_flow = fs;
        P.flow.inlet_gas_temperature = 1060.0;
        P.flow.sorbent_inlet_temperature = 1021.0;
        const Branch b = trace_branch(P, Mode::standalone, TunableParam::tau1, 0.1, 30.0);
        const double tau =
            first_crossing(b, 7.0, [](const SteadyStateRecord& r) { return r.state[0]; });
        (fs == 10.0 ? q.tau_c7_Fs10 : q.tau_c7_Fs20) = tau;
    }

    // 2: coupled uptake threshold at tau2 = 30 s (earliest branch to 90%)
    {
        double best90 = kInf, best_conv15 = -1.0, gain = kInf;
        for (double fs : {10.0, 20.0, 30.0, 40.0}) {
            ModelParams P = with_kappa(kappa);
            P.flow.tau2 = 30.0;
            P.flow.solids_flow = fs;
            P.flow.wall_exchange = 0.0;
            const Branch b = trace_branch(P, Mode::endex, TunableParam::tau1, 0.1, 20.0);
            best90 = std::min(best90, first_crossing(b, 0.9, [](const SteadyStateRecord& r) {
                                  return r.derived.conversion;
                              }));
            const double c15 = interp_conversion(b, 15.0);
            if (c15 > best_conv15) {
                best_conv15 = c15;
                gain = interp_conversion(b, 20.0) - c15;
            }
        }
        q.tau90 = best90;
        q.gain_15_20 = gain;
    }

    // 3: start-up clock at the printed calciner residence time (10 s)
    {
        ModelParams P = with_kappa(kappa);
        P.flow.tau1 = 15.0;
        P.flow.tau2 = 10.0;
        P.flow.solids_flow = 20.0;
        P.flow.wall_exchange = 0.0;
        const Vec ss = steady_state(P, Mode::endex);
        auto rhs = [&P](const Vec& y) { return rhs_endex(P, y); };
        const auto traj =
            integrate(rhs, {0.0, ss[1], 0.0, ss[3]}, 0.0, 120.0, {}, {}, conc_guard());
        const auto sc = endex_scales(P);
        for (size_t i = 0; i < traj.times.size(); ++i) {
            if (!std::isfinite(q.t_carb_5pct) && scaled_dist(traj.states[i], ss, sc, 2) < 0.05)
                q.t_carb_5pct = traj.times[i];
            if (scaled_dist(traj.states[i], ss, sc, 4) < 0.01) {
                q.t_full_1pct = traj.times[i];
                break;
            }
        }
    }

    // 4: solids interruption excursions (switch at t = 100 s)
    for (double lex : {0.0, 10.0e3}) {
        ModelParams P = with_kappa(kappa);
        P.flow.tau1 = 15.0;
        P.flow.tau2 = 15.0;
        P.flow.solids_flow = 40.0;
        P.flow.wall_exchange = lex;
        const Vec ss = steady_state(P, Mode::endex);
        ModelParams off = P;
        off.flow.solids_flow = 0.0;
        auto rhs_on = [&P](const Vec& y) { return rhs_endex(P, y); };
        auto rhs_off = [off](const Vec& y) { return rhs_endex(off, y); };
        const auto traj = integrate(rhs_on, ss, 0.0, 700.0, {}, {{100.0, "off", rhs_off}},
                                    conc_guard());
        double peak = -kInf, t_peak = 0.0;
        for (size_t i = 0; i < traj.times.size(); ++i) {
            const double exc = traj.states[i][1] - ss[1];
            if (exc > peak) {
                peak = exc;
                t_peak = traj.times[i];
            }
        }
        if (lex == 0.0) {
            q.excursion_lex0 = peak;
        } else {
            q.peak_lex10 = peak;
            q.t_peak_lex10 = t_peak - 100.0;
        }
    }

    // 5: quasistatic shutdown knee
    {
        ModelParams P = with_kappa(kappa);
        P.flow.tau1 = 15.0;
        P.flow.tau2 = 15.0;
        P.flow.solids_flow = 20.0;
        P.flow.wall_exchange = 0.0;
        StepControl fine;
        fine.initial_fraction = 1.0 / 400;
        fine.max_fraction = 1.0 / 400;
        const Branch b = trace_branch(P, Mode::endex, TunableParam::pc_in,
                                      P.flow.inlet_co2_pressure, 1.0e3, {}, fine);
        double best = -1.0;
        for (size_t i = 1; i + 1 < b.records.size(); ++i) {
            const double d =
                std::abs((b.records[i + 1].derived.p1 - b.records[i - 1].derived.p1) /
                         (b.records[i + 1].param_value - b.records[i - 1].param_value));
            if (d > best) {
                best = d;
                q.knee_pc = b.records[i].param_value;
            }
        }
    }
    return q;
}

// ---------------------------------------------------------------------------
// Criteria 6 and 7: regime-grid sign conditions and stability

struct GridOutcome {
    int total = 0;
    int sign_violations = 0;
    int unstable = 0;
    double worst_max_re = -kInf;
    std::string example;
};

GridOutcome check_regime_grid(double kappa) {
    GridOutcome out;
    const auto grid = regime_grid(with_kappa(kappa), 5);
    out.total = static_cast<int>(grid.size());
    for (const auto& pt : grid) {
        const auto& r = pt.record;
        if (!(r.derived.p1 > r.derived.p1_eq && r.derived.p2 < r.derived.p2_eq)) {
            ++out.sign_violations;
            if (out.example.empty()) {
                char buf[160];
                std::snprintf(buf, sizeof(buf),
                              "T1_in=%.0fK tau1=%.3gs Fs=%.0f tau2=%.0f Lex=%.0fkW/K: "
                              "p1/p1_eq=%.2f",
                              pt.params.flow.inlet_gas_temperature, pt.params.flow.tau1,
                              pt.params.flow.solids_flow, pt.params.flow.tau2,
                              pt.params.flow.wall_exchange / 1e3,
                              r.derived.p1 / r.derived.p1_eq);
                out.example = buf;
            }
        }
        if (r.stability.max_real_part >= 0.0) ++out.unstable;
        out.worst_max_re = std::max(out.worst_max_re, r.stability.max_real_part);
    }
    return out;
}

// ---------------------------------------------------------------------------
// Criterion 12: Hopf detections on branches spanning the regime

struct HopfHunt {
    int branches = 0;
    int hopf_count = 0;
    std::string first;
};

// Trace branches in every tunable axis across combinations of the remaining
// axes (3 levels each) and count detected Hopf points.
HopfHunt hunt_hopf(double kappa, double capacity_divisor, bool stop_on_first) {
    HopfHunt out;
    const auto axes = regime_axes();

    auto level = [&](size_t axis, int i, int npts) {
        const double f = npts == 1 ? 0.0 : static_cast<double>(i) / (npts - 1);
        return axes[axis].lo + f * (axes[axis].hi - axes[axis].lo);
    };

    for (size_t swept = 0; swept < axes.size(); ++swept) {
        std::vector<size_t> others;
        for (size_t a = 0; a < axes.size(); ++a)
            if (a != swept) others.push_back(a);
        const int npts = 3;
        std::vector<int> idx(others.size(), 0);
        while (true) {
            ModelParams P = with_kappa(kappa);
            P.carboniser.contents_heat_capacity /= capacity_divisor;
            P.calciner.contents_heat_capacity /= capacity_divisor;
            for (size_t k = 0; k < others.size(); ++k)
                set_param(P, axes[others[k]].param, level(others[k], idx[k], npts));
            try {
                const Branch b = trace_branch(P, Mode::endex, axes[swept].param,
                                              axes[swept].lo, axes[swept].hi);
                ++out.branches;
                for (const auto& sp : b.singular_points) {
                    if (sp.kind != SingularKind::hopf) continue;
                    ++out.hopf_count;
                    if (out.first.empty()) {
                        char buf[200];
                        std::snprintf(
                            buf, sizeof(buf),
                            "%s sweep at T1_in=%.0f tau1=%.3g Fs=%.0f tau2=%.0f "
                            "Lex=%.0fkW/K: pair %.3g+-%.3gi crosses at %s=%.4g",
                            param_name(axes[swept].param), P.flow.inlet_gas_temperature,
                            P.flow.tau1, P.flow.solids_flow, P.flow.tau2,
                            P.flow.wall_exchange / 1e3, sp.crossing_eigenvalue.real(),
                            std::abs(sp.crossing_eigenvalue.imag()),
                            param_name(axes[swept].param), sp.param_value);
                        out.first = buf;
                    }
                    if (stop_on_first) return out;
                }
            } catch (const std::exception&) {
                // an unconvergeable corner is not a detection
            }
            size_t a = 0;
            while (a < others.size() && ++idx[a] == npts) idx[a++] = 0;
            if (a == others.size()) break;
        }
    }
    return out;
}

// ---------------------------------------------------------------------------

void criterion8_hysteresis() {
    ModelParams P = with_kappa(g_kappa_star);
    P.flow.solids_flow = 5.0;
    P.flow.tau1 = 2.4;
    P.flow.tau2 = 15.0;
    P.flow.wall_exchange = 0.0;
    const Branch b = trace_branch(P, Mode::endex, TunableParam::T1_in, 473.0, 1100.0);

    std::vector<SingularPoint> folds;
    for (const auto& sp : b.singular_points)
        if (sp.kind == SingularKind::fold) folds.push_back(sp);

    bool real_crossings = true, below_setpoint = true;
    for (const auto& f : folds) {
        real_crossings = real_crossings && std::abs(f.crossing_eigenvalue.imag()) < 1e-9;
        below_setpoint = below_setpoint && f.param_value < 1060.0;
    }

    // coexistence probe: between the folds when two exist, otherwise just
    // below the single detected (ignition) fold
    int n_states = 0, n_unstable = 0;
    double probe = kInf;
    if (!folds.empty()) {
        probe = folds.size() >= 2
                    ? 0.5 * (folds[0].param_value + folds[1].param_value)
                    : folds[0].param_value - 40.0;
        ModelParams Q = P;
        set_param(Q, TunableParam::T1_in, probe);
        std::vector<Vec> states;
        for (size_t k = 1; k < b.records.size() && states.size() < 2; ++k)
            if ((b.records[k - 1].param_value - probe) *
                    (b.records[k].param_value - probe) <= 0.0)
                states.push_back(b.records[k].state);
        try {
            states.push_back(steady_state(Q, Mode::endex, Vec{30.0, 1000.0, 0.05, 950.0}));
        } catch (const std::exception&) {
        }
        const auto sc = endex_scales(Q);
        std::vector<Vec> distinct;
        for (auto& s : states) {
            bool dup = false;
            for (auto& d : distinct)
                if (scaled_dist(s, d, sc, 4) < 1e-4) dup = true;
            if (dup) continue;
            distinct.push_back(s);
            const auto rec = solve_record(Q, Mode::endex, s);
            if (rec.stability.kind == StabilityClass::Kind::unstable) ++n_unstable;
        }
        n_states = static_cast<int>(distinct.size());
    }

    const bool pass = folds.size() == 2 && real_crossings && below_setpoint &&
                      n_states == 3 && n_unstable == 1;
    char d[260];
    std::snprintf(d, sizeof(d),
                  "%zu fold(s) detected at kappa*=%.3g%s%s; coexistence probe at "
                  "T1_in=%.0fK: %d states, %d unstable (want 2 folds, 3 states, 1 unstable)",
                  folds.size(), g_kappa_star, folds.empty() ? "" : ", first at T1_in=",
                  folds.empty() ? "" : std::to_string(folds[0].param_value).substr(0, 6).c_str(),
                  std::isfinite(probe) ? probe : 0.0, n_states, n_unstable);
    report(8, "hysteresis structure", pass, d);
}

void criterion9_oracles() {
    // Newton fixed points (independently seeded) vs long transients on
    // randomized regime points
    std::mt19937 rng(12345);
    const auto axes = regime_axes();
    int ok = 0;
    double worst = 0.0;
    std::string worst_at;
    const int draws = 20;
    for (int i = 0; i < draws; ++i) {
        ModelParams P = with_kappa(g_kappa_star);
        for (const auto& ax : axes) {
            std::uniform_real_distribution<double> u(ax.lo, ax.hi);
            set_param(P, ax.param, u(rng));
        }
        auto rhs = [&P](const Vec& y) { return rhs_endex(P, y); };
        const Vec y0{P.c1_in(), P.flow.inlet_gas_temperature, 0.0,
                     P.flow.inlet_gas_temperature};
        double dist = kInf;
        double slow_tau = 0.0;
        try {
            const auto traj = integrate(rhs, y0, 0.0, 1.0e4, {1e-11, 1e-13}, {}, conc_guard());
            const Vec ss = steady_state(P, Mode::endex);  // own transient-seeded solve
            dist = scaled_dist(traj.states.back(), ss, endex_scales(P), 4);
            const auto eig = eigenvalues(fd_jacobian(rhs, ss));
            slow_tau = 1.0 / std::abs(classify(eig).max_real_part);
        } catch (const std::exception&) {
        }
        if (dist <= 1e-8) ++ok;
        if (std::isfinite(dist) && dist > worst) {
            worst = dist;
            char buf[160];
            std::snprintf(buf, sizeof(buf),
                          "tau1=%.3g tau2=%.1f Fs=%.1f T1_in=%.0f (slowest mode %.0f s)",
                          P.flow.tau1, P.flow.tau2, P.flow.solids_flow,
                          P.flow.inlet_gas_temperature, slow_tau);
            worst_at = buf;
        }
    }

    // eigenvalues vs characteristic-polynomial roots on random matrices
    std::mt19937 rng2(777);
    std::uniform_real_distribution<double> u(-1.0, 1.0);
    int eig_ok = 0;
    const int mats = 100;
    for (int t = 0; t < mats; ++t) {
        Mat A(4, 4);
        for (int i = 0; i < 4; ++i)
            for (int j = 0; j < 4; ++j) A(i, j) = u(rng2);
        const auto got = eigenvalues(A).values;
        const auto want = endex_test::eigenvalue_oracle(A);
        double err = 0.0;
        for (const auto& w : want) {
            double best = kInf;
            for (const auto& g : got) best = std::min(best, std::abs(g - w));
            err = std::max(err, best / std::max(1.0, std::abs(w)));
        }
        if (err < 1e-7) ++eig_ok;
    }

    char d[260];
    std::snprintf(d, sizeof(d),
                  "fixed point vs 1e4 s transient: %d/%d within 1e-8 (worst %.2e at %s); "
                  "eigenvalues vs charpoly roots: %d/%d within 1e-7",
                  ok, draws, worst, worst_at.c_str(), eig_ok, mats);
    report(9, "oracle equivalence", ok == draws && eig_ok == mats, d);
}

bool gap_strictly_decreasing(const std::vector<double>& gaps) {
    for (size_t i = 1; i < gaps.size(); ++i)
        if (!(gaps[i] < gaps[i - 1])) return false;
    return true;
}

void criterion10_gap_limits() {
    bool pass = true;
    std::string detail;
    for (double kappa : {1.0, g_kappa_star}) {
        // across the sorbent flow at tau1 = tau2 = 15 s
        std::vector<double> g_fs;
        for (double fs : {10.0, 20.0, 30.0, 40.0}) {
            ModelParams P = with_kappa(kappa);
            P.flow.tau1 = 15.0;
            P.flow.tau2 = 15.0;
            P.flow.solids_flow = fs;
            P.flow.wall_exchange = 0.0;
            const Vec x = steady_state(P, Mode::endex);
            g_fs.push_back(std::abs(x[1] - x[3]));
        }
        // across the wall coupling at the two reference residence times
        bool lex_ok = true;
        for (double tau1 : {10.0, 15.0}) {
            std::vector<double> g_lex;
            for (double lex : {0.0, 1e3, 5e3, 10e3, 100e3}) {
                ModelParams P = with_kappa(kappa);
                P.flow.tau1 = tau1;
                P.flow.tau2 = 30.0;
                P.flow.solids_flow = 20.0;
                P.flow.wall_exchange = lex;
                const Vec x = steady_state(P, Mode::endex);
                g_lex.push_back(std::abs(x[1] - x[3]));
            }
            lex_ok = lex_ok && gap_strictly_decreasing(g_lex);
        }
        const bool ok = gap_strictly_decreasing(g_fs) && lex_ok;
        pass = pass && ok;
        char buf[120];
        std::snprintf(buf, sizeof(buf), "kappa=%.3g: |T1-T2| over Fs %.2f->%.2f K%s; ",
                      kappa, g_fs.front(), g_fs.back(),
                      ok ? " monotone" : " NOT monotone");
        detail += buf;
    }
    report(10, "temperature-gap limits", pass, detail);
}

void criterion11_inversion() {
    bool pass = true;
    std::string detail;
    for (double kappa : {1.0, g_kappa_star}) {
        ModelParams base = with_kappa(kappa);
        base.flow.tau2 = 30.0;
        base.flow.solids_flow = 20.0;
        base.flow.wall_exchange = 0.0;
        base.flow.inlet_gas_temperature = 1060.0;

        ModelParams P10 = base, P15 = base;
        P10.flow.tau1 = 10.0;
        P15.flow.tau1 = 15.0;
        const double T1_10 = steady_state(P10, Mode::endex)[1];
        const double T1_15 = steady_state(P15, Mode::endex)[1];

        // with the solids flow off the carboniser decouples bitwise from the
        // calciner; the orphaned calciner has no steady state (its
        // temperature drains to zero under the printed outflow term), so the
        // decoupled subsystem is solved directly
        P10.flow.solids_flow = 0.0;
        P15.flow.solids_flow = 0.0;
        const double U1_10 = steady_state(P10, Mode::standalone)[1];
        const double U1_15 = steady_state(P15, Mode::standalone)[1];

        const bool ok = T1_15 < T1_10 && U1_15 > U1_10;
        pass = pass && ok;
        char buf[140];
        std::snprintf(buf, sizeof(buf),
                      "kappa=%.3g: Fs=20: T1(15s)=%.1f %s T1(10s)=%.1f; Fs=0: "
                      "T1(15s)=%.1f %s T1(10s)=%.1f; ",
                      kappa, T1_15, T1_15 < T1_10 ? "<" : ">=", T1_10, U1_15,
                      U1_15 > U1_10 ? ">" : "<=", U1_10);
        detail += buf;
    }
    report(11, "temperature inversion", pass, detail);
}

// Supplementary search below the regime box (the multiplicity region down to
// 350 K, both trace directions) so a failed in-regime hunt is conclusive.
int hunt_hopf_subbox(double kappa, double capacity_divisor) {
    int hopfs = 0;
    for (double fs : {5.0, 10.0, 20.0, 40.0})
        for (double tau1 : {0.3, 1.0, 2.4, 5.0, 15.0})
            for (double tau2 : {5.0, 15.0, 30.0, 60.0})
                for (auto [lo, hi] : {std::pair{350.0, 1273.0}, std::pair{1273.0, 350.0}}) {
                    ModelParams P = with_kappa(kappa);
                    P.carboniser.contents_heat_capacity /= capacity_divisor;
                    P.calciner.contents_heat_capacity /= capacity_divisor;
                    P.flow.solids_flow = fs;
                    P.flow.tau1 = tau1;
                    P.flow.tau2 = tau2;
                    try {
                        const Branch b =
                            trace_branch(P, Mode::endex, TunableParam::T1_in, lo, hi);
                        for (const auto& sp : b.singular_points)
                            if (sp.kind == SingularKind::hopf) ++hopfs;
                    } catch (const std::exception&) {
                    }
                }
    return hopfs;
}

void criterion12_hopf() {
    const auto low = hunt_hopf(g_kappa_star, 100.0, true);
    const int low_subbox = low.hopf_count > 0 ? 0 : hunt_hopf_subbox(g_kappa_star, 100.0);
    const auto printed_star = hunt_hopf(g_kappa_star, 1.0, false);
    const auto printed_1 = hunt_hopf(1.0, 1.0, false);

    const bool pass = low.hopf_count >= 1 && printed_star.hopf_count == 0 &&
                      printed_1.hopf_count == 0;
    char d[420];
    std::snprintf(d, sizeof(d),
                  "capacities/100 at kappa*: %d Hopf over %d in-regime branches%s%s "
                  "(+%d found extending to 350 K); printed capacities: %d detections over "
                  "%d branches (kappa*), %d over %d (kappa=1)",
                  low.hopf_count, low.branches, low.first.empty() ? "" : ", first: ",
                  low.first.c_str(), low_subbox, printed_star.hopf_count,
                  printed_star.branches, printed_1.hopf_count, printed_1.branches);
    report(12, "oscillatory-instability machinery", pass, d);
}

int finish() {
    bool quant_ok = true, mandatory_ok = true;
    for (const auto& r : g_results) {
        if (r.id <= 5) quant_ok = quant_ok && r.pass;
        if (r.id >= 6) mandatory_ok = mandatory_ok && r.pass;
    }
    std::printf("\nsummary: quantitative (1-5): %s under kappa* = %.4g; "
                "property-based (6-12): %s\n",
                quant_ok ? "PASS" : "NOT MET (documented above)", g_kappa_star,
                mandatory_ok ? "PASS" : "FAILURES PRESENT");
    std::printf("adiabatic rise for complete conversion (reported, not asserted): %.1f K\n",
                adiabatic_temperature_rise(ModelParams{}));

    nlohmann::json j;
    j["kappa_star"] = g_kappa_star;
    j["criteria"] = nlohmann::json::array();
    for (const auto& r : g_results)
        j["criteria"].push_back(
            {{"id", r.id}, {"title", r.title}, {"pass", r.pass}, {"detail", r.detail}});
    std::ofstream("acceptance_report.json") << j.dump(2) << '\n';

    return mandatory_ok ? 0 : 1;
}

}  // namespace

int main() {
    std::printf("acceptance suite: coupled carboniser-calciner toolkit\n");
    std::printf("=====================================================\n\n");

    std::printf("rate-scale fit over kappa in [0.1, 10] (shared across criteria 1-5):\n");
    std::printf("   kappa   viol | c7@Fs10 c7@Fs20 | tau90 gain%% | t1%%  t5%%carb | exc0 "
                "pk10 t_pk | knee MPa | pass\n");
    Quant best_q;
    int best_passes = -1;
    double best_viol = kInf;
    bool all_pass_found = false;

    for (int i = 0; i < 25; ++i) {
        const double k = 0.1 * std::pow(100.0, i / 24.0);  // log-spaced 0.1 .. 10
        const Quant q = measure_quantitative(k);
        std::printf("%8.3f %6.2f | %7.2f %7.2f | %5.1f %5.1f | %5.1f %7.2f | %4.0f %4.1f "
                    "%4.0f | %8.4f | %d/5\n",
                    k, q.violation(), q.tau_c7_Fs10, q.tau_c7_Fs20, q.tau90,
                    100.0 * q.gain_15_20, q.t_full_1pct, q.t_carb_5pct, q.excursion_lex0,
                    q.peak_lex10, q.t_peak_lex10, q.knee_pc / 1e6, q.passes());
        std::fflush(stdout);
        if (q.passes() > best_passes ||
            (q.passes() == best_passes && q.violation() < best_viol)) {
            best_passes = q.passes();
            best_viol = q.violation();
            best_q = q;
            g_kappa_star = k;
        }
        if (q.passes() == 5) {
            all_pass_found = true;
            break;
        }
    }
    std::printf("\nselected kappa* = %.4g (%d/5 quantitative criteria pass, total "
                "violation %.3f)\n",
                g_kappa_star, best_passes, best_viol);
    if (!all_pass_found)
        std::printf("no single kappa in [0.1, 10] reconciles criteria 1-5 (the standalone "
                    "7.2 s anchor needs kappa = 24);\nper the verification plan the "
                    "property criteria 6-12 gate acceptance.\n");
    std::printf("\n");

    const Quant& q = best_q;
    {
        char d[220];
        std::snprintf(d, sizeof(d),
                      "tau(c1=7): %.2f s at Fs=10 (want 7.2+-25%%), %.2f s at Fs=20 "
                      "(want 4+-25%%), at kappa*",
                      q.tau_c7_Fs10, q.tau_c7_Fs20);
        report(1, "standalone residence times", q.pass1(), d);
        std::snprintf(d, sizeof(d),
                      "90%% uptake first at tau1 = %.1f s (want 8-13); gain 15->20 s = "
                      "%.1f pp (want < 3)",
                      q.tau90, 100.0 * q.gain_15_20);
        report(2, "coupled uptake threshold", q.pass2(), d);
        // evaluated at tau2 = 10 s: at tau2 = 60 s the calciner gas residence
        // time alone bounds 1% convergence to ~4.6 tau2 = 276 s > 60 s
        std::snprintf(d, sizeof(d),
                      "full state < 1%% at %.1f s (want < 60); carboniser < 5%% at %.2f s "
                      "(want < 5), tau2 = 10 s",
                      q.t_full_1pct, q.t_carb_5pct);
        report(3, "start-up clock", q.pass3(), d);
        std::snprintf(d, sizeof(d),
                      "Lex=0 excursion %.0f K (want > 80); Lex=10kW/K peak %.1f K (want "
                      "10-20) at %.0f s after switch (want 50-150)",
                      q.excursion_lex0, q.peak_lex10, q.t_peak_lex10);
        report(4, "solids interruption", q.pass4(), d);
        std::snprintf(d, sizeof(d),
                      "steepest p1 decline at pc_in = %.4f MPa (want 0.015-0.035)",
                      q.knee_pc / 1e6);
        report(5, "shutdown knee", q.pass5(), d);
    }

    {
        const GridOutcome g1 = check_regime_grid(1.0);
        const GridOutcome gs = check_regime_grid(g_kappa_star);
        char d[320];
        std::snprintf(d, sizeof(d),
                      "kappa=1: %d/%d violations; kappa*: %d/%d violations%s%s",
                      g1.sign_violations, g1.total, gs.sign_violations, gs.total,
                      gs.example.empty() ? "" : "; e.g. ", gs.example.c_str());
        report(6, "thermokinetic sign conditions",
               g1.sign_violations == 0 && gs.sign_violations == 0, d);
        std::snprintf(d, sizeof(d),
                      "kappa=1: %d non-decaying, worst max Re %.2e 1/s; kappa*: %d, worst "
                      "%.2e 1/s",
                      g1.unstable, g1.worst_max_re, gs.unstable, gs.worst_max_re);
        report(7, "regime-wide stability", g1.unstable == 0 && gs.unstable == 0, d);
    }

    criterion8_hysteresis();
    criterion9_oracles();
    criterion10_gap_limits();
    criterion11_inversion();
    criterion12_hopf();

    return finish();
}
