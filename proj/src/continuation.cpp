#include "endex/continuation.hpp"

#include <algorithm>
#include <cmath>
#include <limits>

namespace endex {

// ---------------------------------------------------------------------------
// Tunable parameter plumbing

const char* param_name(TunableParam p) {
    switch (p) {
        case TunableParam::T1_in: return "T1_in";
        case TunableParam::tau1: return "tau1";
        case TunableParam::tau2: return "tau2";
        case TunableParam::Fs: return "Fs";
        case TunableParam::Lex: return "Lex";
        case TunableParam::pc_in: return "pc_in";
        case TunableParam::Ts_in: return "Ts_in";
    }
    return "?";
}

const char* param_unit(TunableParam p) {
    switch (p) {
        case TunableParam::T1_in: return "K";
        case TunableParam::tau1: return "s";
        case TunableParam::tau2: return "s";
        case TunableParam::Fs: return "kg/s";
        case TunableParam::Lex: return "W/K";
        case TunableParam::pc_in: return "Pa";
        case TunableParam::Ts_in: return "K";
    }
    return "?";
}

std::optional<TunableParam> param_from_name(const std::string& name) {
    for (TunableParam p : {TunableParam::T1_in, TunableParam::tau1, TunableParam::tau2,
                           TunableParam::Fs, TunableParam::Lex, TunableParam::pc_in,
                           TunableParam::Ts_in})
        if (name == param_name(p)) return p;
    return std::nullopt;
}

double get_param(const ModelParams& P, TunableParam p) {
    switch (p) {
        case TunableParam::T1_in: return P.flow.inlet_gas_temperature;
        case TunableParam::tau1: return P.flow.tau1;
        case TunableParam::tau2: return P.flow.tau2;
        case TunableParam::Fs: return P.flow.solids_flow;
        case TunableParam::Lex: return P.flow.wall_exchange;
        case TunableParam::pc_in: return P.flow.inlet_co2_pressure;
        case TunableParam::Ts_in: return P.flow.sorbent_inlet_temperature;
    }
    return 0.0;
}

void set_param(ModelParams& P, TunableParam p, double value) {
    switch (p) {
        case TunableParam::T1_in: P.flow.inlet_gas_temperature = value; return;
        case TunableParam::tau1: P.flow.tau1 = value; return;
        case TunableParam::tau2: P.flow.tau2 = value; return;
        case TunableParam::Fs: P.flow.solids_flow = value; return;
        case TunableParam::Lex: P.flow.wall_exchange = value; return;
        case TunableParam::pc_in: P.flow.inlet_co2_pressure = value; return;
        case TunableParam::Ts_in: P.flow.sorbent_inlet_temperature = value; return;
    }
}

// ---------------------------------------------------------------------------
// Generic continuation engine

namespace {

double scaled_distance(const Vec& a, const Vec& b, const Vec& scales) {
    double m = 0.0;
    for (size_t i = 0; i < a.size(); ++i) {
        const double s = scales.empty() ? 1.0 : scales[i];
        m = std::max(m, std::abs(a[i] - b[i]) / s);
    }
    return m;
}

double max_real_part(const EigenSet& e) {
    double m = -std::numeric_limits<double>::infinity();
    for (const auto& v : e.values) m = std::max(m, v.real());
    return m;
}

double eigen_determinant(const EigenSet& e) {
    std::complex<double> prod(1.0, 0.0);
    for (const auto& v : e.values) prod *= v;
    return prod.real();
}

std::complex<double> crossing_eigenvalue(const EigenSet& e) {
    std::complex<double> best = e.values.front();
    for (const auto& v : e.values) {
        if (std::abs(v.real()) < std::abs(best.real()) ||
            (std::abs(v.real()) == std::abs(best.real()) && v.imag() > best.imag()))
            best = v;
    }
    return best;
}

struct EngineOptions {
    NewtonOptions newton;
    Vec scales;  // state scales, filled
};

NewtonOptions fill_newton(const ParametrizedSystem& sys, NewtonOptions nopt) {
    if (nopt.residual_scales.empty()) nopt.residual_scales = sys.state_scales;
    return nopt;
}

SteadyStateRecord make_record(const ParametrizedSystem& sys, double lambda, Vec x,
                              double residual_norm) {
    SteadyStateRecord rec;
    rec.param_value = lambda;
    rec.state = std::move(x);
    auto frozen = [&sys, lambda](const Vec& y) { return sys.rhs(y, lambda); };
    rec.eigen = eigenvalues(fd_jacobian(frozen, rec.state));
    rec.stability = classify(rec.eigen);
    rec.residual_norm = residual_norm;
    if (sys.derive) rec.derived = sys.derive(rec.state, lambda);
    return rec;
}

// Newton solve at a frozen parameter; empty optional on any solver failure.
std::optional<NewtonResult> try_solve(const ParametrizedSystem& sys, double lambda,
                                      const Vec& guess, const NewtonOptions& nopt) {
    auto frozen = [&sys, lambda](const Vec& y) { return sys.rhs(y, lambda); };
    try {
        return newton_solve(frozen, guess, nopt);
    } catch (const NonConvergenceError&) {
        return std::nullopt;
    } catch (const SingularMatrixError&) {
        return std::nullopt;
    } catch (const DomainError&) {
        return std::nullopt;
    }
}

// Scaled coordinates for the pseudo-arclength metric: state components by
// state_scales, the parameter by the trace range.
struct ArcPoint {
    Vec x;
    double lambda;
};

struct ArcStepResult {
    Vec x;
    double lambda;
    double residual_norm;
};

std::optional<ArcStepResult> arc_corrector(const ParametrizedSystem& sys, const Vec& scales,
                                           double param_scale, const ArcPoint& pred,
                                           const Vec& tangent,  // scaled, dim n+1, unit
                                           const NewtonOptions& nopt) {
    const size_t n = pred.x.size();
    auto aug = [&](const Vec& u) {
        Vec x(u.begin(), u.end() - 1);
        const double lambda = u.back();
        Vec r = sys.rhs(x, lambda);
        double c = 0.0;
        for (size_t i = 0; i < n; ++i) {
            const double s = scales.empty() ? 1.0 : scales[i];
            c += tangent[i] * (x[i] - pred.x[i]) / s;
        }
        c += tangent[n] * (lambda - pred.lambda) / param_scale;
        r.push_back(c);
        return r;
    };
    NewtonOptions anopt = nopt;
    anopt.residual_scales = scales.empty() ? Vec(n, 1.0) : scales;
    anopt.residual_scales.push_back(1.0);
    Vec guess = pred.x;
    guess.push_back(pred.lambda);
    try {
        auto res = newton_solve(aug, guess, anopt);
        ArcStepResult out;
        out.x.assign(res.x.begin(), res.x.end() - 1);
        out.lambda = res.x.back();
        out.residual_norm = res.residual_norm;
        return out;
    } catch (const NonConvergenceError&) {
        return std::nullopt;
    } catch (const SingularMatrixError&) {
        return std::nullopt;
    } catch (const DomainError&) {
        return std::nullopt;
    }
}

Vec scaled_secant(const SteadyStateRecord& a, const SteadyStateRecord& b, const Vec& scales,
                  double param_scale) {
    const size_t n = a.state.size();
    Vec t(n + 1);
    double norm = 0.0;
    for (size_t i = 0; i < n; ++i) {
        const double s = scales.empty() ? 1.0 : scales[i];
        t[i] = (b.state[i] - a.state[i]) / s;
        norm += t[i] * t[i];
    }
    t[n] = (b.param_value - a.param_value) / param_scale;
    norm = std::sqrt(norm + t[n] * t[n]);
    if (norm == 0.0) norm = 1.0;
    for (auto& ti : t) ti /= norm;
    return t;
}

}  // namespace

Branch trace_branch_generic(const ParametrizedSystem& sys, double from, double to,
                            const Vec& seed_guess, StepControl ctrl, NewtonOptions nopt_in) {
    const NewtonOptions nopt = fill_newton(sys, nopt_in);
    const Vec& scales = sys.state_scales;
    Branch b;

    auto seed = try_solve(sys, from, seed_guess, nopt);
    if (!seed)
        throw SeedError("trace_branch: no convergence at the starting parameter value " +
                        std::to_string(from));
    b.records.push_back(make_record(sys, from, seed->x, seed->residual_norm));
    if (from == to) return b;

    const double dir = (to > from) ? 1.0 : -1.0;
    const double range = std::abs(to - from);
    const double min_step = range * ctrl.min_fraction;
    const double max_step = range * ctrl.max_fraction;
    double step = range * ctrl.initial_fraction;

    bool arc = ctrl.stepping == StepControl::Mode::arclength;
    bool done = false;
    int consecutive_failures = 0;
    double arc_ds = ctrl.initial_fraction;  // in the scaled metric, lambda spans ~1

    while (!done && static_cast<int>(b.records.size()) < ctrl.max_records) {
        const SteadyStateRecord& last = b.records.back();

        if (!arc) {
            if (last.param_value == to) break;
            double lambda_next = last.param_value + dir * step;
            if ((lambda_next - to) * dir > 0.0) lambda_next = to;

            // secant predictor when two records are available
            Vec guess = last.state;
            if (b.records.size() >= 2) {
                const auto& prev = b.records[b.records.size() - 2];
                const double dl = last.param_value - prev.param_value;
                if (dl != 0.0) {
                    const double f = (lambda_next - last.param_value) / dl;
                    for (size_t i = 0; i < guess.size(); ++i)
                        guess[i] += f * (last.state[i] - prev.state[i]);
                }
            }

            auto sol = try_solve(sys, lambda_next, guess, nopt);
            if (sol) {
                b.records.push_back(make_record(sys, lambda_next, sol->x, sol->residual_norm));
                consecutive_failures = 0;
                if (sol->iterations <= 4)
                    step = std::min(step * 2.0, max_step);
                else if (sol->iterations >= 9)
                    step = std::max(step * 0.5, min_step);
                continue;
            }

            ++consecutive_failures;
            step *= 0.5;

            // fold indicator: the step collapsed, or the Jacobian determinant
            // changed sign across the last pair while Newton keeps failing
            bool det_flip = false;
            if (b.records.size() >= 2) {
                const double d1 = eigen_determinant(b.records.back().eigen);
                const double d0 = eigen_determinant(b.records[b.records.size() - 2].eigen);
                det_flip = (d0 < 0.0) != (d1 < 0.0);
            }
            if (step < min_step || (consecutive_failures >= 3 && det_flip)) {
                if (ctrl.stepping == StepControl::Mode::automatic) {
                    arc = true;
                    arc_ds = std::max(step / range, ctrl.min_fraction);
                } else {
                    b.truncated = true;
                    done = true;
                }
            }
        } else {
            if (b.records.size() < 2) {
                // need a second point for the secant tangent: take one small
                // natural step before switching over
                const double lambda_next = last.param_value + dir * std::max(step, min_step);
                auto sol = try_solve(sys, lambda_next, last.state, nopt);
                if (!sol) {
                    b.truncated = true;
                    break;
                }
                b.records.push_back(make_record(sys, lambda_next, sol->x, sol->residual_norm));
                continue;
            }

            const auto& prev = b.records[b.records.size() - 2];
            const Vec tangent = scaled_secant(prev, last, scales, range);

            ArcPoint pred;
            pred.x = last.state;
            const size_t n = pred.x.size();
            for (size_t i = 0; i < n; ++i) {
                const double s = scales.empty() ? 1.0 : scales[i];
                pred.x[i] += arc_ds * tangent[i] * s;
            }
            pred.lambda = last.param_value + arc_ds * tangent[n] * range;

            auto sol = arc_corrector(sys, scales, range, pred, tangent, nopt);
            if (!sol) {
                arc_ds *= 0.5;
                if (arc_ds < ctrl.min_fraction) {
                    b.truncated = true;
                    done = true;
                }
                continue;
            }

            // reached or passed the far end: polish a final point exactly at `to`
            if ((sol->lambda - to) * dir >= 0.0) {
                auto fin = try_solve(sys, to, sol->x, nopt);
                if (fin)
                    b.records.push_back(make_record(sys, to, fin->x, fin->residual_norm));
                else
                    b.truncated = true;
                done = true;
                continue;
            }
            // ran far backwards out of the requested window
            if ((sol->lambda - from) * dir < -0.5 * range) {
                b.records.push_back(make_record(sys, sol->lambda, sol->x, sol->residual_norm));
                b.truncated = true;
                done = true;
                continue;
            }

            b.records.push_back(make_record(sys, sol->lambda, sol->x, sol->residual_norm));
            arc_ds = std::min(arc_ds * 1.5, ctrl.max_fraction);
        }
    }

    if (static_cast<int>(b.records.size()) >= ctrl.max_records &&
        b.records.back().param_value != to)
        b.truncated = true;

    b.singular_points = detect_singularities_generic(sys, b, ctrl, nopt_in);
    return b;
}

// ---------------------------------------------------------------------------
// Singularity detection and refinement

namespace {

struct RefinePoint {
    double lambda;
    Vec x;
    EigenSet eig;
};

std::optional<RefinePoint> eval_point(const ParametrizedSystem& sys, double lambda,
                                      const Vec& guess, const NewtonOptions& nopt) {
    auto sol = try_solve(sys, lambda, guess, nopt);
    if (!sol) return std::nullopt;
    auto frozen = [&sys, lambda](const Vec& y) { return sys.rhs(y, lambda); };
    RefinePoint p;
    p.lambda = lambda;
    p.x = sol->x;
    p.eig = eigenvalues(fd_jacobian(frozen, p.x));
    return p;
}

// Bisection on the parameter between two regular records. Returns nullopt if
// an intermediate Newton solve fails or jumps off the local sheet, in which
// case the caller falls back to arclength bisection.
std::optional<SingularPoint> refine_on_param(const ParametrizedSystem& sys,
                                             const SteadyStateRecord& a,
                                             const SteadyStateRecord& b, double tol_lambda,
                                             double imag_tol, const NewtonOptions& nopt) {
    double la = a.param_value, lb = b.param_value;
    Vec xa = a.state, xb = b.state;
    bool neg_a = max_real_part(a.eigen) < 0.0;
    const double sheet_tol = 4.0 * scaled_distance(xa, xb, sys.state_scales) + 1e-6;

    for (int it = 0; it < 80; ++it) {
        if (std::abs(lb - la) <= tol_lambda) break;
        const double lm = 0.5 * (la + lb);
        Vec guess(xa.size());
        for (size_t i = 0; i < guess.size(); ++i) guess[i] = 0.5 * (xa[i] + xb[i]);
        auto p = eval_point(sys, lm, guess, nopt);
        if (!p) return std::nullopt;
        if (scaled_distance(p->x, guess, sys.state_scales) > sheet_tol) return std::nullopt;
        if ((max_real_part(p->eig) < 0.0) == neg_a) {
            la = lm;
            xa = p->x;
        } else {
            lb = lm;
            xb = p->x;
        }
    }
    const double lf = 0.5 * (la + lb);
    Vec guess(xa.size());
    for (size_t i = 0; i < guess.size(); ++i) guess[i] = 0.5 * (xa[i] + xb[i]);
    auto p = eval_point(sys, lf, guess, nopt);
    if (!p) return std::nullopt;

    SingularPoint sp;
    sp.param_value = p->lambda;
    sp.state = p->x;
    sp.crossing_eigenvalue = crossing_eigenvalue(p->eig);
    sp.kind = std::abs(sp.crossing_eigenvalue.imag()) < imag_tol ? SingularKind::fold
                                                                 : SingularKind::hopf;
    sp.low_confidence = std::abs(lb - la) > tol_lambda;
    return sp;
}

// Arclength bisection along the secant between two records; works across a
// fold where the branch is double-valued in the parameter.
SingularPoint refine_on_arclength(const ParametrizedSystem& sys, const SteadyStateRecord& a,
                                  const SteadyStateRecord& b, double range,
                                  double tol_lambda, double imag_tol,
                                  const NewtonOptions& nopt) {
    const Vec& scales = sys.state_scales;
    const Vec tangent = scaled_secant(a, b, scales, range);
    const size_t n = a.state.size();
    const bool neg_a = max_real_part(a.eigen) < 0.0;

    auto at_fraction = [&](double s) -> std::optional<RefinePoint> {
        ArcPoint pred;
        pred.x.resize(n);
        for (size_t i = 0; i < n; ++i) pred.x[i] = a.state[i] + s * (b.state[i] - a.state[i]);
        pred.lambda = a.param_value + s * (b.param_value - a.param_value);
        auto sol = arc_corrector(sys, scales, range, pred, tangent, nopt);
        if (!sol) return std::nullopt;
        auto frozen = [&sys, lam = sol->lambda](const Vec& y) { return sys.rhs(y, lam); };
        RefinePoint p;
        p.lambda = sol->lambda;
        p.x = sol->x;
        p.eig = eigenvalues(fd_jacobian(frozen, p.x));
        return p;
    };

    double slo = 0.0, shi = 1.0;
    double llo = a.param_value, lhi = b.param_value;
    RefinePoint bestp{a.param_value, a.state, a.eigen};
    bool converged = false;
    for (int it = 0; it < 80; ++it) {
        if (std::abs(lhi - llo) <= tol_lambda && it > 0) {
            converged = true;
            break;
        }
        const double sm = 0.5 * (slo + shi);
        auto p = at_fraction(sm);
        if (!p) {  // corrector failure mid-segment: shrink toward the known end
            shi = sm;
            continue;
        }
        bestp = *p;
        if ((max_real_part(p->eig) < 0.0) == neg_a) {
            slo = sm;
            llo = p->lambda;
        } else {
            shi = sm;
            lhi = p->lambda;
        }
        if (shi - slo < 1e-13) {
            converged = true;
            break;
        }
    }

    SingularPoint sp;
    sp.param_value = bestp.lambda;
    sp.state = bestp.x;
    sp.crossing_eigenvalue = crossing_eigenvalue(bestp.eig);
    sp.kind = std::abs(sp.crossing_eigenvalue.imag()) < imag_tol ? SingularKind::fold
                                                                 : SingularKind::hopf;
    sp.low_confidence = !converged;
    return sp;
}

}  // namespace

std::vector<SingularPoint> detect_singularities_generic(const ParametrizedSystem& sys,
                                                        const Branch& b, StepControl ctrl,
                                                        NewtonOptions nopt_in) {
    const NewtonOptions nopt = fill_newton(sys, nopt_in);
    std::vector<SingularPoint> out;
    if (b.records.size() < 2) return out;

    double pmin = b.records.front().param_value, pmax = pmin;
    for (const auto& r : b.records) {
        pmin = std::min(pmin, r.param_value);
        pmax = std::max(pmax, r.param_value);
    }
    const double range = std::max(pmax - pmin, 1e-300);

    for (size_t k = 1; k < b.records.size(); ++k) {
        const auto& a = b.records[k - 1];
        const auto& c = b.records[k];
        const bool neg_a = max_real_part(a.eigen) < 0.0;
        const bool neg_c = max_real_part(c.eigen) < 0.0;
        if (neg_a == neg_c) continue;

        const double tol_lambda =
            1e-6 * std::max(std::abs(a.param_value) + std::abs(c.param_value), 0.02 * range);

        std::optional<SingularPoint> sp;
        if (std::abs(c.param_value - a.param_value) > tol_lambda)
            sp = refine_on_param(sys, a, c, tol_lambda, ctrl.imag_tol, nopt);
        if (!sp)
            sp = refine_on_arclength(sys, a, c, range, tol_lambda, ctrl.imag_tol, nopt);
        out.push_back(*sp);
    }
    return out;
}

// ---------------------------------------------------------------------------
// Fold-locus continuation by re-bracketing in the primary parameter

namespace {

struct ExistResult {
    bool exists;
    Vec x;
};

ExistResult fold_exists(const TwoParamSystem& sys, double lambda, double nu, const Vec& warm,
                        const NewtonOptions& nopt, double jump_tol) {
    auto frozen = [&sys, lambda, nu](const Vec& y) { return sys.rhs(y, lambda, nu); };
    auto attempt = [&](const Vec& start) -> ExistResult {
        try {
            auto res = newton_solve(frozen, start, nopt);
            if (scaled_distance(res.x, warm, sys.state_scales) > jump_tol) return {false, {}};
            return {true, res.x};
        } catch (const NonConvergenceError&) {
            return {false, {}};
        } catch (const SingularMatrixError&) {
            return {false, {}};
        } catch (const DomainError&) {
            return {false, {}};
        }
    };
    auto r = attempt(warm);
    if (r.exists) return r;
    // a start exactly on the critical point has a singular Jacobian: retry
    // from small deterministic offsets
    for (double dir : {1.0, -1.0}) {
        Vec nudged = warm;
        for (size_t i = 0; i < nudged.size(); ++i) {
            const double s = sys.state_scales.empty() ? 1.0 : sys.state_scales[i];
            nudged[i] += dir * 1e-3 * s;
        }
        r = attempt(nudged);
        if (r.exists) return r;
    }
    return {false, {}};
}

}  // namespace

FoldLocus trace_fold_locus_generic(const TwoParamSystem& sys, const SingularPoint& fold,
                                   double second_from, double second_to, StepControl ctrl,
                                   NewtonOptions nopt_in) {
    NewtonOptions nopt = nopt_in;
    if (nopt.residual_scales.empty()) nopt.residual_scales = sys.state_scales;
    const double jump_tol = 0.5;

    FoldLocus locus;
    locus.points.push_back({fold.param_value, second_from});
    if (second_from == second_to) return locus;

    const double pscale = std::max(std::abs(fold.param_value), 0.01 * sys.primary_scale);
    double probe = 1e-3 * pscale;

    // which side of the fold still has solutions, probed at the seed
    int side_gone = 0;
    Vec warm = fold.state;
    for (int widen = 0; widen < 8 && side_gone == 0; ++widen, probe *= 4.0) {
        const auto lo = fold_exists(sys, fold.param_value - probe, second_from, warm, nopt,
                                    jump_tol);
        const auto hi = fold_exists(sys, fold.param_value + probe, second_from, warm, nopt,
                                    jump_tol);
        if (lo.exists && !hi.exists) side_gone = +1;
        if (hi.exists && !lo.exists) side_gone = -1;
    }
    if (side_gone == 0)
        throw DegenerateLocusError(
            "trace_fold_locus: could not identify the fold side at the seed");

    const double nu_range = std::abs(second_to - second_from);
    const double nu_dir = second_to > second_from ? 1.0 : -1.0;
    double nu_step = nu_range * std::max(ctrl.initial_fraction, 1e-2);
    const double nu_floor = nu_range * ctrl.min_fraction;

    double nu = second_from;
    double lambda = fold.param_value;
    bool first_step = true;

    while (nu != second_to) {
        double nu_next = nu + nu_dir * nu_step;
        if ((nu_next - second_to) * nu_dir > 0.0) nu_next = second_to;

        // re-bracket the fold at nu_next, walking inward until a solution
        // exists and outward until it is gone
        const double win_cap = 0.25 * std::max(std::abs(lambda), sys.primary_scale);
        double h = std::max(1e-5 * pscale, 1e-12);
        double lam_in = lambda - side_gone * h;
        Vec x_in;
        bool ok = false;
        while (h <= win_cap) {
            auto e = fold_exists(sys, lam_in, nu_next, warm, nopt, jump_tol);
            if (e.exists) {
                ok = true;
                x_in = e.x;
                break;
            }
            h *= 4.0;
            lam_in = lambda - side_gone * h;
        }
        double lam_out = lambda + side_gone * std::max(1e-5 * pscale, 1e-12);
        bool gone_found = false;
        if (ok) {
            double g = std::max(1e-5 * pscale, 1e-12);
            while (g <= win_cap) {
                auto e = fold_exists(sys, lam_out, nu_next, x_in, nopt, jump_tol);
                if (!e.exists) {
                    gone_found = true;
                    break;
                }
                x_in = e.x;
                lam_in = lam_out;
                g *= 4.0;
                lam_out = lam_in + side_gone * g;
            }
        }

        if (!ok || !gone_found) {
            if (first_step && nu_step <= nu_floor * 2.0)
                throw DegenerateLocusError("trace_fold_locus: fold lost at the first step");
            nu_step *= 0.5;
            if (nu_step < nu_floor) {
                locus.fold_lost = true;
                break;
            }
            continue;
        }

        // bisect [lam_in, lam_out] on existence
        const double tol_lambda = 1e-6 * std::max(std::abs(lam_in), 0.01 * pscale);
        Vec x_fold = x_in;
        for (int it = 0; it < 80 && std::abs(lam_out - lam_in) > tol_lambda; ++it) {
            const double lm = 0.5 * (lam_in + lam_out);
            auto e = fold_exists(sys, lm, nu_next, x_fold, nopt, jump_tol);
            if (e.exists) {
                lam_in = lm;
                x_fold = e.x;
            } else {
                lam_out = lm;
            }
        }

        lambda = lam_in;
        warm = x_fold;
        nu = nu_next;
        first_step = false;
        locus.points.push_back({lambda, nu});
        nu_step = std::min(nu_step * 1.5, nu_range * ctrl.max_fraction * 4.0);
    }
    return locus;
}

// ---------------------------------------------------------------------------
// Reactor-model wrappers

namespace {

Vec reactor_rhs_vec(const ModelParams& P, Mode mode, const Vec& x) {
    if (mode == Mode::endex) {
        const auto d = endex_rhs(EndexState{x[0], x[1], x[2], x[3]}, P);
        return Vec(d.begin(), d.end());
    }
    const auto d = standalone_rhs(CarboniserState{x[0], x[1]}, P);
    return Vec(d.begin(), d.end());
}

Vec reactor_scales(const ModelParams& P, Mode mode) {
    if (mode == Mode::endex) {
        const auto s = endex_scales(P);
        return Vec(s.begin(), s.end());
    }
    const auto s = standalone_scales(P);
    return Vec(s.begin(), s.end());
}

DerivedQuantities reactor_derived(const ModelParams& P, Mode mode, const Vec& x) {
    DerivedQuantities d;
    d.p1 = pressure_of(std::max(x[0], 0.0), x[1]);
    d.p1_eq = equilibrium_pressure(x[1], P.kinetics);
    d.conversion = 1.0 - x[0] / P.c1_in();
    if (mode == Mode::endex) {
        d.p2 = pressure_of(std::max(x[2], 0.0), x[3]);
        d.p2_eq = equilibrium_pressure(x[3], P.kinetics);
    } else {
        d.p2 = d.p2_eq = std::numeric_limits<double>::quiet_NaN();
    }
    return d;
}

}  // namespace

ParametrizedSystem reactor_system(const ModelParams& P, Mode mode, TunableParam param) {
    ParametrizedSystem sys;
    sys.rhs = [P, mode, param](const Vec& x, double lambda) {
        ModelParams Q = P;
        set_param(Q, param, lambda);
        return reactor_rhs_vec(Q, mode, x);
    };
    sys.state_scales = reactor_scales(P, mode);
    sys.param_scale = std::max(std::abs(get_param(P, param)), 1e-12);
    sys.derive = [P, mode, param](const Vec& x, double lambda) {
        ModelParams Q = P;
        set_param(Q, param, lambda);
        return reactor_derived(Q, mode, x);
    };
    return sys;
}

NewtonOptions reactor_newton_options(const ModelParams& P, Mode mode) {
    NewtonOptions opt;
    opt.residual_scales = reactor_scales(P, mode);
    return opt;
}

Vec transient_seed(const ModelParams& P, Mode mode, double settle_time) {
    auto rhs = [&P, mode](const Vec& y) { return reactor_rhs_vec(P, mode, y); };
    Vec y0;
    if (mode == Mode::endex)
        y0 = {P.c1_in(), P.flow.inlet_gas_temperature, 0.0, P.flow.inlet_gas_temperature};
    else
        y0 = {P.c1_in(), P.flow.inlet_gas_temperature};
    auto guard = [](double, Vec& y) -> std::optional<std::string> {
        bool acted = false;
        for (size_t i = 0; i < y.size(); i += 2)  // concentration slots
            if (y[i] < 0.0) {
                y[i] = 0.0;
                acted = true;
            }
        if (acted) return std::string("clamped negative concentration");
        return std::nullopt;
    };
    return integrate(rhs, y0, 0.0, settle_time, {}, {}, guard).states.back();
}

Vec steady_state(const ModelParams& P, Mode mode, std::optional<Vec> guess,
                 std::optional<NewtonOptions> nopt) {
    const NewtonOptions opt = nopt ? *nopt : reactor_newton_options(P, mode);
    auto rhs = [&P, mode](const Vec& y) { return reactor_rhs_vec(P, mode, y); };
    if (guess) return newton_solve(rhs, *guess, opt).x;
    // settle 200 s first; if Newton cannot close from there (slow thermal
    // modes leave the seed far out), settle an order of magnitude longer
    double settle = 200.0;
    for (int attempt = 0;; ++attempt) {
        const Vec seed = transient_seed(P, mode, settle);
        try {
            return newton_solve(rhs, seed, opt).x;
        } catch (const NonConvergenceError&) {
            if (attempt >= 3) throw;
        } catch (const SingularMatrixError&) {
            if (attempt >= 3) throw;
        }
        settle *= 10.0;
    }
}

SteadyStateRecord solve_record(const ModelParams& P, Mode mode, std::optional<Vec> guess,
                               std::optional<NewtonOptions> nopt) {
    const NewtonOptions opt = nopt ? *nopt : reactor_newton_options(P, mode);
    const Vec g = guess ? *guess : steady_state(P, mode, std::nullopt, opt);
    auto rhs = [&P, mode](const Vec& y) { return reactor_rhs_vec(P, mode, y); };
    const auto res = newton_solve(rhs, g, opt);

    SteadyStateRecord rec;
    rec.param_value = 0.0;
    rec.state = res.x;
    rec.eigen = eigenvalues(fd_jacobian(rhs, res.x));
    rec.stability = classify(rec.eigen);
    rec.residual_norm = res.residual_norm;
    rec.derived = reactor_derived(P, mode, res.x);
    return rec;
}

Branch trace_branch(const ModelParams& P, Mode mode, TunableParam param, double from,
                    double to, std::optional<Vec> initial_guess, StepControl ctrl,
                    std::optional<NewtonOptions> nopt) {
    ModelParams at_start = P;
    set_param(at_start, param, from);
    at_start.validate();

    const ParametrizedSystem sys = reactor_system(P, mode, param);
    const NewtonOptions opt = nopt ? *nopt : reactor_newton_options(P, mode);
    Vec guess;
    if (initial_guess) {
        guess = *initial_guess;
    } else {
        try {
            guess = steady_state(at_start, mode, std::nullopt, opt);
        } catch (const NonConvergenceError& e) {
            throw SeedError(std::string("trace_branch: seeding failed: ") + e.what());
        }
    }

    Branch b = trace_branch_generic(sys, from, to, guess, ctrl, opt);
    b.param = param_name(param);
    return b;
}

std::vector<SingularPoint> detect_singularities(const ModelParams& P, Mode mode,
                                                TunableParam param, const Branch& b) {
    const ParametrizedSystem sys = reactor_system(P, mode, param);
    return detect_singularities_generic(sys, b, {}, reactor_newton_options(P, mode));
}

FoldLocus trace_fold_locus(const ModelParams& P, Mode mode, TunableParam primary,
                           const SingularPoint& fold, TunableParam second, double from,
                           double to, StepControl ctrl) {
    TwoParamSystem sys;
    sys.rhs = [P, mode, primary, second](const Vec& x, double lambda, double nu) {
        ModelParams Q = P;
        set_param(Q, primary, lambda);
        set_param(Q, second, nu);
        return reactor_rhs_vec(Q, mode, x);
    };
    sys.state_scales = reactor_scales(P, mode);
    sys.primary_scale = std::max(std::abs(fold.param_value), 1e-12);
    return trace_fold_locus_generic(sys, fold, from, to, ctrl,
                                    reactor_newton_options(P, mode));
}

}  // namespace endex
