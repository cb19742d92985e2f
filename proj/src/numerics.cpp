#include "endex/numerics.hpp"

#include <algorithm>
#include <cmath>
#include <limits>

#include "endex/model.hpp"  // DomainError

namespace endex {

namespace {

constexpr double kEps = std::numeric_limits<double>::epsilon();

bool all_finite(const Vec& v) {
    for (double x : v)
        if (!std::isfinite(x)) return false;
    return true;
}

}  // namespace

double scaled_inf_norm(const Vec& r, const Vec& scales) {
    double m = 0.0;
    for (size_t i = 0; i < r.size(); ++i) {
        const double s = scales.empty() ? 1.0 : scales[i];
        const double v = std::abs(r[i]) / s;
        if (!std::isfinite(v)) return std::numeric_limits<double>::infinity();
        m = std::max(m, v);
    }
    return m;
}

// ---------------------------------------------------------------------------
// Dense LU with partial pivoting

namespace {

// Factor A in place; perm receives the pivot rows, sign the permutation sign.
// Returns false if a pivot underflows.
bool lu_factor(Mat& A, std::vector<int>& perm, double& sign) {
    const int n = A.rows();
    perm.resize(n);
    sign = 1.0;
    // implicit row scaling so badly equilibrated systems (e.g. a bordered
    // continuation matrix) pivot sensibly
    std::vector<double> rs(n);
    for (int i = 0; i < n; ++i) {
        double big = 0.0;
        for (int j = 0; j < n; ++j) big = std::max(big, std::abs(A(i, j)));
        if (big == 0.0) return false;
        rs[i] = 1.0 / big;
    }
    for (int k = 0; k < n; ++k) {
        int piv = k;
        double big = rs[k] * std::abs(A(k, k));
        for (int i = k + 1; i < n; ++i) {
            const double v = rs[i] * std::abs(A(i, k));
            if (v > big) { big = v; piv = i; }
        }
        perm[k] = piv;
        if (big < 1e3 * kEps) return false;  // rank-deficiency threshold
        if (piv != k) {
            for (int j = 0; j < n; ++j) std::swap(A(k, j), A(piv, j));
            std::swap(rs[k], rs[piv]);
            sign = -sign;
        }
        const double inv = 1.0 / A(k, k);
        for (int i = k + 1; i < n; ++i) {
            const double m = A(i, k) * inv;
            A(i, k) = m;
            for (int j = k + 1; j < n; ++j) A(i, j) -= m * A(k, j);
        }
    }
    return true;
}

}  // namespace

Vec lu_solve(Mat A, Vec b) {
    const int n = A.rows();
    if (A.cols() != n || static_cast<int>(b.size()) != n)
        throw std::invalid_argument("lu_solve: dimension mismatch");
    std::vector<int> perm;
    double sign;
    if (!lu_factor(A, perm, sign)) throw SingularMatrixError("lu_solve: singular matrix");
    // apply the full pivot sequence before substituting: the multipliers
    // stored below the diagonal belong to the final row order
    for (int k = 0; k < n; ++k) std::swap(b[k], b[perm[k]]);
    for (int k = 0; k < n; ++k)
        for (int i = k + 1; i < n; ++i) b[i] -= A(i, k) * b[k];
    for (int i = n - 1; i >= 0; --i) {
        for (int j = i + 1; j < n; ++j) b[i] -= A(i, j) * b[j];
        b[i] /= A(i, i);
    }
    return b;
}

double determinant(Mat A) {
    const int n = A.rows();
    std::vector<int> perm;
    double sign;
    if (!lu_factor(A, perm, sign)) return 0.0;
    double det = sign;
    for (int k = 0; k < n; ++k) det *= A(k, k);
    return det;
}

// ---------------------------------------------------------------------------
// Dormand-Prince 5(4)

namespace {

// Butcher tableau of DOPRI5; the 5th-order weights coincide with the last
// stage (FSAL).
constexpr double c2 = 1.0 / 5, c3 = 3.0 / 10, c4 = 4.0 / 5, c5 = 8.0 / 9;
constexpr double a21 = 1.0 / 5;
constexpr double a31 = 3.0 / 40, a32 = 9.0 / 40;
constexpr double a41 = 44.0 / 45, a42 = -56.0 / 15, a43 = 32.0 / 9;
constexpr double a51 = 19372.0 / 6561, a52 = -25360.0 / 2187, a53 = 64448.0 / 6561,
                 a54 = -212.0 / 729;
constexpr double a61 = 9017.0 / 3168, a62 = -355.0 / 33, a63 = 46732.0 / 5247,
                 a64 = 49.0 / 176, a65 = -5103.0 / 18656;
constexpr double b1 = 35.0 / 384, b3 = 500.0 / 1113, b4 = 125.0 / 192,
                 b5 = -2187.0 / 6784, b6 = 11.0 / 84;
// b - bhat, error estimator weights
constexpr double e1 = 71.0 / 57600, e3 = -71.0 / 16695, e4 = 71.0 / 1920,
                 e5 = -17253.0 / 339200, e6 = 22.0 / 525, e7 = -1.0 / 40;

Vec eval_rhs(const RhsFn& rhs, const Vec& y, double t) {
    Vec f = rhs(y);
    if (f.size() != y.size()) throw std::invalid_argument("integrate: rhs dimension mismatch");
    if (!all_finite(f))
        throw DomainError("integrate: non-finite rhs at t = " + std::to_string(t));
    return f;
}

double initial_step(const RhsFn& rhs, const Vec& y0, const Vec& f0, double t0,
                    double span, const Tolerances& tol) {
    const size_t n = y0.size();
    double d0 = 0.0, d1 = 0.0;
    for (size_t i = 0; i < n; ++i) {
        const double sc = tol.abs + tol.rel * std::abs(y0[i]);
        d0 += (y0[i] / sc) * (y0[i] / sc);
        d1 += (f0[i] / sc) * (f0[i] / sc);
    }
    d0 = std::sqrt(d0 / n);
    d1 = std::sqrt(d1 / n);
    double h0 = (d0 < 1e-5 || d1 < 1e-5) ? 1e-6 * span : 0.01 * d0 / d1;
    h0 = std::min(h0, span);

    // one explicit Euler probe to estimate the second derivative
    Vec y1(n);
    for (size_t i = 0; i < n; ++i) y1[i] = y0[i] + h0 * f0[i];
    double d2 = 0.0;
    try {
        const Vec f1 = eval_rhs(rhs, y1, t0 + h0);
        for (size_t i = 0; i < n; ++i) {
            const double sc = tol.abs + tol.rel * std::abs(y0[i]);
            d2 += ((f1[i] - f0[i]) / sc) * ((f1[i] - f0[i]) / sc);
        }
        d2 = std::sqrt(d2 / n) / h0;
    } catch (const DomainError&) {
        d2 = 0.0;  // probe left the domain; fall back to the first guess
    }
    const double dm = std::max(d1, d2);
    const double h1 = (dm > 1e-15) ? std::pow(0.01 / dm, 0.2) : std::max(1e-6 * span, h0 * 1e3);
    return std::min({100.0 * h0, h1, span});
}

// Integrate one event-free sub-span, appending accepted states.
void integrate_span(const RhsFn& rhs, Vec& y, double& t, double t_end, const Tolerances& tol,
                    const StateGuard& guard, Trajectory& out) {
    const size_t n = y.size();
    const double span = t_end - t;
    double h = initial_step(rhs, y, eval_rhs(rhs, y, t), t, span, tol);
    Vec k1 = eval_rhs(rhs, y, t);
    Vec k2(n), k3(n), k4(n), k5(n), k6(n), k7(n), ytmp(n), ynew(n);
    bool rejected = false;

    while (t < t_end) {
        if (t + h > t_end) h = t_end - t;
        if (h < 64.0 * kEps * std::max(std::abs(t), 1.0))
            throw StiffnessError("integrate: step size underflow at t = " + std::to_string(t),
                                 t, y);

        bool domain_hit = false;
        double err = 0.0;
        try {
            for (size_t i = 0; i < n; ++i) ytmp[i] = y[i] + h * a21 * k1[i];
            k2 = eval_rhs(rhs, ytmp, t + c2 * h);
            for (size_t i = 0; i < n; ++i) ytmp[i] = y[i] + h * (a31 * k1[i] + a32 * k2[i]);
            k3 = eval_rhs(rhs, ytmp, t + c3 * h);
            for (size_t i = 0; i < n; ++i)
                ytmp[i] = y[i] + h * (a41 * k1[i] + a42 * k2[i] + a43 * k3[i]);
            k4 = eval_rhs(rhs, ytmp, t + c4 * h);
            for (size_t i = 0; i < n; ++i)
                ytmp[i] = y[i] + h * (a51 * k1[i] + a52 * k2[i] + a53 * k3[i] + a54 * k4[i]);
            k5 = eval_rhs(rhs, ytmp, t + c5 * h);
            for (size_t i = 0; i < n; ++i)
                ytmp[i] = y[i] + h * (a61 * k1[i] + a62 * k2[i] + a63 * k3[i] + a64 * k4[i] +
                                      a65 * k5[i]);
            k6 = eval_rhs(rhs, ytmp, t + h);
            for (size_t i = 0; i < n; ++i)
                ynew[i] = y[i] + h * (b1 * k1[i] + b3 * k3[i] + b4 * k4[i] + b5 * k5[i] +
                                      b6 * k6[i]);
            k7 = eval_rhs(rhs, ynew, t + h);

            for (size_t i = 0; i < n; ++i) {
                const double ei = h * (e1 * k1[i] + e3 * k3[i] + e4 * k4[i] + e5 * k5[i] +
                                       e6 * k6[i] + e7 * k7[i]);
                const double sc = tol.abs + tol.rel * std::max(std::abs(y[i]), std::abs(ynew[i]));
                err += (ei / sc) * (ei / sc);
            }
            err = std::sqrt(err / n);
        } catch (const DomainError&) {
            // A stage left the physical domain (e.g. T <= 0 from an overlong
            // step): treat like a rejected step unless we're already tiny.
            domain_hit = true;
        }

        if (domain_hit) {
            if (h < 1e3 * kEps * std::max(std::abs(t), 1.0))
                throw DomainError("integrate: rhs domain error at t = " + std::to_string(t));
            h *= 0.25;
            rejected = true;
            continue;
        }

        if (err <= 1.0) {
            t += h;
            y = ynew;
            if (guard) {
                if (auto msg = guard(t, y)) {
                    out.event_log.emplace_back(t, *msg);
                    k7 = eval_rhs(rhs, y, t);  // state was repaired; refresh FSAL stage
                }
            }
            out.times.push_back(t);
            out.states.push_back(y);
            k1 = k7;  // FSAL
            double fac = 0.9 * std::pow(std::max(err, 1e-10), -0.2);
            fac = std::min(rejected ? 1.0 : 5.0, std::max(0.2, fac));
            h *= fac;
            rejected = false;
        } else {
            h *= std::max(0.2, 0.9 * std::pow(err, -0.2));
            rejected = true;
        }
    }
}

}  // namespace

Trajectory integrate(RhsFn rhs, Vec y0, double t0, double t1, Tolerances tol,
                     std::vector<RhsChange> events, StateGuard guard) {
    if (!(t1 > t0)) throw std::invalid_argument("integrate: t_span must be increasing");
    if (!(tol.rel > 0.0) || !(tol.abs > 0.0))
        throw std::invalid_argument("integrate: tolerances must be > 0");
    if (!all_finite(y0)) throw DomainError("integrate: non-finite initial state");

    std::sort(events.begin(), events.end(),
              [](const RhsChange& a, const RhsChange& b) { return a.time < b.time; });

    Trajectory out;
    out.times.push_back(t0);
    out.states.push_back(y0);

    Vec y = std::move(y0);
    double t = t0;
    for (auto& ev : events) {
        if (ev.time <= t0 || ev.time > t1) continue;  // outside the span: never fires
        if (ev.time > t) integrate_span(rhs, y, t, ev.time, tol, guard, out);
        rhs = std::move(ev.rhs);
        out.event_log.emplace_back(ev.time, ev.description);
    }
    if (t < t1) integrate_span(rhs, y, t, t1, tol, guard, out);
    return out;
}

// ---------------------------------------------------------------------------
// Finite-difference Jacobian

Mat fd_jacobian(const RhsFn& f, const Vec& x, double h_rel, const Vec& scales) {
    if (!(h_rel > 0.0)) throw std::invalid_argument("fd_jacobian: h_rel must be > 0");
    if (!all_finite(x)) throw DomainError("fd_jacobian: non-finite evaluation point");
    const int n = static_cast<int>(x.size());
    const Vec f0 = f(x);
    const int m = static_cast<int>(f0.size());

    Mat J(m, n);
    Vec xp = x, xm = x;
    for (int j = 0; j < n; ++j) {
        const double scale = scales.empty() ? 1.0 : scales[j];
        const double h = h_rel * std::max(std::abs(x[j]), scale);
        xp[j] = x[j] + h;
        xm[j] = x[j] - h;
        Vec fp, fm;
        try {
            fp = f(xp);
            fm = f(xm);
        } catch (const DomainError& e) {
            throw DomainError("fd_jacobian: evaluation failed in column " + std::to_string(j) +
                              " (" + e.what() + ")");
        }
        if (!all_finite(fp) || !all_finite(fm))
            throw DomainError("fd_jacobian: non-finite function value in column " +
                              std::to_string(j));
        const double inv2h = 1.0 / (2.0 * h);
        for (int i = 0; i < m; ++i) J(i, j) = (fp[i] - fm[i]) * inv2h;
        xp[j] = x[j];
        xm[j] = x[j];
    }
    return J;
}

// ---------------------------------------------------------------------------
// Damped Newton

NewtonResult newton_solve(const RhsFn& residual, Vec guess, const NewtonOptions& opt) {
    if (!(opt.tol > 0.0)) throw std::invalid_argument("newton_solve: tol must be > 0");
    if (!all_finite(guess)) throw DomainError("newton_solve: non-finite initial guess");

    // Out-of-domain trial points count as infinitely bad so damping backs off.
    auto eval = [&](const Vec& x, Vec& r) -> double {
        try {
            r = residual(x);
        } catch (const DomainError&) {
            r.clear();
            return std::numeric_limits<double>::infinity();
        }
        return scaled_inf_norm(r, opt.residual_scales);
    };

    Vec x = std::move(guess);
    Vec r;
    double norm = eval(x, r);
    Vec best_x = x;
    double best_norm = norm;

    for (int it = 0; it < opt.max_iter; ++it) {
        if (norm < opt.tol) return {x, it, norm};

        Mat J;
        try {
            J = fd_jacobian(residual, x, opt.fd_h_rel, opt.fd_scales);
        } catch (const DomainError& e) {
            throw NonConvergenceError(std::string("newton_solve: ") + e.what(), best_x,
                                      best_norm);
        }
        Vec rhs(r.size());
        for (size_t i = 0; i < r.size(); ++i) rhs[i] = -r[i];
        Vec step;
        try {
            step = lu_solve(J, rhs);
        } catch (const SingularMatrixError&) {
            throw SingularMatrixError("newton_solve: singular Jacobian after " +
                                      std::to_string(it) + " iterations");
        }

        // step-halving line search
        double alpha = 1.0;
        Vec x_trial(x.size()), r_trial;
        double norm_trial = std::numeric_limits<double>::infinity();
        bool accepted = false;
        for (int halving = 0; halving <= opt.max_halvings; ++halving) {
            for (size_t i = 0; i < x.size(); ++i) x_trial[i] = x[i] + alpha * step[i];
            norm_trial = eval(x_trial, r_trial);
            if (norm_trial < norm) {
                accepted = true;
                break;
            }
            alpha *= 0.5;
        }
        if (!accepted) {
            // allow a non-decreasing full step only when already essentially
            // converged (residual at rounding level)
            throw NonConvergenceError("newton_solve: damping stalled after " +
                                          std::to_string(it) + " iterations",
                                      best_x, best_norm);
        }
        x = x_trial;
        r = r_trial;
        norm = norm_trial;
        if (norm < best_norm) {
            best_norm = norm;
            best_x = x;
        }
    }
    if (norm < opt.tol) return {x, opt.max_iter, norm};
    throw NonConvergenceError("newton_solve: no convergence in " + std::to_string(opt.max_iter) +
                                  " iterations (residual " + std::to_string(best_norm) + ")",
                              best_x, best_norm);
}

// ---------------------------------------------------------------------------
// Eigenvalues: balance + Hessenberg reduction + shifted QR (EISPACK lineage)

namespace {

void balance(Mat& a) {
    const int n = a.rows();
    const double radix = 2.0, sqrdx = radix * radix;
    bool done = false;
    while (!done) {
        done = true;
        for (int i = 0; i < n; ++i) {
            double r = 0.0, c = 0.0;
            for (int j = 0; j < n; ++j)
                if (j != i) {
                    c += std::abs(a(j, i));
                    r += std::abs(a(i, j));
                }
            if (c != 0.0 && r != 0.0) {
                double g = r / radix, f = 1.0, s = c + r;
                while (c < g) {
                    f *= radix;
                    c *= sqrdx;
                }
                g = r * radix;
                while (c > g) {
                    f /= radix;
                    c /= sqrdx;
                }
                if ((c + r) / f < 0.95 * s) {
                    done = false;
                    g = 1.0 / f;
                    for (int j = 0; j < n; ++j) a(i, j) *= g;
                    for (int j = 0; j < n; ++j) a(j, i) *= f;
                }
            }
        }
    }
}

// Reduce to upper Hessenberg form by stabilized elementary transformations.
void hessenberg(Mat& a) {
    const int n = a.rows();
    for (int m = 1; m < n - 1; ++m) {
        double x = 0.0;
        int i = m;
        for (int j = m; j < n; ++j) {
            if (std::abs(a(j, m - 1)) > std::abs(x)) {
                x = a(j, m - 1);
                i = j;
            }
        }
        if (i != m) {
            for (int j = m - 1; j < n; ++j) std::swap(a(i, j), a(m, j));
            for (int j = 0; j < n; ++j) std::swap(a(j, i), a(j, m));
        }
        if (x != 0.0) {
            for (i = m + 1; i < n; ++i) {
                double y = a(i, m - 1);
                if (y != 0.0) {
                    y /= x;
                    a(i, m - 1) = y;
                    for (int j = m; j < n; ++j) a(i, j) -= y * a(m, j);
                    for (int j = 0; j < n; ++j) a(j, m) += y * a(j, i);
                }
            }
        }
    }
    for (int i = 2; i < n; ++i)
        for (int j = 0; j < i - 1; ++j) a(i, j) = 0.0;
}

// Francis double-shift QR on a Hessenberg matrix; returns all eigenvalues.
std::vector<std::complex<double>> hqr(Mat& a) {
    const int n = a.rows();
    std::vector<std::complex<double>> wri(n);
    double anorm = 0.0;
    for (int i = 0; i < n; ++i)
        for (int j = std::max(i - 1, 0); j < n; ++j) anorm += std::abs(a(i, j));

    int nn = n - 1;
    double t = 0.0;
    while (nn >= 0) {
        int its = 0;
        int l;
        do {
            for (l = nn; l > 0; --l) {
                double s = std::abs(a(l - 1, l - 1)) + std::abs(a(l, l));
                if (s == 0.0) s = anorm;
                if (std::abs(a(l, l - 1)) <= kEps * s) {
                    a(l, l - 1) = 0.0;
                    break;
                }
            }
            double x = a(nn, nn);
            if (l == nn) {  // one real root found
                wri[nn--] = x + t;
            } else {
                double y = a(nn - 1, nn - 1);
                double w = a(nn, nn - 1) * a(nn - 1, nn);
                if (l == nn - 1) {  // a 2x2 block: real pair or conjugate pair
                    double p = 0.5 * (y - x);
                    double q = p * p + w;
                    double z = std::sqrt(std::abs(q));
                    x += t;
                    if (q >= 0.0) {
                        z = p + (p >= 0.0 ? std::abs(z) : -std::abs(z));
                        wri[nn - 1] = wri[nn] = x + z;
                        if (z != 0.0) wri[nn] = x - w / z;
                    } else {
                        wri[nn] = std::complex<double>(x + p, -z);
                        wri[nn - 1] = std::conj(wri[nn]);
                    }
                    nn -= 2;
                } else {  // QR sweep
                    if (its == 30)
                        throw std::runtime_error("eigenvalues: too many QR iterations");
                    if (its == 10 || its == 20) {  // exceptional shift
                        t += x;
                        for (int i = 0; i < nn + 1; ++i) a(i, i) -= x;
                        double s = std::abs(a(nn, nn - 1)) + std::abs(a(nn - 1, nn - 2));
                        y = x = 0.75 * s;
                        w = -0.4375 * s * s;
                    }
                    ++its;
                    double p = 0, q = 0, r = 0;
                    int m;
                    for (m = nn - 2; m >= l; --m) {
                        double z = a(m, m);
                        r = x - z;
                        double s = y - z;
                        p = (r * s - w) / a(m + 1, m) + a(m, m + 1);
                        q = a(m + 1, m + 1) - z - r - s;
                        r = a(m + 2, m + 1);
                        double scl = std::abs(p) + std::abs(q) + std::abs(r);
                        p /= scl;
                        q /= scl;
                        r /= scl;
                        if (m == l) break;
                        double u = std::abs(a(m, m - 1)) * (std::abs(q) + std::abs(r));
                        double v = std::abs(p) * (std::abs(a(m - 1, m - 1)) + std::abs(z) +
                                                  std::abs(a(m + 1, m + 1)));
                        if (u <= kEps * v) break;
                    }
                    for (int i = m; i < nn - 1; ++i) {
                        a(i + 2, i) = 0.0;
                        if (i != m) a(i + 2, i - 1) = 0.0;
                    }
                    for (int k = m; k < nn; ++k) {
                        if (k != m) {
                            p = a(k, k - 1);
                            q = a(k + 1, k - 1);
                            r = 0.0;
                            if (k + 1 != nn) r = a(k + 2, k - 1);
                            x = std::abs(p) + std::abs(q) + std::abs(r);
                            if (x != 0.0) {
                                p /= x;
                                q /= x;
                                r /= x;
                            }
                        }
                        double s = std::sqrt(p * p + q * q + r * r);
                        if (p < 0.0) s = -s;
                        if (s == 0.0) continue;
                        if (k == m) {
                            if (l != m) a(k, k - 1) = -a(k, k - 1);
                        } else {
                            a(k, k - 1) = -s * x;
                        }
                        p += s;
                        x = p / s;
                        y = q / s;
                        double z = r / s;
                        q /= p;
                        r /= p;
                        for (int j = k; j < nn + 1; ++j) {  // row modification
                            p = a(k, j) + q * a(k + 1, j);
                            if (k + 1 != nn) {
                                p += r * a(k + 2, j);
                                a(k + 2, j) -= p * z;
                            }
                            a(k + 1, j) -= p * y;
                            a(k, j) -= p * x;
                        }
                        const int mmin = nn < k + 3 ? nn : k + 3;
                        for (int i = l; i < mmin + 1; ++i) {  // column modification
                            p = x * a(i, k) + y * a(i, k + 1);
                            if (k + 1 != nn) {
                                p += z * a(i, k + 2);
                                a(i, k + 2) -= p * r;
                            }
                            a(i, k + 1) -= p * q;
                            a(i, k) -= p;
                        }
                    }
                }
            }
        } while (l + 1 < nn);
    }
    return wri;
}

}  // namespace

EigenSet eigenvalues(const Mat& M) {
    const int n = M.rows();
    if (n < 1 || M.cols() != n) throw std::invalid_argument("eigenvalues: matrix must be square");
    for (int i = 0; i < n; ++i)
        for (int j = 0; j < n; ++j)
            if (!std::isfinite(M(i, j))) throw DomainError("eigenvalues: non-finite entry");

    EigenSet out;
    out.source_matrix_dim = n;
    if (n == 1) {
        out.values = {std::complex<double>(M(0, 0), 0.0)};
        return out;
    }
    Mat a = M;
    balance(a);
    hessenberg(a);
    out.values = hqr(a);
    std::sort(out.values.begin(), out.values.end(),
              [](const std::complex<double>& x, const std::complex<double>& y) {
                  if (x.real() != y.real()) return x.real() > y.real();
                  return x.imag() > y.imag();
              });
    return out;
}

StabilityClass classify(const EigenSet& e, double margin) {
    if (e.values.empty()) throw std::invalid_argument("classify: empty eigenvalue set");
    double max_re = -std::numeric_limits<double>::infinity();
    for (const auto& v : e.values) max_re = std::max(max_re, v.real());

    const double tie = 1e-12 * std::max(1.0, std::abs(max_re));
    bool oscillatory = false;
    for (const auto& v : e.values)
        if (v.real() >= max_re - tie && v.imag() != 0.0) oscillatory = true;

    StabilityClass sc;
    sc.max_real_part = max_re;
    sc.oscillatory = oscillatory;
    sc.kind = (max_re < -margin) ? StabilityClass::Kind::stable : StabilityClass::Kind::unstable;
    return sc;
}

}  // namespace endex
