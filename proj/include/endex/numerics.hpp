// Small-system numerical kernels: adaptive transient integration, damped
// Newton root finding, finite-difference Jacobians, eigenvalues of dense
// real matrices, and stability classification.
//
// Everything here is dimension-agnostic but tuned for the n <= 4 systems of
// the reactor model (plus the n = 5 bordered systems used by continuation).

#ifndef ENDEX_NUMERICS_HPP
#define ENDEX_NUMERICS_HPP

#include <complex>
#include <functional>
#include <optional>
#include <stdexcept>
#include <string>
#include <utility>
#include <vector>

namespace endex {

using Vec = std::vector<double>;
using RhsFn = std::function<Vec(const Vec&)>;

// Dense row-major matrix, small n.
class Mat {
public:
    Mat() : rows_(0), cols_(0) {}
    Mat(int rows, int cols) : rows_(rows), cols_(cols), a_(static_cast<size_t>(rows) * cols, 0.0) {}

    double& operator()(int i, int j) { return a_[static_cast<size_t>(i) * cols_ + j]; }
    double operator()(int i, int j) const { return a_[static_cast<size_t>(i) * cols_ + j]; }
    int rows() const { return rows_; }
    int cols() const { return cols_; }

private:
    int rows_, cols_;
    std::vector<double> a_;
};

class SingularMatrixError : public std::runtime_error {
public:
    explicit SingularMatrixError(const std::string& what) : std::runtime_error(what) {}
};

// Newton failed to reach the residual tolerance; carries the best iterate seen.
class NonConvergenceError : public std::runtime_error {
public:
    NonConvergenceError(const std::string& what, Vec best, double residual_norm)
        : std::runtime_error(what), best_iterate(std::move(best)), residual_norm(residual_norm) {}
    Vec best_iterate;
    double residual_norm;
};

// Step size collapsed below the floor; carries the last accepted state.
class StiffnessError : public std::runtime_error {
public:
    StiffnessError(const std::string& what, double t, Vec state)
        : std::runtime_error(what), last_time(t), last_state(std::move(state)) {}
    double last_time;
    Vec last_state;
};

// Solve A x = b by LU with partial pivoting. Throws SingularMatrixError.
Vec lu_solve(Mat A, Vec b);

// det(A) via LU; returns 0 for numerically singular input.
double determinant(Mat A);

// ---------------------------------------------------------------------------
// Transient integration

struct Tolerances {
    double rel = 1e-8;
    double abs = 1e-10;
};

// Scheduled replacement of the right-hand side (a parameter switch) at a
// fixed time. Integration stops exactly at `time`, the new rhs takes over,
// and the change is recorded in the trajectory's event log.
struct RhsChange {
    double time;
    std::string description;
    RhsFn rhs;
};

struct Trajectory {
    std::vector<double> times;              // strictly increasing [s]
    std::vector<Vec> states;                // aligned with times
    std::vector<std::pair<double, std::string>> event_log;  // switches and clamps
};

// Optional per-step state repair: may modify y in place (e.g. clamp a
// transient negative concentration); returns a log message when it acted.
using StateGuard = std::function<std::optional<std::string>(double t, Vec& y)>;

// Adaptive Dormand-Prince 5(4) with PI step control. Events split the
// integration into exact sub-spans. Local error is controlled against
// tol.abs + tol.rel * |y| componentwise.
Trajectory integrate(RhsFn rhs, Vec y0, double t0, double t1, Tolerances tol = {},
                     std::vector<RhsChange> events = {}, StateGuard guard = nullptr);

// ---------------------------------------------------------------------------
// Steady-state root finding

struct NewtonOptions {
    double tol = 1e-9;          // infinity-norm bound on the scaled residual
    int max_iter = 50;
    int max_halvings = 20;      // step-halving damping
    double fd_h_rel = 1e-6;     // relative FD step for the Jacobian
    Vec residual_scales;        // componentwise residual scaling; empty = ones
    Vec fd_scales;              // componentwise FD floor scales; empty = ones
};

struct NewtonResult {
    Vec x;
    int iterations;
    double residual_norm;  // scaled infinity norm at x
};

NewtonResult newton_solve(const RhsFn& residual, Vec guess, const NewtonOptions& opt = {});

// Central-difference Jacobian; column j uses step h_rel * max(|x_j|, scale_j).
// Default scales are 1 in every component (1 mol/m^3, 1 K for model states).
Mat fd_jacobian(const RhsFn& f, const Vec& x, double h_rel = 1e-6, const Vec& scales = {});

// ---------------------------------------------------------------------------
// Eigenvalues and stability

struct EigenSet {
    std::vector<std::complex<double>> values;  // sorted by (Re desc, Im desc)
    int source_matrix_dim = 0;
};

struct StabilityClass {
    enum class Kind { stable, unstable };
    Kind kind;
    bool oscillatory;      // eigenvalue(s) attaining the max real part are complex
    double max_real_part;  // 1/s
};

// All eigenvalues of a dense real matrix (balancing + Hessenberg + shifted QR).
EigenSet eigenvalues(const Mat& M);

// Stable iff max real part < -margin; ties (== -margin) classify as unstable.
StabilityClass classify(const EigenSet& e, double margin = 0.0);

// Infinity norm of r scaled componentwise (scales empty = ones). Returns +inf
// when any component is non-finite, so callers treat invalid points as "worse".
double scaled_inf_norm(const Vec& r, const Vec& scales);

}  // namespace endex

#endif  // ENDEX_NUMERICS_HPP
