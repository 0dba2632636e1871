#pragma once

#include <functional>
#include <vector>

namespace sigeq::num {

using Fn1 = std::function<double(double)>;

// Bisection on a bracketing interval [lo, hi] with f(lo), f(hi) of opposite
// sign (or zero). Converges to |hi-lo| <= xtol. Throws if not bracketed.
double bisect(const Fn1& f, double lo, double hi, double xtol = 1e-12,
              int max_iter = 200);

// Expands [lo, lo+step] rightward until f changes sign; returns the bracket.
// Throws convergence_error if no sign change found before `limit`.
struct Bracket {
    double lo, hi;
};
Bracket bracket_upward(const Fn1& f, double lo, double step, double limit);

// Golden-section maximization of a unimodal f on [lo, hi] to xtol.
double golden_section_max(const Fn1& f, double lo, double hi,
                          double xtol = 1e-10);

// Adaptive Simpson quadrature of f over [a, b] to absolute tolerance tol.
double adaptive_simpson(const Fn1& f, double a, double b, double tol = 1e-10,
                        int max_depth = 40);

// Central difference df/dx with step scaled to the argument magnitude.
double central_diff(const Fn1& f, double x, double scale = 1.0);

// One classical 4th-order Runge-Kutta step of y' = f(s, y).
double rk4_step(const std::function<double(double, double)>& f, double s,
                double y, double h);

// Deterministic low-discrepancy points in [0,1)^dim (additive recurrence
// with generalized golden ratios). Used by the sampling-based checks so
// re-runs are bit-identical.
class Kronecker {
public:
    explicit Kronecker(int dim, unsigned long long skip = 0);
    std::vector<double> next();

private:
    std::vector<double> alpha_;
    std::vector<double> state_;
};

// Piecewise-linear interpolation over a strictly increasing grid. Clamps to
// the end values outside the range.
double interp_linear(const std::vector<double>& xs,
                     const std::vector<double>& ys, double x);

// Inverse lookup on a nondecreasing sampled function: smallest x in the grid
// range with ys(x) ~= y, found by bisection on the interpolant.
double interp_inverse(const std::vector<double>& xs,
                      const std::vector<double>& ys, double y);

} // namespace sigeq::num
