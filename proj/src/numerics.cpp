#include "signaleq/numerics.hpp"

#include "signaleq/errors.hpp"

#include <algorithm>
#include <cmath>

namespace sigeq::num {

double bisect(const Fn1& f, double lo, double hi, double xtol, int max_iter) {
    double flo = f(lo);
    double fhi = f(hi);
    if (flo == 0.0) return lo;
    if (fhi == 0.0) return hi;
    if ((flo < 0.0) == (fhi < 0.0))
        throw convergence_error("bisect: interval does not bracket a root");
    for (int i = 0; i < max_iter && (hi - lo) > xtol; ++i) {
        const double mid = 0.5 * (lo + hi);
        const double fm = f(mid);
        if (fm == 0.0) return mid;
        if ((fm < 0.0) == (flo < 0.0)) {
            lo = mid;
            flo = fm;
        } else {
            hi = mid;
        }
    }
    return 0.5 * (lo + hi);
}

Bracket bracket_upward(const Fn1& f, double lo, double step, double limit) {
    double flo = f(lo);
    double a = lo;
    double b = lo + step;
    while (b <= limit) {
        const double fb = f(b);
        if (fb == 0.0 || (flo < 0.0) != (fb < 0.0)) return {a, b};
        a = b;
        flo = fb;
        step *= 2.0;
        b += step;
    }
    // last try exactly at the limit
    if (a < limit) {
        const double fb = f(limit);
        if (fb == 0.0 || (flo < 0.0) != (fb < 0.0)) return {a, limit};
    }
    throw convergence_error("bracket_upward: no sign change before limit");
}

double golden_section_max(const Fn1& f, double lo, double hi, double xtol) {
    constexpr double invphi = 0.6180339887498949;
    double a = lo, b = hi;
    double x1 = b - invphi * (b - a);
    double x2 = a + invphi * (b - a);
    double f1 = f(x1), f2 = f(x2);
    while (b - a > xtol) {
        if (f1 < f2) {
            a = x1;
            x1 = x2;
            f1 = f2;
            x2 = a + invphi * (b - a);
            f2 = f(x2);
        } else {
            b = x2;
            x2 = x1;
            f2 = f1;
            x1 = b - invphi * (b - a);
            f1 = f(x1);
        }
    }
    return 0.5 * (a + b);
}

namespace {

double simpson(double a, double fa, double fm, double b, double fb) {
    return (b - a) / 6.0 * (fa + 4.0 * fm + fb);
}

double adaptive_simpson_rec(const Fn1& f, double a, double fa, double b,
                            double fb, double m, double fm, double whole,
                            double tol, int depth) {
    const double lm = 0.5 * (a + m);
    const double rm = 0.5 * (m + b);
    const double flm = f(lm);
    const double frm = f(rm);
    const double left = simpson(a, fa, flm, m, fm);
    const double right = simpson(m, fm, frm, b, fb);
    const double delta = left + right - whole;
    if (depth <= 0 || std::abs(delta) <= 15.0 * tol)
        return left + right + delta / 15.0;
    return adaptive_simpson_rec(f, a, fa, m, fm, lm, flm, left, 0.5 * tol,
                                depth - 1) +
           adaptive_simpson_rec(f, m, fm, b, fb, rm, frm, right, 0.5 * tol,
                                depth - 1);
}

} // namespace

double adaptive_simpson(const Fn1& f, double a, double b, double tol,
                        int max_depth) {
    if (a == b) return 0.0;
    const double fa = f(a), fb = f(b);
    const double m = 0.5 * (a + b);
    const double fm = f(m);
    const double whole = simpson(a, fa, fm, b, fb);
    return adaptive_simpson_rec(f, a, fa, b, fb, m, fm, whole, tol, max_depth);
}

double central_diff(const Fn1& f, double x, double scale) {
    const double h = 1e-6 * std::max(1.0, std::abs(scale));
    return (f(x + h) - f(x - h)) / (2.0 * h);
}

double rk4_step(const std::function<double(double, double)>& f, double s,
                double y, double h) {
    const double k1 = f(s, y);
    const double k2 = f(s + 0.5 * h, y + 0.5 * h * k1);
    const double k3 = f(s + 0.5 * h, y + 0.5 * h * k2);
    const double k4 = f(s + h, y + h * k3);
    return y + h / 6.0 * (k1 + 2.0 * k2 + 2.0 * k3 + k4);
}

Kronecker::Kronecker(int dim, unsigned long long skip) {
    // generalized golden ratio: unique positive root of x^(d+1) = x + 1
    double g = 1.5;
    for (int i = 0; i < 64; ++i) g = std::pow(1.0 + g, 1.0 / (dim + 1));
    alpha_.resize(dim);
    state_.resize(dim, 0.5);
    double a = 1.0;
    for (int d = 0; d < dim; ++d) {
        a /= g;
        alpha_[d] = a;
    }
    for (unsigned long long i = 0; i < skip; ++i) next();
}

std::vector<double> Kronecker::next() {
    for (size_t d = 0; d < state_.size(); ++d) {
        state_[d] += alpha_[d];
        if (state_[d] >= 1.0) state_[d] -= 1.0;
    }
    return state_;
}

double interp_linear(const std::vector<double>& xs,
                     const std::vector<double>& ys, double x) {
    if (xs.empty()) throw domain_error("interp_linear: empty grid");
    if (x <= xs.front()) return ys.front();
    if (x >= xs.back()) return ys.back();
    const auto it = std::upper_bound(xs.begin(), xs.end(), x);
    const size_t i = static_cast<size_t>(it - xs.begin());
    const double x0 = xs[i - 1], x1 = xs[i];
    const double w = (x - x0) / (x1 - x0);
    return ys[i - 1] * (1.0 - w) + ys[i] * w;
}

double interp_inverse(const std::vector<double>& xs,
                      const std::vector<double>& ys, double y) {
    if (xs.empty()) throw domain_error("interp_inverse: empty grid");
    if (y <= ys.front()) return xs.front();
    if (y >= ys.back()) return xs.back();
    // locate the grid cell by binary search on the nondecreasing ys
    size_t lo = 0, hi = ys.size() - 1;
    while (hi - lo > 1) {
        const size_t mid = (lo + hi) / 2;
        if (ys[mid] <= y)
            lo = mid;
        else
            hi = mid;
    }
    const double y0 = ys[lo], y1 = ys[hi];
    if (y1 == y0) return xs[lo];
    const double w = (y - y0) / (y1 - y0);
    return xs[lo] * (1.0 - w) + xs[hi] * w;
}

} // namespace sigeq::num
