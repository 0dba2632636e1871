#include "signaleq/verification.hpp"

#include "signaleq/errors.hpp"
#include "signaleq/numerics.hpp"

#include <algorithm>
#include <cmath>
#include <sstream>

namespace sigeq {

namespace {

std::string fmt_point(const char* tag, double a, double b) {
    std::ostringstream os;
    os << tag << "=(" << a << ", " << b << ")";
    return os.str();
}

void track(CheckRecord& rec, double residual, double tol,
           const std::string& witness) {
    if (residual > rec.max_residual) {
        rec.max_residual = residual;
        rec.worst_witness = witness;
    }
    if (residual > tol) rec.pass = false;
}

std::vector<double> linspace(double lo, double hi, int n) {
    std::vector<double> v(n);
    for (int i = 0; i < n; ++i) v[i] = lo + (hi - lo) * i / (n - 1);
    return v;
}

bool vacuous(const CSESolution& sol, CheckRecord& rec) {
    if (sol.regime == Regime::EmptyMarket) {
        rec.worst_witness = "empty market; vacuous";
        return true;
    }
    return false;
}

} // namespace

CheckRecord check_sender_optimality(const CSESolution& sol,
                                    const ModelPrimitives& prim,
                                    const VerifyOptions& opt) {
    CheckRecord rec;
    rec.name = "sender_optimality";
    if (vacuous(sol, rec)) return rec;

    // on-path actions: every node of the stored wage schedule (so a fault at
    // a single grid point cannot hide between samples) plus the pooled atom
    std::vector<std::pair<double, double>> offers; // (action, transfer)
    for (size_t i = 0; i < sol.s.size(); ++i)
        offers.push_back({sol.s[i], sol.tau[i]});
    if (sol.regime == Regime::Pooling)
        offers.push_back({sol.pooled->s_star, sol.pooled->t_star});
    else if (sol.thresholds.s_h)
        offers.push_back({*sol.thresholds.s_h, sol.t_hi});

    for (double z : linspace(prim.Z.lo, prim.Z.hi, opt.z_grid_n)) {
        const double eq = sol.sender_utility(z, prim);
        const bool entrant = z >= sol.thresholds.z_ell;
        if (entrant)
            track(rec, -eq, opt.tol, fmt_point("negative U at z", z, eq));
        for (const auto& [a, t] : offers) {
            const double gain = (t - prim.c(a, z)) - eq;
            track(rec, gain, opt.tol, fmt_point("(z,s)", z, a));
        }
    }
    return rec;
}

double willingness_to_pay(const CSESolution& sol, const ModelPrimitives& prim,
                          double s, double z_star, double x) {
    return prim.v(x, s, z_star) - sol.receiver_utility(x, prim);
}

CheckRecord check_offpath_deviation_d1(const CSESolution& sol,
                                       const ModelPrimitives& prim,
                                       const VerifyOptions& opt) {
    CheckRecord rec;
    rec.name = "offpath_deviation_d1";
    if (vacuous(sol, rec)) return rec;

    struct Segment {
        double lo, hi;
        double belief; // singleton support per the stronger monotone rule
        bool closed_left;
    };
    std::vector<Segment> segments;
    const double top = sol.top_action();
    if (sol.regime == Regime::Pooling) {
        const auto& p = *sol.pooled;
        if (p.s_star > 0.0)
            segments.push_back({0.0, p.s_star, p.z_star, false});
        segments.push_back({p.s_star, 2.0 * std::max(p.s_star, 1.0),
                            prim.Z.hi, false});
    } else {
        if (sol.thresholds.s_ell > 0.0)
            segments.push_back(
                {0.0, sol.thresholds.s_ell, sol.thresholds.z_ell, false});
        if (sol.thresholds.s_h)
            // the arc top itself is off path (the threshold type jumps), so
            // the tightest deviation sits exactly at the closed left end
            segments.push_back({*sol.thresholds.sigma_arc_top,
                                *sol.thresholds.s_h, *sol.thresholds.z_h,
                                true});
        segments.push_back({top, 2.0 * top, prim.Z.hi, false});
    }

    // receiver equilibrium utilities once per x-grid node; the grid is kept
    // dense because the willingness max can sit strictly inside X
    const auto xs = linspace(prim.X.lo, prim.X.hi, std::max(opt.x_grid_n, 2001));
    std::vector<double> pi(xs.size());
    for (size_t i = 0; i < xs.size(); ++i)
        pi[i] = sol.receiver_utility(xs[i], prim);

    const int per_seg =
        std::max(2, opt.offpath_grid_n / std::max<int>(1, segments.size()));
    for (const auto& seg : segments) {
        if (!(seg.hi > seg.lo)) continue;
        const double u_star = sol.sender_utility(seg.belief, prim);
        for (int k = 0; k < per_seg; ++k) {
            const double w = seg.closed_left ? double(k) / per_seg
                                             : (k + 1.0) / (per_seg + 1.0);
            const double a = seg.lo + (seg.hi - seg.lo) * w;
            double t_max = -1e300;
            for (size_t i = 0; i < xs.size(); ++i)
                t_max = std::max(t_max, prim.v(xs[i], a, seg.belief) - pi[i]);
            if (t_max < sol.t_lo - opt.tol) continue; // nobody pays the floor
            const double t_feasible =
                sol.t_unbounded ? t_max : std::min(t_max, sol.t_hi);
            const double gain = (t_feasible - prim.c(a, seg.belief)) - u_star;
            track(rec, gain, opt.tol, fmt_point("(s, believed z)", a, seg.belief));
        }
    }
    return rec;
}

CheckRecord check_stability(const CSESolution& sol,
                            const ModelPrimitives& prim,
                            const VerifyOptions& opt) {
    CheckRecord rec;
    rec.name = "stability";
    if (vacuous(sol, rec)) return rec;

    const bool pooled = sol.regime == Regime::Pooling || sol.thresholds.s_h;
    const double pooled_action =
        sol.regime == Regime::Pooling
            ? sol.pooled->s_star
            : (sol.thresholds.s_h ? *sol.thresholds.s_h : 0.0);
    const double pooled_type = sol.regime == Regime::Pooling
                                   ? sol.pooled->z_star
                                   : (sol.thresholds.z_h ? *sol.thresholds.z_h
                                                         : prim.Z.hi);

    // receiver payoff tables on an x-grid; pooled column cached since the
    // conditional expectation is independent of the candidate transfer
    const auto xs = linspace(prim.X.lo, prim.X.hi, 512);
    std::vector<double> pi(xs.size()), pooled_v(xs.size(), 0.0);
    for (size_t i = 0; i < xs.size(); ++i) {
        pi[i] = sol.receiver_utility(xs[i], prim);
        if (pooled)
            pooled_v[i] = conditional_surplus_expectation(
                xs[i], pooled_action, pooled_type, prim);
    }

    const double t_cap = sol.t_unbounded ? 2.0 * sol.tau_top + 1.0 : sol.t_hi;
    const bool separating_part = sol.has_separating_part();
    num::Kronecker seq(4);
    for (std::size_t it = 0; it < opt.stability_samples; ++it) {
        const auto u = seq.next();
        // candidate sender: separating arc or the pooled interval
        double a, z;
        const bool pick_pooled = pooled && (u[0] > 0.8 || !separating_part);
        if (pick_pooled) {
            a = pooled_action;
            z = pooled_type + (prim.Z.hi - pooled_type) * u[3];
        } else {
            a = sol.s.front() + (sol.s.back() - sol.s.front()) * u[0] / 0.8;
            a = std::min(a, sol.s.back());
            z = sol.mu_at(a);
        }
        const double x = prim.X.lo + prim.X.width() * u[1];
        const double t_try = sol.t_lo + (t_cap - sol.t_lo) * u[2];
        const double sender_gain =
            (t_try - prim.c(a, z)) - sol.sender_utility(z, prim);
        if (sender_gain <= opt.tol) continue;
        const double ex =
            pick_pooled ? num::interp_linear(xs, pooled_v, x)
                        : prim.v(x, a, sol.mu_at(a));
        const double receiver_gain =
            (ex - t_try) - num::interp_linear(xs, pi, x);
        const double joint = std::min(sender_gain, receiver_gain);
        track(rec, joint, opt.tol,
              fmt_point("blocking (s,x)", a, x) +
                  fmt_point(" t'", t_try, joint));
    }
    return rec;
}

CheckRecord check_market_clearing(const CSESolution& sol,
                                  const ModelPrimitives& prim,
                                  const VerifyOptions& opt) {
    CheckRecord rec;
    rec.name = "market_clearing";
    if (vacuous(sol, rec)) return rec;

    const auto masses = [&](double a, double b) {
        double gm = 0.0, hm = 0.0;
        if (sol.has_separating_part()) {
            const double lo = std::max(a, sol.s.front());
            const double hi = std::min(b, sol.s.back());
            if (hi > lo) {
                const double zl = num::interp_linear(sol.s, sol.mu, lo);
                const double zh = num::interp_linear(sol.s, sol.mu, hi);
                const double xl = num::interp_linear(sol.s, sol.m, lo);
                const double xh = num::interp_linear(sol.s, sol.m, hi);
                gm += prim.G.cdf(zh) - prim.G.cdf(zl);
                hm += prim.H.cdf(xh) - prim.H.cdf(xl);
            }
        }
        double pooled_action = -1.0, pooled_type = 0.0, pooled_x = 0.0;
        if (sol.regime == Regime::Pooling) {
            pooled_action = sol.pooled->s_star;
            pooled_type = sol.pooled->z_star;
            pooled_x = sol.thresholds.x_ell;
        } else if (sol.thresholds.s_h) {
            pooled_action = *sol.thresholds.s_h;
            pooled_type = *sol.thresholds.z_h;
            pooled_x = *sol.thresholds.x_h;
        }
        if (pooled_action >= 0.0 && a <= pooled_action && pooled_action <= b) {
            gm += 1.0 - prim.G.cdf(pooled_type);
            hm += 1.0 - prim.H.cdf(pooled_x);
        }
        return std::pair<double, double>{gm, hm};
    };

    const double lo = sol.has_separating_part()
                          ? sol.s.front()
                          : sol.pooled->s_star;
    const double hi = sol.top_action();
    // interval 0 pins the pooled atom exactly; the rest are quasi-random
    std::vector<std::pair<double, double>> intervals;
    intervals.push_back({hi, hi});
    num::Kronecker seq(2);
    for (int i = 1; i < opt.clearing_intervals; ++i) {
        const auto u = seq.next();
        double a = lo + (hi - lo) * std::min(u[0], u[1]);
        double b = lo + (hi - lo) * std::max(u[0], u[1]);
        intervals.push_back({a, b});
    }
    intervals.push_back({lo, hi}); // totality
    for (const auto& [a, b] : intervals) {
        const auto [gm, hm] = masses(a, b);
        track(rec, std::abs(hm - gm), opt.tol, fmt_point("A", a, b));
    }
    return rec;
}

CheckRecord check_bunching_structure(const CSESolution& sol,
                                     const VerifyOptions& opt) {
    CheckRecord rec;
    rec.name = "bunching_structure";
    if (sol.regime == Regime::Separating || sol.regime == Regime::EmptyMarket) {
        rec.worst_witness = "no pooled action; vacuous";
        return rec;
    }
    const double s_pool = sol.regime == Regime::Pooling
                              ? sol.pooled->s_star
                              : *sol.thresholds.s_h;
    const double z_pool = sol.regime == Regime::Pooling
                              ? sol.pooled->z_star
                              : *sol.thresholds.z_h;
    const double t_pool =
        sol.regime == Regime::Pooling ? sol.pooled->t_star : sol.t_hi;
    track(rec, std::abs(sol.tau_at(s_pool) - t_pool), 0.0,
          "pooled reaction must sit at the cap");
    // terminal interval: every type from z_pool up takes exactly s_pool
    for (size_t i = 0; i < sol.zg.size(); ++i) {
        if (sol.zg[i] < z_pool) continue;
        track(rec, std::abs(sol.sigma[i] - s_pool), opt.tol,
              fmt_point("pooled sigma at z", sol.zg[i], sol.sigma[i]));
    }
    return rec;
}

CheckRecord check_monotone_outcomes(const CSESolution& sol,
                                    const VerifyOptions& opt) {
    CheckRecord rec;
    rec.name = "monotone_outcomes";
    if (vacuous(sol, rec)) return rec;
    auto nondecreasing = [&](const std::vector<double>& xs, const char* what) {
        for (size_t i = 0; i + 1 < xs.size(); ++i)
            track(rec, xs[i] - xs[i + 1], opt.tol,
                  std::string(what) + " decreasing at index " +
                      std::to_string(i));
    };
    nondecreasing(sol.sigma, "sigma");
    if (sol.has_separating_part()) {
        nondecreasing(sol.mu, "mu");
        nondecreasing(sol.tau, "tau");
        nondecreasing(sol.m, "m");
    }
    if (sol.regime == Regime::StrictlyWellBehaved) {
        // strict jump inequalities at the pooling onset
        const double arc = *sol.thresholds.sigma_arc_top;
        track(rec, arc - *sol.thresholds.s_h, -1e-12,
              "pooled action does not jump above the arc");
        track(rec, sol.tau_at(arc) - sol.t_hi, -1e-12,
              "reaction does not jump at the cap");
    }
    return rec;
}

CheckRecord check_focs(const CSESolution& sol, const ModelPrimitives& prim,
                       const VerifyOptions& opt) {
    CheckRecord rec;
    rec.name = "first_order_conditions";
    if (vacuous(sol, rec)) return rec;
    if (!sol.has_separating_part() || sol.s.size() < 5) {
        rec.worst_witness = "no separating arc; vacuous";
        return rec;
    }
    // interior nodes only; derivatives by three-point differences on the
    // grids (exact on quadratics, valid on nonuniform spacing), independent
    // of the analytic slope the solver integrated
    const size_t n = sol.s.size();
    auto deriv3 = [&](const std::vector<double>& f, size_t i) {
        const double h1 = sol.s[i] - sol.s[i - 1];
        const double h2 = sol.s[i + 1] - sol.s[i];
        return (h1 * h1 * f[i + 1] + (h2 * h2 - h1 * h1) * f[i] -
                h2 * h2 * f[i - 1]) /
               (h1 * h2 * (h1 + h2));
    };
    for (size_t i = 2; i + 2 < n; i += 1) {
        const double ds = sol.s[i + 1] - sol.s[i - 1];
        if (!(ds > 0)) continue;
        const double taup = deriv3(sol.tau, i);
        const double mup = deriv3(sol.mu, i);
        const double z = sol.mu[i];
        const double x = sol.m[i];
        const double a = sol.s[i];
        track(rec, std::abs(taup - prim.c_s(a, z)), opt.foc_tol,
              fmt_point("sender FOC at (s,z)", a, z));
        track(rec,
              std::abs(taup - (prim.v_s(x, a, z) + prim.v_z(x, a, z) * mup)),
              opt.foc_tol, fmt_point("receiver FOC at (s,x)", a, x));
    }
    return rec;
}

LipschitzEstimate lipschitz_estimate(const ModelPrimitives& prim, double s_lo,
                                     double s_hi, double z_lo, double z_hi,
                                     int grid_n) {
    LipschitzEstimate est;
    const double dz = 1e-6 * std::max(1.0, std::abs(z_hi));
    for (int i = 0; i < grid_n; ++i)
        for (int j = 0; j < grid_n; ++j) {
            const double a = s_lo + (s_hi - s_lo) * i / (grid_n - 1);
            const double z =
                std::clamp(z_lo + (z_hi - z_lo) * j / (grid_n - 1),
                           z_lo + 2 * dz, z_hi - 2 * dz);
            const double d =
                (phi_slope(a, z + dz, prim) - phi_slope(a, z - dz, prim)) /
                (2 * dz);
            if (std::isfinite(d))
                est.bound = std::max(est.bound, std::abs(d));
            else
                est.ill_conditioned = true;
        }
    if (est.bound > 1e6) est.ill_conditioned = true;
    return est;
}

VerificationReport verify_solution(const CSESolution& sol,
                                   const ModelPrimitives& prim,
                                   const VerifyOptions& opt) {
    VerificationReport report;
    report.checks.push_back(check_sender_optimality(sol, prim, opt));
    report.checks.push_back(check_offpath_deviation_d1(sol, prim, opt));
    report.checks.push_back(check_stability(sol, prim, opt));
    report.checks.push_back(check_market_clearing(sol, prim, opt));
    report.checks.push_back(check_bunching_structure(sol, opt));
    report.checks.push_back(check_monotone_outcomes(sol, opt));
    report.checks.push_back(check_focs(sol, prim, opt));
    if (sol.has_separating_part()) {
        CheckRecord rec;
        rec.name = "lipschitz_diagnostic";
        const auto est =
            lipschitz_estimate(prim, sol.s.front(), sol.s.back(),
                               sol.thresholds.z_ell, prim.Z.hi, 64);
        rec.max_residual = est.bound;
        rec.worst_witness = est.ill_conditioned
                                ? "empirical Lipschitz bound above 1e6"
                                : "empirical Lipschitz bound";
        report.checks.push_back(rec);
    }
    return report;
}

} // namespace sigeq
