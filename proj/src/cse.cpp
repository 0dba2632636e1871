#include "signaleq/cse.hpp"

#include "signaleq/errors.hpp"
#include "signaleq/numerics.hpp"

#include <algorithm>
#include <cmath>
#include <sstream>

namespace sigeq {

const char* to_string(Regime r) {
    switch (r) {
    case Regime::Separating: return "Separating";
    case Regime::StrictlyWellBehaved: return "StrictlyWellBehaved";
    case Regime::Pooling: return "Pooling";
    default: return "EmptyMarket";
    }
}

Regime regime_from_string(const std::string& name) {
    if (name == "Separating") return Regime::Separating;
    if (name == "StrictlyWellBehaved") return Regime::StrictlyWellBehaved;
    if (name == "Pooling") return Regime::Pooling;
    if (name == "EmptyMarket") return Regime::EmptyMarket;
    throw parse_error("unknown regime '" + name + "'");
}

double CSESolution::s_top() const {
    if (s.empty()) throw domain_error("CSESolution: no separating grid");
    return s.back();
}

double CSESolution::top_action() const {
    if (regime == Regime::Pooling) return pooled->s_star;
    if (regime == Regime::EmptyMarket) return 0.0;
    if (thresholds.s_h) return *thresholds.s_h;
    return s_top();
}

double CSESolution::mu_at(double a) const {
    switch (regime) {
    case Regime::EmptyMarket:
        throw domain_error("mu_at: empty market has no beliefs on actions");
    case Regime::Pooling:
        if (a < pooled->s_star) return pooled->z_star;
        if (a > pooled->s_star) return zg.back();
        return pooled->z_star; // inf of the pooled support
    default: break;
    }
    if (a < thresholds.s_ell) return thresholds.z_ell;
    if (thresholds.s_h) {
        if (a >= *thresholds.sigma_arc_top && a < *thresholds.s_h)
            return *thresholds.z_h;
        if (a >= *thresholds.s_h)
            return a > *thresholds.s_h ? zg.back() : *thresholds.z_h;
    }
    if (a > s.back()) return zg.back();
    return num::interp_linear(s, mu, a);
}

double CSESolution::tau_at(double a) const {
    switch (regime) {
    case Regime::EmptyMarket:
        throw domain_error("tau_at: empty market has no reactions");
    case Regime::Pooling: return pooled->t_star;
    default: break;
    }
    if (thresholds.s_h && a >= *thresholds.s_h) return t_hi;
    return num::interp_linear(s, tau, a);
}

double CSESolution::sigma_at(double z) const {
    if (regime == Regime::EmptyMarket) return 0.0;
    if (regime == Regime::Pooling)
        return z < pooled->z_star ? 0.0 : pooled->s_star;
    if (z < thresholds.z_ell) return 0.0;
    if (thresholds.z_h && z >= *thresholds.z_h) return *thresholds.s_h;
    return num::interp_inverse(s, mu, z);
}

double CSESolution::m_at(double a) const {
    if (regime != Regime::Separating && regime != Regime::StrictlyWellBehaved)
        throw domain_error("m_at: no separating matching in this regime");
    return num::interp_linear(s, m, a);
}

double CSESolution::sender_utility(double z, const ModelPrimitives& prim) const {
    switch (regime) {
    case Regime::EmptyMarket: return 0.0;
    case Regime::Pooling:
        if (z < pooled->z_star) return 0.0;
        return pooled->t_star - prim.c(pooled->s_star, z);
    default: break;
    }
    if (z < thresholds.z_ell) return 0.0;
    if (thresholds.z_h && z >= *thresholds.z_h)
        return t_hi - prim.c(*thresholds.s_h, z);
    const double a = sigma_at(z);
    return tau_at(a) - prim.c(a, z);
}

double CSESolution::receiver_utility(double x,
                                     const ModelPrimitives& prim) const {
    switch (regime) {
    case Regime::EmptyMarket: return 0.0;
    case Regime::Pooling: {
        const double x_star = thresholds.x_ell;
        if (x < x_star) return 0.0;
        return conditional_surplus_expectation(x, pooled->s_star,
                                               pooled->z_star, prim) -
               pooled->t_star;
    }
    default: break;
    }
    if (x < thresholds.x_ell) return 0.0;
    if (thresholds.x_h && x >= *thresholds.x_h)
        return conditional_surplus_expectation(x, *thresholds.s_h,
                                               *thresholds.z_h, prim) -
               t_hi;
    // separating part: x matches the sender whose assigned receiver is x
    const double a = num::interp_inverse(s, m, x);
    return prim.v(x, a, mu_at(a)) - tau_at(a);
}

double bilaterally_efficient_action(double x, double z,
                                    const ModelPrimitives& prim, double tol) {
    const auto slope = [&](double a) { return prim.v_s(x, a, z) - prim.c_s(a, z); };
    const double eps = 1e-9;
    if (slope(eps) <= 0.0) return 0.0; // corner: surplus nonincreasing in s
    // expand until the net marginal surplus turns negative
    double hi = 1.0;
    const double limit = 1e9;
    while (slope(hi) > 0.0) {
        hi *= 2.0;
        if (hi > limit)
            throw model_error("bilaterally_efficient_action: objective "
                              "unbounded in s (cost growth assumption "
                              "violated)");
    }
    // v - c concave in s on the relevant branch; fall back to golden section
    // if the derivative is not monotone
    const double root = num::bisect(slope, eps, hi, tol);
    const double golden = num::golden_section_max(
        [&](double a) { return prim.v(x, a, z) - prim.c(a, z); }, 0.0, hi,
        std::max(tol, 1e-10));
    const double f_root = prim.v(x, root, z) - prim.c(root, z);
    const double f_gold = prim.v(x, golden, z) - prim.c(golden, z);
    return f_gold > f_root + 1e-12 ? golden : root;
}

namespace {

// action solving c(s,z) = target, exact 0 when target is 0
double cost_indifference_action(double target, double z,
                                const ModelPrimitives& prim, double tol) {
    if (target <= 0.0) return 0.0;
    const auto f = [&](double a) { return prim.c(a, z) - target; };
    const auto br = num::bracket_upward(f, 0.0, 1.0, 1e12);
    return num::bisect(f, br.lo, br.hi, tol);
}

} // namespace

InitialPair solve_initial_pair(const ModelPrimitives& prim,
                               const SolverOptions& opt) {
    InitialPair out;
    const double z_lo = prim.Z.lo, z_hi = prim.Z.hi;
    const double x_lo = prim.X.lo;
    const double t_lo = prim.T.lo;
    const double zeta0 = bilaterally_efficient_action(x_lo, z_lo, prim);
    if (prim.v(x_lo, zeta0, z_lo) >= t_lo - 1e-12) {
        out.s_ell = zeta0;
        out.z_ell = z_lo;
        out.case_tag = 1;
        return out;
    }
    // interior entry: both participation constraints bind; the seller curve
    // pins s for each z, the buyer residual crosses zero once
    const auto seller_action = [&](double z) {
        return cost_indifference_action(t_lo, z, prim, opt.root_tol);
    };
    const auto buyer_residual = [&](double z) {
        return prim.v(quantile_match(z, prim), seller_action(z), z) - t_lo;
    };
    if (buyer_residual(z_hi) < 0.0) {
        out.empty_market = true;
        out.case_tag = 2;
        return out;
    }
    if (buyer_residual(z_lo) >= 0.0) {
        // no interior crossing below; entry starts right at the bottom type
        out.z_ell = z_lo;
        out.s_ell = seller_action(z_lo);
        out.case_tag = 2;
        return out;
    }
    const double z_ell =
        num::bisect(buyer_residual, z_lo, z_hi, opt.root_tol);
    out.z_ell = z_ell;
    out.s_ell = seller_action(z_ell);
    out.case_tag = 2;
    return out;
}

double phi_slope(double s, double z, const ModelPrimitives& prim) {
    const double x = quantile_match(z, prim);
    const double vz = prim.v_z(x, s, z);
    if (!(vz > 0.0)) {
        std::ostringstream os;
        os << "phi: v_z <= 0 at (s=" << s << ", z=" << z << ", x=" << x
           << "); belief slope singular";
        throw model_error(os.str());
    }
    return -(prim.v_s(x, s, z) - prim.c_s(s, z)) / vz;
}

BeliefPath integrate_belief(double s_ell, double z_ell,
                            const ModelPrimitives& prim,
                            const SolverOptions& opt) {
    const double z_hi = prim.Z.hi;
    const double z_lo = prim.Z.lo;
    const auto rhs = [&](double a, double z) {
        // clamp transient overshoot inside the step; the crossing is polished
        return phi_slope(a, std::clamp(z, z_lo, z_hi), prim);
    };
    const auto advance = [&](double a, double z, double h, double& zmid) {
        zmid = num::rk4_step(rhs, a, z, 0.5 * h);
        return num::rk4_step(rhs, a + 0.5 * h, zmid, 0.5 * h);
    };

    BeliefPath path;
    path.s.push_back(s_ell);
    path.mu.push_back(z_ell);
    path.phi.push_back(phi_slope(s_ell, z_ell, prim));

    if (z_ell >= z_hi - 1e-14)
        throw model_error("integrate_belief: initial type already at the top");

    double a = s_ell, z = z_ell;
    double h = opt.step;
    while (z < z_hi) {
        if (path.s.size() > opt.max_nodes)
            throw convergence_error("integrate_belief: node budget exceeded");
        double zmid = 0.0;
        const double full = num::rk4_step(rhs, a, z, h);
        const double fine = advance(a, z, h, zmid);
        const double err = std::abs(fine - full) / 15.0;
        if (err > opt.ode_local_tol) {
            if (h <= opt.step_floor)
                throw convergence_error(
                    "integrate_belief: local error above tolerance at the "
                    "step floor");
            h = std::max(0.5 * h, opt.step_floor);
            continue;
        }
        if (fine < prim.Z.lo - 1e-12)
            throw model_error("integrate_belief: belief path exits the type "
                              "interval downward");
        if (fine >= z_hi) {
            // polish the stopping action so mu(s_top) = z_hi to 1e-10
            const auto overshoot = [&](double d) {
                double zm = 0.0;
                return advance(a, z, d, zm) - z_hi;
            };
            double d = num::bisect(overshoot, 1e-16, h, 1e-14);
            for (int it = 0; it < 8; ++it) {
                const double f = overshoot(d);
                if (std::abs(f) < 1e-12) break;
                const double slope = rhs(a + d, z_hi);
                if (!(slope > 0.0)) break;
                d = std::min(std::max(d - f / slope, 0.0), h);
            }
            double zm = 0.0;
            const double zend = advance(a, z, d, zm);
            path.s_mid.push_back(a + 0.5 * d);
            path.mu_mid.push_back(zm);
            path.phi_mid.push_back(rhs(a + 0.5 * d, zm));
            path.s.push_back(a + d);
            path.mu.push_back(std::min(zend, z_hi));
            path.phi.push_back(rhs(a + d, std::min(zend, z_hi)));
            break;
        }
        path.s_mid.push_back(a + 0.5 * h);
        path.mu_mid.push_back(zmid);
        path.phi_mid.push_back(rhs(a + 0.5 * h, zmid));
        a += h;
        z = fine;
        path.s.push_back(a);
        path.mu.push_back(z);
        path.phi.push_back(rhs(a, z));
        if (h < opt.step) h = std::min(opt.step, 2.0 * h);
    }
    if (std::abs(path.mu.back() - z_hi) > 1e-10)
        throw convergence_error(
            "integrate_belief: stopping action polish missed the top type");
    return path;
}

std::vector<double> integrate_reaction(const BeliefPath& path,
                                       const ModelPrimitives& prim,
                                       double t_lo) {
    const auto integrand = [&](double a, double z, double slope) {
        const double x = quantile_match(z, prim);
        return prim.v_s(x, a, z) + prim.v_z(x, a, z) * slope;
    };
    std::vector<double> tau(path.s.size());
    tau[0] = t_lo;
    for (size_t i = 0; i + 1 < path.s.size(); ++i) {
        const double f0 = integrand(path.s[i], path.mu[i], path.phi[i]);
        const double fm =
            integrand(path.s_mid[i], path.mu_mid[i], path.phi_mid[i]);
        const double f1 =
            integrand(path.s[i + 1], path.mu[i + 1], path.phi[i + 1]);
        // the integrand may vanish exactly at a corner start (c_s(0,.) = 0
        // under a strictly convex cost); anywhere else it must be positive
        // for tau to increase
        const bool bad_start = f0 < 0.0 || (i > 0 && f0 <= 0.0);
        if (bad_start || fm <= 0.0 || f1 <= 0.0)
            throw model_error(
                "integrate_reaction: wage integrand not positive at s=" +
                std::to_string(path.s[i]) + "; tau would fail to increase");
        const double d = path.s[i + 1] - path.s[i];
        tau[i + 1] = tau[i] + d / 6.0 * (f0 + 4.0 * fm + f1);
    }
    return tau;
}

Regime classify_regime(double tau_top, const ReactionInterval& T) {
    if (T.degenerate()) return Regime::Pooling;
    if (T.unbounded || T.hi >= tau_top) return Regime::Separating;
    if (T.lo < T.hi && T.hi < tau_top) return Regime::StrictlyWellBehaved;
    return Regime::Pooling;
}

double conditional_surplus_expectation(double x, double s, double z,
                                       const ModelPrimitives& prim,
                                       double tol) {
    if (!prim.Z.contains(z))
        throw domain_error("conditional_surplus_expectation: z outside Z");
    const double tail = 1.0 - prim.G.cdf(z);
    if (z >= prim.Z.hi || tail < 1e-14) return prim.v(x, s, prim.Z.hi);
    const double integral = num::adaptive_simpson(
        [&](double t) { return prim.v(x, s, t) * prim.G.pdf(t); }, z,
        prim.Z.hi, tol);
    return integral / tail;
}

JumpingPair solve_jumping_pair(const BeliefPath& path,
                               const std::vector<double>& tau,
                               const ModelPrimitives& prim, double t_hi,
                               const SolverOptions& opt) {
    const double z_ell = path.mu.front();
    const double z_hi = prim.Z.hi;
    const auto sigma_sep = [&](double z) {
        return num::interp_inverse(path.s, path.mu, z);
    };
    const auto tau_sep = [&](double a) {
        return num::interp_linear(path.s, tau, a);
    };
    const auto U_sep = [&](double z) {
        const double a = sigma_sep(z);
        return tau_sep(a) - prim.c(a, z);
    };
    // sellers' indifference pins s for each trial z; valid on the branch
    // where the cap exceeds the separating wage
    const double s_cap = num::interp_inverse(path.s, tau, t_hi);
    const double z_cap = num::interp_linear(path.s, path.mu, s_cap);
    const auto seller_action = [&](double z) {
        const double lo = sigma_sep(z);
        const double hi = path.s.back();
        const auto f = [&](double a) { return (t_hi - prim.c(a, z)) - U_sep(z); };
        const double flo = f(lo);
        const double fhi = f(hi);
        // boundary-noise guard: at z where the cap meets the separating wage
        // the root sits exactly at sigma(z)
        if (flo <= 0.0) {
            if (flo > -1e-7) return lo;
            throw model_error("solve_jumping_pair: sellers' equation has no "
                              "root in [sigma(z), sigma(z_hi)]");
        }
        if (fhi >= 0.0) {
            if (fhi < 1e-7) return hi;
            throw model_error("solve_jumping_pair: sellers' equation has no "
                              "root in [sigma(z), sigma(z_hi)]");
        }
        return num::bisect(f, lo, hi, opt.root_tol);
    };
    const auto buyer_residual = [&](double z) {
        const double x = quantile_match(z, prim);
        const double a = seller_action(z);
        const double lhs =
            conditional_surplus_expectation(x, a, z, prim, opt.quad_tol) -
            t_hi;
        const double rhs = prim.v(x, sigma_sep(z), z) - tau_sep(sigma_sep(z));
        return lhs - rhs;
    };

    const double delta = 1e-9;
    double lo = z_ell + delta;
    double hi = std::min(z_cap, z_hi - delta);
    double flo = buyer_residual(lo);
    double fhi = buyer_residual(hi);
    if ((flo < 0.0) == (fhi < 0.0)) {
        // scan for a sign change before giving up
        bool found = false;
        double prev = lo, fprev = flo;
        for (int i = 1; i <= 64 && !found; ++i) {
            const double zz = lo + (hi - lo) * i / 64.0;
            const double fz = buyer_residual(zz);
            if ((fz < 0.0) != (fprev < 0.0)) {
                lo = prev;
                hi = zz;
                found = true;
            }
            prev = zz;
            fprev = fz;
        }
        if (!found)
            throw model_error("solve_jumping_pair: no interior threshold in "
                              "(z_ell, z_hi); regime inconsistent with the "
                              "reaction cap");
    }
    const double z_h = num::bisect(buyer_residual, lo, hi, opt.root_tol);
    const double s_h = seller_action(z_h);

    JumpingPair jp;
    jp.z_h = z_h;
    jp.s_h = s_h;
    jp.resid_sellers = (t_hi - prim.c(s_h, z_h)) - U_sep(z_h);
    jp.resid_buyers = buyer_residual(z_h);
    const double arc = sigma_sep(z_h);
    if (!(arc < s_h && s_h < path.s.back()))
        throw consistency_error(
            "solve_jumping_pair: pooled action not inside (sigma(z_h), "
            "sigma(z_hi))");
    return jp;
}

PoolingPoint solve_pooling(double t_star, const ModelPrimitives& prim,
                           const SolverOptions& opt) {
    PoolingPoint out;
    if (t_star < 0.0)
        throw domain_error("solve_pooling: negative reaction");
    if (t_star == 0.0) {
        out.z_star = prim.Z.lo;
        out.s_star = 0.0;
        return out;
    }
    const auto seller_action = [&](double z) {
        return cost_indifference_action(t_star, z, prim, opt.root_tol);
    };
    const auto receiver_residual = [&](double z) {
        const double x = quantile_match(z, prim);
        return conditional_surplus_expectation(x, seller_action(z), z, prim,
                                               opt.quad_tol) -
               t_star;
    };
    const double delta = 1e-9;
    const double lo = prim.Z.lo + delta;
    const double hi = prim.Z.hi - delta;
    if (!(receiver_residual(hi) > 0.0) || !(receiver_residual(lo) < 0.0))
        throw model_error(
            "solve_pooling: no interior threshold; the cost blow-up at the "
            "bottom type (assumption 7) does not hold for this model");
    out.z_star = num::bisect(receiver_residual, lo, hi, opt.root_tol);
    out.s_star = seller_action(out.z_star);
    out.resid_sender = t_star - prim.c(out.s_star, out.z_star);
    out.resid_receiver = receiver_residual(out.z_star);
    if (!(out.z_star > prim.Z.lo) || !(out.s_star > 0.0))
        throw consistency_error("solve_pooling: threshold not interior");
    return out;
}

namespace {

bool blocking_failure(const std::vector<Certificate>& certs) {
    for (const auto& c : certs) {
        if (c.verdict != Verdict::Fail) continue;
        if (c.name.rfind("assumption1", 0) == 0 ||
            c.name.rfind("assumption2", 0) == 0 ||
            c.name.rfind("assumption3", 0) == 0 ||
            c.name.rfind("assumption6", 0) == 0)
            return true;
    }
    return false;
}

std::vector<double> default_action_sample(const ModelPrimitives& prim) {
    // sample actions on [0, s_scale]: enough to exercise s-monotonicity
    double s_scale = 1.0;
    try {
        s_scale = std::max(
            1.0, 2.0 * cost_indifference_action(
                     std::max(prim.T.lo, 1.0), prim.Z.hi, prim, 1e-10));
    } catch (const error&) {
    }
    std::vector<double> out;
    for (int i = 0; i <= 8; ++i) out.push_back(s_scale * i / 8.0);
    return out;
}

void fill_type_grid(CSESolution& sol, const ModelPrimitives& prim, int n) {
    sol.zg.resize(n);
    sol.sigma.resize(n);
    for (int i = 0; i < n; ++i) {
        const double z = prim.Z.lo + prim.Z.width() * i / (n - 1);
        sol.zg[i] = z;
        sol.sigma[i] = sol.sigma_at(z);
    }
}

} // namespace

CSESolution assemble_cse(const ModelPrimitives& prim,
                         const SolverOptions& opt) {
    CSESolution sol;
    sol.t_lo = prim.T.lo;
    sol.t_hi = prim.T.unbounded ? 0.0 : prim.T.hi;
    sol.t_unbounded = prim.T.unbounded;

    sol.assumptions =
        check_assumptions_1_to_7(prim, default_action_sample(prim));
    if (blocking_failure(sol.assumptions)) {
        if (!opt.waive_assumptions) {
            std::string names;
            for (const auto& c : sol.assumptions)
                if (c.verdict == Verdict::Fail) names += " " + c.name;
            throw model_error("assemble_cse: blocking assumption failures:" +
                              names + " (pass the waiver to override)");
        }
        sol.waived = true;
    }

    // single feasible reaction: pooled outcome, no separating machinery
    if (prim.T.degenerate()) {
        const PoolingPoint pp = solve_pooling(prim.T.lo, prim, opt);
        sol.regime = Regime::Pooling;
        sol.pooled = PooledPoint{pp.z_star, pp.s_star, prim.T.lo};
        sol.tau_top = prim.T.lo;
        sol.thresholds.z_ell = pp.z_star;
        sol.thresholds.s_ell = pp.s_star;
        sol.thresholds.x_ell = quantile_match(pp.z_star, prim);
        sol.thresholds.z_h = pp.z_star;
        sol.thresholds.s_h = pp.s_star;
        sol.thresholds.x_h = sol.thresholds.x_ell;
        fill_type_grid(sol, prim, opt.type_grid_n);
        return sol;
    }

    const InitialPair entry = solve_initial_pair(prim, opt);
    if (entry.empty_market) {
        sol.regime = Regime::EmptyMarket;
        sol.initial_case = entry.case_tag;
        sol.thresholds.z_ell = prim.Z.hi;
        sol.thresholds.s_ell = 0.0;
        sol.thresholds.x_ell = prim.X.hi;
        fill_type_grid(sol, prim, opt.type_grid_n);
        return sol;
    }
    sol.initial_case = entry.case_tag;
    // bottom-of-market wage anchor: in the bottom-entry case the lowest
    // match carries no information rent, so the wage starts at the bottom
    // type's cost of her efficient action whenever the supplied floor sits
    // below it; a floor above that binds as given
    double t_anchor = prim.T.lo;
    if (entry.case_tag == 1) {
        const double bottom_cost = prim.c(entry.s_ell, entry.z_ell);
        if (bottom_cost > t_anchor + 1e-15) {
            t_anchor = bottom_cost;
            sol.normalization_note =
                "case-1 entry: wage anchored at c(s_ell, z_lo) above the "
                "supplied t_lo (zero rent in the lowest match)";
            if (!prim.T.unbounded && t_anchor > prim.T.hi)
                throw model_error(
                    "assemble_cse: reaction cap below the bottom type's "
                    "efficient cost; no wage schedule is feasible");
        } else if (prim.T.lo > 0.0) {
            sol.normalization_note =
                "case-1 entry with caller-supplied t_lo > 0; the wage "
                "constant uses t_lo as given rather than the cost-anchored "
                "normalization";
        }
    }

    const BeliefPath path = integrate_belief(entry.s_ell, entry.z_ell, prim, opt);
    const std::vector<double> tau_full = integrate_reaction(path, prim, t_anchor);
    sol.tau_top = tau_full.back();

    sol.regime = classify_regime(sol.tau_top, prim.T);
    sol.thresholds.z_ell = entry.z_ell;
    sol.thresholds.s_ell = entry.s_ell;
    sol.thresholds.x_ell = quantile_match(entry.z_ell, prim);

    if (sol.regime == Regime::Separating) {
        sol.s = path.s;
        sol.mu = path.mu;
        sol.phi = path.phi;
        sol.tau = tau_full;
        sol.m.resize(sol.s.size());
        for (size_t i = 0; i < sol.s.size(); ++i)
            sol.m[i] = quantile_match(std::min(sol.mu[i], prim.Z.hi), prim);
        fill_type_grid(sol, prim, opt.type_grid_n);
        return sol;
    }

    // reaction cap binds: jumping pair, then truncate the separating arc
    const JumpingPair jp =
        solve_jumping_pair(path, tau_full, prim, prim.T.hi, opt);
    const double arc_top = num::interp_inverse(path.s, path.mu, jp.z_h);
    sol.thresholds.z_h = jp.z_h;
    sol.thresholds.s_h = jp.s_h;
    sol.thresholds.x_h = quantile_match(jp.z_h, prim);
    sol.thresholds.sigma_arc_top = arc_top;

    for (size_t i = 0; i < path.s.size() && path.s[i] < arc_top; ++i) {
        sol.s.push_back(path.s[i]);
        sol.mu.push_back(path.mu[i]);
        sol.phi.push_back(path.phi[i]);
        sol.tau.push_back(tau_full[i]);
    }
    // exact node at the arc top keeps mu(sigma(z_h)) = z_h on the grid
    sol.s.push_back(arc_top);
    sol.mu.push_back(jp.z_h);
    sol.phi.push_back(phi_slope(arc_top, jp.z_h, prim));
    sol.tau.push_back(num::interp_linear(path.s, tau_full, arc_top));
    sol.m.resize(sol.s.size());
    for (size_t i = 0; i < sol.s.size(); ++i)
        sol.m[i] = quantile_match(std::min(sol.mu[i], prim.Z.hi), prim);
    fill_type_grid(sol, prim, opt.type_grid_n);
    return sol;
}

} // namespace sigeq
