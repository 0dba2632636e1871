#pragma once

#include "signaleq/certify.hpp"
#include "signaleq/model.hpp"

#include <optional>
#include <string>
#include <vector>

namespace sigeq {

enum class Regime { Separating, StrictlyWellBehaved, Pooling, EmptyMarket };
const char* to_string(Regime r);
Regime regime_from_string(const std::string& name);

struct Thresholds {
    double z_ell = 0.0; // lowest matched sender type
    double s_ell = 0.0; // her action
    double x_ell = 0.0; // n(z_ell)
    std::optional<double> z_h;   // pooling-onset type
    std::optional<double> s_h;   // pooled action
    std::optional<double> x_h;   // n(z_h)
    std::optional<double> sigma_arc_top; // lim of the separating arc at z_h
};

struct PooledPoint {
    double z_star = 0.0;
    double s_star = 0.0;
    double t_star = 0.0;
};

struct SolverOptions {
    double step = 1e-4;          // nominal ODE step in action units
    double ode_local_tol = 1e-8; // per-step Richardson bound
    double step_floor = 1e-7;
    double root_tol = 1e-12;
    double quad_tol = 1e-11;
    int type_grid_n = 2001;
    bool waive_assumptions = false;
    std::size_t max_nodes = 4'000'000;
};

// A solved competitive signaling equilibrium on grids. Immutable once
// assembled; every accessor is a pure interpolation of the stored data plus
// the piecewise off-path rules, so verification can audit a solution without
// touching the solver.
struct CSESolution {
    Regime regime = Regime::EmptyMarket;
    int initial_case = 1;
    Thresholds thresholds;
    std::optional<PooledPoint> pooled; // Pooling regime only
    double tau_top = 0.0;              // unconstrained top wage
    double t_lo = 0.0, t_hi = 0.0;
    bool t_unbounded = false;

    // separating-part grids (strictly increasing s)
    std::vector<double> s, mu, tau, m, phi;
    // type-grid view of the action function
    std::vector<double> zg, sigma;

    std::vector<Certificate> assumptions;
    bool waived = false;
    std::string normalization_note;

    bool has_separating_part() const { return !s.empty(); }
    double s_top() const; // top of the separating grid
    // effective highest action taken in equilibrium (pooled action on top
    // regimes, arc top otherwise)
    double top_action() const;

    // belief location for actions with singleton support (everywhere except
    // the pooled action, whose support is the whole terminal interval)
    double mu_at(double s) const;
    double tau_at(double s) const;
    double sigma_at(double z) const;
    double m_at(double s) const;

    double sender_utility(double z, const ModelPrimitives& prim) const;
    double receiver_utility(double x, const ModelPrimitives& prim) const;
};

// argmax over s >= 0 of v(x,s,z) - c(s,z); 0 at a corner. Bracketed on the
// derivative when available, golden section otherwise.
double bilaterally_efficient_action(double x, double z,
                                    const ModelPrimitives& prim,
                                    double tol = 1e-10);

struct InitialPair {
    double s_ell = 0.0;
    double z_ell = 0.0;
    int case_tag = 1;          // 1: bottom types enter; 2: interior entry
    bool empty_market = false; // no type clears the participation hurdle
};

InitialPair solve_initial_pair(const ModelPrimitives& prim,
                               const SolverOptions& opt = {});

// Belief-slope phi(s,z) = -(v_s - c_s)/v_z along the quantile match.
double phi_slope(double s, double z, const ModelPrimitives& prim);

struct BeliefPath {
    std::vector<double> s, mu, phi;             // step endpoints
    std::vector<double> s_mid, mu_mid, phi_mid; // per-interval midpoints
};

// Integrates mu' = phi(s, mu) upward from (s_ell, z_ell) until mu reaches
// the top type, with a per-step half-step Richardson bound and a final
// polish so mu(s_top) = z_hi to 1e-10.
BeliefPath integrate_belief(double s_ell, double z_ell,
                            const ModelPrimitives& prim,
                            const SolverOptions& opt = {});

// Wage integral: tau(s) = t_lo + int of v_s + v_z * phi along the path,
// composite Simpson over the stored midpoints. Throws when the integrand
// loses positivity (tau must be strictly increasing).
std::vector<double> integrate_reaction(const BeliefPath& path,
                                       const ModelPrimitives& prim,
                                       double t_lo);

Regime classify_regime(double tau_top, const ReactionInterval& T);

// E[v(x, s, z') | z' >= z] under G.
double conditional_surplus_expectation(double x, double s, double z,
                                       const ModelPrimitives& prim,
                                       double tol = 1e-10);

struct JumpingPair {
    double z_h = 0.0;
    double s_h = 0.0;
    double resid_sellers = 0.0;
    double resid_buyers = 0.0;
};

// Solves the top-threshold indifference system against the stored
// separating solution when the reaction cap binds.
JumpingPair solve_jumping_pair(const BeliefPath& path,
                               const std::vector<double>& tau,
                               const ModelPrimitives& prim, double t_hi,
                               const SolverOptions& opt = {});

struct PoolingPoint {
    double z_star = 0.0;
    double s_star = 0.0;
    double resid_sender = 0.0;
    double resid_receiver = 0.0;
};

PoolingPoint solve_pooling(double t_star, const ModelPrimitives& prim,
                           const SolverOptions& opt = {});

// Full pipeline: initial pair, belief ODE, wage integral, regime, jumping or
// pooling, piecewise assembly.
CSESolution assemble_cse(const ModelPrimitives& prim,
                         const SolverOptions& opt = {});

} // namespace sigeq
