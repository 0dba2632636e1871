#pragma once

#include "signaleq/cse.hpp"

#include <string>
#include <vector>

namespace sigeq {

// Audits a candidate CSESolution against the equilibrium conditions using
// only the stored grids and the model primitives; nothing here reuses the
// solver's pipeline, so a wrong solution cannot certify itself.

struct CheckRecord {
    std::string name;
    bool pass = true;
    double max_residual = 0.0;
    std::string worst_witness;
};

struct VerificationReport {
    std::vector<CheckRecord> checks;
    bool overall() const {
        for (const auto& c : checks)
            if (!c.pass) return false;
        return true;
    }
};

struct VerifyOptions {
    double tol = 1e-7;
    double foc_tol = 1e-6; // derivative residuals carry differencing noise
    int z_grid_n = 400;
    int x_grid_n = 400;
    int s_grid_n = 400;
    int offpath_grid_n = 1000;
    std::size_t stability_samples = 100000;
    int clearing_intervals = 100;
};

// No entrant prefers another on-path action; entry decisions consistent.
CheckRecord check_sender_optimality(const CSESolution& sol,
                                    const ModelPrimitives& prim,
                                    const VerifyOptions& opt = {});

// Off-path deviations priced by the receivers' maximum willingness to pay
// under the solution's singleton off-path beliefs, capped by the reaction
// interval. The singleton type gaining nothing settles every type.
CheckRecord check_offpath_deviation_d1(const CSESolution& sol,
                                       const ModelPrimitives& prim,
                                       const VerifyOptions& opt = {});

// Quasi-random search for blocking sender-receiver pairs.
CheckRecord check_stability(const CSESolution& sol,
                            const ModelPrimitives& prim,
                            const VerifyOptions& opt = {});

// Measure of matched receivers equals measure of senders over random action
// intervals (plus the pooled atom).
CheckRecord check_market_clearing(const CSESolution& sol,
                                  const ModelPrimitives& prim,
                                  const VerifyOptions& opt = {});

// Pooled type set is a terminal interval and the pooled reaction sits at the
// cap.
CheckRecord check_bunching_structure(const CSESolution& sol,
                                     const VerifyOptions& opt = {});

// All four outcome maps nondecreasing; jump inequalities strict in the
// capped regime.
CheckRecord check_monotone_outcomes(const CSESolution& sol,
                                    const VerifyOptions& opt = {});

// First-order conditions re-derived by finite differences on the grids.
CheckRecord check_focs(const CSESolution& sol, const ModelPrimitives& prim,
                       const VerifyOptions& opt = {});

struct LipschitzEstimate {
    double bound = 0.0;
    bool ill_conditioned = false;
};

// Empirical Lipschitz constant of phi in z over a rectangle, by central
// differences; flags bounds above 1e6.
LipschitzEstimate lipschitz_estimate(const ModelPrimitives& prim, double s_lo,
                                     double s_hi, double z_lo, double z_hi,
                                     int grid_n = 200);

// Receiver x's maximum willingness to pay for a deviator believed to be
// z_star choosing s, given the equilibrium utility embedded in sol.
double willingness_to_pay(const CSESolution& sol, const ModelPrimitives& prim,
                          double s, double z_star, double x);

VerificationReport verify_solution(const CSESolution& sol,
                                   const ModelPrimitives& prim,
                                   const VerifyOptions& opt = {});

} // namespace sigeq
