#pragma once

#include "signaleq/distribution.hpp"

#include <functional>
#include <optional>
#include <string>

namespace sigeq {

struct Interval {
    double lo = 0.0;
    double hi = 1.0;
    bool contains(double x, double tol = 1e-12) const {
        return x >= lo - tol && x <= hi + tol;
    }
    double width() const { return hi - lo; }
};

// Feasible reactions [t_lo, t_hi]. An unbounded top is a sentinel flag, not a
// float infinity, so it never enters arithmetic.
struct ReactionInterval {
    double lo = 0.0;
    double hi = 0.0;
    bool unbounded = false;

    bool degenerate() const { return !unbounded && lo == hi; }
    // top transfer usable in payoff arithmetic; caller must check unbounded
    double cap() const;
};

using SurplusFn = std::function<double(double, double, double)>; // (x,s,z)
using CostFn = std::function<double(double, double)>;            // (s,z)

// The continuum market primitives. Immutable after construction; all member
// callables are pure, so a ModelPrimitives value can be shared freely across
// threads.
struct ModelPrimitives {
    SurplusFn v;   // gross match surplus v(x,s,z)
    SurplusFn v_x; // partials; analytic if supplied, else central differences
    SurplusFn v_s;
    SurplusFn v_z;
    CostFn c; // sender action cost c(s,z), c(0,z) = 0
    CostFn c_s;
    CostFn c_z;
    Distribution G; // sender types on Z
    Distribution H; // receiver types on X
    Interval Z;
    Interval X;
    ReactionInterval T;
    double null_action = 0.0;
    std::string description;
};

struct ModelBuilder {
    SurplusFn v;
    SurplusFn v_x, v_s, v_z; // optional; finite differences fill the gaps
    CostFn c;
    CostFn c_s, c_z;
    Distribution G, H;
    ReactionInterval T;
    std::string description;

    // Validates intervals/distributions, fills missing partials with central
    // differences (h = 1e-6 * scale), and cross-checks supplied partials
    // against those differences at probe points (rel. tol 1e-4).
    ModelPrimitives build() const;
};

// n = H^-1 (G(z)); positive-assortative quantile pairing. z must lie in Z.
double quantile_match(double z, const ModelPrimitives& m);

} // namespace sigeq
