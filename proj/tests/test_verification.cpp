#include <doctest.h>

#include "models.hpp"
#include "signaleq/verification.hpp"

#include <stdexcept>

#include <cmath>

using namespace sigeq;

namespace {
VerifyOptions fast_opts() {
    VerifyOptions o;
    o.stability_samples = 20000;
    o.offpath_grid_n = 300;
    o.z_grid_n = 120;
    o.s_grid_n = 120;
    return o;
}

const CheckRecord& find(const VerificationReport& r, const std::string& name) {
    for (const auto& c : r.checks)
        if (c.name == name) return c;
    throw std::runtime_error("check not found: " + name);
}
} // namespace

TEST_CASE("the separating oracle passes every check") {
    const auto um = u_model(0.0, 2.0);
    const CSESolution sol = assemble_cse(um);
    const VerificationReport rep = verify_solution(sol, um, fast_opts());
    for (const auto& c : rep.checks) {
        INFO(c.name, " residual=", c.max_residual, " ", c.worst_witness);
        CHECK(c.pass);
    }
    CHECK(rep.overall());
}

TEST_CASE("the strict-regime oracle passes every check") {
    const auto um = u_model(0.0, 1.2);
    const CSESolution sol = assemble_cse(um);
    const VerificationReport rep = verify_solution(sol, um, fast_opts());
    for (const auto& c : rep.checks) {
        INFO(c.name, " residual=", c.max_residual, " ", c.worst_witness);
        CHECK(c.pass);
    }
}

TEST_CASE("the pooling oracle passes every check") {
    const auto pm = pooling_model(1.0);
    const CSESolution sol = assemble_cse(pm);
    const VerificationReport rep = verify_solution(sol, pm, fast_opts());
    for (const auto& c : rep.checks) {
        INFO(c.name, " residual=", c.max_residual, " ", c.worst_witness);
        CHECK(c.pass);
    }
}

TEST_CASE("a surplus increasing in the action verifies end to end") {
    // interior efficient actions at the bottom: the wage anchors at the
    // bottom type's cost and the belief ODE starts at a tangency
    ModelBuilder b;
    b.v = [](double x, double s, double z) {
        return x * z * std::sqrt(1.0 + s);
    };
    b.v_x = [](double, double s, double z) {
        return z * std::sqrt(1.0 + s);
    };
    b.v_s = [](double x, double s, double z) {
        return 0.5 * x * z / std::sqrt(1.0 + s);
    };
    b.v_z = [](double x, double s, double) {
        return x * std::sqrt(1.0 + s);
    };
    b.c = [](double s, double z) { return s * s / z; };
    b.c_s = [](double s, double z) { return 2.0 * s / z; };
    b.c_z = [](double s, double z) { return -s * s / (z * z); };
    b.G = Distribution::uniform(1.0, 2.0);
    b.H = Distribution::uniform(1.0, 2.0);
    b.T = {0.0, 3.0, false};
    const auto prim = b.build();
    const CSESolution sol = assemble_cse(prim);
    CHECK(sol.regime == Regime::StrictlyWellBehaved);
    CHECK(sol.thresholds.s_ell > 0.0);
    CHECK(std::abs(sol.sender_utility(1.0, prim)) < 1e-12); // zero bottom rent
    CHECK(sol.normalization_note.find("anchored") != std::string::npos);
    const VerificationReport rep = verify_solution(sol, prim, fast_opts());
    for (const auto& c : rep.checks) {
        INFO(c.name, " residual=", c.max_residual, " ", c.worst_witness);
        CHECK(c.pass);
    }
}

TEST_CASE("heterogeneous type distributions verify end to end") {
    ModelBuilder b;
    b.v = [](double x, double, double z) { return x * z; };
    b.v_x = [](double, double, double z) { return z; };
    b.v_s = [](double, double, double) { return 0.0; };
    b.v_z = [](double x, double, double) { return x; };
    b.c = [](double s, double z) { return s / z; };
    b.c_s = [](double, double z) { return 1.0 / z; };
    b.c_z = [](double s, double z) { return -s / (z * z); };
    b.G = Distribution::uniform(1.0, 2.0);
    b.H = Distribution::tilted(1.0, 3.0, 1.5);
    b.T = {0.0, 1.8, false};
    const auto prim = b.build();
    const CSESolution sol = assemble_cse(prim);
    CHECK(sol.regime == Regime::StrictlyWellBehaved);
    // pooled masses must agree through the quantile match, not identity
    REQUIRE(sol.thresholds.x_h.has_value());
    CHECK(*sol.thresholds.x_h != doctest::Approx(*sol.thresholds.z_h));
    const VerificationReport rep = verify_solution(sol, prim, fast_opts());
    for (const auto& c : rep.checks) {
        INFO(c.name, " residual=", c.max_residual, " ", c.worst_witness);
        CHECK(c.pass);
    }
}

TEST_CASE("empty market verifies vacuously") {
    const auto um = u_model(5.0, 6.0);
    const CSESolution sol = assemble_cse(um);
    CHECK(verify_solution(sol, um, fast_opts()).overall());
}

TEST_CASE("a perturbed reaction schedule fails sender optimality with a "
          "neighboring witness") {
    const auto um = u_model(0.0, 2.0);
    CSESolution sol = assemble_cse(um);
    const size_t k = sol.tau.size() / 2;
    sol.tau[k] += 0.01;
    const auto rec = check_sender_optimality(sol, um, fast_opts());
    CHECK(!rec.pass);
    CHECK(rec.max_residual > 1e-3);
}

TEST_CASE("a perturbed belief grid fails market clearing") {
    const auto um = u_model(0.0, 2.0);
    CSESolution sol = assemble_cse(um);
    for (size_t i = sol.mu.size() / 3; i < sol.mu.size() / 2; ++i)
        sol.mu[i] += 0.05;
    const auto rec = check_market_clearing(sol, um, fast_opts());
    CHECK(!rec.pass);
}

TEST_CASE("a swapped matching assignment creates a blocking pair") {
    const auto um = u_model(0.0, 2.0);
    CSESolution sol = assemble_cse(um);
    // reassign a band of receivers far below their assortative partners
    for (size_t i = sol.m.size() / 2; i < sol.m.size(); ++i)
        sol.m[i] = std::max(1.0, sol.m[i] - 0.3);
    const auto stability = check_stability(sol, um, fast_opts());
    const auto clearing = check_market_clearing(sol, um, fast_opts());
    const auto monotone = check_monotone_outcomes(sol, fast_opts());
    CHECK((!stability.pass || !clearing.pass || !monotone.pass));
}

TEST_CASE("first-order-condition residuals catch a scaled wage schedule") {
    const auto um = u_model(0.0, 2.0);
    CSESolution sol = assemble_cse(um);
    const auto clean = check_focs(sol, um, fast_opts());
    CHECK(clean.pass);
    CHECK(clean.max_residual < 1e-6);
    for (auto& t : sol.tau) t *= 1.02;
    const auto rec = check_focs(sol, um, fast_opts());
    CHECK(!rec.pass);
}

TEST_CASE("off-path deviation audit is tight at the gap boundary") {
    const auto um = u_model(0.0, 1.2);
    const CSESolution sol = assemble_cse(um);
    const auto rec = check_offpath_deviation_d1(sol, um, fast_opts());
    CHECK(rec.pass);
    // the type z_h is exactly indifferent at the bottom of the gap, so the
    // measured maximum gain must sit at zero within tolerance
    CHECK(rec.max_residual > -1e-4);
    CHECK(rec.max_residual <= 1e-7);
}

TEST_CASE("willingness to pay is monotone on each side of the pooled "
          "threshold") {
    const auto um = u_model(0.0, 1.2);
    const CSESolution sol = assemble_cse(um);
    const double x_h = *sol.thresholds.x_h;
    const double s_gap = 0.5 * (*sol.thresholds.sigma_arc_top +
                                *sol.thresholds.s_h);
    const double z_h = *sol.thresholds.z_h;
    // increasing in x below x_h
    double prev = -1e300;
    for (int i = 0; i <= 50; ++i) {
        const double x = sol.thresholds.x_ell +
                         (x_h - 1e-6 - sol.thresholds.x_ell) * i / 50.0;
        const double t = willingness_to_pay(sol, um, s_gap, z_h, x);
        CHECK(t >= prev - 1e-9);
        prev = t;
    }
    // decreasing in x above x_h
    prev = 1e300;
    for (int i = 0; i <= 50; ++i) {
        const double x = x_h + (2.0 - x_h) * i / 50.0;
        const double t = willingness_to_pay(sol, um, s_gap, z_h, x);
        CHECK(t <= prev + 1e-9);
        prev = t;
    }
}

TEST_CASE("bunching structure check pins the cap and the terminal interval") {
    const auto um = u_model(0.0, 1.2);
    CSESolution sol = assemble_cse(um);
    CHECK(check_bunching_structure(sol, fast_opts()).pass);
    // separating solutions pass vacuously
    const CSESolution sep = assemble_cse(u_model(0.0, 2.0));
    CHECK(check_bunching_structure(sep, fast_opts()).pass);
}

TEST_CASE("lipschitz estimate matches the hand bound for the uniform model") {
    const auto um = u_model(0.0, 2.0);
    // |d(z^-2)/dz| = 2 z^-3 peaks at z = 1
    const auto est = lipschitz_estimate(um, 0.0, 7.0 / 3.0, 1.0, 2.0, 64);
    CHECK(est.bound == doctest::Approx(2.0).epsilon(1e-2));
    CHECK(!est.ill_conditioned);

    // phi constant in z has a zero bound (analytic partials keep the finite
    // difference noise-free)
    ModelBuilder lin;
    lin.v = [](double x, double, double z) { return x + z; };
    lin.v_x = [](double, double, double) { return 1.0; };
    lin.v_s = [](double, double, double) { return 0.0; };
    lin.v_z = [](double, double, double) { return 1.0; };
    lin.c = [](double s, double) { return s; };
    lin.c_s = [](double, double) { return 1.0; };
    lin.c_z = [](double, double) { return 0.0; };
    lin.G = Distribution::uniform(1.0, 2.0);
    lin.H = Distribution::uniform(1.0, 2.0);
    lin.T = {0.0, 1.0, false};
    const auto zero = lipschitz_estimate(lin.build(), 0.0, 1.0, 1.0, 2.0, 16);
    CHECK(zero.bound < 1e-8);

    ModelBuilder cb;
    cb.v = [](double, double, double) { return 3.0; };
    cb.c = [](double s, double z) { return s / z; };
    cb.G = Distribution::uniform(1.0, 2.0);
    cb.H = Distribution::uniform(1.0, 2.0);
    cb.T = {0.0, 1.0, false};
    // constant v has v_z = 0: phi is singular there
    CHECK_THROWS(lipschitz_estimate(cb.build(), 0.0, 1.0, 1.0, 2.0, 8));
}
