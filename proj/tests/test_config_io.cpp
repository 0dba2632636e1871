#include <doctest.h>

#include "signaleq/config.hpp"
#include "signaleq/errors.hpp"
#include "signaleq/solution_io.hpp"

#include <cmath>

using namespace sigeq;

namespace {
const char* U_MODEL_CFG = R"(
# uniform multiplicative market
[model]
family = multiplicative
a = 1
b = 0
cost = power
k = 1
m = 1
r_cost = 1

[types]
z_lo = 1
z_hi = 2
x_lo = 1
x_hi = 2

[distributions]
G = uniform
H = uniform

[reactions]
t_lo = 0
t_hi = 2
)";
} // namespace

TEST_CASE("config builds the uniform multiplicative market") {
    const RunConfig rc = RunConfig::load_text(U_MODEL_CFG);
    const auto prim = rc.make_primitives();
    CHECK(prim.v(1.5, 0.7, 1.2) == doctest::Approx(1.8));
    CHECK(prim.c(0.7, 1.4) == doctest::Approx(0.5));
    CHECK(prim.T.lo == 0.0);
    CHECK(prim.T.hi == 2.0);
    CHECK(!prim.T.unbounded);
    CHECK(rc.solver.step == 1e-4);
}

TEST_CASE("config validation rejects malformed input") {
    CHECK_THROWS_AS(RunConfig::load_text("[solver]\nstep = -1\n"),
                    parse_error);
    CHECK_THROWS_AS(RunConfig::load_text("[solver]\ntype_grid = 4\n"),
                    parse_error);
    CHECK_THROWS_AS(RunConfig::load_text("[verify]\ntol = 0\n"), parse_error);
    const RunConfig rc = RunConfig::load_text(
        "[types]\nz_lo = 2\nz_hi = 1\nx_lo = 1\nx_hi = 2\n");
    CHECK_THROWS_AS(rc.make_primitives(), parse_error);
    const RunConfig bad_family = RunConfig::load_text(
        "[model]\nfamily = unknown\n[types]\nz_lo = 1\nz_hi = 2\nx_lo = "
        "1\nx_hi = 2\n");
    CHECK_THROWS_AS(bad_family.make_primitives(), parse_error);
}

TEST_CASE("unbounded reactions parse from the sentinel keyword") {
    const RunConfig rc = RunConfig::load_text(
        "[model]\nfamily = multiplicative\ncost = power\n[types]\nz_lo = "
        "1\nz_hi = 2\nx_lo = 1\nx_hi = 2\n[reactions]\nt_lo = 0\nt_hi = "
        "inf\n");
    CHECK(rc.make_primitives().T.unbounded);
}

TEST_CASE("offset multiplicative surplus expresses the pooling oracle") {
    const RunConfig rc = RunConfig::load_text(R"(
[model]
family = multiplicative
a = 1
x0 = 1
cost = linear_over_type
k = 1
z0 = 1
[types]
z_lo = 1
z_hi = 2
x_lo = 1
x_hi = 2
[reactions]
t_lo = 1
t_hi = 1
)");
    const auto prim = rc.make_primitives();
    CHECK(prim.v(1.5, 3.0, 1.2) == doctest::Approx(0.6));
    CHECK(prim.c(0.5, 1.5) == doctest::Approx(1.0));
    CHECK(prim.c(0.0, 1.0) == 0.0);
    CHECK(std::isinf(prim.c(0.5, 1.0)));
    CHECK(prim.T.degenerate());
}

TEST_CASE("solution json round-trips bit-identically") {
    const RunConfig rc = RunConfig::load_text(U_MODEL_CFG);
    const auto prim = rc.make_primitives();
    SolverOptions fast = rc.solver;
    fast.step = 1e-3;
    const CSESolution sol = assemble_cse(prim, fast);
    const std::string once = solution_to_json(sol, rc.model_echo(), fast);
    std::string echo;
    const CSESolution back = solution_from_json(once, &echo);
    CHECK(echo == rc.model_echo());
    const std::string twice = solution_to_json(back, echo, fast);
    CHECK(once == twice);
    CHECK(back.regime == sol.regime);
    CHECK(back.s.size() == sol.s.size());
    for (size_t i = 0; i < sol.s.size(); i += 97) {
        CHECK(back.s[i] == sol.s[i]);
        CHECK(back.mu[i] == sol.mu[i]);
        CHECK(back.tau[i] == sol.tau[i]);
    }
}

TEST_CASE("format_g17 survives a parse round trip") {
    for (double x : {0.1, 1.0 / 3.0, 1.2345678901234567e-7, 1.7e300, -0.0}) {
        CHECK(std::stod(format_g17(x)) == x);
    }
}

TEST_CASE("verification report serializes") {
    VerificationReport rep;
    rep.checks.push_back({"demo", true, 1e-9, "nothing"});
    const std::string text = report_to_json(rep);
    CHECK(text.find("\"overall\": true") != std::string::npos);
    CHECK(text.find("demo") != std::string::npos);
}
