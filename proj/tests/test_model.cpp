#include <doctest.h>

#include "models.hpp"
#include "signaleq/errors.hpp"

#include <cmath>

using namespace sigeq;

TEST_CASE("quantile match at the boundary and for identical uniforms") {
    const auto prim = u_model(0.0, 2.0);
    CHECK(quantile_match(1.0, prim) == doctest::Approx(1.0).epsilon(1e-12));
    CHECK(quantile_match(2.0, prim) == doctest::Approx(2.0).epsilon(1e-12));
    CHECK(quantile_match(1.5, prim) == doctest::Approx(1.5).epsilon(1e-12));
    CHECK_THROWS_AS(quantile_match(0.5, prim), domain_error);
    CHECK_THROWS_AS(quantile_match(2.5, prim), domain_error);
}

TEST_CASE("quantile match across different uniform supports") {
    ModelBuilder b;
    b.v = [](double x, double, double z) { return x * z; };
    b.c = [](double s, double z) { return s / z; };
    b.G = Distribution::uniform(1.0, 2.0);
    b.H = Distribution::uniform(0.0, 4.0);
    b.T = {0.0, 1.0, false};
    const auto prim = b.build();
    CHECK(quantile_match(1.5, prim) == doctest::Approx(2.0).epsilon(1e-12));
}

TEST_CASE("H(n(z)) reproduces G(z) and n is nondecreasing") {
    ModelBuilder b;
    b.v = [](double x, double, double z) { return x * z; };
    b.c = [](double s, double z) { return s / z; };
    b.G = Distribution::tilted(1.0, 2.0, 0.7);
    b.H = Distribution::tilted(0.0, 3.0, -0.4);
    b.T = {0.0, 1.0, false};
    const auto prim = b.build();
    double prev = -1e300;
    for (int i = 0; i <= 200; ++i) {
        const double z = 1.0 + i / 200.0;
        const double x = quantile_match(z, prim);
        CHECK(std::abs(prim.H.cdf(x) - prim.G.cdf(z)) < 1e-9);
        CHECK(x >= prev - 1e-12);
        prev = x;
    }
}

TEST_CASE("generic inverse CDF by bisection agrees with the closed form") {
    const auto closed = Distribution::tilted(0.0, 2.0, 1.5);
    const Distribution bisected(
        "tilted-no-inverse", 0.0, 2.0,
        [&](double x) { return closed.cdf(x); },
        [&](double x) { return closed.pdf(x); });
    for (int i = 1; i < 20; ++i) {
        const double p = i / 20.0;
        CHECK(bisected.inv(p) == doctest::Approx(closed.inv(p)).epsilon(1e-10));
    }
}

TEST_CASE("builder rejects inconsistent supplied partials") {
    ModelBuilder b;
    b.v = [](double x, double, double z) { return x * z; };
    b.v_z = [](double, double, double) { return 42.0; }; // wrong on purpose
    b.c = [](double s, double z) { return s / z; };
    b.G = Distribution::uniform(1.0, 2.0);
    b.H = Distribution::uniform(1.0, 2.0);
    b.T = {0.0, 1.0, false};
    CHECK_THROWS_AS(b.build(), model_error);
}

TEST_CASE("builder rejects a cost without the zero anchor") {
    ModelBuilder b;
    b.v = [](double x, double, double z) { return x * z; };
    b.c = [](double s, double z) { return 0.5 + s / z; };
    b.G = Distribution::uniform(1.0, 2.0);
    b.H = Distribution::uniform(1.0, 2.0);
    b.T = {0.0, 1.0, false};
    CHECK_THROWS_AS(b.build(), model_error);
}

TEST_CASE("finite-difference fallback partials are accurate") {
    ModelBuilder b;
    b.v = [](double x, double s, double z) { return x * z + 0.3 * x * s; };
    b.c = [](double s, double z) { return s * s / z; };
    b.G = Distribution::uniform(1.0, 2.0);
    b.H = Distribution::uniform(1.0, 2.0);
    b.T = {0.0, 1.0, false};
    const auto prim = b.build();
    CHECK(prim.v_s(1.5, 0.7, 1.2) == doctest::Approx(0.45).epsilon(1e-7));
    CHECK(prim.v_z(1.5, 0.7, 1.2) == doctest::Approx(1.5).epsilon(1e-7));
    CHECK(prim.c_s(0.7, 1.2) == doctest::Approx(2 * 0.7 / 1.2).epsilon(1e-7));
}

TEST_CASE("power distribution with k != 1 fails strict density validation") {
    const auto d = Distribution::power(0.0, 1.0, 2.0);
    CHECK_THROWS_AS(d.validate(), model_error);
    CHECK_NOTHROW(Distribution::power(0.0, 1.0, 1.0).validate());
}

TEST_CASE("unbounded reaction interval refuses arithmetic cap") {
    ReactionInterval T{0.0, 0.0, true};
    CHECK_THROWS_AS(T.cap(), domain_error);
    ReactionInterval bounded{0.5, 1.5, false};
    CHECK(bounded.cap() == 1.5);
    CHECK(!bounded.degenerate());
    ReactionInterval point{1.0, 1.0, false};
    CHECK(point.degenerate());
}
