#pragma once

// Shared test fixtures: the two analytic market models used as oracles plus
// a surplus with an interior action optimum.

#include "signaleq/model.hpp"

#include <cmath>
#include <limits>

inline sigeq::ModelPrimitives u_model(double t_lo, double t_hi,
                                      bool unbounded = false) {
    sigeq::ModelBuilder b;
    b.v = [](double x, double, double z) { return x * z; };
    b.v_x = [](double, double, double z) { return z; };
    b.v_s = [](double, double, double) { return 0.0; };
    b.v_z = [](double x, double, double) { return x; };
    b.c = [](double s, double z) { return s / z; };
    b.c_s = [](double, double z) { return 1.0 / z; };
    b.c_z = [](double s, double z) { return -s / (z * z); };
    b.G = sigeq::Distribution::uniform(1.0, 2.0);
    b.H = sigeq::Distribution::uniform(1.0, 2.0);
    b.T = {t_lo, t_hi, unbounded};
    b.description = "u-model";
    return b.build();
}

inline sigeq::ModelPrimitives pooling_model(double t_star) {
    sigeq::ModelBuilder b;
    b.v = [](double x, double, double z) { return (x - 1.0) * z; };
    b.v_x = [](double, double, double z) { return z; };
    b.v_s = [](double, double, double) { return 0.0; };
    b.v_z = [](double x, double, double) { return x - 1.0; };
    b.c = [](double s, double z) {
        if (s == 0.0) return 0.0;
        if (z <= 1.0) return std::numeric_limits<double>::infinity();
        return s / (z - 1.0);
    };
    b.c_s = [](double, double z) {
        if (z <= 1.0) return std::numeric_limits<double>::infinity();
        return 1.0 / (z - 1.0);
    };
    b.c_z = [](double s, double z) {
        if (s == 0.0) return 0.0;
        if (z <= 1.0) return -std::numeric_limits<double>::infinity();
        return -s / ((z - 1.0) * (z - 1.0));
    };
    b.G = sigeq::Distribution::uniform(1.0, 2.0);
    b.H = sigeq::Distribution::uniform(1.0, 2.0);
    b.T = {t_star, t_star, false};
    b.description = "pooling-model";
    return b.build();
}

// v = x z + 2 sqrt(s) x, c = s^2 / z: interior bilaterally efficient action
inline sigeq::ModelPrimitives interior_zeta_model() {
    sigeq::ModelBuilder b;
    b.v = [](double x, double s, double z) {
        return x * z + 2.0 * std::sqrt(s) * x;
    };
    b.v_x = [](double, double s, double z) {
        return z + 2.0 * std::sqrt(s);
    };
    b.v_s = [](double x, double s, double) {
        if (s == 0.0) return std::numeric_limits<double>::infinity();
        return x / std::sqrt(s);
    };
    b.v_z = [](double x, double, double) { return x; };
    b.c = [](double s, double z) { return s * s / z; };
    b.c_s = [](double s, double z) { return 2.0 * s / z; };
    b.c_z = [](double s, double z) { return -s * s / (z * z); };
    b.G = sigeq::Distribution::uniform(1.0, 2.0);
    b.H = sigeq::Distribution::uniform(1.0, 2.0);
    b.T = {0.0, 0.0, true};
    b.description = "interior-zeta";
    return b.build();
}
