#include "signaleq/config.hpp"

#include "signaleq/errors.hpp"

#include <cmath>
#include <fstream>
#include <limits>
#include <sstream>

namespace sigeq {

namespace {

Distribution make_distribution(const KvFile& kv, const std::string& key,
                               double lo, double hi) {
    const std::string family = kv.get_or("distributions", key, "uniform");
    if (family == "uniform") return Distribution::uniform(lo, hi);
    if (family == "tilted")
        return Distribution::tilted(
            lo, hi, kv.get_double_or("distributions", key + "_beta", 0.0));
    if (family == "power")
        return Distribution::power(
            lo, hi, kv.get_double_or("distributions", key + "_k", 1.0));
    throw parse_error("unknown distribution family '" + family + "' for " +
                      key);
}

void check_positive(double v, const char* what) {
    if (!(v > 0.0))
        throw parse_error(std::string(what) + " must be > 0, got " +
                          std::to_string(v));
}

} // namespace

RunConfig RunConfig::load_text(const std::string& text) {
    RunConfig rc;
    rc.kv = KvFile::parse_text(text);

    rc.solver.step = rc.kv.get_double_or("solver", "step", 1e-4);
    rc.solver.ode_local_tol = rc.kv.get_double_or("solver", "ode_tol", 1e-8);
    rc.solver.step_floor = rc.kv.get_double_or("solver", "step_floor", 1e-7);
    rc.solver.root_tol = rc.kv.get_double_or("solver", "root_tol", 1e-12);
    rc.solver.quad_tol = rc.kv.get_double_or("solver", "quad_tol", 1e-11);
    rc.solver.type_grid_n =
        static_cast<int>(rc.kv.get_long_or("solver", "type_grid", 2001));
    rc.solver.waive_assumptions =
        rc.kv.get_or("solver", "waive_assumptions", "false") == "true";

    rc.verify.tol = rc.kv.get_double_or("verify", "tol", 1e-7);
    rc.verify.foc_tol = rc.kv.get_double_or("verify", "foc_tol", 1e-6);
    rc.verify.z_grid_n =
        static_cast<int>(rc.kv.get_long_or("verify", "z_grid", 400));
    rc.verify.x_grid_n =
        static_cast<int>(rc.kv.get_long_or("verify", "x_grid", 400));
    rc.verify.s_grid_n =
        static_cast<int>(rc.kv.get_long_or("verify", "s_grid", 400));
    rc.verify.offpath_grid_n =
        static_cast<int>(rc.kv.get_long_or("verify", "offpath_grid", 1000));
    rc.verify.stability_samples = static_cast<std::size_t>(
        rc.kv.get_long_or("verify", "stability_samples", 100000));
    rc.verify.clearing_intervals =
        static_cast<int>(rc.kv.get_long_or("verify", "clearing_intervals", 100));

    rc.out_dir = rc.kv.get_or("output", "dir", "out");

    check_positive(rc.solver.step, "solver step");
    check_positive(rc.solver.ode_local_tol, "solver ode_tol");
    check_positive(rc.solver.root_tol, "solver root_tol");
    check_positive(rc.solver.quad_tol, "solver quad_tol");
    check_positive(rc.verify.tol, "verify tol");
    if (rc.solver.type_grid_n < 16 || rc.verify.z_grid_n < 16 ||
        rc.verify.s_grid_n < 16 || rc.verify.x_grid_n < 16)
        throw parse_error("grid sizes must be >= 16");
    return rc;
}

RunConfig RunConfig::load_file(const std::string& path) {
    std::ostringstream os;
    {
        std::ifstream f(path);
        if (!f) throw parse_error("cannot open config '" + path + "'");
        os << f.rdbuf();
    }
    return load_text(os.str());
}

ModelPrimitives RunConfig::make_primitives() const {
    const double z_lo = kv.get_double("types", "z_lo");
    const double z_hi = kv.get_double("types", "z_hi");
    const double x_lo = kv.get_double("types", "x_lo");
    const double x_hi = kv.get_double("types", "x_hi");
    if (!(z_lo < z_hi) || !(x_lo < x_hi))
        throw parse_error("type intervals must be nondegenerate");

    ModelBuilder b;
    const std::string family = kv.get_or("model", "family", "multiplicative");
    if (family == "multiplicative") {
        // v = a (x - x0) z + bm x s
        const double a = kv.get_double_or("model", "a", 1.0);
        const double bm = kv.get_double_or("model", "b", 0.0);
        const double x0 = kv.get_double_or("model", "x0", 0.0);
        check_positive(a, "model a");
        if (bm < 0.0) throw parse_error("model b must be >= 0");
        if (x0 > x_lo) throw parse_error("model x0 must be <= x_lo");
        b.v = [a, bm, x0](double x, double s, double z) {
            return a * (x - x0) * z + bm * x * s;
        };
        b.v_x = [a, bm](double, double s, double z) { return a * z + bm * s; };
        b.v_s = [bm](double x, double, double) { return bm * x; };
        b.v_z = [a, x0](double x, double, double) { return a * (x - x0); };
    } else if (family == "cobb_like") {
        // v = x^p z^q (1+s)^r
        const double p = kv.get_double_or("model", "p", 1.0);
        const double q = kv.get_double_or("model", "q", 1.0);
        const double r = kv.get_double_or("model", "r", 0.0);
        check_positive(p, "model p");
        check_positive(q, "model q");
        if (r < 0.0) throw parse_error("model r must be >= 0");
        b.v = [p, q, r](double x, double s, double z) {
            return std::pow(x, p) * std::pow(z, q) * std::pow(1.0 + s, r);
        };
        b.v_x = [p, q, r](double x, double s, double z) {
            return p * std::pow(x, p - 1) * std::pow(z, q) *
                   std::pow(1.0 + s, r);
        };
        b.v_s = [p, q, r](double x, double s, double z) {
            return r * std::pow(x, p) * std::pow(z, q) *
                   std::pow(1.0 + s, r - 1);
        };
        b.v_z = [p, q, r](double x, double s, double z) {
            return q * std::pow(x, p) * std::pow(z, q - 1) *
                   std::pow(1.0 + s, r);
        };
    } else {
        throw parse_error("unknown surplus family '" + family + "'");
    }

    const std::string cost = kv.get_or("model", "cost", "power");
    if (cost == "linear_over_type") {
        // c = k s / (z - z0); blows up at z0
        const double k = kv.get_double_or("model", "k", 1.0);
        const double z0 = kv.get_double_or("model", "z0", 0.0);
        check_positive(k, "model k");
        if (z0 > z_lo)
            throw parse_error("cost z0 must be <= z_lo");
        b.c = [k, z0](double s, double z) {
            if (s == 0.0) return 0.0;
            if (z <= z0) return std::numeric_limits<double>::infinity();
            return k * s / (z - z0);
        };
        b.c_s = [k, z0](double, double z) {
            if (z <= z0) return std::numeric_limits<double>::infinity();
            return k / (z - z0);
        };
        b.c_z = [k, z0](double s, double z) {
            if (s == 0.0) return 0.0;
            if (z <= z0) return -std::numeric_limits<double>::infinity();
            return -k * s / ((z - z0) * (z - z0));
        };
    } else if (cost == "power") {
        // c = k s^m / z^r
        const double k = kv.get_double_or("model", "k", 1.0);
        const double mexp = kv.get_double_or("model", "m", 1.0);
        const double rexp = kv.get_double_or("model", "r_cost", 1.0);
        check_positive(k, "model k");
        if (mexp < 1.0) throw parse_error("cost m must be >= 1");
        if (rexp < 0.0) throw parse_error("cost r_cost must be >= 0");
        b.c = [k, mexp, rexp](double s, double z) {
            if (s == 0.0) return 0.0;
            return k * std::pow(s, mexp) / std::pow(z, rexp);
        };
        b.c_s = [k, mexp, rexp](double s, double z) {
            if (s == 0.0 && mexp > 1.0) return 0.0;
            return k * mexp * std::pow(s, mexp - 1) / std::pow(z, rexp);
        };
        b.c_z = [k, mexp, rexp](double s, double z) {
            if (s == 0.0) return 0.0;
            return -k * rexp * std::pow(s, mexp) / std::pow(z, rexp + 1);
        };
    } else {
        throw parse_error("unknown cost family '" + cost + "'");
    }

    b.G = make_distribution(kv, "G", z_lo, z_hi);
    b.H = make_distribution(kv, "H", x_lo, x_hi);

    ReactionInterval T;
    T.lo = kv.get_double_or("reactions", "t_lo", 0.0);
    const std::string th = kv.get_or("reactions", "t_hi", "inf");
    if (th == "inf" || th == "unbounded") {
        T.unbounded = true;
        T.hi = 0.0;
    } else {
        T.hi = kv.get_double("reactions", "t_hi");
        if (T.hi < T.lo) throw parse_error("reactions: t_hi < t_lo");
    }
    if (T.lo < 0.0) throw parse_error("reactions: t_lo must be >= 0");
    b.T = T;
    b.description = family + "+" + cost;
    return b.build();
}

std::string RunConfig::model_echo() const {
    std::ostringstream os;
    for (const auto& [section, entries] : kv.ordered()) {
        if (section != "model" && section != "types" &&
            section != "distributions" && section != "reactions")
            continue;
        os << "[" << section << "]\n";
        for (const auto& [k, v] : entries) os << k << " = " << v << "\n";
    }
    return os.str();
}

} // namespace sigeq
