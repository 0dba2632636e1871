#include "signaleq/model.hpp"

#include "signaleq/errors.hpp"
#include "signaleq/numerics.hpp"

#include <cmath>
#include <sstream>

namespace sigeq {

double ReactionInterval::cap() const {
    if (unbounded)
        throw domain_error("ReactionInterval: cap() on unbounded interval");
    return hi;
}

namespace {

double fd_step(double x) { return 1e-6 * std::max(1.0, std::abs(x)); }

SurplusFn fd_partial_x(const SurplusFn& f, int arg) {
    return [f, arg](double x, double s, double z) {
        const double h = fd_step(arg == 0 ? x : (arg == 1 ? s : z));
        switch (arg) {
        case 0: return (f(x + h, s, z) - f(x - h, s, z)) / (2 * h);
        case 1: {
            // keep the stencil on s >= 0 where the cost side lives
            if (s - h < 0.0) return (f(x, s + h, z) - f(x, s, z)) / h;
            return (f(x, s + h, z) - f(x, s - h, z)) / (2 * h);
        }
        default: return (f(x, s, z + h) - f(x, s, z - h)) / (2 * h);
        }
    };
}

CostFn fd_cost(const CostFn& f, int arg) {
    return [f, arg](double s, double z) {
        const double h = fd_step(arg == 0 ? s : z);
        if (arg == 0) {
            if (s - h < 0.0) return (f(s + h, z) - f(s, z)) / h;
            return (f(s + h, z) - f(s - h, z)) / (2 * h);
        }
        return (f(s, z + h) - f(s, z + -h)) / (2 * h);
    };
}

void crosscheck(double analytic, double numeric, const char* what, double x,
                double s, double z) {
    if (!std::isfinite(analytic) || !std::isfinite(numeric)) return;
    const double scale = std::max({1.0, std::abs(analytic), std::abs(numeric)});
    if (std::abs(analytic - numeric) > 1e-4 * scale) {
        std::ostringstream os;
        os << "supplied partial " << what << " disagrees with central"
           << " differences at (x=" << x << ", s=" << s << ", z=" << z
           << "): " << analytic << " vs " << numeric;
        throw model_error(os.str());
    }
}

} // namespace

ModelPrimitives ModelBuilder::build() const {
    if (!v) throw domain_error("model: surplus v not set");
    if (!c) throw domain_error("model: cost c not set");
    ModelPrimitives m;
    m.v = v;
    m.c = c;
    m.G = G;
    m.H = H;
    m.Z = {G.lo(), G.hi()};
    m.X = {H.lo(), H.hi()};
    m.T = T;
    m.description = description;
    if (!(m.Z.lo < m.Z.hi) || !(m.X.lo < m.X.hi))
        throw domain_error("model: degenerate type interval");
    if (m.T.lo < 0.0 || (!m.T.unbounded && m.T.hi < m.T.lo))
        throw domain_error("model: invalid reaction interval");
    G.validate();
    H.validate();

    m.v_x = v_x ? v_x : fd_partial_x(v, 0);
    m.v_s = v_s ? v_s : fd_partial_x(v, 1);
    m.v_z = v_z ? v_z : fd_partial_x(v, 2);
    m.c_s = c_s ? c_s : fd_cost(c, 0);
    m.c_z = c_z ? c_z : fd_cost(c, 1);

    // c(0,z) = 0 anchors the null action
    for (int i = 0; i <= 4; ++i) {
        const double z = m.Z.lo + m.Z.width() * i / 4.0;
        const double c0 = c(0.0, z);
        if (std::abs(c0) > 1e-10)
            throw model_error("model: c(0,z) != 0 at z=" + std::to_string(z));
    }

    // probe grid, interior so singular boundaries (e.g. cost blow-up at the
    // bottom type) do not poison the comparison
    const auto fdvx = fd_partial_x(v, 0);
    const auto fdvs = fd_partial_x(v, 1);
    const auto fdvz = fd_partial_x(v, 2);
    const auto fdcs = fd_cost(c, 0);
    const auto fdcz = fd_cost(c, 1);
    for (int i = 1; i <= 3; ++i)
        for (int j = 1; j <= 3; ++j)
            for (int k = 1; k <= 3; ++k) {
                const double x = m.X.lo + m.X.width() * i / 4.0;
                const double z = m.Z.lo + m.Z.width() * j / 4.0;
                const double s = 0.25 * k;
                if (v_x) crosscheck(v_x(x, s, z), fdvx(x, s, z), "v_x", x, s, z);
                if (v_s) crosscheck(v_s(x, s, z), fdvs(x, s, z), "v_s", x, s, z);
                if (v_z) crosscheck(v_z(x, s, z), fdvz(x, s, z), "v_z", x, s, z);
                if (c_s) crosscheck(c_s(s, z), fdcs(s, z), "c_s", x, s, z);
                if (c_z) crosscheck(c_z(s, z), fdcz(s, z), "c_z", x, s, z);
            }
    return m;
}

double quantile_match(double z, const ModelPrimitives& m) {
    if (!m.Z.contains(z))
        throw domain_error("quantile_match: z=" + std::to_string(z) +
                           " outside Z");
    return m.H.inv(m.G.cdf(z));
}

} // namespace sigeq
