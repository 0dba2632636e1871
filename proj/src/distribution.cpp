#include "signaleq/distribution.hpp"

#include "signaleq/errors.hpp"
#include "signaleq/numerics.hpp"

#include <limits>
#include <cmath>
#include <utility>

namespace sigeq {

Distribution::Distribution(std::string name, double lo, double hi, Fn cdf,
                           Fn pdf, Fn inv)
    : name_(std::move(name)), lo_(lo), hi_(hi), cdf_(std::move(cdf)),
      pdf_(std::move(pdf)), inv_(std::move(inv)) {
    if (!(lo_ < hi_))
        throw domain_error("distribution: degenerate support [" +
                           std::to_string(lo_) + "," + std::to_string(hi_) +
                           "]");
}

double Distribution::cdf(double x) const { return cdf_(x); }
double Distribution::pdf(double x) const { return pdf_(x); }

double Distribution::inv(double p) const {
    if (p < -1e-12 || p > 1.0 + 1e-12)
        throw domain_error("distribution: quantile argument outside [0,1]");
    if (p <= 0.0) return lo_;
    if (p >= 1.0) return hi_;
    if (inv_) return inv_(p);
    return num::bisect([&](double x) { return cdf_(x) - p; }, lo_, hi_, 1e-12);
}

void Distribution::validate() const {
    if (std::abs(cdf_(lo_)) > 1e-10 || std::abs(cdf_(hi_) - 1.0) > 1e-10)
        throw model_error("distribution '" + name_ +
                          "': CDF not 0/1 at the support endpoints");
    for (int i = 0; i <= 16; ++i) {
        const double x = lo_ + (hi_ - lo_) * i / 16.0;
        const double d = pdf_(x);
        if (!(d > 0.0) || !std::isfinite(d))
            throw model_error("distribution '" + name_ +
                              "': density not strictly positive and finite at " +
                              std::to_string(x));
    }
    if (inv_) {
        for (int i = 1; i < 8; ++i) {
            const double p = i / 8.0;
            if (std::abs(cdf_(inv_(p)) - p) > 1e-9)
                throw model_error("distribution '" + name_ +
                                  "': closed-form inverse disagrees with CDF");
        }
    }
}

Distribution Distribution::uniform(double lo, double hi) {
    const double w = hi - lo;
    return Distribution(
        "uniform", lo, hi,
        [lo, hi, w](double x) {
            if (x <= lo) return 0.0;
            if (x >= hi) return 1.0;
            return (x - lo) / w;
        },
        [w](double) { return 1.0 / w; },
        [lo, w](double p) { return lo + p * w; });
}

Distribution Distribution::power(double lo, double hi, double k) {
    if (!(k > 0.0)) throw domain_error("power distribution: k must be > 0");
    const double w = hi - lo;
    return Distribution(
        "power", lo, hi,
        [lo, hi, w, k](double x) {
            if (x <= lo) return 0.0;
            if (x >= hi) return 1.0;
            return std::pow((x - lo) / w, k);
        },
        [lo, hi, w, k](double x) {
            if (x <= lo)
                return k > 1.0 ? 0.0
                               : (k < 1.0
                                      ? std::numeric_limits<double>::infinity()
                                      : 1.0 / w);
            const double u = std::min((x - lo) / w, 1.0);
            (void)hi;
            return k * std::pow(u, k - 1.0) / w;
        },
        [lo, w, k](double p) { return lo + w * std::pow(p, 1.0 / k); });
}

Distribution Distribution::tilted(double lo, double hi, double beta) {
    if (!(beta > -1.0))
        throw domain_error("tilted distribution: beta must be > -1");
    const double w = hi - lo;
    const double norm = 1.0 + 0.5 * beta;
    return Distribution(
        "tilted", lo, hi,
        [lo, hi, w, beta, norm](double x) {
            if (x <= lo) return 0.0;
            if (x >= hi) return 1.0;
            const double u = (x - lo) / w;
            return (u + 0.5 * beta * u * u) / norm;
        },
        [lo, w, beta, norm](double x) {
            const double u = (x - lo) / w;
            return (1.0 + beta * u) / (norm * w);
        },
        [lo, w, beta, norm](double p) {
            if (beta == 0.0) return lo + p * w;
            const double u =
                (-1.0 + std::sqrt(1.0 + 2.0 * beta * p * norm)) / beta;
            return lo + u * w;
        });
}

} // namespace sigeq
