#pragma once

#include <functional>
#include <string>

namespace sigeq {

// A continuous type distribution on a closed interval [lo, hi] with strictly
// positive density (Assumption-6 style). The inverse CDF may be supplied in
// closed form; otherwise it is solved by bisection to 1e-12.
class Distribution {
public:
    using Fn = std::function<double(double)>;

    Distribution() = default;
    Distribution(std::string name, double lo, double hi, Fn cdf, Fn pdf,
                 Fn inv = nullptr);

    double cdf(double x) const;
    double pdf(double x) const;
    double inv(double p) const; // quantile; p in [0,1]

    double lo() const { return lo_; }
    double hi() const { return hi_; }
    const std::string& name() const { return name_; }

    // F(lo)=0, F(hi)=1, positive density spot checks; throws model_error.
    void validate() const;

    static Distribution uniform(double lo, double hi);
    // CDF ((x-lo)/(hi-lo))^k with k > 0; k = 1 is uniform. For k != 1 the
    // density vanishes or blows up at an endpoint, so validate() rejects it;
    // kept as a negative-test family.
    static Distribution power(double lo, double hi, double k);
    // density proportional to 1 + beta*(x-lo)/(hi-lo), beta > -1; stays
    // positive and finite on the closed support.
    static Distribution tilted(double lo, double hi, double beta);

private:
    std::string name_;
    double lo_ = 0.0, hi_ = 1.0;
    Fn cdf_, pdf_, inv_;
};

} // namespace sigeq
