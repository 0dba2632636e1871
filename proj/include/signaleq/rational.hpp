#pragma once

#include "signaleq/errors.hpp"

#include <cmath>
#include <cstdint>
#include <numeric>
#include <string>

namespace sigeq {

// Exact rational arithmetic for finite-game payoff comparisons. Every finite
// double is a rational, so game tables given as decimals, fractions, or
// program-side doubles all convert exactly; equilibrium verdicts then never
// hinge on float noise. Intermediates run through __int128 and overflow
// throws instead of wrapping.
class Rat {
public:
    Rat() = default;
    Rat(long long n) : num_(n), den_(1) {}
    Rat(long long n, long long d) : num_(n), den_(d) { normalize(); }

    static Rat from_double(double x) {
        if (!std::isfinite(x)) throw domain_error("Rat: non-finite value");
        Rat r;
        if (x == 0.0) return r;
        int exp = 0;
        double mant = std::frexp(x, &exp); // x = mant * 2^exp, |mant| in [0.5,1)
        for (int i = 0; i < 64 && mant != std::floor(mant); ++i) {
            mant *= 2.0;
            --exp;
        }
        const auto m = static_cast<long long>(mant);
        if (exp >= 0) {
            if (exp > 62) throw domain_error("Rat: double too large");
            return mul_checked(Rat(m), Rat(1LL << exp));
        }
        if (exp < -62)
            throw domain_error("Rat: double needs denominator beyond 2^62; "
                               "use shorter decimals");
        return Rat(m, 1LL << (-exp));
    }

    // "3/2", "-0.125", "7"
    static Rat parse(const std::string& text);

    long long num() const { return num_; }
    long long den() const { return den_; }
    double to_double() const {
        return static_cast<double>(num_) / static_cast<double>(den_);
    }

    friend Rat operator+(const Rat& a, const Rat& b) {
        const __int128 n = i128(a.num_) * b.den_ + i128(b.num_) * a.den_;
        const __int128 d = i128(a.den_) * b.den_;
        return make(n, d);
    }
    friend Rat operator-(const Rat& a, const Rat& b) { return a + Rat(-1) * b; }
    friend Rat operator*(const Rat& a, const Rat& b) {
        return mul_checked(a, b);
    }
    friend Rat operator/(const Rat& a, const Rat& b) {
        if (b.num_ == 0) throw domain_error("Rat: division by zero");
        const __int128 n = i128(a.num_) * b.den_;
        const __int128 d = i128(a.den_) * b.num_;
        return make(n, d);
    }
    Rat operator-() const { return Rat(-num_, den_); }

    friend bool operator==(const Rat& a, const Rat& b) {
        return a.num_ == b.num_ && a.den_ == b.den_;
    }
    friend bool operator!=(const Rat& a, const Rat& b) { return !(a == b); }
    friend bool operator<(const Rat& a, const Rat& b) {
        return i128(a.num_) * b.den_ < i128(b.num_) * a.den_;
    }
    friend bool operator<=(const Rat& a, const Rat& b) {
        return i128(a.num_) * b.den_ <= i128(b.num_) * a.den_;
    }
    friend bool operator>(const Rat& a, const Rat& b) { return b < a; }
    friend bool operator>=(const Rat& a, const Rat& b) { return b <= a; }

    std::string str() const {
        if (den_ == 1) return std::to_string(num_);
        return std::to_string(num_) + "/" + std::to_string(den_);
    }

private:
    using i128 = __int128;
    long long num_ = 0;
    long long den_ = 1;

    void normalize() {
        if (den_ == 0) throw domain_error("Rat: zero denominator");
        if (den_ < 0) {
            num_ = -num_;
            den_ = -den_;
        }
        const long long g = std::gcd(num_ < 0 ? -num_ : num_, den_);
        if (g > 1) {
            num_ /= g;
            den_ /= g;
        }
    }

    static Rat make(__int128 n, __int128 d) {
        if (d == 0) throw domain_error("Rat: zero denominator");
        if (d < 0) {
            n = -n;
            d = -d;
        }
        const __int128 g = gcd128(n < 0 ? -n : n, d);
        if (g > 1) {
            n /= g;
            d /= g;
        }
        constexpr __int128 lim = __int128(1) << 62;
        if (n >= lim || n <= -lim || d >= lim)
            throw domain_error("Rat: overflow; payoff values too fine-grained "
                               "for exact arithmetic");
        Rat r;
        r.num_ = static_cast<long long>(n);
        r.den_ = static_cast<long long>(d);
        return r;
    }

    static __int128 gcd128(__int128 a, __int128 b) {
        while (b != 0) {
            const __int128 t = a % b;
            a = b;
            b = t;
        }
        return a;
    }

    static Rat mul_checked(const Rat& a, const Rat& b) {
        return make(i128(a.num_) * b.num_, i128(a.den_) * b.den_);
    }
};

} // namespace sigeq
