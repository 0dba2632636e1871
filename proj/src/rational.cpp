#include "signaleq/rational.hpp"

#include <cctype>
#include <cstdlib>

namespace sigeq {

Rat Rat::parse(const std::string& text) {
    std::string s;
    for (char ch : text)
        if (!std::isspace(static_cast<unsigned char>(ch))) s += ch;
    if (s.empty()) throw parse_error("Rat: empty literal");
    const auto slash = s.find('/');
    if (slash != std::string::npos) {
        const Rat n = parse(s.substr(0, slash));
        const Rat d = parse(s.substr(slash + 1));
        return n / d;
    }
    bool neg = false;
    size_t i = 0;
    if (s[0] == '+' || s[0] == '-') {
        neg = s[0] == '-';
        i = 1;
    }
    long long ip = 0;
    bool any = false;
    for (; i < s.size() && std::isdigit(static_cast<unsigned char>(s[i])); ++i) {
        if (ip > (1LL << 61) / 10) throw parse_error("Rat: literal too large");
        ip = ip * 10 + (s[i] - '0');
        any = true;
    }
    Rat r(ip);
    if (i < s.size() && s[i] == '.') {
        ++i;
        long long frac = 0, den = 1;
        for (; i < s.size() && std::isdigit(static_cast<unsigned char>(s[i]));
             ++i) {
            if (den > (1LL << 61) / 10)
                throw parse_error("Rat: too many decimal places for exact "
                                  "arithmetic");
            frac = frac * 10 + (s[i] - '0');
            den *= 10;
            any = true;
        }
        r = r + Rat(frac, den);
    }
    if (!any || i != s.size())
        throw parse_error("Rat: bad numeric literal '" + text + "'");
    return neg ? -r : r;
}

} // namespace sigeq
