#include "signaleq/set_order.hpp"

#include "signaleq/errors.hpp"

#include <algorithm>

namespace sigeq {

namespace {
bool contains(const std::vector<double>& v, double x) {
    return std::find(v.begin(), v.end(), x) != v.end();
}
void require_nonempty(const std::vector<double>& A,
                      const std::vector<double>& B) {
    if (A.empty() || B.empty())
        throw domain_error("set order: sets must be nonempty");
}
} // namespace

bool stronger_set_leq(const std::vector<double>& A,
                      const std::vector<double>& B) {
    require_nonempty(A, B);
    const double maxA = *std::max_element(A.begin(), A.end());
    const double minB = *std::min_element(B.begin(), B.end());
    return maxA <= minB;
}

bool strong_set_leq(const std::vector<double>& A,
                    const std::vector<double>& B) {
    require_nonempty(A, B);
    for (double a : A)
        for (double b : B) {
            if (!contains(A, std::min(a, b))) return false;
            if (!contains(B, std::max(a, b))) return false;
        }
    return true;
}

SetOrderComparison compare_sets(const std::vector<double>& A,
                                const std::vector<double>& B) {
    require_nonempty(A, B);
    if (std::is_permutation(A.begin(), A.end(), B.begin(), B.end()))
        return {SetOrderVerdict::Equal};
    if (stronger_set_leq(A, B)) return {SetOrderVerdict::CompletelyLower};
    if (strong_set_leq(A, B)) return {SetOrderVerdict::StrongOnly};
    return {SetOrderVerdict::Unordered};
}

} // namespace sigeq
