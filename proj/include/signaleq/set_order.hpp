#pragma once

#include <vector>

namespace sigeq {

// Orders on finite sets of reals. "Stronger" (completely lower): every
// element of A is <= every element of B. "Strong" (Veinott): meets stay in
// A, joins stay in B.
bool stronger_set_leq(const std::vector<double>& A,
                      const std::vector<double>& B);

bool strong_set_leq(const std::vector<double>& A,
                    const std::vector<double>& B);

enum class SetOrderVerdict { CompletelyLower, StrongOnly, Unordered, Equal };

struct SetOrderComparison {
    SetOrderVerdict verdict;
};

SetOrderComparison compare_sets(const std::vector<double>& A,
                                const std::vector<double>& B);

} // namespace sigeq
