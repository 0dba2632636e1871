#pragma once

#include <stdexcept>
#include <string>

namespace sigeq {

// Error taxonomy shared across modules. The CLI maps model_error -> exit 2
// and convergence_error -> exit 3; everything else is a hard usage error.
struct error : std::runtime_error {
    explicit error(const std::string& what) : std::runtime_error(what) {}
};

struct domain_error : error {
    explicit domain_error(const std::string& what) : error(what) {}
};

// Violations of model structure (assumption breakdown, singular phi,
// non-monotone wage integrand, missing roots that theory promises).
struct model_error : error {
    explicit model_error(const std::string& what) : error(what) {}
};

struct convergence_error : error {
    explicit convergence_error(const std::string& what) : error(what) {}
};

// Combinatorial budget exceeded; carries the count that would be needed.
struct resource_error : error {
    resource_error(const std::string& what, unsigned long long needed_)
        : error(what), needed(needed_) {}
    unsigned long long needed;
};

// Internal cross-check failed (e.g. closed-form prediction disagrees with
// the exhaustive filter). Flags either a bug or an unmet hypothesis.
struct consistency_error : error {
    explicit consistency_error(const std::string& what) : error(what) {}
};

struct precondition_error : error {
    explicit precondition_error(const std::string& what) : error(what) {}
};

struct parse_error : error {
    explicit parse_error(const std::string& what) : error(what) {}
};

} // namespace sigeq
