#pragma once

#include "signaleq/cse.hpp"
#include "signaleq/kvfile.hpp"
#include "signaleq/model.hpp"
#include "signaleq/verification.hpp"

#include <string>

namespace sigeq {

// Run configuration for the continuum-market pipeline: a named parametric
// model family, type distributions, the reaction interval, and numeric
// overrides. See README for the documented format and admissible ranges.
struct RunConfig {
    KvFile kv;
    SolverOptions solver;
    VerifyOptions verify;
    std::string out_dir = "out";

    static RunConfig load_file(const std::string& path);
    static RunConfig load_text(const std::string& text);

    ModelPrimitives make_primitives() const;

    // canonical echo of the model-defining sections; stored in solution.json
    // and compared on verify so a solution is never audited against a
    // different model than produced it
    std::string model_echo() const;
};

} // namespace sigeq
