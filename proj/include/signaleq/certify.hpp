#pragma once

#include "signaleq/model.hpp"

#include <string>
#include <vector>

namespace sigeq {

enum class Verdict { Pass, Fail, Inconclusive };

struct Certificate {
    std::string name;
    Verdict verdict = Verdict::Pass;
    std::string witness; // first violating point, when failing
    std::string note;    // flags (weak-at-boundary cases, vacuous clauses)
    bool ok() const { return verdict != Verdict::Fail; }
};

const char* to_string(Verdict v);

struct CertifyOptions {
    double eps_strict = 1e-10; // margin for strict inequalities on floats
    double blowup_threshold = 1e6; // limit checks count as passed above this
    int grid_n = 9;                // points per axis for assumption grids
};

struct Grid3 {
    std::vector<double> t, s, z;
};

// Monotone-supermodular certificate for a sender utility u(t,s,z):
// decreasing in s, increasing in t, increasing in z (weak at s = 0, where
// u = t - c(s,z) is flat by c(0,z) = 0), and strict single crossing in
// ((t,s); z) over all comparable grid pairs.
Certificate check_sender_monotone_supermodular(
    const std::function<double(double, double, double)>& u, const Grid3& grid,
    const CertifyOptions& opt = {});

// One certificate per Assumption 1..7, evaluated on grids over Z x X and an
// action sample. Limit conditions (cost blow-up, Inada slopes) follow a
// decreasing/increasing schedule and report Inconclusive unless the
// configured threshold is crossed, or Fail when the sequence visibly
// converges to a finite value.
std::vector<Certificate> check_assumptions_1_to_7(
    const ModelPrimitives& m, const std::vector<double>& s_sample,
    const CertifyOptions& opt = {});

} // namespace sigeq
