#pragma once

#include "signaleq/cse.hpp"
#include "signaleq/verification.hpp"

#include <string>

namespace sigeq {

// File emission and ingestion. Numbers cross the file boundary as %.17g
// decimal strings so a verify run sees bit-identical grids.

std::string format_g17(double x);

std::string solution_to_json(const CSESolution& sol,
                             const std::string& model_echo,
                             const SolverOptions& opt);

CSESolution solution_from_json(const std::string& text,
                               std::string* model_echo_out = nullptr);

std::string report_to_json(const VerificationReport& report);

// writes solution.json, mu.csv, sigma.csv, tau.csv, matching.csv,
// figure1.csv under dir (created if missing)
void write_solution_files(const CSESolution& sol,
                          const std::string& model_echo,
                          const SolverOptions& opt, const std::string& dir);

void write_text_file(const std::string& path, const std::string& content);
std::string read_text_file(const std::string& path);

} // namespace sigeq
