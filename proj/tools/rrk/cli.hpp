#pragma once

#include <cstdint>
#include <iosfwd>
#include <optional>
#include <string>
#include <vector>

#include "rrk/core.hpp"

namespace rrk::cli {

enum ExitCode : int {
  kOk = 0,
  kInputError = 2,
  kNotPsd = 3,
  kInfeasibleFit = 4,
  kVerificationFailed = 5,
};

enum class Command { check_psd, fit_values, fit_differences, eval, verify, sip_check };

struct RunConfig {
  Command command = Command::verify;
  std::string kernel_spec_path;
  std::string data_path;
  std::string model_path;
  double ridge = 1e-10;
  std::optional<std::string> anchor;
  std::uint64_t seed = 2016;
  std::optional<std::string> output_path;
  Tolerance tol;

  // sip-check
  double p = 2.0;
  std::size_t dim = 4;
  std::size_t trials = 1000;

  // Not reachable from the command line; used by tests to corrupt kernels.
  bool inject_asymmetry = false;
};

/// Runs one already-parsed command. Reports go to `out` (or output_path),
/// diagnostics to `err`. Returns one of ExitCode.
int execute(const RunConfig& config, std::ostream& out, std::ostream& err);

/// Parses argv-style arguments (without the program name) and executes.
int run(const std::vector<std::string>& args, std::ostream& out, std::ostream& err);

}  // namespace rrk::cli
