#pragma once

#include <cstddef>
#include <string>

namespace affinedr::cli {

// Exit codes shared by every subcommand: 0 success, 2 mathematical
// infeasibility, 3 usage or parse error.
inline constexpr int kExitOk = 0;
inline constexpr int kExitInfeasible = 2;
inline constexpr int kExitUsage = 3;

struct CommonOptions {
  double tol = 1e-10;
  std::size_t max_iter = 100000;
  std::uint64_t seed = 1;
  std::string out;            // trace / matrix output path ("" = none)
  std::string format = "json";  // summary format on stdout: json | csv
};

int cmd_monotone(const std::string& spec, const CommonOptions& opt);

struct DrOptions : CommonOptions {
  std::string a_spec;
  std::string b_spec;
  std::string x0 = "random";  // vector literal or "random"
  std::size_t dim = 0;        // required when x0 == "random"
};
int cmd_dr(const DrOptions& opt);

struct PoissonOptions : CommonOptions {
  std::string input;       // problem file; "" = use n/f_const quick form
  std::size_t n = 0;
  double f_const = 0.0;
  std::string trace_path;  // optional CSV trace
};
int cmd_poisson(const PoissonOptions& opt);

struct ToeplitzOptions : CommonOptions {
  double alpha = 0.0, beta = 0.0, gamma = 0.0;
  std::size_t n = 1;
  std::string method = "auto";  // closed | recurrence | triangular | auto
};
int cmd_toeplitz_inverse(const ToeplitzOptions& opt);

/// Verbosity from the AFFINE_DR_LOG environment variable (0 = quiet).
int log_level();
void log_info(const std::string& message);

}  // namespace affinedr::cli
