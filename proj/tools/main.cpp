// Command-line front end: monotonicity reports, Douglas-Rachford runs, the
// discrete Poisson demo and tridiagonal Toeplitz inverses.
#include <string>
#include <vector>

#include "CLI11.hpp"

#include "commands.hpp"

namespace {

void add_common(CLI::App* cmd, affinedr::cli::CommonOptions& opt) {
  cmd->add_option("--tol", opt.tol, "Convergence tolerance")->check(CLI::PositiveNumber);
  cmd->add_option("--max-iter", opt.max_iter, "Iteration cap")->check(CLI::PositiveNumber);
  cmd->add_option("--seed", opt.seed, "Seed for randomized inputs");
  cmd->add_option("--out", opt.out, "Output path (trace CSV / matrix / grid)");
  cmd->add_option("--format", opt.format, "Summary format on stdout")
      ->check(CLI::IsMember({"json", "csv"}));
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"Douglas-Rachford splitting for affine monotone relations"};
  app.require_subcommand(1);

  std::vector<std::string> monotone_spec;
  affinedr::cli::CommonOptions monotone_opt;
  CLI::App* monotone = app.add_subcommand("monotone", "Monotonicity report for an operator");
  monotone->add_option("spec", monotone_spec, "Operator description")->required();
  add_common(monotone, monotone_opt);

  affinedr::cli::DrOptions dr_opt;
  CLI::App* dr = app.add_subcommand("dr", "Run the Douglas-Rachford iteration");
  dr->add_option("--A", dr_opt.a_spec, "First operator")->required();
  dr->add_option("--B", dr_opt.b_spec, "Second operator")->required();
  dr->add_option("--x0", dr_opt.x0, "Start point: vector literal or 'random'");
  dr->add_option("--dim", dr_opt.dim, "Dimension for random start points");
  add_common(dr, dr_opt);

  affinedr::cli::PoissonOptions poisson_opt;
  CLI::App* poisson = app.add_subcommand("poisson", "Solve the discrete Dirichlet-Poisson demo");
  poisson->add_option("--input", poisson_opt.input, "Problem description file");
  poisson->add_option("--n", poisson_opt.n, "Grid size for the quick form");
  poisson->add_option("--f-const", poisson_opt.f_const, "Constant source for the quick form");
  poisson->add_option("--trace", poisson_opt.trace_path, "Iteration trace CSV path");
  add_common(poisson, poisson_opt);
  poisson_opt.tol = 1e-8;

  affinedr::cli::ToeplitzOptions toe_opt;
  CLI::App* toe = app.add_subcommand("toeplitz-inverse", "Invert a tridiagonal Toeplitz matrix");
  toe->add_option("alpha", toe_opt.alpha, "Subdiagonal")->required();
  toe->add_option("beta", toe_opt.beta, "Diagonal")->required();
  toe->add_option("gamma", toe_opt.gamma, "Superdiagonal")->required();
  toe->add_option("n", toe_opt.n, "Dimension")->required()->check(CLI::PositiveNumber);
  toe->add_option("method", toe_opt.method, "closed | recurrence | triangular | auto");
  add_common(toe, toe_opt);

  try {
    app.parse(argc, argv);
  } catch (const CLI::ParseError& e) {
    const int code = app.exit(e);
    return code == 0 ? 0 : affinedr::cli::kExitUsage;
  }

  if (monotone->parsed()) {
    std::string joined;
    for (const std::string& part : monotone_spec) {
      if (!joined.empty()) joined += ' ';
      joined += part;
    }
    return affinedr::cli::cmd_monotone(joined, monotone_opt);
  }
  if (dr->parsed()) return affinedr::cli::cmd_dr(dr_opt);
  if (poisson->parsed()) return affinedr::cli::cmd_poisson(poisson_opt);
  if (toe->parsed()) return affinedr::cli::cmd_toeplitz_inverse(toe_opt);
  return affinedr::cli::kExitUsage;
}
