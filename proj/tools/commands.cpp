#include "commands.hpp"

#include <cmath>
#include <cstdio>
#include <cstdlib>
#include <fstream>
#include <iostream>
#include <random>
#include <sstream>

#include "json.hpp"

#include "affinedr/dr.hpp"
#include "affinedr/linalg.hpp"
#include "affinedr/monotone.hpp"
#include "affinedr/poisson.hpp"
#include "affinedr/relation.hpp"
#include "opspec.hpp"

namespace affinedr::cli {

using json = nlohmann::ordered_json;

namespace {

std::string format_double(double v) {
  char buf[40];
  std::snprintf(buf, sizeof buf, "%.17g", v);
  return buf;
}

void print_summary(const json& summary, const std::string& format) {
  if (format == "csv") {
    for (const auto& [key, value] : summary.items())
      std::cout << key << ',' << value.dump() << '\n';
  } else {
    std::cout << summary.dump(2) << '\n';
  }
}

void write_matrix_text(std::ostream& os, const DenseMatrix& m) {
  for (std::size_t i = 0; i < m.rows(); ++i) {
    for (std::size_t j = 0; j < m.cols(); ++j) {
      if (j > 0) os << ' ';
      os << format_double(m(i, j));
    }
    os << '\n';
  }
}

bool write_file(const std::string& path, const std::string& contents) {
  std::ofstream os(path);
  if (!os) {
    std::cerr << "cannot open output file: " << path << '\n';
    return false;
  }
  os << contents;
  return true;
}

Vector seeded_vector(std::uint64_t seed, std::size_t n) {
  std::mt19937_64 rng(seed);
  Vector v(n);
  for (double& x : v)
    x = 4.0 * (static_cast<double>(rng() >> 11) / static_cast<double>(1ull << 53)) - 2.0;
  return v;
}

}  // namespace

int log_level() {
  static const int level = [] {
    const char* env = std::getenv("AFFINE_DR_LOG");
    return env ? std::atoi(env) : 0;
  }();
  return level;
}

void log_info(const std::string& message) {
  if (log_level() > 0) std::cerr << "[affinedr] " << message << '\n';
}

int cmd_monotone(const std::string& spec, const CommonOptions& opt) {
  ParsedOperator op{AffineRelation::zero(1), std::nullopt, std::nullopt};
  try {
    op = parse_operator(spec);
  } catch (const ParseError& e) {
    std::cerr << "parse error: " << e.what() << '\n';
    return kExitUsage;
  } catch (const Error& e) {
    std::cerr << "bad operator: " << e.what() << '\n';
    return kExitUsage;
  }

  json summary;
  summary["spec"] = spec;
  try {
    if (op.matrix) {
      summary["kind"] = "matrix";
      const bool monotone = is_monotone(*op.matrix);
      summary["monotone"] = monotone;
      summary["paramonotone"] =
          monotone ? json(is_paramonotone_linear(*op.matrix)) : json(nullptr);
      summary["eigenvalue_real_parts"] = eigenvalue_real_parts(*op.matrix);
    } else {
      summary["kind"] = "relation";
      const bool monotone = is_monotone_relation(op.relation);
      summary["monotone"] = monotone;
      summary["paramonotone"] =
          monotone ? json(is_paramonotone_relation(op.relation)) : json(nullptr);
    }
    if (op.tridiag) {
      const TridiagToeplitz& t = *op.tridiag;
      summary["tridiag_threshold"] =
          std::fabs(t.alpha + t.gamma) * std::cos(M_PI / static_cast<double>(t.n + 1));
    }
  } catch (const Error& e) {
    std::cerr << "error: " << e.what() << '\n';
    return kExitInfeasible;
  }
  print_summary(summary, opt.format);
  return kExitOk;
}

int cmd_dr(const DrOptions& opt) {
  ParsedOperator a{AffineRelation::zero(1), std::nullopt, std::nullopt};
  ParsedOperator b{AffineRelation::zero(1), std::nullopt, std::nullopt};
  Vector x0;
  try {
    a = parse_operator(opt.a_spec);
    b = parse_operator(opt.b_spec);
    if (opt.x0 == "random") {
      const std::size_t dim = opt.dim > 0 ? opt.dim : a.relation.dim();
      x0 = seeded_vector(opt.seed, dim);
    } else {
      x0 = parse_vector(opt.x0);
    }
  } catch (const ParseError& e) {
    std::cerr << "parse error: " << e.what() << '\n';
    return kExitUsage;
  } catch (const Error& e) {
    std::cerr << "bad operator: " << e.what() << '\n';
    return kExitUsage;
  }
  if (a.relation.dim() != b.relation.dim() || x0.size() != a.relation.dim()) {
    std::cerr << "dimension mismatch between A, B and x0\n";
    return kExitUsage;
  }

  json summary;
  summary["dim"] = a.relation.dim();
  try {
    const IterationTrace trace = run_dr(a.relation, b.relation, x0, opt.max_iter, opt.tol);
    const AffineMap t = dr_operator(a.relation, b.relation);

    summary["iterations"] = trace.residuals.size();
    summary["final_residual"] =
        trace.residuals.empty() ? 0.0 : trace.residuals.back();
    summary["fitted_rate"] =
        trace.fitted_rate ? json(*trace.fitted_rate) : json(nullptr);
    summary["spectral_rate"] = spectral_rate(t);

    const bool paramonotone_pair = is_monotone_relation(a.relation) &&
                                   is_monotone_relation(b.relation) &&
                                   is_paramonotone_relation(a.relation) &&
                                   is_paramonotone_relation(b.relation);
    summary["paramonotone_pair"] = paramonotone_pair;
    if (paramonotone_pair) {
      const FixDecomposition fd = fix_decomposition_check(a.relation, b.relation);
      summary["fix_equals_z_plus_k"] = fd.equal;
      summary["k_perp_z"] = fd.k_perp_z;
      const ShadowPredicate sp = shadow_limit_predicate(a.relation, b.relation);
      summary["predicts_shadow_to_pz"] = sp.predicts_shadow_to_pz;
    } else {
      summary["fix_equals_z_plus_k"] = nullptr;
      summary["k_perp_z"] = nullptr;
      summary["predicts_shadow_to_pz"] = false;
    }
    summary["shadow_limit"] = trace.shadows.back();
    summary["dist_shadow_to_pz"] =
        trace.dist_shadow_to_pz.empty() ? json(nullptr) : json(trace.dist_shadow_to_pz.back());

    if (!opt.out.empty()) {
      std::ostringstream os;
      trace.write_csv(os);
      if (!write_file(opt.out, os.str())) return kExitUsage;
      log_info("trace written to " + opt.out);
    }
  } catch (const NoSolution& e) {
    std::cerr << "infeasible: " << e.what() << '\n';
    return kExitInfeasible;
  } catch (const Error& e) {
    std::cerr << "error: " << e.what() << '\n';
    return kExitInfeasible;
  }
  print_summary(summary, opt.format);
  return kExitOk;
}

int cmd_poisson(const PoissonOptions& opt) {
  std::optional<PoissonProblem> problem;
  try {
    if (!opt.input.empty()) {
      std::ifstream is(opt.input);
      if (!is) {
        std::cerr << "cannot open input file: " << opt.input << '\n';
        return kExitUsage;
      }
      std::stringstream buffer;
      buffer << is.rdbuf();
      problem = PoissonProblem::parse(buffer.str());
    } else {
      if (opt.n < 2) {
        std::cerr << "need --input or --n >= 2\n";
        return kExitUsage;
      }
      PoissonProblem p = PoissonProblem::zero(opt.n);
      std::fill(p.f.begin(), p.f.end(), opt.f_const);
      problem = std::move(p);
    }
  } catch (const ParseError& e) {
    std::cerr << "parse error: " << e.what() << '\n';
    return kExitUsage;
  }

  json summary;
  summary["n"] = problem->n;
  PoissonSolution sol;
  int exit_code = kExitOk;
  try {
    sol = solve_poisson_dr(*problem, opt.tol, opt.max_iter);
  } catch (const MaxIterExceeded& e) {
    log_info(e.what());
    sol = e.best;
    exit_code = kExitInfeasible;
    summary["max_iter_exceeded"] = true;
  }

  const Vector direct = solve_poisson_direct(*problem);
  summary["iterations"] = sol.iterations;
  summary["residual"] = sol.residual;
  summary["direct_solve_agreement"] = norm(sub(sol.solution, direct));
  summary["fitted_rate"] =
      sol.trace.fitted_rate ? json(*sol.trace.fitted_rate) : json(nullptr);

  if (!opt.out.empty()) {
    std::ostringstream os;
    const std::size_t n = problem->n;
    for (std::size_t i = 0; i < n; ++i) {
      for (std::size_t j = 0; j < n; ++j) {
        if (j > 0) os << ' ';
        os << format_double(sol.solution[i * n + j]);
      }
      os << '\n';
    }
    if (!write_file(opt.out, os.str())) return kExitUsage;
    log_info("solution grid written to " + opt.out);
  }
  if (!opt.trace_path.empty()) {
    std::ostringstream os;
    sol.trace.write_csv(os);
    if (!write_file(opt.trace_path, os.str())) return kExitUsage;
  }
  print_summary(summary, opt.format);
  return exit_code;
}

int cmd_toeplitz_inverse(const ToeplitzOptions& opt) {
  InverseMethod method = InverseMethod::Auto;
  if (opt.method == "closed")
    method = InverseMethod::Closed;
  else if (opt.method == "recurrence")
    method = InverseMethod::Recurrence;
  else if (opt.method == "triangular")
    method = InverseMethod::Triangular;
  else if (opt.method != "auto") {
    std::cerr << "unknown method '" << opt.method << "'\n";
    return kExitUsage;
  }

  try {
    const TridiagToeplitz t(opt.alpha, opt.beta, opt.gamma, opt.n);
    const DenseMatrix inv = invert_tridiag(t, method);

    // Cross-check every applicable route, including the dense LU oracle.
    std::vector<DenseMatrix> routes{dense_inverse(to_dense(t))};
    if (t.alpha * t.gamma == 0.0) {
      routes.push_back(invert_triangular_case(t));
    } else {
      routes.push_back(invert_closed_form(t));
      routes.push_back(invert_recurrence(t));
    }
    double discrepancy = 0.0;
    for (const DenseMatrix& r : routes) discrepancy = std::max(discrepancy, max_abs_diff(inv, r));

    json summary;
    summary["alpha"] = opt.alpha;
    summary["beta"] = opt.beta;
    summary["gamma"] = opt.gamma;
    summary["n"] = opt.n;
    summary["method"] = opt.method;
    summary["cross_method_max_discrepancy"] = discrepancy;

    std::ostringstream os;
    write_matrix_text(os, inv);
    if (!opt.out.empty()) {
      if (!write_file(opt.out, os.str())) return kExitUsage;
      print_summary(summary, opt.format);
    } else {
      std::cout << os.str();
      std::cerr << "cross_method_max_discrepancy " << format_double(discrepancy) << '\n';
    }
    return kExitOk;
  } catch (const SingularMatrix& e) {
    std::cerr << "singular: " << e.what() << '\n';
    return kExitInfeasible;
  } catch (const Error& e) {
    std::cerr << "error: " << e.what() << '\n';
    return kExitInfeasible;
  }
}

}  // namespace affinedr::cli
