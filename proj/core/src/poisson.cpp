#include "affinedr/poisson.hpp"

#include <algorithm>
#include <cctype>
#include <cmath>
#include <cstdio>
#include <limits>
#include <ostream>

#include "affinedr/kron.hpp"
#include "affinedr/linalg.hpp"

namespace affinedr {

namespace {

void check_side(const Vector& g, std::size_t n, const char* name) {
  if (g.size() != n) throw WrongSize(std::string("PoissonProblem: ") + name + " must have length n");
  if (!all_finite(g)) throw Error(std::string("PoissonProblem: non-finite values on ") + name);
}

/// J of an affine map: (Id + T)^{-1} x = (Id + L)^{-1} (x - b).
AffineMap map_resolvent(const AffineMap& t) {
  const DenseMatrix lj = dense_inverse(DenseMatrix::identity(t.dim()) + t.linear_part());
  return AffineMap(lj, scale(-1.0, lj.apply(t.offset())));
}

struct Token {
  std::string text;
  std::size_t pos;
};

std::vector<Token> lex(const std::string& text) {
  std::vector<Token> tokens;
  std::size_t i = 0;
  while (i < text.size()) {
    if (text[i] == '#') {
      while (i < text.size() && text[i] != '\n') ++i;
      continue;
    }
    if (std::isspace(static_cast<unsigned char>(text[i]))) {
      ++i;
      continue;
    }
    const std::size_t start = i;
    while (i < text.size() && !std::isspace(static_cast<unsigned char>(text[i])) &&
           text[i] != '#')
      ++i;
    tokens.push_back({text.substr(start, i - start), start});
  }
  return tokens;
}

double parse_number(const Token& t) {
  std::size_t used = 0;
  double v = 0.0;
  try {
    v = std::stod(t.text, &used);
  } catch (const std::exception&) {
    throw ParseError("expected a number, got '" + t.text + "'", t.pos);
  }
  if (used != t.text.size()) throw ParseError("trailing characters in number '" + t.text + "'", t.pos);
  return v;
}

}  // namespace

PoissonProblem::PoissonProblem(std::size_t n, Vector f, Vector g_bottom, Vector g_top,
                               Vector g_left, Vector g_right)
    : n(n),
      f(std::move(f)),
      g_bottom(std::move(g_bottom)),
      g_top(std::move(g_top)),
      g_left(std::move(g_left)),
      g_right(std::move(g_right)) {
  if (n < 2) throw WrongSize("PoissonProblem: need n >= 2");
  if (this->f.size() != n * n) throw WrongSize("PoissonProblem: f must have length n^2");
  if (!all_finite(this->f)) throw Error("PoissonProblem: non-finite source samples");
  check_side(this->g_bottom, n, "g_bottom");
  check_side(this->g_top, n, "g_top");
  check_side(this->g_left, n, "g_left");
  check_side(this->g_right, n, "g_right");
}

PoissonProblem PoissonProblem::zero(std::size_t n) {
  return PoissonProblem(n, Vector(n * n, 0.0), Vector(n, 0.0), Vector(n, 0.0), Vector(n, 0.0),
                        Vector(n, 0.0));
}

PoissonProblem PoissonProblem::parse(const std::string& text) {
  const std::vector<Token> tokens = lex(text);
  std::size_t i = 0;
  auto need = [&](const char* what) -> const Token& {
    if (i >= tokens.size())
      throw ParseError(std::string("unexpected end of input, expected ") + what,
                       text.size());
    return tokens[i++];
  };

  const Token& header = need("'n'");
  if (header.text != "n") throw ParseError("expected 'n'", header.pos);
  const double nval = parse_number(need("grid size"));
  if (nval < 2 || nval != std::floor(nval))
    throw ParseError("grid size must be an integer >= 2", tokens[i - 1].pos);
  const std::size_t n = static_cast<std::size_t>(nval);

  Vector f(n * n, 0.0);
  Vector sides[4] = {Vector(n, 0.0), Vector(n, 0.0), Vector(n, 0.0), Vector(n, 0.0)};

  auto parse_payload = [&](Vector& out) {
    const Token& kind = need("'const' or 'values'");
    if (kind.text == "const") {
      const double v = parse_number(need("value"));
      std::fill(out.begin(), out.end(), v);
    } else if (kind.text == "values") {
      for (double& v : out) v = parse_number(need("value"));
    } else {
      throw ParseError("expected 'const' or 'values', got '" + kind.text + "'", kind.pos);
    }
  };

  while (i < tokens.size()) {
    const Token& section = tokens[i++];
    if (section.text == "f") {
      parse_payload(f);
    } else if (section.text == "g") {
      const Token& side = need("side name");
      std::size_t which;
      if (side.text == "bottom")
        which = 0;
      else if (side.text == "top")
        which = 1;
      else if (side.text == "left")
        which = 2;
      else if (side.text == "right")
        which = 3;
      else
        throw ParseError("unknown side '" + side.text + "'", side.pos);
      parse_payload(sides[which]);
    } else {
      throw ParseError("unknown section '" + section.text + "'", section.pos);
    }
  }
  return PoissonProblem(n, std::move(f), std::move(sides[0]), std::move(sides[1]),
                        std::move(sides[2]), std::move(sides[3]));
}

void PoissonProblem::write(std::ostream& os) const {
  auto emit = [&os](const char* head, const Vector& v) {
    os << head << " values";
    char buf[40];
    for (double x : v) {
      std::snprintf(buf, sizeof buf, " %.17g", x);
      os << buf;
    }
    os << '\n';
  };
  os << "n " << n << '\n';
  emit("f", f);
  emit("g bottom", g_bottom);
  emit("g top", g_top);
  emit("g left", g_left);
  emit("g right", g_right);
}

PoissonOperators build_operators(std::size_t n) {
  if (n < 2) throw WrongSize("build_operators: need n >= 2");
  const TridiagToeplitz m(-1.0, 2.0, -1.0, n);
  const DenseMatrix md = to_dense(m);
  const DenseMatrix id = DenseMatrix::identity(n);
  PoissonOperators ops{kronecker(id, md), kronecker(md, id), m};
  const Vector lam = symmetric_part_eigenvalues(m);
  if (lam.front() <= 0.0) throw Error("build_operators: factor not positive definite");
  return ops;
}

Vector assemble_rhs(const PoissonProblem& p) {
  const std::size_t n = p.n;
  const double h2 = p.mesh_width() * p.mesh_width();
  Vector b(n * n);
  for (std::size_t i = 0; i < n; ++i)
    for (std::size_t j = 0; j < n; ++j) {
      double boundary = 0.0;
      if (i == 0) boundary += p.g_bottom[j];
      if (i == n - 1) boundary += p.g_top[j];
      if (j == 0) boundary += p.g_left[i];
      if (j == n - 1) boundary += p.g_right[i];
      b[i * n + j] = h2 * p.f[i * n + j] - boundary;
    }
  return b;
}

HalfStep original_dr_step(const AffineMap& a, const AffineMap& b, const Vector& y) {
  if (a.dim() != b.dim() || y.size() != a.dim())
    throw WrongSize("original_dr_step: dimension mismatch");
  const AffineMap id = AffineMap::identity(a.dim());
  const AffineMap ja = map_resolvent(a);
  const AffineMap jb = map_resolvent(b);

  HalfStep s;
  s.y_half = jb((id - a)(y));
  s.y_next = ja(add(a(y), s.y_half));

  // The resolved forms must satisfy the implicit two-step equations.
  const double tol = 1e-10 * (1.0 + norm(y));
  const Vector r1 = add(sub(add(s.y_half, a(y)), y), b(s.y_half));
  const Vector r2 = add(sub(sub(s.y_next, s.y_half), a(y)), a(s.y_next));
  if (norm(r1) > tol || norm(r2) > tol)
    throw Error("original_dr_step: implicit residual check failed");
  return s;
}

bool change_of_variable_check(const AffineMap& a, const AffineMap& b, const Vector& y0,
                              std::size_t iters) {
  if (iters < 1) throw WrongSize("change_of_variable_check: iters must be >= 1");
  const AffineMap id = AffineMap::identity(a.dim());
  const AffineMap ja = map_resolvent(a);
  const AffineMap jb = map_resolvent(b);
  const AffineMap ra = 2.0 * ja - id;

  // (Id - A) J_A = R_A and A J_A = Id - J_A, entrywise.
  const double scale = 1.0 + a.linear_part().max_abs() + norm(a.offset());
  const AffineMap lhs1 = (id - a).compose(ja);
  const AffineMap lhs2 = a.compose(ja);
  const AffineMap rhs2 = id - ja;
  if (max_abs_diff(lhs1.linear_part(), ra.linear_part()) +
          norm(sub(lhs1.offset(), ra.offset())) >
      1e-12 * scale)
    return false;
  if (max_abs_diff(lhs2.linear_part(), rhs2.linear_part()) +
          norm(sub(lhs2.offset(), rhs2.offset())) >
      1e-12 * scale)
    return false;

  const AffineMap t = id - ja + jb.compose(ra);
  Vector y = y0;
  Vector x = add(y0, a(y0));  // x = (Id + A) y
  for (std::size_t k = 1; k <= iters; ++k) {
    y = original_dr_step(a, b, y).y_next;
    x = t(x);
    const Vector image = add(y, a(y));
    if (norm(sub(x, image)) > 1e-9 * (1.0 + norm(x))) return false;
  }
  return true;
}

PoissonSolution solve_poisson_dr(const PoissonProblem& p, double tol, std::size_t max_iter) {
  const std::size_t n = p.n;
  const PoissonOperators ops = build_operators(n);
  const Vector b = assemble_rhs(p);

  // A = L_right, B = y -> L_up y + b; the resolvents come from the
  // Kronecker structure: J_A = Id (x) J_M, J_B = (J_M (x) Id)(. - b).
  const DenseMatrix jm = resolvent_tridiag(ops.m);
  const DenseMatrix id_small = DenseMatrix::identity(n);
  const AffineMap ja = AffineMap::linear(kronecker(id_small, jm));
  const DenseMatrix jb_lin = kronecker(jm, id_small);
  const AffineMap jb(jb_lin, scale(-1.0, jb_lin.apply(b)));

  const std::size_t big = n * n;
  const AffineMap id = AffineMap::identity(big);
  const AffineMap t = id - ja + jb.compose(2.0 * ja - id);
  const DenseMatrix laplacian = ops.l_right + ops.l_up;

  const AffineMap pfix = project_onto_fix(t);
  Vector x(big, 0.0);
  const Vector fix_limit = pfix(x);
  // Stop when the equation residual certifies both contracts: residual
  // below tol (1 + ||b||) and solution error below 10 tol. The error bound
  // is residual / lambda_min with lambda_min = 2 (2 - 2 cos(pi/(n+1))).
  const double lam_min =
      2.0 * (2.0 - 2.0 * std::cos(M_PI / static_cast<double>(n + 1)));
  const double stop = tol * std::min(1.0 + norm(b), 5.0 * lam_min);

  IterationTrace trace;
  PoissonSolution best;
  best.residual = std::numeric_limits<double>::infinity();

  auto equation_residual = [&](const Vector& y) {
    return norm(add(laplacian.apply(y), b));
  };

  for (std::size_t iter = 0;; ++iter) {
    const Vector shadow = ja(x);
    const double res = equation_residual(shadow);
    trace.points.push_back(x);
    trace.shadows.push_back(shadow);
    trace.dist_to_fix.push_back(norm(sub(x, fix_limit)));
    if (res < best.residual) {
      best.solution = shadow;
      best.residual = res;
      best.iterations = iter;
    }
    if (res <= stop) {
      trace.fitted_rate = estimate_linear_rate(trace);
      best.trace = std::move(trace);
      return best;
    }
    if (iter >= max_iter) break;
    const Vector xn = t(x);
    trace.residuals.push_back(norm(sub(x, xn)));
    x = xn;
  }
  trace.fitted_rate = estimate_linear_rate(trace);
  best.trace = std::move(trace);
  throw MaxIterExceeded("solve_poisson_dr: iteration cap " + std::to_string(max_iter) +
                            " reached with residual " + std::to_string(best.residual),
                        std::move(best));
}

Vector solve_poisson_direct(const PoissonProblem& p) {
  const PoissonOperators ops = build_operators(p.n);
  return solve_dense(ops.l_right + ops.l_up, scale(-1.0, assemble_rhs(p)));
}

}  // namespace affinedr
