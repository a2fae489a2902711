#include "affinedr/dr.hpp"

#include <cmath>
#include <cstdint>
#include <cstdio>
#include <ostream>

#include "affinedr/linalg.hpp"

namespace affinedr {

namespace {

DenseMatrix matrix_power(const DenseMatrix& m, std::size_t n) {
  if (n == 0) return DenseMatrix::identity(m.rows());
  if (n == 1) return m;
  const DenseMatrix half = matrix_power(m, n / 2);
  const DenseMatrix even = half * half;
  return n % 2 == 0 ? even : even * m;
}

void format_value(std::string& out, double v) {
  char buf[40];
  std::snprintf(buf, sizeof buf, "%.17g", v);
  out += buf;
}

double uniform(std::uint64_t& state) {
  state = state * 6364136223846793005ull + 1442695040888963407ull;
  return static_cast<double>(state >> 11) / static_cast<double>(1ull << 53);
}

}  // namespace

void IterationTrace::write_csv(std::ostream& os) const {
  std::string out = "iter,residual,dist_to_fix,dist_shadow_to_pz\n";
  for (std::size_t k = 0; k < points.size(); ++k) {
    out += std::to_string(k);
    out += ',';
    if (k < residuals.size())
      format_value(out, residuals[k]);
    else
      out += "nan";
    out += ',';
    if (k < dist_to_fix.size())
      format_value(out, dist_to_fix[k]);
    else
      out += "nan";
    out += ',';
    if (k < dist_shadow_to_pz.size())
      format_value(out, dist_shadow_to_pz[k]);
    else
      out += "nan";
    out += '\n';
  }
  os << out;
}

std::optional<AffineSubspace> fixed_point_set(const AffineMap& t) {
  const std::size_t n = t.dim();
  const DenseMatrix residual_map = DenseMatrix::identity(n) - t.linear_part();
  const Vector a = least_squares_solution(residual_map, t.offset());
  if (norm(sub(residual_map.apply(a), t.offset())) > 1e-8 * (1.0 + norm(t.offset())))
    return std::nullopt;
  return AffineSubspace(a, null_space(residual_map));
}

Vector displacement_vector(const AffineMap& t) {
  const std::size_t n = t.dim();
  const DenseMatrix residual_map = DenseMatrix::identity(n) - t.linear_part();
  const Vector a = least_squares_solution(residual_map, t.offset());
  if (norm(sub(residual_map.apply(a), t.offset())) > kResidualTol * (1.0 + norm(t.offset())))
    throw NoFixedPoint("displacement_vector: Fix T is empty");
  return a;
}

Vector iterate_closed_form(const AffineMap& t, const Vector& x, std::size_t n) {
  if (n == 0) return x;
  const std::optional<AffineSubspace> fix = fixed_point_set(t);
  if (fix) {
    const Vector a = displacement_vector(t);
    const DenseMatrix ln = matrix_power(t.linear_part(), n);
    return add(a, ln.apply(sub(x, a)));
  }
  return t.power(n)(x);
}

AffineMap project_onto_fix(const AffineMap& t) {
  const Vector a = displacement_vector(t);
  const std::size_t n = t.dim();
  const DenseMatrix residual_map = DenseMatrix::identity(n) - t.linear_part();
  const AffineSubspace fix_l = AffineSubspace(Vector(n, 0.0), null_space(residual_map));
  const DenseMatrix p = fix_l.parallel_projector();
  return AffineMap(p, sub(a, p.apply(a)));
}

bool is_asymptotically_regular(const AffineMap& t) {
  displacement_vector(t);  // enforce the nonempty fixed-point precondition
  const std::size_t n = t.dim();

  // Unit-circle spectrum is allowed only at 1.
  for (const auto& lam : eigenvalues(t.linear_part())) {
    if (std::abs(lam) < 1.0 - 1e-10) continue;
    if (std::abs(lam - std::complex<double>(1.0, 0.0)) > 1e-8) return false;
  }

  // Empirical confirmation on sample starting points.
  std::uint64_t state = 0xd1b54a32d192ed03ull;
  for (int trial = 0; trial < 5; ++trial) {
    Vector y(n);
    for (std::size_t i = 0; i < n; ++i) y[i] = 2.0 * uniform(state) - 1.0;
    // y plays the role of x0 - a; residuals of T collapse to those of L.
    bool decayed = false;
    for (int step = 0; step < 10000; ++step) {
      const Vector ly = t.linear_part().apply(y);
      if (norm(sub(y, ly)) < 1e-6) {
        decayed = true;
        break;
      }
      y = ly;
    }
    if (!decayed) return false;
  }
  return true;
}

AffineMap dr_operator(const AffineRelation& a, const AffineRelation& b) {
  if (a.dim() != b.dim()) throw WrongSize("dr_operator: dimension mismatch");
  const AffineMap id = AffineMap::identity(a.dim());
  const AffineMap ja = resolvent(a);
  const AffineMap jb = resolvent(b);
  const AffineMap ra = 2.0 * ja - id;
  const AffineMap rb = 2.0 * jb - id;
  const AffineMap t = id - ja + jb.compose(ra);
  const AffineMap t_half = 0.5 * (id + rb.compose(ra));
  const double gap = max_abs_diff(t.linear_part(), t_half.linear_part()) +
                     norm(sub(t.offset(), t_half.offset()));
  if (gap > 1e-12 * (1.0 + t.linear_part().max_abs() + norm(t.offset())))
    throw Error("dr_operator: the two operator forms disagree");
  return t;
}

IterationTrace run_dr(const AffineRelation& a, const AffineRelation& b, const Vector& x0,
                      std::size_t max_iter, double tol) {
  const AffineMap t = dr_operator(a, b);
  const std::optional<AffineSubspace> fix = fixed_point_set(t);
  if (!fix) throw NoSolution("run_dr: T has no fixed points");
  const AffineMap ja = resolvent(a);
  const Vector fix_limit = project_onto_fix(t)(x0);

  const DualPair pair = attouch_thera(a, b);
  std::optional<Vector> pz_x0;
  if (pair.z) pz_x0 = pair.z->project(x0);

  IterationTrace trace;
  auto record = [&](const Vector& x) {
    trace.points.push_back(x);
    const Vector shadow = ja(x);
    trace.dist_to_fix.push_back(norm(sub(x, fix_limit)));
    if (pz_x0) trace.dist_shadow_to_pz.push_back(norm(sub(shadow, *pz_x0)));
    trace.shadows.push_back(std::move(shadow));
  };

  const double stop = tol * (1.0 + norm(x0));
  record(x0);
  Vector x = x0;
  if (norm(sub(x, t(x))) > stop) {
    for (std::size_t iter = 0; iter < max_iter; ++iter) {
      const Vector xn = t(x);
      const double r = norm(sub(x, xn));
      trace.residuals.push_back(r);
      record(xn);
      x = xn;
      if (r <= stop) break;
    }
  }
  trace.fitted_rate = estimate_linear_rate(trace);
  return trace;
}

std::optional<double> estimate_linear_rate(const IterationTrace& trace) {
  const Vector& d = trace.dist_to_fix;
  if (d.size() < 10) return std::nullopt;
  const double floor = 1e-14 * (1.0 + d.front());
  std::size_t m = 0;
  while (m < d.size() && d[m] > floor) ++m;
  if (m < 10) return std::nullopt;  // hit the floor too early

  const std::size_t start = m / 3;
  double sx = 0.0, sy = 0.0, sxx = 0.0, sxy = 0.0;
  const double count = static_cast<double>(m - start);
  for (std::size_t k = start; k < m; ++k) {
    const double xk = static_cast<double>(k);
    const double yk = std::log(d[k]);
    sx += xk;
    sy += yk;
    sxx += xk * xk;
    sxy += xk * yk;
  }
  const double denom = count * sxx - sx * sx;
  if (denom <= 0.0) return std::nullopt;
  const double slope = (count * sxy - sx * sy) / denom;
  if (slope >= 0.0) return std::nullopt;  // non-decreasing
  return std::exp(slope);
}

double spectral_rate(const AffineMap& t) {
  const std::optional<AffineSubspace> fix = fixed_point_set(t);
  if (!fix) throw NoFixedPoint("spectral_rate: Fix T is empty");
  const std::size_t n = t.dim();
  const DenseMatrix id = DenseMatrix::identity(n);
  const AffineSubspace fix_l(Vector(n, 0.0), null_space(id - t.linear_part()));
  if (fix_l.dim() == n) return 0.0;
  const DenseMatrix q = id - fix_l.parallel_projector();
  const DenseMatrix restricted = q * t.linear_part() * q;

  if (n <= 64) {
    double rate = 0.0;
    for (const auto& lam : eigenvalues(restricted)) rate = std::max(rate, std::abs(lam));
    return rate;
  }

  // Large case: long-run growth factor of the restricted power iteration.
  std::uint64_t state = 0x6a09e667f3bcc909ull;
  Vector y(n);
  for (std::size_t i = 0; i < n; ++i) y[i] = 2.0 * uniform(state) - 1.0;
  y = q.apply(y);
  double log_growth = 0.0;
  const int burn = 200, window = 400;
  for (int step = 0; step < burn + window; ++step) {
    Vector z = restricted.apply(y);
    const double nz = norm(z);
    if (nz <= 1e-280) return 0.0;
    if (step >= burn) log_growth += std::log(nz);
    for (std::size_t i = 0; i < n; ++i) y[i] = z[i] / nz;
  }
  return std::exp(log_growth / window);
}

bool feasibility_translation_check(const AffineSubspace& u, const AffineSubspace& v,
                                   const Vector& w, const Vector& x, std::size_t n) {
  const AffineRelation a0 = AffineRelation::normal_cone(u);
  const AffineRelation b0 = AffineRelation::normal_cone(v);
  const AffineRelation aw = AffineRelation::normal_cone(u.translate(w));
  const AffineRelation bw = AffineRelation::normal_cone(v.translate(w));

  const Vector lhs = dr_operator(aw, bw).power(n)(x);
  const Vector rhs = add(dr_operator(a0, b0).power(n)(sub(x, w)), w);
  return norm(sub(lhs, rhs)) <= 1e-9 * (1.0 + norm(x) + norm(w));
}

double friedrichs_cos(const AffineSubspace& u, const AffineSubspace& v) {
  const Vector cosines = principal_cosines(u, v);
  return cosines.empty() ? 0.0 : cosines.back();
}

ParallelSplitting parallel_splitting(const std::vector<AffineRelation>& bs, const Vector& x0,
                                     std::size_t max_iter, double tol) {
  const std::size_t m = bs.size();
  if (m < 2) throw WrongSize("parallel_splitting: need at least two operators");
  const std::size_t n = bs.front().dim();
  for (const AffineRelation& b : bs)
    if (b.dim() != n) throw WrongSize("parallel_splitting: mixed dimensions");
  const std::size_t big = m * n;
  if (x0.size() != big) throw WrongSize("parallel_splitting: x0 must have length m*n");

  // Diagonal subspace {(x, ..., x)} of the product space.
  std::vector<Vector> diag_dirs;
  const double inv_sqrt_m = 1.0 / std::sqrt(static_cast<double>(m));
  for (std::size_t j = 0; j < n; ++j) {
    Vector d(big, 0.0);
    for (std::size_t i = 0; i < m; ++i) d[i * n + j] = inv_sqrt_m;
    diag_dirs.push_back(std::move(d));
  }
  const AffineRelation bold_a =
      AffineRelation::normal_cone(AffineSubspace(Vector(big, 0.0), std::move(diag_dirs)));

  // Product relation, block-major: block i of x pairs with block i of u.
  Vector anchor(2 * big, 0.0);
  std::vector<Vector> dirs;
  for (std::size_t i = 0; i < m; ++i) {
    const AffineSubspace& g = bs[i].graph();
    for (std::size_t j = 0; j < n; ++j) {
      anchor[i * n + j] = g.anchor()[j];
      anchor[big + i * n + j] = g.anchor()[n + j];
    }
    for (const Vector& q : g.basis()) {
      Vector d(2 * big, 0.0);
      for (std::size_t j = 0; j < n; ++j) {
        d[i * n + j] = q[j];
        d[big + i * n + j] = q[n + j];
      }
      dirs.push_back(std::move(d));
    }
  }
  const AffineRelation bold_b(big, AffineSubspace(std::move(anchor), std::move(dirs)));

  ParallelSplitting out{run_dr(bold_a, bold_b, x0, max_iter, tol), Vector(n, 0.0),
                        AffineSubspace::point(Vector(big, 0.0))};

  const Vector& shadow = out.trace.shadows.back();
  for (std::size_t i = 0; i < m; ++i)
    for (std::size_t j = 0; j < n; ++j)
      out.average_limit[j] += shadow[i * n + j] / static_cast<double>(m);

  const DualPair pair = attouch_thera(bold_a, bold_b);
  if (!pair.z) throw NoSolution("parallel_splitting: empty solution set");
  out.z_bold = *pair.z;
  return out;
}

}  // namespace affinedr
