#include "affinedr/linalg.hpp"

#include <algorithm>
#include <cmath>
#include <complex>
#include <cstddef>
#include <numeric>

namespace affinedr {

namespace {

constexpr double kTiny = 1e-300;

}  // namespace

LuFactors lu_factor(const DenseMatrix& a) {
  if (!a.is_square()) throw WrongSize("lu_factor: matrix not square");
  const std::size_t n = a.rows();
  LuFactors f{a, std::vector<std::size_t>(n)};
  std::iota(f.perm.begin(), f.perm.end(), std::size_t{0});
  const double pivot_floor = 1e-12 * a.max_abs() + kTiny;

  DenseMatrix& lu = f.lu;
  for (std::size_t k = 0; k < n; ++k) {
    std::size_t p = k;
    for (std::size_t i = k + 1; i < n; ++i)
      if (std::fabs(lu(i, k)) > std::fabs(lu(p, k))) p = i;
    if (std::fabs(lu(p, k)) <= pivot_floor)
      throw SingularMatrix("lu_factor: pivot below threshold at column " + std::to_string(k));
    if (p != k) {
      for (std::size_t j = 0; j < n; ++j) std::swap(lu(p, j), lu(k, j));
      std::swap(f.perm[p], f.perm[k]);
    }
    const double inv_piv = 1.0 / lu(k, k);
    for (std::size_t i = k + 1; i < n; ++i) {
      const double m = lu(i, k) * inv_piv;
      lu(i, k) = m;
      if (m == 0.0) continue;
      for (std::size_t j = k + 1; j < n; ++j) lu(i, j) -= m * lu(k, j);
    }
  }
  return f;
}

Vector lu_solve(const LuFactors& f, const Vector& b) {
  const std::size_t n = f.lu.rows();
  if (b.size() != n) throw WrongSize("lu_solve: size mismatch");
  Vector x(n);
  for (std::size_t i = 0; i < n; ++i) x[i] = b[f.perm[i]];
  for (std::size_t i = 1; i < n; ++i) {
    double s = x[i];
    for (std::size_t j = 0; j < i; ++j) s -= f.lu(i, j) * x[j];
    x[i] = s;
  }
  for (std::size_t ii = n; ii-- > 0;) {
    double s = x[ii];
    for (std::size_t j = ii + 1; j < n; ++j) s -= f.lu(ii, j) * x[j];
    x[ii] = s / f.lu(ii, ii);
  }
  return x;
}

Vector solve_dense(const DenseMatrix& a, const Vector& b) {
  return lu_solve(lu_factor(a), b);
}

DenseMatrix dense_inverse(const DenseMatrix& a) {
  const std::size_t n = a.rows();
  const LuFactors f = lu_factor(a);
  DenseMatrix inv(n, n);
  Vector e(n, 0.0);
  for (std::size_t j = 0; j < n; ++j) {
    e[j] = 1.0;
    const Vector col = lu_solve(f, e);
    e[j] = 0.0;
    for (std::size_t i = 0; i < n; ++i) inv(i, j) = col[i];
  }
  return inv;
}

Svd svd_jacobi(const DenseMatrix& a) {
  const std::size_t m = a.rows(), n = a.cols();
  DenseMatrix b = a;
  DenseMatrix v = DenseMatrix::identity(n);

  // One-sided Jacobi: rotate column pairs until all are mutually orthogonal.
  const int max_sweeps = 60;
  for (int sweep = 0; sweep < max_sweeps; ++sweep) {
    bool converged = true;
    for (std::size_t p = 0; p + 1 < n; ++p) {
      for (std::size_t q = p + 1; q < n; ++q) {
        double app = 0.0, aqq = 0.0, apq = 0.0;
        for (std::size_t i = 0; i < m; ++i) {
          app += b(i, p) * b(i, p);
          aqq += b(i, q) * b(i, q);
          apq += b(i, p) * b(i, q);
        }
        const double scale = std::sqrt(app * aqq);
        if (scale <= kTiny || std::fabs(apq) <= 1e-15 * scale) continue;
        converged = false;
        const double zeta = (aqq - app) / (2.0 * apq);
        const double t = (zeta >= 0.0 ? 1.0 : -1.0) / (std::fabs(zeta) + std::sqrt(1.0 + zeta * zeta));
        const double c = 1.0 / std::sqrt(1.0 + t * t);
        const double s = c * t;
        for (std::size_t i = 0; i < m; ++i) {
          const double bp = b(i, p), bq = b(i, q);
          b(i, p) = c * bp - s * bq;
          b(i, q) = s * bp + c * bq;
        }
        for (std::size_t i = 0; i < n; ++i) {
          const double vp = v(i, p), vq = v(i, q);
          v(i, p) = c * vp - s * vq;
          v(i, q) = s * vp + c * vq;
        }
      }
    }
    if (converged) break;
  }

  Svd out;
  out.sigma.resize(n);
  for (std::size_t j = 0; j < n; ++j) {
    double s = 0.0;
    for (std::size_t i = 0; i < m; ++i) s += b(i, j) * b(i, j);
    out.sigma[j] = std::sqrt(s);
  }
  std::vector<std::size_t> order(n);
  std::iota(order.begin(), order.end(), std::size_t{0});
  std::sort(order.begin(), order.end(),
            [&](std::size_t i, std::size_t j) { return out.sigma[i] > out.sigma[j]; });

  Svd sorted;
  sorted.sigma.resize(n);
  sorted.u = DenseMatrix(m, n);
  sorted.v = DenseMatrix(n, n);
  for (std::size_t k = 0; k < n; ++k) {
    const std::size_t j = order[k];
    sorted.sigma[k] = out.sigma[j];
    const double inv = out.sigma[j] > kTiny ? 1.0 / out.sigma[j] : 0.0;
    for (std::size_t i = 0; i < m; ++i) sorted.u(i, k) = b(i, j) * inv;
    for (std::size_t i = 0; i < n; ++i) sorted.v(i, k) = v(i, j);
  }
  return sorted;
}

Vector least_squares_solution(const DenseMatrix& a, const Vector& b) {
  if (b.size() != a.rows()) throw WrongSize("least_squares_solution: size mismatch");
  const Svd svd = svd_jacobi(a);
  const double smax = svd.sigma.empty() ? 0.0 : svd.sigma.front();
  const double thresh = kRankTol * smax;
  Vector x(a.cols(), 0.0);
  for (std::size_t k = 0; k < svd.sigma.size(); ++k) {
    if (svd.sigma[k] <= thresh || svd.sigma[k] <= kTiny) break;
    double ub = 0.0;
    for (std::size_t i = 0; i < a.rows(); ++i) ub += svd.u(i, k) * b[i];
    const double coef = ub / svd.sigma[k];
    for (std::size_t i = 0; i < a.cols(); ++i) x[i] += coef * svd.v(i, k);
  }
  return x;
}

std::vector<Vector> orthonormalize(const std::vector<Vector>& vectors) {
  std::vector<Vector> basis;
  if (vectors.empty()) return basis;
  const std::size_t n = vectors.front().size();
  double max_norm = 0.0;
  for (const Vector& v : vectors) {
    if (v.size() != n) throw WrongSize("orthonormalize: mixed dimensions");
    max_norm = std::max(max_norm, norm(v));
  }
  const double drop = 1e-10 * (max_norm + 1.0);
  for (const Vector& v : vectors) {
    Vector w = v;
    for (int pass = 0; pass < 2; ++pass)
      for (const Vector& q : basis) axpy(-dot(q, w), q, w);
    const double wn = norm(w);
    if (wn < drop) continue;
    basis.push_back(scale(1.0 / wn, w));
  }
  return basis;
}

std::vector<Vector> null_space(const DenseMatrix& a) {
  const Svd svd = svd_jacobi(a);
  const double smax = svd.sigma.empty() ? 0.0 : svd.sigma.front();
  const double thresh = kRankTol * (1.0 + smax);
  std::vector<Vector> basis;
  for (std::size_t k = 0; k < svd.sigma.size(); ++k) {
    if (svd.sigma[k] > thresh) continue;
    basis.push_back(svd.v.column(k));
  }
  return basis;
}

namespace {

void check_symmetric(const DenseMatrix& s) {
  if (!s.is_square()) throw WrongSize("symmetric eigensolver: matrix not square");
  double asym = 0.0;
  for (std::size_t i = 0; i < s.rows(); ++i)
    for (std::size_t j = i + 1; j < s.cols(); ++j)
      asym = std::max(asym, std::fabs(s(i, j) - s(j, i)));
  if (asym > 1e-9 * s.max_abs() + kTiny)
    throw NotSymmetric("symmetric eigensolver: asymmetry " + std::to_string(asym));
}

}  // namespace

SymmetricEigen symmetric_eigen(const DenseMatrix& s) {
  check_symmetric(s);
  const std::size_t n = s.rows();
  DenseMatrix a = symmetric_part(s);  // scrub roundoff-level asymmetry
  DenseMatrix v = DenseMatrix::identity(n);

  // Cyclic Jacobi.
  const int max_sweeps = 64;
  for (int sweep = 0; sweep < max_sweeps; ++sweep) {
    double off = 0.0;
    for (std::size_t p = 0; p + 1 < n; ++p)
      for (std::size_t q = p + 1; q < n; ++q) off += a(p, q) * a(p, q);
    double diag = 0.0;
    for (std::size_t p = 0; p < n; ++p) diag += a(p, p) * a(p, p);
    if (off <= 1e-30 * (diag + off) + kTiny) break;

    for (std::size_t p = 0; p + 1 < n; ++p) {
      for (std::size_t q = p + 1; q < n; ++q) {
        const double apq = a(p, q);
        if (std::fabs(apq) <= kTiny) continue;
        const double theta = (a(q, q) - a(p, p)) / (2.0 * apq);
        const double t = (theta >= 0.0 ? 1.0 : -1.0) /
                         (std::fabs(theta) + std::sqrt(1.0 + theta * theta));
        const double c = 1.0 / std::sqrt(1.0 + t * t);
        const double sn = c * t;
        for (std::size_t k = 0; k < n; ++k) {
          const double akp = a(k, p), akq = a(k, q);
          a(k, p) = c * akp - sn * akq;
          a(k, q) = sn * akp + c * akq;
        }
        for (std::size_t k = 0; k < n; ++k) {
          const double apk = a(p, k), aqk = a(q, k);
          a(p, k) = c * apk - sn * aqk;
          a(q, k) = sn * apk + c * aqk;
        }
        for (std::size_t k = 0; k < n; ++k) {
          const double vkp = v(k, p), vkq = v(k, q);
          v(k, p) = c * vkp - sn * vkq;
          v(k, q) = sn * vkp + c * vkq;
        }
      }
    }
  }

  SymmetricEigen out;
  out.values.resize(n);
  for (std::size_t i = 0; i < n; ++i) out.values[i] = a(i, i);
  std::vector<std::size_t> order(n);
  std::iota(order.begin(), order.end(), std::size_t{0});
  std::sort(order.begin(), order.end(),
            [&](std::size_t i, std::size_t j) { return out.values[i] < out.values[j]; });
  Vector sorted_vals(n);
  DenseMatrix sorted_vecs(n, n);
  for (std::size_t k = 0; k < n; ++k) {
    sorted_vals[k] = out.values[order[k]];
    for (std::size_t i = 0; i < n; ++i) sorted_vecs(i, k) = v(i, order[k]);
  }
  out.values = std::move(sorted_vals);
  out.vectors = std::move(sorted_vecs);
  return out;
}

Vector symmetric_eigenvalues(const DenseMatrix& s) { return symmetric_eigen(s).values; }

namespace {

using Complex = std::complex<double>;

struct ComplexMatrix {
  std::size_t n = 0;
  std::vector<Complex> a;
  explicit ComplexMatrix(std::size_t n) : n(n), a(n * n) {}
  Complex& operator()(std::size_t i, std::size_t j) { return a[i * n + j]; }
  Complex operator()(std::size_t i, std::size_t j) const { return a[i * n + j]; }
};

// Reduce to upper Hessenberg form by Householder reflectors.
void hessenberg_reduce(ComplexMatrix& h) {
  const std::size_t n = h.n;
  if (n < 3) return;
  std::vector<Complex> w(n);
  for (std::size_t k = 0; k + 2 < n; ++k) {
    double colnorm = 0.0;
    for (std::size_t i = k + 1; i < n; ++i) colnorm += std::norm(h(i, k));
    colnorm = std::sqrt(colnorm);
    if (colnorm <= kTiny) continue;

    Complex x0 = h(k + 1, k);
    const Complex phase = std::abs(x0) > kTiny ? x0 / std::abs(x0) : Complex(1.0, 0.0);
    const Complex alpha = -phase * colnorm;

    // v = x - alpha e1, normalized
    double vnorm = 0.0;
    for (std::size_t i = k + 1; i < n; ++i) w[i] = h(i, k);
    w[k + 1] -= alpha;
    for (std::size_t i = k + 1; i < n; ++i) vnorm += std::norm(w[i]);
    vnorm = std::sqrt(vnorm);
    if (vnorm <= kTiny) continue;
    for (std::size_t i = k + 1; i < n; ++i) w[i] /= vnorm;

    // H := (I - 2 w w^H) H
    for (std::size_t j = k; j < n; ++j) {
      Complex s(0.0, 0.0);
      for (std::size_t i = k + 1; i < n; ++i) s += std::conj(w[i]) * h(i, j);
      s *= 2.0;
      for (std::size_t i = k + 1; i < n; ++i) h(i, j) -= s * w[i];
    }
    // H := H (I - 2 w w^H)
    for (std::size_t i = 0; i < n; ++i) {
      Complex s(0.0, 0.0);
      for (std::size_t j = k + 1; j < n; ++j) s += h(i, j) * w[j];
      s *= 2.0;
      for (std::size_t j = k + 1; j < n; ++j) h(i, j) -= s * std::conj(w[j]);
    }
  }
}

Complex wilkinson_shift(const ComplexMatrix& h, std::size_t hi) {
  const Complex a = h(hi - 1, hi - 1), b = h(hi - 1, hi);
  const Complex c = h(hi, hi - 1), d = h(hi, hi);
  const Complex tr2 = 0.5 * (a - d);
  const Complex disc = std::sqrt(tr2 * tr2 + b * c);
  const Complex m1 = d + tr2 + disc;
  const Complex m2 = d + tr2 - disc;
  return std::abs(m1 - d) < std::abs(m2 - d) ? m1 : m2;
}

}  // namespace

std::vector<Complex> eigenvalues(const DenseMatrix& m) {
  if (!m.is_square()) throw WrongSize("eigenvalues: matrix not square");
  const std::size_t n = m.rows();
  std::vector<Complex> lam(n);
  if (n == 0) return lam;
  if (n == 1) {
    lam[0] = m(0, 0);
    return lam;
  }

  ComplexMatrix h(n);
  for (std::size_t i = 0; i < n; ++i)
    for (std::size_t j = 0; j < n; ++j) h(i, j) = m(i, j);
  hessenberg_reduce(h);

  // Shifted QR on the Hessenberg form via Givens rotations.
  const double eps = 1e-15;
  const std::size_t cap = 100 * n * n;
  std::size_t iters = 0;
  std::size_t hi = n - 1;
  std::vector<Complex> gc(n), gs(n);

  while (hi > 0) {
    if (std::abs(h(hi, hi - 1)) <=
        eps * (std::abs(h(hi - 1, hi - 1)) + std::abs(h(hi, hi))) + kTiny) {
      h(hi, hi - 1) = Complex(0.0, 0.0);
      --hi;
      continue;
    }
    std::size_t lo = hi;
    while (lo > 0 && std::abs(h(lo, lo - 1)) >
                         eps * (std::abs(h(lo - 1, lo - 1)) + std::abs(h(lo, lo))) + kTiny)
      --lo;

    if (++iters > cap) throw NoConvergence("eigenvalues: QR iteration cap exceeded");

    const Complex mu = wilkinson_shift(h, hi);
    for (std::size_t k = lo; k <= hi; ++k) h(k, k) -= mu;

    // QR factor the shifted block, then form RQ.
    for (std::size_t k = lo; k < hi; ++k) {
      const Complex f = h(k, k), g = h(k + 1, k);
      const double r = std::sqrt(std::norm(f) + std::norm(g));
      if (r <= kTiny) {
        gc[k] = Complex(1.0, 0.0);
        gs[k] = Complex(0.0, 0.0);
        continue;
      }
      gc[k] = f / r;
      gs[k] = g / r;
      for (std::size_t j = k; j <= hi; ++j) {
        const Complex t1 = h(k, j), t2 = h(k + 1, j);
        h(k, j) = std::conj(gc[k]) * t1 + std::conj(gs[k]) * t2;
        h(k + 1, j) = -gs[k] * t1 + gc[k] * t2;
      }
    }
    for (std::size_t k = lo; k < hi; ++k) {
      const std::size_t top = lo;
      for (std::size_t i = top; i <= std::min(k + 2, hi); ++i) {
        const Complex t1 = h(i, k), t2 = h(i, k + 1);
        h(i, k) = t1 * gc[k] + t2 * gs[k];
        h(i, k + 1) = -t1 * std::conj(gs[k]) + t2 * std::conj(gc[k]);
      }
    }
    for (std::size_t k = lo; k <= hi; ++k) h(k, k) += mu;
  }

  for (std::size_t i = 0; i < n; ++i) lam[i] = h(i, i);
  std::sort(lam.begin(), lam.end(), [](const Complex& x, const Complex& y) {
    if (x.real() != y.real()) return x.real() < y.real();
    return x.imag() < y.imag();
  });
  return lam;
}

double operator_norm(const DenseMatrix& a) {
  if (a.rows() == 0 || a.cols() == 0) return 0.0;
  const std::size_t n = a.cols();
  // Fixed pseudo-random start so the estimate is deterministic.
  Vector x(n);
  std::uint64_t state = 0x9e3779b97f4a7c15ull;
  for (std::size_t i = 0; i < n; ++i) {
    state = state * 6364136223846793005ull + 1442695040888963407ull;
    x[i] = 0.5 + static_cast<double>(state >> 11) / static_cast<double>(1ull << 53);
  }
  double nx = norm(x);
  if (nx <= kTiny) return 0.0;
  for (double& v : x) v /= nx;

  double rho = 0.0;
  for (int it = 0; it < 300; ++it) {
    Vector y = a.apply_transpose(a.apply(x));
    const double r = dot(x, y);
    const double ny = norm(y);
    if (ny <= kTiny) return 0.0;
    for (std::size_t i = 0; i < n; ++i) x[i] = y[i] / ny;
    if (it > 8 && std::fabs(r - rho) <= 1e-14 * std::max(1.0, std::fabs(r))) {
      rho = r;
      break;
    }
    rho = r;
  }
  return std::sqrt(std::max(0.0, rho));
}

}  // namespace affinedr
