#include "affinedr/tridiag.hpp"

#include <algorithm>
#include <cmath>
#include <complex>
#include <limits>
#include <string>
#include <vector>

#include "affinedr/linalg.hpp"

namespace affinedr {

namespace {

constexpr double kPi = 3.14159265358979323846;

double ipow(double base, std::size_t e) {
  double r = 1.0;
  while (e > 0) {
    if (e & 1u) r *= base;
    base *= base;
    e >>= 1u;
  }
  return r;
}

double sign_of(double x) { return x < 0.0 ? -1.0 : 1.0; }

// Smallest eigenvalue magnitude from the analytic spectrum (complex-capable).
double analytic_abs_min(const TridiagToeplitz& t) {
  const double ag = t.alpha * t.gamma;
  double mn = std::numeric_limits<double>::infinity();
  for (std::size_t k = 1; k <= t.n; ++k) {
    const double c = std::cos(kPi * static_cast<double>(k) / static_cast<double>(t.n + 1));
    double abs_lam;
    if (ag >= 0.0)
      abs_lam = std::fabs(t.beta + 2.0 * sign_of(t.gamma) * std::sqrt(ag) * c);
    else
      abs_lam = std::hypot(t.beta, 2.0 * std::sqrt(-ag) * c);
    mn = std::min(mn, abs_lam);
  }
  return mn;
}

void require_invertible(const TridiagToeplitz& t) {
  const double scale = std::fabs(t.beta) + 2.0 * std::sqrt(std::fabs(t.alpha * t.gamma)) + 1.0;
  const double mn = analytic_abs_min(t);
  if (mn <= 1e-10 * scale)
    throw SingularMatrix("tridiagonal matrix is singular: eigenvalue of magnitude " +
                         std::to_string(mn));
}

}  // namespace

TridiagToeplitz::TridiagToeplitz(double alpha, double beta, double gamma, std::size_t n)
    : alpha(alpha), beta(beta), gamma(gamma), n(n) {
  if (n < 1) throw WrongSize("TridiagToeplitz: n must be >= 1");
  if (!std::isfinite(alpha) || !std::isfinite(beta) || !std::isfinite(gamma))
    throw Error("TridiagToeplitz: non-finite entry");
}

DenseMatrix to_dense(const TridiagToeplitz& t) {
  DenseMatrix m(t.n, t.n);
  for (std::size_t i = 0; i < t.n; ++i) {
    m(i, i) = t.beta;
    if (i + 1 < t.n) {
      m(i, i + 1) = t.gamma;
      m(i + 1, i) = t.alpha;
    }
  }
  return m;
}

Vector symmetric_part_eigenvalues(const TridiagToeplitz& t) {
  Vector lam(t.n);
  for (std::size_t k = 1; k <= t.n; ++k)
    lam[k - 1] = t.beta + (t.alpha + t.gamma) *
                              std::cos(kPi * static_cast<double>(k) / static_cast<double>(t.n + 1));
  std::sort(lam.begin(), lam.end());
  return lam;
}

bool is_monotone_tridiag(const TridiagToeplitz& t) {
  const double threshold =
      std::fabs(t.alpha + t.gamma) * std::cos(kPi / static_cast<double>(t.n + 1));
  return t.beta >= threshold - 1e-12;
}

std::optional<Vector> eigenvalues_analytic(const TridiagToeplitz& t) {
  const double ag = t.alpha * t.gamma;
  if (ag == 0.0)
    throw DegenerateCase("eigenvalues_analytic: alpha*gamma == 0, use the triangular path");
  if (ag < 0.0) return std::nullopt;  // complex spectrum
  Vector lam(t.n);
  const double w = 2.0 * sign_of(t.gamma) * std::sqrt(ag);
  for (std::size_t k = 1; k <= t.n; ++k)
    lam[k - 1] =
        t.beta + w * std::cos(kPi * static_cast<double>(k) / static_cast<double>(t.n + 1));
  std::sort(lam.begin(), lam.end());
  return lam;
}

DenseMatrix invert_triangular_case(const TridiagToeplitz& t) {
  if (t.alpha * t.gamma != 0.0)
    throw WrongBranch("invert_triangular_case: alpha*gamma != 0");
  if (std::fabs(t.beta) <= 1e-12 * (std::fabs(t.alpha) + std::fabs(t.gamma) + 1.0))
    throw SingularMatrix("invert_triangular_case: beta == 0");
  const std::size_t n = t.n;
  DenseMatrix inv(n, n);
  for (std::size_t i = 1; i <= n; ++i)
    for (std::size_t j = 1; j <= n; ++j) {
      const std::size_t lower = i > j ? i - j : 0;   // max{i-j, 0}
      const std::size_t upper = j > i ? j - i : 0;   // max{j-i, 0}
      const std::size_t gap = lower + upper;         // |i-j|
      inv(i - 1, j - 1) =
          ipow(-t.alpha, lower) * ipow(-t.gamma, upper) / ipow(t.beta, gap + 1);
    }
  return inv;
}

DenseMatrix invert_closed_form(const TridiagToeplitz& t) {
  if (t.alpha * t.gamma == 0.0) throw WrongBranch("invert_closed_form: alpha*gamma == 0");
  require_invertible(t);

  const std::size_t n = t.n;
  const double disc = t.beta * t.beta - 4.0 * t.alpha * t.gamma;
  DenseMatrix inv(n, n);

  // Entry weight: gamma^{j-i} above the diagonal, alpha^{i-j} below.
  auto weight = [&](std::size_t i, std::size_t j) {
    return j >= i ? ipow(t.gamma, j - i) : ipow(t.alpha, i - j);
  };
  auto parity = [](std::size_t i, std::size_t j) { return (i + j) % 2 == 0 ? 1.0 : -1.0; };

  if (std::fabs(disc) <= 1e-10 * (t.beta * t.beta + 4.0 * std::fabs(t.alpha * t.gamma))) {
    // Double root r == s: both quadratic roots collapse to beta/2.
    const double r = 0.5 * t.beta;
    for (std::size_t i = 1; i <= n; ++i)
      for (std::size_t j = 1; j <= n; ++j) {
        const std::size_t mn = std::min(i, j), mx = std::max(i, j);
        inv(i - 1, j - 1) = parity(i, j) * weight(i, j) * static_cast<double>(mn) *
                            static_cast<double>(n + 1 - mx) /
                            (static_cast<double>(n + 1) * ipow(r, mx - mn + 1));
      }
    return inv;
  }

  // Distinct roots; complex arithmetic covers beta^2 - 4 alpha gamma < 0 with
  // a real result. The imaginary residue is checked before being discarded.
  using Complex = std::complex<double>;
  const Complex sq = std::sqrt(Complex(disc, 0.0));
  const Complex rr = 0.5 * (Complex(t.beta, 0.0) + sq);
  const Complex ss = 0.5 * (Complex(t.beta, 0.0) - sq);

  std::vector<Complex> d(n + 1);  // d[k] = (rr^{k+1} - ss^{k+1}) / (rr - ss)
  for (std::size_t k = 0; k <= n; ++k)
    d[k] = (std::pow(rr, static_cast<double>(k + 1)) - std::pow(ss, static_cast<double>(k + 1))) /
           (rr - ss);

  for (std::size_t i = 1; i <= n; ++i)
    for (std::size_t j = 1; j <= n; ++j) {
      const std::size_t mn = std::min(i, j), mx = std::max(i, j);
      const Complex val = parity(i, j) * weight(i, j) * d[mn - 1] * d[n - mx] / d[n];
      if (std::fabs(val.imag()) > 1e-9 * (1.0 + std::fabs(val.real())))
        throw Error("invert_closed_form: unexpected imaginary residue");
      inv(i - 1, j - 1) = val.real();
    }
  return inv;
}

DenseMatrix invert_recurrence(const TridiagToeplitz& t) {
  if (t.alpha * t.gamma == 0.0) throw WrongBranch("invert_recurrence: alpha*gamma == 0");
  require_invertible(t);

  const std::size_t n = t.n;
  // Both sequences are rescaled when they grow past 1e100; ls tracks the
  // cumulative log factor per index.
  constexpr double kBig = 1e100;
  const double log_big = std::log(kBig);

  std::vector<double> u(n + 2, 0.0), lsu(n + 2, 0.0);
  u[0] = 0.0;
  u[1] = 1.0;
  for (std::size_t k = 2; k <= n + 1; ++k) {
    const double prev2 = u[k - 2] * std::exp(lsu[k - 2] - lsu[k - 1]);
    double val = -(t.alpha * prev2 + t.beta * u[k - 1]) / t.gamma;
    double ls = lsu[k - 1];
    if (std::fabs(val) > kBig) {
      val /= kBig;
      ls += log_big;
    }
    u[k] = val;
    lsu[k] = ls;
  }

  std::vector<double> v(n + 2, 0.0), lsv(n + 2, 0.0);
  v[n + 1] = 0.0;
  v[n] = 1.0;
  for (std::size_t k = n; k-- > 0;) {
    const double next2 = v[k + 2] * std::exp(lsv[k + 2] - lsv[k + 1]);
    double val = -(t.beta * v[k + 1] + t.gamma * next2) / t.alpha;
    double ls = lsv[k + 1];
    if (std::fabs(val) > kBig) {
      val /= kBig;
      ls += log_big;
    }
    v[k] = val;
    lsv[k] = ls;
  }

  double vmax = 0.0;
  for (std::size_t k = 0; k <= n + 1; ++k)
    vmax = std::max(vmax, std::fabs(v[k]) * std::exp(lsv[k] - lsv[0]));
  if (std::fabs(v[0]) <= 1e-12 * vmax)
    throw SingularMatrix("invert_recurrence: v_0 vanishes");

  DenseMatrix inv(n, n);
  for (std::size_t i = 1; i <= n; ++i)
    for (std::size_t j = 1; j <= n; ++j) {
      const std::size_t mn = std::min(i, j), mx = std::max(i, j);
      const double scale = std::exp(lsu[mn] + lsv[mx] - lsv[0]);
      inv(i - 1, j - 1) = -(u[mn] * v[mx] / v[0]) * scale * ipow(t.gamma, j - 1) /
                          ipow(t.alpha, j);
    }
  return inv;
}

DenseMatrix invert_tridiag(const TridiagToeplitz& t, InverseMethod method) {
  switch (method) {
    case InverseMethod::Triangular:
      return invert_triangular_case(t);
    case InverseMethod::Closed:
      return invert_closed_form(t);
    case InverseMethod::Recurrence:
      return invert_recurrence(t);
    case InverseMethod::Auto:
      break;
  }
  if (t.alpha * t.gamma == 0.0) return invert_triangular_case(t);
  return invert_recurrence(t);
}

DenseMatrix resolvent_tridiag(const TridiagToeplitz& t) {
  if (!is_monotone_tridiag(t))
    throw NotMonotone("resolvent_tridiag: matrix is not monotone");
  return invert_tridiag(TridiagToeplitz(t.alpha, t.beta + 1.0, t.gamma, t.n));
}

}  // namespace affinedr
