#include "doctest.h"

#include <algorithm>
#include <cmath>

#include "affinedr/kron.hpp"
#include "affinedr/linalg.hpp"
#include "affinedr/monotone.hpp"
#include "affinedr/tridiag.hpp"
#include "test_util.hpp"

using namespace affinedr;
using testutil::random_matrix;
using testutil::random_psd;
using testutil::random_vector;
using testutil::uniform;
using testutil::vec_dist;

namespace {

const DenseMatrix kRotation = DenseMatrix::from_rows({{0, -1}, {1, 0}});

DenseMatrix random_monotone(std::mt19937_64& rng, std::size_t n) {
  // PSD plus skew; every monotone matrix has this form.
  DenseMatrix s = random_psd(rng, n, 1 + rng() % n);
  const DenseMatrix r = random_matrix(rng, n, n);
  const DenseMatrix skew = 0.5 * (r - r.transpose());
  return s + skew;
}

}  // namespace

TEST_CASE("kronecker of identities") {
  CHECK(max_abs_diff(kronecker(DenseMatrix::identity(2), DenseMatrix::identity(3)),
                     DenseMatrix::identity(6)) == 0.0);
}

TEST_CASE("kronecker with the identity gives the block-diagonal structure") {
  const DenseMatrix m = to_dense({-1, 2, -1, 3});
  const DenseMatrix k = kronecker(DenseMatrix::identity(3), m);
  REQUIRE(k.rows() == 9);
  for (std::size_t blk = 0; blk < 3; ++blk)
    for (std::size_t i = 0; i < 3; ++i)
      for (std::size_t j = 0; j < 3; ++j) CHECK(k(blk * 3 + i, blk * 3 + j) == m(i, j));
  // off-diagonal blocks vanish
  CHECK(k(0, 5) == 0.0);
  CHECK(k(8, 0) == 0.0);
}

TEST_CASE("kronecker square of the rotation has the anti-diagonal sign pattern") {
  const DenseMatrix k = kronecker(kRotation, kRotation);
  const DenseMatrix expected = DenseMatrix::from_rows(
      {{0, 0, 0, 1}, {0, 0, -1, 0}, {0, -1, 0, 0}, {1, 0, 0, 0}});
  CHECK(max_abs_diff(k, expected) == 0.0);
}

TEST_CASE("kronecker transpose identity holds exactly") {
  std::mt19937_64 rng(31);
  for (int trial = 0; trial < 20; ++trial) {
    const DenseMatrix a = random_matrix(rng, 2 + rng() % 3, 2 + rng() % 3);
    const DenseMatrix b = random_matrix(rng, 2 + rng() % 3, 2 + rng() % 3);
    CHECK(max_abs_diff(kronecker(a, b).transpose(),
                       kronecker(a.transpose(), b.transpose())) == 0.0);
  }
}

TEST_CASE("kronecker eigenvalues are the pairwise products (symmetric factors)") {
  std::mt19937_64 rng(32);
  for (int trial = 0; trial < 15; ++trial) {
    const std::size_t p = 2 + rng() % 3, q = 2 + rng() % 3;
    const DenseMatrix a = symmetric_part(random_matrix(rng, p, p, 2.0));
    const DenseMatrix b = symmetric_part(random_matrix(rng, q, q, 2.0));
    const Vector la = symmetric_eigenvalues(a);
    const Vector lb = symmetric_eigenvalues(b);
    Vector products;
    for (double x : la)
      for (double y : lb) products.push_back(x * y);
    std::sort(products.begin(), products.end());
    const Vector lk = symmetric_eigenvalues(kronecker(a, b));
    CHECK(vec_dist(lk, products) < 1e-8 * (1.0 + a.max_abs() * b.max_abs()));
  }
}

TEST_CASE("kronecker resolvent identities") {
  const DenseMatrix m = to_dense({-1, 2, -1, 3});
  const DenseMatrix jm = resolvent_tridiag({-1, 2, -1, 3});
  CHECK(max_abs_diff(kronecker_resolvent(m, KroneckerSide::Right),
                     kronecker(DenseMatrix::identity(3), jm)) < 1e-14);
  CHECK(max_abs_diff(kronecker_resolvent(m, KroneckerSide::Left),
                     kronecker(jm, DenseMatrix::identity(3))) < 1e-14);

  // Defining identity (Id + Id (x) M) J = Id.
  const DenseMatrix j = kronecker_resolvent(m, KroneckerSide::Right);
  const DenseMatrix lhs =
      (DenseMatrix::identity(9) + kronecker(DenseMatrix::identity(3), m)) * j;
  CHECK(max_abs_diff(lhs, DenseMatrix::identity(9)) < 1e-10);

  CHECK(max_abs_diff(kronecker_resolvent(DenseMatrix(2, 2), KroneckerSide::Left),
                     DenseMatrix::identity(4)) == 0.0);
  CHECK_THROWS_AS(kronecker_resolvent(kRotation, KroneckerSide::Right), NotSymmetric);
  CHECK_THROWS_AS(kronecker_resolvent(-1.0 * DenseMatrix::identity(2), KroneckerSide::Right),
                  NotMonotone);
}

TEST_CASE("monotonicity of fixed matrices") {
  CHECK(is_monotone(kRotation));
  CHECK(!is_monotone(DenseMatrix::from_rows({{1, 3}, {0, 1}})));
  CHECK(!is_monotone(-1.0 * DenseMatrix::identity(2)));
}

TEST_CASE("2x2 closed-form monotonicity test") {
  CHECK(is_monotone_2x2(DenseMatrix::from_rows({{1, -1}, {1, 1}})));
  CHECK(!is_monotone_2x2(DenseMatrix::from_rows({{1, 3}, {0, 1}})));
  CHECK(is_monotone_2x2(DenseMatrix(2, 2)));
  CHECK_THROWS_AS(is_monotone_2x2(DenseMatrix::identity(3)), WrongSize);
}

TEST_CASE("2x2 test agrees with the eigenvalue test on random matrices") {
  std::mt19937_64 rng(33);
  for (int trial = 0; trial < 1000; ++trial) {
    const DenseMatrix m = random_matrix(rng, 2, 2, 2.0);
    CHECK(is_monotone_2x2(m) == is_monotone(m));
  }
}

TEST_CASE("eigenvalue real parts of fixed matrices") {
  CHECK(vec_dist(eigenvalue_real_parts(kRotation), {0, 0}) < 1e-10);
  CHECK(vec_dist(eigenvalue_real_parts(DenseMatrix::from_rows({{1, 3}, {0, 1}})), {1, 1}) < 1e-6);
  CHECK(vec_dist(eigenvalue_real_parts(DenseMatrix::from_rows({{2, 0}, {0, 5}})), {2, 5}) <
        1e-12);
}

TEST_CASE("monotone matrices have spectra in the right half plane") {
  std::mt19937_64 rng(34);
  int monotone_seen = 0;
  for (int trial = 0; trial < 500; ++trial) {
    const std::size_t n = 2 + rng() % 9;
    const DenseMatrix m =
        trial % 2 == 0 ? random_monotone(rng, n) : random_matrix(rng, n, n, 2.0);
    if (!is_monotone(m)) continue;
    ++monotone_seen;
    CHECK(eigenvalue_real_parts(m).front() >= -1e-8);
  }
  CHECK(monotone_seen >= 200);  // the necessary condition was actually exercised
}

TEST_CASE("paramonotonicity of linear maps") {
  CHECK(!is_paramonotone_linear(kRotation));
  CHECK(is_paramonotone_linear(DenseMatrix::identity(3)));
  std::mt19937_64 rng(35);
  for (int trial = 0; trial < 30; ++trial) {
    const std::size_t n = 2 + rng() % 6;
    CHECK(is_paramonotone_linear(random_psd(rng, n, 1 + rng() % n)));
  }
  CHECK_THROWS_AS(is_paramonotone_linear(-1.0 * DenseMatrix::identity(2)), NotMonotone);
}

TEST_CASE("paramonotonicity agrees with the sampled definition") {
  std::mt19937_64 rng(36);
  for (int trial = 0; trial < 200; ++trial) {
    const std::size_t n = 2 + rng() % 5;
    const DenseMatrix m = random_monotone(rng, n);
    const bool para = is_paramonotone_linear(m);
    const auto kernel = null_space(symmetric_part(m));
    if (para) {
      // Differences z with <z, M z> = 0 must satisfy M z = 0.
      for (const Vector& z : kernel) {
        CHECK(std::fabs(dot(z, m.apply(z))) <= 1e-12);
        CHECK(norm(m.apply(z)) <= 1e-8);
      }
    } else {
      // A witness with <z, M z> = 0 and M z != 0 exists in ker(M + M^T).
      bool witness = false;
      for (const Vector& z : kernel)
        if (norm(m.apply(z)) > 1e-8) witness = true;
      CHECK(witness);
    }
  }
}

TEST_CASE("block embed of fixed matrices") {
  // 2 Id_2 embeds as tridiag(-1,2,-1) (x) Id_2.
  const DenseMatrix lhs = block_tridiag_embed(2.0 * DenseMatrix::identity(2));
  const DenseMatrix rhs = kronecker(to_dense({-1, 2, -1, 2}), DenseMatrix::identity(2));
  CHECK(max_abs_diff(lhs, rhs) == 0.0);

  const DenseMatrix half = block_tridiag_embed(0.5 * DenseMatrix::identity(2));
  const Vector lam = symmetric_eigenvalues(half);
  CHECK(lam.front() == doctest::Approx(-0.5).epsilon(1e-12));
  CHECK(lam.back() == doctest::Approx(1.5).epsilon(1e-12));

  // tridiag(-1,2,-1) embeds as the 5-point Laplacian sum minus 2 Id.
  const std::size_t n = 4;
  const DenseMatrix m = to_dense({-1, 2, -1, n});
  const DenseMatrix id = DenseMatrix::identity(n);
  const DenseMatrix five_point = kronecker(id, m) + kronecker(m, id);
  CHECK(max_abs_diff(block_tridiag_embed(m),
                     five_point - 2.0 * DenseMatrix::identity(n * n)) == 0.0);
}

TEST_CASE("block quadratic form equals the direct quadratic form") {
  std::mt19937_64 rng(37);
  CHECK(block_quadratic_form(DenseMatrix::identity(2), Vector(4, 0.0)) == 0.0);

  // x = (y, y) with M = Id gives 2 <y, (M - Id) y> = 0.
  const Vector y = random_vector(rng, 2);
  Vector stacked = y;
  stacked.insert(stacked.end(), y.begin(), y.end());
  CHECK(std::fabs(block_quadratic_form(DenseMatrix::identity(2), stacked)) < 1e-12);

  for (int trial = 0; trial < 200; ++trial) {
    const std::size_t n = 2 + rng() % 4;
    const DenseMatrix m = random_matrix(rng, n, n, 2.0);
    const Vector x = random_vector(rng, n * n, 2.0);
    const double direct = dot(x, block_tridiag_embed(m).apply(x));
    const double decomposed = block_quadratic_form(m, x);
    CHECK(std::fabs(direct - decomposed) <=
          1e-10 * (1.0 + dot(x, x) * m.max_abs()));
  }
}

TEST_CASE("block monotonicity flags of the fixed examples") {
  const auto all3 = block_monotonicity_tests(3.0 * DenseMatrix::identity(2));
  CHECK(all3.embed_monotone);
  CHECK(all3.m_minus_2id_monotone);
  CHECK(all3.m_minus_scaled_monotone);
  CHECK(all3.m_monotone);

  const auto shear = block_monotonicity_tests(DenseMatrix::from_rows({{1, -1}, {1, 1}}));
  CHECK(shear.embed_monotone);
  CHECK(!shear.m_minus_2id_monotone);

  const auto half = block_monotonicity_tests(0.5 * DenseMatrix::identity(2));
  CHECK(half.m_monotone);
  CHECK(!half.embed_monotone);
  CHECK(!half.m_minus_scaled_monotone);
}

TEST_CASE("block monotonicity implication chain never breaks") {
  std::mt19937_64 rng(38);
  for (int trial = 0; trial < 200; ++trial) {
    const std::size_t n = 2 + rng() % 4;
    DenseMatrix m = random_matrix(rng, n, n, 2.0);
    if (trial % 3 == 0) m += 2.5 * DenseMatrix::identity(n);  // exercise the strong end
    const auto flags = block_monotonicity_tests(m);
    if (flags.m_minus_2id_monotone) CHECK(flags.embed_monotone);
    if (flags.embed_monotone) CHECK(flags.m_minus_scaled_monotone);
    if (flags.m_minus_scaled_monotone) CHECK(flags.m_monotone);
  }
}

TEST_CASE("block monotonicity biconditional at n = 2") {
  std::mt19937_64 rng(39);
  for (int trial = 0; trial < 200; ++trial) {
    DenseMatrix m = random_matrix(rng, 2, 2, 2.0);
    if (trial % 2 == 0) m += DenseMatrix::identity(2);
    const bool lhs = is_monotone(m - DenseMatrix::identity(2));
    const bool rhs = is_monotone(block_tridiag_embed(m));
    CHECK(lhs == rhs);
  }
}

TEST_CASE("kronecker monotonicity under a symmetric factor") {
  CHECK(kronecker_monotone_symmetric(DenseMatrix::identity(2), kRotation));
  CHECK(kronecker_monotone_symmetric(to_dense({-1, 2, -1, 3}),
                                     DenseMatrix::from_rows({{1, -1}, {1, 1}})));
  CHECK_THROWS_AS(kronecker_monotone_symmetric(kRotation, kRotation), PreconditionViolated);
  // Outside the hypotheses the product can fail to be monotone.
  CHECK(!is_monotone(kronecker(kRotation, kRotation)));
}
