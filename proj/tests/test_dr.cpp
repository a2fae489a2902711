#include "doctest.h"

#include <cmath>
#include <sstream>

#include "affinedr/dr.hpp"
#include "affinedr/linalg.hpp"
#include "test_util.hpp"

using namespace affinedr;
using testutil::random_matrix;
using testutil::random_psd;
using testutil::random_vector;
using testutil::uniform;
using testutil::vec_dist;

namespace {

const DenseMatrix kRotation = DenseMatrix::from_rows({{0, -1}, {1, 0}});

AffineSubspace random_span(std::mt19937_64& rng, std::size_t n, std::size_t d) {
  std::vector<Vector> dirs;
  for (std::size_t k = 0; k < d; ++k) dirs.push_back(random_vector(rng, n));
  return AffineSubspace::span(dirs);
}

}  // namespace

TEST_CASE("fixed point sets of simple maps") {
  const auto all = fixed_point_set(AffineMap::identity(3));
  REQUIRE(all.has_value());
  CHECK(all->dim() == 3);

  const auto pt = fixed_point_set(AffineMap::constant({1, 2}));
  REQUIRE(pt.has_value());
  CHECK(pt->is_point());
  CHECK(vec_dist(pt->anchor(), {1, 2}) < 1e-12);

  // Translation by a nonzero vector has no fixed point.
  CHECK(!fixed_point_set(AffineMap(DenseMatrix::identity(2), {1, 0})).has_value());
}

TEST_CASE("fixed points of the rotation counterexample operator") {
  const AffineRelation a = AffineRelation::from_linear_map(kRotation, {0, 0});
  const AffineRelation b = AffineRelation::normal_cone(AffineSubspace::span({{0, 1}}));
  const AffineMap t = dr_operator(a, b);
  CHECK(max_abs_diff(t.linear_part(),
                     DenseMatrix::from_rows({{0.5, -0.5}, {-0.5, 0.5}})) < 1e-14);
  const auto fix = fixed_point_set(t);
  REQUIRE(fix.has_value());
  CHECK(subspace_equal(*fix, AffineSubspace::span({{1, -1}})));
}

TEST_CASE("displacement vector examples") {
  const AffineMap t(0.5 * DenseMatrix::identity(2), {1.0, -2.0});
  CHECK(vec_dist(displacement_vector(t), {2.0, -4.0}) < 1e-12);

  CHECK(norm(displacement_vector(AffineMap::identity(3))) < 1e-12);

  std::mt19937_64 rng(61);
  const DenseMatrix l = 0.6 * testutil::random_orthogonal(rng, 4);
  const Vector b = random_vector(rng, 4);
  const Vector a = displacement_vector(AffineMap(l, b));
  const Vector direct = solve_dense(DenseMatrix::identity(4) - l, b);
  CHECK(vec_dist(a, direct) < 1e-9);

  CHECK_THROWS_AS(displacement_vector(AffineMap(DenseMatrix::identity(2), {1, 0})),
                  NoFixedPoint);
}

TEST_CASE("closed-form iteration agrees with naive application") {
  std::mt19937_64 rng(62);
  for (int trial = 0; trial < 10; ++trial) {
    const std::size_t n = 2 + rng() % 4;
    DenseMatrix l = random_matrix(rng, n, n);
    l = (0.9 / (operator_norm(l) + 1e-9)) * l;  // contraction, fixed point exists
    const AffineMap t(l, random_vector(rng, n));
    const Vector x = random_vector(rng, n, 2.0);
    for (std::size_t steps : {0u, 1u, 5u, 50u, 200u}) {
      Vector naive = x;
      for (std::size_t k = 0; k < steps; ++k) naive = t(naive);
      CHECK(vec_dist(iterate_closed_form(t, x, steps), naive) <= 1e-9 * (1.0 + norm(x)));
    }
  }
}

TEST_CASE("closed-form iteration without fixed points uses the partial sums") {
  const AffineMap shift(DenseMatrix::identity(2), {1.0, 0.0});
  const Vector x = {0.0, 3.0};
  CHECK(vec_dist(iterate_closed_form(shift, x, 7), {7.0, 3.0}) < 1e-12);
}

TEST_CASE("geometric contraction reaches its displacement point") {
  const Vector c = {1.0, 2.0};
  const AffineMap t(0.5 * DenseMatrix::identity(2), c);
  const Vector a = displacement_vector(t);  // a = 2c
  const Vector x = {9.0, -3.0};
  const Vector expected = add(a, scale(std::pow(0.5, 6.0), sub(x, a)));
  CHECK(vec_dist(iterate_closed_form(t, x, 6), expected) < 1e-12);
}

TEST_CASE("one-step idempotence of the rotation counterexample") {
  const AffineRelation a = AffineRelation::from_linear_map(kRotation, {0, 0});
  const AffineRelation b = AffineRelation::normal_cone(AffineSubspace::span({{0, 1}}));
  const AffineMap t = dr_operator(a, b);
  const Vector x = {0.3, -1.7};
  const Vector tx = t(x);
  for (std::size_t n : {1u, 2u, 5u, 9u})
    CHECK(vec_dist(iterate_closed_form(t, x, n), tx) < 1e-12);
}

TEST_CASE("projection onto the fixed-point set") {
  CHECK(max_abs_diff(project_onto_fix(AffineMap::identity(2)).linear_part(),
                     DenseMatrix::identity(2)) < 1e-12);

  const AffineMap pc = project_onto_fix(AffineMap::constant({1, 2}));
  CHECK(max_abs_diff(pc.linear_part(), DenseMatrix(2, 2)) < 1e-12);
  CHECK(vec_dist(pc.offset(), {1, 2}) < 1e-12);

  // Translated subspace: P_{w+S} x = w + P_S(x - w).
  std::mt19937_64 rng(63);
  const AffineSubspace s = random_span(rng, 4, 2);
  const Vector w = random_vector(rng, 4);
  DenseMatrix l(4, 4);
  const DenseMatrix ps = s.parallel_projector();
  // A map with Fix T = w + S: T = P_{w+S}.
  const AffineMap t(ps, sub(w, ps.apply(w)));
  const AffineMap p = project_onto_fix(t);
  for (int k = 0; k < 5; ++k) {
    const Vector x = random_vector(rng, 4, 3.0);
    const Vector expected = add(w, ps.apply(sub(x, w)));
    CHECK(vec_dist(p(x), expected) < 1e-9);
    CHECK(vec_dist(p(p(x)), p(x)) < 1e-10);  // idempotent
  }
}

TEST_CASE("asymptotic regularity") {
  const AffineRelation a = AffineRelation::from_linear_map(kRotation, {0, 0});
  const AffineRelation b = AffineRelation::normal_cone(AffineSubspace::span({{0, 1}}));
  CHECK(is_asymptotically_regular(dr_operator(a, b)));

  CHECK(!is_asymptotically_regular(AffineMap::linear(-1.0 * DenseMatrix::identity(2))));
  CHECK(!is_asymptotically_regular(AffineMap::linear(kRotation)));
}

TEST_CASE("DR operator of two zero relations is the identity") {
  const AffineMap t = dr_operator(AffineRelation::zero(3), AffineRelation::zero(3));
  CHECK(max_abs_diff(t.linear_part(), DenseMatrix::identity(3)) < 1e-14);
  CHECK(norm(t.offset()) < 1e-14);
}

TEST_CASE("DR operator for normal cones matches the projector formula") {
  std::mt19937_64 rng(64);
  for (int trial = 0; trial < 10; ++trial) {
    const std::size_t n = 3 + rng() % 3;
    const AffineSubspace u = random_span(rng, n, 1 + rng() % 2);
    const AffineSubspace v = random_span(rng, n, 1 + rng() % 2);
    const AffineMap t = dr_operator(AffineRelation::normal_cone(u),
                                    AffineRelation::normal_cone(v));
    const DenseMatrix pu = u.parallel_projector(), pv = v.parallel_projector();
    const DenseMatrix id = DenseMatrix::identity(n);
    const DenseMatrix expected = id - pu + pv * (2.0 * pu - id);
    CHECK(max_abs_diff(t.linear_part(), expected) < 1e-12);
  }
}

TEST_CASE("DR operators are firmly nonexpansive") {
  std::mt19937_64 rng(65);
  for (int trial = 0; trial < 10; ++trial) {
    const std::size_t n = 2 + rng() % 4;
    const DenseMatrix s = random_psd(rng, n, 1 + rng() % n);
    const AffineRelation a = AffineRelation::from_linear_map(s, random_vector(rng, n));
    const AffineRelation b = AffineRelation::normal_cone(random_span(rng, n, 1 + rng() % n));
    const AffineMap t = dr_operator(a, b);
    CHECK(is_firmly_nonexpansive_map(t));
    for (int pair = 0; pair < 10; ++pair) {
      const Vector x = random_vector(rng, n, 3.0), y = random_vector(rng, n, 3.0);
      const Vector tx = t(x), ty = t(y);
      const double lhs = dot(sub(tx, ty), sub(tx, ty)) +
                         dot(sub(sub(x, tx), sub(y, ty)), sub(sub(x, tx), sub(y, ty)));
      CHECK(lhs <= dot(sub(x, y), sub(x, y)) + 1e-9);
    }
  }
}

TEST_CASE("feasibility run converges to the projected intersection") {
  std::mt19937_64 rng(66);
  const AffineSubspace u = AffineSubspace::span({{1, 0}});
  const double theta = M_PI / 6.0;
  const AffineSubspace v = AffineSubspace::span({{std::cos(theta), std::sin(theta)}});
  const Vector w = {0.5, -1.0};
  const AffineRelation a = AffineRelation::normal_cone(u.translate(w));
  const AffineRelation b = AffineRelation::normal_cone(v.translate(w));
  const Vector x0 = random_vector(rng, 2, 2.0);

  const IterationTrace trace = run_dr(a, b, x0, 20000, 1e-13);
  // Z = (w+U) cap (w+V) = {w}; the shadow converges to P_Z x0 = w.
  CHECK(vec_dist(trace.shadows.back(), w) < 1e-6);

  // Fitted rate approximates cos(theta).
  REQUIRE(trace.fitted_rate.has_value());
  CHECK(std::fabs(*trace.fitted_rate - std::cos(theta)) < 0.02);

  // Residuals of a firmly nonexpansive iteration never increase.
  for (std::size_t k = 1; k < trace.residuals.size(); ++k)
    CHECK(trace.residuals[k] <= trace.residuals[k - 1] + 1e-12);
}

TEST_CASE("run from a fixed point is stationary") {
  const AffineRelation a = AffineRelation::zero(2);
  const AffineRelation b = AffineRelation::zero(2);
  const IterationTrace trace = run_dr(a, b, {1.0, 1.0}, 100, 1e-12);
  CHECK(trace.points.size() == 1);
  CHECK(trace.residuals.empty());
}

TEST_CASE("shadow sequence stalls for the opposite-constants pair") {
  const Vector u = {1.0, 0.0};
  const AffineRelation a = AffineRelation::constant(u);
  const AffineRelation b = AffineRelation::constant(scale(-1.0, u));
  const Vector x0 = {2.0, 2.0};
  const IterationTrace trace = run_dr(a, b, x0, 50, 1e-12);
  CHECK(vec_dist(trace.shadows.back(), sub(x0, u)) < 1e-12);
  // P_Z x0 = x0 since Z is the whole space; the shadow misses it by ||u||.
  CHECK(std::fabs(trace.dist_shadow_to_pz.back() - norm(u)) < 1e-12);
}

TEST_CASE("run_dr reports NoSolution for inconsistent problems") {
  // Normal cones of two disjoint parallel lines: Fix T is empty.
  const AffineRelation a =
      AffineRelation::normal_cone(AffineSubspace::through({0, 0}, {{1, 0}}));
  const AffineRelation b =
      AffineRelation::normal_cone(AffineSubspace::through({0, 1}, {{1, 0}}));
  CHECK_THROWS_AS(run_dr(a, b, {0.0, 0.0}, 100, 1e-10), NoSolution);
}

TEST_CASE("rate estimation on a plain geometric decay") {
  const AffineMap t = AffineMap::linear(0.5 * DenseMatrix::identity(2));
  const AffineRelation a = AffineRelation::from_linear_map(DenseMatrix::identity(2), {0, 0});
  // Build a trace manually from the contraction.
  IterationTrace trace;
  Vector x = {1.0, 0.0};
  for (int k = 0; k < 40; ++k) {
    trace.dist_to_fix.push_back(norm(x));
    x = t(x);
  }
  const auto mu = estimate_linear_rate(trace);
  REQUIRE(mu.has_value());
  CHECK(std::fabs(*mu - 0.5) < 0.01);
  (void)a;
}

TEST_CASE("rate estimation returns nothing for stalled or short traces") {
  IterationTrace flat;
  for (int k = 0; k < 30; ++k) flat.dist_to_fix.push_back(1.0);
  CHECK(!estimate_linear_rate(flat).has_value());

  IterationTrace tiny;
  tiny.dist_to_fix = {1.0, 0.5, 0.25};
  CHECK(!estimate_linear_rate(tiny).has_value());
}

TEST_CASE("spectral rate of simple maps") {
  CHECK(spectral_rate(AffineMap(0.5 * DenseMatrix::identity(3), {1, 0, 0})) ==
        doctest::Approx(0.5).epsilon(1e-9));
  CHECK(spectral_rate(AffineMap::identity(4)) == 0.0);

  const double theta = M_PI / 5.0;
  const AffineSubspace u = AffineSubspace::span({{1, 0}});
  const AffineSubspace v = AffineSubspace::span({{std::cos(theta), std::sin(theta)}});
  const AffineMap t =
      dr_operator(AffineRelation::normal_cone(u), AffineRelation::normal_cone(v));
  CHECK(spectral_rate(t) == doctest::Approx(std::cos(theta)).epsilon(1e-6));
}

TEST_CASE("fitted and spectral rates agree on random feasibility pairs") {
  std::mt19937_64 rng(67);
  int done = 0;
  while (done < 8) {
    const std::size_t n = 6;
    const AffineSubspace u = random_span(rng, n, 1 + rng() % 3);
    const AffineSubspace v = random_span(rng, n, 1 + rng() % 3);
    const double cf = friedrichs_cos(u, v);
    if (cf < 0.1 || cf > 0.98) continue;
    ++done;
    const AffineRelation a = AffineRelation::normal_cone(u);
    const AffineRelation b = AffineRelation::normal_cone(v);
    const AffineMap t = dr_operator(a, b);
    const IterationTrace trace = run_dr(a, b, random_vector(rng, n, 2.0), 30000, 1e-13);
    const double spec = spectral_rate(t);
    if (trace.fitted_rate) {
      CHECK(std::fabs(*trace.fitted_rate - spec) < 0.05);
      CHECK(std::fabs(*trace.fitted_rate - cf) < 0.05);
    }
    CHECK(std::fabs(spec - cf) < 1e-6);
  }
}

TEST_CASE("translation formula for the feasibility operator") {
  std::mt19937_64 rng(68);
  const AffineSubspace u = AffineSubspace::span({random_vector(rng, 3)});
  const AffineSubspace v = AffineSubspace::span({random_vector(rng, 3)});
  CHECK(feasibility_translation_check(u, v, Vector(3, 0.0), random_vector(rng, 3), 3));
  CHECK(feasibility_translation_check(u, v, random_vector(rng, 3), random_vector(rng, 3), 7));
  CHECK(feasibility_translation_check(u, v, random_vector(rng, 3), random_vector(rng, 3), 1));
}

TEST_CASE("friedrichs cosine of standard configurations") {
  CHECK(friedrichs_cos(AffineSubspace::span({{1, 0}}), AffineSubspace::span({{0, 1}})) ==
        doctest::Approx(0.0));
  const double theta = 0.7;
  CHECK(friedrichs_cos(AffineSubspace::span({{1, 0}}),
                       AffineSubspace::span({{std::cos(theta), std::sin(theta)}})) ==
        doctest::Approx(std::cos(theta)).epsilon(1e-12));
  const AffineSubspace u = AffineSubspace::span({{1, 2, 3}});
  CHECK(friedrichs_cos(u, u) == 0.0);
}

TEST_CASE("long-run convergence to the fixed-point projection") {
  std::mt19937_64 rng(69);
  for (int trial = 0; trial < 3; ++trial) {
    const std::size_t n = 4 + rng() % 4;
    const DenseMatrix s = random_psd(rng, n, n);
    const AffineRelation a = AffineRelation::from_linear_map(s, random_vector(rng, n));
    const AffineRelation b = AffineRelation::normal_cone(random_span(rng, n, 1 + rng() % n));
    const AffineMap t = dr_operator(a, b);
    REQUIRE(is_asymptotically_regular(t));
    const Vector x = random_vector(rng, n, 2.0);
    const Vector limit = project_onto_fix(t)(x);
    CHECK(vec_dist(iterate_closed_form(t, x, 100000), limit) <= 1e-6);
  }
}

TEST_CASE("parallel splitting of two translated identities") {
  const Vector a = {1.0, -2.0};
  std::vector<AffineRelation> bs;
  bs.push_back(AffineRelation::from_linear_map(DenseMatrix::identity(2), scale(-2.0, a)));
  bs.push_back(AffineRelation::from_linear_map(DenseMatrix::identity(2), {0, 0}));
  const Vector x0 = {0.5, 0.5, -0.5, 1.0};
  const ParallelSplitting ps = parallel_splitting(bs, x0, 20000, 1e-12);
  CHECK(vec_dist(ps.average_limit, a) < 1e-7);
}

TEST_CASE("parallel splitting of three normal cones finds a common point") {
  std::mt19937_64 rng(70);
  const std::size_t n = 4;
  const Vector p = random_vector(rng, n);
  std::vector<AffineRelation> bs;
  std::vector<AffineSubspace> sets;
  for (int i = 0; i < 3; ++i) {
    const AffineSubspace ui =
        AffineSubspace::through(p, {random_vector(rng, n), random_vector(rng, n)});
    sets.push_back(ui);
    bs.push_back(AffineRelation::normal_cone(ui));
  }
  const ParallelSplitting ps = parallel_splitting(bs, random_vector(rng, 3 * n, 2.0), 50000, 1e-12);
  for (const AffineSubspace& ui : sets) CHECK(ui.distance(ps.average_limit) < 1e-6);
}

TEST_CASE("parallel splitting of zero maps averages the start blocks") {
  const Vector x0 = {1.0, 2.0, 3.0, 4.0, 5.0, 6.0};
  std::vector<AffineRelation> bs(3, AffineRelation::zero(2));
  const ParallelSplitting ps = parallel_splitting(bs, x0, 100, 1e-12);
  CHECK(vec_dist(ps.average_limit, {3.0, 4.0}) < 1e-10);
}

TEST_CASE("trace CSV serialization") {
  IterationTrace trace;
  trace.points = {{1.0, 0.0}, {0.5, 0.0}};
  trace.shadows = trace.points;
  trace.residuals = {0.5};
  trace.dist_to_fix = {1.0, 0.5};
  trace.dist_shadow_to_pz = {1.0, 0.5};
  std::ostringstream os;
  trace.write_csv(os);
  CHECK(os.str() ==
        "iter,residual,dist_to_fix,dist_shadow_to_pz\n"
        "0,0.5,1,1\n"
        "1,nan,0.5,0.5\n");
}
