// possem - stability certificates for positive linear systems
// Copyright 2026 The possem Authors
// Licensed under the Apache License, Version 2.0

#include <doctest.h>

#include <cmath>

#include "possem/collatz_wielandt.hpp"
#include "possem/errors.hpp"
#include "possem/gallery.hpp"
#include "possem/rng.hpp"
#include "possem/spectral.hpp"

using namespace possem;

namespace {

Mat mat2(double a, double b, double c, double d) {
  Mat m(2, 2);
  m << a, b, c, d;
  return m;
}

Vec vec2(double a, double b) {
  Vec v(2);
  v << a, b;
  return v;
}

}  // namespace

TEST_CASE("cw_lower examples") {
  Mat A = mat2(-2, 1, 1, -2);
  auto F = FunctionalFamily::Coordinates(2);
  CHECK(cw_lower(A, vec2(1, 1), F) == doctest::Approx(-1.0));
  CHECK(cw_lower(A, vec2(1, 0), F) == doctest::Approx(-2.0));
  CHECK(cw_lower(mat2(0, 1, 1, 0), vec2(2, 1), F) == doctest::Approx(0.5));

  CHECK_THROWS_AS(cw_lower(A, vec2(0, 0), F), std::invalid_argument);
  CHECK_THROWS_AS(cw_lower(A, vec2(-1, 1), F), std::invalid_argument);
}

TEST_CASE("cw_upper examples") {
  Mat A = mat2(-2, 1, 1, -2);
  CHECK(cw_upper(A, vec2(1, 1)) == doctest::Approx(-1.0));
  CHECK(cw_upper(A, vec2(2, 1)) == doctest::Approx(0.0));  // max(-1.5, 0)
  CHECK(cw_upper(mat2(5, 0, 0, -1), vec2(1, 1)) == doctest::Approx(5.0));

  CHECK_THROWS_AS(cw_upper(A, vec2(1, 0)), PreconditionError);
}

TEST_CASE("cw_optimize drives the bracket onto s(A)") {
  Cone K = Cone::Orthant(2);
  CwOptimum o1 = cw_optimize(mat2(-2, 1, 1, -2), K, 1);
  CHECK(o1.converged);
  CHECK(o1.value == doctest::Approx(-1.0).epsilon(1e-8));
  CHECK(o1.argmax(0) == doctest::Approx(o1.argmax(1)).epsilon(1e-6));

  CwOptimum o2 = cw_optimize(Mat::Constant(1, 1, 3.0), Cone::Orthant(1), 1);
  CHECK(o2.value == doctest::Approx(3.0));

  for (int trial = 0; trial < 20; ++trial) {
    Mat A = metzler_random_irreducible(10, 0.4, 0.0, 50 + trial);
    double s = eigen_report(A).s_A;
    CwOptimum o = cw_optimize(A, Cone::Orthant(10), trial);
    CHECK(std::abs(o.value - s) <= 1e-8);
    CHECK(o.lower <= s + 1e-10);
    CHECK(o.upper >= s - 1e-10);
  }
}

TEST_CASE("sandwich: cw_lower <= s(A) <= cw_upper") {
  Rng rng(derive_seed(43, "cw-sandwich"));
  auto F5 = FunctionalFamily::Coordinates(5);
  for (int trial = 0; trial < 500; ++trial) {
    Mat A = metzler_random(5, 0.6, rng.uniform(-1, 1), 800 + trial);
    double s = eigen_report(A).s_A;
    Vec x(5), u(5);
    for (int i = 0; i < 5; ++i) {
      x(i) = rng.uniform() < 0.3 ? 0.0 : rng.uniform(0, 1);
      u(i) = rng.uniform(0.05, 1.0);
    }
    if (x.maxCoeff() == 0.0) x(0) = 1.0;
    CHECK(cw_lower(A, x, F5) <= s + 1e-9);
    CHECK(cw_upper(A, u) >= s - 1e-9);
  }
}

TEST_CASE("tightness at the Perron vector") {
  for (int trial = 0; trial < 50; ++trial) {
    int d = 2 + trial % 9;
    Mat A = metzler_random_irreducible(d, 0.5, 0.0, 900 + trial);
    Cone K = Cone::Orthant(d);
    PerronPair p = perron_pair(A, K);
    auto F = FunctionalFamily::Coordinates(d);
    CHECK(cw_lower(A, p.vector, F) == doctest::Approx(p.value).epsilon(1e-8));
    CHECK(cw_upper(A, p.vector) == doctest::Approx(p.value).epsilon(1e-8));
  }
}

TEST_CASE("shift equivariance and scale invariance") {
  Rng rng(derive_seed(47, "cw-shift"));
  auto F = FunctionalFamily::Coordinates(4);
  for (int trial = 0; trial < 30; ++trial) {
    Mat A = metzler_random(4, 0.7, 0.0, 1200 + trial);
    Vec x(4);
    for (int i = 0; i < 4; ++i) x(i) = rng.uniform(0, 1);
    double base = cw_lower(A, x, F);
    for (double c : {-3.0, 0.0, 7.0}) {
      Mat Ac = A + c * Mat::Identity(4, 4);
      CHECK(cw_lower(Ac, x, F) == doctest::Approx(base + c).epsilon(1e-12));
    }
    for (double alpha : {0.5, 2.0, 10.0}) {
      CHECK(cw_lower(A, Vec(alpha * x), F) ==
            doctest::Approx(base).epsilon(1e-12));
    }
  }
}

TEST_CASE("functional family sup over candidates") {
  Mat A = mat2(-2, 1, 1, -2);
  auto F = FunctionalFamily::Coordinates(2);
  std::vector<Vec> candidates = {vec2(1, 0), vec2(0, 1), vec2(1, 1)};
  CwFamilyResult r = cw_functional_family(A, F, 0, candidates);
  CHECK(r.sup_inf == doctest::Approx(-1.0));
  CHECK(r.best_index == 2);

  CHECK_THROWS_AS(cw_functional_family(A, F, 0, {}), std::invalid_argument);
}

TEST_CASE("functional family on the discretized Neumann Laplacian") {
  // Plain Laplacian: the constant vector sits in the kernel, so the lower
  // bound at ones is exactly 0 = s(A).
  const int N = 128;
  Mat A = build_neumann_laplacian(N, -1.5707963267948966, 1.5707963267948966);
  auto F = FunctionalFamily::Coordinates(N);
  CwFamilyResult r = cw_functional_family(A, F, 1, {Vec::Ones(N)});
  CHECK(r.sup_inf == doctest::Approx(0.0).epsilon(1e-9));

  // Deep well: the sin^2 candidate certifies s(A) >= 1 - 0.05.
  const int M = 256;
  PotentialSpec deep;
  deep.kind = PotentialSpec::Kind::kDeepWell;
  deep.depth = 100.0;
  Mat B = build_laplacian_plus_potential(M, -1.5707963267948966,
                                         1.5707963267948966, deep);
  Vec grid = grid_cell_centers(M, -1.5707963267948966, 1.5707963267948966);
  Vec u(M);
  for (int j = 0; j < M; ++j) u(j) = std::pow(std::sin(grid(j)), 2);
  CwFamilyResult rd =
      cw_functional_family(B, FunctionalFamily::Coordinates(M), 1, {u});
  CHECK(rd.sup_inf >= 1.0 - 0.05);
}
