// possem - stability certificates for positive linear systems
// Copyright 2026 The possem Authors
// Licensed under the Apache License, Version 2.0

#include <doctest.h>

#include <cmath>

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

}  // namespace

TEST_CASE("eigen_report basics") {
  Vec diag(2);
  diag << -1, -2;
  SpectralReport r1 = eigen_report(Mat(diag.asDiagonal()));
  CHECK(r1.s_A == doctest::Approx(-1.0));
  CHECK(r1.s_R_A == doctest::Approx(-1.0));
  CHECK(r1.omega_A == doctest::Approx(-1.0));
  CHECK(r1.s_ess == kNegInf);

  SpectralReport r2 = eigen_report(mat2(0, 1, 1, 0));
  CHECK(r2.s_A == doctest::Approx(1.0));
  CHECK(r2.s_R_A == doctest::Approx(1.0));

  // Rotation generator: spectrum {i, -i}, no real spectral value.
  SpectralReport r3 = eigen_report(mat2(0, -1, 1, 0));
  CHECK(r3.s_A == doctest::Approx(0.0));
  CHECK(r3.s_R_A == kNegInf);
  CHECK(r3.residual <= 1e-8);
}

TEST_CASE("resolvent closed forms") {
  ResolventSample r1 = resolvent(Mat::Constant(1, 1, -1.0), 0.0);
  CHECK(r1.R(0, 0) == doctest::Approx(1.0));
  CHECK(r1.is_positive);

  Mat A = mat2(-2, 1, 1, -2);
  ResolventSample r2 = resolvent(A, 0.0);
  CHECK(r2.R(0, 0) == doctest::Approx(2.0 / 3.0));
  CHECK(r2.R(0, 1) == doctest::Approx(1.0 / 3.0));
  CHECK(r2.is_positive);

  // lambda = -2 lies left of s_R = -1 but inside the resolvent set; the
  // resolvent loses positivity there.
  ResolventSample r3 = resolvent(A, -2.0);
  CHECK(r3.R(0, 0) == doctest::Approx(0.0).epsilon(1e-12));
  CHECK(r3.R(0, 1) == doctest::Approx(-1.0));
  CHECK_FALSE(r3.is_positive);

  CHECK_THROWS_AS(resolvent(A, -1.0), NumericalError);  // eigenvalue
}

TEST_CASE("resolvent positivity scan") {
  Mat A = mat2(-2, 1, 1, -2);  // s_A = -1, Metzler
  Cone K = Cone::Orthant(2);
  ResolventScan scan = resolvent_positivity_scan(A, K, {-0.5, 0.0, 1.0});
  for (const auto& e : scan.entries) CHECK(e.positive);
  CHECK(scan.decreasing_on_stable_side);

  ResolventScan left = resolvent_positivity_scan(A, K, {-5.0});
  CHECK_FALSE(left.entries[0].positive);

  // Not resolvent positive w.r.t. the orthant at all.
  ResolventScan rot = resolvent_positivity_scan(mat2(0, -1, 1, 0), K, {1.0});
  CHECK_FALSE(rot.entries[0].positive);
}

TEST_CASE("expm basics") {
  CHECK((expm(Mat::Zero(2, 2), 5.0) - Mat::Identity(2, 2))
            .cwiseAbs()
            .maxCoeff() == 0.0);

  Mat a = Mat::Constant(1, 1, -1.0);
  CHECK(expm(a, 1.0)(0, 0) == doctest::Approx(std::exp(-1.0)).epsilon(1e-12));

  Mat N = mat2(0, 1, 0, 0);
  Mat E = expm(N, 2.0);
  CHECK(E(0, 0) == doctest::Approx(1.0));
  CHECK(E(0, 1) == doctest::Approx(2.0));
  CHECK(E(1, 0) == doctest::Approx(0.0));
  CHECK(E(1, 1) == doctest::Approx(1.0));

  CHECK_THROWS_AS(expm(Mat::Identity(2, 2), 1e4), std::overflow_error);
  CHECK_THROWS_AS(expm(N, -1.0), std::invalid_argument);
}

TEST_CASE("expm accuracy against the spectral oracle") {
  // Symmetric case: e^{tA} = U e^{t diag} U' is computable independently.
  Rng rng(derive_seed(23, "expm-oracle"));
  for (int trial = 0; trial < 24; ++trial) {
    int d = 2 + int(rng.below(5));
    Mat B(d, d);
    for (int i = 0; i < d; ++i)
      for (int j = 0; j < d; ++j) B(i, j) = rng.uniform(-1, 1);
    Mat A = 0.5 * (B + B.transpose());
    double t = rng.uniform(0.1, 10.0);
    if (trial % 4 == 0) {
      // Stress ||tA|| right up to the contract boundary of 100.
      A *= 99.0 / (t * A.cwiseAbs().colwise().sum().maxCoeff());
    }
    Eigen::SelfAdjointEigenSolver<Mat> es(A);
    Mat oracle = es.eigenvectors() *
                 (t * es.eigenvalues().array()).exp().matrix().asDiagonal() *
                 es.eigenvectors().transpose();
    Mat got = expm(A, t);
    double rel = (got - oracle).norm() / oracle.norm();
    CHECK(rel <= 1e-10);
  }
}

TEST_CASE("semigroup positivity for Metzler generators") {
  Rng rng(derive_seed(29, "semigroup-pos"));
  for (int trial = 0; trial < 20; ++trial) {
    Mat A = metzler_random(2 + int(rng.below(8)), 0.6, 0.3, 1000 + trial);
    for (double t : {0.1, 1.0, 10.0}) {
      CHECK(expm(A, t).minCoeff() >= -1e-12);
    }
  }
}

TEST_CASE("euler semigroup approximation") {
  Mat a = Mat::Constant(1, 1, -1.0);
  Vec one = Vec::Ones(1);
  Vec v = euler_semigroup_approx(a, 1.0, 10, one);
  CHECK(v(0) == doctest::Approx(std::pow(10.0 / 11.0, 10)).epsilon(1e-14));

  Mat Z = Mat::Zero(3, 3);
  Vec z(3);
  z << 1, 2, 3;
  CHECK((euler_semigroup_approx(Z, 2.0, 7, z) - z).norm() <= 1e-12);

  // 5x5 random Metzler, t = 1: O(1/n) error against the expm oracle.
  Mat A = metzler_random(5, 0.7, 0.2, 77);
  Vec x(5);
  x << 1, 0.5, 2, 0.25, 1.5;
  Vec target = expm(A, 1.0) * x;
  double prev = 1e300;
  for (int p = 4; p <= 12; ++p) {
    int n = 1 << p;
    double err = (euler_semigroup_approx(A, 1.0, n, x) - target).norm();
    CHECK(err <= prev + 1e-12);  // nonincreasing in n
    prev = err;
    if (n == 4096) CHECK(err <= 1e-3 * x.norm());
  }

  CHECK_THROWS_AS(euler_semigroup_approx(mat2(2, 0, 0, 2), 10.0, 1, Vec::Ones(2)),
                  std::invalid_argument);  // n/t below s(A)
}

TEST_CASE("generator approximation via the resolvent") {
  Mat a = Mat::Constant(1, 1, -1.0);
  Vec one = Vec::Ones(1);
  CHECK(generator_approx(a, one, 100.0)(0) ==
        doctest::Approx(-100.0 / 101.0).epsilon(1e-14));

  Mat Z = Mat::Zero(2, 2);
  Vec x(2);
  x << 3, -1;
  CHECK(generator_approx(Z, x, 5.0).norm() <= 1e-12);

  // Error halves when lambda doubles.
  Mat A = metzler_random(10, 0.5, 0.0, 99);
  Vec v = Vec::Ones(10);
  Vec Av = A * v;
  double prev_err = -1;
  for (double lam : {100.0, 200.0, 400.0, 800.0}) {
    double err = (generator_approx(A, v, lam) - Av).norm();
    if (prev_err > 0) {
      CHECK(err == doctest::Approx(prev_err / 2).epsilon(0.2));
    }
    prev_err = err;
  }
}

TEST_CASE("perron pair examples") {
  Cone K = Cone::Orthant(2);
  PerronPair p1 = perron_pair(mat2(-2, 1, 1, -2), K);
  CHECK(p1.value == doctest::Approx(-1.0).epsilon(1e-8));
  CHECK(p1.vector(0) == doctest::Approx(1 / std::sqrt(2.0)).epsilon(1e-7));
  CHECK(p1.vector(1) == doctest::Approx(1 / std::sqrt(2.0)).epsilon(1e-7));

  PerronPair p2 = perron_pair(mat2(3, 0, 0, 1), K);
  CHECK(p2.value == doctest::Approx(3.0));
  CHECK(p2.vector(0) == doctest::Approx(1.0));

  PerronPair p3 = perron_pair(mat2(0, 1, 1, 0), K);
  CHECK(p3.value == doctest::Approx(1.0));
  CHECK(p3.vector(0) == doctest::Approx(1 / std::sqrt(2.0)).epsilon(1e-7));
}

TEST_CASE("combined spectral report carries the Perron triple") {
  Mat A = mat2(-2, 1, 1, -2);
  SpectralReport rep = spectral_report(A, Cone::Orthant(2));
  REQUIRE(rep.perron_value.has_value());
  CHECK(*rep.perron_value == doctest::Approx(rep.s_A).epsilon(1e-10));
  REQUIRE(rep.perron_vector.has_value());
  CHECK(rep.perron_vector->minCoeff() > 0);
  REQUIRE(rep.dual_perron_vector.has_value());
}

TEST_CASE("perron value equals the spectral bound on random Metzler") {
  for (int trial = 0; trial < 200; ++trial) {
    int d = 2 + trial % 19;
    Mat A = metzler_random(d, 0.5, trial % 3 == 0 ? 1.5 : 0.0, 5000 + trial);
    SpectralReport rep = eigen_report(A);
    CHECK(rep.s_R_A == doctest::Approx(rep.s_A).epsilon(1e-8));
    PerronPair p = perron_pair(A, Cone::Orthant(d));
    CHECK(p.value == doctest::Approx(rep.s_A).epsilon(1e-8));
    CHECK(p.vector.minCoeff() >= -1e-12);
    CHECK((A * p.vector - p.value * p.vector).norm() <= 1e-7);
    CHECK((A.transpose() * p.dual_vector - p.value * p.dual_vector).norm() <=
          1e-7);
  }
}

TEST_CASE("resolvent is positive and decreasing past the spectral bound") {
  Rng rng(derive_seed(31, "resolvent-dec"));
  for (int trial = 0; trial < 20; ++trial) {
    Mat A = metzler_random(6, 0.6, 0.0, 31 + trial);
    double s = eigen_report(A).s_A;
    std::vector<double> grid;
    for (int k = 0; k < 20; ++k) grid.push_back(s + 0.05 + 0.3 * k);
    ResolventScan scan = resolvent_positivity_scan(A, Cone::Orthant(6), grid);
    for (const auto& e : scan.entries) CHECK(e.positive);
    CHECK(scan.decreasing_on_stable_side);
  }
}

TEST_CASE("resolvent identity") {
  Rng rng(derive_seed(37, "res-identity"));
  for (int trial = 0; trial < 20; ++trial) {
    Mat A = metzler_random(5, 0.5, 0.0, 200 + trial);
    double s = eigen_report(A).s_A;
    double lam = s + rng.uniform(0.5, 3.0);
    double mu = s + rng.uniform(0.5, 3.0);
    if (std::abs(lam - mu) < 1e-3) mu += 0.5;
    Mat Rl = resolvent(A, lam).R;
    Mat Rm = resolvent(A, mu).R;
    Mat lhs = Rl - Rm;
    Mat rhs = (mu - lam) * Rl * Rm;
    CHECK((lhs - rhs).norm() <= 1e-8 * std::max(1.0, lhs.norm()));
  }
}
