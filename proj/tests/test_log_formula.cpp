// possem - stability certificates for positive linear systems
// Copyright 2026 The possem Authors
// Licensed under the Apache License, Version 2.0

#include <doctest.h>

#include <cmath>
#include <sstream>

#include "possem/errors.hpp"
#include "possem/gallery.hpp"
#include "possem/log_formula.hpp"
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

const Cone kOrth2 = Cone::Orthant(2);

}  // namespace

TEST_CASE("orbit trace: scalar oracle for diag(-1,-2)") {
  Mat A = Vec(vec2(-1, -2)).asDiagonal();
  OrbitTrace trace = orbit_trace(A, vec2(1, 1), vec2(1, 1), 10.0, 64);
  // Pairing at t = 10 is e^{-10} + e^{-20} exactly.
  double expected_slope = std::log(std::exp(-10.0) + std::exp(-20.0)) / 10.0;
  int last = static_cast<int>(trace.t_grid.size()) - 1;
  CHECK(trace.t_grid(last) == doctest::Approx(10.0));
  CHECK(trace.log_slopes(last) ==
        doctest::Approx(expected_slope).epsilon(1e-10));
  CHECK(expected_slope == doctest::Approx(-0.9999954601073).epsilon(1e-10));
  // Trailing-third slope at this short horizon still carries an O(e^{-2T/3})
  // correction.
  CHECK(trace.extrapolated_limit == doctest::Approx(-1.0).epsilon(1e-2));
}

TEST_CASE("orbit trace: zero generator has limit 0") {
  Mat A = Mat::Zero(1, 1);
  Vec e = Vec::Ones(1);
  OrbitTrace trace = orbit_trace(A, e, e, 20.0, 32);
  for (Eigen::Index i = 0; i < trace.pairings.size(); ++i) {
    CHECK(trace.pairings(i) == doctest::Approx(1.0).epsilon(1e-12));
  }
  CHECK(trace.extrapolated_limit == doctest::Approx(0.0).epsilon(1e-12));
}

TEST_CASE("orbit trace rejects boundary vectors") {
  // u = (1, 0) is not almost interior; the op refuses it even though the
  // Perron component argument would make the slope converge here.
  Mat A = mat2(-2, 1, 1, -2);
  CHECK_THROWS_AS(orbit_trace(A, vec2(1, 0), vec2(1, 0), 50.0, 64),
                  PreconditionError);

  // The pairing slope itself does converge to s(A) for this irreducible
  // matrix; verified against the expm oracle outside the guarded op.
  Vec e1 = vec2(1, 0);
  double t = 60.0;
  double pairing = e1.dot(expm(A, t) * e1);
  CHECK(std::log(pairing) / t == doctest::Approx(-1.0).epsilon(1e-2));
}

TEST_CASE("orbit trace regression guard: reducible trap is rejected") {
  // diag(0, -5) with u = u' = e2: the naive slope would report -5 even
  // though s(A) = 0.
  Mat A = Vec(vec2(0, -5)).asDiagonal();
  CHECK_THROWS_AS(orbit_trace(A, vec2(0, 1), vec2(0, 1), 50.0, 64),
                  PreconditionError);
}

TEST_CASE("orbit trace converges on random irreducible ensembles") {
  Rng rng(derive_seed(53, "orbit-ensemble"));
  for (int trial = 0; trial < 25; ++trial) {
    int d = 2 + int(rng.below(9));
    Mat A = metzler_random_irreducible(d, 0.5, 0.0, 1500 + trial);
    double s = eigen_report(A).s_A;
    A -= (s + rng.uniform(0.2, 1.5)) * Mat::Identity(d, d);
    s = eigen_report(A).s_A;
    Vec u(d), up(d);
    for (int i = 0; i < d; ++i) {
      u(i) = rng.uniform(0.2, 1.0);
      up(i) = rng.uniform(0.2, 1.0);
    }
    OrbitTrace t50 = orbit_trace(A, u, up, 50.0, 64);
    CHECK(std::abs(t50.extrapolated_limit - s) <= 1e-2);
    OrbitTrace t200 = orbit_trace(A, u, up, 200.0, 64);
    CHECK(std::abs(t200.extrapolated_limit - s) <= 1e-3);
  }
}

TEST_CASE("orbit trace on the diagonal decay operator") {
  Vec d5(5);
  d5 << -1, -2, -3, -4, -5;
  Mat A = d5.asDiagonal();
  Vec ones = Vec::Ones(5);
  OrbitTrace trace = orbit_trace(A, ones, ones, 50.0, 64);
  CHECK(trace.extrapolated_limit == doctest::Approx(-1.0).epsilon(1e-3));
}

TEST_CASE("orbit trace shift equivariance") {
  Mat A = metzler_random_irreducible(5, 0.6, -2.0, 321);
  Vec u = Vec::Ones(5);
  double base = orbit_trace(A, u, u, 80.0, 64).extrapolated_limit;
  for (double c : {-2.0, 3.0}) {
    Mat Ac = A + c * Mat::Identity(5, 5);
    double shifted = orbit_trace(Ac, u, u, 80.0, 64).extrapolated_limit;
    CHECK(shifted == doctest::Approx(base + c).epsilon(1e-9));
  }
}

TEST_CASE("orbit trace geometric grid") {
  Mat A = Vec(vec2(-1, -2)).asDiagonal();
  OrbitTrace trace = orbit_trace(A, vec2(1, 1), vec2(1, 1), 50.0, 64, true);
  CHECK(trace.t_grid(0) == doctest::Approx(0.5));
  CHECK(trace.t_grid(63) == doctest::Approx(50.0));
  CHECK(trace.extrapolated_limit == doctest::Approx(-1.0).epsilon(1e-3));
}

TEST_CASE("orbit trace argument validation") {
  Mat A = mat2(-1, 0, 0, -1);
  CHECK_THROWS_AS(orbit_trace(A, vec2(1, 1), vec2(1, 1), 0.0, 64),
                  std::invalid_argument);
  CHECK_THROWS_AS(orbit_trace(A, vec2(1, 1), vec2(1, 1), 10.0, 1),
                  std::invalid_argument);
}

TEST_CASE("orbit CSV format") {
  Mat A = Mat::Constant(1, 1, -1.0);
  Vec e = Vec::Ones(1);
  OrbitTrace trace = orbit_trace(A, e, e, 2.0, 4);
  std::string csv = orbit_csv(trace);
  CHECK(csv.substr(0, 20) == "t,pairing,log_slope\n");
  CHECK(csv.back() == '\n');
  // 4 data lines + header
  int lines = 0;
  for (char c : csv) lines += c == '\n';
  CHECK(lines == 5);
  CHECK(csv.find("0.5,") != std::string::npos);
}

TEST_CASE("self-adjoint log limit") {
  Mat A = mat2(-2, 1, 1, -2);
  SelfAdjointLogLimit r1 =
      log_limit_selfadjoint(A, vec2(1, 1), vec2(1, 1), vec2(1, 1));
  CHECK(r1.preconditions_ok);
  CHECK(r1.limit == doctest::Approx(-1.0).epsilon(1e-9));  // pairing 2e^{-t}

  Mat D = Vec(vec2(-1, -2)).asDiagonal();
  SelfAdjointLogLimit r2 =
      log_limit_selfadjoint(D, vec2(1, 1), vec2(1, 1), vec2(0.5, 0.5));
  CHECK(r2.preconditions_ok);
  CHECK(r2.limit == doctest::Approx(-1.0).epsilon(1e-6));

  SelfAdjointLogLimit r3 =
      log_limit_selfadjoint(D, vec2(1, 0), vec2(1, 1), vec2(0.5, 0.5));
  CHECK_FALSE(r3.preconditions_ok);
  CHECK(r3.failed_precondition == "u >= w fails");

  CHECK_THROWS_AS(
      log_limit_selfadjoint(mat2(-1, 1, 0, -1), vec2(1, 1), vec2(1, 1),
                            vec2(1, 1)),
      std::invalid_argument);  // not symmetric
}

TEST_CASE("qint upper bound search") {
  QintUpperBound q1 = qint_upper_bound_search(-Mat::Identity(2, 2), kOrth2);
  CHECK(q1.lambda == doctest::Approx(-1.0).epsilon(1e-7));
  CHECK(strictly_positive(q1.u));

  QintUpperBound q2 = qint_upper_bound_search(mat2(-2, 1, 1, -2), kOrth2);
  CHECK(q2.lambda == doctest::Approx(-1.0).epsilon(1e-7));

  QintUpperBound q3 =
      qint_upper_bound_search(Vec(vec2(-1, -2)).asDiagonal(), kOrth2);
  CHECK(q3.lambda == doctest::Approx(-1.0).epsilon(1e-7));
  CHECK(strictly_positive(q3.u));
}

TEST_CASE("qint upper bound validity on random ensembles") {
  for (int trial = 0; trial < 30; ++trial) {
    int d = 2 + trial % 9;
    Mat A = metzler_random_irreducible(d, 0.5, trial % 2 ? 0.7 : -0.3,
                                       2500 + trial);
    double s = eigen_report(A).s_A;
    QintUpperBound q = qint_upper_bound_search(A, Cone::Orthant(d));
    // Entrywise certificate Au <= lambda u, and lambda sits above s(A).
    Vec slack = q.lambda * q.u - A * q.u;
    CHECK(slack.minCoeff() >= -1e-12 * std::max(1.0, q.lambda * q.u.norm()));
    CHECK(q.lambda >= s - 1e-9);
    CHECK(std::abs(q.lambda - s) <= 1e-7);
  }
}

TEST_CASE("eigenvector quasi-interior flags") {
  Mat A = mat2(-2, 1, 1, -2);
  auto flags = eigenvector_qint_check(A, kOrth2);
  REQUIRE(flags.size() == 2);
  double s = eigen_report(A).s_A;
  for (const auto& f : flags) {
    if (f.is_qint) CHECK(f.eigenvalue == doctest::Approx(s).epsilon(1e-8));
  }
  int flagged = 0;
  for (const auto& f : flags) flagged += f.is_qint;
  CHECK(flagged == 1);

  // Diagonal matrix: basis eigenvectors are never quasi-interior.
  auto none = eigenvector_qint_check(Vec(vec2(-1, -2)).asDiagonal(), kOrth2);
  for (const auto& f : none) CHECK_FALSE(f.is_qint);

  // ones ones' - I: the Perron vector ones at eigenvalue d - 1 = 2.
  Mat J = Mat::Ones(3, 3) - Mat::Identity(3, 3);
  auto jf = eigenvector_qint_check(J, Cone::Orthant(3));
  int count = 0;
  for (const auto& f : jf) {
    if (f.is_qint) {
      count++;
      CHECK(f.eigenvalue == doctest::Approx(2.0).epsilon(1e-10));
    }
  }
  CHECK(count == 1);
}
