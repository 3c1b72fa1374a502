// possem - stability certificates for positive linear systems
// Copyright 2026 The possem Authors
// Licensed under the Apache License, Version 2.0

#pragma once

#include <cstdint>
#include <map>
#include <optional>
#include <string>

#include "possem/cones.hpp"
#include "possem/spectral.hpp"

namespace possem {

// |s(A)| below this is "marginal": every condition in the equivalence
// theorems is strict, so certificates refuse to force a verdict there.
inline constexpr double kMarginalTol = 1e-8;

// Two-sided estimate of the uniform small-gain constant
//   eta = inf { dist(Ax, K) / ||x|| : 0 != x in K }.
// On the orthant with the Sup norm the value is exact (one LP per face of
// the unit ball); for other norms `value` is the best point found by
// multi-start projected descent (an upper bound of the inf) and `lower` a
// certified lower bound derived from the Sup-norm LP and the dual Perron
// vector.
struct EtaBounds {
  NormChoice norm = NormChoice::kSup;
  double lower = 0.0;
  double upper = 0.0;
  double value = 0.0;
  bool exact = false;
  bool lp_available = false;
  Vec minimizer;
};

EtaBounds uniform_small_gain_eta(const Mat& A, const Cone& K, NormChoice norm,
                                 std::uint64_t seed = 0);

// Monotone bounded invertibility: -Ax <= y (x, y >= 0) implies
// ||x|| <= c ||y||. Succeeds with c = ||R(0,A)|| iff s(A) < 0; otherwise
// carries the violating pair (Perron vector, 0).
struct MbiResult {
  bool success = false;
  double c = 0.0;
  std::optional<Vec> witness_x;
  std::optional<Vec> witness_y;
};
MbiResult mbi_constant(const Mat& A, const Cone& K,
                       NormChoice norm = NormChoice::kSup);

// Pointwise small-gain condition: no 0 != x >= 0 with Ax >= 0. Decided two
// independent ways that must agree (phase-1 simplex feasibility and the
// sign of the Perron value); disagreement throws VerdictMismatchError.
struct PointwiseResult {
  bool holds = false;
  std::optional<Vec> witness;  // ||x||_1 = 1 with Ax >= 0 when it fails
  bool simplex_used = false;   // false above kSimplexDimensionCap
};
PointwiseResult pointwise_small_gain(const Mat& A, const Cone& K);

// Same condition for the dual operator (transpose on the self-dual
// orthant).
PointwiseResult dual_small_gain(const Mat& A, const Cone& K);

// Fixes eps = eta/2 and stress-tests it with random positive rank-1
// perturbations ||P|| <= eps: every A+P must stay spectrally stable. A
// counterexample would falsify the implementation, not the theorem.
struct RobustSmallGain {
  double eps = 0.0;
  int trials_run = 0;
  std::optional<Mat> counterexample_P;
  std::optional<Vec> counterexample_x;
};
RobustSmallGain robust_small_gain_radius(const Mat& A, const Cone& K,
                                         int trials, std::uint64_t seed,
                                         NormChoice norm = NormChoice::kSup);

// Strong decreasing property: z = R(0,A) * ones is strictly positive with
// Az = -ones << 0 and lambda_z = max_j (Az)_j / z_j < 0 when s(A) < 0.
struct DecreasingVector {
  enum class Status { kFound, kUnstable, kMarginal };
  Status status = Status::kUnstable;
  Vec z;
  double lambda_z = 0.0;
};
DecreasingVector decreasing_vector(const Mat& A, const Cone& K);

// Discrete-time bridge: a positive operator T is Schur stable iff the
// generator-style matrix T - I satisfies the uniform small-gain condition.
struct DiscreteTimeCheck {
  bool spr_lt_1 = false;
  double spectral_radius_T = 0.0;
  double eta_discrete = 0.0;
};
DiscreteTimeCheck discrete_time_check(const Mat& T, const Cone& K);

enum class Verdict { kStable, kUnstable, kInconclusive };
const char* to_string(Verdict v);

struct ConditionResult {
  bool verdict = false;
  std::optional<Vec> witness;
  std::string detail;
};

struct CertificateOptions {
  int robust_trials = 20;
  double marginal_tol = kMarginalTol;
};

struct StabilityCertificate {
  int dimension = 0;
  std::string cone;
  NormChoice norm = NormChoice::kSup;
  std::uint64_t seed = 0;
  double s_A = 0.0;
  double omega_A = 0.0;  // = s_A (spectrum determined growth)
  double residual = 0.0;
  Verdict verdict = Verdict::kInconclusive;
  bool stable = false;
  EtaBounds eta;
  std::optional<double> c_mbi;
  double eps_robust = 0.0;
  std::optional<Vec> decreasing_z;
  std::optional<double> lambda_z;
  std::optional<Vec> perron_vector;
  std::optional<Vec> dual_witness;
  std::optional<Vec> unstable_witness;
  bool simplex_skipped = false;
  std::map<std::string, ConditionResult> conditions;
};

// Runs every applicable equivalent condition, asserts that the verdicts
// agree (VerdictMismatchError otherwise - a bug detector, exit 5 in the
// CLI), and assembles the certificate. Marginal |s(A)| < marginal_tol is
// labeled inconclusive instead of forced to a verdict.
StabilityCertificate assemble_certificate(const Mat& A, const Cone& K,
                                          NormChoice norm, std::uint64_t seed,
                                          const CertificateOptions& opts = {});

}  // namespace possem
