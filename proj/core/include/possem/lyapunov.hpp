// possem - stability certificates for positive linear systems
// Copyright 2026 The possem Authors
// Licensed under the Apache License, Version 2.0

#pragma once

#include <cstdint>
#include <optional>

#include "possem/cones.hpp"

namespace possem {

// Outcome of solving A'P + PA = -I. A symmetric positive definite P exists
// exactly when s(A) < 0; "marginal" marks a singular pencil
// (lambda_i + lambda_j = 0 for some eigenvalue pair).
struct LyapunovSolution {
  enum class Status { kSolved, kUnstable, kMarginal };
  Status status = Status::kUnstable;
  Mat P;                  // populated whenever the linear system was solvable
  double norm_P = 0.0;    // spectral norm, kSolved only
  double eta = 0.0;       // 1 / (2 ||P||), kSolved only
  double min_eig_P = 0.0;
  double residual = 0.0;  // sup-entry of A'P + PA + I
};

// Kronecker linear system for d <= 64, Schur-based triangular solve above.
LyapunovSolution lyapunov_solve(const Mat& A);

struct PairingCheck {
  bool holds = false;
  double worst = 0.0;  // max recorded Re(<y,x><Ax,y>), reported always
  std::optional<Vec> witness;
};

// Draws `samples` random unit vectors x (plus the canonical basis), sets
// y = Px/||Px|| and records Re(<y,x><Ax,y>); holds iff every value stays
// <= -eta + 1e-10.
PairingCheck pairing_condition_check(const Mat& A, double eta, const Mat& P,
                                     int samples, std::uint64_t seed);

struct PsdDistance {
  double dist = 0.0;       // = via_eigen
  double via_eigen = 0.0;  // max(0, -lambda_min)
  double via_sup = 0.0;    // sampled + power-iteration sup of -<Ky, y>
  bool lemma_applicable = false;  // K not positive definite
};

// Distance of a symmetric matrix to the PSD cone, evaluated by two
// independent routes that must agree when the matrix is not positive
// definite.
PsdDistance psd_distance(const Mat& K_mat, int samples = 64,
                         std::uint64_t seed = 0);

// Spectral bound of the Lyapunov operator K -> AK + KA* on the symmetric
// matrices, via the eigenvalue-sum rule max_{i,j} Re(lambda_i +
// conj(lambda_j)) = 2 s(A).
double lyapunov_operator_bound(const Mat& A);

}  // namespace possem
