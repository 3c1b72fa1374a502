// possem - stability certificates for positive linear systems
// Copyright 2026 The possem Authors
// Licensed under the Apache License, Version 2.0

#pragma once

#include <Eigen/Dense>

#include <cstdint>
#include <limits>
#include <optional>
#include <vector>

#include "possem/cones.hpp"

namespace possem {

inline constexpr double kNegInf = -std::numeric_limits<double>::infinity();

// Off-diagonal nonnegativity check (the generator property for the
// orthant): A_ij >= -tol * scale for i != j.
bool is_metzler(const Mat& A, double rel_tol = 1e-12);

// Entrywise nonnegative matrix.
bool is_nonnegative(const Mat& A, double rel_tol = 1e-12);

// 1 + max absolute row sum: a real number strictly above the spectral
// bound of A (Gershgorin), used to seat resolvent-based iterations.
double gershgorin_shift(const Mat& A);

struct SpectralReport {
  Eigen::VectorXcd eigenvalues;
  double s_A = kNegInf;      // spectral bound, max real part
  double s_R_A = kNegInf;    // real spectral bound, -inf if no real eigenvalue
  double omega_A = kNegInf;  // growth bound; equals s_A in finite dimensions
  double s_ess = kNegInf;    // essential spectral bound: empty spectrum here
  std::optional<double> perron_value;
  std::optional<Vec> perron_vector;
  std::optional<Vec> dual_perron_vector;
  double residual = 0.0;     // max_i ||A v_i - lambda_i v_i|| / ||A||_F
};

// Full dense eigendecomposition. Symmetric inputs are routed to the
// self-adjoint solver. Throws NumericalError if the QR iteration fails or
// the residual contract (1e-8 relative) is violated.
SpectralReport eigen_report(const Mat& A);

// eigen_report plus the Perron triple (value, vector, dual vector) filled
// in; requires a resolvent positive operator for the cone.
SpectralReport spectral_report(const Mat& A, const Cone& K);

// Largest |lambda|.
double spectral_radius(const Mat& T);

struct ResolventSample {
  double lambda = 0.0;
  Mat R;
  bool is_positive = false;        // entrywise, orthant reading
  double min_entry_violation = 0;  // most negative entry, 0 when none
};

// R(lambda, A) = (lambda I - A)^{-1}. Throws NumericalError naming lambda
// as (numerically) a spectral value when the solve residual exceeds the
// 1e-8 relative contract.
ResolventSample resolvent(const Mat& A, double lambda);

// Whether M maps K into K: entrywise nonnegativity for orthants, a
// deterministic sampled-ray check for SecondOrder/Psd.
bool operator_is_positive(const Mat& M, const Cone& K,
                          double tol = kPositivityTol);

struct ResolventScanEntry {
  double lambda = 0.0;
  bool positive = false;
  double min_entry = 0.0;  // orthant: most negative entry of R
};

struct ResolventScan {
  std::vector<ResolventScanEntry> entries;
  // Entrywise R(lambda) >= R(mu) for consecutive grid points
  // s_R(A) < lambda < mu (orthant only; true vacuously otherwise).
  bool decreasing_on_stable_side = true;
};

ResolventScan resolvent_positivity_scan(const Mat& A, const Cone& K,
                                        const std::vector<double>& grid);

// e^{tA} by scaling-and-squaring with the diagonal Pade-13 approximant.
// Throws std::overflow_error when t * mu_inf(A) > 700 (mu_inf = max row
// sum logarithmic norm), advising rescaling.
Mat expm(const Mat& A, double t = 1.0);

// Euler approximant (mu R(mu,A))^n z with mu = n/t; converges to
// expm(A,t) z as n grows. Requires n/t > s(A).
Vec euler_semigroup_approx(const Mat& A, double t, int n, const Vec& z);

// lambda^2 R(lambda,A) x - lambda x, an O(1/lambda) approximation of Ax.
// Requires lambda > s(A).
Vec generator_approx(const Mat& A, const Vec& x, double lambda);

struct PerronPair {
  double value = 0.0;
  Vec vector;
  Vec dual_vector;
  bool used_fallback = false;  // power iteration failed; eigen route used
  int iterations = 0;
};

// Perron eigentriple via power iteration on R(lambda0, A) with
// lambda0 = gershgorin_shift(A) and the all-ones start vector; stops when
// successive Rayleigh quotients agree to 1e-12 or after 10^4 iterations,
// then falls back to the dense eigensolver with positive-part selection.
PerronPair perron_pair(const Mat& A, const Cone& K);

}  // namespace possem
