// possem - stability certificates for positive linear systems
// Copyright 2026 The possem Authors
// Licensed under the Apache License, Version 2.0

#include "possem/lyapunov.hpp"

#include <Eigen/Eigenvalues>
#include <Eigen/LU>

#include <algorithm>
#include <cmath>
#include <complex>
#include <stdexcept>

#include "possem/errors.hpp"
#include "possem/rng.hpp"
#include "possem/spectral.hpp"

namespace possem {

namespace {

using CMat = Eigen::MatrixXcd;
using CVec = Eigen::VectorXcd;

double matrix_scale(const Mat& A) {
  return std::max(1.0, A.cwiseAbs().maxCoeff());
}

// A'P + PA = -I via the Kronecker system
// (I (x) A' + A' (x) I) vec(P) = -vec(I)  (column-major vec).
Mat solve_kronecker(const Mat& A) {
  const int d = static_cast<int>(A.rows());
  const Mat At = A.transpose();
  Mat big = Mat::Zero(d * d, d * d);
  for (int i = 0; i < d; ++i) {
    big.block(i * d, i * d, d, d) += At;  // I (x) A'
  }
  for (int i = 0; i < d; ++i) {
    for (int j = 0; j < d; ++j) {
      for (int k = 0; k < d; ++k) big(i * d + k, j * d + k) += At(i, j);
    }
  }
  Vec rhs(d * d);
  for (int j = 0; j < d; ++j)
    for (int i = 0; i < d; ++i) rhs(j * d + i) = i == j ? -1.0 : 0.0;
  Vec p = big.partialPivLu().solve(rhs);
  Mat P(d, d);
  for (int j = 0; j < d; ++j)
    for (int i = 0; i < d; ++i) P(i, j) = p(j * d + i);
  return P;
}

// Bartels-Stewart reduction in complex arithmetic: with A = U T U*
// (complex Schur), A'P + PA = -I becomes T* Y + Y T = -I for Y = U* P U,
// solved column by column by forward substitution.
Mat solve_schur(const Mat& A) {
  const int d = static_cast<int>(A.rows());
  Eigen::ComplexSchur<CMat> schur(A.cast<std::complex<double>>());
  if (schur.info() != Eigen::Success) {
    throw NumericalError("lyapunov: complex Schur decomposition failed");
  }
  const CMat& T = schur.matrixT();
  const CMat& U = schur.matrixU();

  CMat Y = CMat::Zero(d, d);
  for (int k = 0; k < d; ++k) {
    CVec rhs = CVec::Zero(d);
    rhs(k) = -1.0;
    for (int j = 0; j < k; ++j) rhs -= T(j, k) * Y.col(j);
    // (T* + T(k,k) I) y = rhs with T* lower triangular.
    CVec y(d);
    for (int i = 0; i < d; ++i) {
      std::complex<double> acc = rhs(i);
      for (int j = 0; j < i; ++j) acc -= std::conj(T(j, i)) * y(j);
      y(i) = acc / (std::conj(T(i, i)) + T(k, k));
    }
    Y.col(k) = y;
  }
  CMat P = U * Y * U.adjoint();
  return P.real();
}

}  // namespace

LyapunovSolution lyapunov_solve(const Mat& A) {
  if (A.rows() != A.cols() || A.rows() < 1) {
    throw std::invalid_argument("lyapunov_solve: matrix must be square");
  }
  require_finite(A, "lyapunov_solve");
  const int d = static_cast<int>(A.rows());

  LyapunovSolution out;
  SpectralReport rep = eigen_report(A);

  // Singular pencil: lambda_i + lambda_j ~ 0 for some eigenvalue pair.
  double min_pair = std::numeric_limits<double>::infinity();
  for (Eigen::Index i = 0; i < d; ++i) {
    for (Eigen::Index j = 0; j < d; ++j) {
      min_pair = std::min(min_pair,
                          std::abs(rep.eigenvalues(i) + rep.eigenvalues(j)));
    }
  }
  if (min_pair < 1e-10 * matrix_scale(A)) {
    out.status = LyapunovSolution::Status::kMarginal;
    return out;
  }

  Mat P = d <= 64 ? solve_kronecker(A) : solve_schur(A);
  P = 0.5 * (P + P.transpose());
  out.P = P;
  out.residual =
      (A.transpose() * P + P * A + Mat::Identity(d, d)).cwiseAbs().maxCoeff();

  Eigen::SelfAdjointEigenSolver<Mat> es(P);
  double min_eig = es.eigenvalues().minCoeff();
  double max_eig = es.eigenvalues().maxCoeff();
  out.min_eig_P = min_eig;

  if (rep.s_A >= 0 || min_eig <= 0) {
    out.status = LyapunovSolution::Status::kUnstable;
    return out;
  }
  out.status = LyapunovSolution::Status::kSolved;
  out.norm_P = std::max(std::abs(min_eig), std::abs(max_eig));
  out.eta = 1.0 / (2.0 * out.norm_P);
  return out;
}

PairingCheck pairing_condition_check(const Mat& A, double eta, const Mat& P,
                                     int samples, std::uint64_t seed) {
  if (A.rows() != A.cols() || P.rows() != A.rows() || P.cols() != A.cols()) {
    throw std::invalid_argument("pairing_condition_check: dimension mismatch");
  }
  if (!(eta > 0)) {
    throw std::invalid_argument("pairing_condition_check: eta must be > 0");
  }
  if (samples < 1) {
    throw std::invalid_argument(
        "pairing_condition_check: samples must be >= 1");
  }
  const int d = static_cast<int>(A.rows());

  PairingCheck out;
  out.worst = -std::numeric_limits<double>::infinity();
  Rng rng(derive_seed(seed, "pairing-samples"));

  auto evaluate = [&](Vec x) {
    double nx = x.norm();
    if (!(nx > 0)) return;
    x /= nx;
    Vec Px = P * x;
    double npx = Px.norm();
    if (!(npx > 0)) {
      throw NumericalError(
          "pairing_condition_check: Px = 0 for a unit vector; P is not "
          "injective");
    }
    Vec y = Px / npx;
    double value = y.dot(x) * (A * x).dot(y);
    if (value > out.worst) {
      out.worst = value;
      out.witness = x;
    }
  };

  for (int i = 0; i < d; ++i) {
    Vec e = Vec::Zero(d);
    e(i) = 1.0;
    evaluate(e);
  }
  for (int k = 0; k < samples; ++k) {
    Vec x(d);
    for (int i = 0; i < d; ++i) x(i) = rng.gaussian();
    evaluate(x);
  }

  out.holds = out.worst <= -eta + 1e-10;
  return out;
}

PsdDistance psd_distance(const Mat& K_mat, int samples, std::uint64_t seed) {
  if (K_mat.rows() != K_mat.cols() || K_mat.rows() < 1) {
    throw std::invalid_argument("psd_distance: matrix must be square");
  }
  require_finite(K_mat, "psd_distance");
  double asym = (K_mat - K_mat.transpose()).cwiseAbs().maxCoeff();
  if (asym > kSymmetryTol * matrix_scale(K_mat)) {
    throw std::invalid_argument("psd_distance: matrix is not symmetric");
  }
  const Mat S = 0.5 * (K_mat + K_mat.transpose());
  const int d = static_cast<int>(S.rows());

  PsdDistance out;
  Eigen::SelfAdjointEigenSolver<Mat> es(S);
  double lam_min = es.eigenvalues().minCoeff();
  out.via_eigen = std::max(0.0, -lam_min);
  out.dist = out.via_eigen;
  out.lemma_applicable = lam_min <= 0;

  // Independent route: sampled sup of -<Ky, y>, refined by power iteration
  // on sigma I - K from the best sample.
  Rng rng(derive_seed(seed, "psd-sup"));
  double best = -std::numeric_limits<double>::infinity();
  Vec best_y;
  auto consider = [&](const Vec& y) {
    double ny = y.norm();
    if (!(ny > 0)) return;
    Vec yn = y / ny;
    double v = -yn.dot(S * yn);
    if (v > best) {
      best = v;
      best_y = yn;
    }
  };
  for (int i = 0; i < d; ++i) {
    Vec e = Vec::Zero(d);
    e(i) = 1.0;
    consider(e);
  }
  for (int k = 0; k < samples; ++k) {
    Vec y(d);
    for (int i = 0; i < d; ++i) y(i) = rng.gaussian();
    consider(y);
  }
  const double sigma = gershgorin_shift(S);
  Mat M = sigma * Mat::Identity(d, d) - S;
  Vec v = best_y;
  for (int it = 0; it < 1000; ++it) {
    Vec w = M * v;
    double nw = w.norm();
    if (!(nw > 0)) break;
    Vec vn = w / nw;
    bool settled = (vn - v).norm() < 1e-14 && it > 3;
    v = vn;
    if (settled) break;
  }
  consider(v);
  out.via_sup = best;
  return out;
}

double lyapunov_operator_bound(const Mat& A) {
  SpectralReport rep = eigen_report(A);
  double best = kNegInf;
  for (Eigen::Index i = 0; i < rep.eigenvalues.size(); ++i) {
    for (Eigen::Index j = 0; j < rep.eigenvalues.size(); ++j) {
      best = std::max(
          best, (rep.eigenvalues(i) + std::conj(rep.eigenvalues(j))).real());
    }
  }
  return best;
}

}  // namespace possem
