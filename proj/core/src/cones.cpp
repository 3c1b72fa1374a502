// possem - stability certificates for positive linear systems
// Copyright 2026 The possem Authors
// Licensed under the Apache License, Version 2.0

#include "possem/cones.hpp"

#include <Eigen/Eigenvalues>

#include <algorithm>
#include <cmath>
#include <stdexcept>

namespace possem {

namespace {

void require_dim(const Vec& x, const Cone& K) {
  if (x.size() != K.ambient_dim()) {
    throw std::invalid_argument("dimension mismatch: vector has " +
                                std::to_string(x.size()) + " entries, cone " +
                                K.name() + " expects " +
                                std::to_string(K.ambient_dim()));
  }
}

Eigen::SelfAdjointEigenSolver<Mat> sym_eigen(const Vec& x, int n) {
  Mat S = vec_to_sym(x, n);
  Eigen::SelfAdjointEigenSolver<Mat> es(S);
  if (es.info() != Eigen::Success) {
    throw std::runtime_error("symmetric eigensolver failed");
  }
  return es;
}

}  // namespace

const char* to_string(NormChoice norm) {
  switch (norm) {
    case NormChoice::kEuclidean: return "euclidean";
    case NormChoice::kSup: return "sup";
    case NormChoice::kOne: return "one";
  }
  return "?";
}

std::optional<NormChoice> norm_from_string(std::string_view name) {
  if (name == "euclidean" || name == "2") return NormChoice::kEuclidean;
  if (name == "sup" || name == "inf") return NormChoice::kSup;
  if (name == "one" || name == "1") return NormChoice::kOne;
  return std::nullopt;
}

double vector_norm(const Vec& x, NormChoice norm) {
  switch (norm) {
    case NormChoice::kEuclidean: return x.norm();
    case NormChoice::kSup: return x.size() == 0 ? 0.0 : x.cwiseAbs().maxCoeff();
    case NormChoice::kOne: return x.cwiseAbs().sum();
  }
  return 0.0;
}

double operator_norm(const Mat& A, NormChoice norm) {
  switch (norm) {
    case NormChoice::kSup:
      return A.cwiseAbs().rowwise().sum().maxCoeff();
    case NormChoice::kOne:
      return A.cwiseAbs().colwise().sum().maxCoeff();
    case NormChoice::kEuclidean: {
      Eigen::SelfAdjointEigenSolver<Mat> es(A.transpose() * A);
      return std::sqrt(std::max(0.0, es.eigenvalues().maxCoeff()));
    }
  }
  return 0.0;
}

bool all_finite(const Vec& x) { return x.allFinite(); }
bool all_finite(const Mat& A) { return A.allFinite(); }

void require_finite(const Vec& x, const char* what) {
  if (!x.allFinite()) {
    throw std::invalid_argument(std::string(what) + ": non-finite entries");
  }
}

void require_finite(const Mat& A, const char* what) {
  if (!A.allFinite()) {
    throw std::invalid_argument(std::string(what) + ": non-finite entries");
  }
}

bool strictly_positive(const Vec& x, double rel_eps) {
  if (x.size() == 0) return false;
  double scale = x.cwiseAbs().maxCoeff();
  if (!(scale > 0.0)) return false;
  return (x.array() > rel_eps * scale).all();
}

Cone Cone::Orthant(int d) {
  if (d < 1) throw std::invalid_argument("Orthant: dimension must be >= 1");
  return Cone(ConeKind::kOrthant, d);
}

Cone Cone::WeightedOrthant(Vec weights) {
  if (weights.size() < 1) {
    throw std::invalid_argument("WeightedOrthant: dimension must be >= 1");
  }
  if (!(weights.array() > 0.0).all() || !weights.allFinite()) {
    throw std::invalid_argument(
        "WeightedOrthant: weights must be strictly positive and finite");
  }
  Cone K(ConeKind::kWeightedOrthant, static_cast<int>(weights.size()));
  K.weights_ = std::move(weights);
  return K;
}

Cone Cone::SecondOrder(int d) {
  if (d < 2) throw std::invalid_argument("SecondOrder: dimension must be >= 2");
  return Cone(ConeKind::kSecondOrder, d);
}

Cone Cone::Psd(int n) {
  if (n < 1) throw std::invalid_argument("Psd: order must be >= 1");
  return Cone(ConeKind::kPsd, n * n);
}

int Cone::psd_order() const {
  if (kind_ != ConeKind::kPsd) {
    throw std::logic_error("psd_order: not a Psd cone");
  }
  return static_cast<int>(std::lround(std::sqrt(double(dim_))));
}

const Vec& Cone::weights() const {
  if (kind_ != ConeKind::kWeightedOrthant) {
    throw std::logic_error("weights: not a weighted orthant");
  }
  return weights_;
}

Cone Cone::dual() const {
  if (kind_ == ConeKind::kWeightedOrthant) {
    return WeightedOrthant(weights_.cwiseInverse());
  }
  return *this;  // Orthant / SecondOrder / Psd are self-dual
}

Vec Cone::canonical_interior() const {
  switch (kind_) {
    case ConeKind::kOrthant:
      return Vec::Ones(dim_);
    case ConeKind::kWeightedOrthant:
      return weights_;
    case ConeKind::kSecondOrder: {
      Vec e = Vec::Zero(dim_);
      e(0) = 1.0;
      return e;
    }
    case ConeKind::kPsd:
      return sym_to_vec(Mat::Identity(psd_order(), psd_order()));
  }
  return Vec();
}

std::string Cone::name() const {
  switch (kind_) {
    case ConeKind::kOrthant:
      return "orthant(" + std::to_string(dim_) + ")";
    case ConeKind::kWeightedOrthant:
      return "weighted-orthant(" + std::to_string(dim_) + ")";
    case ConeKind::kSecondOrder:
      return "second-order(" + std::to_string(dim_) + ")";
    case ConeKind::kPsd:
      return "psd(" + std::to_string(psd_order()) + ")";
  }
  return "?";
}

Vec sym_to_vec(const Mat& S) {
  if (S.rows() != S.cols()) {
    throw std::invalid_argument("sym_to_vec: matrix must be square");
  }
  const int n = static_cast<int>(S.rows());
  Vec x(n * n);
  for (int i = 0; i < n; ++i)
    for (int j = 0; j < n; ++j) x(i * n + j) = S(i, j);
  return x;
}

Mat vec_to_sym(const Vec& x, int n) {
  if (x.size() != n * n) {
    throw std::invalid_argument("vec_to_sym: expected " + std::to_string(n * n) +
                                " entries, got " + std::to_string(x.size()));
  }
  Mat S(n, n);
  for (int i = 0; i < n; ++i)
    for (int j = 0; j < n; ++j) S(i, j) = x(i * n + j);
  double scale = std::max(1.0, S.cwiseAbs().maxCoeff());
  double asym = (S - S.transpose()).cwiseAbs().maxCoeff();
  if (asym > kSymmetryTol * scale) {
    throw std::invalid_argument("vec_to_sym: asymmetry " + std::to_string(asym) +
                                " exceeds tolerance");
  }
  return 0.5 * (S + S.transpose());
}

bool cone_contains(const Vec& x, const Cone& K, double tol) {
  require_dim(x, K);
  require_finite(x, "cone_contains");
  if (tol < 0) throw std::invalid_argument("cone_contains: tol must be >= 0");
  switch (K.kind()) {
    case ConeKind::kOrthant:
    case ConeKind::kWeightedOrthant:
      return (x.array() >= -tol).all();
    case ConeKind::kSecondOrder: {
      double t = x(0);
      double un = x.tail(x.size() - 1).norm();
      // sup-distance to the cone is within a sqrt(2) factor of un - t.
      return un - t <= tol * std::sqrt(2.0);
    }
    case ConeKind::kPsd: {
      auto es = sym_eigen(x, K.psd_order());
      return es.eigenvalues().minCoeff() >= -tol;
    }
  }
  return false;
}

Vec project_onto_cone(const Vec& x, const Cone& K) {
  require_dim(x, K);
  require_finite(x, "project_onto_cone");
  switch (K.kind()) {
    case ConeKind::kOrthant:
    case ConeKind::kWeightedOrthant:
      return x.cwiseMax(0.0);
    case ConeKind::kSecondOrder: {
      const double t = x(0);
      const Vec u = x.tail(x.size() - 1);
      const double un = u.norm();
      if (t >= un) return x;
      Vec p = Vec::Zero(x.size());
      if (t <= -un) return p;  // polar cone: project to the apex
      const double alpha = 0.5 * (t + un);
      p(0) = alpha;
      if (un > 0) p.tail(x.size() - 1) = (alpha / un) * u;
      return p;
    }
    case ConeKind::kPsd: {
      auto es = sym_eigen(x, K.psd_order());
      Vec lam = es.eigenvalues().cwiseMax(0.0);
      Mat P = es.eigenvectors() * lam.asDiagonal() *
              es.eigenvectors().transpose();
      return sym_to_vec(P);
    }
  }
  return x;
}

double dist_to_cone(const Vec& x, const Cone& K, NormChoice norm) {
  require_dim(x, K);
  require_finite(x, "dist_to_cone");
  switch (K.kind()) {
    case ConeKind::kOrthant:
    case ConeKind::kWeightedOrthant:
      return vector_norm((-x).cwiseMax(0.0), norm);
    case ConeKind::kSecondOrder:
      return (x - project_onto_cone(x, K)).norm();
    case ConeKind::kPsd: {
      auto es = sym_eigen(x, K.psd_order());
      return std::max(0.0, -es.eigenvalues().minCoeff());
    }
  }
  return 0.0;
}

Decomposition decompose_pm(const Vec& x, const Cone& K) {
  require_dim(x, K);
  require_finite(x, "decompose_pm");
  Decomposition out;
  switch (K.kind()) {
    case ConeKind::kOrthant:
    case ConeKind::kWeightedOrthant:
      out.plus = x.cwiseMax(0.0);
      out.minus = (-x).cwiseMax(0.0);
      out.bound = 1.0;
      return out;
    case ConeKind::kSecondOrder:
      out.plus = project_onto_cone(x, K);
      out.minus = out.plus - x;  // = projection of -x by Moreau, lies in K
      out.bound = 2.0;
      return out;
    case ConeKind::kPsd: {
      auto es = sym_eigen(x, K.psd_order());
      Mat U = es.eigenvectors();
      Vec lam = es.eigenvalues();
      Mat plus = U * lam.cwiseMax(0.0).asDiagonal() * U.transpose();
      Mat minus = U * (-lam).cwiseMax(0.0).asDiagonal() * U.transpose();
      out.plus = sym_to_vec(plus);
      out.minus = sym_to_vec(minus);
      out.bound = 1.0;
      return out;
    }
  }
  return out;
}

bool is_quasi_interior(const Vec& x, const Cone& K) {
  require_dim(x, K);
  if (!cone_contains(x, K, kMembershipTol)) {
    throw std::invalid_argument("is_quasi_interior: x is not in the cone");
  }
  switch (K.kind()) {
    case ConeKind::kOrthant:
    case ConeKind::kWeightedOrthant:
      return (x.array() > 0.0).all();
    case ConeKind::kSecondOrder:
      return x(0) > x.tail(x.size() - 1).norm();
    case ConeKind::kPsd: {
      auto es = sym_eigen(x, K.psd_order());
      return es.eigenvalues().minCoeff() > 0.0;
    }
  }
  return false;
}

bool order_leq(const Vec& x, const Vec& y, const Cone& K, double tol) {
  if (x.size() != y.size()) {
    throw std::invalid_argument("order_leq: dimension mismatch");
  }
  return cone_contains(y - x, K, tol);
}

bool order_ll(const Vec& x, const Vec& y, const Cone& K, double margin) {
  if (x.size() != y.size()) {
    throw std::invalid_argument("order_ll: dimension mismatch");
  }
  if (!(margin > 0)) {
    throw std::invalid_argument("order_ll: margin must be positive");
  }
  return cone_contains(y - x - margin * K.canonical_interior(), K, 0.0);
}

}  // namespace possem
