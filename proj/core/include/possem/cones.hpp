// possem - stability certificates for positive linear systems
// Copyright 2026 The possem Authors
// Licensed under the Apache License, Version 2.0

#pragma once

#include <Eigen/Dense>

#include <optional>
#include <string>
#include <string_view>

namespace possem {

using Vec = Eigen::VectorXd;
using Mat = Eigen::MatrixXd;

// Default absolute tolerance for cone membership; matches the eigensolver
// residual scale at the dimensions this library targets (d <= 400).
inline constexpr double kMembershipTol = 1e-9;

// Entrywise positivity tolerance for operators and resolvents.
inline constexpr double kPositivityTol = 1e-10;

// Maximum admissible asymmetry when a symmetric matrix is expected.
inline constexpr double kSymmetryTol = 1e-8;

enum class NormChoice { kEuclidean, kSup, kOne };

const char* to_string(NormChoice norm);
std::optional<NormChoice> norm_from_string(std::string_view name);

// Vector norm in the chosen flavor. All three are monotone on the orthant
// order (0 <= x <= y implies ||x|| <= ||y||), i.e. normality constant 1.
double vector_norm(const Vec& x, NormChoice norm);

// Induced operator norm: Sup -> max absolute row sum, One -> max absolute
// column sum, Euclidean -> spectral norm.
double operator_norm(const Mat& A, NormChoice norm);

bool all_finite(const Vec& x);
bool all_finite(const Mat& A);
void require_finite(const Vec& x, const char* what);
void require_finite(const Mat& A, const char* what);

// Strict entrywise positivity with a relative floor: every entry must
// exceed rel_eps * max|x_i|. This is the numerical reading of "quasi
// interior" used by the Collatz-Wielandt and log-formula modules.
bool strictly_positive(const Vec& x, double rel_eps = 1e-12);

enum class ConeKind { kOrthant, kWeightedOrthant, kSecondOrder, kPsd };

// Closed convex pointed generating cone in one of four supported shapes:
//
//   Orthant(d)            { x in R^d : x_i >= 0 }
//   WeightedOrthant(d,w)  the orthant carried with strictly positive
//                         weights; as a set it equals Orthant(d), the
//                         weights fix the canonical interior point and the
//                         dual cone (reciprocal weights)
//   SecondOrder(d)        { (t, u) in R x R^{d-1} : t >= |u|_2 }
//   Psd(n)                positive semidefinite matrices inside the
//                         symmetric n x n matrices; vectors store the full
//                         matrix row-major (ambient dimension n^2) and
//                         inputs are symmetrized, rejecting asymmetry
//                         beyond kSymmetryTol
//
// Orthant, SecondOrder and Psd are self-dual under the flat dot product
// (Frobenius pairing for Psd).
class Cone {
 public:
  static Cone Orthant(int d);
  static Cone WeightedOrthant(Vec weights);
  static Cone SecondOrder(int d);
  static Cone Psd(int n);

  ConeKind kind() const { return kind_; }
  int ambient_dim() const { return dim_; }
  // Matrix order n for the Psd cone; throws for other kinds.
  int psd_order() const;
  const Vec& weights() const;

  bool self_dual() const { return kind_ != ConeKind::kWeightedOrthant; }
  Cone dual() const;

  // All-ones for orthants (the weight vector when weighted), e_1 for the
  // second-order cone, the identity matrix for Psd.
  Vec canonical_interior() const;

  std::string name() const;

 private:
  Cone(ConeKind kind, int dim) : kind_(kind), dim_(dim) {}
  ConeKind kind_;
  int dim_;
  Vec weights_;  // WeightedOrthant only
};

// x within tol (sup-norm scale) of K. Exact membership when tol = 0.
bool cone_contains(const Vec& x, const Cone& K, double tol = kMembershipTol);

// Euclidean-nearest point of K; idempotent, identity on K.
Vec project_onto_cone(const Vec& x, const Cone& K);

// inf over y in K of ||x - y||. Closed form on orthants for every
// NormChoice (norm of the negative part). SecondOrder always measures the
// Euclidean distance, and Psd returns max(0, -lambda_min), the
// operator-norm distance realized by eigenvalue clipping, regardless of
// the requested norm.
double dist_to_cone(const Vec& x, const Cone& K,
                    NormChoice norm = NormChoice::kEuclidean);

struct Decomposition {
  Vec plus;      // y in K
  Vec minus;     // z in K, x = y - z
  double bound;  // M with ||y||, ||z|| <= M ||x|| guaranteed by construction
};

// Splits x = y - z with y, z in K. Positive/negative part on orthants and
// spectral split on Psd (M = 1); Moreau-style projection split on the
// second-order cone (M <= 2 via the triangle inequality).
Decomposition decompose_pm(const Vec& x, const Cone& K);

// True iff x lies in the topological interior of K: all entries > 0 on
// orthants, t > |u| for second-order, positive definite for Psd. In these
// cones interior = quasi-interior = almost-interior. Throws if x is not
// in K (within kMembershipTol).
bool is_quasi_interior(const Vec& x, const Cone& K);

// y - x in K within tol.
bool order_leq(const Vec& x, const Vec& y, const Cone& K,
               double tol = kMembershipTol);

// Strict order with margin: y - x - margin * e in K, where e is the
// canonical interior point of K.
bool order_ll(const Vec& x, const Vec& y, const Cone& K, double margin);

// Full-storage helpers for the Psd cone.
Vec sym_to_vec(const Mat& S);
// Validates near-symmetry (kSymmetryTol, relative), returns the
// symmetrized matrix.
Mat vec_to_sym(const Vec& x, int n);

}  // namespace possem
