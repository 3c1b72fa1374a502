// possem - stability certificates for positive linear systems
// Copyright 2026 The possem Authors
// Licensed under the Apache License, Version 2.0

#include "possem/collatz_wielandt.hpp"

#include <Eigen/LU>

#include <algorithm>
#include <cmath>
#include <limits>
#include <stdexcept>

#include "possem/errors.hpp"
#include "possem/rng.hpp"
#include "possem/spectral.hpp"

namespace possem {

FunctionalFamily FunctionalFamily::Coordinates(int d) {
  if (d < 1) throw std::invalid_argument("Coordinates: d must be >= 1");
  FunctionalFamily F;
  F.label = "coordinates";
  for (int i = 0; i < d; ++i) {
    Vec e = Vec::Zero(d);
    e(i) = 1.0;
    F.functionals.push_back(std::move(e));
  }
  return F;
}

double cw_lower(const Mat& A, const Vec& x, const FunctionalFamily& F) {
  if (A.rows() != A.cols() || x.size() != A.rows()) {
    throw std::invalid_argument("cw_lower: dimension mismatch");
  }
  require_finite(x, "cw_lower");
  if (x.cwiseAbs().maxCoeff() == 0.0) {
    throw std::invalid_argument("cw_lower: x must be non-zero");
  }
  if (x.minCoeff() < -kMembershipTol * x.cwiseAbs().maxCoeff()) {
    throw std::invalid_argument("cw_lower: x must lie in the cone");
  }
  if (F.functionals.empty()) {
    throw std::invalid_argument("cw_lower: empty functional family");
  }

  const Vec Ax = A * x;
  const double xmax = x.cwiseAbs().maxCoeff();
  double inf = std::numeric_limits<double>::infinity();
  bool any = false;
  for (const Vec& f : F.functionals) {
    if (f.size() != x.size()) {
      throw std::invalid_argument("cw_lower: functional dimension mismatch");
    }
    double fx = f.dot(x);
    double support_floor = kSupportRelTol * f.cwiseAbs().sum() * xmax;
    if (fx <= support_floor) continue;
    inf = std::min(inf, f.dot(Ax) / fx);
    any = true;
  }
  if (!any) {
    throw NumericalError("cw_lower: no functional pairs non-trivially with x");
  }
  return inf;
}

double cw_upper(const Mat& A, const Vec& u) {
  if (A.rows() != A.cols() || u.size() != A.rows()) {
    throw std::invalid_argument("cw_upper: dimension mismatch");
  }
  if (!strictly_positive(u, kSupportRelTol)) {
    throw PreconditionError("cw_upper: u must be quasi-interior");
  }
  return ((A * u).array() / u.array()).maxCoeff();
}

CwOptimum cw_optimize(const Mat& A, const Cone& K, std::uint64_t seed,
                      int iters) {
  if (A.rows() != A.cols() || A.rows() != K.ambient_dim()) {
    throw std::invalid_argument("cw_optimize: dimension mismatch");
  }
  if (K.kind() != ConeKind::kOrthant &&
      K.kind() != ConeKind::kWeightedOrthant) {
    throw std::invalid_argument("cw_optimize: only supported on the orthant");
  }
  if (!is_metzler(A)) {
    throw PreconditionError("cw_optimize: matrix is not Metzler");
  }

  const int d = static_cast<int>(A.rows());
  const FunctionalFamily coords = FunctionalFamily::Coordinates(d);
  const double lambda0 = gershgorin_shift(A);
  Eigen::PartialPivLU<Mat> lu(lambda0 * Mat::Identity(d, d) - A);

  CwOptimum out;
  out.lower = -std::numeric_limits<double>::infinity();
  out.upper = std::numeric_limits<double>::infinity();

  std::vector<Vec> starts;
  starts.push_back(Vec::Ones(d));
  Rng rng(derive_seed(seed, "cw-multistart"));
  for (int k = 0; k < 4; ++k) {
    Vec r(d);
    for (int i = 0; i < d; ++i) r(i) = rng.uniform(0.05, 1.0);
    starts.push_back(r);
  }

  for (const Vec& start : starts) {
    Vec x = start / start.norm();
    for (int it = 0; it < iters; ++it) {
      double lo = cw_lower(A, x, coords);
      if (lo > out.lower) {
        out.lower = lo;
        out.argmax = x;
      }
      if (strictly_positive(x, kSupportRelTol)) {
        out.upper = std::min(out.upper, cw_upper(A, x));
      }
      out.iterations++;
      if (out.upper - out.lower <=
          1e-9 * std::max(1.0, std::abs(out.upper))) {
        out.converged = true;
        break;
      }
      // Resolvent power step: monotone improvement toward the Perron
      // vector without subgradient bookkeeping.
      Vec y = lu.solve(x);
      double yn = y.norm();
      if (!(yn > 0) || !y.allFinite()) break;
      x = y / yn;
    }
    if (out.converged) break;
  }

  out.value = out.lower;
  return out;
}

CwFamilyResult cw_functional_family(const Mat& A, const FunctionalFamily& F,
                                    int domain_power_n,
                                    const std::vector<Vec>& candidates) {
  if (domain_power_n < 0) {
    throw std::invalid_argument("cw_functional_family: n must be >= 0");
  }
  if (candidates.empty()) {
    throw std::invalid_argument("cw_functional_family: empty candidate list");
  }
  CwFamilyResult out;
  out.sup_inf = -std::numeric_limits<double>::infinity();
  for (std::size_t i = 0; i < candidates.size(); ++i) {
    double v = cw_lower(A, candidates[i], F);
    if (v > out.sup_inf) {
      out.sup_inf = v;
      out.best_index = static_cast<int>(i);
    }
  }
  return out;
}

}  // namespace possem
