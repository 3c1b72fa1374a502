// possem - stability certificates for positive linear systems
// Copyright 2026 The possem Authors
// Licensed under the Apache License, Version 2.0

#pragma once

#include <cstdint>
#include <string>
#include <vector>

#include "possem/cones.hpp"

namespace possem {

// x_j counts as in-support when x_j > kSupportRelTol * max_i x_i; the
// numerical reading of "x_j != 0" in quotient formulas.
inline constexpr double kSupportRelTol = 1e-12;

// A finite family of positive functionals, each represented by a vector in
// the dual cone via the inner product. The coordinate family on the
// orthant determines positivity by construction: <e_j, x> >= 0 for all j
// forces x >= 0.
struct FunctionalFamily {
  std::vector<Vec> functionals;
  std::string label;

  static FunctionalFamily Coordinates(int d);
};

// Two-sided Collatz-Wielandt bounds for Metzler matrices:
//
//   cw_lower(A, x)  =  inf_{f in F, <f,x> != 0} <f, Ax> / <f, x>  <=  s(A)
//   cw_upper(A, u)  =  max_j (Au)_j / u_j                         >=  s(A)
//
// for any 0 != x >= 0 and any strictly positive u; both are tight at the
// Perron vector.
double cw_lower(const Mat& A, const Vec& x, const FunctionalFamily& F);
double cw_upper(const Mat& A, const Vec& u);

struct CwOptimum {
  double value = 0.0;  // cw_lower evaluated at the best (Perron) iterate
  Vec argmax;
  double lower = 0.0;  // best lower bound seen across iterates
  double upper = 0.0;  // best upper bound seen across iterates
  int iterations = 0;
  bool converged = false;  // bracket gap <= 1e-9 relative
};

// Maximizes cw_lower by resolvent power iteration toward the Perron
// vector (multi-start, deterministic given seed), tracking the two-sided
// bracket along the way.
CwOptimum cw_optimize(const Mat& A, const Cone& K, std::uint64_t seed,
                      int iters = 1000);

struct CwFamilyResult {
  double sup_inf = 0.0;
  int best_index = -1;
};

// sup over the candidate list of cw_lower(A, x, F). domain_power_n only
// tags provenance: in finite dimensions every vector is in dom(A^{n+1}).
CwFamilyResult cw_functional_family(const Mat& A, const FunctionalFamily& F,
                                    int domain_power_n,
                                    const std::vector<Vec>& candidates);

}  // namespace possem
