// possem - stability certificates for positive linear systems
// Copyright 2026 The possem Authors
// Licensed under the Apache License, Version 2.0

#pragma once

#include "possem/cones.hpp"

namespace possem {

// Hard cap on the operator dimension for simplex-backed certificate
// conditions; above it callers fall back to their eigensolver routes.
inline constexpr int kSimplexDimensionCap = 64;

enum class LpStatus { kOptimal, kInfeasible, kUnbounded };

struct LpResult {
  LpStatus status = LpStatus::kInfeasible;
  double objective = 0.0;
  Vec x;  // primal point when optimal
};

// Dense two-phase tableau simplex with Bland's anti-cycling rule for the
// standard form
//
//   minimize c'x   subject to   Ax = b,  x >= 0.
//
// feas_tol decides phase-1 feasibility relative to the row scale.
LpResult solve_lp(const Mat& A, const Vec& b, const Vec& c,
                  double feas_tol = 1e-9);

struct FeasibilityResult {
  bool feasible = false;
  Vec x;                   // a feasible point when feasible
  double phase1_objective = 0.0;
};

// Phase-1 feasibility of {x >= 0 : Ax = b}.
FeasibilityResult phase1_feasible(const Mat& A, const Vec& b,
                                  double feas_tol = 1e-9);

}  // namespace possem
