// possem - stability certificates for positive linear systems
// Copyright 2026 The possem Authors
// Licensed under the Apache License, Version 2.0

#pragma once

#include <cstdint>
#include <iosfwd>
#include <string>
#include <vector>

#include "possem/cones.hpp"

namespace possem {

// Pairing trace <u', e^{tA} u> along a time grid, with the logarithmic
// slope estimate of the spectral bound. The least-squares slope over the
// trailing third of the grid cancels constant and polynomial log-factors
// faster than pointwise division by t.
struct OrbitTrace {
  Vec t_grid;
  Vec pairings;
  Vec log_slopes;  // log(pairing)/t, defined since pairings stay positive
  double extrapolated_limit = 0.0;
  Vec u, u_prime;
};

// Requires u almost interior (strictly positive, relative threshold 1e-12)
// and u' strictly positive; throws PreconditionError otherwise and
// NumericalError if a pairing fails to stay positive. Linear grid by
// default, geometric (two decades up to t_max) behind the flag.
OrbitTrace orbit_trace(const Mat& A, const Vec& u, const Vec& u_prime,
                       double t_max, int steps, bool geometric = false);

// CSV with header "t,pairing,log_slope", '.' decimal, no locale.
void write_orbit_csv(std::ostream& os, const OrbitTrace& trace);
std::string orbit_csv(const OrbitTrace& trace);

struct SelfAdjointLogLimit {
  double limit = 0.0;
  bool preconditions_ok = false;
  std::string failed_precondition;  // named reason when not ok
};

// Self-adjoint variant: limit of log<v, e^{tA}u>/t for symmetric Metzler A
// with u, v >= w and w strictly positive. Rejects violated hypotheses by
// name instead of silently mis-converging.
SelfAdjointLogLimit log_limit_selfadjoint(const Mat& A, const Vec& u,
                                          const Vec& v, const Vec& w,
                                          double t_max = 100.0,
                                          int steps = 64);

struct QintUpperBound {
  double lambda = 0.0;  // least certified value with Au <= lambda u
  Vec u;                // strictly positive witness
  bool converged = false;
  int iterations = 0;
};

// Shrinks lambda toward s(A) through witnesses u = R(lambda, A) * ones,
// each certifying Au <= lambda' u entrywise for lambda' = max quotient.
QintUpperBound qint_upper_bound_search(const Mat& A, const Cone& K,
                                       std::uint64_t seed = 0,
                                       int iters = 500);

struct EigenvectorQintFlag {
  double eigenvalue = 0.0;
  bool is_qint = false;
};

// Flags the real eigenpairs of a symmetric Metzler matrix whose
// eigenvector is quasi-interior; any flagged eigenvalue must be s(A).
std::vector<EigenvectorQintFlag> eigenvector_qint_check(const Mat& A,
                                                        const Cone& K);

}  // namespace possem
