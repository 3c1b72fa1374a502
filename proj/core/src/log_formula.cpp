// possem - stability certificates for positive linear systems
// Copyright 2026 The possem Authors
// Licensed under the Apache License, Version 2.0

#include "possem/log_formula.hpp"

#include <Eigen/Eigenvalues>
#include <Eigen/LU>

#include <algorithm>
#include <charconv>
#include <cmath>
#include <ostream>
#include <stdexcept>

#include "possem/errors.hpp"
#include "possem/spectral.hpp"

namespace possem {

namespace {

constexpr double kQintRelTol = 1e-12;

double matrix_scale(const Mat& A) {
  return std::max(1.0, A.cwiseAbs().maxCoeff());
}

// Least-squares slope of log(p) against t over the trailing third.
double trailing_slope(const Vec& t, const Vec& logp) {
  const int n = static_cast<int>(t.size());
  const int start = (2 * n) / 3;
  const int m = n - start;
  if (m < 2) return logp(n - 1) / t(n - 1);
  double tm = 0, pm = 0;
  for (int i = start; i < n; ++i) {
    tm += t(i);
    pm += logp(i);
  }
  tm /= m;
  pm /= m;
  double num = 0, den = 0;
  for (int i = start; i < n; ++i) {
    num += (t(i) - tm) * (logp(i) - pm);
    den += (t(i) - tm) * (t(i) - tm);
  }
  return num / den;
}

void append_double(std::string& out, double v) {
  char buf[64];
  auto res = std::to_chars(buf, buf + sizeof(buf), v);
  out.append(buf, res.ptr);
}

}  // namespace

OrbitTrace orbit_trace(const Mat& A, const Vec& u, const Vec& u_prime,
                       double t_max, int steps, bool geometric) {
  if (A.rows() != A.cols()) {
    throw std::invalid_argument("orbit_trace: matrix must be square");
  }
  if (u.size() != A.rows() || u_prime.size() != A.rows()) {
    throw std::invalid_argument("orbit_trace: vector dimension mismatch");
  }
  if (!(t_max > 0)) {
    throw std::invalid_argument("orbit_trace: t_max must be > 0");
  }
  if (steps < 2) {
    throw std::invalid_argument("orbit_trace: steps must be >= 2");
  }
  require_finite(u, "orbit_trace");
  require_finite(u_prime, "orbit_trace");
  if (!strictly_positive(u, kQintRelTol)) {
    throw PreconditionError(
        "orbit_trace: u is not almost interior (some entry is not strictly "
        "positive)");
  }
  if (!strictly_positive(u_prime, kQintRelTol)) {
    throw PreconditionError(
        "orbit_trace: u' is not a strictly positive functional");
  }

  OrbitTrace trace;
  trace.u = u;
  trace.u_prime = u_prime;
  trace.t_grid.resize(steps);
  trace.pairings.resize(steps);
  trace.log_slopes.resize(steps);

  auto record = [&](int k, double t, const Vec& v) {
    double p = u_prime.dot(v);
    if (!(p > 0) || !std::isfinite(p)) {
      throw NumericalError(
          "orbit_trace: pairing <u', e^{tA}u> is not strictly positive at "
          "t = " +
          std::to_string(t) +
          "; the almost-interior hypothesis fails numerically");
    }
    trace.t_grid(k) = t;
    trace.pairings(k) = p;
    trace.log_slopes(k) = std::log(p) / t;
  };

  // Positive semigroups stay entrywise nonnegative; clamp the Pade
  // roundoff (>= -1e-12) so deep-decay pairings cannot go negative.
  const bool metzler = is_metzler(A);
  auto propagator = [&](double dt) {
    Mat E = expm(A, dt);
    return metzler ? Mat(E.cwiseMax(0.0)) : E;
  };

  if (!geometric) {
    // One propagator for the uniform step, applied sequentially.
    const double dt = t_max / steps;
    Mat E = propagator(dt);
    Vec v = u;
    for (int k = 0; k < steps; ++k) {
      v = E * v;
      record(k, dt * (k + 1), v);
    }
  } else {
    // Two decades up to t_max for stiff spectra.
    const double ratio = std::pow(100.0, 1.0 / (steps - 1));
    double prev_t = 0.0;
    Vec v = u;
    for (int k = 0; k < steps; ++k) {
      double t = t_max * std::pow(ratio, k - (steps - 1));
      v = propagator(t - prev_t) * v;
      prev_t = t;
      record(k, t, v);
    }
  }

  Vec logp = trace.pairings.array().log();
  trace.extrapolated_limit = trailing_slope(trace.t_grid, logp);
  return trace;
}

void write_orbit_csv(std::ostream& os, const OrbitTrace& trace) {
  os << orbit_csv(trace);
}

std::string orbit_csv(const OrbitTrace& trace) {
  std::string out = "t,pairing,log_slope\n";
  for (Eigen::Index i = 0; i < trace.t_grid.size(); ++i) {
    append_double(out, trace.t_grid(i));
    out.push_back(',');
    append_double(out, trace.pairings(i));
    out.push_back(',');
    append_double(out, trace.log_slopes(i));
    out.push_back('\n');
  }
  return out;
}

SelfAdjointLogLimit log_limit_selfadjoint(const Mat& A, const Vec& u,
                                          const Vec& v, const Vec& w,
                                          double t_max, int steps) {
  if (A.rows() != A.cols()) {
    throw std::invalid_argument(
        "log_limit_selfadjoint: matrix must be square");
  }
  double asym = (A - A.transpose()).cwiseAbs().maxCoeff();
  if (asym > kSymmetryTol * matrix_scale(A)) {
    throw std::invalid_argument(
        "log_limit_selfadjoint: matrix asymmetry exceeds tolerance");
  }
  if (!is_metzler(A)) {
    throw PreconditionError("log_limit_selfadjoint: matrix is not Metzler");
  }

  SelfAdjointLogLimit out;
  const Cone K = Cone::Orthant(static_cast<int>(A.rows()));
  if (!strictly_positive(w, kQintRelTol)) {
    out.failed_precondition = "w is not quasi-interior";
    return out;
  }
  if (!order_leq(w, u, K)) {
    out.failed_precondition = "u >= w fails";
    return out;
  }
  if (!order_leq(w, v, K)) {
    out.failed_precondition = "v >= w fails";
    return out;
  }
  out.preconditions_ok = true;
  OrbitTrace trace =
      orbit_trace(0.5 * (A + A.transpose()), u, v, t_max, steps);
  out.limit = trace.extrapolated_limit;
  return out;
}

QintUpperBound qint_upper_bound_search(const Mat& A, const Cone& K,
                                       std::uint64_t /*seed*/, int iters) {
  if (A.rows() != A.cols() || A.rows() != K.ambient_dim()) {
    throw std::invalid_argument("qint_upper_bound_search: dimension mismatch");
  }
  if (!is_metzler(A)) {
    throw PreconditionError("qint_upper_bound_search: matrix is not Metzler");
  }

  const int d = static_cast<int>(A.rows());
  const Vec ones = Vec::Ones(d);
  QintUpperBound out;
  double lambda = gershgorin_shift(A);
  out.lambda = std::numeric_limits<double>::infinity();

  for (int it = 0; it < iters; ++it) {
    Mat M = lambda * Mat::Identity(d, d) - A;
    Vec u = M.partialPivLu().solve(ones);
    if (!u.allFinite() || !strictly_positive(u, kQintRelTol)) break;
    // Au = lambda u - ones, so mu = max_j (Au)_j / u_j certifies Au <= mu u.
    double mu = ((A * u).array() / u.array()).maxCoeff();
    out.iterations = it + 1;
    if (mu < out.lambda) {
      out.lambda = mu;
      out.u = u / u.cwiseAbs().maxCoeff();
    }
    double gap = lambda - mu;
    if (gap < 1e-12 * std::max(1.0, std::abs(mu))) {
      out.converged = true;
      break;
    }
    // mu >= s(A) always, so a positive fraction of the gap keeps the next
    // shift strictly on the resolvent side.
    lambda = mu + 0.01 * gap;
  }
  if (!std::isfinite(out.lambda)) {
    throw NumericalError("qint_upper_bound_search: no certified bound found");
  }
  return out;
}

std::vector<EigenvectorQintFlag> eigenvector_qint_check(const Mat& A,
                                                        const Cone& K) {
  if (A.rows() != A.cols() || A.rows() != K.ambient_dim()) {
    throw std::invalid_argument("eigenvector_qint_check: dimension mismatch");
  }
  double asym = (A - A.transpose()).cwiseAbs().maxCoeff();
  if (asym > kSymmetryTol * matrix_scale(A)) {
    throw std::invalid_argument(
        "eigenvector_qint_check: matrix asymmetry exceeds tolerance");
  }
  if (!is_metzler(A)) {
    throw PreconditionError("eigenvector_qint_check: matrix is not Metzler");
  }

  Eigen::SelfAdjointEigenSolver<Mat> es(0.5 * (A + A.transpose()));
  if (es.info() != Eigen::Success) {
    throw NumericalError("eigenvector_qint_check: eigensolver failed");
  }
  std::vector<EigenvectorQintFlag> flags;
  for (Eigen::Index i = 0; i < es.eigenvalues().size(); ++i) {
    Vec vec = es.eigenvectors().col(i);
    Eigen::Index mx;
    vec.cwiseAbs().maxCoeff(&mx);
    if (vec(mx) < 0) vec = -vec;
    EigenvectorQintFlag f;
    f.eigenvalue = es.eigenvalues()(i);
    f.is_qint = strictly_positive(vec, kQintRelTol);
    flags.push_back(f);
  }
  return flags;
}

}  // namespace possem
