// possem - stability certificates for positive linear systems
// Copyright 2026 The possem Authors
// Licensed under the Apache License, Version 2.0

#include "possem/certificates.hpp"

#include <Eigen/LU>

#include <algorithm>
#include <cmath>
#include <sstream>
#include <vector>

#include "possem/errors.hpp"
#include "possem/rng.hpp"
#include "possem/simplex.hpp"

namespace possem {

namespace {

double matrix_scale(const Mat& A) {
  return std::max(1.0, A.cwiseAbs().maxCoeff());
}

bool orthant_like(const Cone& K) {
  return K.kind() == ConeKind::kOrthant ||
         K.kind() == ConeKind::kWeightedOrthant;
}

void require_orthant(const Cone& K, const char* what) {
  if (!orthant_like(K)) {
    throw std::invalid_argument(std::string(what) +
                                ": only supported on the orthant");
  }
}

void require_metzler(const Mat& A, const char* what) {
  if (!is_metzler(A)) {
    throw PreconditionError(std::string(what) + ": matrix is not Metzler");
  }
}

struct EtaLp {
  double value = 0.0;
  Vec minimizer;
};

// Exact Sup-norm small-gain constant on the orthant:
//   eta_inf = min_k  min { t : t >= 0, Ax + t*ones >= 0,
//                          x_k = 1, 0 <= x_i <= 1 }
// one LP per face of the positive part of the unit sup-ball, since
// dist_inf(Ax, K) = min { t >= 0 : Ax + t*ones >= 0 }.
EtaLp eta_sup_exact(const Mat& A) {
  const int d = static_cast<int>(A.rows());
  EtaLp best;
  best.value = std::numeric_limits<double>::infinity();

  for (int k = 0; k < d; ++k) {
    // Columns: x_i (i != k), slack s_i for x_i <= 1, t, surplus u_j.
    const int nx = d - 1;
    const int n = nx + nx + 1 + d;
    const int m = nx + d;
    Mat E = Mat::Zero(m, n);
    Vec b = Vec::Zero(m);
    Vec c = Vec::Zero(n);
    c(2 * nx) = 1.0;  // minimize t

    int row = 0;
    for (int i = 0; i < nx; ++i, ++row) {
      E(row, i) = 1.0;
      E(row, nx + i) = 1.0;
      b(row) = 1.0;
    }
    for (int j = 0; j < d; ++j, ++row) {
      int col = 0;
      for (int i = 0; i < d; ++i) {
        if (i == k) continue;
        E(row, col++) = A(j, i);
      }
      E(row, 2 * nx) = 1.0;           // + t
      E(row, 2 * nx + 1 + j) = -1.0;  // - u_j
      b(row) = -A(j, k);
    }

    LpResult lp = solve_lp(E, b, c);
    if (lp.status != LpStatus::kOptimal) {
      throw NumericalError("eta LP: face problem not optimal");
    }
    if (lp.objective < best.value) {
      best.value = lp.objective;
      Vec x = Vec::Zero(d);
      int col = 0;
      for (int i = 0; i < d; ++i) x(i) = (i == k) ? 1.0 : lp.x(col++);
      best.minimizer = x;
    }
    if (best.value <= 0.0) break;  // the minimum cannot go lower
  }
  best.value = std::max(0.0, best.value);
  return best;
}

// Exact One-norm small-gain constant on the orthant: both the distance
// (sum of violations) and the normalization are linear over the simplex,
//   eta_1 = min { sum u : sum x = 1, Ax + u - w = 0, x, u, w >= 0 }.
EtaLp eta_one_exact(const Mat& A) {
  const int d = static_cast<int>(A.rows());
  Mat E = Mat::Zero(d + 1, 3 * d);
  Vec b = Vec::Zero(d + 1);
  Vec c = Vec::Zero(3 * d);
  E.block(0, 0, 1, d).setOnes();
  b(0) = 1.0;
  E.block(1, 0, d, d) = A;
  E.block(1, d, d, d) = Mat::Identity(d, d);
  E.block(1, 2 * d, d, d) = -Mat::Identity(d, d);
  c.segment(d, d).setOnes();
  LpResult lp = solve_lp(E, b, c);
  if (lp.status != LpStatus::kOptimal) {
    throw NumericalError("eta LP (one norm): not optimal");
  }
  EtaLp out;
  out.value = std::max(0.0, lp.objective);
  out.minimizer = lp.x.head(d);
  return out;
}

double eta_objective(const Mat& A, const Cone& K, NormChoice norm,
                     const Vec& x) {
  double nx = vector_norm(x, norm);
  if (!(nx > 0)) return std::numeric_limits<double>::infinity();
  return dist_to_cone(A * x, K, norm) / nx;
}

// Multi-start projected subgradient descent for the Euclidean/One norm
// ratio on the orthant. Returns the best evaluated point, a true upper
// bound on the infimum.
EtaLp eta_descent(const Mat& A, const Cone& K, NormChoice norm,
                  const std::vector<Vec>& starts) {
  EtaLp best;
  best.value = std::numeric_limits<double>::infinity();
  const int d = static_cast<int>(A.rows());
  const double step0 = 0.5 / std::max(1.0, operator_norm(A, NormChoice::kSup));

  auto consider = [&](const Vec& x) {
    double f = eta_objective(A, K, norm, x);
    if (f < best.value) {
      best.value = f;
      best.minimizer = x / vector_norm(x, norm);
    }
  };

  const bool can_descend = orthant_like(K);
  for (const Vec& s : starts) {
    if (s.size() != d) continue;
    Vec x = project_onto_cone(s, K);
    double nx = vector_norm(x, norm);
    if (!(nx > 0)) continue;
    x /= nx;
    consider(x);
    if (!can_descend) continue;
    double alpha = step0;
    double f = eta_objective(A, K, norm, x);
    for (int it = 0; it < 400; ++it) {
      Vec g_neg = (-(A * x)).cwiseMax(0.0);  // negative part of Ax
      if (f == 0.0) break;
      Vec grad;
      if (norm == NormChoice::kOne) {
        Vec sign = (g_neg.array() > 0.0).cast<double>().matrix();
        grad = -A.transpose() * sign + f * Vec::Ones(d);
      } else {  // Euclidean
        double gn = g_neg.norm();
        if (gn == 0.0) break;
        grad = -A.transpose() * (g_neg / gn) + f * x;
      }
      double gnorm = grad.norm();
      if (!(gnorm > 0)) break;
      grad /= gnorm;
      bool improved = false;
      for (int bt = 0; bt < 40 && !improved; ++bt) {
        Vec cand = project_onto_cone(Vec(x - alpha * grad), K);
        double cn = vector_norm(cand, norm);
        if (cn > 0) {
          cand /= cn;
          double fc = eta_objective(A, K, norm, cand);
          if (fc < f - 1e-16) {
            x = cand;
            f = fc;
            consider(x);
            alpha *= 1.5;
            improved = true;
          }
        }
        if (!improved) alpha *= 0.5;
      }
      if (!improved || alpha < 1e-15) break;
    }
  }
  if (!std::isfinite(best.value)) {
    best.value = 0.0;
    best.minimizer = Vec::Zero(d);
  }
  return best;
}

// Deterministic basin hopping around the incumbent: shrinking random
// perturbations, each polished by the same descent.
EtaLp eta_descent_with_restarts(const Mat& A, const Cone& K, NormChoice norm,
                                const std::vector<Vec>& starts,
                                std::uint64_t seed) {
  EtaLp best = eta_descent(A, K, norm, starts);
  const int d = static_cast<int>(A.rows());
  Rng rng(derive_seed(seed, "eta-basin"));
  for (int round = 0; round < 5; ++round) {
    double radius = 0.4 * std::pow(0.5, round);
    std::vector<Vec> nearby;
    for (int k = 0; k < 8; ++k) {
      Vec p = best.minimizer;
      for (int i = 0; i < d; ++i) p(i) += radius * rng.uniform(-1.0, 1.0);
      nearby.push_back(p);
    }
    EtaLp cand = eta_descent(A, K, norm, nearby);
    if (cand.value < best.value) best = cand;
  }
  return best;
}

std::vector<Vec> eta_starts(const Mat& A, const Cone& K, std::uint64_t seed) {
  const int d = static_cast<int>(A.rows());
  std::vector<Vec> starts;
  starts.push_back(K.canonical_interior());
  if (orthant_like(K) && is_metzler(A)) {
    try {
      starts.push_back(perron_pair(A, K).vector);
    } catch (const std::exception&) {
      // keep the generic starts
    }
  }
  for (int i = 0; i < std::min(d, 16); ++i) {
    Vec e = Vec::Zero(d);
    e(i) = 1.0;
    starts.push_back(e);
  }
  Rng rng(derive_seed(seed, "eta-descent"));
  for (int k = 0; k < 8; ++k) {
    Vec r(d);
    for (int i = 0; i < d; ++i) r(i) = rng.uniform();
    starts.push_back(r);
  }
  return starts;
}

std::string fmt(double v) {
  std::ostringstream os;
  os.precision(12);
  os << v;
  return os.str();
}

}  // namespace

EtaBounds uniform_small_gain_eta(const Mat& A, const Cone& K, NormChoice norm,
                                 std::uint64_t seed) {
  if (A.rows() != A.cols() || A.rows() != K.ambient_dim()) {
    throw std::invalid_argument("uniform_small_gain_eta: dimension mismatch");
  }
  require_finite(A, "uniform_small_gain_eta");
  const int d = static_cast<int>(A.rows());

  EtaBounds out;
  out.norm = norm;
  out.lp_available = orthant_like(K) && d <= kSimplexDimensionCap;

  if (out.lp_available && norm != NormChoice::kEuclidean) {
    EtaLp lp =
        norm == NormChoice::kSup ? eta_sup_exact(A) : eta_one_exact(A);
    out.lower = out.upper = out.value = lp.value;
    out.minimizer = lp.minimizer;
    out.exact = true;
    return out;
  }

  double lower = 0.0;
  if (out.lp_available) {
    // dist_2 >= dist_inf while ||x||_2 <= sqrt(d) ||x||_inf.
    lower = std::max(lower, eta_sup_exact(A).value / std::sqrt(double(d)));
  }
  if (orthant_like(K) && is_metzler(A)) {
    try {
      PerronPair p = perron_pair(A, K);
      if (p.value < 0 && strictly_positive(p.dual_vector)) {
        // w'(Ax)^- >= -w'Ax = |s| w'x for the dual Perron vector w. The
        // haircut covers the 1e-7 eigenpair residual the bound inherits.
        const Vec& w = p.dual_vector;
        double bound = norm == NormChoice::kOne
                           ? -p.value * w.minCoeff() / w.maxCoeff()
                           : -p.value * w.minCoeff() / w.norm();
        lower = std::max(lower, (1.0 - 1e-6) * bound);
      }
    } catch (const std::exception&) {
    }
  }

  EtaLp up = eta_descent_with_restarts(A, K, norm, eta_starts(A, K, seed), seed);
  out.lower = std::min(lower, up.value);
  out.upper = up.value;
  out.value = up.value;
  out.minimizer = up.minimizer;
  out.exact = false;
  return out;
}

MbiResult mbi_constant(const Mat& A, const Cone& K, NormChoice norm) {
  if (A.rows() != A.cols() || A.rows() != K.ambient_dim()) {
    throw std::invalid_argument("mbi_constant: dimension mismatch");
  }
  MbiResult out;
  SpectralReport rep = eigen_report(A);
  if (rep.s_A >= 0) {
    out.success = false;
    if (orthant_like(K) && is_metzler(A)) {
      out.witness_x = perron_pair(A, K).vector;
    } else {
      out.witness_x = K.canonical_interior();
    }
    out.witness_y = Vec::Zero(A.rows());
    return out;
  }
  ResolventSample r0 = resolvent(A, 0.0);
  out.success = true;
  out.c = operator_norm(r0.R, norm);
  return out;
}

PointwiseResult pointwise_small_gain(const Mat& A, const Cone& K) {
  require_orthant(K, "pointwise_small_gain");
  require_metzler(A, "pointwise_small_gain");
  const int d = static_cast<int>(A.rows());

  PointwiseResult out;
  PerronPair perron = perron_pair(A, K);
  bool holds_eigen = perron.value < 0;

  if (d > kSimplexDimensionCap) {
    out.holds = holds_eigen;
    out.simplex_used = false;
    if (!out.holds) out.witness = perron.vector / perron.vector.lpNorm<1>();
    return out;
  }

  // Feasibility of {x >= 0, sum x = 1, Ax >= 0} with surplus variables u.
  Mat E = Mat::Zero(d + 1, 2 * d);
  Vec b = Vec::Zero(d + 1);
  E.block(0, 0, 1, d).setOnes();
  b(0) = 1.0;
  E.block(1, 0, d, d) = A / matrix_scale(A);
  E.block(1, d, d, d) = -Mat::Identity(d, d) / matrix_scale(A);
  FeasibilityResult feas = phase1_feasible(E, b);

  bool holds_simplex = !feas.feasible;
  if (holds_simplex != holds_eigen) {
    throw VerdictMismatchError(
        "pointwise_small_gain: simplex feasibility and Perron sign disagree "
        "(perron value " +
            fmt(perron.value) + ")",
        {"pointwise_small_gain/simplex", "pointwise_small_gain/eigen"});
  }

  out.holds = holds_simplex;
  out.simplex_used = true;
  if (feas.feasible) {
    // The Perron direction is the canonical witness; the LP point merely
    // confirms feasibility.
    out.witness = perron.vector / perron.vector.lpNorm<1>();
  }
  return out;
}

PointwiseResult dual_small_gain(const Mat& A, const Cone& K) {
  require_orthant(K, "dual_small_gain");
  return pointwise_small_gain(A.transpose(), K);
}

RobustSmallGain robust_small_gain_radius(const Mat& A, const Cone& K,
                                         int trials, std::uint64_t seed,
                                         NormChoice norm) {
  require_orthant(K, "robust_small_gain_radius");
  require_metzler(A, "robust_small_gain_radius");
  if (trials < 0) throw std::invalid_argument("robust: trials must be >= 0");
  const int d = static_cast<int>(A.rows());

  RobustSmallGain out;
  SpectralReport rep = eigen_report(A);
  if (rep.s_A >= 0) {
    out.eps = 0.0;
    out.counterexample_P = Mat::Zero(d, d);
    out.counterexample_x = perron_pair(A, K).vector;
    return out;
  }

  EtaBounds eta = uniform_small_gain_eta(A, K, norm, seed);
  double eta_certified = eta.exact ? eta.value : eta.lower;
  out.eps = eta_certified / 2.0;  // the sufficiency proof's choice
  if (out.eps <= 0) return out;

  Rng rng(derive_seed(seed, "robust-rank1"));
  for (int trial = 0; trial < trials; ++trial) {
    Vec z(d), zp(d);
    for (int i = 0; i < d; ++i) z(i) = rng.uniform();
    for (int i = 0; i < d; ++i) zp(i) = rng.uniform();
    Mat P = z * zp.transpose();
    double nP = operator_norm(P, norm);
    if (!(nP > 0)) continue;
    double magnitude = trial == 0 ? 1.0 : rng.uniform(0.1, 1.0);
    P *= out.eps * magnitude / nP;

    PointwiseResult pw = pointwise_small_gain(A + P, K);
    out.trials_run++;
    if (!pw.holds) {
      out.counterexample_P = P;
      out.counterexample_x = pw.witness.value_or(Vec::Zero(d));
      return out;
    }
  }
  return out;
}

DecreasingVector decreasing_vector(const Mat& A, const Cone& K) {
  require_orthant(K, "decreasing_vector");
  require_metzler(A, "decreasing_vector");
  DecreasingVector out;
  SpectralReport rep = eigen_report(A);
  if (std::abs(rep.s_A) < kMarginalTol) {
    out.status = DecreasingVector::Status::kMarginal;
    return out;
  }
  if (rep.s_A > 0) {
    out.status = DecreasingVector::Status::kUnstable;
    return out;
  }
  const int d = static_cast<int>(A.rows());
  Vec z = (-A).partialPivLu().solve(Vec::Ones(d));
  if (!z.allFinite() || !strictly_positive(z)) {
    out.status = DecreasingVector::Status::kMarginal;
    return out;
  }
  Vec Az = A * z;  // = -ones up to roundoff
  out.status = DecreasingVector::Status::kFound;
  out.z = z;
  out.lambda_z = (Az.array() / z.array()).maxCoeff();
  return out;
}

DiscreteTimeCheck discrete_time_check(const Mat& T, const Cone& K) {
  require_orthant(K, "discrete_time_check");
  if (T.rows() != T.cols() || T.rows() != K.ambient_dim()) {
    throw std::invalid_argument("discrete_time_check: dimension mismatch");
  }
  require_finite(T, "discrete_time_check");
  if (!is_nonnegative(T)) {
    throw PreconditionError("discrete_time_check: T is not a positive matrix");
  }
  DiscreteTimeCheck out;
  out.spectral_radius_T = spectral_radius(T);
  out.spr_lt_1 = out.spectral_radius_T < 1.0 - kMarginalTol;
  Mat gen = T - Mat::Identity(T.rows(), T.cols());
  out.eta_discrete = uniform_small_gain_eta(gen, K, NormChoice::kSup).value;
  return out;
}

const char* to_string(Verdict v) {
  switch (v) {
    case Verdict::kStable: return "stable";
    case Verdict::kUnstable: return "unstable";
    case Verdict::kInconclusive: return "inconclusive";
  }
  return "?";
}

namespace {

// Feasibility of {x free : Ax >= 0, x_k = 1} for some k; any such x is a
// 0-super-eigenvector that is not <= 0.
bool super_eigenvector_exists(const Mat& A) {
  const int d = static_cast<int>(A.rows());
  const double s = matrix_scale(A);
  for (int k = 0; k < d; ++k) {
    // Variables p, q, u >= 0 with x = p - q.
    Mat E = Mat::Zero(d + 1, 3 * d);
    Vec b = Vec::Zero(d + 1);
    E.block(0, 0, d, d) = A / s;
    E.block(0, d, d, d) = -A / s;
    E.block(0, 2 * d, d, d) = -Mat::Identity(d, d) / s;
    E(d, k) = 1.0;
    E(d, d + k) = -1.0;
    b(d) = 1.0;
    if (phase1_feasible(E, b).feasible) return true;
  }
  return false;
}

void fill_orthant_conditions(const Mat& A, const Cone& K, NormChoice norm,
                             std::uint64_t seed, const CertificateOptions& opts,
                             StabilityCertificate& cert) {
  const int d = static_cast<int>(A.rows());
  const bool lp_ok = d <= kSimplexDimensionCap;
  cert.simplex_skipped = !lp_ok;
  const double scale = matrix_scale(A);

  // positive resolvent at 0
  {
    ConditionResult c;
    try {
      ResolventSample r0 = resolvent(A, 0.0);
      c.verdict = r0.R.minCoeff() >= -kPositivityTol * matrix_scale(r0.R);
      c.detail = "min entry " + fmt(r0.R.minCoeff());
    } catch (const NumericalError&) {
      c.verdict = false;
      c.detail = "0 is (numerically) a spectral value";
    }
    cert.conditions["positive_resolvent_at_zero"] = std::move(c);
  }

  // monotone bounded invertibility
  {
    MbiResult mbi = mbi_constant(A, K, norm);
    ConditionResult c;
    c.verdict = mbi.success;
    if (mbi.success) {
      cert.c_mbi = mbi.c;
      c.detail = "c = " + fmt(mbi.c);
    } else {
      c.witness = mbi.witness_x;
      c.detail = "violated by (perron, 0)";
    }
    cert.conditions["monotone_bounded_invertibility"] = std::move(c);
  }

  // uniform small-gain, plus the interior-point form with z = ones. Only
  // certified verdicts are recorded: a positive lower bound proves the
  // condition, a vanishing upper bound disproves it (the minimizer is a
  // witness); if neither holds the condition is undecidable at this
  // dimension and stays out of the map.
  const double floor = 1e-9 * scale;
  {
    cert.eta = uniform_small_gain_eta(A, K, norm, seed);
    ConditionResult c;
    bool decided = true;
    if (cert.eta.exact) {
      c.verdict = cert.eta.value > floor;
    } else if (cert.eta.lower > floor) {
      c.verdict = true;
    } else if (cert.eta.upper <= floor) {
      c.verdict = false;
    } else {
      decided = false;
    }
    c.detail = "eta[" + std::string(to_string(cert.eta.norm)) + "] = " +
               fmt(cert.eta.value) +
               (cert.eta.exact ? " (exact)"
                               : " in [" + fmt(cert.eta.lower) + ", " +
                                     fmt(cert.eta.upper) + "]");
    if (decided) {
      if (!c.verdict) c.witness = cert.eta.minimizer;
      cert.conditions["uniform_small_gain"] = c;
    }

    if (lp_ok) {
      EtaBounds sup_eta = norm == NormChoice::kSup
                              ? cert.eta
                              : uniform_small_gain_eta(A, K, NormChoice::kSup);
      ConditionResult ip;
      ip.verdict = sup_eta.value > floor;
      ip.detail = "z = ones, eta = " + fmt(sup_eta.value);
      cert.conditions["interior_point_small_gain"] = std::move(ip);
    }
  }

  // robust small-gain, rank-1 sampled; needs a certified radius on the
  // stable side, so it is skipped when eta could not be certified.
  {
    RobustSmallGain rob =
        robust_small_gain_radius(A, K, opts.robust_trials, seed, norm);
    cert.eps_robust = rob.eps;
    if (rob.eps > 0 || rob.counterexample_P.has_value()) {
      ConditionResult c;
      c.verdict = rob.eps > 0 && !rob.counterexample_P.has_value();
      c.detail = "eps = " + fmt(rob.eps) + ", trials = " +
                 std::to_string(rob.trials_run);
      if (rob.counterexample_x) c.witness = rob.counterexample_x;
      cert.conditions["robust_small_gain_rank1"] = std::move(c);
    }
  }

  // pointwise small-gain (simplex + Perron sign)
  {
    PointwiseResult pw = pointwise_small_gain(A, K);
    ConditionResult c;
    c.verdict = pw.holds;
    c.witness = pw.witness;
    c.detail = pw.simplex_used ? "simplex + eigen" : "eigen only";
    if (!pw.holds && pw.witness) cert.unstable_witness = pw.witness;
    cert.conditions["pointwise_small_gain"] = std::move(c);
  }

  // all 0-super-eigenvectors negative
  if (lp_ok) {
    ConditionResult c;
    c.verdict = !super_eigenvector_exists(A);
    c.detail = "per-coordinate feasibility scan";
    cert.conditions["super_eigenvectors_negative"] = std::move(c);
  }

  // dual small-gain
  {
    PointwiseResult dual = dual_small_gain(A, K);
    ConditionResult c;
    c.verdict = dual.holds;
    c.witness = dual.witness;
    if (!dual.holds && dual.witness) cert.dual_witness = dual.witness;
    cert.conditions["dual_small_gain"] = std::move(c);
  }

  // strong decreasing property
  {
    DecreasingVector dec = decreasing_vector(A, K);
    ConditionResult c;
    c.verdict = dec.status == DecreasingVector::Status::kFound;
    if (c.verdict) {
      cert.decreasing_z = dec.z;
      cert.lambda_z = dec.lambda_z;
      c.detail = "lambda_z = " + fmt(dec.lambda_z);
    } else {
      c.detail = dec.status == DecreasingVector::Status::kMarginal
                     ? "marginal"
                     : "no decreasing interior vector";
    }
    cert.conditions["strong_decreasing"] = std::move(c);
  }
}

void fill_general_cone_conditions(const Mat& A, const Cone& K,
                                  StabilityCertificate& cert) {
  // Reduced set for SecondOrder/Psd: sampled resolvent positivity at 0 and
  // the constructive decreasing vector z = R(0,A) e.
  {
    ConditionResult c;
    try {
      ResolventSample r0 = resolvent(A, 0.0);
      bool sampled_ok = operator_is_positive(r0.R, K);
      if (!sampled_ok) {
        c.verdict = false;  // a violated ray is conclusive
        c.detail = "a sampled ray leaves the cone";
      } else if (cert.s_A < 0) {
        c.verdict = true;
        c.detail = "sampled-ray check";
      } else {
        // Ray sampling cannot certify positivity; left of the spectral
        // bound the resolvent cannot be positive.
        c.verdict = false;
        c.detail =
            "no sampled violation, but 0 < s(A) rules positivity out";
      }
    } catch (const NumericalError&) {
      c.verdict = false;
      c.detail = "0 is (numerically) a spectral value";
    }
    cert.conditions["positive_resolvent_at_zero"] = std::move(c);
  }
  {
    ConditionResult c;
    if (cert.s_A < 0) {
      Vec e = K.canonical_interior();
      Vec z = resolvent(A, 0.0).R * e;
      Vec Az = A * z;  // = -e by construction
      bool ok = cone_contains(z, K) && is_quasi_interior(z, K) &&
                cone_contains(Vec(-Az), K, kMembershipTol);
      c.verdict = ok;
      if (ok) {
        cert.decreasing_z = z;
        // least lambda < 0 with Az <= lambda z, located by bisection
        double lo = 2 * std::min(cert.s_A, -1.0), hi = 0.0, best = 0.0;
        for (int it = 0; it < 60; ++it) {
          double mid = 0.5 * (lo + hi);
          if (cone_contains(Vec(mid * z - Az), K, kMembershipTol)) {
            hi = mid;
            best = mid;
          } else {
            lo = mid;
          }
        }
        cert.lambda_z = best;
        c.detail = "z = R(0,A)e, lambda_z = " + fmt(best);
      }
    } else {
      c.verdict = false;
      c.detail = "implied by s(A) >= 0";
    }
    cert.conditions["strong_decreasing"] = std::move(c);
  }
}

}  // namespace

StabilityCertificate assemble_certificate(const Mat& A, const Cone& K,
                                          NormChoice norm, std::uint64_t seed,
                                          const CertificateOptions& opts) {
  if (A.rows() != A.cols()) {
    throw std::invalid_argument("assemble_certificate: matrix must be square");
  }
  if (A.rows() != K.ambient_dim()) {
    throw std::invalid_argument(
        "assemble_certificate: cone dimension mismatch");
  }
  require_finite(A, "assemble_certificate");
  if (orthant_like(K)) {
    require_metzler(A, "assemble_certificate");
  } else {
    // Resolvent positivity for the cone, checked on sampled rays.
    ResolventSample far = resolvent(A, gershgorin_shift(A));
    if (!operator_is_positive(far.R, K)) {
      throw PreconditionError(
          "assemble_certificate: operator is not resolvent positive for " +
          K.name());
    }
  }

  StabilityCertificate cert;
  cert.dimension = static_cast<int>(A.rows());
  cert.cone = K.name();
  cert.norm = norm;
  cert.seed = seed;

  SpectralReport rep = eigen_report(A);
  cert.s_A = rep.s_A;
  cert.omega_A = rep.s_A;  // spectrum determined growth in finite dimensions
  cert.residual = rep.residual;

  const bool marginal = std::abs(rep.s_A) < opts.marginal_tol;
  cert.stable = rep.s_A < 0;
  cert.verdict = marginal
                     ? Verdict::kInconclusive
                     : (cert.stable ? Verdict::kStable : Verdict::kUnstable);

  ConditionResult spectral;
  spectral.verdict = cert.stable;
  spectral.detail = "s(A) = " + fmt(rep.s_A);
  cert.conditions["spectral_stability"] = std::move(spectral);

  if (orthant_like(K)) {
    PerronPair perron = perron_pair(A, K);
    cert.perron_vector = perron.vector;
    if (!cert.stable) {
      cert.unstable_witness = perron.vector;
      cert.dual_witness = perron.dual_vector;
    }
    fill_orthant_conditions(A, K, norm, seed, opts, cert);
  } else {
    fill_general_cone_conditions(A, K, cert);
  }

  if (!marginal) {
    std::vector<std::string> disagreeing;
    for (const auto& [name, cond] : cert.conditions) {
      if (cond.verdict != cert.stable) disagreeing.push_back(name);
    }
    if (!disagreeing.empty()) {
      std::string msg =
          "certificate verdicts disagree with s(A) = " + fmt(cert.s_A) + ":";
      for (const auto& n : disagreeing) msg += " " + n;
      throw VerdictMismatchError(msg, disagreeing);
    }
  }
  return cert;
}

}  // namespace possem
