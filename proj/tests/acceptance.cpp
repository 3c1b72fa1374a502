// possem - stability certificates for positive linear systems
// Copyright 2026 The possem Authors
// Licensed under the Apache License, Version 2.0
//
// Acceptance suite: ten criteria, one pass/fail line each. Run all with no
// arguments or a single one with --criterion N. Exit code = number of
// failed criteria.

#include <Eigen/Eigenvalues>

#include <cmath>
#include <cstdio>
#include <cstring>
#include <functional>
#include <string>
#include <vector>

#include "possem/certificates.hpp"
#include "possem/collatz_wielandt.hpp"
#include "possem/errors.hpp"
#include "possem/gallery.hpp"
#include "possem/log_formula.hpp"
#include "possem/lyapunov.hpp"
#include "possem/rng.hpp"
#include "possem/spectral.hpp"

using namespace possem;

namespace {

constexpr double kHalfPi = 1.5707963267948966;

struct Criterion {
  int id;
  const char* name;
  std::function<bool(std::string&)> run;
};

Mat shifted_metzler(int d, std::uint64_t seed, double target_s) {
  Mat A = metzler_random(d, 0.5, 0.0, seed);
  double s = eigen_report(A).s_A;
  return A + (target_s - s) * Mat::Identity(d, d);
}

std::string fmt(const char* f, double a, double b = 0, double c = 0) {
  char buf[256];
  std::snprintf(buf, sizeof(buf), f, a, b, c);
  return buf;
}

// 1. Equivalence of every stability condition over a mixed ensemble.
bool criterion_equivalence(std::string& detail) {
  Rng rng(derive_seed(1, "acceptance-equivalence"));
  int checked = 0, marginal = 0, mismatches = 0;
  for (int i = 0; i < 500; ++i) {
    int d = 2 + int(rng.below(19));
    double target = (rng.uniform() < 0.5 ? -1 : 1) * rng.uniform(0.05, 1.2);
    Mat A = shifted_metzler(d, derive_seed(2, "eq-" + std::to_string(i)),
                            target);
    try {
      StabilityCertificate cert =
          assemble_certificate(A, Cone::Orthant(d), NormChoice::kSup, i);
      if (cert.verdict == Verdict::kInconclusive) {
        marginal++;
      } else {
        checked++;
      }
    } catch (const VerdictMismatchError&) {
      mismatches++;
    }
  }
  detail = fmt("%g/%g verdicts agree, %g marginal", double(checked),
               double(500 - marginal), double(marginal));
  return mismatches == 0 && checked == 500 - marginal && marginal <= 2;
}

// 2. eta bracket and Perron attainment in the Sup norm.
bool criterion_eta_bracket(std::string& detail) {
  Rng rng(derive_seed(3, "acceptance-eta"));
  double worst_excess = 0, worst_attain = 0;
  int stable_count = 0;
  for (int i = 0; i < 150; ++i) {
    int d = 2 + int(rng.below(19));
    double target = -rng.uniform(0.05, 1.2);
    Mat A = shifted_metzler(d, derive_seed(4, "eta-" + std::to_string(i)),
                            target);
    Cone K = Cone::Orthant(d);
    double s = eigen_report(A).s_A;
    if (s >= -kMarginalTol) continue;
    stable_count++;
    EtaBounds eta = uniform_small_gain_eta(A, K, NormChoice::kSup);
    if (!(eta.value > 0)) {
      detail = "eta = 0 on a stable member";
      return false;
    }
    worst_excess = std::max(worst_excess, eta.value - (-s));
    Vec v = perron_pair(A, K).vector;
    double attained = dist_to_cone(A * v, K, NormChoice::kSup) /
                      vector_norm(v, NormChoice::kSup);
    worst_attain = std::max(worst_attain, std::abs(attained - (-s)));
  }
  detail = fmt("%g stable members, max eta-|s| = %.2e, perron gap %.2e",
               double(stable_count), worst_excess, worst_attain);
  return worst_excess <= 1e-8 && worst_attain <= 1e-9 && stable_count > 100;
}

// 3. Collatz-Wielandt tightness and the two-sided sandwich.
bool criterion_cw(std::string& detail) {
  Rng rng(derive_seed(5, "acceptance-cw"));
  double worst_gap = 0;
  for (int i = 0; i < 100; ++i) {
    int d = 2 + int(rng.below(19));
    Mat A = metzler_random_irreducible(
        d, 0.4, rng.uniform(-1, 1), derive_seed(6, "cw-" + std::to_string(i)));
    double s = eigen_report(A).s_A;
    CwOptimum o = cw_optimize(A, Cone::Orthant(d), i);
    worst_gap = std::max(worst_gap, std::abs(o.value - s));
  }
  if (worst_gap > 1e-8) {
    detail = fmt("cw_optimize gap %.2e > 1e-8", worst_gap);
    return false;
  }
  int violations = 0;
  for (int i = 0; i < 500; ++i) {
    int d = 2 + int(rng.below(9));
    Mat A = metzler_random(d, 0.6, rng.uniform(-1, 1),
                           derive_seed(7, "cws-" + std::to_string(i)));
    double s = eigen_report(A).s_A;
    Vec x(d), u(d);
    for (int j = 0; j < d; ++j) {
      x(j) = rng.uniform() < 0.3 ? 0.0 : rng.uniform(0, 1);
      u(j) = rng.uniform(0.05, 1.0);
    }
    if (x.maxCoeff() == 0) x(0) = 1;
    if (cw_lower(A, x, FunctionalFamily::Coordinates(d)) > s + 1e-9) {
      violations++;
    }
    if (cw_upper(A, u) < s - 1e-9) violations++;
  }
  detail = fmt("optimize gap %.2e, sandwich violations %g", worst_gap,
               double(violations));
  return violations == 0;
}

// 4. Deep-well gallery operator.
bool criterion_deep_well(std::string& detail) {
  PotentialSpec deep;
  deep.kind = PotentialSpec::Kind::kDeepWell;
  deep.depth = 100.0;

  Mat A400 = build_laplacian_plus_potential(400, -kHalfPi, kHalfPi, deep);
  double s400 = eigen_report(A400).s_A;
  bool ok_s = s400 >= 0.99;

  Vec grid = grid_cell_centers(400, -kHalfPi, kHalfPi);
  Vec u(400);
  for (int j = 0; j < 400; ++j) u(j) = std::pow(std::sin(grid(j)), 2);
  Vec Au = A400 * u;
  double min_quotient = 1e300;
  for (int j = 0; j < 400; ++j) {
    if (u(j) > 1e-8) min_quotient = std::min(min_quotient, Au(j) / u(j));
  }
  bool ok_formula = min_quotient >= 0.95;

  double integral = build_deep_well_potential(400, 100.0).trapezoid_integral;
  bool ok_integral = integral <= -50.0;

  Mat A200 = build_laplacian_plus_potential(200, -kHalfPi, kHalfPi, deep);
  double drift = std::abs(eigen_report(A200).s_A - s400);
  bool ok_drift = drift <= 5e-3;

  detail = fmt("s(400) = %.5f, formula bound %.5f, ", s400, min_quotient) +
           fmt("trapezoid integral %.3f (need <= -50), drift %.2e", integral,
               drift);
  return ok_s && ok_formula && ok_integral && ok_drift;
}

// 5. Mean-zero potential: strictly positive spectral bound.
bool criterion_mean_zero(std::string& detail) {
  PotentialSpec p;
  p.kind = PotentialSpec::Kind::kMeanZeroSin;
  Mat A = build_laplacian_plus_potential(400, -kHalfPi, kHalfPi, p);
  SpectralReport rep = eigen_report(A);
  double resid_abs = 10 * rep.residual * std::max(1.0, A.norm());
  detail = fmt("s(A) = %.6f vs 10x residual %.2e", rep.s_A, resid_abs);
  return rep.s_A > resid_abs;
}

// 6. Logarithmic formula convergence and the rejection guard.
bool criterion_log_formula(std::string& detail) {
  Rng rng(derive_seed(8, "acceptance-log"));
  double worst50 = 0, worst200 = 0;
  for (int i = 0; i < 100; ++i) {
    int d = 2 + int(rng.below(9));
    Mat A = metzler_random_irreducible(
        d, 0.5, 0.0, derive_seed(9, "log-" + std::to_string(i)));
    double s0 = eigen_report(A).s_A;
    A -= (s0 + rng.uniform(0.2, 1.5)) * Mat::Identity(d, d);
    double s = eigen_report(A).s_A;
    Vec u(d);
    for (int j = 0; j < d; ++j) u(j) = rng.uniform(0.2, 1.0);
    worst50 = std::max(
        worst50,
        std::abs(orbit_trace(A, u, u, 50.0, 64).extrapolated_limit - s));
    worst200 = std::max(
        worst200,
        std::abs(orbit_trace(A, u, u, 200.0, 64).extrapolated_limit - s));
  }
  bool rejected = false;
  try {
    Mat trap = Mat::Zero(2, 2);
    trap(1, 1) = -5.0;
    Vec e2(2);
    e2 << 0, 1;
    orbit_trace(trap, e2, e2, 50.0, 64);
  } catch (const PreconditionError&) {
    rejected = true;
  }
  detail = fmt("max |limit - s|: %.2e @ t=50, %.2e @ t=200, ", worst50,
               worst200) +
           (rejected ? "guard rejects" : "guard FAILED to reject");
  return worst50 <= 1e-2 && worst200 <= 1e-3 && rejected;
}

// 7. Lyapunov equation: solvability iff stability, certified pairing,
// operator bound.
bool criterion_lyapunov(std::string& detail) {
  Rng rng(derive_seed(10, "acceptance-lyap"));
  int solved = 0, rejected = 0, skipped = 0;
  double worst_pairing_slack = -1e300, worst_bound = 0;
  for (int i = 0; i < 200; ++i) {
    int d = 2 + int(rng.below(9));
    Mat A(d, d);
    for (int r = 0; r < d; ++r)
      for (int c = 0; c < d; ++c) A(r, c) = rng.uniform(-1, 1);
    A += rng.uniform(-2.5, 1.5) * Mat::Identity(d, d);
    double s = eigen_report(A).s_A;
    if (std::abs(s) < kMarginalTol) {
      skipped++;
      continue;
    }
    LyapunovSolution sol = lyapunov_solve(A);
    if (s < 0) {
      if (sol.status != LyapunovSolution::Status::kSolved ||
          sol.min_eig_P <= 0) {
        detail = fmt("stable member (s = %.3e) without SPD solution", s);
        return false;
      }
      solved++;
      PairingCheck pc = pairing_condition_check(A, sol.eta, sol.P, 1000, i);
      if (!pc.holds) {
        detail = fmt("pairing check failed: worst %.3e vs -eta %.3e",
                     pc.worst, -sol.eta);
        return false;
      }
      worst_pairing_slack =
          std::max(worst_pairing_slack, pc.worst + sol.eta);
    } else {
      if (sol.status == LyapunovSolution::Status::kSolved) {
        detail = fmt("unstable member (s = %.3e) got SPD P", s);
        return false;
      }
      rejected++;
    }
    worst_bound =
        std::max(worst_bound, std::abs(lyapunov_operator_bound(A) - 2 * s));
  }
  detail = fmt("%g solved / %g rejected, pairing slack %.2e, ",
               double(solved), double(rejected), worst_pairing_slack) +
           fmt("|s(L) - 2 s(A)| max %.2e", worst_bound);
  return worst_bound <= 1e-8 && solved > 20 && rejected > 20;
}

// 8. PSD cone distance: two routes agree.
bool criterion_psd_distance(std::string& detail) {
  Rng rng(derive_seed(11, "acceptance-psd"));
  double worst_proj = 0, worst_sup = 0;
  for (int i = 0; i < 100; ++i) {
    int n = 2 + int(rng.below(5));
    Mat B(n, n);
    for (int r = 0; r < n; ++r)
      for (int c = 0; c < n; ++c) B(r, c) = rng.uniform(-1, 1);
    Mat S = 0.5 * (B + B.transpose());
    PsdDistance pd = psd_distance(S, 64, i);

    // Euclidean projection route: clip eigenvalues through the cone
    // module, then measure the removed part in the operator norm.
    Cone K = Cone::Psd(n);
    Vec proj = project_onto_cone(sym_to_vec(S), K);
    Mat diff = S - vec_to_sym(proj, n);
    Eigen::SelfAdjointEigenSolver<Mat> es(diff);
    double proj_dist = es.eigenvalues().cwiseAbs().maxCoeff();

    worst_proj = std::max(worst_proj, std::abs(proj_dist - pd.via_eigen));
    if (pd.lemma_applicable) {
      worst_sup = std::max(worst_sup, std::abs(pd.via_sup - pd.via_eigen));
    }
  }
  detail = fmt("projection route gap %.2e, sampled-sup gap %.2e", worst_proj,
               worst_sup);
  return worst_proj <= 1e-10 && worst_sup <= 1e-7;
}

// 9. Euler formula and resolvent generator approximation.
bool criterion_euler_generator(std::string& detail) {
  Rng rng(derive_seed(12, "acceptance-euler"));
  double worst_final = 0, worst_slope = 0, worst_ratio_dev = 0;
  for (int i = 0; i < 10; ++i) {
    Mat A = metzler_random(5, 0.7, 0.0,
                           derive_seed(13, "euler-" + std::to_string(i)));
    Vec z(5);
    for (int j = 0; j < 5; ++j) z(j) = rng.uniform(0.2, 1.0);
    Vec target = expm(A, 1.0) * z;
    std::vector<double> errs;
    for (int p = 4; p <= 12; ++p) {
      int n = 1 << p;
      errs.push_back((euler_semigroup_approx(A, 1.0, n, z) - target).norm());
    }
    worst_final = std::max(worst_final, errs.back() / z.norm());
    // O(1/n): least-squares slope of log err against log n near -1.
    double sx = 0, sy = 0, sxx = 0, sxy = 0;
    int m = static_cast<int>(errs.size());
    for (int k = 0; k < m; ++k) {
      double x = std::log(double(1 << (4 + k)));
      double y = std::log(errs[k]);
      sx += x;
      sy += y;
      sxx += x * x;
      sxy += x * y;
    }
    double slope = (m * sxy - sx * sy) / (m * sxx - sx * sx);
    worst_slope = std::max(worst_slope, std::abs(slope + 1.0));

    Vec x = Vec::Ones(5);
    Vec Ax = A * x;
    double prev = -1;
    for (double lam = 1e2; lam <= 1e5; lam *= 2) {
      double err = (generator_approx(A, x, lam) - Ax).norm();
      if (prev > 0) {
        worst_ratio_dev = std::max(worst_ratio_dev,
                                   std::abs(err / prev - 0.5));
      }
      prev = err;
    }
  }
  detail = fmt("euler err(4096)/|z| max %.2e, slope dev %.2f, ", worst_final,
               worst_slope) +
           fmt("halving dev %.2f", worst_ratio_dev);
  // +-20% of the halving ratio: err(2 lambda)/err(lambda) in [0.4, 0.6].
  return worst_final <= 1e-3 && worst_slope <= 0.3 && worst_ratio_dev <= 0.1;
}

// 10. Discrete-time bridge.
bool criterion_discrete(std::string& detail) {
  Rng rng(derive_seed(14, "acceptance-discrete"));
  int disagreements = 0, schur = 0, expanding = 0;
  for (int i = 0; i < 100; ++i) {
    int d = 2 + int(rng.below(9));
    Mat T(d, d);
    for (int r = 0; r < d; ++r)
      for (int c = 0; c < d; ++c) {
        T(r, c) = rng.uniform() < 0.6 ? rng.uniform(0, 1) : 0.0;
      }
    T(0, 0) += 0.1;  // never the zero matrix
    double spr0 = spectral_radius(T);
    double target = rng.uniform(0.3, 1.5);
    if (std::abs(target - 1.0) < 1e-3) target = 1.1;
    T *= target / spr0;
    DiscreteTimeCheck chk = discrete_time_check(T, Cone::Orthant(d));
    bool eta_positive = chk.eta_discrete > 1e-9;
    if (eta_positive != chk.spr_lt_1) disagreements++;
    (chk.spr_lt_1 ? schur : expanding)++;
  }
  detail = fmt("%g contractive / %g expanding, %g disagreements",
               double(schur), double(expanding), double(disagreements));
  return disagreements == 0 && schur > 20 && expanding > 20;
}

}  // namespace

int main(int argc, char** argv) {
  std::vector<Criterion> criteria = {
      {1, "equivalence suite (500 mixed Metzler)", criterion_equivalence},
      {2, "eta bracket and Perron attainment", criterion_eta_bracket},
      {3, "Collatz-Wielandt tightness and sandwich", criterion_cw},
      {4, "deep-well potential operator", criterion_deep_well},
      {5, "mean-zero potential positivity", criterion_mean_zero},
      {6, "logarithmic formula convergence", criterion_log_formula},
      {7, "Lyapunov equation and pairing certificate", criterion_lyapunov},
      {8, "PSD cone distance routes", criterion_psd_distance},
      {9, "Euler and generator approximation", criterion_euler_generator},
      {10, "discrete-time bridge", criterion_discrete},
  };

  int only = 0;
  for (int i = 1; i < argc; ++i) {
    if (std::strcmp(argv[i], "--criterion") == 0 && i + 1 < argc) {
      only = std::atoi(argv[i + 1]);
    }
  }

  int failures = 0;
  for (const auto& c : criteria) {
    if (only != 0 && c.id != only) continue;
    std::string detail;
    bool ok = false;
    try {
      ok = c.run(detail);
    } catch (const std::exception& e) {
      detail = std::string("exception: ") + e.what();
    }
    std::printf("[%s] criterion %2d: %s -- %s\n", ok ? "PASS" : "FAIL", c.id,
                c.name, detail.c_str());
    std::fflush(stdout);
    if (!ok) failures++;
  }
  return failures == 0 ? 0 : 1;
}
