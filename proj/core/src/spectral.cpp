// possem - stability certificates for positive linear systems
// Copyright 2026 The possem Authors
// Licensed under the Apache License, Version 2.0

#include "possem/spectral.hpp"

#include <Eigen/Eigenvalues>
#include <Eigen/LU>

#include <algorithm>
#include <cmath>
#include <complex>
#include <stdexcept>

#include "possem/errors.hpp"
#include "possem/rng.hpp"

namespace possem {

namespace {

double frobenius(const Mat& A) { return A.norm(); }

double matrix_scale(const Mat& A) {
  return std::max(1.0, A.cwiseAbs().maxCoeff());
}

// Logarithmic norm for the max-row-sum norm; bounds ||e^{tA}||_inf by
// e^{t mu}.
double log_norm_inf(const Mat& A) {
  double mu = kNegInf;
  for (Eigen::Index i = 0; i < A.rows(); ++i) {
    double r = A(i, i);
    for (Eigen::Index j = 0; j < A.cols(); ++j) {
      if (j != i) r += std::abs(A(i, j));
    }
    mu = std::max(mu, r);
  }
  return mu;
}

bool nearly_symmetric(const Mat& A) {
  return (A - A.transpose()).cwiseAbs().maxCoeff() <=
         1e-12 * matrix_scale(A);
}

void require_square(const Mat& A, const char* what) {
  if (A.rows() != A.cols() || A.rows() < 1) {
    throw std::invalid_argument(std::string(what) + ": matrix must be square");
  }
  require_finite(A, what);
}

// Extracts an (approximately) nonnegative eigenvector for a real
// eigenvalue from a complex eigenvector column.
Vec positive_part_selection(const Eigen::VectorXcd& col) {
  Vec v = col.real();
  if (v.norm() < 0.5 * col.norm()) v = col.imag();
  if (v.sum() < 0) v = -v;
  double scale = v.cwiseAbs().maxCoeff();
  if (v.minCoeff() < -1e-6 * scale) v = v.cwiseAbs();
  v = v.cwiseMax(0.0);
  double n = v.norm();
  if (n == 0) throw NumericalError("perron fallback produced a zero vector");
  return v / n;
}

struct PowerIterationOutcome {
  bool converged = false;
  double value = 0.0;
  Vec vector;
  int iterations = 0;
};

PowerIterationOutcome resolvent_power_iteration(const Mat& A, double lambda0) {
  const Eigen::Index d = A.rows();
  Mat M = lambda0 * Mat::Identity(d, d) - A;
  Eigen::PartialPivLU<Mat> lu(M);

  PowerIterationOutcome out;
  Vec x = Vec::Ones(d);
  x /= x.norm();
  double rayleigh_prev = std::numeric_limits<double>::quiet_NaN();
  const int cap = 10000;
  for (int k = 0; k < cap; ++k) {
    Vec y = lu.solve(x);
    double rayleigh = x.dot(y);
    double yn = y.norm();
    if (!(yn > 0) || !std::isfinite(rayleigh)) break;
    x = y / yn;
    out.iterations = k + 1;
    if (k > 0 &&
        std::abs(rayleigh - rayleigh_prev) <
            1e-12 * std::max(1.0, std::abs(rayleigh))) {
      out.converged = true;
      out.value = lambda0 - 1.0 / rayleigh;
      out.vector = x;
      break;
    }
    rayleigh_prev = rayleigh;
  }
  if (!out.converged) return out;

  // Polish by inverse iteration with a shift a hair above the found value:
  // a few steps push the residual to roundoff level, which the
  // Perron-attainment contracts (1e-9 absolute) rely on.
  double mu = out.value + 1e-3 * std::max(1.0, lambda0 - out.value);
  Eigen::PartialPivLU<Mat> lu2(mu * Mat::Identity(d, d) - A);
  Vec x2 = out.vector;
  for (int k = 0; k < 4; ++k) {
    Vec y = lu2.solve(x2);
    double yn = y.norm();
    if (!(yn > 0) || !y.allFinite()) break;
    x2 = y / yn;
  }
  if (x2.allFinite()) {
    double value2 = x2.dot(A * x2);  // Rayleigh quotient at the unit vector
    if ((A * x2 - value2 * x2).norm() <=
        (A * out.vector - out.value * out.vector).norm()) {
      out.vector = x2;
      out.value = value2;
    }
  }
  return out;
}

}  // namespace

bool is_metzler(const Mat& A, double rel_tol) {
  if (A.rows() != A.cols()) return false;
  double tol = rel_tol * matrix_scale(A);
  for (Eigen::Index i = 0; i < A.rows(); ++i) {
    for (Eigen::Index j = 0; j < A.cols(); ++j) {
      if (i != j && A(i, j) < -tol) return false;
    }
  }
  return true;
}

bool is_nonnegative(const Mat& A, double rel_tol) {
  return A.minCoeff() >= -rel_tol * matrix_scale(A);
}

double gershgorin_shift(const Mat& A) {
  return 1.0 + A.cwiseAbs().rowwise().sum().maxCoeff();
}

SpectralReport eigen_report(const Mat& A) {
  require_square(A, "eigen_report");
  const Eigen::Index d = A.rows();
  SpectralReport rep;

  Eigen::VectorXcd values(d);
  Eigen::MatrixXcd vectors(d, d);
  if (nearly_symmetric(A)) {
    Eigen::SelfAdjointEigenSolver<Mat> es(0.5 * (A + A.transpose()));
    if (es.info() != Eigen::Success) {
      throw NumericalError("eigen_report: self-adjoint solver failed");
    }
    values = es.eigenvalues().cast<std::complex<double>>();
    vectors = es.eigenvectors().cast<std::complex<double>>();
  } else {
    Eigen::EigenSolver<Mat> es(A);
    if (es.info() != Eigen::Success) {
      throw NumericalError("eigen_report: QR iteration did not converge");
    }
    values = es.eigenvalues();
    vectors = es.eigenvectors();
  }

  rep.eigenvalues = values;
  const double normA = frobenius(A);
  const double im_tol = 1e-9 * std::max(1.0, normA);

  double worst = 0.0;
  Eigen::MatrixXcd Ac = A.cast<std::complex<double>>();
  for (Eigen::Index i = 0; i < d; ++i) {
    Eigen::VectorXcd v = vectors.col(i);
    double vn = v.norm();
    if (vn == 0) continue;
    worst = std::max(worst, (Ac * v - values(i) * v).norm() / vn);
    rep.s_A = std::max(rep.s_A, values(i).real());
    if (std::abs(values(i).imag()) <= im_tol) {
      rep.s_R_A = std::max(rep.s_R_A, values(i).real());
    }
  }
  rep.residual = normA > 0 ? worst / normA : worst;
  rep.omega_A = rep.s_A;
  if (rep.residual > 1e-8) {
    throw NumericalError("eigen_report: residual " +
                         std::to_string(rep.residual) +
                         " exceeds the 1e-8 contract");
  }
  return rep;
}

SpectralReport spectral_report(const Mat& A, const Cone& K) {
  SpectralReport rep = eigen_report(A);
  PerronPair p = perron_pair(A, K);
  rep.perron_value = p.value;
  rep.perron_vector = p.vector;
  rep.dual_perron_vector = p.dual_vector;
  return rep;
}

double spectral_radius(const Mat& T) {
  SpectralReport rep = eigen_report(T);
  double r = 0.0;
  for (Eigen::Index i = 0; i < rep.eigenvalues.size(); ++i) {
    r = std::max(r, std::abs(rep.eigenvalues(i)));
  }
  return r;
}

ResolventSample resolvent(const Mat& A, double lambda) {
  require_square(A, "resolvent");
  const Eigen::Index d = A.rows();
  Mat M = lambda * Mat::Identity(d, d) - A;
  Eigen::PartialPivLU<Mat> lu(M);
  Mat R = lu.solve(Mat::Identity(d, d));

  double scale = std::max(1.0, A.cwiseAbs().maxCoeff());
  double resid = (M * R - Mat::Identity(d, d)).cwiseAbs().maxCoeff();
  if (!R.allFinite() || resid > 1e-8 * scale) {
    throw NumericalError("resolvent: lambda = " + std::to_string(lambda) +
                         " is (numerically) a spectral value of A");
  }

  ResolventSample out;
  out.lambda = lambda;
  out.R = std::move(R);
  double min_entry = out.R.minCoeff();
  out.is_positive = min_entry >= -kPositivityTol;
  out.min_entry_violation = std::min(0.0, min_entry);
  return out;
}

bool operator_is_positive(const Mat& M, const Cone& K, double tol) {
  if (M.rows() != K.ambient_dim() || M.cols() != K.ambient_dim()) {
    throw std::invalid_argument("operator_is_positive: dimension mismatch");
  }
  switch (K.kind()) {
    case ConeKind::kOrthant:
    case ConeKind::kWeightedOrthant:
      return M.minCoeff() >= -tol * matrix_scale(M);
    case ConeKind::kSecondOrder: {
      const int d = K.ambient_dim();
      Rng rng(derive_seed(0xC0DE, "soc-rays"));
      std::vector<Vec> rays;
      rays.push_back(K.canonical_interior());
      for (int i = 1; i < d; ++i) {
        Vec r = Vec::Zero(d);
        r(0) = 1.0;
        r(i) = 1.0;
        rays.push_back(r);
        r(i) = -1.0;
        rays.push_back(r);
      }
      for (int k = 0; k < 16; ++k) {
        Vec u(d - 1);
        for (int i = 0; i < d - 1; ++i) u(i) = rng.gaussian();
        if (u.norm() == 0) continue;
        u /= u.norm();
        Vec r(d);
        r(0) = 1.0;
        r.tail(d - 1) = u;
        rays.push_back(r);
      }
      for (const Vec& r : rays) {
        Vec img = M * r;
        double s = std::max(1.0, img.cwiseAbs().maxCoeff());
        if (!cone_contains(img, K, tol * s)) return false;
      }
      return true;
    }
    case ConeKind::kPsd: {
      const int n = K.psd_order();
      Rng rng(derive_seed(0xC0DE, "psd-rays"));
      std::vector<Vec> dirs;
      for (int i = 0; i < n; ++i) {
        Vec v = Vec::Zero(n);
        v(i) = 1.0;
        dirs.push_back(v);
      }
      for (int k = 0; k < 16; ++k) {
        Vec v(n);
        for (int i = 0; i < n; ++i) v(i) = rng.gaussian();
        if (v.norm() == 0) continue;
        dirs.push_back(v / v.norm());
      }
      for (const Vec& v : dirs) {
        Vec ray = sym_to_vec(v * v.transpose());
        Vec img = M * ray;
        double s = std::max(1.0, img.cwiseAbs().maxCoeff());
        if (!cone_contains(img, K, tol * s)) return false;
      }
      return true;
    }
  }
  return false;
}

ResolventScan resolvent_positivity_scan(const Mat& A, const Cone& K,
                                        const std::vector<double>& grid) {
  require_square(A, "resolvent_positivity_scan");
  ResolventScan scan;
  std::vector<std::pair<double, Mat>> resolvents;
  for (double lam : grid) {
    ResolventSample s = resolvent(A, lam);
    ResolventScanEntry e;
    e.lambda = lam;
    e.positive = operator_is_positive(s.R, K);
    e.min_entry = s.R.minCoeff();
    scan.entries.push_back(e);
    resolvents.emplace_back(lam, std::move(s.R));
  }

  if (K.kind() == ConeKind::kOrthant ||
      K.kind() == ConeKind::kWeightedOrthant) {
    double s_R = eigen_report(A).s_R_A;
    std::sort(resolvents.begin(), resolvents.end(),
              [](const auto& a, const auto& b) { return a.first < b.first; });
    for (std::size_t i = 0; i + 1 < resolvents.size(); ++i) {
      if (resolvents[i].first <= s_R) continue;
      const Mat diff = resolvents[i].second - resolvents[i + 1].second;
      double scale = matrix_scale(resolvents[i].second);
      if (diff.minCoeff() < -1e-10 * scale) {
        scan.decreasing_on_stable_side = false;
      }
    }
  }
  return scan;
}

Mat expm(const Mat& A, double t) {
  require_square(A, "expm");
  if (t < 0) throw std::invalid_argument("expm: t must be >= 0");
  const Eigen::Index d = A.rows();
  if (t == 0) return Mat::Identity(d, d);
  if (t * log_norm_inf(A) > 700.0) {
    throw std::overflow_error(
        "expm: t * mu(A) > 700 would overflow; rescale the operator or "
        "split the time interval");
  }

  // Pade-13 coefficients (Higham 2005).
  static const double b[] = {64764752532480000.0, 32382376266240000.0,
                             7771770303897600.0,  1187353796428800.0,
                             129060195264000.0,   10559470521600.0,
                             670442572800.0,      33522128640.0,
                             1323241920.0,        40840800.0,
                             960960.0,            16380.0,
                             182.0,               1.0};
  const double theta13 = 5.371920351148152;

  Mat B = t * A;
  double nrm = B.cwiseAbs().colwise().sum().maxCoeff();
  if (nrm == 0.0) return Mat::Identity(d, d);
  int squarings = 0;
  if (nrm > theta13) {
    squarings = static_cast<int>(std::ceil(std::log2(nrm / theta13)));
    B /= std::pow(2.0, squarings);
  }

  const Mat I = Mat::Identity(d, d);
  Mat B2 = B * B;
  Mat B4 = B2 * B2;
  Mat B6 = B2 * B4;

  Mat U = B * (B6 * (b[13] * B6 + b[11] * B4 + b[9] * B2) + b[7] * B6 +
               b[5] * B4 + b[3] * B2 + b[1] * I);
  Mat V = B6 * (b[12] * B6 + b[10] * B4 + b[8] * B2) + b[6] * B6 + b[4] * B4 +
          b[2] * B2 + b[0] * I;

  Mat F = (V - U).partialPivLu().solve(V + U);
  for (int k = 0; k < squarings; ++k) F = F * F;
  return F;
}

Vec euler_semigroup_approx(const Mat& A, double t, int n, const Vec& z) {
  require_square(A, "euler_semigroup_approx");
  if (!(t > 0)) throw std::invalid_argument("euler: t must be positive");
  if (n < 1) throw std::invalid_argument("euler: n must be >= 1");
  if (z.size() != A.rows()) {
    throw std::invalid_argument("euler: vector dimension mismatch");
  }
  const double mu = double(n) / t;
  if (mu <= eigen_report(A).s_A) {
    throw std::invalid_argument("euler: n/t must exceed the spectral bound");
  }
  Mat M = mu * Mat::Identity(A.rows(), A.rows()) - A;
  Eigen::PartialPivLU<Mat> lu(M);
  Vec v = z;
  for (int k = 0; k < n; ++k) v = mu * lu.solve(v);
  return v;
}

Vec generator_approx(const Mat& A, const Vec& x, double lambda) {
  require_square(A, "generator_approx");
  if (x.size() != A.rows()) {
    throw std::invalid_argument("generator_approx: dimension mismatch");
  }
  if (lambda <= eigen_report(A).s_A) {
    throw std::invalid_argument(
        "generator_approx: lambda must exceed the spectral bound");
  }
  Mat M = lambda * Mat::Identity(A.rows(), A.rows()) - A;
  Vec r = M.partialPivLu().solve(x);
  return lambda * lambda * r - lambda * x;
}

PerronPair perron_pair(const Mat& A, const Cone& K) {
  require_square(A, "perron_pair");
  if (A.rows() != K.ambient_dim()) {
    throw std::invalid_argument("perron_pair: cone dimension mismatch");
  }
  if ((K.kind() == ConeKind::kOrthant ||
       K.kind() == ConeKind::kWeightedOrthant) &&
      !is_metzler(A)) {
    throw PreconditionError("perron_pair: matrix is not Metzler");
  }

  const double lambda0 = gershgorin_shift(A);
  PerronPair out;

  PowerIterationOutcome primal = resolvent_power_iteration(A, lambda0);
  PowerIterationOutcome dual = resolvent_power_iteration(A.transpose(), lambda0);

  const double res_tol =
      std::max(1e-7, 1e-11 * A.cwiseAbs().rowwise().sum().maxCoeff());
  auto residual_ok = [&](const Mat& B, const PowerIterationOutcome& p) {
    return p.converged &&
           (B * p.vector - p.value * p.vector).norm() <= res_tol;
  };

  if (residual_ok(A, primal) && residual_ok(A.transpose(), dual)) {
    out.value = primal.value;
    out.vector = primal.vector.cwiseMax(0.0);
    out.vector /= out.vector.norm();
    out.dual_vector = dual.vector.cwiseMax(0.0);
    out.dual_vector /= out.dual_vector.norm();
    out.iterations = std::max(primal.iterations, dual.iterations);
    return out;
  }

  // Reducible or defective peripheral structure: fall back to the dense
  // eigensolver and positive-part selection, flagged in the result.
  SpectralReport rep = eigen_report(A);
  if (rep.s_R_A == kNegInf) {
    throw NumericalError("perron_pair: no real spectral value");
  }
  Eigen::EigenSolver<Mat> es(A);
  Eigen::EigenSolver<Mat> esT(A.transpose());
  const double im_tol = 1e-9 * std::max(1.0, A.norm());
  auto pick = [&](const Eigen::EigenSolver<Mat>& solver) -> Vec {
    int best = -1;
    double best_re = kNegInf;
    for (Eigen::Index i = 0; i < solver.eigenvalues().size(); ++i) {
      auto lam = solver.eigenvalues()(i);
      if (std::abs(lam.imag()) <= im_tol && lam.real() > best_re) {
        best_re = lam.real();
        best = static_cast<int>(i);
      }
    }
    if (best < 0) throw NumericalError("perron_pair: fallback failed");
    return positive_part_selection(solver.eigenvectors().col(best));
  };
  out.value = rep.s_R_A;
  out.vector = pick(es);
  out.dual_vector = pick(esT);
  out.used_fallback = true;
  return out;
}

}  // namespace possem
