// possem - stability certificates for positive linear systems
// Copyright 2026 The possem Authors
// Licensed under the Apache License, Version 2.0

#include "possem/simplex.hpp"

#include <Eigen/LU>

#include <algorithm>
#include <cmath>
#include <limits>
#include <vector>

#include "possem/errors.hpp"

namespace possem {

namespace {

constexpr double kPivotEps = 1e-9;
constexpr double kCostEps = 1e-11;

// Row-equilibrated standard-form instance with one artificial column per
// row appended after the structural variables.
struct Instance {
  Mat A;  // m x (n + m)
  Vec b;  // >= 0
  int m = 0;
  int n = 0;        // structural columns
  int n_total = 0;  // including artificials
};

Instance build_instance(const Mat& A, const Vec& b) {
  const int m = static_cast<int>(A.rows());
  const int n = static_cast<int>(A.cols());
  if (b.size() != m) throw std::invalid_argument("simplex: b size mismatch");

  Instance inst;
  inst.m = m;
  inst.n = n;
  inst.n_total = n + m;
  inst.A = Mat::Zero(m, inst.n_total);
  inst.b = Vec::Zero(m);
  for (int i = 0; i < m; ++i) {
    double sign = b(i) >= 0 ? 1.0 : -1.0;
    double scale =
        std::max({1e-12, A.row(i).cwiseAbs().maxCoeff(), std::abs(b(i))});
    inst.A.block(i, 0, 1, n) = (sign / scale) * A.row(i);
    inst.A(i, n + i) = 1.0;
    inst.b(i) = sign * b(i) / scale;
  }
  return inst;
}

// Dense tableau over the instance. Refactorization rebuilds every number
// from the original data and the current basis, so pivot roundoff cannot
// accumulate into wrong verdicts.
struct Tableau {
  Mat T;  // (m+1) x (n_total + 1); cost row last, rhs column last
  std::vector<int> basis;
  int m = 0;
  int n_total = 0;
  int n_enterable = 0;  // columns allowed to enter (excludes artificials
                        // in phase 2)

  double obj() const { return -T(m, n_total); }

  void rebuild(const Instance& inst, const Vec& cost) {
    Mat B(inst.m, inst.m);
    for (int i = 0; i < inst.m; ++i) B.col(i) = inst.A.col(basis[i]);
    Eigen::PartialPivLU<Mat> lu(B);
    Mat body = lu.solve(inst.A);
    Vec rhs = lu.solve(inst.b);
    if (!body.allFinite() || !rhs.allFinite() ||
        (B * rhs - inst.b).cwiseAbs().maxCoeff() >
            1e-6 * (1.0 + inst.b.cwiseAbs().maxCoeff())) {
      throw NumericalError("simplex: singular basis during refactorization");
    }
    for (int i = 0; i < inst.m; ++i) rhs(i) = std::max(rhs(i), 0.0);

    T.topLeftCorner(inst.m, inst.n_total) = body;
    T.col(n_total).head(inst.m) = rhs;
    T.row(m).head(n_total) = cost.transpose();
    T(m, n_total) = 0.0;
    for (int i = 0; i < inst.m; ++i) {
      double cb = cost(basis[i]);
      if (cb != 0.0) T.row(m) -= cb * T.row(i);
    }
  }

  void pivot(int row, int col) {
    T.row(row) /= T(row, col);
    for (int i = 0; i <= m; ++i) {
      if (i == row) continue;
      double f = T(i, col);
      if (f != 0.0) T.row(i) -= f * T.row(row);
    }
    basis[row] = col;
  }

  // Minimum-ratio test. In the default (Harris-flavored) mode the row with
  // the largest pivot magnitude inside the min-ratio window leaves, which
  // keeps the basis well conditioned on degenerate optimal faces; Bland
  // mode (smallest basic index) is the anti-cycling fallback.
  int leaving_row(int enter, bool bland) const {
    double min_ratio = std::numeric_limits<double>::infinity();
    for (int i = 0; i < m; ++i) {
      double a = T(i, enter);
      if (a > kPivotEps) {
        min_ratio = std::min(min_ratio, T(i, n_total) / a);
      }
    }
    if (!std::isfinite(min_ratio)) return -1;
    int leave = -1;
    double tie = min_ratio + 1e-9 * (1.0 + std::abs(min_ratio));
    for (int i = 0; i < m; ++i) {
      double a = T(i, enter);
      if (a > kPivotEps && T(i, n_total) / a <= tie) {
        if (leave < 0) {
          leave = i;
        } else if (bland ? basis[i] < basis[leave]
                         : a > T(leave, enter)) {
          leave = i;
        }
      }
    }
    return leave;
  }

  // One pivot step. Columns with marginally negative reduced cost but no
  // admissible pivot are numerically dead and skipped; a decisively
  // negative cost without a pivot row is genuine unboundedness.
  bool step(bool bland) {
    if (!bland) {
      int best = -1;
      double best_cost = -kCostEps;
      for (int j = 0; j < n_enterable; ++j) {
        if (T(m, j) < best_cost) {  // Dantzig choice in the default mode
          best_cost = T(m, j);
          best = j;
        }
      }
      if (best >= 0) {
        int leave = leaving_row(best, false);
        if (leave >= 0) {
          pivot(leave, best);
          return true;
        }
        if (T(m, best) < -1e-7) {
          throw NumericalError("simplex: objective unbounded below");
        }
      }
    }
    // Index-order scan: Bland mode, or the fallback past dead columns.
    for (int j = 0; j < n_enterable; ++j) {
      if (T(m, j) >= -kCostEps) continue;
      int leave = leaving_row(j, bland);
      if (leave >= 0) {
        pivot(leave, j);
        return true;
      }
      if (T(m, j) < -1e-7) {
        throw NumericalError("simplex: objective unbounded below");
      }
    }
    return false;
  }
};

// Pivots until no entering column survives a final refactorization.
// Harris/Dantzig pivoting first; past half the pivot budget the loop
// degrades to pure Bland, whose finiteness is guaranteed.
void optimize(Tableau& tab, const Instance& inst, const Vec& cost) {
  const std::size_t cap = 50000 + 200 * std::size_t(inst.m + inst.n_total);
  std::size_t pivots = 0;
  int until_refactor = 64;
  tab.rebuild(inst, cost);
  for (;;) {
    bool bland = pivots > cap / 2;
    if (!tab.step(bland)) {
      tab.rebuild(inst, cost);
      if (!tab.step(bland)) return;
    }
    if (++pivots > cap) {
      throw NumericalError("simplex: pivot cap exceeded");
    }
    if (--until_refactor == 0) {
      tab.rebuild(inst, cost);
      until_refactor = 64;
    }
  }
}

struct PhaseOne {
  Instance inst;
  Tableau tab;
  bool feasible = false;
  double objective = 0.0;
};

PhaseOne run_phase1(const Mat& A, const Vec& b, double feas_tol) {
  PhaseOne p;
  p.inst = build_instance(A, b);
  Tableau& tab = p.tab;
  tab.m = p.inst.m;
  tab.n_total = p.inst.n_total;
  tab.n_enterable = p.inst.n_total;
  tab.T = Mat::Zero(p.inst.m + 1, p.inst.n_total + 1);
  tab.basis.resize(p.inst.m);
  for (int i = 0; i < p.inst.m; ++i) tab.basis[i] = p.inst.n + i;

  Vec cost = Vec::Zero(p.inst.n_total);
  cost.tail(p.inst.m).setOnes();
  optimize(tab, p.inst, cost);

  p.objective = tab.obj();
  p.feasible = p.objective <= feas_tol * std::max(1.0, double(p.inst.m));
  if (!p.feasible) return p;

  // Drive leftover artificial variables out of the basis where a
  // structural pivot exists. Rows that admit none are redundant; they are
  // deleted outright, because a zero-level artificial left in the basis
  // could silently grow through later phase-2 pivots and break the
  // original equality system.
  for (int i = 0; i < p.inst.m; ++i) {
    if (tab.basis[i] < p.inst.n) continue;
    int best_col = -1;
    double best_mag = 1e-7;
    for (int j = 0; j < p.inst.n; ++j) {
      if (std::abs(tab.T(i, j)) > best_mag) {
        best_mag = std::abs(tab.T(i, j));
        best_col = j;
      }
    }
    if (best_col >= 0) tab.pivot(i, best_col);
  }

  std::vector<int> kept;
  for (int i = 0; i < p.inst.m; ++i) {
    if (tab.basis[i] < p.inst.n) kept.push_back(i);
  }
  if (static_cast<int>(kept.size()) < p.inst.m) {
    Instance reduced;
    reduced.m = static_cast<int>(kept.size());
    reduced.n = p.inst.n;
    reduced.n_total = p.inst.n + reduced.m;
    reduced.A = Mat::Zero(reduced.m, reduced.n_total);
    reduced.b = Vec::Zero(reduced.m);
    std::vector<int> basis2(reduced.m);
    for (int q = 0; q < reduced.m; ++q) {
      reduced.A.block(q, 0, 1, p.inst.n) =
          p.inst.A.block(kept[q], 0, 1, p.inst.n);
      reduced.A(q, p.inst.n + q) = 1.0;
      reduced.b(q) = p.inst.b(kept[q]);
      basis2[q] = tab.basis[kept[q]];
    }
    p.inst = std::move(reduced);
    tab.m = p.inst.m;
    tab.n_total = p.inst.n_total;
    tab.n_enterable = p.inst.n_total;
    tab.T = Mat::Zero(p.inst.m + 1, p.inst.n_total + 1);
    tab.basis = std::move(basis2);
    cost = Vec::Zero(p.inst.n_total);
    cost.tail(p.inst.m).setOnes();
  }
  tab.rebuild(p.inst, cost);
  return p;
}

Vec extract_primal(const Tableau& tab, int n) {
  Vec x = Vec::Zero(n);
  for (int i = 0; i < tab.m; ++i) {
    if (tab.basis[i] < n) x(tab.basis[i]) = tab.T(i, tab.n_total);
  }
  return x;
}

void verify_primal(const Mat& A, const Vec& b, const Vec& x) {
  double scale = std::max(1.0, b.cwiseAbs().maxCoeff());
  scale = std::max(scale, A.cwiseAbs().maxCoeff());
  double min_x = x.minCoeff();
  double residual = (A * x - b).cwiseAbs().maxCoeff();
  if (min_x < -1e-9 || residual > 1e-7 * scale) {
    throw NumericalError(
        "simplex: extracted point fails verification (min x = " +
        std::to_string(min_x) + ", residual = " + std::to_string(residual) +
        ", scale = " + std::to_string(scale) + ")");
  }
}

}  // namespace

FeasibilityResult phase1_feasible(const Mat& A, const Vec& b,
                                  double feas_tol) {
  require_finite(A, "phase1_feasible");
  PhaseOne p = run_phase1(A, b, feas_tol);
  FeasibilityResult out;
  out.feasible = p.feasible;
  out.phase1_objective = p.objective;
  if (p.feasible) {
    out.x = extract_primal(p.tab, static_cast<int>(A.cols()));
    verify_primal(A, b, out.x);
  }
  return out;
}

LpResult solve_lp(const Mat& A, const Vec& b, const Vec& c, double feas_tol) {
  require_finite(A, "solve_lp");
  const int n = static_cast<int>(A.cols());
  if (c.size() != n) throw std::invalid_argument("simplex: c size mismatch");

  PhaseOne p = run_phase1(A, b, feas_tol);
  LpResult out;
  if (!p.feasible) {
    out.status = LpStatus::kInfeasible;
    return out;
  }

  // Phase 2 with the structural cost; artificial columns can no longer
  // enter the basis.
  double cscale = std::max(1.0, c.cwiseAbs().maxCoeff());
  Vec cost = Vec::Zero(p.inst.n_total);
  cost.head(n) = c / cscale;
  p.tab.n_enterable = n;
  optimize(p.tab, p.inst, cost);

  out.status = LpStatus::kOptimal;
  out.x = extract_primal(p.tab, n);
  verify_primal(A, b, out.x);
  out.objective = c.dot(out.x);
  return out;
}

}  // namespace possem
