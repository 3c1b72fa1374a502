// possem - stability certificates for positive linear systems
// Copyright 2026 The possem Authors
// Licensed under the Apache License, Version 2.0

#include "possem/gallery.hpp"

#include <cmath>
#include <stdexcept>

#include "possem/rng.hpp"

namespace possem {

namespace {

constexpr double kHalfPi = 1.5707963267948966;

}  // namespace

Vec grid_cell_centers(int n, double a, double b) {
  if (n < 1) throw std::invalid_argument("grid: n must be >= 1");
  if (!(a < b)) throw std::invalid_argument("grid: need a < b");
  const double h = (b - a) / n;
  Vec w(n);
  for (int j = 0; j < n; ++j) w(j) = a + (j + 0.5) * h;
  return w;
}

Mat build_neumann_laplacian(int n, double a, double b) {
  if (n < 3) throw std::invalid_argument("neumann_laplacian: n must be >= 3");
  if (!(a < b)) throw std::invalid_argument("neumann_laplacian: need a < b");
  const double h = (b - a) / n;
  const double w = 1.0 / (h * h);
  Mat A = Mat::Zero(n, n);
  for (int j = 0; j < n; ++j) {
    if (j > 0) A(j, j - 1) = w;
    if (j < n - 1) A(j, j + 1) = w;
    A(j, j) = -((j > 0 ? 1.0 : 0.0) + (j < n - 1 ? 1.0 : 0.0)) * w;
  }
  return A;
}

double deep_well_value(double omega, double depth) {
  if (!(depth > 0)) throw std::invalid_argument("deep_well: depth must be > 0");
  const double s2 = std::sin(omega) * std::sin(omega);
  if (s2 == 0.0) return -depth;  // the singular node takes the floor branch
  return std::max(5.0 - 2.0 / s2, -depth);
}

DeepWellPotential build_deep_well_potential(int n, double depth) {
  if (n < 2) throw std::invalid_argument("deep_well: n must be >= 2");
  Vec grid = grid_cell_centers(n, -kHalfPi, kHalfPi);
  DeepWellPotential out;
  out.samples.resize(n);
  for (int j = 0; j < n; ++j) out.samples(j) = deep_well_value(grid(j), depth);
  const double h = grid(1) - grid(0);
  double acc = 0.5 * (out.samples(0) + out.samples(n - 1));
  for (int j = 1; j < n - 1; ++j) acc += out.samples(j);
  out.trapezoid_integral = h * acc;
  return out;
}

Mat build_laplacian_plus_potential(int n, double a, double b,
                                   const PotentialSpec& potential) {
  Mat A = build_neumann_laplacian(n, a, b);
  Vec grid = grid_cell_centers(n, a, b);
  Vec V(n);
  switch (potential.kind) {
    case PotentialSpec::Kind::kMeanZeroSin:
      for (int j = 0; j < n; ++j) V(j) = std::sin(2.0 * grid(j));
      break;
    case PotentialSpec::Kind::kDeepWell: {
      if (std::abs(a + kHalfPi) > 1e-12 || std::abs(b - kHalfPi) > 1e-12) {
        throw std::invalid_argument(
            "deep_well potential is defined on (-pi/2, pi/2)");
      }
      V = build_deep_well_potential(n, potential.depth).samples;
      break;
    }
    case PotentialSpec::Kind::kCustom: {
      if (static_cast<int>(potential.samples.size()) != n) {
        throw std::invalid_argument(
            "custom potential: sample count must equal n");
      }
      for (int j = 0; j < n; ++j) V(j) = potential.samples[j];
      break;
    }
  }
  require_finite(V, "potential");
  A.diagonal() += V;
  return A;
}

Mat build_diagonal_decay(int n) {
  if (n < 1) throw std::invalid_argument("diagonal_decay: n must be >= 1");
  Vec d(n);
  for (int j = 0; j < n; ++j) d(j) = -double(j + 1);
  return d.asDiagonal();
}

Mat metzler_random(int d, double density, double diag_shift,
                   std::uint64_t seed) {
  if (d < 1) throw std::invalid_argument("metzler_random: d must be >= 1");
  if (density < 0 || density > 1) {
    throw std::invalid_argument("metzler_random: density must be in [0, 1]");
  }
  Rng rng(derive_seed(seed, "metzler-random"));
  Mat A = Mat::Zero(d, d);
  for (int i = 0; i < d; ++i) {
    for (int j = 0; j < d; ++j) {
      if (i == j) continue;
      if (rng.uniform() < density) A(i, j) = rng.uniform();
    }
  }
  for (int i = 0; i < d; ++i) {
    A(i, i) = -A.row(i).sum() - rng.uniform(0.1, 1.0) + diag_shift;
  }
  return A;
}

Mat metzler_random_irreducible(int d, double density, double diag_shift,
                               std::uint64_t seed) {
  Mat A = metzler_random(d, density, diag_shift, seed);
  Rng rng(derive_seed(seed, "irreducible-cycle"));
  for (int i = 0; i < d; ++i) {
    int j = (i + 1) % d;
    if (j != i) A(i, j) += rng.uniform(0.1, 1.0);
  }
  return A;
}

Mat build(const GallerySpec& spec) {
  return std::visit(
      [](const auto& s) -> Mat {
        using T = std::decay_t<decltype(s)>;
        if constexpr (std::is_same_v<T, MetzlerRandomSpec>) {
          return metzler_random(s.d, s.density, s.diag_shift, s.seed);
        } else if constexpr (std::is_same_v<T, NeumannLaplacianSpec>) {
          return build_neumann_laplacian(s.n, s.a, s.b);
        } else if constexpr (std::is_same_v<T, LaplacianPlusPotentialSpec>) {
          return build_laplacian_plus_potential(s.n, s.a, s.b, s.potential);
        } else {
          return build_diagonal_decay(s.n);
        }
      },
      spec);
}

}  // namespace possem
