// possem - stability certificates for positive linear systems
// Copyright 2026 The possem Authors
// Licensed under the Apache License, Version 2.0

#pragma once

#include <cstdint>
#include <variant>
#include <vector>

#include "possem/cones.hpp"

namespace possem {

// Constructors for the concrete operators the test suites exercise:
// random Metzler matrices, the cell-centered Neumann Laplacian with
// optional potentials, and the truncated diagonal decay operator.

struct MetzlerRandomSpec {
  int d = 2;
  double density = 0.5;
  double diag_shift = 0.0;
  std::uint64_t seed = 0;
};

struct NeumannLaplacianSpec {
  int n = 3;
  double a = 0.0;
  double b = 1.0;
};

struct PotentialSpec {
  enum class Kind { kMeanZeroSin, kDeepWell, kCustom };
  Kind kind = Kind::kMeanZeroSin;
  double depth = 100.0;          // deep well only
  std::vector<double> samples;   // custom only
};

struct LaplacianPlusPotentialSpec {
  int n = 3;
  double a = -1.5707963267948966;
  double b = 1.5707963267948966;
  PotentialSpec potential;
};

struct DiagonalDecaySpec {
  int n = 1;
};

using GallerySpec = std::variant<MetzlerRandomSpec, NeumannLaplacianSpec,
                                 LaplacianPlusPotentialSpec, DiagonalDecaySpec>;

Mat build(const GallerySpec& spec);

// Cell-centered grid: omega_j = a + (j + 1/2) h with h = (b - a) / n.
Vec grid_cell_centers(int n, double a, double b);

// Second-order Neumann closure on the cell-centered grid:
// (1/h^2) tridiag(1, -2, 1) with corner diagonal entries -1. Symmetric,
// Metzler, zero row sums, hence s(A) = 0 with kernel vector ones.
Mat build_neumann_laplacian(int n, double a, double b);

// max(5 - 2/sin^2 w, -depth): bounded above by 3 (with equality at
// +-pi/2), keeps 2/sin^2 w - 4 + V >= 1 away from w = 0, and its integral
// drops to -inf as the depth grows.
double deep_well_value(double omega, double depth);

struct DeepWellPotential {
  Vec samples;                     // on the cell-centered grid of (-pi/2, pi/2)
  double trapezoid_integral = 0;   // reported alongside the samples
};

DeepWellPotential build_deep_well_potential(int n, double depth);

Mat build_laplacian_plus_potential(int n, double a, double b,
                                   const PotentialSpec& potential);

// diag(-1, -2, ..., -n): s(A) = -1 at every truncation level.
Mat build_diagonal_decay(int n);

// Random Metzler matrix: off-diagonal entries Bernoulli(density) * U[0,1],
// diagonal strictly dominated (stable at diag_shift = 0), then shifted by
// diag_shift * I.
Mat metzler_random(int d, double density, double diag_shift,
                   std::uint64_t seed);

// Same, plus a uniformly weighted cycle so the matrix is irreducible.
Mat metzler_random_irreducible(int d, double density, double diag_shift,
                               std::uint64_t seed);

}  // namespace possem
