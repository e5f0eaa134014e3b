#pragma once

#include <vector>

#include "bose1d/types.hpp"

namespace bose1d {

// Uniform symmetric momentum grid, node i at -half_width + i * spacing().
struct Grid {
  double half_width = 0.0;
  int points = 0;

  double spacing() const { return 2.0 * half_width / (points - 1); }
  double node(int i) const { return -half_width + i * spacing(); }
  std::vector<double> nodes() const;
  // trapezoid weights (spacing, halved at the ends)
  std::vector<double> weights() const;

  bool operator==(const Grid&) const = default;
};

// points must be a power of two >= 64, half_width > 0.
Grid build_grid(double half_width, int points);

// Complex function sampled on a Grid with declared constant tails beyond it.
struct SampledFn {
  Grid grid;
  std::vector<cplx> values;
  cplx tail_minus{0.0, 0.0};
  cplx tail_plus{0.0, 0.0};

  SampledFn() = default;
  explicit SampledFn(const Grid& g) : grid(g), values(g.points, cplx{0.0, 0.0}) {}

  int size() const { return static_cast<int>(values.size()); }
  void check_tails(double tol) const;  // throws tail_mismatch
};

}  // namespace bose1d
