#pragma once

#include <memory>
#include <vector>

#include "bose1d/grid.hpp"
#include "bose1d/kernel.hpp"

namespace bose1d {

// (1/2pi) int K(k-k') L(k') dk' on a uniform grid: zero-padded FFT product of
// trapezoid-weighted samples against the analytically sampled kernel, plus
// closed-form corrections for the declared constant tails of L,
//   int_{Lambda}^{inf} K(k-k') dk' = theta_inf + theta(k-Lambda)
// and mirrored on the left.
class Convolver {
 public:
  Convolver(const Grid& grid, const BetheModel& model);
  ~Convolver();
  Convolver(const Convolver&) = delete;
  Convolver& operator=(const Convolver&) = delete;

  const Grid& grid() const { return grid_; }

  // L.grid must match; tails are read from L.
  std::vector<cplx> apply(const SampledFn& L) const;

  // same integral evaluated at one (possibly complex) point, O(M)
  cplx apply_at(const SampledFn& L, cplx k) const;
  // d/dk of apply_at
  cplx apply_deriv_at(const SampledFn& L, cplx k) const;

 private:
  struct Impl;
  Grid grid_;
  const BetheModel* model_;
  std::unique_ptr<Impl> impl_;
};

// Spec-level convenience: convolve L against the Lieb-Liniger kernel.
SampledFn convolve(const SampledFn& L, const KernelParams& kp, double tail_tol = 1e-6);

}  // namespace bose1d
