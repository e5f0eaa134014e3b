#pragma once

#include <functional>

#include "bose1d/types.hpp"

namespace bose1d {

// Lieb-Liniger scattering data.
//   theta(k) = i log((ic+k)/(ic-k)),  theta(0) = 0,  theta(+-inf) = +-pi
//   K(k)     = theta'(k) = 2c/(k^2+c^2)
// Analytic continuation is restricted to the strip |Im k| < c; beyond it the
// principal branch hits the cut through the kernel poles at +-ic.
// coupling = inf is the pointwise impenetrable limit: theta = K = 0.
struct KernelParams {
  double coupling = 1.0;
  void validate() const;
};

cplx theta_bar(cplx k, double coupling);
cplx lorentzian_kernel(cplx k, double coupling);
cplx lorentzian_kernel_deriv(cplx k, double coupling);

// One integrable model's Bethe data, enough to run the shared NLIE machinery.
// Gas:     e0 = k^2 - mu, kernel K-bar, phase theta-bar, p0(k) = k,
//          kernel_sign = -1, phase_sign = +1.
// Lattice: trigonometric data of the XXZ chain, kernel_sign = +1,
//          phase_sign = -1 (see the xxz module).
struct BetheModel {
  std::function<cplx(cplx)> e0;
  std::function<cplx(cplx)> e0_deriv;
  std::function<cplx(cplx)> kernel;
  std::function<cplx(cplx)> kernel_deriv;
  std::function<cplx(cplx)> phase;
  double phase_at_inf = 0.0;  // theta(+inf); theta is odd
  std::function<cplx(cplx)> momentum;        // p0
  std::function<cplx(cplx)> momentum_deriv;  // p0'
  double kernel_sign = -1.0;  // sign of the (T/2pi) * conv term in the NLIE
  double phase_sign = 1.0;    // sign of i*T*theta(k - k_plus) driving
  double strip = 0.0;         // |Im| < strip required for roots / off-grid
  bool zero_kernel = false;   // impenetrable limit

  void require_in_strip(cplx k) const;
};

BetheModel gas_model(const ModelParams& p);

}  // namespace bose1d
