#pragma once

#include <vector>

#include "bose1d/excitations.hpp"
#include "bose1d/grid.hpp"
#include "bose1d/kernel.hpp"
#include "bose1d/types.hpp"

namespace bose1d::xxz {

// Massless-regime XXZ chain in a longitudinal field, Delta = cos(eta).
struct XxzParams {
  double eta = pi / 2;  // anisotropy angle in (0, pi)
  double J = 0.5;       // exchange > 0
  double h = 0.0;       // 0 <= h < h_c = 8 J cos^2(eta/2)
  double T = 0.1;       // temperature > 0

  double critical_field() const;
  void validate() const;
};

// Bethe data: e0(l) = h - 2J sin^2(eta)/(sinh^2 l + sin^2(eta/2)),
// p0, theta with branches p0(inf) = pi - eta, theta(inf) = pi - 2 eta,
// K = theta' = sin(2 eta)/(sinh^2 l + sin^2 eta).
cplx xxz_e0(cplx l, const XxzParams& p);
cplx xxz_momentum(cplx l, double eta);
cplx xxz_momentum_deriv(cplx l, double eta);
cplx xxz_phase(cplx l, double eta);
cplx xxz_kernel(cplx l, double eta);
cplx xxz_kernel_deriv(cplx l, double eta);

BetheModel xxz_model(const XxzParams& p);

Grid xxz_auto_grid(const XxzParams& p, const SolverConfig& cfg);

// Largest QTM eigenvalue:
//   eps(l) = e0(l) + (T/2pi) int K(l-m) log(1+e^{-eps/T}) dm
//   log Lambda0(0) = h/2T + (1/2pi) int p0'(l) log(1+e^{-eps/T}) dl
struct XxzLargest {
  XxzParams params;
  SampledFn eps;
  double log_lambda0 = 0.0;
  bool converged = false;
  double residual = 0.0;
};

XxzLargest solve_xxz_largest(const XxzParams& p, const SolverConfig& cfg = {});

// Next-largest eigenvalues. Sector::density is the N/2 sector (particle-hole
// pairs), Sector::field the N/2-1 sector with the extra root lambda0 and the
// -i pi term retained (it contributes the (-1)^m factor on the lattice).
struct XxzExcited {
  SolvedState state;       // lattice auxiliary function and roots
  cplx log_lambda{0.0, 0.0};
  cplx inv_corrlen{0.0, 0.0};  // log Lambda0 - log Lambda_i
};

XxzExcited solve_xxz_excited(const XxzParams& p, const ExcitationSpec& spec,
                             const SolverConfig& cfg = {});

// Zero-temperature lattice system (for the Affleck free-energy check and
// excited-root seeding): rho, eps0, Fermi boundary, Fermi velocity.
struct XxzGroundState {
  double q = 0.0;
  double rho_at_q = 0.0;
  double eps0_prime_at_q = 0.0;
  double fermi_velocity = 0.0;
  double dressed_charge = 0.0;  // Z(q)
  double ground_energy = 0.0;   // int e0 rho - h/2
};

XxzGroundState xxz_ground_state(const XxzParams& p, int order = 64);

// Table-I scaling map from gas (c, mu, Tbar) at scale epsilon:
// J = 1/2, eta = pi - epsilon, delta = epsilon^2/c,
// h = epsilon^2 + epsilon^4/4 - mu delta^2, T = Tbar delta^2.
struct ContinuumMap {
  double epsilon = 0.0;
  double delta = 0.0;
  XxzParams lattice;
};

ContinuumMap continuum_map(const ModelParams& gas, double epsilon);

struct ContinuumPoint {
  double epsilon = 0.0;
  double dev_log_lambda0 = 0.0;  // |rescaled lattice - gas|
  double dev_field = 0.0;        // leading field inverse correlation length
};

struct ContinuumReport {
  std::vector<ContinuumPoint> points;   // in the order of eps_list
  double order_log_lambda0 = 0.0;       // fitted convergence order in epsilon
  double order_field = 0.0;
  bool monotonic_log_lambda0 = false;
  bool monotonic_field = false;
  double gas_log_lambda0 = 0.0;
  cplx gas_field_corrlen{0.0, 0.0};
};

ContinuumReport continuum_limit_check(const ModelParams& gas,
                                      const std::vector<double>& eps_list,
                                      const SolverConfig& cfg = {});

}  // namespace bose1d::xxz
