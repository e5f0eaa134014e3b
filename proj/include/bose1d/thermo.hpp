#pragma once

#include "bose1d/grid.hpp"
#include "bose1d/types.hpp"

namespace bose1d {

// Converged solution of the Yang-Yang equation
//   eps(k) = k^2 - mu - (T/2pi) int K(k-k') log(1 + e^{-eps(k')/T}) dk'.
struct DressedEnergy {
  ModelParams params;
  SampledFn eps;       // real-valued, stored complex
  bool converged = false;
  double residual = 0.0;

  double at_node(int i) const { return eps.values[i].real(); }
};

// Grid selection: half_width so the Gaussian driving is < 1e-16 at the edge
// and >= 10c; with cfg.grid_m == 0 the point count doubles until the grand
// potential settles to the solver tolerance.
Grid auto_grid(const ModelParams& p, const SolverConfig& cfg);

DressedEnergy solve_dressed_energy(const ModelParams& p, const SolverConfig& cfg = {});

// analytic continuation of the defining equation's RHS (|Im k| < c)
cplx dressed_energy_at(const DressedEnergy& de, cplx k);

// phi(mu, T) = -(T/2pi) int log(1 + e^{-eps/T}) dk  (trapezoid + Gaussian tail)
double grand_potential(const DressedEnergy& de);
double grand_potential(const ModelParams& p, const SolverConfig& cfg = {});

// n = -d(phi)/d(mu), central difference, relative step 1e-4 * max(1, |mu|)
double density(const ModelParams& p, const SolverConfig& cfg = {});

// s = -d(phi)/dT, 4th-order central differences, relative step 1e-3
double entropy(const ModelParams& p, const SolverConfig& cfg = {});

// c_V = -T d^2(phi)/dT^2 at fixed mu, 5-point central, relative step 1e-3
double specific_heat(const ModelParams& p, const SolverConfig& cfg = {});

}  // namespace bose1d
