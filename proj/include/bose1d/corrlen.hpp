#pragma once

#include "bose1d/excitations.hpp"
#include "bose1d/thermo.hpp"

namespace bose1d {

// 1/xi assembled from a solved excited state against the dressed energy.
// Re > 0 for decaying correlations; Im is the oscillation wavenumber.
struct InverseCorrLen {
  cplx value{0.0, 0.0};
  Sector sector = Sector::density;
  RootSet roots;
  cplx integral_part{0.0, 0.0};
  cplx root_part{0.0, 0.0};
};

InverseCorrLen inverse_corrlen_density(const SolvedState& state, const DressedEnergy& de);
InverseCorrLen inverse_corrlen_field(const SolvedState& state, const DressedEnergy& de);
InverseCorrLen inverse_corrlen_genfunc(const SolvedState& state, const DressedEnergy& de);
InverseCorrLen inverse_corrlen(const SolvedState& state, const DressedEnergy& de);

// Default leading excitation for the sector (density: r=1 two-Fermi-point
// pair; field: r=0 with automatic contour mode; genfunc: r=0), solved and
// assembled. `continue_from` seeds the roots from a previous solve (sweeps).
InverseCorrLen leading_corrlen(const ModelParams& p, Sector sector,
                               const SolverConfig& cfg = {},
                               const RootSet* continue_from = nullptr);

// Eigenvalue view: 1/xi = log lambda0 - log lambda_i.
// log lambda0 = (1/2pi) int log(1 + e^{-eps/T}) dk = -phi/T.
double log_lambda0(const DressedEnergy& de);
// log lambda_i = i k0 + i sum k+ - i sum k- + (1/2pi) int log(1+e^{-aux/T});
// plain contour only.
cplx log_lambda_excited(const SolvedState& state);

}  // namespace bose1d
