#pragma once

#include "bose1d/excitations.hpp"
#include "bose1d/ground_state.hpp"
#include "bose1d/types.hpp"

namespace bose1d {

// Impenetrable-limit field-field inverse correlation length:
//   mu < 0: (1/2pi) int log[(e^w+1)/(e^w-1)] dk + sqrt(|mu|),  w = (k^2-mu)/T
//   mu > 0: (1/2pi) int log|(e^w+1)/(e^w-1)| dk
// Adaptive quadrature, absolute error <= 1e-10. mu = 0 follows by continuity
// (evaluated on the mu > 0 branch).
double tonks_field_corrlen(double mu, double T);

// Leading-order-in-T Luttinger-liquid prediction for 1/xi.
struct CftPrediction {
  Sector sector = Sector::field;
  int winding = 0;  // l
  cplx value{0.0, 0.0};
};

// field:   (2piT/vF) (1/(4Z^2) + l^2 Z^2) + 2 i l kF
// density: l = 0 -> 2piT/vF (non-oscillating particle-hole term),
//          l != 0 -> (2piT/vF) l^2 Z^2 + 2 i l kF
CftPrediction cft_prediction(const GroundStateSummary& gs, Sector sector, int l, double T);

}  // namespace bose1d
