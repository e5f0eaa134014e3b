#pragma once

#include <span>
#include <vector>

#include "bose1d/grid.hpp"

namespace bose1d {

// log f with the imaginary part unwrapped left to right, principal branch at
// the first node. Throws winding_ambiguity when an adjacent-node jump stays
// within guard_margin of pi even after 2pi reduction (zero too close to the
// contour for this grid).
SampledFn branch_continuous_log(const SampledFn& f, double jump_guard = 0.995 * pi);

// Continue a sequence of principal-branch log values from a given imaginary
// seed (composite-contour walks).
std::vector<cplx> unwrap_from(std::span<const cplx> raw, double seed_im,
                              double jump_guard = 0.995 * pi);

// Stable principal value of log(1 + exp(z)), complex z.
cplx log1p_exp(cplx z);

// log(1 + e^{-aux/T}) node-wise (principal), then unwrapped left to right.
std::vector<cplx> occupation_log(std::span<const cplx> aux, double T,
                                 double jump_guard = 0.995 * pi);

}  // namespace bose1d
