#pragma once

// Shared fixed-point machinery for the Yang-Yang-type nonlinear integral
// equations, common to the gas and the XXZ lattice:
//
//   aux(k) = e0(k) + shift + i pi T sigma + s_th i T theta(k - k0)
//            + s_th i T sum_j [theta(k - k+_j) - theta(k - k-_j)]
//            + s_K (T/2pi) int K(k - k') log(1 + e^{-aux(k')/T}) dk'
//
// Discrete roots satisfy aux(root) = i pi T (2m + 1). Straight-modified mode
// (root k0 below the axis) drops the k0 phase, folds its loop contribution
// into the driving constant i T (sigma pi + s_K theta_inf) and into the
// -2 pi i right tail of the unwrapped log.

#include <optional>
#include <vector>

#include "bose1d/convolution.hpp"
#include "bose1d/grid.hpp"
#include "bose1d/kernel.hpp"
#include "bose1d/types.hpp"

namespace bose1d::detail {

struct Roots {
  bool has_k0 = false;
  cplx k0{0.0, 0.0};
  std::vector<cplx> kp, km;
};

struct NlieDriving {
  double T = 1.0;
  double shift = 0.0;     // e.g. -phi*T for the generating functional
  double sigma = 0.0;     // field sector quadrant sign, else 0
  bool field = false;
  bool sm = false;        // straight-modified contour
  Roots roots;
};

cplx driving_at(const BetheModel& m, const NlieDriving& d, cplx k);
cplx driving_deriv_at(const BetheModel& m, const NlieDriving& d, cplx k);

// RHS of the NLIE at one point, given the unwrapped occupation log.
cplx rhs_at(const BetheModel& m, const NlieDriving& d, const SampledFn& logfn, cplx k);
cplx rhs_deriv_at(const BetheModel& m, const NlieDriving& d, const SampledFn& logfn, cplx k);

struct NlieOptions {
  NlieDriving driving;          // roots carry the seeds
  std::vector<int> kp_branch, km_branch;
  int k0_branch = 0;
  bool root_feedback = true;    // Newton roots during the iteration
  bool extract_k0 = false;      // SM: locate k0 after convergence
  std::vector<cplx> aux_seed;   // optional initial aux (else driving-based)
  SolverConfig cfg;
};

struct NlieSolution {
  NlieDriving driving;          // roots converged
  SampledFn aux;
  SampledFn logfn;              // unwrapped, tails self-declared
  double fres = 0.0;
  double rres = 0.0;
  int iterations = 0;
  bool converged = false;
};

NlieSolution solve_nlie(const BetheModel& m, const Grid& g, const NlieOptions& opt);

// Newton for aux(k) = i pi T (2m+1) from a seed, against fixed logfn.
cplx newton_root(const BetheModel& m, const NlieDriving& d, const SampledFn& logfn,
                 cplx seed, int branch, const SolverConfig& cfg, double* residual = nullptr);

double root_target_im(double T, int branch);  // pi T (2m+1)

}  // namespace bose1d::detail
