#pragma once

#include <optional>
#include <vector>

#include "bose1d/grid.hpp"
#include "bose1d/thermo.hpp"
#include "bose1d/types.hpp"

namespace bose1d {

enum class Sector { density, field, genfunc };

const char* sector_name(Sector s);
Sector sector_from_name(const std::string& name);

// How the field-sector equations treat a root k0 below the real axis.
//   plain:             Im k0 >= 0, driving keeps i*T*theta(k - k0)
//   straight_modified: straight contour, k0 driving dropped, logfn tails
//                      (0, -2pi i)
//   indented:          straight solve + explicit arc quadrature around k0
//                      in the assembly (and around its mirror when shallow)
enum class ContourMode { automatic, plain, straight_modified, indented };

const char* contour_mode_name(ContourMode m);

// Discrete excited state: sector, particle-hole pair count r, branch index m
// per root (the root tracks aux(k) = i pi T (2m+1)), optional explicit seeds.
struct ExcitationSpec {
  Sector sector = Sector::density;
  int pairs = 1;        // r  (density >= 1, field/genfunc >= 0)
  double twist = 0.0;   // phi, genfunc only
  int k0_branch = 0;    // field only
  std::vector<int> plus_branches;   // size r; default filled by the solver
  std::vector<int> minus_branches;  // size r
  std::optional<cplx> seed_k0;
  std::vector<cplx> seed_plus;
  std::vector<cplx> seed_minus;
  ContourMode contour = ContourMode::automatic;

  void validate() const;
};

struct RootSet {
  bool has_k0 = false;
  cplx k0{0.0, 0.0};
  std::vector<cplx> k_plus;   // Im > 0
  std::vector<cplx> k_minus;  // Im < 0
};

struct SolvedState {
  ExcitationSpec spec;
  ModelParams params;
  RootSet roots;
  SampledFn aux;    // auxiliary function on the grid
  SampledFn logfn;  // branch-continuous log(1 + e^{-aux/T})
  double residual_function = 0.0;
  double residual_roots = 0.0;
  ContourMode contour = ContourMode::plain;  // resolved mode
  // Field sector: nearest below-axis partner zero of 1+e^{-aux/T} on the
  // other Fermi side; the indented assembly arcs around it when shallow.
  std::optional<cplx> mirror_root;
};

SolvedState solve_excited_state(const ModelParams& p, const ExcitationSpec& spec,
                                const SolverConfig& cfg = {});

// Analytic continuation of the defining equation's right-hand side,
// |Im k| < c required.
cplx evaluate_aux_offgrid(const SolvedState& state, cplx k);
cplx evaluate_aux_deriv_offgrid(const SolvedState& state, cplx k);

// One more Newton pass over all roots against their branch constraints.
SolvedState refine_roots(const SolvedState& state);

}  // namespace bose1d
