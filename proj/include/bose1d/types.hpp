#pragma once

#include <complex>
#include <stdexcept>
#include <string>

namespace bose1d {

using cplx = std::complex<double>;

constexpr double pi = 3.14159265358979323846;

// Physical parameters of the repulsive 1D Bose gas, hbar = 2m = 1.
// coupling = inf selects the impenetrable (Tonks-Girardeau) limit.
struct ModelParams {
  double coupling = 1.0;  // c > 0
  double mu = 0.0;        // chemical potential
  double T = 1.0;         // temperature > 0

  bool tonks() const { return std::isinf(coupling); }
  void validate() const;
};

// Knobs shared by all fixed-point solvers.
struct SolverConfig {
  double tol = 1e-10;        // sup-norm fixed-point residual
  double root_tol = 1e-11;   // |aux(root) - i pi T (2m+1)|
  int max_iter = 500;
  double damping = 0.5;      // Picard mixing, (0, 1]
  double grid_lambda = 0.0;  // 0 = auto
  int grid_m = 0;            // 0 = auto (doubling until observables settle)
  int grid_m_min = 2048;
  int grid_m_max = 1 << 17;
  double tail_tol = 1e-6;    // declared-vs-sampled tail mismatch bound
  int root_every = 5;        // Picard sweeps per root Newton update
  double trust_radius = 0.0; // 0 = auto (fraction of the analyticity strip)
  int quad_order = 64;       // Gauss-Legendre order (zero-T module, arcs)

  void validate() const;
};

enum class Errc {
  invalid_argument,
  domain_error,
  tail_mismatch,
  winding_ambiguity,
  no_convergence,
  root_escape,
  branch_collision,
  newton_divergence,
  grid_mismatch,
  contour_mode,
  no_fermi_sea,
  singular_system,
  quadrature_failure,
};

class Error : public std::runtime_error {
 public:
  Error(Errc code, const std::string& what) : std::runtime_error(what), code_(code) {}
  Errc code() const { return code_; }

 private:
  Errc code_;
};

[[noreturn]] inline void fail(Errc code, const std::string& what) { throw Error(code, what); }

const char* errc_name(Errc code);

}  // namespace bose1d
