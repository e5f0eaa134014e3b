#include "bose1d/grid.hpp"

#include <cmath>

namespace bose1d {

namespace {
bool is_pow2(int n) { return n > 0 && (n & (n - 1)) == 0; }
}  // namespace

Grid build_grid(double half_width, int points) {
  if (!(half_width > 0.0))
    fail(Errc::invalid_argument, "grid half_width must be positive");
  if (points < 64 || !is_pow2(points))
    fail(Errc::invalid_argument, "grid points must be a power of two >= 64");
  return Grid{half_width, points};
}

std::vector<double> Grid::nodes() const {
  std::vector<double> k(points);
  for (int i = 0; i < points; ++i) k[i] = node(i);
  return k;
}

std::vector<double> Grid::weights() const {
  std::vector<double> w(points, spacing());
  w.front() *= 0.5;
  w.back() *= 0.5;
  return w;
}

void SampledFn::check_tails(double tol) const {
  if (values.empty()) fail(Errc::invalid_argument, "empty sampled function");
  const double dm = std::abs(values.front() - tail_minus);
  const double dp = std::abs(values.back() - tail_plus);
  if (dm > tol || dp > tol)
    fail(Errc::tail_mismatch,
         "declared tails differ from boundary samples: left " + std::to_string(dm) +
             ", right " + std::to_string(dp) + ", tol " + std::to_string(tol));
}

const char* errc_name(Errc code) {
  switch (code) {
    case Errc::invalid_argument: return "invalid-argument";
    case Errc::domain_error: return "domain-error";
    case Errc::tail_mismatch: return "tail-mismatch";
    case Errc::winding_ambiguity: return "winding-ambiguity";
    case Errc::no_convergence: return "no-convergence";
    case Errc::root_escape: return "root-escape";
    case Errc::branch_collision: return "branch-collision";
    case Errc::newton_divergence: return "newton-divergence";
    case Errc::grid_mismatch: return "grid-mismatch";
    case Errc::contour_mode: return "contour-mode";
    case Errc::no_fermi_sea: return "no-fermi-sea";
    case Errc::singular_system: return "singular-system";
    case Errc::quadrature_failure: return "quadrature-failure";
  }
  return "unknown";
}

void ModelParams::validate() const {
  if (!(coupling > 0.0)) fail(Errc::invalid_argument, "coupling must be positive");
  if (!(T > 0.0)) fail(Errc::invalid_argument, "temperature must be positive");
  if (std::isnan(mu)) fail(Errc::invalid_argument, "mu is nan");
}

void SolverConfig::validate() const {
  if (!(tol > 0.0) || !(root_tol > 0.0)) fail(Errc::invalid_argument, "tolerances must be positive");
  if (!(damping > 0.0 && damping <= 1.0)) fail(Errc::invalid_argument, "damping must be in (0, 1]");
  if (max_iter < 1) fail(Errc::invalid_argument, "max_iter must be >= 1");
}

}  // namespace bose1d
