#include "bose1d/thermo.hpp"

#include <algorithm>
#include <array>
#include <cmath>

#include "bose1d/convolution.hpp"
#include "bose1d/unwrap.hpp"
#include "nlie.hpp"

namespace bose1d {

namespace {

double auto_half_width(const ModelParams& p) {
  // Gaussian driving below 1e-16 at the edge; >= 10c keeps the kernel wings
  // and tail corrections accurate.
  const double lam = std::sqrt(std::max(p.mu, 0.0) + 37.0 * p.T) + 1.0;
  if (p.tonks()) return lam;
  return std::max(lam, 10.0 * p.coupling);
}

int auto_points_start(const SolverConfig& cfg) { return std::max(cfg.grid_m_min, 2048); }

DressedEnergy solve_on_grid(const ModelParams& p, const SolverConfig& cfg, const Grid& g) {
  const BetheModel model = gas_model(p);
  detail::NlieOptions opt;
  opt.driving.T = p.T;
  opt.cfg = cfg;
  opt.root_feedback = false;
  detail::NlieSolution sol = detail::solve_nlie(model, g, opt);
  DressedEnergy de;
  de.params = p;
  de.eps = std::move(sol.aux);
  de.converged = sol.converged;
  de.residual = sol.fres;
  return de;
}

double phi_of(const DressedEnergy& de) {
  const Grid& g = de.eps.grid;
  const auto w = g.weights();
  double acc = 0.0;
  for (int i = 0; i < g.points; ++i) {
    const double x = -de.eps.values[i].real() / de.params.T;
    acc += w[i] * (x < 0.0 ? std::log1p(std::exp(x)) : x + std::log1p(std::exp(-x)));
  }
  // Gaussian estimate of the truncated tails, eps ~ k^2 - mu beyond the grid
  const double T = de.params.T;
  const double lam = g.half_width;
  const double tail =
      std::sqrt(pi * T) * std::exp(de.params.mu / T) * std::erfc(lam / std::sqrt(T));
  return -(de.params.T / (2.0 * pi)) * (acc + tail);
}

}  // namespace

Grid auto_grid(const ModelParams& p, const SolverConfig& cfg) {
  p.validate();
  const double lam = cfg.grid_lambda > 0.0 ? cfg.grid_lambda : auto_half_width(p);
  const int m = cfg.grid_m > 0 ? cfg.grid_m : auto_points_start(cfg);
  return build_grid(lam, m);
}

DressedEnergy solve_dressed_energy(const ModelParams& p, const SolverConfig& cfg) {
  p.validate();
  if (cfg.grid_m > 0) return solve_on_grid(p, cfg, auto_grid(p, cfg));
  // double the resolution until the grand potential settles
  Grid g = auto_grid(p, cfg);
  DressedEnergy de = solve_on_grid(p, cfg, g);
  double phi = phi_of(de);
  while (2 * g.points <= cfg.grid_m_max) {
    g = build_grid(g.half_width, 2 * g.points);
    DressedEnergy fine = solve_on_grid(p, cfg, g);
    const double phi_fine = phi_of(fine);
    const bool settled = std::abs(phi_fine - phi) <= cfg.tol * std::max(1.0, std::abs(phi_fine));
    de = std::move(fine);
    phi = phi_fine;
    if (settled) break;
  }
  return de;
}

double grand_potential(const DressedEnergy& de) {
  if (!de.converged) fail(Errc::no_convergence, "grand_potential of an unconverged solve");
  return phi_of(de);
}

cplx dressed_energy_at(const DressedEnergy& de, cplx k) {
  const BetheModel model = gas_model(de.params);
  model.require_in_strip(k);
  SampledFn L(de.eps.grid);
  const double T = de.params.T;
  for (int i = 0; i < de.eps.grid.points; ++i) {
    const double x = -de.eps.values[i].real() / T;
    L.values[i] = cplx{x < 0.0 ? std::log1p(std::exp(x)) : x + std::log1p(std::exp(-x)), 0.0};
  }
  L.tail_minus = L.values.front();
  L.tail_plus = L.values.back();
  detail::NlieDriving d;
  d.T = T;
  return detail::rhs_at(model, d, L, k);
}

double grand_potential(const ModelParams& p, const SolverConfig& cfg) {
  return grand_potential(solve_dressed_energy(p, cfg));
}

namespace {

// fix the grid once so finite-difference stencils share discretization error
SolverConfig pin_grid(const ModelParams& p, const SolverConfig& cfg) {
  if (cfg.grid_m > 0) return cfg;
  SolverConfig out = cfg;
  const DressedEnergy de = solve_dressed_energy(p, cfg);
  out.grid_m = de.eps.grid.points;
  out.grid_lambda = de.eps.grid.half_width;
  return out;
}

}  // namespace

double density(const ModelParams& p, const SolverConfig& cfg) {
  p.validate();
  const SolverConfig fixed = pin_grid(p, cfg);
  const double dmu = 1e-4 * std::max(1.0, std::abs(p.mu));
  ModelParams hi = p, lo = p;
  hi.mu += dmu;
  lo.mu -= dmu;
  return -(grand_potential(hi, fixed) - grand_potential(lo, fixed)) / (2.0 * dmu);
}

namespace {

// phi at the 5-point temperature stencil, shared grid
std::array<double, 5> phi_stencil(const ModelParams& p, const SolverConfig& cfg, double dt) {
  const SolverConfig fixed = pin_grid(p, cfg);
  std::array<double, 5> phi{};
  for (int j = -2; j <= 2; ++j) {
    ModelParams q = p;
    q.T = p.T + j * dt;
    phi[j + 2] = grand_potential(q, fixed);
  }
  return phi;
}

}  // namespace

double entropy(const ModelParams& p, const SolverConfig& cfg) {
  p.validate();
  const double dt = 1e-3 * p.T;
  const auto f = phi_stencil(p, cfg, dt);
  return -(f[0] - 8.0 * f[1] + 8.0 * f[3] - f[4]) / (12.0 * dt);
}

double specific_heat(const ModelParams& p, const SolverConfig& cfg) {
  p.validate();
  const double dt = 1e-3 * p.T;
  const auto f = phi_stencil(p, cfg, dt);
  const double d2 = (-f[0] + 16.0 * f[1] - 30.0 * f[2] + 16.0 * f[3] - f[4]) / (12.0 * dt * dt);
  return -p.T * d2;
}

}  // namespace bose1d
