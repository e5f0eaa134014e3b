#include "bose1d/xxz.hpp"

#include <Eigen/Dense>
#include <algorithm>
#include <cmath>

#include "bose1d/corrlen.hpp"
#include "bose1d/ground_state.hpp"
#include "bose1d/thermo.hpp"
#include "bose1d/unwrap.hpp"
#include "nlie.hpp"

namespace bose1d::xxz {

double XxzParams::critical_field() const {
  const double c2 = std::cos(eta / 2.0);
  return 8.0 * J * c2 * c2;
}

void XxzParams::validate() const {
  if (!(eta > 0.0 && eta < pi)) fail(Errc::invalid_argument, "eta must lie in (0, pi)");
  if (!(J > 0.0)) fail(Errc::invalid_argument, "J must be positive");
  if (!(T > 0.0)) fail(Errc::invalid_argument, "temperature must be positive");
  // the finite-temperature equations are smooth across h_c; the scaling map
  // of the dense gas phase lands O(eps^4) above it, so a 10% excess is allowed
  if (h < 0.0 || h >= 1.1 * critical_field())
    fail(Errc::invalid_argument, "field must satisfy 0 <= h < h_c = 8J cos^2(eta/2)");
}

namespace {
cplx sinh2(cplx l) { return std::sinh(l) * std::sinh(l); }
}  // namespace

cplx xxz_e0(cplx l, const XxzParams& p) {
  const double s = std::sin(p.eta);
  const double s2 = std::sin(p.eta / 2.0);
  return p.h - 2.0 * p.J * s * s / (sinh2(l) + s2 * s2);
}

cplx xxz_momentum(cplx l, double eta) {
  const cplx a{0.0, eta / 2.0};
  return cplx{0.0, 1.0} * std::log(std::sinh(a + l) / std::sinh(a - l));
}

cplx xxz_momentum_deriv(cplx l, double eta) {
  const double s2 = std::sin(eta / 2.0);
  return std::sin(eta) / (sinh2(l) + s2 * s2);
}

cplx xxz_phase(cplx l, double eta) {
  const cplx a{0.0, eta};
  return cplx{0.0, 1.0} * std::log(std::sinh(a + l) / std::sinh(a - l));
}

cplx xxz_kernel(cplx l, double eta) {
  const double s = std::sin(eta);
  return std::sin(2.0 * eta) / (sinh2(l) + s * s);
}

cplx xxz_kernel_deriv(cplx l, double eta) {
  const double s = std::sin(eta);
  const cplx d = sinh2(l) + s * s;
  return -std::sin(2.0 * eta) * std::sinh(2.0 * l) / (d * d);
}

BetheModel xxz_model(const XxzParams& p) {
  p.validate();
  const double eta = p.eta;
  const XxzParams q = p;
  BetheModel m;
  m.e0 = [q](cplx l) { return xxz_e0(l, q); };
  m.e0_deriv = [q](cplx l) {
    const double s = std::sin(q.eta);
    const double s2 = std::sin(q.eta / 2.0);
    const cplx d = sinh2(l) + s2 * s2;
    return 2.0 * q.J * s * s * std::sinh(2.0 * l) / (d * d);
  };
  m.kernel = [eta](cplx l) { return xxz_kernel(l, eta); };
  m.kernel_deriv = [eta](cplx l) { return xxz_kernel_deriv(l, eta); };
  m.phase = [eta](cplx l) { return xxz_phase(l, eta); };
  m.phase_at_inf = pi - 2.0 * eta;
  m.momentum = [eta](cplx l) { return xxz_momentum(l, eta); };
  m.momentum_deriv = [eta](cplx l) { return xxz_momentum_deriv(l, eta); };
  m.kernel_sign = 1.0;
  m.phase_sign = -1.0;
  m.strip = std::min(eta / 2.0, pi - eta);
  m.zero_kernel = std::abs(std::cos(eta)) < 1e-14;  // free-fermion point
  return m;
}

Grid xxz_auto_grid(const XxzParams& p, const SolverConfig& cfg) {
  double lam = cfg.grid_lambda;
  if (!(lam > 0.0)) {
    // driving saturates like 8 J sin^2(eta) e^{-2 l}
    const double s = std::sin(p.eta);
    lam = 0.5 * std::log(8.0 * p.J * s * s / (p.T * 1e-14));
    lam = std::max(lam, 4.0);
  }
  const int m = cfg.grid_m > 0 ? cfg.grid_m : std::max(cfg.grid_m_min, 4096);
  return build_grid(lam, m);
}

namespace {

// (1/2pi) trap(p0' L) over the grid
cplx eigen_integral(const BetheModel& m, const SampledFn& L) {
  const Grid& g = L.grid;
  const auto w = g.weights();
  cplx acc{0.0, 0.0};
  for (int i = 0; i < g.points; ++i)
    acc += w[i] * m.momentum_deriv(cplx{g.node(i), 0.0}) * L.values[i];
  return acc / (2.0 * pi);
}

cplx eigen_tail(const BetheModel& m, const SampledFn& L, double p0_at_inf) {
  const double lam = L.grid.half_width;
  const cplx p0l = m.momentum(cplx{lam, 0.0});
  // int_{Lam}^{inf} p0' A = A (p0(inf) - p0(Lam)); mirrored (p0 odd) on the left
  return (L.tail_plus * (p0_at_inf - p0l) + L.tail_minus * (p0_at_inf - p0l)) / (2.0 * pi);
}

double p0_at_infinity(const XxzParams& p) { return pi - p.eta; }

SolverConfig lattice_defaults(const SolverConfig& cfg) {
  SolverConfig out = cfg;
  if (out.max_iter == SolverConfig{}.max_iter) out.max_iter = 6000;
  return out;
}

}  // namespace

XxzLargest solve_xxz_largest(const XxzParams& p, const SolverConfig& cfg_in) {
  p.validate();
  const SolverConfig cfg = lattice_defaults(cfg_in);
  const BetheModel model = xxz_model(p);

  auto solve_on = [&](const Grid& g) {
    detail::NlieOptions opt;
    opt.driving.T = p.T;
    opt.cfg = cfg;
    opt.root_feedback = false;
    detail::NlieSolution sol = detail::solve_nlie(model, g, opt);
    XxzLargest out;
    out.params = p;
    out.eps = std::move(sol.aux);
    out.converged = sol.converged;
    out.residual = sol.fres;
    SampledFn L(g);
    L.values = occupation_log(out.eps.values, p.T);
    L.tail_minus = L.values.front();
    L.tail_plus = L.values.back();
    out.log_lambda0 = p.h / (2.0 * p.T) +
                      (eigen_integral(model, L) + eigen_tail(model, L, p0_at_infinity(p))).real();
    return out;
  };

  if (cfg.grid_m > 0) return solve_on(xxz_auto_grid(p, cfg));
  Grid g = xxz_auto_grid(p, cfg);
  XxzLargest out = solve_on(g);
  while (2 * g.points <= cfg.grid_m_max) {
    g = build_grid(g.half_width, 2 * g.points);
    XxzLargest fine = solve_on(g);
    const bool settled = std::abs(fine.log_lambda0 - out.log_lambda0) <=
                         cfg.tol * std::max(1.0, std::abs(fine.log_lambda0));
    out = std::move(fine);
    if (settled) break;
  }
  return out;
}

namespace {

// free-fermion ladder seed: e0(l) = w, picked in the requested half-plane
// (only +-l solve the equation; the sign fixes the half-plane). Clamped into
// the analyticity strip; the Newton pulls it to the dressed position.
cplx lattice_ladder(const XxzParams& p, cplx w, bool upper_half, bool left_side) {
  const double s = std::sin(p.eta);
  const double s2 = std::sin(p.eta / 2.0);
  const cplx sh2 = 2.0 * p.J * s * s / (p.h - w) - s2 * s2;
  cplx l = std::asinh(std::sqrt(sh2));
  if (upper_half ? (l.imag() < 0.0) : (l.imag() > 0.0)) l = -l;
  if (l.imag() == 0.0 && left_side && l.real() > 0.0) l = -l;
  const double strip = std::min(p.eta / 2.0, pi - p.eta);
  if (std::abs(l.imag()) > 0.75 * strip)
    l = cplx{l.real(), 0.75 * strip * (l.imag() >= 0.0 ? 1.0 : -1.0)};
  return l;
}

struct LatticeSeeds {
  detail::Roots roots;
  std::vector<int> pb, mb;
  double sigma = 1.0;
};

LatticeSeeds lattice_seeds(const XxzParams& p, const ExcitationSpec& spec, bool fermi) {
  LatticeSeeds out;
  const int r = spec.pairs;
  out.pb = spec.plus_branches;
  out.mb = spec.minus_branches;
  if (out.pb.empty()) {
    out.pb.resize(r);
    for (int j = 0; j < r; ++j) out.pb[j] = -(j + 1);
  }
  if (out.mb.empty()) {
    out.mb.resize(r);
    for (int j = 0; j < r; ++j) out.mb[j] = -(j + 1);
  }
  out.roots.kp.resize(r);
  out.roots.km.resize(r);
  const double strip = std::min(p.eta / 2.0, pi - p.eta);
  XxzGroundState gs;
  bool use_fermi = false;
  if (fermi) {
    gs = xxz_ground_state(p);
    // the Fermi-ladder linearization only applies when the roots sit well
    // inside the analyticity strip
    use_fermi = pi * p.T * (2.0 * gs.dressed_charge - 1.0) / gs.eps0_prime_at_q <
                0.5 * strip;
  }
  for (int j = 0; j < r; ++j) {
    if (!spec.seed_plus.empty()) {
      out.roots.kp[j] = spec.seed_plus[j];
    } else if (use_fermi) {
      const int m = out.pb[j];
      const double depth =
          pi * p.T * (2.0 * gs.dressed_charge - 3.0 - 2.0 * m) / gs.eps0_prime_at_q;
      out.roots.kp[j] =
          cplx{-gs.q, std::clamp(depth, 0.5 * pi * p.T / gs.eps0_prime_at_q, 0.75 * strip)};
    } else {
      const cplx wp{0.0, pi * p.T * (2 * out.pb[j] + 1)};
      out.roots.kp[j] = lattice_ladder(p, wp, true, true);
    }
    if (!spec.seed_minus.empty()) {
      out.roots.km[j] = spec.seed_minus[j];
    } else if (use_fermi) {
      out.roots.km[j] = -std::conj(out.roots.kp[j]);
    } else {
      const cplx wm{0.0, pi * p.T * (2 * out.mb[j] + 1)};
      out.roots.km[j] = lattice_ladder(p, wm, false, false);
    }
  }
  if (spec.sector == Sector::field) {
    out.roots.has_k0 = true;
    if (spec.seed_k0) {
      out.roots.k0 = *spec.seed_k0;
    } else if (fermi) {
      const double d = pi * p.T * (2 * spec.k0_branch + 1 - 1.0 / gs.dressed_charge) /
                       gs.eps0_prime_at_q;
      out.roots.k0 = cplx{gs.q, -d};
    } else {
      const cplx w0{0.0, pi * p.T * (2 * spec.k0_branch + 1) - pi * p.T};
      out.roots.k0 = lattice_ladder(p, w0, true, false);
    }
    out.sigma = out.roots.k0.real() >= 0.0 ? 1.0 : -1.0;
  }
  return out;
}

bool lattice_fermi_regime(const XxzParams& p) {
  const double hc = p.critical_field();
  return p.h > 0.0 && p.h < 0.9 * hc && p.T < 0.1 * (hc - p.h);
}

}  // namespace

XxzExcited solve_xxz_excited(const XxzParams& p, const ExcitationSpec& spec,
                             const SolverConfig& cfg_in) {
  p.validate();
  spec.validate();
  if (spec.sector == Sector::genfunc)
    fail(Errc::invalid_argument, "lattice generating-functional sector is not implemented");
  const SolverConfig cfg = lattice_defaults(cfg_in);
  const BetheModel model = xxz_model(p);
  const Grid g = (cfg.grid_m > 0 && cfg.grid_lambda > 0.0)
                     ? build_grid(cfg.grid_lambda, cfg.grid_m)
                     : solve_xxz_largest(p, cfg).eps.grid;

  LatticeSeeds seeds = lattice_seeds(p, spec, lattice_fermi_regime(p));
  const bool field = spec.sector == Sector::field;
  const bool sm = field && seeds.roots.k0.imag() < 0.0;

  detail::NlieOptions opt;
  opt.cfg = cfg;
  opt.driving.T = p.T;
  opt.driving.field = field;
  opt.driving.sm = sm;
  opt.driving.sigma = seeds.sigma;
  opt.driving.roots = seeds.roots;
  opt.kp_branch = seeds.pb;
  opt.km_branch = seeds.mb;
  opt.k0_branch = spec.k0_branch;
  opt.extract_k0 = sm;

  // driving-based seed with the plain-contour phases; the rootless base solve
  // doubles as the largest eigenvalue on the same grid
  double log_lambda0_here = 0.0;
  {
    detail::NlieOptions base;
    base.driving.T = p.T;
    base.cfg = cfg;
    base.root_feedback = false;
    detail::NlieSolution bs = detail::solve_nlie(model, g, base);
    log_lambda0_here =
        p.h / (2.0 * p.T) +
        (eigen_integral(model, bs.logfn) + eigen_tail(model, bs.logfn, p0_at_infinity(p)))
            .real();
    detail::NlieDriving full = opt.driving;
    full.sm = false;
    if (full.field && full.sigma == 0.0) full.sigma = 1.0;
    if (sm) {
      // deepen the k0 phase in the seed so its below-axis zero is clearly
      // resolved; the iteration then keeps the -2pi i winding
      const cplx k0 = full.roots.k0;
      full.roots.k0 = cplx{k0.real(), std::min(4.0 * k0.imag(), -8.0 * g.spacing())};
    }
    opt.aux_seed.resize(g.points);
    for (int i = 0; i < g.points; ++i) {
      const cplx k{g.node(i), 0.0};
      opt.aux_seed[i] =
          bs.aux.values[i] + (detail::driving_at(model, full, k) - model.e0(k));
    }
  }

  detail::NlieSolution sol = detail::solve_nlie(model, g, opt);
  if (sm) {
    const cplx expect{0.0, -2.0 * pi};
    if (std::abs(sol.logfn.tail_plus - sol.logfn.tail_minus - expect) > 1e-3)
      fail(Errc::tail_mismatch, "lattice straight-modified solve lost the -2pi i winding");
    if (sol.driving.roots.k0.imag() >= 0.0)
      fail(Errc::contour_mode, "extracted lambda0 is not below the axis");
  }

  XxzExcited out;
  out.state.spec = spec;
  out.state.spec.plus_branches = seeds.pb;
  out.state.spec.minus_branches = seeds.mb;
  out.state.params = ModelParams{1.0, 0.0, p.T};  // lattice carrier; gas fields unused
  out.state.roots.has_k0 = sol.driving.roots.has_k0;
  out.state.roots.k0 = sol.driving.roots.k0;
  out.state.roots.k_plus = sol.driving.roots.kp;
  out.state.roots.k_minus = sol.driving.roots.km;
  out.state.aux = sol.aux;
  out.state.logfn = sol.logfn;
  out.state.residual_function = sol.fres;
  out.state.residual_roots = sol.rres;
  out.state.contour = sm ? ContourMode::straight_modified : ContourMode::plain;

  const double p0inf = p0_at_infinity(p);
  cplx lg = cplx{p.h / (2.0 * p.T), 0.0} + eigen_integral(model, sol.logfn) +
            eigen_tail(model, sol.logfn, p0inf);
  const cplx im{0.0, 1.0};
  for (const cplx& r : sol.driving.roots.kp) lg += im * xxz_momentum(r, p.eta);
  for (const cplx& r : sol.driving.roots.km) lg -= im * xxz_momentum(r, p.eta);
  if (field) {
    lg += cplx{0.0, -pi};
    if (sm)
      lg += im * cplx{p0inf, 0.0};  // contour conversion absorbs i p0(lambda0)
    else
      lg += im * xxz_momentum(sol.driving.roots.k0, p.eta);
  }
  out.log_lambda = lg;
  out.inv_corrlen = cplx{log_lambda0_here, 0.0} - lg;
  return out;
}

XxzGroundState xxz_ground_state(const XxzParams& p, int order) {
  p.validate();
  if (!(p.h > 0.0)) fail(Errc::no_fermi_sea, "h = 0 has an infinite Fermi boundary");
  if (p.h >= p.critical_field())
    fail(Errc::no_fermi_sea, "h >= h_c: the zero-temperature sea is empty");
  const double eta = p.eta;

  auto kern = [eta](double x) { return xxz_kernel(cplx{x, 0.0}, eta).real(); };
  auto e0 = [&](double x) { return xxz_e0(cplx{x, 0.0}, p).real(); };
  auto p0p = [eta](double x) { return xxz_momentum_deriv(cplx{x, 0.0}, eta).real(); };

  // lattice sign: f + (1/2pi) int K f = rhs
  auto nystrom = [&](double q, const std::function<double(double)>& rhs) {
    const FermiInterval fi = make_fermi_interval(q, order);
    const int n = fi.order;
    Eigen::MatrixXd a(n, n);
    Eigen::VectorXd b(n);
    for (int i = 0; i < n; ++i) {
      for (int j = 0; j < n; ++j)
        a(i, j) = (i == j ? 1.0 : 0.0) +
                  kern(fi.nodes[i] - fi.nodes[j]) * fi.weights[j] / (2.0 * pi);
      b(i) = rhs(fi.nodes[i]);
    }
    const Eigen::VectorXd x = Eigen::PartialPivLU<Eigen::MatrixXd>(a).solve(b);
    if (!x.allFinite()) fail(Errc::singular_system, "lattice Nystrom system is singular");
    std::vector<double> vals(x.data(), x.data() + n);
    auto at = [fi, vals, kern, rhs](double k) {
      double acc = rhs(k);
      for (int j = 0; j < fi.order; ++j)
        acc -= kern(k - fi.nodes[j]) * fi.weights[j] * vals[j] / (2.0 * pi);
      return acc;
    };
    return std::pair(vals, at);
  };

  auto eps_at_q = [&](double q) { return nystrom(q, e0).second(q); };
  double lo = 0.05, hi = 0.05;
  double gl = eps_at_q(lo);
  while (gl > 0.0 && lo > 1e-8) {
    lo *= 0.5;
    gl = eps_at_q(lo);
  }
  if (gl > 0.0) fail(Errc::no_fermi_sea, "cannot bracket the lattice Fermi boundary");
  double gh = gl;
  for (int i = 0; i < 200 && gh <= 0.0; ++i) {
    hi *= 1.4;
    gh = eps_at_q(hi);
  }
  if (gh <= 0.0) fail(Errc::no_fermi_sea, "lattice Fermi boundary ran away (h too small?)");
  double q = 0.5 * (lo + hi);
  for (int i = 0; i < 200; ++i) {
    q = 0.5 * (lo + hi);
    const double gq = eps_at_q(q);
    if (std::abs(gq) < 1e-12 || hi - lo < 1e-14 * hi) break;
    (gq < 0.0 ? lo : hi) = q;
  }

  auto [rho_vals, rho_at] = nystrom(q, [&](double x) { return p0p(x) / (2.0 * pi); });
  auto [z_vals, z_at] = nystrom(q, [](double) { return 1.0; });
  auto [e_vals, eps_at] = nystrom(q, e0);
  // derivative equation: eps0' + (1/2pi) int K eps0' = e0' (boundary terms
  // vanish at eps0(+-q) = 0)
  auto e0d = [&](double x) {
    const double s = std::sin(eta), s2 = std::sin(eta / 2.0);
    const double d = std::sinh(x) * std::sinh(x) + s2 * s2;
    return 2.0 * p.J * s * s * std::sinh(2.0 * x) / (d * d);
  };
  auto [ep_vals, ep_at] = nystrom(q, e0d);

  const FermiInterval fi = make_fermi_interval(q, order);
  XxzGroundState out;
  out.q = q;
  out.rho_at_q = rho_at(q);
  out.eps0_prime_at_q = ep_at(q);
  out.fermi_velocity = out.eps0_prime_at_q / (2.0 * pi * out.rho_at_q);
  out.dressed_charge = z_at(q);
  double ge = 0.0;
  for (int j = 0; j < fi.order; ++j) ge += fi.weights[j] * e0(fi.nodes[j]) * rho_vals[j];
  out.ground_energy = ge - p.h / 2.0;
  return out;
}

ContinuumMap continuum_map(const ModelParams& gas, double epsilon) {
  gas.validate();
  if (gas.tonks()) fail(Errc::invalid_argument, "continuum map needs a finite coupling");
  if (!(epsilon > 0.0 && epsilon <= 0.5))
    fail(Errc::invalid_argument, "scaling parameter must lie in (0, 0.5]");
  ContinuumMap m;
  m.epsilon = epsilon;
  m.delta = epsilon * epsilon / gas.coupling;
  m.lattice.eta = pi - epsilon;
  m.lattice.J = 0.5;
  // field from the exact magnon-energy expansion at eta = pi - epsilon:
  //   e0 = delta^2 k^2 + h - epsilon^2 + epsilon^4/12 + O(epsilon^6),
  // so e0 -> delta^2 (k^2 - mu) requires
  m.lattice.h =
      epsilon * epsilon - std::pow(epsilon, 4) / 12.0 - gas.mu * m.delta * m.delta;
  m.lattice.T = gas.T * m.delta * m.delta;
  m.lattice.validate();
  return m;
}

ContinuumReport continuum_limit_check(const ModelParams& gas,
                                      const std::vector<double>& eps_list,
                                      const SolverConfig& cfg) {
  gas.validate();
  if (eps_list.empty()) fail(Errc::invalid_argument, "empty epsilon list");
  for (size_t i = 1; i < eps_list.size(); ++i)
    if (!(eps_list[i] < eps_list[i - 1]))
      fail(Errc::invalid_argument, "epsilon list must be strictly decreasing");

  ContinuumReport rep;
  const DressedEnergy de = solve_dressed_energy(gas, cfg);
  rep.gas_log_lambda0 = log_lambda0(de);
  InverseCorrLen gas_field = leading_corrlen(gas, Sector::field, cfg);
  rep.gas_field_corrlen = gas_field.value;
  const cplx gas_k0 = gas_field.roots.k0;

  for (double eps : eps_list) {
    const ContinuumMap map = continuum_map(gas, eps);
    const XxzLargest big = solve_xxz_largest(map.lattice, cfg);
    ContinuumPoint pt;
    pt.epsilon = eps;
    const double resc = (big.log_lambda0 - map.lattice.h / (2.0 * map.lattice.T)) / map.delta;
    pt.dev_log_lambda0 = std::abs(resc - rep.gas_log_lambda0);

    ExcitationSpec fs;
    fs.sector = Sector::field;
    fs.pairs = 0;
    fs.seed_k0 = gas_k0 * map.delta / eps;  // lambda = delta k / epsilon
    SolverConfig fc = cfg;
    fc.grid_lambda = big.eps.grid.half_width;
    fc.grid_m = big.eps.grid.points;
    const XxzExcited exc = solve_xxz_excited(map.lattice, fs, fc);
    // the -i pi factor is dropped in the continuum limit
    const cplx resc_field = (exc.inv_corrlen - cplx{0.0, pi}) / map.delta;
    pt.dev_field = std::abs(resc_field - rep.gas_field_corrlen);
    rep.points.push_back(pt);
  }

  auto fit_order = [&](auto proj) {
    double sx = 0, sy = 0, sxx = 0, sxy = 0;
    const int n = static_cast<int>(rep.points.size());
    for (const ContinuumPoint& pt : rep.points) {
      const double x = std::log(pt.epsilon), y = std::log(std::max(proj(pt), 1e-300));
      sx += x; sy += y; sxx += x * x; sxy += x * y;
    }
    return (n * sxy - sx * sy) / (n * sxx - sx * sx);
  };
  rep.order_log_lambda0 = fit_order([](const ContinuumPoint& p) { return p.dev_log_lambda0; });
  rep.order_field = fit_order([](const ContinuumPoint& p) { return p.dev_field; });
  rep.monotonic_log_lambda0 = true;
  rep.monotonic_field = true;
  for (size_t i = 1; i < rep.points.size(); ++i) {
    rep.monotonic_log_lambda0 &= rep.points[i].dev_log_lambda0 < rep.points[i - 1].dev_log_lambda0;
    rep.monotonic_field &= rep.points[i].dev_field < rep.points[i - 1].dev_field;
  }
  return rep;
}

}  // namespace bose1d::xxz
