#include "bose1d/excitations.hpp"

#include <algorithm>
#include <cmath>

#include "bose1d/ground_state.hpp"
#include "bose1d/unwrap.hpp"
#include "nlie.hpp"

namespace bose1d {

const char* sector_name(Sector s) {
  switch (s) {
    case Sector::density: return "density";
    case Sector::field: return "field";
    case Sector::genfunc: return "genfunc";
  }
  return "?";
}

Sector sector_from_name(const std::string& name) {
  if (name == "density") return Sector::density;
  if (name == "field") return Sector::field;
  if (name == "genfunc") return Sector::genfunc;
  fail(Errc::invalid_argument, "unknown sector '" + name + "'");
}

const char* contour_mode_name(ContourMode m) {
  switch (m) {
    case ContourMode::automatic: return "automatic";
    case ContourMode::plain: return "plain";
    case ContourMode::straight_modified: return "straight-modified";
    case ContourMode::indented: return "indented";
  }
  return "?";
}

void ExcitationSpec::validate() const {
  if (sector == Sector::density && pairs < 1)
    fail(Errc::invalid_argument, "density sector needs r >= 1");
  if (pairs < 0) fail(Errc::invalid_argument, "pair count r must be >= 0");
  if (sector != Sector::genfunc && twist != 0.0)
    fail(Errc::invalid_argument, "twist is a genfunc-only parameter");
  auto sized = [&](const std::vector<int>& v) {
    return v.empty() || static_cast<int>(v.size()) == pairs;
  };
  if (!sized(plus_branches) || !sized(minus_branches))
    fail(Errc::invalid_argument, "branch lists must be empty or of size r");
  auto seeded = [&](const std::vector<cplx>& v) {
    return v.empty() || static_cast<int>(v.size()) == pairs;
  };
  if (!seeded(seed_plus) || !seeded(seed_minus))
    fail(Errc::invalid_argument, "seed lists must be empty or of size r");
}

namespace {

using detail::NlieDriving;
using detail::NlieOptions;
using detail::NlieSolution;
using detail::Roots;

struct Prepared {
  ExcitationSpec spec;  // branches filled
  Roots seeds;
  double sigma = 1.0;
  double shift = 0.0;
};

// ladder position of aux(k) = i pi T (2m+1) in the impenetrable limit,
// aux = k^2 - mu_eff (+ sigma i pi T in the field sector)
cplx tonks_ladder(double mu_eff, double T, int m, double sigma_field, bool upper_half,
                  bool left_side) {
  const cplx z{mu_eff, pi * T * (2 * m + 1 - sigma_field)};
  cplx r = std::sqrt(z);
  if (upper_half ? (r.imag() < 0.0) : (r.imag() > 0.0)) r = -r;
  if (r.imag() == 0.0 && left_side) r = -r;
  return r;
}

bool fermi_seed_regime(const ModelParams& p) {
  return p.mu > 0.0 && !p.tonks() && p.T < 0.3 * p.mu;
}

Prepared prepare(const ModelParams& p, const ExcitationSpec& spec) {
  spec.validate();
  Prepared out;
  out.spec = spec;
  out.shift = spec.sector == Sector::genfunc ? -spec.twist * p.T : 0.0;
  const double mu_eff = p.mu - out.shift;
  const int r = spec.pairs;

  if (out.spec.plus_branches.empty()) out.spec.plus_branches.assign(r, 0);
  if (out.spec.minus_branches.empty()) out.spec.minus_branches.assign(r, 0);
  if (spec.plus_branches.empty() && spec.minus_branches.empty()) {
    // leading two-Fermi-point pair family: branches (-j, -j)
    for (int j = 0; j < r; ++j) {
      out.spec.plus_branches[j] = -(j + 1);
      out.spec.minus_branches[j] = -(j + 1);
    }
  }

  const bool fermi = fermi_seed_regime(p) && spec.sector != Sector::field;
  GroundStateSummary gs;
  if (fermi) gs = ground_state_summary(p);

  out.seeds.kp.resize(r);
  out.seeds.km.resize(r);
  for (int j = 0; j < r; ++j) {
    if (!spec.seed_plus.empty()) {
      out.seeds.kp[j] = spec.seed_plus[j];
    } else if (fermi) {
      const int m = out.spec.plus_branches[j];
      const double depth = pi * p.T * (2.0 * gs.dressed_charge - 3.0 - 2.0 * m) /
                           gs.eps0_prime_at_q;
      out.seeds.kp[j] = cplx{-gs.q, std::max(depth, 0.5 * pi * p.T / gs.eps0_prime_at_q)};
    } else {
      out.seeds.kp[j] = tonks_ladder(mu_eff, p.T, out.spec.plus_branches[j], 0.0, true, true);
    }
    if (!spec.seed_minus.empty()) {
      out.seeds.km[j] = spec.seed_minus[j];
    } else if (fermi) {
      out.seeds.km[j] = -std::conj(out.seeds.kp[j]);
    } else {
      out.seeds.km[j] = tonks_ladder(mu_eff, p.T, out.spec.minus_branches[j], 0.0, false, false);
    }
  }

  if (spec.sector == Sector::field) {
    out.seeds.has_k0 = true;
    if (spec.seed_k0) {
      out.seeds.k0 = *spec.seed_k0;
    } else if (p.mu > 0.0) {
      out.seeds.k0 = tonks_ladder(p.mu, p.T, spec.k0_branch, 1.0, true, false);  // sqrt(mu)-like
    } else {
      out.seeds.k0 = tonks_ladder(p.mu, p.T, spec.k0_branch, 1.0, true, false);  // i sqrt(|mu|)
    }
    out.sigma = out.seeds.k0.real() >= 0.0 ? 1.0 : -1.0;
  }
  return out;
}

// below-axis k0 seed for the straight-modified candidate at low temperature
cplx sm_seed_k0(const ModelParams& p, int branch, const GroundStateSummary& gs) {
  const double d = pi * p.T * (2 * branch + 1 - 1.0 / gs.dressed_charge) / gs.eps0_prime_at_q;
  return cplx{gs.q, -d};
}

SolvedState pack(const ModelParams& p, const Prepared& prep, NlieSolution&& sol,
                 ContourMode mode) {
  SolvedState st;
  st.spec = prep.spec;
  st.params = p;
  st.roots.has_k0 = sol.driving.roots.has_k0;
  st.roots.k0 = sol.driving.roots.k0;
  st.roots.k_plus = sol.driving.roots.kp;
  st.roots.k_minus = sol.driving.roots.km;
  st.aux = std::move(sol.aux);
  st.logfn = std::move(sol.logfn);
  st.residual_function = sol.fres;
  st.residual_roots = sol.rres;
  st.contour = mode;
  return st;
}

NlieDriving driving_of(const SolvedState& st) {
  NlieDriving d;
  d.T = st.params.T;
  d.shift = st.spec.sector == Sector::genfunc ? -st.spec.twist * st.params.T : 0.0;
  d.field = st.spec.sector == Sector::field;
  d.sm = st.contour == ContourMode::straight_modified || st.contour == ContourMode::indented;
  d.sigma = d.field ? (st.roots.k0.real() >= 0.0 ? 1.0 : -1.0) : 0.0;
  d.roots.has_k0 = st.roots.has_k0;
  d.roots.k0 = st.roots.k0;
  d.roots.kp = st.roots.k_plus;
  d.roots.km = st.roots.k_minus;
  return d;
}

std::vector<cplx> base_plus_phases(const BetheModel& model, const Grid& g,
                                   const NlieDriving& d, const SolverConfig& cfg,
                                   const GroundStateSummary* gs, double coupling) {
  // dressed-energy-like base with the same scalar shift, then the root phases
  NlieOptions base;
  base.driving.T = d.T;
  base.driving.shift = d.shift;
  base.cfg = cfg;
  base.cfg.max_iter = std::max(cfg.max_iter, 500);
  base.root_feedback = false;
  NlieSolution sol = detail::solve_nlie(model, g, base);
  std::vector<cplx> aux(g.points);
  if (d.sm && gs) {
    // low-temperature form eps + T [i pi Z(k) + 2 pi i F(k|q)]: places the
    // below-axis zeros of 1+e^{-aux/T} where the modified-contour state has
    // them, which pins the -2pi i winding from the first sweep
    const FermiInterval fi = make_fermi_interval(gs->q, 64);
    const LinearIeSolution charge =
        solve_linear_ie([](double) { return 1.0; }, fi, coupling);
    const LinearIeSolution fq = dressed_phase(fi, coupling, gs->q);
    for (int i = 0; i < g.points; ++i) {
      const double k = g.node(i);
      aux[i] = sol.aux.values[i] +
               cplx{0.0, d.T * pi * charge.at(k) + d.T * 2.0 * pi * fq.at(k)};
    }
    return aux;
  }
  NlieDriving full = d;
  full.sm = false;
  if (full.field && full.sigma == 0.0) full.sigma = 1.0;
  for (int i = 0; i < g.points; ++i) {
    const cplx k{g.node(i), 0.0};
    aux[i] = sol.aux.values[i] + (detail::driving_at(model, full, k) - model.e0(k) - d.shift);
  }
  return aux;
}

NlieSolution run_solve(const BetheModel& model, const Grid& g, const ModelParams& p,
                       const Prepared& prep, bool sm, const SolverConfig& cfg,
                       const GroundStateSummary* gs) {
  NlieOptions opt;
  opt.cfg = cfg;
  opt.driving.T = p.T;
  opt.driving.shift = prep.shift;
  opt.driving.field = prep.spec.sector == Sector::field;
  opt.driving.sm = sm;
  opt.driving.sigma = prep.sigma;
  opt.driving.roots = prep.seeds;
  opt.kp_branch = prep.spec.plus_branches;
  opt.km_branch = prep.spec.minus_branches;
  opt.k0_branch = prep.spec.k0_branch;
  if (sm) {
    // the function does not couple to k0 on the straight-modified contour;
    // the root is extracted after convergence
    opt.extract_k0 = true;
    if (gs && !prep.spec.seed_k0) opt.driving.roots.k0 = sm_seed_k0(p, prep.spec.k0_branch, *gs);
    opt.driving.sigma = opt.driving.roots.k0.real() >= 0.0 ? 1.0 : -1.0;
  }
  opt.aux_seed = base_plus_phases(model, g, opt.driving, cfg, gs, p.coupling);
  return detail::solve_nlie(model, g, opt);
}

void check_sm_tail(const NlieSolution& sol, double tol) {
  const cplx expect{0.0, -2.0 * pi};
  if (std::abs(sol.logfn.tail_plus - expect) > tol || std::abs(sol.logfn.tail_minus) > tol)
    fail(Errc::tail_mismatch,
         "straight-modified solve did not develop the (0, -2pi i) winding");
}

// Locate the below-axis partner zero of 1 + e^{-aux/T} near -conj(k0).
std::optional<cplx> find_mirror(const BetheModel& model, const NlieDriving& d,
                                const SampledFn& logfn, cplx k0, int branch,
                                const SolverConfig& cfg) {
  try {
    double res = 0.0;
    const cplx m0 = detail::newton_root(model, d, logfn, -std::conj(k0), branch, cfg, &res);
    if (res <= 10.0 * cfg.root_tol && m0.imag() < 0.0 && std::abs(m0 - k0) > 1e-8)
      return m0;
  } catch (const Error&) {
  }
  return std::nullopt;
}

}  // namespace

SolvedState solve_excited_state(const ModelParams& p, const ExcitationSpec& spec,
                                const SolverConfig& cfg) {
  p.validate();
  Prepared prep = prepare(p, spec);
  const BetheModel model = gas_model(p);
  Grid g;
  if (cfg.grid_m > 0 && cfg.grid_lambda > 0.0) {
    g = build_grid(cfg.grid_lambda, cfg.grid_m);
  } else {
    // settle the resolution on the rootless solve first
    const DressedEnergy de = solve_dressed_energy(p, cfg);
    g = de.eps.grid;
  }

  if (spec.sector != Sector::field) {
    NlieSolution sol = run_solve(model, g, p, prep, false, cfg, nullptr);
    return pack(p, prep, std::move(sol), ContourMode::plain);
  }

  // field sector: contour mode
  const ContourMode want = spec.contour;
  const bool have_sea = p.mu > 0.0 && !p.tonks();
  GroundStateSummary gs;
  if (have_sea) gs = ground_state_summary(p);

  auto finish = [&](NlieSolution&& sol, ContourMode mode) {
    SolvedState st = pack(p, prep, std::move(sol), mode);
    if (mode != ContourMode::plain) {
      NlieDriving d = driving_of(st);
      st.mirror_root =
          find_mirror(model, d, st.logfn, st.roots.k0, st.spec.k0_branch, cfg);
    }
    return st;
  };

  if (p.tonks()) {
    NlieSolution sol = run_solve(model, g, p, prep, false, cfg, nullptr);
    // mu > 0 puts k0 on the axis; assemble on the indented contour
    const ContourMode mode = p.mu > 0.0 ? ContourMode::indented : ContourMode::plain;
    SolvedState st = pack(p, prep, std::move(sol), mode);
    if (mode == ContourMode::indented) st.mirror_root = -std::conj(st.roots.k0);
    return st;
  }

  if (want == ContourMode::plain) {
    NlieSolution sol = run_solve(model, g, p, prep, false, cfg, nullptr);
    return finish(std::move(sol), ContourMode::plain);
  }
  if (want == ContourMode::straight_modified || want == ContourMode::indented) {
    if (!have_sea)
      fail(Errc::contour_mode, "straight-modified/indented contours need mu > 0 at finite c");
    NlieSolution sol = run_solve(model, g, p, prep, true, cfg, &gs);
    check_sm_tail(sol, std::max(cfg.tail_tol, 1e-4));
    if (sol.driving.roots.k0.imag() >= 0.0)
      fail(Errc::contour_mode, "extracted k0 is not below the axis; use the plain contour");
    return finish(std::move(sol), want);
  }

  // automatic: at mu > 0 the root sits below the axis (the impenetrable
  // limit has it on the axis and the interaction pushes it down), so the
  // straight-modified solve is tried first; plain is the fallback, and the
  // comparison only runs when the extracted root is too close to the axis
  // to call (within a few grid spacings)
  std::optional<NlieSolution> sm_sol;
  std::string sm_err;
  if (have_sea) {
    try {
      NlieSolution s = run_solve(model, g, p, prep, true, cfg, &gs);
      check_sm_tail(s, std::max(cfg.tail_tol, 1e-4));
      if (s.driving.roots.k0.imag() < -1e-12 && s.rres <= 10.0 * cfg.root_tol)
        sm_sol = std::move(s);
      else
        sm_err = "k0 not below the axis";
    } catch (const Error& e) {
      sm_err = e.what();
    }
  }
  if (sm_sol && -sm_sol->driving.roots.k0.imag() > 4.0 * g.spacing())
    return finish(std::move(*sm_sol), ContourMode::straight_modified);
  std::optional<NlieSolution> plain_sol;
  std::string plain_err;
  try {
    NlieSolution s = run_solve(model, g, p, prep, false, cfg, nullptr);
    if (s.driving.roots.k0.imag() >= -1e-12)
      plain_sol = std::move(s);
    else
      plain_err = "k0 dived below the axis";
  } catch (const Error& e) {
    plain_err = e.what();
  }

  if (sm_sol && plain_sol) {
    // leading state = smaller Re(1/xi); the dressed-energy part cancels in
    // the difference, so compare directly
    const auto& wts = g.weights();
    cplx diff{0.0, 0.0};
    for (int i = 0; i < g.points; ++i)
      diff += wts[i] * (sm_sol->logfn.values[i] - plain_sol->logfn.values[i]);
    const cplx delta = -diff / (2.0 * pi) - cplx{0.0, g.half_width} +
                       cplx{0.0, 1.0} * plain_sol->driving.roots.k0;
    if (delta.real() < 0.0)
      return finish(std::move(*sm_sol), ContourMode::straight_modified);
    return finish(std::move(*plain_sol), ContourMode::plain);
  }
  if (sm_sol) return finish(std::move(*sm_sol), ContourMode::straight_modified);
  if (plain_sol) return finish(std::move(*plain_sol), ContourMode::plain);
  fail(Errc::no_convergence,
       "field solve failed on both contours: plain: " + plain_err + "; modified: " + sm_err);
}

cplx evaluate_aux_offgrid(const SolvedState& st, cplx k) {
  const BetheModel model = gas_model(st.params);
  model.require_in_strip(k);
  return detail::rhs_at(model, driving_of(st), st.logfn, k);
}

cplx evaluate_aux_deriv_offgrid(const SolvedState& st, cplx k) {
  const BetheModel model = gas_model(st.params);
  model.require_in_strip(k);
  return detail::rhs_deriv_at(model, driving_of(st), st.logfn, k);
}

SolvedState refine_roots(const SolvedState& st) {
  const BetheModel model = gas_model(st.params);
  NlieDriving d = driving_of(st);
  SolvedState out = st;
  if (st.roots.has_k0 && !d.sm) {
    out.roots.k0 = detail::newton_root(model, d, st.logfn, st.roots.k0, st.spec.k0_branch,
                                       SolverConfig{});
    d.roots.k0 = out.roots.k0;
  } else if (st.roots.has_k0) {
    out.roots.k0 = detail::newton_root(model, d, st.logfn, st.roots.k0, st.spec.k0_branch,
                                       SolverConfig{});
    d.roots.k0 = out.roots.k0;
  }
  for (size_t j = 0; j < st.roots.k_plus.size(); ++j) {
    out.roots.k_plus[j] = detail::newton_root(model, d, st.logfn, st.roots.k_plus[j],
                                              st.spec.plus_branches[j], SolverConfig{});
    d.roots.kp[j] = out.roots.k_plus[j];
  }
  for (size_t j = 0; j < st.roots.k_minus.size(); ++j) {
    out.roots.k_minus[j] = detail::newton_root(model, d, st.logfn, st.roots.k_minus[j],
                                               st.spec.minus_branches[j], SolverConfig{});
    d.roots.km[j] = out.roots.k_minus[j];
  }
  // residuals against the final driving (earlier roots see the later moves)
  double worst = 0.0;
  auto measure = [&](cplx r, int branch) {
    const cplx t{0.0, pi * st.params.T * (2 * branch + 1)};
    worst = std::max(worst, std::abs(detail::rhs_at(model, d, st.logfn, r) - t));
  };
  if (out.roots.has_k0) measure(out.roots.k0, st.spec.k0_branch);
  for (size_t j = 0; j < out.roots.k_plus.size(); ++j)
    measure(out.roots.k_plus[j], st.spec.plus_branches[j]);
  for (size_t j = 0; j < out.roots.k_minus.size(); ++j)
    measure(out.roots.k_minus[j], st.spec.minus_branches[j]);
  out.residual_roots = worst;
  return out;
}

}  // namespace bose1d
