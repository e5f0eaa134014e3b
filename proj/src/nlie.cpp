#include "nlie.hpp"

#include <algorithm>
#include <cmath>
#include <limits>

#include "bose1d/unwrap.hpp"

namespace bose1d::detail {

double root_target_im(double T, int branch) { return pi * T * (2 * branch + 1); }

cplx driving_at(const BetheModel& m, const NlieDriving& d, cplx k) {
  cplx v = m.e0(k) + d.shift;
  const cplx iT{0.0, d.T};
  if (d.field) {
    // straight-modified: the k0 phase and its contour loop collapse into a
    // constant, i T (sigma pi + s_K theta_inf)
    const double coef = d.sm ? (d.sigma * pi + m.kernel_sign * m.phase_at_inf) : d.sigma * pi;
    v += cplx{0.0, d.T * coef};
    if (!d.sm && d.roots.has_k0) v += m.phase_sign * iT * m.phase(k - d.roots.k0);
  }
  for (const cplx& r : d.roots.kp) v += m.phase_sign * iT * m.phase(k - r);
  for (const cplx& r : d.roots.km) v -= m.phase_sign * iT * m.phase(k - r);
  return v;
}

cplx driving_deriv_at(const BetheModel& m, const NlieDriving& d, cplx k) {
  cplx v = m.e0_deriv(k);
  const cplx iT{0.0, d.T};
  if (d.field && !d.sm && d.roots.has_k0) v += m.phase_sign * iT * m.kernel(k - d.roots.k0);
  for (const cplx& r : d.roots.kp) v += m.phase_sign * iT * m.kernel(k - r);
  for (const cplx& r : d.roots.km) v -= m.phase_sign * iT * m.kernel(k - r);
  return v;
}

namespace {

cplx conv_quad_at(const BetheModel& m, const SampledFn& L, cplx k, bool deriv) {
  if (m.zero_kernel) return {0.0, 0.0};
  m.require_in_strip(k);
  const Grid& g = L.grid;
  const int n = g.points;
  const double h = g.spacing();
  cplx acc{0.0, 0.0};
  for (int j = 0; j < n; ++j) {
    const double w = (j == 0 || j == n - 1) ? 0.5 * h : h;
    const cplx dk = k - g.node(j);
    acc += (deriv ? m.kernel_deriv(dk) : m.kernel(dk)) * w * L.values[j];
  }
  const double lam = g.half_width;
  if (deriv) {
    acc += L.tail_minus * (-m.kernel(k + lam));
    acc += L.tail_plus * m.kernel(k - lam);
  } else {
    acc += L.tail_minus * (m.phase_at_inf - m.phase(k + lam));
    acc += L.tail_plus * (m.phase_at_inf + m.phase(k - lam));
    acc += (h * h / 12.0) *
           (m.kernel_deriv(k - lam) * L.tail_plus - m.kernel_deriv(k + lam) * L.tail_minus);
  }
  return acc / (2.0 * pi);
}

}  // namespace

cplx rhs_at(const BetheModel& m, const NlieDriving& d, const SampledFn& logfn, cplx k) {
  return driving_at(m, d, k) + m.kernel_sign * d.T * conv_quad_at(m, logfn, k, false);
}

cplx rhs_deriv_at(const BetheModel& m, const NlieDriving& d, const SampledFn& logfn, cplx k) {
  return driving_deriv_at(m, d, k) + m.kernel_sign * d.T * conv_quad_at(m, logfn, k, true);
}

cplx newton_root(const BetheModel& m, const NlieDriving& d, const SampledFn& logfn,
                 cplx seed, int branch, const SolverConfig& cfg, double* residual) {
  const cplx target{0.0, root_target_im(d.T, branch)};
  const double trust =
      cfg.trust_radius > 0.0 ? cfg.trust_radius : (m.zero_kernel ? 1.0 : 0.25 * m.strip);
  cplx k = seed;
  int capped = 0;
  double res = 0.0;
  for (int it = 0; it < 60; ++it) {
    const cplx g = rhs_at(m, d, logfn, k) - target;
    res = std::abs(g);
    if (res <= cfg.root_tol) break;
    const cplx gp = rhs_deriv_at(m, d, logfn, k);
    if (std::abs(gp) == 0.0) fail(Errc::newton_divergence, "vanishing derivative in root Newton");
    cplx step = g / gp;
    if (std::abs(step) > trust) {
      step *= trust / std::abs(step);
      if (++capped >= 3) fail(Errc::newton_divergence, "root Newton exceeded trust radius 3x");
    } else {
      capped = 0;
    }
    k -= step;
    if (!m.zero_kernel && std::abs(k.imag()) >= m.strip)
      fail(Errc::root_escape, "root left the strip |Im k| < c during Newton");
  }
  if (residual) *residual = res;
  return k;
}

namespace {

// occupation log with self-declared tails; in the impenetrable limit the log
// never feeds back through a kernel, and zeros of 1+e^{-aux/T} may sit on the
// axis, so the principal branch is kept without unwrapping. During the
// iteration the winding guard is off (transient states may put a zero almost
// on the axis); the converged state is re-unwrapped with the guard on.
SampledFn make_logfn(const Grid& g, const std::vector<cplx>& aux, double T,
                     bool principal_only, double guard) {
  SampledFn L(g);
  if (principal_only) {
    L.values.resize(aux.size());
    for (size_t i = 0; i < aux.size(); ++i) L.values[i] = log1p_exp(-aux[i] / T);
  } else {
    L.values = occupation_log(aux, T, guard);
  }
  L.tail_minus = L.values.front();
  L.tail_plus = L.values.back();
  return L;
}

double root_residual(const BetheModel& m, const NlieDriving& d, const SampledFn& logfn,
                     const NlieOptions& opt) {
  double r = 0.0;
  const Roots& rt = d.roots;
  if (d.field && rt.has_k0 && !d.sm) {
    const cplx t{0.0, root_target_im(d.T, opt.k0_branch)};
    r = std::max(r, std::abs(rhs_at(m, d, logfn, rt.k0) - t));
  }
  for (size_t j = 0; j < rt.kp.size(); ++j) {
    const cplx t{0.0, root_target_im(d.T, opt.kp_branch[j])};
    r = std::max(r, std::abs(rhs_at(m, d, logfn, rt.kp[j]) - t));
  }
  for (size_t j = 0; j < rt.km.size(); ++j) {
    const cplx t{0.0, root_target_im(d.T, opt.km_branch[j])};
    r = std::max(r, std::abs(rhs_at(m, d, logfn, rt.km[j]) - t));
  }
  return r;
}

void check_root_sanity(const BetheModel& m, const Roots& rt) {
  std::vector<cplx> all;
  if (rt.has_k0) all.push_back(rt.k0);
  for (const cplx& r : rt.kp) {
    if (r.imag() <= 0.0) fail(Errc::root_escape, "a k+ root ended in the lower half-plane");
    all.push_back(r);
  }
  for (const cplx& r : rt.km) {
    if (r.imag() >= 0.0) fail(Errc::root_escape, "a k- root ended in the upper half-plane");
    all.push_back(r);
  }
  for (const cplx& r : all)
    if (!m.zero_kernel && std::abs(r.imag()) >= m.strip)
      fail(Errc::root_escape, "a root left the strip |Im k| < c");
  for (size_t a = 0; a < all.size(); ++a)
    for (size_t b = a + 1; b < all.size(); ++b)
      if (std::abs(all[a] - all[b]) < 1e-8)
        fail(Errc::branch_collision, "two roots converged to the same point");
}

}  // namespace

NlieSolution solve_nlie(const BetheModel& m, const Grid& g, const NlieOptions& opt) {
  const SolverConfig& cfg = opt.cfg;
  cfg.validate();
  NlieDriving d = opt.driving;
  const double T = d.T;
  const int n = g.points;
  const auto nodes = g.nodes();

  std::vector<cplx> aux(n);
  if (!opt.aux_seed.empty()) {
    if (static_cast<int>(opt.aux_seed.size()) != n)
      fail(Errc::grid_mismatch, "aux seed size does not match the grid");
    aux = opt.aux_seed;
  } else {
    // seed topology from the plain-contour driving (k0 phase included even in
    // straight-modified mode; it places the winding where the converged
    // solution has it)
    NlieDriving seed = d;
    seed.sm = false;
    if (d.sm) seed.sigma = d.sigma == 0.0 ? 1.0 : d.sigma;
    for (int i = 0; i < n; ++i) aux[i] = driving_at(m, seed, cplx{nodes[i], 0.0});
  }

  Convolver conv(g, m);
  const bool feedback = opt.root_feedback &&
                        (!d.roots.kp.empty() || !d.roots.km.empty() ||
                         (d.field && !d.sm && d.roots.has_k0));

  std::vector<cplx> drive(n);
  auto resample_driving = [&] {
    for (int i = 0; i < n; ++i) drive[i] = driving_at(m, d, cplx{nodes[i], 0.0});
  };
  resample_driving();

  const double loose = std::numeric_limits<double>::infinity();
  SampledFn L = make_logfn(g, aux, T, m.zero_kernel, loose);
  double fres = std::numeric_limits<double>::infinity();
  double rres = feedback ? std::numeric_limits<double>::infinity() : 0.0;
  int it = 0;
  const double alpha = cfg.damping;

  auto newton_pass = [&] {
    if (d.field && !d.sm && d.roots.has_k0)
      d.roots.k0 = newton_root(m, d, L, d.roots.k0, opt.k0_branch, cfg);
    for (size_t j = 0; j < d.roots.kp.size(); ++j)
      d.roots.kp[j] = newton_root(m, d, L, d.roots.kp[j], opt.kp_branch[j], cfg);
    for (size_t j = 0; j < d.roots.km.size(); ++j)
      d.roots.km[j] = newton_root(m, d, L, d.roots.km[j], opt.km_branch[j], cfg);
    resample_driving();
  };

  for (it = 1; it <= cfg.max_iter; ++it) {
    const std::vector<cplx> cv = conv.apply(L);
    fres = 0.0;
    for (int i = 0; i < n; ++i) {
      const cplx rhs = drive[i] + m.kernel_sign * T * cv[i];
      fres = std::max(fres, std::abs(rhs - aux[i]));
      aux[i] = (1.0 - alpha) * aux[i] + alpha * rhs;
    }
    L = make_logfn(g, aux, T, m.zero_kernel, loose);
    if (feedback && (it % cfg.root_every == 0 || fres < 1e-6)) {
      newton_pass();
      rres = root_residual(m, d, L, opt);
    }
    if (fres <= cfg.tol && (!feedback || rres <= cfg.root_tol)) break;
  }

  NlieSolution out;
  out.iterations = std::min(it, cfg.max_iter);
  out.converged = fres <= cfg.tol;
  if (feedback) {
    rres = root_residual(m, d, L, opt);
    out.converged = out.converged && rres <= cfg.root_tol;
  }
  if (out.converged && !m.zero_kernel) L = make_logfn(g, aux, T, false, 0.995 * pi);
  if (!out.converged)
    fail(Errc::no_convergence, "NLIE iteration stalled: function residual " +
                                   std::to_string(fres) + ", root residual " +
                                   std::to_string(rres) + " after " +
                                   std::to_string(out.iterations) + " sweeps");

  if (opt.extract_k0) {
    d.roots.has_k0 = true;
    d.roots.k0 = newton_root(m, d, L, opt.driving.roots.k0, opt.k0_branch, cfg, &rres);
  }

  check_root_sanity(m, d.roots);
  out.driving = d;
  out.aux = SampledFn(g);
  out.aux.values = std::move(aux);
  out.aux.tail_minus = out.aux.values.front();
  out.aux.tail_plus = out.aux.values.back();
  out.logfn = std::move(L);
  out.fres = fres;
  out.rres = rres;
  return out;
}

}  // namespace bose1d::detail
