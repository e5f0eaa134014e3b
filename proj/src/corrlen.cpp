#include "bose1d/corrlen.hpp"

#include <gsl/gsl_integration.h>

#include <algorithm>
#include <cmath>

#include "bose1d/convolution.hpp"
#include "bose1d/unwrap.hpp"
#include "nlie.hpp"

namespace bose1d {

namespace {

void check_compatible(const SolvedState& st, const DressedEnergy& de) {
  if (!(st.aux.grid == de.eps.grid)) fail(Errc::grid_mismatch, "state and dressed energy grids differ");
  if (st.params.coupling != de.params.coupling || st.params.mu != de.params.mu ||
      st.params.T != de.params.T)
    fail(Errc::grid_mismatch, "state and dressed energy parameters differ");
}

std::vector<cplx> occupation_log_of(const DressedEnergy& de) {
  const int n = de.eps.grid.points;
  std::vector<cplx> out(n);
  for (int i = 0; i < n; ++i) {
    const double x = -de.eps.values[i].real() / de.params.T;
    out[i] = cplx{x < 0.0 ? std::log1p(std::exp(x)) : x + std::log1p(std::exp(-x)), 0.0};
  }
  return out;
}

cplx root_part_of(const SolvedState& st) {
  cplx acc{0.0, 0.0};
  const cplx mi{0.0, -1.0};
  if (st.roots.has_k0 && st.contour != ContourMode::straight_modified) {
    // straight-modified: the k0 term is absorbed into -i Lambda
    acc += mi * st.roots.k0;
  }
  if (st.contour == ContourMode::straight_modified)
    acc += mi * cplx{st.aux.grid.half_width, 0.0};
  for (const cplx& r : st.roots.k_plus) acc += mi * r;
  for (const cplx& r : st.roots.k_minus) acc -= mi * r;
  return acc;
}

// ---------------------------------------------------------------------------
// indented contour: straight grid with explicit arcs, Gauss-Legendre in the
// arc parameter, sequential unwrapping across line pieces and arcs

struct Arc {
  int ia = 0, ib = 0;   // grid indices of the junctions
  bool below = false;   // dip (true) or bump (false)
};

struct ArcQuad {
  std::vector<cplx> k, dk;  // nodes and dk = k'(t) * w_t
};

ArcQuad arc_quadrature(const Grid& g, const Arc& a, int order) {
  ArcQuad q;
  const double left = g.node(a.ia), right = g.node(a.ib);
  const double mid = 0.5 * (left + right), wd = 0.5 * (right - left);
  const double s = a.below ? -1.0 : 1.0;
  gsl_integration_glfixed_table* t = gsl_integration_glfixed_table_alloc(order);
  q.k.resize(order);
  q.dk.resize(order);
  for (int i = 0; i < order; ++i) {
    double ti, wi;
    gsl_integration_glfixed_point(0.0, pi, i, &ti, &wi, t);
    q.k[i] = cplx{mid - wd * std::cos(ti), s * wd * std::sin(ti)};
    q.dk[i] = wi * cplx{wd * std::sin(ti), s * wd * std::cos(ti)};
  }
  gsl_integration_glfixed_table_free(t);
  return q;
}

// continuation of the dressed energy off the real axis
cplx eps_offgrid(const DressedEnergy& de, const BetheModel& model, const SampledFn& logD,
                 cplx k) {
  detail::NlieDriving d;
  d.T = de.params.T;
  return detail::rhs_at(model, d, logD, k);
}

struct WalkResult {
  cplx integral{0.0, 0.0};
  double final_im_n = 0.0;
};

// trapezoid over grid nodes [i0, i1] of (L_N - L_D), both carried by the walk
cplx line_piece(const Grid& g, const std::vector<cplx>& diff, int i0, int i1) {
  if (i1 <= i0) return {0.0, 0.0};
  const double h = g.spacing();
  cplx acc = 0.5 * h * (diff[i0] + diff[i1]);
  for (int i = i0 + 1; i < i1; ++i) acc += h * diff[i];
  return acc;
}

// d/dk log(1 + e^{-aux/T}) = -(aux'/T) / (1 + e^{aux/T}), overflow-safe
cplx occupation_log_deriv(cplx aux, cplx aux_prime, double T) {
  const cplx s = aux / T;
  cplx f;
  if (s.real() > 0.0) {
    const cplx e = std::exp(-s);
    f = e / (1.0 + e);
  } else {
    f = 1.0 / (1.0 + std::exp(s));
  }
  return -(aux_prime / T) * f;
}

WalkResult contour_walk(const SolvedState& st, const DressedEnergy& de,
                        const std::vector<Arc>& arcs, int order) {
  const Grid& g = st.aux.grid;
  const int n = g.points;
  const double T = st.params.T;
  const BetheModel model = gas_model(st.params);

  SampledFn logD(g);
  logD.values = occupation_log_of(de);
  logD.tail_minus = logD.values.front();
  logD.tail_plus = logD.values.back();

  // Euler-Maclaurin end correction of the trapezoid at an interior junction;
  // the integrand L_N - L_D has O(1/arc radius) curvature there
  detail::NlieDriving dyy;
  dyy.T = T;
  auto diff_deriv = [&](int i) {
    const cplx k{g.node(i), 0.0};
    const cplx dn = occupation_log_deriv(evaluate_aux_offgrid(st, k),
                                         evaluate_aux_deriv_offgrid(st, k), T);
    const cplx dd = occupation_log_deriv(detail::rhs_at(model, dyy, logD, k),
                                         detail::rhs_deriv_at(model, dyy, logD, k), T);
    return dn - dd;
  };

  // principal branch values on the line; the walk restores continuity
  std::vector<cplx> rawN(n), rawD = logD.values;
  for (int i = 0; i < n; ++i) rawN[i] = log1p_exp(-st.aux.values[i] / T);

  std::vector<cplx> diff(n);
  WalkResult out;
  double im_n = rawN.front().imag();
  int pos = 0;

  const double em = g.spacing() * g.spacing() / 12.0;
  auto advance_line = [&](int upto) {
    // unwrap N along [pos, upto] continuing from im_n; D is real on the line
    std::vector<cplx> seg(rawN.begin() + pos, rawN.begin() + upto + 1);
    auto u = unwrap_from(seg, im_n);
    for (int i = pos; i <= upto; ++i) diff[i] = u[i - pos] - rawD[i];
    im_n = u.back().imag();
    out.integral += line_piece(g, diff, pos, upto);
    // end corrections at interior junctions (integrand is dead at +-Lambda)
    if (pos != 0) out.integral += em * diff_deriv(pos);
    if (upto != n - 1) out.integral -= em * diff_deriv(upto);
    pos = upto;
  };

  for (const Arc& a : arcs) {
    advance_line(a.ia);
    const ArcQuad q = arc_quadrature(g, a, order);
    // include the exit junction so the phase is continued onto the line
    std::vector<cplx> an(q.k.size() + 1), ad(q.k.size() + 1);
    for (size_t i = 0; i < q.k.size(); ++i) {
      an[i] = log1p_exp(-evaluate_aux_offgrid(st, q.k[i]) / T);
      ad[i] = log1p_exp(-eps_offgrid(de, model, logD, q.k[i]) / T);
    }
    an.back() = rawN[a.ib];
    ad.back() = rawD[a.ib];
    const auto un = unwrap_from(an, im_n);
    const auto ud = unwrap_from(ad, rawD[a.ia].imag());
    // the arc must not enclose a zero of 1 + e^{-eps/T}: the unwrapped
    // phase has to come back to the principal value at the junction
    if (std::abs(ud.back().imag() - rawD[a.ib].imag()) > 1e-3)
      fail(Errc::contour_mode,
           "indentation encloses a zero of the dressed-energy occupation function");
    cplx acc{0.0, 0.0};
    for (size_t i = 0; i < q.k.size(); ++i) acc += q.dk[i] * (un[i] - ud[i]);
    out.integral += acc;
    im_n = un.back().imag();
    pos = a.ib;
  }
  advance_line(n - 1);
  out.final_im_n = im_n;
  return out;
}

std::vector<Arc> plan_arcs(const SolvedState& st) {
  const Grid& g = st.aux.grid;
  const double h = g.spacing();
  std::vector<std::pair<cplx, bool>> centers;  // zero, below-dip?
  centers.push_back({st.roots.k0, true});
  if (st.mirror_root && std::abs(st.mirror_root->imag()) < 8.0 * h)
    centers.push_back({*st.mirror_root, false});
  std::sort(centers.begin(), centers.end(),
            [](const auto& a, const auto& b) { return a.first.real() < b.first.real(); });
  std::vector<Arc> arcs;
  int last = 0;
  for (const auto& [z, below] : centers) {
    const double rho = std::max(2.0 * std::abs(z.imag()), 8.0 * h);
    int ia = static_cast<int>(std::floor((z.real() - rho + g.half_width) / h));
    int ib = static_cast<int>(std::ceil((z.real() + rho + g.half_width) / h));
    ia = std::max(ia, last + 1);
    ib = std::min(ib, g.points - 2);
    if (ib <= ia)
      fail(Errc::contour_mode, "indentation does not fit on the grid");
    arcs.push_back(Arc{ia, ib, below});
    last = ib;
  }
  return arcs;
}

cplx indented_integral(const SolvedState& st, const DressedEnergy& de, int order) {
  const std::vector<Arc> arcs = plan_arcs(st);
  const WalkResult w = contour_walk(st, de, arcs, order);
  if (std::abs(w.final_im_n) > 1e-4)
    fail(Errc::contour_mode,
         "indented contour did not close the winding (final phase " +
             std::to_string(w.final_im_n) + ")");
  return w.integral;
}

// ---------------------------------------------------------------------------

InverseCorrLen assemble(const SolvedState& st, const DressedEnergy& de) {
  check_compatible(st, de);
  const Grid& g = st.aux.grid;
  InverseCorrLen out;
  out.sector = st.spec.sector;
  out.roots = st.roots;

  if (st.contour == ContourMode::indented && st.roots.has_k0) {
    out.integral_part = -indented_integral(st, de, 64) / (2.0 * pi);
  } else {
    const auto rawD = occupation_log_of(de);
    const auto w = g.weights();
    cplx acc{0.0, 0.0};
    for (int i = 0; i < g.points; ++i) acc += w[i] * (st.logfn.values[i] - rawD[i]);
    out.integral_part = -acc / (2.0 * pi);
  }
  out.root_part = root_part_of(st);
  out.value = out.integral_part + out.root_part;
  return out;
}

}  // namespace

InverseCorrLen inverse_corrlen_density(const SolvedState& st, const DressedEnergy& de) {
  if (st.spec.sector != Sector::density)
    fail(Errc::invalid_argument, "state is not a density-sector solve");
  return assemble(st, de);
}

InverseCorrLen inverse_corrlen_field(const SolvedState& st, const DressedEnergy& de) {
  if (st.spec.sector != Sector::field)
    fail(Errc::invalid_argument, "state is not a field-sector solve");
  return assemble(st, de);
}

InverseCorrLen inverse_corrlen_genfunc(const SolvedState& st, const DressedEnergy& de) {
  if (st.spec.sector != Sector::genfunc)
    fail(Errc::invalid_argument, "state is not a genfunc-sector solve");
  return assemble(st, de);
}

InverseCorrLen inverse_corrlen(const SolvedState& st, const DressedEnergy& de) {
  return assemble(st, de);
}

double log_lambda0(const DressedEnergy& de) { return -grand_potential(de) / de.params.T; }

cplx log_lambda_excited(const SolvedState& st) {
  if (st.contour != ContourMode::plain)
    fail(Errc::contour_mode, "eigenvalue view is defined on the plain contour");
  const auto w = st.aux.grid.weights();
  cplx acc{0.0, 0.0};
  for (int i = 0; i < st.aux.grid.points; ++i) acc += w[i] * st.logfn.values[i];
  cplx val = acc / (2.0 * pi);
  const cplx im{0.0, 1.0};
  if (st.roots.has_k0) val += im * st.roots.k0;
  for (const cplx& r : st.roots.k_plus) val += im * r;
  for (const cplx& r : st.roots.k_minus) val -= im * r;
  return val;
}

InverseCorrLen leading_corrlen(const ModelParams& p, Sector sector, const SolverConfig& cfg,
                               const RootSet* continue_from) {
  p.validate();
  ExcitationSpec spec;
  spec.sector = sector;
  spec.pairs = sector == Sector::density ? 1 : 0;
  if (continue_from) {
    if (continue_from->has_k0) spec.seed_k0 = continue_from->k0;
    spec.seed_plus = continue_from->k_plus;
    spec.seed_minus = continue_from->k_minus;
  }

  auto solve_at = [&](const SolverConfig& c) {
    DressedEnergy de = solve_dressed_energy(p, c);
    SolverConfig pinned = c;
    pinned.grid_m = de.eps.grid.points;
    pinned.grid_lambda = de.eps.grid.half_width;
    SolvedState st = solve_excited_state(p, spec, pinned);
    return assemble(st, de);
  };

  if (cfg.grid_m > 0) return solve_at(cfg);
  // resolution doubling on the assembled value
  SolverConfig c = cfg;
  DressedEnergy de = solve_dressed_energy(p, cfg);
  c.grid_lambda = de.eps.grid.half_width;
  c.grid_m = de.eps.grid.points;
  InverseCorrLen coarse = solve_at(c);
  while (2 * c.grid_m <= cfg.grid_m_max) {
    c.grid_m *= 2;
    InverseCorrLen fine = solve_at(c);
    const bool settled =
        std::abs(fine.value - coarse.value) <= 10.0 * cfg.tol * std::max(1.0, std::abs(fine.value));
    coarse = fine;
    if (settled) break;
  }
  return coarse;
}

}  // namespace bose1d
