// Acceptance suite: one test case per criterion, one printed pass/fail line
// each. Tolerances are pinned here, in code.

#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include <chrono>
#include <cmath>
#include <cstdio>
#include <cstdlib>
#include <fstream>
#include <sstream>

#include "bose1d/convolution.hpp"
#include "bose1d/corrlen.hpp"
#include "bose1d/ground_state.hpp"
#include "bose1d/oracles.hpp"
#include "bose1d/thermo.hpp"
#include "bose1d/xxz.hpp"
#include "dense_oracle.hpp"

using namespace bose1d;

namespace {
constexpr double kInf = std::numeric_limits<double>::infinity();

struct Timer {
  std::chrono::steady_clock::time_point t0 = std::chrono::steady_clock::now();
  double seconds() const {
    return std::chrono::duration<double>(std::chrono::steady_clock::now() - t0).count();
  }
};

void report(int n, bool pass, const std::string& what) {
  std::printf("criterion %2d [%s] %s\n", n, pass ? "pass" : "FAIL", what.c_str());
  std::fflush(stdout);
}

InverseCorrLen field_with_mode(const ModelParams& p, ContourMode mode, int grid_m = 0) {
  ExcitationSpec spec;
  spec.sector = Sector::field;
  spec.pairs = 0;
  spec.contour = mode;
  SolverConfig sc;
  if (grid_m > 0) sc.grid_m = grid_m;
  const DressedEnergy de = solve_dressed_energy(p, sc);
  sc.grid_m = de.eps.grid.points;
  sc.grid_lambda = de.eps.grid.half_width;
  const SolvedState st = solve_excited_state(p, spec, sc);
  return inverse_corrlen_field(st, de);
}

}  // namespace

TEST_CASE("criterion 1: impenetrable-limit closed forms") {
  struct Pt {
    double mu, T;
  };
  bool pass = true;
  std::ostringstream msg;
  for (Pt pt : {Pt{-1.0, 1.0}, Pt{1.0, 1.0}, Pt{-0.5, 0.2}}) {
    Timer t;
    const InverseCorrLen v =
        field_with_mode(ModelParams{kInf, pt.mu, pt.T}, ContourMode::automatic, 1 << 17);
    const double ref = tonks_field_corrlen(pt.mu, pt.T);
    const double err = std::abs(v.value - cplx{ref, 0.0});
    const double secs = t.seconds();
    pass &= err <= 1e-8 && secs < 1.0;
    msg << "(" << pt.mu << "," << pt.T << "): err " << err << " in " << secs << "s  ";
    CHECK(err <= 1e-8);
    CHECK(secs < 1.0);
  }
  report(1, pass, "Tonks closed forms: " + msg.str());
}

TEST_CASE("criterion 2: dressed charge at c=2, mu=1") {
  Timer t;
  const GroundStateSummary gs = ground_state_summary(ModelParams{2.0, 1.0, 0.1});
  const double secs = t.seconds();
  const bool pass = std::abs(gs.dressed_charge - 1.38) <= 0.01 && secs < 1.0;
  CHECK(std::abs(gs.dressed_charge - 1.38) <= 0.01);
  CHECK(secs < 1.0);
  std::ostringstream msg;
  msg << "Z = " << gs.dressed_charge << " (1.38 +- 0.01) in " << secs << "s";
  report(2, pass, msg.str());
}

TEST_CASE("criterion 3: field-sector conformal limit") {
  const GroundStateSummary gs = ground_state_summary(ModelParams{2.0, 1.0, 0.1});
  const double target = 1.0 / (4.0 * gs.dressed_charge * gs.dressed_charge);
  double dev[2];
  double secs[2];
  const double ts[2] = {0.01, 0.005};
  for (int i = 0; i < 2; ++i) {
    Timer t;
    const InverseCorrLen v = leading_corrlen(ModelParams{2.0, 1.0, ts[i]}, Sector::field);
    dev[i] = std::abs(v.value.real() * gs.fermi_velocity / (2.0 * pi * ts[i]) / target - 1.0);
    secs[i] = t.seconds();
  }
  const bool pass = dev[0] <= 0.03 && dev[1] <= 0.015 && dev[1] <= 0.5 * dev[0] + 1e-6 &&
                    secs[0] < 30.0 && secs[1] < 30.0;
  CHECK(dev[0] <= 0.03);
  CHECK(dev[1] <= 0.015);
  CHECK(dev[1] <= 0.5 * dev[0] + 1e-6);
  CHECK(secs[0] < 30.0);
  CHECK(secs[1] < 30.0);
  std::ostringstream msg;
  msg << "rel dev vs 1/(4Z^2): " << dev[0] << " @T=0.01, " << dev[1] << " @T=0.005 ("
      << secs[0] << "s, " << secs[1] << "s)";
  report(3, pass, msg.str());
}

TEST_CASE("criterion 4: density-sector conformal limit and 2kF") {
  Timer t;
  ModelParams p{2.0, 1.0, 0.005};
  const GroundStateSummary gs = ground_state_summary(p);
  const InverseCorrLen v = leading_corrlen(p, Sector::density);
  const double n = density(p);
  const double z2 = gs.dressed_charge * gs.dressed_charge;
  const double dev_re = std::abs(v.value.real() * gs.fermi_velocity / (2.0 * pi * p.T) / z2 - 1.0);
  const double dev_im = std::abs(v.value.imag() / (2.0 * pi * n) - 1.0);
  const double secs = t.seconds();
  const bool pass = dev_re <= 0.03 && dev_im <= 0.01 && secs < 60.0;
  CHECK(dev_re <= 0.03);
  CHECK(dev_im <= 0.01);
  CHECK(secs < 60.0);
  std::ostringstream msg;
  msg << "Re dev vs Z^2: " << dev_re << ", Im/(2 pi n) dev: " << dev_im << " (" << secs
      << "s)";
  report(4, pass, msg.str());
}

TEST_CASE("criterion 5: thermodynamic scalings") {
  Timer t;
  // mu = 0: square-root exponents
  ModelParams a{2.0, 0.0, 1e-3}, b{2.0, 0.0, 1e-2};
  const double pn = std::log(density(b) / density(a)) / std::log(b.T / a.T);
  const double pc = std::log(specific_heat(b) / specific_heat(a)) / std::log(b.T / a.T);
  // mu = -1: activated density, slope mu (raw two-point slope; the window
  // [0.02, 0.05] keeps the sqrt(T)-prefactor bias below 2%)
  ModelParams d1{2.0, -1.0, 0.02}, d2{2.0, -1.0, 0.05};
  const double slope =
      (std::log(density(d2)) - std::log(density(d1))) / (1.0 / d2.T - 1.0 / d1.T);
  // mu = +1: linear specific heat
  double sx = 0, sy = 0, sxx = 0, sxy = 0, syy = 0;
  const int np = 5;
  for (int i = 0; i < np; ++i) {
    const double T = 0.005 + i * (0.02 - 0.005) / (np - 1);
    const double cv = specific_heat(ModelParams{2.0, 1.0, T});
    sx += T; sy += cv; sxx += T * T; sxy += T * cv; syy += cv * cv;
  }
  const double r2num = (np * sxy - sx * sy);
  const double r2 = r2num * r2num / ((np * sxx - sx * sx) * (np * syy - sy * sy));
  const double secs = t.seconds();

  const bool pass = std::abs(pn - 0.5) <= 0.03 && std::abs(pc - 0.5) <= 0.03 &&
                    std::abs(slope - (-1.0)) <= 0.02 && r2 > 0.999 && secs < 120.0;
  CHECK(std::abs(pn - 0.5) <= 0.03);
  CHECK(std::abs(pc - 0.5) <= 0.03);
  CHECK(std::abs(slope - (-1.0)) <= 0.02);
  CHECK(r2 > 0.999);
  CHECK(secs < 120.0);
  std::ostringstream msg;
  msg << "n-exp " << pn << ", cV-exp " << pc << ", log-n slope " << slope << ", cV-fit R^2 "
      << r2 << " (" << secs << "s)";
  report(5, pass, msg.str());
}

TEST_CASE("criterion 6: contour-mode equivalence") {
  struct Pt {
    double mu, T;
  };
  bool pass = true;
  std::ostringstream msg;
  for (Pt pt : {Pt{1.0, 0.2}, Pt{1.0, 0.1}, Pt{2.0, 0.25}}) {
    ModelParams p{2.0, pt.mu, pt.T};
    const InverseCorrLen sm = field_with_mode(p, ContourMode::straight_modified, 1 << 15);
    const InverseCorrLen ind = field_with_mode(p, ContourMode::indented, 1 << 15);
    const double err = std::abs(sm.value - ind.value);
    const bool below = sm.roots.k0.imag() < 0.0;
    pass &= err <= 1e-8 && below;
    CHECK(err <= 1e-8);
    CHECK(below);
    msg << "(" << pt.mu << "," << pt.T << "): |SM-IND| " << err << "  ";
  }
  report(6, pass, msg.str());
}

TEST_CASE("criterion 7: dense-quadrature oracle equivalence") {
  bool pass = true;
  ModelParams p{2.0, 1.0, 1.0};
  SolverConfig sc;
  const DressedEnergy de = solve_dressed_energy(p, sc);
  const double lam = de.eps.grid.half_width;
  const auto dg = oracle::make_dense(2.0, 1.0, 1.0, lam, 6401);
  const auto eps_dense = oracle::dense_eps(dg);

  const double e0err =
      std::abs(dressed_energy_at(de, {0.0, 0.0}).real() - eps_dense[(dg.k.size() - 1) / 2]);
  const double phierr = std::abs(grand_potential(de) - oracle::dense_phi(dg, eps_dense));
  pass &= e0err <= 1e-7 && phierr <= 1e-7;
  CHECK(e0err <= 1e-7);
  CHECK(phierr <= 1e-7);

  sc.grid_m = de.eps.grid.points;
  sc.grid_lambda = lam;
  const SolvedState st = solve_excited_state(p, ExcitationSpec{}, sc);
  const auto dx = oracle::dense_density_r1(dg, -1, -1, st.roots.k_plus[0] + cplx{0.05, 0.05},
                                           st.roots.k_minus[0] - cplx{0.05, 0.05});
  const double rooterr = std::max(std::abs(st.roots.k_plus[0] - dx.kp),
                                  std::abs(st.roots.k_minus[0] - dx.km));
  pass &= rooterr <= 1e-7;
  CHECK(rooterr <= 1e-7);

  ExcitationSpec gf;
  gf.sector = Sector::genfunc;
  gf.pairs = 0;
  gf.twist = 0.3;
  const SolvedState gst = solve_excited_state(p, gf, sc);
  const InverseCorrLen gv = inverse_corrlen_genfunc(gst, de);
  const double gferr = std::abs(gv.value - oracle::dense_genfunc_r0(dg, 0.3));
  pass &= gferr <= 1e-7;
  CHECK(gferr <= 1e-7);

  std::ostringstream m2;
  m2 << "eps(0) " << e0err << ", phi " << phierr << ", roots " << rooterr << ", genfunc "
     << gferr;
  report(7, pass, m2.str());
}

TEST_CASE("criterion 8: identity suite") {
  bool pass = true;
  double conv_err = 0.0;
  {
    const double c = 2.0;
    const Grid g = build_grid(4000.0 * c, 65536);
    SampledFn L(g);
    for (int i = 0; i < g.points; ++i)
      L.values[i] = lorentzian_kernel({g.node(i), 0.0}, c);
    const SampledFn o = convolve(L, KernelParams{c}, 1e-3);
    for (int i = 0; i < g.points; ++i) {
      if (std::abs(g.node(i)) > 0.5 * g.half_width) continue;
      conv_err = std::max(conv_err,
                          std::abs(o.values[i] - lorentzian_kernel({g.node(i), 0.0}, 2 * c)));
    }
    pass &= conv_err <= 1e-10;
    CHECK(conv_err <= 1e-10);
  }
  ModelParams p{2.0, 1.0, 0.1};
  const FermiInterval fi = solve_fermi_boundary(p);
  const LinearIeSolution rho =
      solve_linear_ie([](double) { return 1.0 / (2.0 * pi); }, fi, p.coupling);
  const LinearIeSolution z = solve_linear_ie([](double) { return 1.0; }, fi, p.coupling);
  const double zerr = std::abs(z.at(fi.q) - 2.0 * pi * rho.at(fi.q));
  pass &= zerr <= 1e-8;
  CHECK(zerr <= 1e-8);
  double rerr = 0.0;
  for (double s : {fi.q, -fi.q}) {
    const LinearIeSolution rr = resolvent_row(fi, p.coupling, s);
    rerr = std::max(rerr, std::abs(rr.integral() - (2.0 * pi * rho.at(fi.q) - 1.0)));
  }
  pass &= rerr <= 1e-8;
  CHECK(rerr <= 1e-8);
  const LinearIeSolution fq = dressed_phase(fi, p.coupling, fi.q);
  const LinearIeSolution fmq = dressed_phase(fi, p.coupling, -fi.q);
  double perr = 0.0;
  for (double k : {0.0, 0.5 * fi.q, fi.q})
    perr = std::max(perr, std::abs(1.0 + fmq.at(k) - fq.at(k) - z.at(k)));
  perr = std::max(perr, std::abs(1.0 / z.at(fi.q) - (1.0 - fq.at(fi.q) - fmq.at(fi.q))));
  pass &= perr <= 1e-8;
  CHECK(perr <= 1e-8);
  double gerr = 0.0;
  {
    ModelParams q{2.0, 1.0, 1.0};
    ExcitationSpec gf;
    gf.sector = Sector::genfunc;
    gf.pairs = 0;
    gf.twist = 0.3;
    SolverConfig sc;
    const DressedEnergy de = solve_dressed_energy(q, sc);
    sc.grid_m = de.eps.grid.points;
    sc.grid_lambda = de.eps.grid.half_width;
    const SolvedState st = solve_excited_state(q, gf, sc);
    const DressedEnergy ds =
        solve_dressed_energy(ModelParams{q.coupling, q.mu + gf.twist * q.T, q.T}, sc);
    for (int i = 0; i < st.aux.grid.points; ++i)
      gerr = std::max(gerr, std::abs(st.aux.values[i] - ds.eps.values[i]));
    pass &= gerr <= 10.0 * sc.tol;
    CHECK(gerr <= 10.0 * sc.tol);
  }
  std::ostringstream msg;
  msg << "self-conv " << conv_err << ", Z=2pi rho " << zerr << ", resolvent " << rerr
      << ", dressed-phase " << perr << ", genfunc-shift " << gerr;
  report(8, pass, msg.str());
}

TEST_CASE("criterion 9: continuum limit of the lattice model") {
  Timer t;
  const ModelParams gas{2.0, 1.0, 0.5};
  const auto rep = xxz::continuum_limit_check(gas, {0.2, 0.1, 0.05});
  const double secs = t.seconds();
  const bool pass = rep.monotonic_log_lambda0 && rep.monotonic_field &&
                    std::abs(rep.order_log_lambda0 - 2.0) <= 0.3 &&
                    std::abs(rep.order_field - 2.0) <= 0.3 && secs < 300.0;
  CHECK(rep.monotonic_log_lambda0);
  CHECK(rep.monotonic_field);
  CHECK(std::abs(rep.order_log_lambda0 - 2.0) <= 0.3);
  CHECK(std::abs(rep.order_field - 2.0) <= 0.3);
  CHECK(secs < 300.0);
  std::ostringstream msg;
  msg << "orders: log-lambda0 " << rep.order_log_lambda0 << ", field " << rep.order_field
      << "; devs";
  for (const auto& pt : rep.points)
    msg << " [" << pt.epsilon << ": " << pt.dev_log_lambda0 << ", " << pt.dev_field << "]";
  msg << " (" << secs << "s)";
  report(9, pass, msg.str());
}

TEST_CASE("criterion 10: byte-identical CLI reruns") {
#ifndef CLI_PATH
#define CLI_PATH "./tools/bose1d"
#endif
  auto slurp = [](const std::string& path) {
    std::ifstream f(path, std::ios::binary);
    std::ostringstream os;
    os << f.rdbuf();
    return os.str();
  };
  auto run = [&](const std::string& args, const std::string& out) {
    const std::string cmd = std::string(CLI_PATH) + " " + args + " --out " + out;
    return std::system(cmd.c_str());
  };
  const std::string th = "thermo --c 2 --mu 1 --t-min 0.2 --t-max 1 --t-steps 3 --jobs 2";
  const std::string cl = "corrlen --sector field --c 2 --mu 1 --T 0.3";
  bool pass = true;
  pass &= run(th, "/tmp/bose1d_acc_t1.csv") == 0;
  pass &= run(th, "/tmp/bose1d_acc_t2.csv") == 0;
  pass &= run(cl, "/tmp/bose1d_acc_c1.csv") == 0;
  pass &= run(cl, "/tmp/bose1d_acc_c2.csv") == 0;
  const bool t_same = slurp("/tmp/bose1d_acc_t1.csv") == slurp("/tmp/bose1d_acc_t2.csv");
  const bool c_same = slurp("/tmp/bose1d_acc_c1.csv") == slurp("/tmp/bose1d_acc_c2.csv");
  pass &= t_same && c_same;
  CHECK(t_same);
  CHECK(c_same);
  report(10, pass, std::string("thermo reruns identical: ") + (t_same ? "yes" : "no") +
                       ", corrlen reruns identical: " + (c_same ? "yes" : "no"));
}
