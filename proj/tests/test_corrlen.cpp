#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include <cmath>

#include "bose1d/corrlen.hpp"
#include "bose1d/ground_state.hpp"
#include "bose1d/oracles.hpp"
#include "dense_oracle.hpp"

using namespace bose1d;

namespace {
constexpr double kInf = std::numeric_limits<double>::infinity();

InverseCorrLen field_at(const ModelParams& p, ContourMode mode, const SolverConfig& cfg = {}) {
  ExcitationSpec spec;
  spec.sector = Sector::field;
  spec.pairs = 0;
  spec.contour = mode;
  SolverConfig c = cfg;
  const DressedEnergy de = solve_dressed_energy(p, c);
  c.grid_m = de.eps.grid.points;
  c.grid_lambda = de.eps.grid.half_width;
  const SolvedState st = solve_excited_state(p, spec, c);
  return inverse_corrlen_field(st, de);
}
}  // namespace

TEST_CASE("degenerate ratio vanishes (genfunc, twist 0)") {
  ModelParams p{2.0, 1.0, 0.8};
  ExcitationSpec spec;
  spec.sector = Sector::genfunc;
  spec.pairs = 0;
  const DressedEnergy de = solve_dressed_energy(p);
  SolverConfig c;
  c.grid_m = de.eps.grid.points;
  c.grid_lambda = de.eps.grid.half_width;
  const SolvedState st = solve_excited_state(p, spec, c);
  const InverseCorrLen v = inverse_corrlen_genfunc(st, de);
  CHECK(std::abs(v.value) <= 1e-10);
}

TEST_CASE("impenetrable closed forms") {
  struct Pt {
    double mu, T;
  };
  for (Pt pt : {Pt{-1.0, 1.0}, Pt{1.0, 1.0}, Pt{-0.5, 0.2}}) {
    ModelParams p{kInf, pt.mu, pt.T};
    SolverConfig cfg;
    cfg.grid_m = 1 << 17;
    const InverseCorrLen v = field_at(p, ContourMode::automatic, cfg);
    const double ref = tonks_field_corrlen(pt.mu, pt.T);
    CAPTURE(pt.mu);
    CAPTURE(pt.T);
    CHECK(std::abs(v.value - cplx{ref, 0.0}) <= 1e-8);
  }
}

TEST_CASE("impenetrable mu = -1 at T -> 0 tends to sqrt(|mu|)") {
  ModelParams p{kInf, -1.0, 1e-4};
  const InverseCorrLen v = field_at(p, ContourMode::automatic);
  CHECK(std::abs(v.value - cplx{1.0, 0.0}) <= 1e-4);
}

TEST_CASE("field-sector CFT limit at c=2, mu=1") {
  ModelParams p{2.0, 1.0, 0.01};
  const GroundStateSummary gs = ground_state_summary(p);
  const InverseCorrLen v = leading_corrlen(p, Sector::field);
  const double cft = 2.0 * pi * p.T / (gs.fermi_velocity * 4.0 * gs.dressed_charge *
                                       gs.dressed_charge);
  CHECK(v.value.real() * gs.fermi_velocity / (2.0 * pi * p.T) ==
        doctest::Approx(1.0 / (4.0 * gs.dressed_charge * gs.dressed_charge)).epsilon(0.03));
  CHECK(std::abs(v.value.imag()) <= 0.05 * cft);
  CHECK(v.value.real() > 0.0);
}

TEST_CASE("density-sector CFT limit and 2kF wavenumber") {
  ModelParams p{2.0, 1.0, 0.02};
  const GroundStateSummary gs = ground_state_summary(p);
  const InverseCorrLen v = leading_corrlen(p, Sector::density);
  const double z2 = gs.dressed_charge * gs.dressed_charge;
  CHECK(v.value.real() * gs.fermi_velocity / (2.0 * pi * p.T) ==
        doctest::Approx(z2).epsilon(0.03));
  CHECK(v.value.imag() == doctest::Approx(2.0 * gs.k_fermi).epsilon(0.01));
  CHECK(v.value.real() > 0.0);
}

TEST_CASE("density sector at mu = -1 has a finite zero-T limit") {
  ModelParams a{2.0, -1.0, 0.02}, b{2.0, -1.0, 0.01};
  const InverseCorrLen va = leading_corrlen(a, Sector::density);
  const InverseCorrLen vb = leading_corrlen(b, Sector::density);
  CHECK(std::abs(va.value.real() - vb.value.real()) / vb.value.real() < 0.05);
  // oscillations vanish at low T for mu <= 0
  CHECK(std::abs(vb.value.imag()) < std::abs(va.value.imag()) + 1e-9);
  CHECK(std::abs(vb.value.imag()) < 0.05 * vb.value.real());
}

TEST_CASE("genfunc correlation length") {
  ModelParams p{2.0, 1.0, 1.0};
  ExcitationSpec spec;
  spec.sector = Sector::genfunc;
  spec.pairs = 0;
  spec.twist = 0.3;
  const DressedEnergy de = solve_dressed_energy(p);
  SolverConfig c;
  c.grid_m = de.eps.grid.points;
  c.grid_lambda = de.eps.grid.half_width;
  const SolvedState st = solve_excited_state(p, spec, c);
  const InverseCorrLen v = inverse_corrlen_genfunc(st, de);

  // dense-quadrature oracle value (frozen) and live
  const auto dg = oracle::make_dense(2.0, 1.0, 1.0, de.eps.grid.half_width, 6401);
  const cplx dense = oracle::dense_genfunc_r0(dg, 0.3);
  CHECK(std::abs(v.value - dense) <= 1e-8);
  CHECK(v.value.real() == doctest::Approx(-0.155531950).epsilon(1e-7));

  // mu-shift route: phi(mu) - phi(mu + twist T) over 2 pi ... assembled from
  // two thermodynamic solves
  ModelParams shifted = p;
  shifted.mu = p.mu + spec.twist * p.T;
  const double route2 =
      -(grand_potential(shifted, c) - grand_potential(p, c)) / p.T;
  CHECK(std::abs(v.value - cplx{-route2, 0.0}) <= 1e-9);
}

TEST_CASE("assembly diagnostics add up and the eigenvalue view agrees") {
  ModelParams p{2.0, 1.0, 1.0};
  const DressedEnergy de = solve_dressed_energy(p);
  SolverConfig c;
  c.grid_m = de.eps.grid.points;
  c.grid_lambda = de.eps.grid.half_width;
  const SolvedState st = solve_excited_state(p, ExcitationSpec{}, c);
  const InverseCorrLen v = inverse_corrlen_density(st, de);
  CHECK(std::abs(v.value - (v.integral_part + v.root_part)) == 0.0);

  const cplx ratio_view = cplx{log_lambda0(de), 0.0} - log_lambda_excited(st);
  CHECK(std::abs(v.value - ratio_view) <= 1e-12);
}

TEST_CASE("straight-modified and indented assemblies agree") {
  ModelParams p{2.0, 1.0, 0.2};
  const InverseCorrLen sm = field_at(p, ContourMode::straight_modified);
  const InverseCorrLen ind = field_at(p, ContourMode::indented);
  CHECK(sm.roots.k0.imag() < 0.0);
  CHECK(std::abs(sm.value - ind.value) <= 1e-8);
}

TEST_CASE("leading value is continuous along a temperature sweep") {
  ModelParams p{2.0, 1.0, 0.09};
  ModelParams q = p;
  q.T = p.T * (1.0 + 1e-3);
  const InverseCorrLen a = leading_corrlen(p, Sector::field);
  const InverseCorrLen b = leading_corrlen(q, Sector::field);
  CHECK(std::abs(a.value - b.value) / std::abs(a.value) < 1e-2);
}

TEST_CASE("conjugate pair about one Fermi point gives a real value; mirror flips Im") {
  ModelParams p{2.0, 1.0, 0.25};
  const GroundStateSummary gs = ground_state_summary(p);
  const DressedEnergy de = solve_dressed_energy(p);
  SolverConfig c;
  c.grid_m = de.eps.grid.points;
  c.grid_lambda = de.eps.grid.half_width;

  ExcitationSpec conj_spec;
  conj_spec.pairs = 1;
  conj_spec.plus_branches = {0};
  conj_spec.minus_branches = {-1};
  const double d = pi * p.T / gs.eps0_prime_at_q;
  conj_spec.seed_plus = {cplx{gs.q, d}};
  conj_spec.seed_minus = {cplx{gs.q, -d}};
  const SolvedState stc = solve_excited_state(p, conj_spec, c);
  const InverseCorrLen vc = inverse_corrlen_density(stc, de);
  CHECK(std::abs(vc.value.imag()) <= 1e-8);
  CHECK(vc.value.real() > 0.0);

  // mirror of the default two-point state: branches (0,0), opposite sides
  const SolvedState st1 = solve_excited_state(p, ExcitationSpec{}, c);
  const InverseCorrLen v1 = inverse_corrlen_density(st1, de);
  ExcitationSpec mirror;
  mirror.pairs = 1;
  mirror.plus_branches = {0};
  mirror.minus_branches = {0};
  mirror.seed_plus = {std::conj(st1.roots.k_minus[0])};
  mirror.seed_minus = {std::conj(st1.roots.k_plus[0])};
  const SolvedState st2 = solve_excited_state(p, mirror, c);
  const InverseCorrLen v2 = inverse_corrlen_density(st2, de);
  CHECK(std::abs(v2.value - std::conj(v1.value)) <= 1e-8);
}

TEST_CASE("Re(1/xi) decreases with T in the conformal window") {
  double prev = 1e300;
  for (double t : {0.04, 0.02, 0.01}) {
    const InverseCorrLen v = leading_corrlen(ModelParams{2.0, 1.0, t}, Sector::field);
    CHECK(v.value.real() < prev);
    prev = v.value.real();
  }
}
