#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include <cmath>

#include "bose1d/ground_state.hpp"
#include "bose1d/kernel.hpp"
#include "dense_oracle.hpp"

using namespace bose1d;

namespace {
constexpr double kInf = std::numeric_limits<double>::infinity();
}

TEST_CASE("impenetrable limit: free fermions") {
  ModelParams p{kInf, 1.0, 0.1};
  const GroundStateSummary gs = ground_state_summary(p);
  CHECK(gs.q == doctest::Approx(1.0).epsilon(1e-12));
  CHECK(gs.density == doctest::Approx(1.0 / pi).epsilon(1e-12));
  CHECK(gs.k_fermi == doctest::Approx(1.0).epsilon(1e-12));
  CHECK(gs.dressed_charge == doctest::Approx(1.0).epsilon(1e-12));
  CHECK(gs.fermi_velocity == doctest::Approx(2.0).epsilon(1e-12));

  // kernel vanishes: solution equals the right-hand side
  const FermiInterval fi = make_fermi_interval(1.0, 64);
  const LinearIeSolution rho =
      solve_linear_ie([](double) { return 1.0 / (2.0 * pi); }, fi, kInf);
  for (double v : rho.values()) CHECK(v == doctest::Approx(1.0 / (2.0 * pi)));
}

TEST_CASE("no Fermi sea at mu <= 0") {
  CHECK_THROWS_AS(solve_fermi_boundary(ModelParams{2.0, -1.0, 0.1}), Error);
  CHECK_THROWS_AS(ground_state_summary(ModelParams{2.0, 0.0, 0.1}), Error);
}

TEST_CASE("c=2, mu=1 against the dense zero-T oracle") {
  ModelParams p{2.0, 1.0, 0.1};
  const FermiInterval fi = solve_fermi_boundary(p);
  const double q_dense = oracle::dense_fermi_boundary(2.0, 1.0);
  CHECK(std::abs(fi.q - q_dense) <= 1e-8);
  CHECK(fi.q == doctest::Approx(1.10881641).epsilon(1e-6));  // frozen anchor

  const GroundStateSummary gs = ground_state_summary(p);
  CHECK(std::abs(gs.dressed_charge - 1.38) <= 0.01);  // the published value
  CHECK(gs.dressed_charge == doctest::Approx(1.3822916671).epsilon(1e-8));
  CHECK(std::abs(gs.dressed_charge - 2.0 * pi * gs.rho_at_q) <= 1e-8);
  CHECK(gs.fermi_velocity * gs.dressed_charge ==
        doctest::Approx(gs.eps0_prime_at_q).epsilon(1e-14));
}

TEST_CASE("resolvent and energy identities") {
  ModelParams p{2.0, 1.0, 0.1};
  const FermiInterval fi = solve_fermi_boundary(p);
  const LinearIeSolution rho =
      solve_linear_ie([](double) { return 1.0 / (2.0 * pi); }, fi, p.coupling);

  for (double s : {fi.q, -fi.q}) {
    const LinearIeSolution r = resolvent_row(fi, p.coupling, s);
    CHECK(std::abs(r.integral() - (2.0 * pi * rho.at(fi.q) - 1.0)) <= 1e-8);
  }

  // int eps0 = 2 pi int e0 rho  (momentum derivative is 1 for the gas)
  const LinearIeSolution eps0 = dressed_energy_zero_t(p, fi);
  double lhs = eps0.integral();
  double rhs = 0.0;
  for (int j = 0; j < fi.order; ++j) {
    const double k = fi.nodes[j];
    rhs += fi.weights[j] * (k * k - p.mu) * rho.values()[j];
  }
  CHECK(std::abs(lhs - 2.0 * pi * rhs) <= 1e-8);
}

TEST_CASE("dressed-phase relations") {
  ModelParams p{2.0, 1.0, 0.1};
  const FermiInterval fi = solve_fermi_boundary(p);
  const LinearIeSolution z = solve_linear_ie([](double) { return 1.0; }, fi, p.coupling);
  const LinearIeSolution fq = dressed_phase(fi, p.coupling, fi.q);
  const LinearIeSolution fmq = dressed_phase(fi, p.coupling, -fi.q);

  for (double k : {0.0, 0.3 * fi.q, -0.9 * fi.q, fi.q}) {
    const double zk = 1.0 + fmq.at(k) - fq.at(k);
    CHECK(std::abs(zk - z.at(k)) <= 1e-8);
  }
  const double zq = z.at(fi.q);
  CHECK(std::abs(1.0 / zq - (1.0 - fq.at(fi.q) - fmq.at(fi.q))) <= 1e-8);
}

TEST_CASE("quadrature-order doubling leaves the summary unchanged") {
  for (double c : {0.5, 2.0}) {
    ModelParams p{c, 1.0, 0.1};
    const GroundStateSummary a = ground_state_summary(p, 64);
    const GroundStateSummary b = ground_state_summary(p, 128);
    CHECK(std::abs(a.q - b.q) < 1e-8);
    CHECK(std::abs(a.density - b.density) < 1e-8);
    CHECK(std::abs(a.dressed_charge - b.dressed_charge) < 1e-8);
    CHECK(std::abs(a.fermi_velocity - b.fermi_velocity) < 1e-8);
    CHECK(std::abs(a.eps0_prime_at_q - b.eps0_prime_at_q) < 1e-8);
  }
}
