#include "bose1d/ground_state.hpp"

#include <gsl/gsl_integration.h>

#include <Eigen/Dense>
#include <cmath>

#include "bose1d/kernel.hpp"

namespace bose1d {

namespace {

double kern(double x, double c) {
  if (std::isinf(c)) return 0.0;
  return 2.0 * c / (x * x + c * c);
}

}  // namespace

FermiInterval make_fermi_interval(double q, int order) {
  if (!(q > 0.0)) fail(Errc::invalid_argument, "Fermi boundary must be positive");
  if (order < 32) fail(Errc::invalid_argument, "quadrature order must be >= 32");
  FermiInterval fi;
  fi.q = q;
  fi.order = order;
  gsl_integration_glfixed_table* t = gsl_integration_glfixed_table_alloc(order);
  fi.nodes.resize(order);
  fi.weights.resize(order);
  for (int i = 0; i < order; ++i) {
    double x, w;
    gsl_integration_glfixed_point(-q, q, i, &x, &w, t);
    fi.nodes[i] = x;
    fi.weights[i] = w;
  }
  gsl_integration_glfixed_table_free(t);
  return fi;
}

LinearIeSolution::LinearIeSolution(FermiInterval fi, double coupling,
                                   std::function<double(double)> rhs,
                                   std::vector<double> values)
    : fi_(std::move(fi)), coupling_(coupling), rhs_(std::move(rhs)), values_(std::move(values)) {}

double LinearIeSolution::at(double k) const {
  double acc = rhs_(k);
  for (int j = 0; j < fi_.order; ++j)
    acc += kern(k - fi_.nodes[j], coupling_) * fi_.weights[j] * values_[j] / (2.0 * pi);
  return acc;
}

double LinearIeSolution::integral() const {
  double acc = 0.0;
  for (int j = 0; j < fi_.order; ++j) acc += fi_.weights[j] * values_[j];
  return acc;
}

LinearIeSolution solve_linear_ie(const std::function<double(double)>& rhs,
                                 const FermiInterval& fi, double coupling) {
  const int n = fi.order;
  Eigen::MatrixXd a(n, n);
  Eigen::VectorXd b(n);
  for (int i = 0; i < n; ++i) {
    for (int j = 0; j < n; ++j)
      a(i, j) = (i == j ? 1.0 : 0.0) -
                kern(fi.nodes[i] - fi.nodes[j], coupling) * fi.weights[j] / (2.0 * pi);
    b(i) = rhs(fi.nodes[i]);
  }
  Eigen::PartialPivLU<Eigen::MatrixXd> lu(a);
  const Eigen::VectorXd x = lu.solve(b);
  if (!x.allFinite()) fail(Errc::singular_system, "Nystrom system is singular");
  return LinearIeSolution(fi, coupling, rhs,
                          std::vector<double>(x.data(), x.data() + n));
}

LinearIeSolution resolvent_row(const FermiInterval& fi, double coupling, double s) {
  return solve_linear_ie([coupling, s](double k) { return kern(k - s, coupling) / (2.0 * pi); },
                         fi, coupling);
}

LinearIeSolution dressed_phase(const FermiInterval& fi, double coupling, double s) {
  return solve_linear_ie(
      [coupling, s](double k) { return theta_bar(cplx{k - s, 0.0}, coupling).real() / (2.0 * pi); },
      fi, coupling);
}

LinearIeSolution dressed_energy_zero_t(const ModelParams& p, const FermiInterval& fi) {
  const double mu = p.mu;
  return solve_linear_ie([mu](double k) { return k * k - mu; }, fi, p.coupling);
}

namespace {

double eps0_at_boundary(const ModelParams& p, double q, int order) {
  const FermiInterval fi = make_fermi_interval(q, order);
  return dressed_energy_zero_t(p, fi).at(q);
}

}  // namespace

FermiInterval solve_fermi_boundary(const ModelParams& p, int order) {
  p.validate();
  if (!(p.mu > 0.0)) fail(Errc::no_fermi_sea, "mu <= 0: empty ground state");
  if (p.tonks()) return make_fermi_interval(std::sqrt(p.mu), order);
  // eps0(q; q) is negative for small q and grows through zero; bracket then
  // bisect/secant to |eps0(q)| <= 1e-10
  double lo = std::sqrt(p.mu);  // eps0 <= k^2 - mu, so the zero sits at q >= sqrt(mu)
  double glo = eps0_at_boundary(p, lo, order);
  while (glo > 0.0) {  // safety, should not trigger
    lo *= 0.5;
    if (lo < 1e-12) fail(Errc::no_fermi_sea, "failed to bracket the Fermi boundary from below");
    glo = eps0_at_boundary(p, lo, order);
  }
  double hi = lo;
  double ghi = glo;
  for (int i = 0; i < 200 && ghi <= 0.0; ++i) {
    hi *= 1.5;
    ghi = eps0_at_boundary(p, hi, order);
  }
  if (ghi <= 0.0) fail(Errc::no_fermi_sea, "failed to bracket the Fermi boundary from above");
  double q = 0.5 * (lo + hi), g = 0.0;
  for (int i = 0; i < 200; ++i) {
    q = 0.5 * (lo + hi);
    g = eps0_at_boundary(p, q, order);
    if (std::abs(g) <= 1e-12 || hi - lo <= 1e-15 * hi) break;
    (g < 0.0 ? lo : hi) = q;
  }
  if (std::abs(g) > 1e-10)
    fail(Errc::no_convergence, "Fermi boundary bisection left |eps0(q)| = " + std::to_string(g));
  return make_fermi_interval(q, order);
}

GroundStateSummary ground_state_summary(const ModelParams& p, int order) {
  const FermiInterval fi = solve_fermi_boundary(p, order);
  const double c = p.coupling;
  const LinearIeSolution rho =
      solve_linear_ie([](double) { return 1.0 / (2.0 * pi); }, fi, c);
  const LinearIeSolution charge = solve_linear_ie([](double) { return 1.0; }, fi, c);
  // derivative of the dressed energy: same kernel, rhs 2k (boundary terms
  // vanish because eps0(+-q) = 0)
  const LinearIeSolution eps0p = solve_linear_ie([](double k) { return 2.0 * k; }, fi, c);

  GroundStateSummary gs;
  gs.q = fi.q;
  gs.density = rho.integral();
  gs.k_fermi = pi * gs.density;
  gs.rho_at_q = rho.at(fi.q);
  gs.dressed_charge = charge.at(fi.q);
  gs.eps0_prime_at_q = eps0p.at(fi.q);
  gs.fermi_velocity = gs.eps0_prime_at_q / gs.dressed_charge;
  return gs;
}

}  // namespace bose1d
