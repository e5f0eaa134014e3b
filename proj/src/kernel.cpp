#include "bose1d/kernel.hpp"

#include <cmath>

namespace bose1d {

void KernelParams::validate() const {
  if (!(coupling > 0.0)) fail(Errc::invalid_argument, "kernel coupling must be positive");
}

namespace {
void require_strip(cplx k, double c) {
  if (std::isinf(c)) return;
  if (!(std::abs(k.imag()) < c))
    fail(Errc::domain_error, "momentum leaves the analyticity strip |Im k| < c");
}

// principal branch without the strip guard; analytic off the vertical cuts
// Re z = 0, |Im z| >= c (root-to-root offsets can exceed the strip)
cplx theta_principal(cplx k, double c) {
  if (std::isinf(c)) return {0.0, 0.0};
  const cplx ic{0.0, c};
  return cplx{0.0, 1.0} * std::log((ic + k) / (ic - k));
}

cplx kernel_principal(cplx k, double c) {
  if (std::isinf(c)) return {0.0, 0.0};
  return 2.0 * c / (k * k + c * c);
}

cplx kernel_deriv_principal(cplx k, double c) {
  if (std::isinf(c)) return {0.0, 0.0};
  const cplx d = k * k + c * c;
  return -4.0 * c * k / (d * d);
}
}  // namespace

cplx theta_bar(cplx k, double coupling) {
  if (std::isinf(coupling)) return {0.0, 0.0};
  require_strip(k, coupling);
  const cplx ic{0.0, coupling};
  return cplx{0.0, 1.0} * std::log((ic + k) / (ic - k));
}

cplx lorentzian_kernel(cplx k, double coupling) {
  if (std::isinf(coupling)) return {0.0, 0.0};
  require_strip(k, coupling);
  return 2.0 * coupling / (k * k + coupling * coupling);
}

cplx lorentzian_kernel_deriv(cplx k, double coupling) {
  if (std::isinf(coupling)) return {0.0, 0.0};
  require_strip(k, coupling);
  const cplx d = k * k + coupling * coupling;
  return -4.0 * coupling * k / (d * d);
}

void BetheModel::require_in_strip(cplx k) const {
  if (zero_kernel) return;
  if (!(std::abs(k.imag()) < strip))
    fail(Errc::domain_error, "momentum leaves the analyticity strip");
}

BetheModel gas_model(const ModelParams& p) {
  p.validate();
  const double c = p.coupling;
  const double mu = p.mu;
  BetheModel m;
  m.e0 = [mu](cplx k) { return k * k - mu; };
  m.e0_deriv = [](cplx k) { return 2.0 * k; };
  m.kernel = [c](cplx k) { return kernel_principal(k, c); };
  m.kernel_deriv = [c](cplx k) { return kernel_deriv_principal(k, c); };
  m.phase = [c](cplx k) { return theta_principal(k, c); };
  m.phase_at_inf = std::isinf(c) ? 0.0 : pi;
  m.momentum = [](cplx k) { return k; };
  m.momentum_deriv = [](cplx) { return cplx{1.0, 0.0}; };
  m.kernel_sign = -1.0;
  m.phase_sign = 1.0;
  m.strip = c;
  m.zero_kernel = std::isinf(c);
  return m;
}

}  // namespace bose1d
