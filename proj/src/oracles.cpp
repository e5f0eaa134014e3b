#include "bose1d/oracles.hpp"

#include <gsl/gsl_errno.h>
#include <gsl/gsl_integration.h>

#include <cmath>
#include <mutex>

namespace bose1d {

namespace {

struct Integrand {
  double mu, T;
};

// log[(e^w + 1)/(e^w - 1)] = log(coth(w/2)), w = (k^2 - mu)/T
double coth_log(double k, void* params) {
  const Integrand* p = static_cast<Integrand*>(params);
  const double w = (k * k - p->mu) / p->T;
  const double aw = std::abs(w);
  // log|coth(w/2)| = -log|tanh(w/2)|, stable for large |w|
  return -std::log(std::abs(std::tanh(0.5 * aw)));
}

void ensure_gsl_quiet() {
  static std::once_flag once;
  std::call_once(once, [] { gsl_set_error_handler_off(); });
}

double qags(gsl_function* f, double a, double b, gsl_integration_workspace* ws) {
  double result = 0.0, abserr = 0.0;
  const int status =
      gsl_integration_qags(f, a, b, 1e-12, 1e-12, 4096, ws, &result, &abserr);
  if (status != 0 && abserr > 1e-10)
    fail(Errc::quadrature_failure, "adaptive quadrature failed, err " + std::to_string(abserr));
  return result;
}

}  // namespace

double tonks_field_corrlen(double mu, double T) {
  if (!(T > 0.0)) fail(Errc::invalid_argument, "temperature must be positive");
  ensure_gsl_quiet();
  Integrand p{mu, T};
  gsl_function f;
  f.function = &coth_log;
  f.params = &p;
  gsl_integration_workspace* ws = gsl_integration_workspace_alloc(4096);
  // integrand decays like 2 e^{-(k^2-mu)/T}; cut where it reaches 1e-18
  const double kmax = std::sqrt(std::max(mu, 0.0) + 42.0 * T) + 1.0;
  double integral = 0.0;
  if (mu > 0.0) {
    const double s = std::sqrt(mu);
    integral = qags(&f, 0.0, s, ws) + qags(&f, s, kmax, ws);
  } else {
    integral = qags(&f, 0.0, kmax, ws);
  }
  gsl_integration_workspace_free(ws);
  double value = integral / pi;  // even integrand: 2/(2 pi)
  if (mu < 0.0) value += std::sqrt(-mu);
  return value;
}

CftPrediction cft_prediction(const GroundStateSummary& gs, Sector sector, int l, double T) {
  if (!(gs.q > 0.0) || !(gs.fermi_velocity > 0.0))
    fail(Errc::invalid_argument, "CFT prediction needs a valid Fermi sea (mu > 0)");
  if (!(T > 0.0)) fail(Errc::invalid_argument, "temperature must be positive");
  const double z = gs.dressed_charge;
  const double rate = 2.0 * pi * T / gs.fermi_velocity;
  CftPrediction out;
  out.sector = sector;
  out.winding = l;
  switch (sector) {
    case Sector::field:
      out.value = cplx{rate * (1.0 / (4.0 * z * z) + l * l * z * z), 2.0 * l * gs.k_fermi};
      break;
    case Sector::density:
    case Sector::genfunc:
      if (l == 0)
        out.value = cplx{rate, 0.0};  // particle-hole term, decay of 1/sinh^2
      else
        out.value = cplx{rate * l * l * z * z, 2.0 * l * gs.k_fermi};
      break;
  }
  return out;
}

}  // namespace bose1d
