#include "bose1d/unwrap.hpp"

#include <cmath>

namespace bose1d {

cplx log1p_exp(cplx z) {
  // log(1 + e^z) without overflow; value is one branch of the multi-log,
  // continuity is restored by the unwrap pass.
  if (z.real() < 0.0) {
    return std::log(1.0 + std::exp(z));
  }
  return z + std::log(1.0 + std::exp(-z));
}

std::vector<cplx> unwrap_from(std::span<const cplx> raw, double seed_im, double jump_guard) {
  std::vector<cplx> out(raw.size());
  double prev = seed_im;
  for (size_t i = 0; i < raw.size(); ++i) {
    double im = raw[i].imag();
    double d = im - prev;
    d -= 2.0 * pi * std::round(d / (2.0 * pi));
    if (std::abs(d) > jump_guard)
      fail(Errc::winding_ambiguity,
           "imaginary jump of " + std::to_string(d) + " between adjacent nodes (index " +
               std::to_string(i) + "); zero too close to the contour for this grid");
    prev += d;
    out[i] = cplx{raw[i].real(), prev};
  }
  return out;
}

SampledFn branch_continuous_log(const SampledFn& f, double jump_guard) {
  for (const cplx& v : f.values)
    if (v == cplx{0.0, 0.0}) fail(Errc::domain_error, "log of a vanishing sample");
  std::vector<cplx> raw(f.values.size());
  for (size_t i = 0; i < raw.size(); ++i) raw[i] = std::log(f.values[i]);
  SampledFn out(f.grid);
  out.values = unwrap_from(raw, raw.empty() ? 0.0 : raw.front().imag(), jump_guard);
  out.tail_minus = out.values.front();
  out.tail_plus = out.values.back();
  return out;
}

std::vector<cplx> occupation_log(std::span<const cplx> aux, double T, double jump_guard) {
  std::vector<cplx> raw(aux.size());
  for (size_t i = 0; i < aux.size(); ++i) raw[i] = log1p_exp(-aux[i] / T);
  return unwrap_from(raw, raw.empty() ? 0.0 : raw.front().imag(), jump_guard);
}

}  // namespace bose1d
