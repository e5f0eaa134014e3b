#include "bose1d/convolution.hpp"

#include <fftw3.h>

#include <cmath>
#include <cstring>
#include <mutex>

namespace bose1d {

namespace {
// fftw planning is not thread-safe; execution on private buffers is.
std::mutex& plan_mutex() {
  static std::mutex m;
  return m;
}
}  // namespace

struct Convolver::Impl {
  int padded = 0;
  fftw_complex* buf = nullptr;
  fftw_plan fwd{};
  fftw_plan bwd{};
  std::vector<cplx> kernel_fft;

  ~Impl() {
    std::lock_guard<std::mutex> lock(plan_mutex());
    if (fwd) fftw_destroy_plan(fwd);
    if (bwd) fftw_destroy_plan(bwd);
    if (buf) fftw_free(buf);
  }
};

Convolver::Convolver(const Grid& grid, const BetheModel& model)
    : grid_(grid), model_(&model), impl_(std::make_unique<Impl>()) {
  const int m = grid.points;
  const int p = 2 * m;
  impl_->padded = p;
  {
    std::lock_guard<std::mutex> lock(plan_mutex());
    impl_->buf = fftw_alloc_complex(p);
    impl_->fwd = fftw_plan_dft_1d(p, impl_->buf, impl_->buf, FFTW_FORWARD, FFTW_ESTIMATE);
    impl_->bwd = fftw_plan_dft_1d(p, impl_->buf, impl_->buf, FFTW_BACKWARD, FFTW_ESTIMATE);
  }
  if (model.zero_kernel) return;
  // kernel sampled analytically at circular offsets n*h, n in (-m, m)
  const double h = grid.spacing();
  std::vector<cplx> ker(p, cplx{0.0, 0.0});
  for (int n = -(m - 1); n <= m - 1; ++n) {
    const int idx = (n + p) % p;
    ker[idx] = model.kernel(cplx{n * h, 0.0});
  }
  std::memcpy(impl_->buf, ker.data(), sizeof(cplx) * p);
  fftw_execute(impl_->fwd);
  impl_->kernel_fft.assign(reinterpret_cast<cplx*>(impl_->buf),
                           reinterpret_cast<cplx*>(impl_->buf) + p);
}

Convolver::~Convolver() = default;

std::vector<cplx> Convolver::apply(const SampledFn& L) const {
  if (!(L.grid == grid_)) fail(Errc::grid_mismatch, "convolver grid mismatch");
  const int m = grid_.points;
  std::vector<cplx> out(m, cplx{0.0, 0.0});
  const double inv2pi = 1.0 / (2.0 * pi);
  if (!model_->zero_kernel) {
    const int p = impl_->padded;
    const double h = grid_.spacing();
    cplx* b = reinterpret_cast<cplx*>(impl_->buf);
    for (int j = 0; j < m; ++j) {
      const double w = (j == 0 || j == m - 1) ? 0.5 * h : h;
      b[j] = L.values[j] * w;
    }
    std::fill(b + m, b + p, cplx{0.0, 0.0});
    fftw_execute(impl_->fwd);
    for (int j = 0; j < p; ++j) b[j] *= impl_->kernel_fft[j] / double(p);
    fftw_execute(impl_->bwd);
    for (int i = 0; i < m; ++i) out[i] = b[i] * inv2pi;
    // declared-tail corrections plus the Euler-Maclaurin edge term of the
    // trapezoid (the integrand approaches K(k-k') * tail at the edges)
    const double th_inf = model_->phase_at_inf;
    const double lam = grid_.half_width;
    if (L.tail_minus != cplx{0.0, 0.0} || L.tail_plus != cplx{0.0, 0.0}) {
      const double em = h * h / 12.0;
      for (int i = 0; i < m; ++i) {
        const cplx k{grid_.node(i), 0.0};
        out[i] += inv2pi * L.tail_minus * (th_inf - model_->phase(k + lam));
        out[i] += inv2pi * L.tail_plus * (th_inf + model_->phase(k - lam));
        out[i] += inv2pi * em *
                  (model_->kernel_deriv(k - lam) * L.tail_plus -
                   model_->kernel_deriv(k + lam) * L.tail_minus);
      }
    }
  }
  return out;
}

cplx Convolver::apply_at(const SampledFn& L, cplx k) const {
  if (!(L.grid == grid_)) fail(Errc::grid_mismatch, "convolver grid mismatch");
  if (model_->zero_kernel) return {0.0, 0.0};
  model_->require_in_strip(k);
  const int m = grid_.points;
  const double h = grid_.spacing();
  cplx acc{0.0, 0.0};
  for (int j = 0; j < m; ++j) {
    const double w = (j == 0 || j == m - 1) ? 0.5 * h : h;
    acc += model_->kernel(k - grid_.node(j)) * w * L.values[j];
  }
  const double lam = grid_.half_width;
  acc += L.tail_minus * (model_->phase_at_inf - model_->phase(k + lam));
  acc += L.tail_plus * (model_->phase_at_inf + model_->phase(k - lam));
  return acc / (2.0 * pi);
}

cplx Convolver::apply_deriv_at(const SampledFn& L, cplx k) const {
  if (!(L.grid == grid_)) fail(Errc::grid_mismatch, "convolver grid mismatch");
  if (model_->zero_kernel) return {0.0, 0.0};
  model_->require_in_strip(k);
  const int m = grid_.points;
  const double h = grid_.spacing();
  cplx acc{0.0, 0.0};
  for (int j = 0; j < m; ++j) {
    const double w = (j == 0 || j == m - 1) ? 0.5 * h : h;
    acc += model_->kernel_deriv(k - grid_.node(j)) * w * L.values[j];
  }
  const double lam = grid_.half_width;
  acc += L.tail_minus * (-model_->kernel(k + lam));
  acc += L.tail_plus * model_->kernel(k - lam);
  return acc / (2.0 * pi);
}

SampledFn convolve(const SampledFn& L, const KernelParams& kp, double tail_tol) {
  kp.validate();
  L.check_tails(tail_tol);
  ModelParams p;
  p.coupling = kp.coupling;
  p.mu = 0.0;
  p.T = 1.0;
  const BetheModel model = gas_model(p);
  Convolver conv(L.grid, model);
  SampledFn out(L.grid);
  out.values = conv.apply(L);
  // a Lorentzian smeared constant tail stays a constant tail
  out.tail_minus = L.tail_minus;
  out.tail_plus = L.tail_plus;
  return out;
}

}  // namespace bose1d
