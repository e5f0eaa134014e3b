#pragma once

#include <functional>
#include <vector>

#include "bose1d/types.hpp"

namespace bose1d {

// Gauss-Legendre rule on [-q, q].
struct FermiInterval {
  double q = 0.0;
  int order = 64;
  std::vector<double> nodes;
  std::vector<double> weights;
};

FermiInterval make_fermi_interval(double q, int order = 64);

// Nystrom solution of  f(k) - (1/2pi) int_{-q}^{q} K(k-k') f(k') dk' = rhs(k)
// with the Lieb-Liniger kernel (second-kind Fredholm, gas sign).
// at() is the natural Nystrom interpolation, valid for any real k.
class LinearIeSolution {
 public:
  LinearIeSolution(FermiInterval fi, double coupling,
                   std::function<double(double)> rhs, std::vector<double> values);

  const FermiInterval& interval() const { return fi_; }
  const std::vector<double>& values() const { return values_; }
  double at(double k) const;
  double integral() const;  // int_{-q}^{q} f

 private:
  FermiInterval fi_;
  double coupling_;
  std::function<double(double)> rhs_;
  std::vector<double> values_;
};

LinearIeSolution solve_linear_ie(const std::function<double(double)>& rhs,
                                 const FermiInterval& fi, double coupling);

// Resolvent row R(., s) of (I - K/2pi)^{-1} = I + R:
// R(k, s) - (1/2pi) int K(k-k') R(k', s) dk' = K(k-s)/2pi.
LinearIeSolution resolvent_row(const FermiInterval& fi, double coupling, double s);

// Dressed phase F(.|s): same equation with rhs theta(k-s)/2pi.
LinearIeSolution dressed_phase(const FermiInterval& fi, double coupling, double s);

// Fermi boundary from eps0(+-q) = 0; requires mu > 0 (no_fermi_sea otherwise).
FermiInterval solve_fermi_boundary(const ModelParams& p, int order = 64);

struct GroundStateSummary {
  double q = 0.0;              // Fermi boundary
  double density = 0.0;        // D = int rho
  double k_fermi = 0.0;        // pi * D
  double rho_at_q = 0.0;
  double dressed_charge = 0.0; // Z = Z(q)
  double eps0_prime_at_q = 0.0;
  double fermi_velocity = 0.0; // eps0'(q) / Z
};

GroundStateSummary ground_state_summary(const ModelParams& p, int order = 64);

// Zero-temperature dressed energy eps0 on [-q, q] (kernel vanishes for the
// impenetrable gas, where eps0 = k^2 - mu exactly).
LinearIeSolution dressed_energy_zero_t(const ModelParams& p, const FermiInterval& fi);

}  // namespace bose1d
