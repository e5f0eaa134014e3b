#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include <cmath>

#include "bose1d/ground_state.hpp"
#include "bose1d/oracles.hpp"
#include "dense_oracle.hpp"

using namespace bose1d;

namespace {
constexpr double kInf = std::numeric_limits<double>::infinity();
}

TEST_CASE("tonks_field_corrlen limits and brute-force agreement") {
  // T -> 0 at mu < 0: integral dies, sqrt(|mu|) survives
  CHECK(tonks_field_corrlen(-1.0, 1e-4) == doctest::Approx(1.0).epsilon(1e-4));

  // adaptive vs 1e6-point trapezoid
  const double a = tonks_field_corrlen(-1.0, 1.0);
  const double b = oracle::tonks_brute(-1.0, 1.0);
  CHECK(std::abs(a - b) <= 1e-8);

  // mu > 0, T -> 0: value -> 0 with slope pi T/(4 sqrt(mu))
  const double t = 1e-3;
  CHECK(tonks_field_corrlen(1.0, t) == doctest::Approx(pi * t / 4.0).epsilon(2e-3));

  // continuity across mu = 0
  const double jump = std::abs(tonks_field_corrlen(1e-4, 0.1) - tonks_field_corrlen(-1e-4, 0.1));
  CHECK(jump < 1e-3);
}

TEST_CASE("cft_prediction closed forms at the free-fermion point") {
  const GroundStateSummary gs = ground_state_summary(ModelParams{kInf, 1.0, 0.1});
  const double T = 0.05;
  const CftPrediction f0 = cft_prediction(gs, Sector::field, 0, T);
  CHECK(std::abs(f0.value - cplx{pi * T / 4.0, 0.0}) <= 1e-12);
  const CftPrediction d1 = cft_prediction(gs, Sector::density, 1, T);
  CHECK(std::abs(d1.value - cplx{pi * T, 2.0}) <= 1e-12);
  const CftPrediction d0 = cft_prediction(gs, Sector::density, 0, T);
  CHECK(std::abs(d0.value - cplx{2.0 * pi * T / 2.0, 0.0}) <= 1e-12);
}

TEST_CASE("cft_prediction at c=2 uses the dressed charge") {
  const GroundStateSummary gs = ground_state_summary(ModelParams{2.0, 1.0, 0.1});
  const double T = 0.01;
  const CftPrediction f0 = cft_prediction(gs, Sector::field, 0, T);
  CHECK(f0.value.real() ==
        doctest::Approx(2.0 * pi * T /
                        (gs.fermi_velocity * 4.0 * gs.dressed_charge * gs.dressed_charge))
            .epsilon(1e-12));
  // the non-oscillating density rate is independent of Z
  const CftPrediction d0 = cft_prediction(gs, Sector::density, 0, T);
  CHECK(d0.value.real() == doctest::Approx(2.0 * pi * T / gs.fermi_velocity).epsilon(1e-12));

  // strictly increasing in T and in l^2
  CHECK(cft_prediction(gs, Sector::field, 0, 2 * T).value.real() > f0.value.real());
  CHECK(cft_prediction(gs, Sector::field, 1, T).value.real() > f0.value.real());
  CHECK(cft_prediction(gs, Sector::density, 2, T).value.real() >
        cft_prediction(gs, Sector::density, 1, T).value.real());
}

TEST_CASE("cft_prediction refuses an empty sea") {
  GroundStateSummary gs;  // zeroed
  CHECK_THROWS_AS(cft_prediction(gs, Sector::field, 0, 0.1), Error);
}
