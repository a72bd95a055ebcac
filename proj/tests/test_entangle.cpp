#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include <cmath>
#include <numbers>
#include <random>

#include "gtnl/bellineq.hpp"
#include "gtnl/entangle.hpp"
#include "gtnl/states.hpp"

using namespace gtnl;
using qlin::Complex;
using states::StateFamily;
using states::StateFamilyParams;
using states::XStateParams;

namespace {

constexpr double kRoot2 = 1.4142135623730951;

Eigen::VectorXcd ket_ghz() {
  Eigen::VectorXcd v = Eigen::VectorXcd::Zero(8);
  v(0) = v(7) = 1.0 / kRoot2;
  return v;
}

}  // namespace

TEST_CASE("x-state concurrence on landmark states") {
  XStateParams ghz;
  ghz.a[0] = ghz.b[0] = 0.5;
  ghz.gamma[0] = 0.5;
  CHECK(entangle::cgm_xstate(ghz) == doctest::Approx(1.0));

  XStateParams diag;
  for (int j = 0; j < 4; ++j) {
    diag.a[j] = 0.125;
    diag.b[j] = 0.125;
  }
  CHECK(entangle::cgm_xstate(diag) == doctest::Approx(0.0));
}

TEST_CASE("rho4 concurrence matches its closed form through extraction") {
  const double t1 = 0.1, t3 = 0.3, p3 = 0.5;
  const double via_x = entangle::cgm_xstate(
      states::extract_x_params(states::make_rho4_closed_form(t1, t3, p3)));
  const double denom =
      std::pow(std::sin(t1), 2) + p3 * std::cos(2 * t1) * std::pow(std::sin(t3), 2);
  const double closed =
      p3 * std::sin(2 * t1) * std::sin(2 * t3) / (2.0 * denom);
  CHECK(via_x == doctest::Approx(closed).epsilon(1e-12));
}

TEST_CASE("pure-state concurrence on landmark states") {
  CHECK(entangle::cgm_pure(ket_ghz()) == doctest::Approx(1.0));

  Eigen::VectorXcd product = Eigen::VectorXcd::Zero(8);
  product(0) = 1.0;
  CHECK(entangle::cgm_pure(product) == doctest::Approx(0.0));

  for (double t : {0.1, 0.3, 0.6}) {
    Eigen::VectorXcd psi_f = Eigen::VectorXcd::Zero(8);
    psi_f(0) = std::cos(t);
    psi_f(7) = std::sin(t);
    CHECK(entangle::cgm_pure(psi_f) == doctest::Approx(std::sin(2 * t)).epsilon(1e-12));
  }

  Eigen::VectorXcd unnormalized = Eigen::VectorXcd::Ones(8);
  CHECK_THROWS_AS((void)entangle::cgm_pure(unnormalized), std::invalid_argument);
}

TEST_CASE("family closed forms at quoted points") {
  StateFamilyParams p;
  p.p2 = 0.7;
  CHECK(entangle::cgm_family(StateFamily::Rho2, p) == doctest::Approx(0.7));
  p = StateFamilyParams{0.4, 0.0, 0, 0, 0};
  CHECK(entangle::cgm_family(StateFamily::Rho1, p) == doctest::Approx(0.0));
  CHECK_THROWS_AS(
      (void)entangle::cgm_family(StateFamily::Rho4, StateFamilyParams{0, 0, 0, 0.2, 0}),
      DegenerateOutcome);
}

TEST_CASE("family closed forms agree with extraction across grids") {
  constexpr double kQuarterPi = std::numbers::pi / 4.0;
  for (int i = 0; i < 6; ++i)
    for (int j = 0; j < 6; ++j)
      for (int k = 0; k < 6; ++k) {
        const StateFamilyParams p{i / 5.0 * kQuarterPi, j / 5.0, j / 5.0,
                                  k / 5.0 * kQuarterPi, j / 5.0};
        CHECK(entangle::cgm_family(StateFamily::Rho1, p) ==
              doctest::Approx(
                  entangle::cgm_xstate(states::extract_x_params(states::make_rho1(
                      p.theta1, p.p1))))
                  .epsilon(1e-10));
        CHECK(entangle::cgm_family(StateFamily::Rho2, p) ==
              doctest::Approx(entangle::cgm_xstate(
                                  states::extract_x_params(states::make_rho2(p.p2))))
                  .epsilon(1e-10));
        CHECK(entangle::cgm_family(StateFamily::Rho3, p) ==
              doctest::Approx(
                  entangle::cgm_xstate(states::extract_x_params(states::make_rho3(
                      p.theta3, p.p3))))
                  .epsilon(1e-10));
        const double denom = std::pow(std::sin(p.theta1), 2) +
                             p.p3 * std::cos(2 * p.theta1) * std::pow(std::sin(p.theta3), 2);
        if (denom > 1e-6)
          CHECK(entangle::cgm_family(StateFamily::Rho4, p) ==
                doctest::Approx(entangle::cgm_xstate(states::extract_x_params(
                                    states::make_rho4_closed_form(p.theta1, p.theta3, p.p3))))
                    .epsilon(1e-10));
      }
}

TEST_CASE("concurrence stays within [0, 1] on random X states") {
  std::mt19937_64 rng(4);
  std::uniform_real_distribution<double> uni(0.0, 1.0);
  for (int trial = 0; trial < 200; ++trial) {
    XStateParams x;
    double sum = 0.0;
    for (int j = 0; j < 4; ++j) {
      x.a[j] = uni(rng);
      x.b[j] = uni(rng);
      sum += x.a[j] + x.b[j];
    }
    for (int j = 0; j < 4; ++j) {
      x.a[j] /= sum;
      x.b[j] /= sum;
      x.gamma[j] = uni(rng) * std::sqrt(x.a[j] * x.b[j]) *
                   std::exp(Complex(0.0, 2 * std::numbers::pi * uni(rng)));
    }
    const double c = entangle::cgm_xstate(x);
    CHECK(c >= 0.0);
    CHECK(c <= 1.0 + 1e-12);
  }
}

TEST_CASE("sine-branch violation is equivalent to concurrence above 1/sqrt2") {
  constexpr double kQuarterPi = std::numbers::pi / 4.0;
  for (int i = 0; i < 8; ++i)
    for (int j = 0; j < 8; ++j)
      for (int k = 0; k < 8; ++k) {
        const StateFamilyParams p{0.03 + i / 7.0 * (kQuarterPi - 0.03), j / 7.0, j / 7.0,
                                  0.03 + k / 7.0 * (kQuarterPi - 0.03), k / 7.0};
        for (StateFamily fam : {StateFamily::Rho1, StateFamily::Rho2, StateFamily::Rho3,
                                StateFamily::Rho4}) {
          const double sine = bellineq::closed_form_B(fam, p).sine;
          const double cgm = entangle::cgm_family(fam, p);
          CHECK((sine > 4.0) == (cgm > 1.0 / kRoot2));
        }
      }
}
