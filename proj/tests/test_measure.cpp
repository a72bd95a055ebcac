#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include <cmath>
#include <numbers>
#include <random>

#include "gtnl/measure.hpp"
#include "gtnl/states.hpp"
#include "oracle.hpp"

using namespace gtnl;
using measure::BellOutcome;
using measure::MeasurementSetting;
using measure::Monomial;
using qlin::Complex;
using qlin::ComplexMatrix;

namespace {

constexpr double kPi = std::numbers::pi;

MeasurementSetting random_setting(std::mt19937_64& rng) {
  std::uniform_real_distribution<double> uni(0.0, 2.0 * kPi);
  std::array<double, 12> a{};
  for (double& v : a) v = uni(rng);
  return MeasurementSetting(a);
}

MeasurementSetting all_z() { return MeasurementSetting(); }  // all angles zero

}  // namespace

TEST_CASE("observable special directions") {
  CHECK((measure::observable(0.0, 1.23) - oracle::pauli(3)).cwiseAbs().maxCoeff() < 1e-15);
  CHECK((measure::observable(kPi / 2, 0.0) - oracle::pauli(1)).cwiseAbs().maxCoeff() < 1e-15);
  CHECK((measure::observable(kPi / 2, kPi / 2) - oracle::pauli(2)).cwiseAbs().maxCoeff() <
        1e-15);
}

TEST_CASE("observables are Hermitian involutions with zero trace") {
  std::mt19937_64 rng(3);
  std::uniform_real_distribution<double> uni(0.0, 2.0 * kPi);
  for (int trial = 0; trial < 100; ++trial) {
    const double t = uni(rng), p = uni(rng);
    const ComplexMatrix o = measure::observable(t, p);
    CHECK((o - o.adjoint()).cwiseAbs().maxCoeff() < 1e-14);
    CHECK(std::abs(o.trace()) < 1e-14);
    CHECK((o * o - ComplexMatrix::Identity(2, 2)).cwiseAbs().maxCoeff() < 1e-12);
    CHECK((o - oracle::spin_observable(t, p)).cwiseAbs().maxCoeff() < 1e-13);
  }
}

TEST_CASE("settings are canonicalized into [0, 2pi)") {
  std::array<double, 12> a{};
  a[0] = -kPi / 2;
  a[1] = 7.0 * kPi;
  a[2] = 2.0 * kPi;
  const MeasurementSetting s(a);
  CHECK(s.theta_a0 == doctest::Approx(3.0 * kPi / 2));
  CHECK(s.phi_a0 == doctest::Approx(kPi));
  CHECK(s.theta_a1 == doctest::Approx(0.0));
  for (double v : s.to_array()) {
    CHECK(v >= 0.0);
    CHECK(v < 2.0 * kPi);
  }
  std::array<double, 12> nan_angles{};
  nan_angles[5] = std::nan("");
  CHECK_THROWS_AS((void)MeasurementSetting(nan_angles), std::domain_error);
}

TEST_CASE("bell projectors form an orthonormal resolution") {
  ComplexMatrix sum = ComplexMatrix::Zero(4, 4);
  for (BellOutcome o : measure::all_bell_outcomes) sum += measure::bell_projector(o);
  CHECK((sum - ComplexMatrix::Identity(4, 4)).cwiseAbs().maxCoeff() < 1e-14);

  for (BellOutcome o1 : measure::all_bell_outcomes)
    for (BellOutcome o2 : measure::all_bell_outcomes) {
      const ComplexMatrix prod =
          measure::bell_projector(o1) * measure::bell_projector(o2);
      if (o1 == o2)
        CHECK((prod - measure::bell_projector(o1)).cwiseAbs().maxCoeff() < 1e-14);
      else
        CHECK(prod.cwiseAbs().maxCoeff() < 1e-14);
    }

  Eigen::VectorXcd e01 = Eigen::VectorXcd::Zero(4);
  e01(1) = 1.0;
  const Eigen::VectorXcd projected = measure::bell_projector(BellOutcome::PsiMinus) * e01;
  CHECK(projected.squaredNorm() == doctest::Approx(0.5));
}

TEST_CASE("GHZ correlators under all-z settings") {
  const auto t = measure::correlators(states::make_rho2(1.0), all_z());
  const auto A = Monomial::absent;
  CHECK(t.at({0, A, A}) == doctest::Approx(0.0));
  CHECK(t.at({A, 0, A}) == doctest::Approx(0.0));
  CHECK(t.at({A, A, 1}) == doctest::Approx(0.0));
  CHECK(t.at({0, 0, A}) == doctest::Approx(1.0));
  CHECK(t.at({1, A, 1}) == doctest::Approx(1.0));
  CHECK(t.at({A, 0, 1}) == doctest::Approx(1.0));
  CHECK(t.at({0, 0, 0}) == doctest::Approx(0.0));
  CHECK(t.at({1, 1, 1}) == doctest::Approx(0.0));
}

TEST_CASE("product state |000> under all-z settings gives all ones") {
  ComplexMatrix m = ComplexMatrix::Zero(8, 8);
  m(0, 0) = 1.0;
  const auto t =
      measure::correlators(qlin::DensityMatrix::from_matrix(m), all_z());
  for (const Monomial& mono : measure::all_monomials())
    CHECK(t.at(mono) == doctest::Approx(1.0));
}

TEST_CASE("correlators match the dense-trace reference") {
  std::mt19937_64 rng(2024);
  const auto rho = states::make_rho1(0.1, 0.5);
  const MeasurementSetting s = random_setting(rng);
  const auto t = measure::correlators(rho, s);

  const std::array<ComplexMatrix, 2> xs{oracle::spin_observable(s.theta_a0, s.phi_a0),
                                        oracle::spin_observable(s.theta_a1, s.phi_a1)};
  const std::array<ComplexMatrix, 2> ys{oracle::spin_observable(s.alpha_b0, s.beta_b0),
                                        oracle::spin_observable(s.alpha_b1, s.beta_b1)};
  const std::array<ComplexMatrix, 2> zs{oracle::spin_observable(s.zeta_c0, s.eta_c0),
                                        oracle::spin_observable(s.zeta_c1, s.eta_c1)};
  for (const Monomial& mono : measure::all_monomials()) {
    const double ref = oracle::correlator(rho.matrix(), xs, ys, zs, mono.x, mono.y, mono.z);
    CHECK(t.at(mono) == doctest::Approx(ref).epsilon(1e-12));
  }
}

TEST_CASE("correlators are linear in the state") {
  std::mt19937_64 rng(77);
  for (int trial = 0; trial < 10; ++trial) {
    const auto a = oracle::random_density(rng, 3);
    const auto b = oracle::random_density(rng, 3);
    const double alpha = 0.37;
    const auto mixed = qlin::DensityMatrix::from_matrix(alpha * a + (1 - alpha) * b);
    const MeasurementSetting s = random_setting(rng);
    const auto ta = measure::correlators(qlin::DensityMatrix::from_matrix(a), s);
    const auto tb = measure::correlators(qlin::DensityMatrix::from_matrix(b), s);
    const auto tm = measure::correlators(mixed, s);
    for (const Monomial& mono : measure::all_monomials())
      CHECK(std::abs(tm.at(mono) - (alpha * ta.at(mono) + (1 - alpha) * tb.at(mono))) <
            1e-12);
  }
}

TEST_CASE("correlator values stay within [-1, 1] on random draws") {
  std::mt19937_64 rng(99);
  for (int trial = 0; trial < 1000; ++trial) {
    const auto rho = qlin::DensityMatrix::from_matrix(oracle::random_density(rng, 3));
    const auto t = measure::correlators(rho, random_setting(rng));
    for (const Monomial& mono : measure::all_monomials()) {
      CHECK(t.at(mono) <= 1.0 + 1e-9);
      CHECK(t.at(mono) >= -1.0 - 1e-9);
    }
  }
}

TEST_CASE("reading an unset monomial fails") {
  measure::CorrelatorTable t;
  t.set({0, 0, 0}, 0.5);
  CHECK(t.has({0, 0, 0}));
  CHECK(!t.has({1, 0, 0}));
  CHECK_THROWS_AS((void)t.at({1, 0, 0}), MissingMonomial);
  CHECK_THROWS_AS(t.set({0, 0, 0}, 1.5), std::logic_error);
}
