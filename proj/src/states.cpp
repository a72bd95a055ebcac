#include "gtnl/states.hpp"

#include <cmath>
#include <numbers>
#include <string>

namespace gtnl::states {

namespace {

constexpr double kQuarterPi = std::numbers::pi / 4.0;

void check_range(double v, double lo, double hi, const char* name) {
  if (!(v >= lo && v <= hi))
    throw std::domain_error(std::string(name) + " = " + std::to_string(v) +
                            " outside [" + std::to_string(lo) + ", " +
                            std::to_string(hi) + "]");
}

// Mixture of a rank-1 projector onto c0|000> + c7|111> with a basis projector.
DensityMatrix ghz_like_mixture(double c0, double c7, double weight, int basis_index) {
  ComplexMatrix m = ComplexMatrix::Zero(8, 8);
  m(0, 0) = weight * c0 * c0;
  m(7, 7) = weight * c7 * c7;
  m(0, 7) = weight * c0 * c7;
  m(7, 0) = weight * c0 * c7;
  m(basis_index, basis_index) += 1.0 - weight;
  return DensityMatrix::from_matrix(std::move(m));
}

}  // namespace

void StateFamilyParams::validate() const {
  check_range(theta1, 0.0, kQuarterPi, "theta1");
  check_range(p1, 0.0, 1.0, "p1");
  check_range(p2, 0.0, 1.0, "p2");
  check_range(theta3, 0.0, kQuarterPi, "theta3");
  check_range(p3, 0.0, 1.0, "p3");
}

void XStateParams::validate() const {
  double sum = 0.0;
  for (int j = 0; j < 4; ++j) {
    if (a[j] < 0.0 || b[j] < 0.0)
      throw std::domain_error("XStateParams: negative diagonal entry");
    sum += a[j] + b[j];
  }
  if (std::abs(sum - 1.0) > qlin::tol.trace_unity)
    throw std::domain_error("XStateParams: diagonal sums to " + std::to_string(sum));
  for (int j = 0; j < 4; ++j) {
    if (std::abs(gamma[j]) > std::sqrt(a[j] * b[j]) + qlin::tol.psd_floor)
      throw std::domain_error("XStateParams: |gamma_" + std::to_string(j + 1) +
                              "| exceeds sqrt(a b)");
  }
}

DensityMatrix make_rho1(double theta1, double p1) {
  check_range(theta1, 0.0, kQuarterPi, "theta1");
  check_range(p1, 0.0, 1.0, "p1");
  return ghz_like_mixture(std::cos(theta1), std::sin(theta1), p1, /*|001>*/ 1);
}

DensityMatrix make_rho2(double p2) {
  check_range(p2, 0.0, 1.0, "p2");
  const double r = 1.0 / std::sqrt(2.0);
  return ghz_like_mixture(r, r, p2, /*|010>*/ 2);
}

DensityMatrix make_rho3(double theta3, double p3) {
  check_range(theta3, 0.0, kQuarterPi, "theta3");
  check_range(p3, 0.0, 1.0, "p3");
  return ghz_like_mixture(std::sin(theta3), std::cos(theta3), p3, /*|100>*/ 4);
}

DensityMatrix make_rho4_closed_form(double theta1, double theta3, double p3) {
  check_range(theta1, 0.0, kQuarterPi, "theta1");
  check_range(theta3, 0.0, kQuarterPi, "theta3");
  check_range(p3, 0.0, 1.0, "p3");

  const double s1 = std::sin(theta1), c1 = std::cos(theta1);
  const double s3 = std::sin(theta3), c3 = std::cos(theta3);
  const double denom = s1 * s1 + p3 * std::cos(2.0 * theta1) * s3 * s3;
  if (denom < 1e-14)
    throw DegenerateOutcome("rho4: post-selected event has probability 0 (denominator " +
                            std::to_string(denom) + ")");

  const double phi0 = c1 * s3;  // |000> amplitude of |phi> (unnormalized)
  const double phi7 = s1 * c3;  // |111> amplitude
  ComplexMatrix m = ComplexMatrix::Zero(8, 8);
  m(0, 0) = p3 * phi0 * phi0;
  m(7, 7) = p3 * phi7 * phi7;
  m(0, 7) = p3 * phi0 * phi7;
  m(7, 0) = p3 * phi0 * phi7;
  m(4, 4) = (1.0 - p3) * s1 * s1;  // |100><100|
  m /= denom;
  return DensityMatrix::from_matrix(std::move(m));
}

DensityMatrix make_family(StateFamily family, const StateFamilyParams& p) {
  p.validate();
  switch (family) {
    case StateFamily::Rho1: return make_rho1(p.theta1, p.p1);
    case StateFamily::Rho2: return make_rho2(p.p2);
    case StateFamily::Rho3: return make_rho3(p.theta3, p.p3);
    case StateFamily::Rho4: return make_rho4_closed_form(p.theta1, p.theta3, p.p3);
  }
  throw std::logic_error("make_family: bad enum");
}

DensityMatrix make_x_state(const XStateParams& x) {
  x.validate();
  ComplexMatrix m = ComplexMatrix::Zero(8, 8);
  for (int j = 0; j < 4; ++j) {
    m(j, j) = x.a[j];
    m(7 - j, 7 - j) = x.b[j];
    m(j, 7 - j) = x.gamma[j];
    m(7 - j, j) = std::conj(x.gamma[j]);
  }
  return DensityMatrix::from_matrix(std::move(m));
}

XStateParams extract_x_params(const DensityMatrix& rho) {
  if (rho.qubits() != 3)
    throw std::invalid_argument("extract_x_params: expected a 3-qubit state");
  const ComplexMatrix& m = rho.matrix();
  for (int i = 0; i < 8; ++i) {
    for (int j = 0; j < 8; ++j) {
      if (i == j || i + j == 7) continue;
      if (std::abs(m(i, j)) > qlin::tol.x_pattern)
        throw NotXState("entry (" + std::to_string(i) + "," + std::to_string(j) +
                        ") has magnitude " + std::to_string(std::abs(m(i, j))));
    }
  }
  XStateParams x;
  for (int j = 0; j < 4; ++j) {
    x.a[j] = m(j, j).real();
    x.b[j] = m(7 - j, 7 - j).real();
    x.gamma[j] = m(j, 7 - j);
  }
  x.validate();
  return x;
}

}  // namespace gtnl::states
