#include "gtnl/entangle.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <string>

namespace gtnl::entangle {

double cgm_xstate(const states::XStateParams& x) {
  x.validate();
  std::array<double, 4> root_ab{};
  for (int j = 0; j < 4; ++j) root_ab[j] = std::sqrt(x.a[j] * x.b[j]);
  double best = 0.0;
  for (int i = 0; i < 4; ++i) {
    double w = 0.0;
    for (int j = 0; j < 4; ++j)
      if (j != i) w += root_ab[j];
    best = std::max(best, std::abs(x.gamma[i]) - w);
  }
  return 2.0 * best;
}

double cgm_pure(const qlin::ComplexVector& psi) {
  if (psi.size() != 8)
    throw std::invalid_argument("cgm_pure: expected a 3-qubit state vector");
  const double norm = psi.norm();
  if (std::abs(norm - 1.0) > qlin::tol.trace_unity)
    throw std::invalid_argument("cgm_pure: vector norm " + std::to_string(norm) +
                                " differs from 1");
  const auto rho = qlin::DensityMatrix::from_matrix(psi * psi.adjoint());
  double cmin = std::numeric_limits<double>::infinity();
  for (int q = 0; q < 3; ++q) {
    const auto reduced = qlin::partial_trace(rho, {q}).matrix();
    const double purity = (reduced * reduced).trace().real();
    cmin = std::min(cmin, std::sqrt(std::max(0.0, 2.0 * (1.0 - purity))));
  }
  return cmin;
}

double cgm_family(states::StateFamily family, const states::StateFamilyParams& p) {
  p.validate();
  switch (family) {
    case states::StateFamily::Rho1: return p.p1 * std::sin(2.0 * p.theta1);
    case states::StateFamily::Rho2: return p.p2;
    case states::StateFamily::Rho3: return p.p3 * std::sin(2.0 * p.theta3);
    case states::StateFamily::Rho4: {
      const double s1sq = std::pow(std::sin(p.theta1), 2);
      const double s3sq = std::pow(std::sin(p.theta3), 2);
      const double denom = s1sq + p.p3 * std::cos(2.0 * p.theta1) * s3sq;
      if (denom < 1e-14)
        throw DegenerateOutcome("cgm_family(rho4): vanishing denominator");
      return p.p3 * std::sin(2.0 * p.theta1) * std::sin(2.0 * p.theta3) /
             (2.0 * denom);
    }
  }
  throw std::logic_error("cgm_family: bad enum");
}

}  // namespace gtnl::entangle
