#include "gtnl/measure.hpp"

#include <cmath>
#include <numbers>
#include <string>
#include <vector>

namespace gtnl::measure {

namespace {

constexpr double kTwoPi = 2.0 * std::numbers::pi;

double canonical_angle(double a) {
  if (!std::isfinite(a))
    throw std::domain_error("MeasurementSetting: non-finite angle");
  double r = std::fmod(a, kTwoPi);
  if (r < 0.0) r += kTwoPi;
  if (r >= kTwoPi) r = 0.0;  // fmod roundoff at the seam
  return r;
}

// Largest tolerated correlator magnitude; anything beyond this is a bug in
// the caller, not noise.
constexpr double kCorrelatorCeiling = 1.0 + 1e-9;

}  // namespace

const char* to_string(BellOutcome o) {
  switch (o) {
    case BellOutcome::PhiPlus: return "phi+";
    case BellOutcome::PhiMinus: return "phi-";
    case BellOutcome::PsiPlus: return "psi+";
    case BellOutcome::PsiMinus: return "psi-";
  }
  return "?";
}

std::span<const Monomial> all_monomials() {
  static const std::vector<Monomial> table = [] {
    std::vector<Monomial> v;
    for (std::int8_t x = -1; x <= 1; ++x)
      for (std::int8_t y = -1; y <= 1; ++y)
        for (std::int8_t z = -1; z <= 1; ++z) {
          Monomial m{x, y, z};
          if (!m.empty()) v.push_back(m);
        }
    return v;
  }();
  return table;
}

std::string to_string(const Monomial& m) {
  std::string s;
  if (m.x != Monomial::absent) s += "x" + std::to_string(int(m.x));
  if (m.y != Monomial::absent) s += "y" + std::to_string(int(m.y));
  if (m.z != Monomial::absent) s += "z" + std::to_string(int(m.z));
  return s.empty() ? "1" : s;
}

MeasurementSetting::MeasurementSetting(const std::array<double, 12>& v) {
  std::array<double, 12> c{};
  for (size_t i = 0; i < 12; ++i) c[i] = canonical_angle(v[i]);
  theta_a0 = c[0]; phi_a0 = c[1]; theta_a1 = c[2]; phi_a1 = c[3];
  alpha_b0 = c[4]; beta_b0 = c[5]; alpha_b1 = c[6]; beta_b1 = c[7];
  zeta_c0 = c[8]; eta_c0 = c[9]; zeta_c1 = c[10]; eta_c1 = c[11];
}

std::array<double, 12> MeasurementSetting::to_array() const {
  return {theta_a0, phi_a0, theta_a1, phi_a1, alpha_b0, beta_b0,
          alpha_b1, beta_b1, zeta_c0, eta_c0, zeta_c1, eta_c1};
}

void CorrelatorTable::set(const Monomial& m, double value) {
  if (m.empty()) throw std::invalid_argument("CorrelatorTable: empty monomial");
  if (std::abs(value) > kCorrelatorCeiling)
    throw std::logic_error("CorrelatorTable: value " + std::to_string(value) +
                           " outside [-1, 1] for " + to_string(m));
  values_[static_cast<size_t>(m.index())] = value;
  present_[static_cast<size_t>(m.index())] = true;
}

double CorrelatorTable::at(const Monomial& m) const {
  if (m.empty() || !present_[static_cast<size_t>(m.index())])
    throw MissingMonomial("no value for monomial " + to_string(m));
  return values_[static_cast<size_t>(m.index())];
}

bool CorrelatorTable::has(const Monomial& m) const {
  return !m.empty() && present_[static_cast<size_t>(m.index())];
}

ComplexMatrix observable(double theta, double phi) {
  const double st = std::sin(theta), ct = std::cos(theta);
  ComplexMatrix o(2, 2);
  o(0, 0) = ct;
  o(0, 1) = st * std::exp(Complex{0.0, -phi});
  o(1, 0) = st * std::exp(Complex{0.0, phi});
  o(1, 1) = -ct;
  return o;
}

ComplexVector bell_vector(BellOutcome o) {
  const double r = 1.0 / std::sqrt(2.0);
  ComplexVector v = ComplexVector::Zero(4);
  switch (o) {
    case BellOutcome::PhiPlus: v(0) = r; v(3) = r; break;
    case BellOutcome::PhiMinus: v(0) = r; v(3) = -r; break;
    case BellOutcome::PsiPlus: v(1) = r; v(2) = r; break;
    case BellOutcome::PsiMinus: v(1) = r; v(2) = -r; break;
  }
  return v;
}

ComplexMatrix bell_projector(BellOutcome o) {
  const ComplexVector v = bell_vector(o);
  return v * v.adjoint();
}

CorrelatorEvaluator::CorrelatorEvaluator(const DensityMatrix& rho) {
  if (rho.qubits() != 3)
    throw std::invalid_argument("CorrelatorEvaluator: expected a 3-qubit state");
  a_ = qlin::partial_trace(rho, {0}).matrix();
  b_ = qlin::partial_trace(rho, {1}).matrix();
  c_ = qlin::partial_trace(rho, {2}).matrix();
  ab_ = qlin::partial_trace(rho, {0, 1}).matrix();
  ac_ = qlin::partial_trace(rho, {0, 2}).matrix();
  bc_ = qlin::partial_trace(rho, {1, 2}).matrix();
  abc_ = rho.matrix();
}

namespace {

double expect1(const ComplexMatrix& rho, const ComplexMatrix& o) {
  Complex acc{0, 0};
  for (int i = 0; i < 2; ++i)
    for (int j = 0; j < 2; ++j) acc += rho(i, j) * o(j, i);
  return acc.real();
}

double expect2(const ComplexMatrix& rho, const ComplexMatrix& o1, const ComplexMatrix& o2) {
  Complex acc{0, 0};
  for (int a = 0; a < 2; ++a)
    for (int b = 0; b < 2; ++b)
      for (int a2 = 0; a2 < 2; ++a2)
        for (int b2 = 0; b2 < 2; ++b2)
          acc += rho(2 * a + b, 2 * a2 + b2) * o1(a2, a) * o2(b2, b);
  return acc.real();
}

double expect3(const ComplexMatrix& rho, const ComplexMatrix& o1, const ComplexMatrix& o2,
               const ComplexMatrix& o3) {
  Complex acc{0, 0};
  for (int a = 0; a < 2; ++a)
    for (int b = 0; b < 2; ++b)
      for (int c = 0; c < 2; ++c)
        for (int a2 = 0; a2 < 2; ++a2)
          for (int b2 = 0; b2 < 2; ++b2)
            for (int c2 = 0; c2 < 2; ++c2)
              acc += rho(4 * a + 2 * b + c, 4 * a2 + 2 * b2 + c2) * o1(a2, a) *
                     o2(b2, b) * o3(c2, c);
  return acc.real();
}

}  // namespace

CorrelatorTable CorrelatorEvaluator::table(const MeasurementSetting& m) const {
  const std::array<ComplexMatrix, 2> xs{observable(m.theta_a0, m.phi_a0),
                                        observable(m.theta_a1, m.phi_a1)};
  const std::array<ComplexMatrix, 2> ys{observable(m.alpha_b0, m.beta_b0),
                                        observable(m.alpha_b1, m.beta_b1)};
  const std::array<ComplexMatrix, 2> zs{observable(m.zeta_c0, m.eta_c0),
                                        observable(m.zeta_c1, m.eta_c1)};

  CorrelatorTable t;
  for (const Monomial& mono : all_monomials()) {
    const bool hx = mono.x != Monomial::absent;
    const bool hy = mono.y != Monomial::absent;
    const bool hz = mono.z != Monomial::absent;
    double v = 0.0;
    if (hx && hy && hz)
      v = expect3(abc_, xs[size_t(mono.x)], ys[size_t(mono.y)], zs[size_t(mono.z)]);
    else if (hx && hy)
      v = expect2(ab_, xs[size_t(mono.x)], ys[size_t(mono.y)]);
    else if (hx && hz)
      v = expect2(ac_, xs[size_t(mono.x)], zs[size_t(mono.z)]);
    else if (hy && hz)
      v = expect2(bc_, ys[size_t(mono.y)], zs[size_t(mono.z)]);
    else if (hx)
      v = expect1(a_, xs[size_t(mono.x)]);
    else if (hy)
      v = expect1(b_, ys[size_t(mono.y)]);
    else
      v = expect1(c_, zs[size_t(mono.z)]);
    t.set(mono, v);
  }
  return t;
}

CorrelatorTable correlators(const DensityMatrix& rho, const MeasurementSetting& m) {
  return CorrelatorEvaluator(rho).table(m);
}

}  // namespace gtnl::measure
