#pragma once

// Dichotomic spin observables from spherical angles, correlator tables over
// the 26 nonempty monomials of the (3 parties, 2 inputs) scenario, and
// Bell-basis projectors.

#include <array>
#include <cstdint>
#include <span>
#include <string>

#include "gtnl/qlin.hpp"

namespace gtnl::measure {

using qlin::Complex;
using qlin::ComplexMatrix;
using qlin::ComplexVector;
using qlin::DensityMatrix;

enum class BellOutcome : std::uint8_t { PhiPlus, PhiMinus, PsiPlus, PsiMinus };

inline constexpr std::array<BellOutcome, 4> all_bell_outcomes{
    BellOutcome::PhiPlus, BellOutcome::PhiMinus, BellOutcome::PsiPlus,
    BellOutcome::PsiMinus};

const char* to_string(BellOutcome o);

// One correlator monomial: per party, an input index (0 or 1) or absent.
struct Monomial {
  static constexpr std::int8_t absent = -1;
  std::int8_t x = absent;
  std::int8_t y = absent;
  std::int8_t z = absent;

  friend auto operator<=>(const Monomial&, const Monomial&) = default;

  bool empty() const { return x == absent && y == absent && z == absent; }
  // Dense index in [0, 27); 0 is the empty monomial.
  int index() const { return (x + 1) * 9 + (y + 1) * 3 + (z + 1); }
};

// All 26 nonempty monomials, in dense-index order.
std::span<const Monomial> all_monomials();

// Human-readable form like "x1y0" or "z1".
std::string to_string(const Monomial& m);

// Twelve spherical angles defining the six observables
// x0, x1 (party A), y0, y1 (B), z0, z1 (C). Angles are canonicalized into
// [0, 2pi) on construction.
struct MeasurementSetting {
  double theta_a0 = 0, phi_a0 = 0, theta_a1 = 0, phi_a1 = 0;
  double alpha_b0 = 0, beta_b0 = 0, alpha_b1 = 0, beta_b1 = 0;
  double zeta_c0 = 0, eta_c0 = 0, zeta_c1 = 0, eta_c1 = 0;

  MeasurementSetting() = default;
  explicit MeasurementSetting(const std::array<double, 12>& angles);

  std::array<double, 12> to_array() const;
};

// Map from monomial to expectation value. Entries may be set selectively;
// reading an unset entry throws MissingMonomial.
class CorrelatorTable {
 public:
  void set(const Monomial& m, double value);
  double at(const Monomial& m) const;
  bool has(const Monomial& m) const;

 private:
  std::array<double, 27> values_{};
  std::array<bool, 27> present_{};
};

// sin(t)cos(p) sx + sin(t)sin(p) sy + cos(t) sz: Hermitian, traceless,
// eigenvalues +-1.
ComplexMatrix observable(double theta, double phi);

// Rank-1 projector onto the Bell vector in a 2-qubit space.
ComplexMatrix bell_projector(BellOutcome o);
ComplexVector bell_vector(BellOutcome o);

// Precomputes the reduced states of a fixed 3-qubit input so that tables for
// many settings are cheap. Safe for concurrent reads.
class CorrelatorEvaluator {
 public:
  explicit CorrelatorEvaluator(const DensityMatrix& rho);
  CorrelatorTable table(const MeasurementSetting& m) const;

 private:
  ComplexMatrix a_, b_, c_;        // 2x2 single-party marginals
  ComplexMatrix ab_, ac_, bc_;     // 4x4 two-party marginals
  ComplexMatrix abc_;              // the full 8x8 state
};

// All 26 monomials of `rho` under setting `m`.
CorrelatorTable correlators(const DensityMatrix& rho, const MeasurementSetting& m);

}  // namespace gtnl::measure
