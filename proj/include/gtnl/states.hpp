#pragma once

// Constructors for the three tripartite mixed-state families, the swapped
// final state in closed form, and X-state parameter extraction. Basis order
// is lexicographic: |000>, |001>, ..., |111>.

#include <array>

#include "gtnl/qlin.hpp"

namespace gtnl::states {

using qlin::Complex;
using qlin::ComplexMatrix;
using qlin::ComplexVector;
using qlin::DensityMatrix;

enum class StateFamily { Rho1, Rho2, Rho3, Rho4 };

// The five scalars parameterizing the three input families (and through
// them the swapped output). Angles in radians.
struct StateFamilyParams {
  double theta1 = 0.0;  // in [0, pi/4]
  double p1 = 0.0;      // in [0, 1]
  double p2 = 0.0;      // in [0, 1]
  double theta3 = 0.0;  // in [0, pi/4]
  double p3 = 0.0;      // in [0, 1]

  void validate() const;  // throws std::domain_error on range violation
};

// Entries of a tripartite X-shaped density matrix: diagonal (a_j, b_j) and
// anti-diagonal coherences gamma_j, j = 1..4, labeled from the outermost
// anti-diagonal pair inward: gamma_1 couples |000> and |111>.
struct XStateParams {
  std::array<double, 4> a{};
  std::array<double, 4> b{};
  std::array<Complex, 4> gamma{};

  void validate() const;
};

// rho_1 = p1 |psi_f><psi_f| + (1-p1) |001><001|,
// |psi_f> = cos(theta1)|000> + sin(theta1)|111>.
DensityMatrix make_rho1(double theta1, double p1);

// rho_2 = p2 |psi_m><psi_m| + (1-p2) |010><010|, |psi_m> = (|000>+|111>)/sqrt2.
DensityMatrix make_rho2(double p2);

// rho_3 = p3 |psi_l><psi_l| + (1-p3) |100><100|,
// |psi_l> = sin(theta3)|000> + cos(theta3)|111>.
DensityMatrix make_rho3(double theta3, double p3);

// Swapped output for the psi-minus outcome triple:
//   rho_4 = (p3 |phi><phi| + (1-p3) sin^2(theta1) |100><100|) / d,
//   |phi>  = cos(theta1)sin(theta3)|000> + sin(theta1)cos(theta3)|111>,
//   d      = sin^2(theta1) + p3 cos(2 theta1) sin^2(theta3).
// Independent of p1 and p2. Throws DegenerateOutcome when d vanishes.
DensityMatrix make_rho4_closed_form(double theta1, double theta3, double p3);

// Dispatch on family, reading the relevant scalars from `p`.
DensityMatrix make_family(StateFamily family, const StateFamilyParams& p);

// Assemble a density matrix from X-state entries (inverse of extract).
DensityMatrix make_x_state(const XStateParams& x);

// Read (a, b, gamma) off a 3-qubit X-shaped matrix. Throws NotXState when
// any entry off the two diagonals exceeds tol.x_pattern in magnitude.
XStateParams extract_x_params(const DensityMatrix& rho);

}  // namespace gtnl::states
