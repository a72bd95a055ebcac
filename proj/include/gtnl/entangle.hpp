#pragma once

// Genuine multipartite concurrence for tripartite X states and pure states,
// plus the closed forms for the four state families.

#include "gtnl/qlin.hpp"
#include "gtnl/states.hpp"

namespace gtnl::entangle {

// C_GM = 2 max_i { 0, |gamma_i| - w_i } with w_i = sum_{j != i} sqrt(a_j b_j).
double cgm_xstate(const states::XStateParams& x);

// min over the three bipartitions (1|23, 2|13, 3|12) of sqrt(2 (1 - purity)).
// `psi` must be a unit-norm 3-qubit state vector.
double cgm_pure(const qlin::ComplexVector& psi);

// Closed forms: p1 sin(2 theta1), p2, p3 sin(2 theta3), and the swapped
// state's ratio. Throws DegenerateOutcome when rho4's denominator vanishes.
double cgm_family(states::StateFamily family, const states::StateFamilyParams& p);

}  // namespace gtnl::entangle
