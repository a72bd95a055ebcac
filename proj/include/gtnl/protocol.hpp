#pragma once

// The preparation stage of the sequential measurement protocol: three
// tripartite inputs, one Bell-basis measurement per party on a pair of its
// qubits, post-selection on the joint outcome, and a phase-correcting local
// unitary on the first party's kept qubit. Also the diagonal local filters.
//
// The nine qubits are ordered internally as
//   (rho1.1 rho1.2 rho1.3  rho2.1 rho2.2 rho2.3  rho3.1 rho3.2 rho3.3)
// with indices 0..8; SmpWiring holds which pairs are measured and which
// qubit each party keeps, in that internal numbering.

#include <array>
#include <map>
#include <utility>

#include "gtnl/measure.hpp"
#include "gtnl/qlin.hpp"

namespace gtnl::protocol {

using measure::BellOutcome;
using qlin::ComplexMatrix;
using qlin::DensityMatrix;

struct SmpWiring {
  // measured[i] = the ordered qubit pair party A_{i+1} projects onto the
  // Bell basis; kept[i] = the qubit it keeps.
  std::array<std::pair<int, int>, 3> measured;
  std::array<int, 3> kept;

  // The canonical wiring: A1 measures (rho2.3, rho3.1) and keeps rho1.1;
  // A2 measures (rho1.2, rho2.1) and keeps rho3.2; A3 measures (rho1.3,
  // rho2.2) and keeps rho3.3.
  static SmpWiring canonical();

  // The six measured and three kept qubits must partition 0..8.
  void validate() const;
};

// Filtering parameters: F_j = diag(eps_j, 1) on party j.
struct FilterParams {
  double eps1 = 1.0;
  double eps2 = 1.0;
  double eps3 = 1.0;

  void validate() const;  // each in [0, 1]
};

// Projects each measured pair of rho1 x rho2 x rho3 onto its Bell outcome,
// discards the measured qubits, renormalizes, and applies the phase
// correction: a diag(1, e^{-i chi}) on the first party's kept qubit with chi
// chosen so that <000|rho|111> is real and nonnegative. Returns the 3-qubit
// state on (kept A1, kept A2, kept A3) and the joint outcome probability.
//
// Only the (psi-, psi-, psi-) outcome triple is guaranteed to match the
// closed form of states::make_rho4_closed_form; other triples return
// whatever the simulation yields.
std::pair<DensityMatrix, double> smp_prepare(
    const DensityMatrix& rho1, const DensityMatrix& rho2, const DensityMatrix& rho3,
    const std::array<BellOutcome, 3>& outcomes,
    const SmpWiring& wiring = SmpWiring::canonical());

// Probabilities of all 64 joint Bell outcomes; they sum to 1.
std::map<std::array<BellOutcome, 3>, double> smp_outcome_distribution(
    const DensityMatrix& rho1, const DensityMatrix& rho2, const DensityMatrix& rho3,
    const SmpWiring& wiring = SmpWiring::canonical());

// (F1 x F2 x F3) rho (.)^dag, renormalized; returns the state and the
// success probability. Throws NullOutcome when the filters annihilate rho.
std::pair<DensityMatrix, double> apply_filters(const DensityMatrix& rho,
                                               const FilterParams& f);

}  // namespace gtnl::protocol
