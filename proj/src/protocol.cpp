#include "gtnl/protocol.hpp"

#include <cmath>
#include <complex>
#include <string>
#include <vector>

namespace gtnl::protocol {

namespace {

using qlin::Complex;

// Nonzero computational-basis amplitudes of a Bell vector, as
// (two-bit index ab, amplitude).
std::array<std::pair<int, Complex>, 2> bell_support(BellOutcome o) {
  const double r = 1.0 / std::sqrt(2.0);
  switch (o) {
    case BellOutcome::PhiPlus: return {{{0b00, r}, {0b11, r}}};
    case BellOutcome::PhiMinus: return {{{0b00, r}, {0b11, -r}}};
    case BellOutcome::PsiPlus: return {{{0b01, r}, {0b10, r}}};
    case BellOutcome::PsiMinus: return {{{0b01, r}, {0b10, -r}}};
  }
  throw std::logic_error("bell_support: bad enum");
}

// Unnormalized post-selected block M(k,k') = <v_k| rho1 x rho2 x rho3 |v_k'>
// where |v_k> carries kept-qubit basis state k and the outcome Bell vector
// on each measured pair. Its trace is the joint outcome probability; M
// normalized is the reduced state on the kept qubits in wiring order.
ComplexMatrix post_selected_block(const DensityMatrix& rho1, const DensityMatrix& rho2,
                                  const DensityMatrix& rho3,
                                  const std::array<BellOutcome, 3>& outcomes,
                                  const SmpWiring& wiring) {
  for (const DensityMatrix* r : {&rho1, &rho2, &rho3})
    if (r->qubits() != 3)
      throw std::invalid_argument("smp: inputs must be 3-qubit states");
  wiring.validate();

  // Bit position of internal qubit q in a 9-bit index.
  auto pos = [](int q) { return 8 - q; };

  // Base index contributed by the kept qubits for each kept-basis state k.
  std::array<int, 8> kept_base{};
  for (int k = 0; k < 8; ++k) {
    int idx = 0;
    for (int j = 0; j < 3; ++j)
      idx |= ((k >> (2 - j)) & 1) << pos(wiring.kept[j]);
    kept_base[k] = idx;
  }

  // The 8 joint support points of the three Bell vectors: index bits plus
  // the product amplitude.
  std::array<std::array<std::pair<int, Complex>, 2>, 3> supports{
      bell_support(outcomes[0]), bell_support(outcomes[1]), bell_support(outcomes[2])};
  std::array<int, 8> meas_index{};
  std::array<Complex, 8> meas_amp{};
  for (int s = 0; s < 8; ++s) {
    int idx = 0;
    Complex amp{1.0, 0.0};
    for (int i = 0; i < 3; ++i) {
      const auto& [ab, a] = supports[i][(s >> i) & 1];
      idx |= ((ab >> 1) & 1) << pos(wiring.measured[i].first);
      idx |= (ab & 1) << pos(wiring.measured[i].second);
      amp *= a;
    }
    meas_index[s] = idx;
    meas_amp[s] = amp;
  }

  const ComplexMatrix& m1 = rho1.matrix();
  const ComplexMatrix& m2 = rho2.matrix();
  const ComplexMatrix& m3 = rho3.matrix();

  ComplexMatrix block(8, 8);
  for (int k = 0; k < 8; ++k) {
    for (int k2 = 0; k2 < 8; ++k2) {
      Complex acc{0.0, 0.0};
      for (int s = 0; s < 8; ++s) {
        const int row = kept_base[k] | meas_index[s];
        for (int s2 = 0; s2 < 8; ++s2) {
          const int col = kept_base[k2] | meas_index[s2];
          const Complex r = m1((row >> 6) & 7, (col >> 6) & 7) *
                            m2((row >> 3) & 7, (col >> 3) & 7) *
                            m3(row & 7, col & 7);
          acc += std::conj(meas_amp[s]) * meas_amp[s2] * r;
        }
      }
      block(k, k2) = acc;
    }
  }
  return block;
}

}  // namespace

SmpWiring SmpWiring::canonical() {
  //                      A1      A2      A3
  return SmpWiring{{{{5, 6}, {1, 3}, {2, 4}}},  // (rho2.3,rho3.1) (rho1.2,rho2.1) (rho1.3,rho2.2)
                   {0, 7, 8}};                  // rho1.1, rho3.2, rho3.3
}

void SmpWiring::validate() const {
  std::array<int, 9> count{};
  auto tally = [&](int q) {
    if (q < 0 || q > 8)
      throw std::invalid_argument("SmpWiring: qubit index " + std::to_string(q) +
                                  " out of range");
    ++count[static_cast<size_t>(q)];
  };
  for (const auto& [first, second] : measured) {
    tally(first);
    tally(second);
  }
  for (int q : kept) tally(q);
  for (int q = 0; q < 9; ++q)
    if (count[static_cast<size_t>(q)] != 1)
      throw std::invalid_argument("SmpWiring: qubit " + std::to_string(q) +
                                  " used " + std::to_string(count[size_t(q)]) +
                                  " times; measured and kept qubits must partition 0..8");
}

void FilterParams::validate() const {
  for (double e : {eps1, eps2, eps3})
    if (!(e >= 0.0 && e <= 1.0))
      throw std::domain_error("FilterParams: epsilon " + std::to_string(e) +
                              " outside [0, 1]");
}

std::pair<DensityMatrix, double> smp_prepare(const DensityMatrix& rho1,
                                             const DensityMatrix& rho2,
                                             const DensityMatrix& rho3,
                                             const std::array<BellOutcome, 3>& outcomes,
                                             const SmpWiring& wiring) {
  ComplexMatrix block = post_selected_block(rho1, rho2, rho3, outcomes, wiring);
  const double p = block.trace().real();
  if (p < qlin::tol.null_event)
    throw NullOutcome("smp_prepare: outcome (" + std::string(to_string(outcomes[0])) +
                      ", " + to_string(outcomes[1]) + ", " + to_string(outcomes[2]) +
                      ") has probability " + std::to_string(p));
  block /= p;

  // Phase correction on A1's kept qubit: rotate the |000><111| coherence to
  // the nonnegative real axis. Any such local unitary choice leaves the
  // nonlocal content unchanged.
  const Complex coh = block(0, 7);
  if (std::abs(coh) > 1e-15) {
    const Complex d = std::exp(Complex{0.0, -std::arg(coh)});
    for (int i = 0; i < 8; ++i)
      for (int j = 0; j < 8; ++j) {
        if ((i >> 2) & 1) block(i, j) *= d;
        if ((j >> 2) & 1) block(i, j) *= std::conj(d);
      }
  }

  block = ((block + block.adjoint()) / 2.0).eval();
  return {DensityMatrix::from_matrix(std::move(block)), p};
}

std::map<std::array<BellOutcome, 3>, double> smp_outcome_distribution(
    const DensityMatrix& rho1, const DensityMatrix& rho2, const DensityMatrix& rho3,
    const SmpWiring& wiring) {
  std::map<std::array<BellOutcome, 3>, double> dist;
  for (BellOutcome o1 : measure::all_bell_outcomes)
    for (BellOutcome o2 : measure::all_bell_outcomes)
      for (BellOutcome o3 : measure::all_bell_outcomes) {
        const std::array<BellOutcome, 3> key{o1, o2, o3};
        dist[key] = post_selected_block(rho1, rho2, rho3, key, wiring).trace().real();
      }
  return dist;
}

std::pair<DensityMatrix, double> apply_filters(const DensityMatrix& rho,
                                               const FilterParams& f) {
  f.validate();
  if (rho.qubits() != 3)
    throw std::invalid_argument("apply_filters: expected a 3-qubit state");

  ComplexMatrix k = ComplexMatrix::Zero(8, 8);
  for (int i = 0; i < 8; ++i) {
    double v = 1.0;
    if (!((i >> 2) & 1)) v *= f.eps1;
    if (!((i >> 1) & 1)) v *= f.eps2;
    if (!(i & 1)) v *= f.eps3;
    k(i, i) = v;
  }
  try {
    return qlin::conjugate(rho, k);
  } catch (const NullOutcome&) {
    throw NullOutcome("apply_filters: filters annihilate the state (eps = " +
                      std::to_string(f.eps1) + ", " + std::to_string(f.eps2) + ", " +
                      std::to_string(f.eps3) + ")");
  }
}

}  // namespace gtnl::protocol
