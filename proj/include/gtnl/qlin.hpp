#pragma once

// Dense complex matrix kernel for multi-qubit registers. Qubit ordering is
// big-endian throughout: qubit 0 is the leftmost tensor factor, so basis
// index i carries the bit of qubit q at position (n-1-q).

#include <Eigen/Dense>

#include <complex>
#include <initializer_list>
#include <span>
#include <utility>

#include "gtnl/errors.hpp"

namespace gtnl::qlin {

using Complex = std::complex<double>;
using ComplexMatrix = Eigen::MatrixXcd;
using ComplexVector = Eigen::VectorXcd;

// Numerical tolerances shared across the library. All matrices here are at
// most 512x512, so fixed double-precision thresholds are adequate.
struct Tolerances {
  double hermiticity = 1e-10;  // max |M - M^dag| entry
  double trace_unity = 1e-10;  // |tr - 1|
  double psd_floor = 1e-9;     // min eigenvalue >= -psd_floor
  double x_pattern = 1e-10;    // off-pattern magnitude for X states
  double null_event = 1e-14;   // post-selection probability floor
};
inline constexpr Tolerances tol{};

// Positive semidefinite unit-trace matrix on an n-qubit register.
// Construction validates Hermiticity, trace and positivity, so a value of
// this type is well-formed by construction. Immutable after construction.
class DensityMatrix {
 public:
  static DensityMatrix from_matrix(ComplexMatrix m);

  int qubits() const noexcept { return qubits_; }
  Eigen::Index dim() const noexcept { return mat_.rows(); }
  const ComplexMatrix& matrix() const noexcept { return mat_; }

  // Smallest eigenvalue, recomputed on demand (diagnostic).
  double min_eigenvalue() const;

 private:
  DensityMatrix(int qubits, ComplexMatrix m) : qubits_(qubits), mat_(std::move(m)) {}

  int qubits_ = 0;
  ComplexMatrix mat_;
};

// Kronecker product; dimensions multiply.
ComplexMatrix tensor(const ComplexMatrix& a, const ComplexMatrix& b);

// Reduced state on `keep`, in the given order. Indices must be distinct and
// in range; keeping every qubit returns the input unchanged.
DensityMatrix partial_trace(const DensityMatrix& rho, std::span<const int> keep);
DensityMatrix partial_trace(const DensityMatrix& rho, std::initializer_list<int> keep);

// (K rho K^dag / p, p) with p = tr(K rho K^dag). p lies in [0,1] whenever
// K^dag K <= I. Throws NullOutcome when p < tol.null_event.
std::pair<DensityMatrix, double> conjugate(const DensityMatrix& rho, const ComplexMatrix& k);

// (1/2) sum |eigenvalues of a-b|.
double trace_distance(const DensityMatrix& a, const DensityMatrix& b);

}  // namespace gtnl::qlin
