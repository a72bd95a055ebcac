#include "gtnl/qlin.hpp"

#include <Eigen/Eigenvalues>

#include <cmath>
#include <string>
#include <vector>

namespace gtnl::qlin {

namespace {

bool is_power_of_two(Eigen::Index n) { return n > 0 && (n & (n - 1)) == 0; }

int log2_exact(Eigen::Index n) {
  int k = 0;
  while ((Eigen::Index{1} << k) < n) ++k;
  return k;
}

}  // namespace

DensityMatrix DensityMatrix::from_matrix(ComplexMatrix m) {
  if (m.rows() != m.cols())
    throw std::invalid_argument("DensityMatrix: matrix is not square");
  if (!is_power_of_two(m.rows()))
    throw std::invalid_argument("DensityMatrix: dimension is not a power of two");

  const double herm_dev = (m - m.adjoint()).cwiseAbs().maxCoeff();
  if (herm_dev > tol.hermiticity)
    throw std::invalid_argument("DensityMatrix: not Hermitian (deviation " +
                                std::to_string(herm_dev) + ")");
  const double trace_dev = std::abs(m.trace() - Complex{1.0, 0.0});
  if (trace_dev > tol.trace_unity)
    throw std::invalid_argument("DensityMatrix: trace differs from 1 by " +
                                std::to_string(trace_dev));

  Eigen::SelfAdjointEigenSolver<ComplexMatrix> es(m, Eigen::EigenvaluesOnly);
  const double min_eig = es.eigenvalues().minCoeff();
  if (min_eig < -tol.psd_floor)
    throw std::invalid_argument("DensityMatrix: negative eigenvalue " +
                                std::to_string(min_eig));

  const int qubits = log2_exact(m.rows());
  return DensityMatrix(qubits, std::move(m));
}

double DensityMatrix::min_eigenvalue() const {
  Eigen::SelfAdjointEigenSolver<ComplexMatrix> es(mat_, Eigen::EigenvaluesOnly);
  return es.eigenvalues().minCoeff();
}

ComplexMatrix tensor(const ComplexMatrix& a, const ComplexMatrix& b) {
  ComplexMatrix out(a.rows() * b.rows(), a.cols() * b.cols());
  for (Eigen::Index i = 0; i < a.rows(); ++i)
    for (Eigen::Index j = 0; j < a.cols(); ++j)
      out.block(i * b.rows(), j * b.cols(), b.rows(), b.cols()) = a(i, j) * b;
  return out;
}

DensityMatrix partial_trace(const DensityMatrix& rho, std::span<const int> keep) {
  const int n = rho.qubits();
  std::vector<char> seen(static_cast<size_t>(n), 0);
  for (int q : keep) {
    if (q < 0 || q >= n)
      throw std::out_of_range("partial_trace: qubit index " + std::to_string(q) +
                              " out of range for " + std::to_string(n) + " qubits");
    if (seen[static_cast<size_t>(q)])
      throw std::invalid_argument("partial_trace: duplicate qubit index " + std::to_string(q));
    seen[static_cast<size_t>(q)] = 1;
  }

  const int m = static_cast<int>(keep.size());
  std::vector<int> traced;
  for (int q = 0; q < n; ++q)
    if (!seen[static_cast<size_t>(q)]) traced.push_back(q);

  // Bit position of qubit q inside an n-qubit basis index.
  auto pos = [n](int q) { return n - 1 - q; };

  const Eigen::Index dim_out = Eigen::Index{1} << m;
  const Eigen::Index dim_env = Eigen::Index{1} << traced.size();
  ComplexMatrix out = ComplexMatrix::Zero(dim_out, dim_out);

  for (Eigen::Index r = 0; r < dim_out; ++r) {
    for (Eigen::Index c = 0; c < dim_out; ++c) {
      Complex acc{0.0, 0.0};
      for (Eigen::Index e = 0; e < dim_env; ++e) {
        Eigen::Index big_r = 0, big_c = 0;
        for (int j = 0; j < m; ++j) {
          const Eigen::Index bit_r = (r >> (m - 1 - j)) & 1;
          const Eigen::Index bit_c = (c >> (m - 1 - j)) & 1;
          big_r |= bit_r << pos(keep[static_cast<size_t>(j)]);
          big_c |= bit_c << pos(keep[static_cast<size_t>(j)]);
        }
        for (size_t j = 0; j < traced.size(); ++j) {
          const Eigen::Index bit = (e >> (traced.size() - 1 - j)) & 1;
          big_r |= bit << pos(traced[j]);
          big_c |= bit << pos(traced[j]);
        }
        acc += rho.matrix()(big_r, big_c);
      }
      out(r, c) = acc;
    }
  }
  return DensityMatrix::from_matrix(std::move(out));
}

DensityMatrix partial_trace(const DensityMatrix& rho, std::initializer_list<int> keep) {
  std::vector<int> k(keep);
  return partial_trace(rho, std::span<const int>(k));
}

std::pair<DensityMatrix, double> conjugate(const DensityMatrix& rho, const ComplexMatrix& k) {
  if (k.rows() != k.cols() || k.rows() != rho.dim())
    throw std::invalid_argument("conjugate: operator dimension mismatch");

  ComplexMatrix m = k * rho.matrix() * k.adjoint();
  m = ((m + m.adjoint()) / 2.0).eval();  // scrub roundoff asymmetry
  const double p = m.trace().real();
  if (p < tol.null_event)
    throw NullOutcome("conjugate: post-selected on an event of probability " +
                      std::to_string(p));
  return {DensityMatrix::from_matrix(m / p), p};
}

double trace_distance(const DensityMatrix& a, const DensityMatrix& b) {
  if (a.dim() != b.dim())
    throw std::invalid_argument("trace_distance: dimension mismatch");
  Eigen::SelfAdjointEigenSolver<ComplexMatrix> es(a.matrix() - b.matrix(),
                                                  Eigen::EigenvaluesOnly);
  return 0.5 * es.eigenvalues().cwiseAbs().sum();
}

}  // namespace gtnl::qlin
