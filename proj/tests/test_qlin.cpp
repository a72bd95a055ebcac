#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include <random>

#include "gtnl/qlin.hpp"
#include "oracle.hpp"

using namespace gtnl;
using qlin::Complex;
using qlin::ComplexMatrix;
using qlin::DensityMatrix;

namespace {

ComplexMatrix basis_projector(int i, int dim) {
  ComplexMatrix m = ComplexMatrix::Zero(dim, dim);
  m(i, i) = 1.0;
  return m;
}

DensityMatrix random_dm(std::mt19937_64& rng, int qubits) {
  return DensityMatrix::from_matrix(oracle::random_density(rng, qubits));
}

}  // namespace

TEST_CASE("tensor basics") {
  const ComplexMatrix i2 = ComplexMatrix::Identity(2, 2);
  CHECK((qlin::tensor(i2, i2) - ComplexMatrix::Identity(4, 4)).norm() == doctest::Approx(0.0));

  // sz x sz on |11>
  const ComplexMatrix zz = qlin::tensor(oracle::pauli(3), oracle::pauli(3));
  Eigen::VectorXcd e11 = Eigen::VectorXcd::Zero(4);
  e11(3) = 1.0;
  CHECK((zz * e11 - e11).norm() == doctest::Approx(0.0));

  const ComplexMatrix p = qlin::tensor(basis_projector(0, 2), basis_projector(1, 2));
  ComplexMatrix expect = ComplexMatrix::Zero(4, 4);
  expect(1, 1) = 1.0;
  CHECK((p - expect).norm() == doctest::Approx(0.0));

  // dimensions multiply
  CHECK(qlin::tensor(ComplexMatrix::Zero(3, 2), ComplexMatrix::Zero(5, 7)).rows() == 15);
  CHECK(qlin::tensor(ComplexMatrix::Zero(3, 2), ComplexMatrix::Zero(5, 7)).cols() == 14);
}

TEST_CASE("tensor agrees with reference kron on random inputs") {
  std::mt19937_64 rng(11);
  std::normal_distribution<double> gauss;
  ComplexMatrix a(4, 4), b(8, 8);
  for (int i = 0; i < 4; ++i)
    for (int j = 0; j < 4; ++j) a(i, j) = Complex(gauss(rng), gauss(rng));
  for (int i = 0; i < 8; ++i)
    for (int j = 0; j < 8; ++j) b(i, j) = Complex(gauss(rng), gauss(rng));
  CHECK((qlin::tensor(a, b) - oracle::kron(a, b)).cwiseAbs().maxCoeff() < 1e-14);
}

TEST_CASE("partial trace of a Bell pair is maximally mixed") {
  ComplexMatrix bell = ComplexMatrix::Zero(4, 4);
  for (int i : {0, 3})
    for (int j : {0, 3}) bell(i, j) = 0.5;
  const auto rho = DensityMatrix::from_matrix(bell);
  for (int q : {0, 1}) {
    const auto reduced = qlin::partial_trace(rho, {q});
    CHECK((reduced.matrix() - 0.5 * ComplexMatrix::Identity(2, 2)).cwiseAbs().maxCoeff() <
          1e-14);
  }
}

TEST_CASE("partial trace keeping everything is the identity map") {
  std::mt19937_64 rng(5);
  const auto rho = random_dm(rng, 3);
  const auto same = qlin::partial_trace(rho, {0, 1, 2});
  CHECK((same.matrix() - rho.matrix()).cwiseAbs().maxCoeff() < 1e-14);
}

TEST_CASE("partial trace of |0>|1>|0> keeping outer qubits") {
  ComplexMatrix m = ComplexMatrix::Zero(8, 8);
  m(2, 2) = 1.0;  // |010>
  const auto rho = DensityMatrix::from_matrix(m);
  const auto reduced = qlin::partial_trace(rho, {0, 2});
  ComplexMatrix expect = ComplexMatrix::Zero(4, 4);
  expect(0, 0) = 1.0;  // |00>
  CHECK((reduced.matrix() - expect).cwiseAbs().maxCoeff() < 1e-14);
}

TEST_CASE("partial trace validates indices") {
  std::mt19937_64 rng(7);
  const auto rho = random_dm(rng, 2);
  CHECK_THROWS_AS((void)qlin::partial_trace(rho, {2}), std::out_of_range);
  CHECK_THROWS_AS((void)qlin::partial_trace(rho, {0, 0}), std::invalid_argument);
}

TEST_CASE("partial trace over a product recovers the factor") {
  std::mt19937_64 rng(23);
  for (int trial = 0; trial < 20; ++trial) {
    const auto a = oracle::random_density(rng, 1);
    const auto b = oracle::random_density(rng, 2);
    const auto prod = DensityMatrix::from_matrix(qlin::tensor(a, b));
    CHECK((qlin::partial_trace(prod, {0}).matrix() - a).cwiseAbs().maxCoeff() < 1e-12);
    CHECK((qlin::partial_trace(prod, {1, 2}).matrix() - b).cwiseAbs().maxCoeff() < 1e-12);
  }
}

TEST_CASE("partial trace agrees with the dense reference and preserves trace") {
  std::mt19937_64 rng(31);
  for (int trial = 0; trial < 10; ++trial) {
    const auto rho = random_dm(rng, 3);
    for (const std::vector<int> keep : {std::vector<int>{1}, {2, 0}, {0, 1}}) {
      const auto mine = qlin::partial_trace(rho, keep);
      const auto ref = oracle::ptrace(rho.matrix(), keep, 3);
      CHECK((mine.matrix() - ref).cwiseAbs().maxCoeff() < 1e-13);
      CHECK(std::abs(mine.matrix().trace().real() - 1.0) < 1e-12);
    }
  }
}

TEST_CASE("conjugate with the identity is a no-op") {
  std::mt19937_64 rng(41);
  const auto rho = random_dm(rng, 2);
  const auto [out, p] = qlin::conjugate(rho, ComplexMatrix::Identity(4, 4));
  CHECK(p == doctest::Approx(1.0).epsilon(1e-12));
  CHECK((out.matrix() - rho.matrix()).cwiseAbs().maxCoeff() < 1e-13);
}

TEST_CASE("conjugate with a projector implements the Born rule") {
  const auto rho = DensityMatrix::from_matrix(0.5 * ComplexMatrix::Identity(2, 2));
  const auto [out, p] = qlin::conjugate(rho, basis_projector(0, 2));
  CHECK(p == doctest::Approx(0.5));
  CHECK((out.matrix() - basis_projector(0, 2)).cwiseAbs().maxCoeff() < 1e-14);
}

TEST_CASE("conjugate onto an orthogonal projector is a null outcome") {
  const auto rho = DensityMatrix::from_matrix(basis_projector(0, 2));
  CHECK_THROWS_AS((void)qlin::conjugate(rho, basis_projector(1, 2)), NullOutcome);
}

TEST_CASE("conjugate rejects mismatched dimensions") {
  std::mt19937_64 rng(43);
  const auto rho = random_dm(rng, 2);
  CHECK_THROWS_AS((void)qlin::conjugate(rho, ComplexMatrix::Identity(2, 2)),
                  std::invalid_argument);
}

TEST_CASE("unitary conjugation preserves the eigenvalue multiset") {
  std::mt19937_64 rng(47);
  for (int trial = 0; trial < 30; ++trial) {
    const int qubits = 1 + int(rng() % 3);
    const auto rho = random_dm(rng, qubits);
    const auto u = oracle::random_unitary(rng, rho.dim());
    const auto [out, p] = qlin::conjugate(rho, u);
    CHECK(p == doctest::Approx(1.0).epsilon(1e-10));
    Eigen::SelfAdjointEigenSolver<ComplexMatrix> e1(rho.matrix(), Eigen::EigenvaluesOnly);
    Eigen::SelfAdjointEigenSolver<ComplexMatrix> e2(out.matrix(), Eigen::EigenvaluesOnly);
    CHECK((e1.eigenvalues() - e2.eigenvalues()).cwiseAbs().maxCoeff() < 1e-10);
  }
}

TEST_CASE("density matrix construction rejects malformed input") {
  ComplexMatrix bad = ComplexMatrix::Identity(2, 2);
  bad(0, 1) = Complex(0.1, 0.0);  // not Hermitian
  bad(0, 0) = 0.5;
  bad(1, 1) = 0.5;
  CHECK_THROWS_AS((void)DensityMatrix::from_matrix(bad), std::invalid_argument);

  CHECK_THROWS_AS((void)DensityMatrix::from_matrix(ComplexMatrix::Identity(2, 2)),
                  std::invalid_argument);  // trace 2

  ComplexMatrix indef = ComplexMatrix::Zero(2, 2);
  indef(0, 0) = 1.5;
  indef(1, 1) = -0.5;
  CHECK_THROWS_AS((void)DensityMatrix::from_matrix(indef), std::invalid_argument);

  CHECK_THROWS_AS((void)DensityMatrix::from_matrix(ComplexMatrix::Identity(3, 3) / 3.0),
                  std::invalid_argument);  // not 2^n
}

TEST_CASE("well-formedness survives the operations that return density matrices") {
  std::mt19937_64 rng(59);
  for (int trial = 0; trial < 25; ++trial) {
    const auto rho = random_dm(rng, 3);
    const auto reduced = qlin::partial_trace(rho, {0, 2});
    CHECK(reduced.min_eigenvalue() > -qlin::tol.psd_floor);
    const auto u = oracle::random_unitary(rng, 8);
    const auto [rotated, p] = qlin::conjugate(rho, ComplexMatrix(u));
    CHECK(std::abs(rotated.matrix().trace().real() - 1.0) < 1e-12);
  }
}

TEST_CASE("trace distance basics") {
  const auto a = DensityMatrix::from_matrix(basis_projector(0, 2));
  const auto b = DensityMatrix::from_matrix(basis_projector(1, 2));
  CHECK(qlin::trace_distance(a, a) == doctest::Approx(0.0));
  CHECK(qlin::trace_distance(a, b) == doctest::Approx(1.0));
}
