#include <cmath>
#include <random>

#include "doctest.h"
#include "qgaa/linalg.hpp"

using namespace qgaa;

namespace {

StateVector random_state(int n, std::mt19937& rng) {
  std::normal_distribution<double> g;
  std::vector<cx> amp(std::size_t{1} << n);
  double s = 0;
  for (cx& a : amp) {
    a = {g(rng), g(rng)};
    s += std::norm(a);
  }
  s = std::sqrt(s);
  for (cx& a : amp) a /= s;
  return StateVector(n, std::move(amp));
}

DensityMatrix random_mixed(int n, std::mt19937& rng, int rank = 3) {
  const std::size_t dim = std::size_t{1} << n;
  CMatrix m(dim, dim);
  std::uniform_real_distribution<double> u(0.1, 1.0);
  double tot = 0;
  std::vector<double> w(rank);
  for (double& x : w) tot += (x = u(rng));
  for (int k = 0; k < rank; ++k) {
    const StateVector psi = random_state(n, rng);
    for (std::size_t i = 0; i < dim; ++i)
      for (std::size_t j = 0; j < dim; ++j)
        m(i, j) += (w[k] / tot) * psi.amplitudes[i] * std::conj(psi.amplitudes[j]);
  }
  return DensityMatrix(n, std::move(m));
}

}  // namespace

TEST_CASE("basis states and normalization") {
  const StateVector b = StateVector::basis(3, 5);
  CHECK(b.dim() == 8);
  CHECK(b.amplitudes[5] == cx(1, 0));
  CHECK(b.norm() == doctest::Approx(1.0));
  CHECK_NOTHROW(b.validate());
  CHECK_THROWS(StateVector(1, {cx(1, 0), cx(1, 0)}).validate());
}

TEST_CASE("pauli X spectrum") {
  CMatrix x(2, 2);
  x(0, 1) = 1;
  x(1, 0) = 1;
  const EigResult e = eig_hermitian(x);
  CHECK(e.eigenvalues[0] == doctest::Approx(-1.0).epsilon(1e-12));
  CHECK(e.eigenvalues[1] == doctest::Approx(1.0).epsilon(1e-12));
  // eigenvector of +1 is (|0>+|1>)/sqrt(2)
  CHECK(std::abs(e.eigenvectors(0, 1) - e.eigenvectors(1, 1)) < 1e-9);
  CHECK(std::abs(std::abs(e.eigenvectors(0, 1)) - 1 / std::sqrt(2.0)) < 1e-9);
}

TEST_CASE("eig reconstructs random hermitian matrices") {
  std::mt19937 rng(11);
  std::normal_distribution<double> g;
  for (int trial = 0; trial < 5; ++trial) {
    const std::size_t n = 8;
    CMatrix m(n, n);
    for (std::size_t i = 0; i < n; ++i) {
      m(i, i) = g(rng);
      for (std::size_t j = i + 1; j < n; ++j) {
        m(i, j) = {g(rng), g(rng)};
        m(j, i) = std::conj(m(i, j));
      }
    }
    const EigResult e = eig_hermitian(m);
    CMatrix rec(n, n);
    for (std::size_t i = 0; i < n; ++i)
      for (std::size_t j = 0; j < n; ++j)
        for (std::size_t k = 0; k < n; ++k)
          rec(i, j) += e.eigenvalues[k] * e.eigenvectors(i, k) *
                       std::conj(e.eigenvectors(j, k));
    CHECK((rec - m).frobenius_norm() < 1e-9);
    for (std::size_t k = 1; k < n; ++k)
      CHECK(e.eigenvalues[k] >= e.eigenvalues[k - 1]);
  }
}

TEST_CASE("tensor product and partial trace round-trip") {
  std::mt19937 rng(7);
  for (int trial = 0; trial < 10; ++trial) {
    const DensityMatrix a = random_mixed(2, rng);
    const DensityMatrix b = random_mixed(1, rng);
    const DensityMatrix ab = tensor_product(a, b);
    CHECK(ab.n_qubits == 3);
    const DensityMatrix back_a = partial_trace(ab, {0, 1});
    const DensityMatrix back_b = partial_trace(ab, {2});
    CHECK((back_a.matrix - a.matrix).frobenius_norm() < 1e-9);
    CHECK((back_b.matrix - b.matrix).frobenius_norm() < 1e-9);
  }
}

TEST_CASE("partial trace keeps qubit order and unit trace") {
  std::mt19937 rng(3);
  const DensityMatrix rho = random_mixed(3, rng);
  const DensityMatrix r01 = partial_trace(rho, {0, 1});
  CHECK(r01.n_qubits == 2);
  CHECK(r01.matrix.trace().real() == doctest::Approx(1.0).epsilon(1e-10));
  CHECK_NOTHROW(r01.validate());
  CHECK_THROWS(partial_trace(rho, {}));
  CHECK_THROWS(partial_trace(rho, {3}));
}

TEST_CASE("tensor product of pure states") {
  const StateVector a = StateVector::basis(1, 1);
  const StateVector b = StateVector::basis(2, 0);
  const StateVector ab = tensor_product(a, b);
  // qubit 0 is the most significant bit: |1>|00> = index 4
  CHECK(ab.amplitudes[4] == cx(1, 0));
}

TEST_CASE("purity bounds") {
  std::mt19937 rng(23);
  const DensityMatrix pure = DensityMatrix::from_state(random_state(2, rng));
  CHECK(purity(pure) == doctest::Approx(1.0).epsilon(1e-10));
  CHECK(purity(DensityMatrix::maximally_mixed(2)) ==
        doctest::Approx(0.25).epsilon(1e-10));
  const DensityMatrix mixed = random_mixed(2, rng);
  CHECK(purity(mixed) <= 1.0 + 1e-10);
  CHECK(purity(mixed) >= 0.25 - 1e-10);
}

TEST_CASE("density matrix validation") {
  CHECK_NOTHROW(DensityMatrix::maximally_mixed(3).validate());
  CMatrix bad = CMatrix::identity(2);
  CHECK_THROWS(DensityMatrix(1, bad).validate());  // trace 2
}
