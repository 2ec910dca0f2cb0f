#include "qgaa/metrics.hpp"

#include <algorithm>
#include <cmath>

#include "qgaa/circuits.hpp"

namespace qgaa {

double BlochVector::norm() const { return std::sqrt(x * x + y * y + z * z); }

int LabeledEnsemble::n_qubits() const {
  if (entries.empty()) throw std::invalid_argument("empty ensemble");
  return entries.front().state.n_qubits;
}

namespace {

double real_trace_product(const CMatrix& a, const CMatrix& b) {
  // Tr(ab) = sum_ij a_ij b_ji
  cx t = 0;
  const std::size_t n = a.rows();
  for (std::size_t i = 0; i < n; ++i)
    for (std::size_t j = 0; j < n; ++j) t += a(i, j) * b(j, i);
  return t.real();
}

CMatrix matrix_sqrt_psd(const CMatrix& m) {
  const EigResult e = eig_hermitian(m);
  const std::size_t n = m.rows();
  CMatrix out(n, n);
  for (std::size_t k = 0; k < n; ++k) {
    const double lam = std::max(0.0, e.eigenvalues[k]);
    const double s = std::sqrt(lam);
    for (std::size_t i = 0; i < n; ++i)
      for (std::size_t j = 0; j < n; ++j)
        out(i, j) += s * e.eigenvectors(i, k) * std::conj(e.eigenvectors(j, k));
  }
  return out;
}

}  // namespace

double fidelity(const DensityMatrix& a, const DensityMatrix& b) {
  if (a.dim() != b.dim()) throw std::invalid_argument("dimension mismatch");
  const bool a_pure = purity(a) > 1.0 - 1e-10;
  const bool b_pure = purity(b) > 1.0 - 1e-10;
  double f;
  if (a_pure || b_pure) {
    f = real_trace_product(a.matrix, b.matrix);
  } else {
    const CMatrix sa = matrix_sqrt_psd(a.matrix);
    const CMatrix m = sa * b.matrix * sa;
    const EigResult e = eig_hermitian(m);
    double t = 0;
    for (double lam : e.eigenvalues) t += std::sqrt(std::max(0.0, lam));
    f = t * t;
  }
  return std::clamp(f, 0.0, 1.0);
}

double swap_overlap(const DensityMatrix& a, const DensityMatrix& b) {
  if (a.dim() != b.dim()) throw std::invalid_argument("dimension mismatch");
  return real_trace_product(a.matrix, b.matrix);
}

double swap_overlap_circuit(const DensityMatrix& a, const DensityMatrix& b) {
  if (a.n_qubits != b.n_qubits)
    throw std::invalid_argument("dimension mismatch");
  const int n = a.n_qubits;
  const int total = 2 * n + 1;  // ancilla is qubit 0
  DensityMatrix anc = DensityMatrix::from_state(StateVector::basis(1, 0));
  DensityMatrix rho = tensor_product(tensor_product(anc, a), b);
  ParamCircuit c;
  c.n_qubits = total;
  c.gates.push_back({GateKind::H, {0}});
  for (int q = 0; q < n; ++q)
    c.gates.push_back({GateKind::CSWAP, {0, 1 + q, 1 + n + q}});
  c.gates.push_back({GateKind::H, {0}});
  const DensityMatrix out = apply_to_density(c, {}, rho);
  // Prob(ancilla = 0): sum of diagonal entries with the top bit clear
  const std::size_t half = std::size_t{1} << (total - 1);
  double p0 = 0;
  for (std::size_t i = 0; i < half; ++i) p0 += out.matrix(i, i).real();
  return 2.0 * p0 - 1.0;
}

double entanglement_entropy(const StateVector& psi,
                            const std::vector<int>& cut) {
  psi.validate();
  const DensityMatrix red =
      partial_trace(DensityMatrix::from_state(psi), cut);
  const EigResult e = eig_hermitian(red.matrix);
  double s = 0;
  for (double lam : e.eigenvalues)
    if (lam > 1e-12) s -= lam * std::log2(lam);
  return s;
}

BlochVector bloch_vector(const DensityMatrix& rho) {
  if (rho.n_qubits != 1) throw std::invalid_argument("bloch_vector needs 1 qubit");
  const cx r01 = rho.matrix(0, 1);
  return BlochVector{2.0 * r01.real(), -2.0 * r01.imag(),
                     (rho.matrix(0, 0) - rho.matrix(1, 1)).real()};
}

double bloch_overlap(const BlochVector& a, const BlochVector& b) {
  return (1.0 + a.x * b.x + a.y * b.y + a.z * b.z) / 2.0;
}

double expectation(const PauliHamiltonian& h, const DensityMatrix& rho) {
  h.validate();
  if (h.n_qubits != rho.n_qubits)
    throw std::invalid_argument("dimension mismatch");
  const int n = h.n_qubits;
  const std::size_t dim = std::size_t{1} << n;
  cx total = 0;
  for (const PauliTerm& t : h.terms) {
    // Each Pauli word has one nonzero entry per row: column = row ^ xmask.
    std::size_t xmask = 0;
    for (int q = 0; q < n; ++q)
      if (t.word[q] == 'X' || t.word[q] == 'Y')
        xmask |= std::size_t{1} << (n - 1 - q);
    cx acc = 0;
    for (std::size_t i = 0; i < dim; ++i) {
      cx phase = 1;
      for (int q = 0; q < n; ++q) {
        const bool bit = (i >> (n - 1 - q)) & 1;
        switch (t.word[q]) {
          case 'Y': phase *= bit ? cx(0, 1) : cx(0, -1); break;
          case 'Z': if (bit) phase = -phase; break;
          default: break;
        }
      }
      acc += phase * rho.matrix(i ^ xmask, i);
    }
    total += t.coefficient * acc;
  }
  if (std::abs(total.imag()) > 1e-9)
    throw std::runtime_error("expectation has imaginary residue");
  return total.real();
}

double expectation(const PauliHamiltonian& h, const StateVector& psi) {
  return expectation(h, DensityMatrix::from_state(psi));
}

int ensemble_rank(const LabeledEnsemble& states, double tol) {
  if (states.entries.empty()) throw std::invalid_argument("empty ensemble");
  const std::size_t dim = states.entries.front().state.dim();
  CMatrix avg(dim, dim);
  for (const auto& e : states.entries) {
    if (e.state.dim() != dim) throw std::invalid_argument("dimension mismatch");
    avg = avg + e.state.matrix;
  }
  avg = avg * cx(1.0 / static_cast<double>(states.size()), 0.0);
  const EigResult e = eig_hermitian(avg);
  const double lmax = e.eigenvalues.back();
  int rank = 0;
  for (double lam : e.eigenvalues)
    if (lam > tol * lmax) ++rank;
  return rank;
}

}  // namespace qgaa
