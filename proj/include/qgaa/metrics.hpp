#pragma once

#include <optional>
#include <vector>

#include "qgaa/linalg.hpp"
#include "qgaa/pauli.hpp"

namespace qgaa {

struct BlochVector {
  double x = 0, y = 0, z = 0;

  double norm() const;
};

/// Ordered label -> state training/test data; labels are small real tuples
/// (K = (k0, k1) for the entangled family, K = (r) for molecules). Order is
/// part of the contract so every reduction over an ensemble is deterministic.
struct LabeledEnsemble {
  struct Entry {
    std::vector<double> label;
    DensityMatrix state;
    /// set when the state is pure; loss evaluations then run on the
    /// amplitude vector instead of conjugating density matrices
    std::optional<StateVector> pure;
  };
  std::vector<Entry> entries;

  std::size_t size() const { return entries.size(); }
  int n_qubits() const;
};

/// Uhlmann-Jozsa fidelity F = (Tr sqrt(sqrt(a) b sqrt(a)))^2. When either
/// input is pure this reduces to Re Tr(a b) and is computed that way (the
/// eigendecomposition path is only taken for genuinely mixed pairs).
double fidelity(const DensityMatrix& a, const DensityMatrix& b);

/// Tr(a b), computed directly.
double swap_overlap(const DensityMatrix& a, const DensityMatrix& b);

/// Tr(a b) read off a simulated controlled-SWAP test: ancilla (qubit 0) in
/// |0>, H, per-qubit CSWAP, H, then 2 Prob(0) - 1.
double swap_overlap_circuit(const DensityMatrix& a, const DensityMatrix& b);

/// Von Neumann entropy (base 2) of the reduced state over `cut`.
double entanglement_entropy(const StateVector& psi, const std::vector<int>& cut);

BlochVector bloch_vector(const DensityMatrix& rho);

/// (1 + a.b)/2; equals state fidelity for pure 1-qubit states.
double bloch_overlap(const BlochVector& a, const BlochVector& b);

/// Tr(H rho) in Hartree.
double expectation(const PauliHamiltonian& h, const DensityMatrix& rho);
double expectation(const PauliHamiltonian& h, const StateVector& psi);

/// Number of eigenvalues of the uniform ensemble average exceeding
/// tol * (largest eigenvalue).
int ensemble_rank(const LabeledEnsemble& states, double tol = 1e-8);

}  // namespace qgaa
