#pragma once

#include <optional>
#include <string>
#include <vector>

#include "qgaa/linalg.hpp"
#include "qgaa/metrics.hpp"
#include "qgaa/pauli.hpp"

namespace qgaa {

struct GroundState {
  double energy = 0.0;  // Hartree
  StateVector state;
};

/// Bond-length-resolved Hamiltonian family for one molecule, as parsed from
/// a .ham fixture file. Entries are strictly increasing in r.
struct MoleculeDataset {
  std::string molecule;
  int n_qubits = 0;

  struct Entry {
    double r = 0.0;
    PauliHamiltonian hamiltonian;
    mutable std::optional<GroundState> ground;  // write-once cache
  };
  std::vector<Entry> entries;

  const Entry* find(double r, double tol = 1e-9) const;
  /// Ground state of the entry at r, diagonalizing on first use.
  const GroundState& ground_at(double r) const;
};

CMatrix hamiltonian_matrix(const PauliHamiltonian& h);

/// Exact diagonalization; deterministic eigenvector choice (lowest column of
/// the deterministic eigensolver) when the ground space is degenerate.
GroundState ground_state(const PauliHamiltonian& h);

/// File format: header `molecule <name> qubits <n>`, blocks opened by
/// `r <value>`, term lines `<coefficient> <pauli-word>`, `#` comments and
/// blank lines ignored. Duplicate words within one block merge by summing.
MoleculeDataset parse_hamiltonian_file(const std::string& text);
MoleculeDataset load_hamiltonian_file(const std::string& path);
std::string serialize_hamiltonian_file(const MoleculeDataset& d);

/// Pure ground-state ensemble keyed by label (r), restricted to
/// `r_values` when given (each must match an entry), else every entry.
LabeledEnsemble dataset_to_ensemble(
    const MoleculeDataset& d,
    const std::vector<double>& r_values = {});

}  // namespace qgaa
