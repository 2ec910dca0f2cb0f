#pragma once

#include <string>
#include <vector>

namespace qgaa {

/// One term c * P of a qubit Hamiltonian; `word` is a string over {I,X,Y,Z}
/// with word[0] acting on qubit 0 (the most significant bit).
struct PauliTerm {
  double coefficient = 0.0;
  std::string word;
};

/// H(r) = sum_i c_i P_i. Coefficients in Hartree, bond length r in Angstrom.
struct PauliHamiltonian {
  int n_qubits = 0;
  std::vector<PauliTerm> terms;
  double r = 0.0;

  void validate() const;
};

}  // namespace qgaa
