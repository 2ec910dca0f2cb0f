#include "qgaa/hamiltonian.hpp"

#include <cmath>
#include <cstdio>
#include <fstream>
#include <map>
#include <sstream>

namespace qgaa {

void PauliHamiltonian::validate() const {
  for (const PauliTerm& t : terms) {
    if (static_cast<int>(t.word.size()) != n_qubits)
      throw std::invalid_argument("pauli word length mismatch");
    if (!std::isfinite(t.coefficient))
      throw std::invalid_argument("non-finite coefficient");
    for (char c : t.word)
      if (c != 'I' && c != 'X' && c != 'Y' && c != 'Z')
        throw std::invalid_argument("invalid pauli letter");
  }
}

CMatrix hamiltonian_matrix(const PauliHamiltonian& h) {
  h.validate();
  const int n = h.n_qubits;
  const std::size_t dim = std::size_t{1} << n;
  CMatrix m(dim, dim);
  for (const PauliTerm& t : h.terms) {
    std::size_t xmask = 0;
    for (int q = 0; q < n; ++q)
      if (t.word[q] == 'X' || t.word[q] == 'Y')
        xmask |= std::size_t{1} << (n - 1 - q);
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
      m(i, i ^ xmask) += t.coefficient * phase;
    }
  }
  return m;
}

GroundState ground_state(const PauliHamiltonian& h) {
  if (h.n_qubits > 8) throw std::invalid_argument("system too large (> 8 qubits)");
  const CMatrix m = hamiltonian_matrix(h);
  const EigResult e = eig_hermitian(m);
  const std::size_t dim = m.rows();
  std::vector<cx> amp(dim);
  for (std::size_t i = 0; i < dim; ++i) amp[i] = e.eigenvectors(i, 0);
  return GroundState{e.eigenvalues.front(), StateVector(h.n_qubits, std::move(amp))};
}

const MoleculeDataset::Entry* MoleculeDataset::find(double r, double tol) const {
  for (const Entry& e : entries)
    if (std::abs(e.r - r) <= tol) return &e;
  return nullptr;
}

const GroundState& MoleculeDataset::ground_at(double r) const {
  const Entry* e = find(r);
  if (!e) throw std::invalid_argument("no hamiltonian entry at requested r");
  if (!e->ground) e->ground = ground_state(e->hamiltonian);
  return *e->ground;
}

namespace {

[[noreturn]] void parse_fail(int line, const std::string& msg) {
  throw std::runtime_error("hamiltonian parse error at line " +
                           std::to_string(line) + ": " + msg);
}

}  // namespace

MoleculeDataset parse_hamiltonian_file(const std::string& text) {
  MoleculeDataset d;
  std::istringstream in(text);
  std::string line;
  int lineno = 0;
  bool have_header = false;
  // per-block duplicate-word merging, insertion-ordered
  std::vector<std::string> block_order;
  std::map<std::string, double> block_terms;

  auto flush_block = [&](int at_line) {
    if (d.entries.empty()) return;
    if (block_order.empty()) parse_fail(at_line, "empty term list for r block");
    PauliHamiltonian& h = d.entries.back().hamiltonian;
    for (const std::string& w : block_order)
      h.terms.push_back({block_terms[w], w});
    h.validate();
    block_order.clear();
    block_terms.clear();
  };

  while (std::getline(in, line)) {
    ++lineno;
    const std::size_t hash = line.find('#');
    if (hash != std::string::npos) line = line.substr(0, hash);
    std::istringstream ls(line);
    std::string tok;
    if (!(ls >> tok)) continue;  // blank / comment-only

    if (tok == "molecule") {
      if (have_header) parse_fail(lineno, "duplicate molecule header");
      std::string qubits_kw;
      if (!(ls >> d.molecule >> qubits_kw >> d.n_qubits) ||
          qubits_kw != "qubits" || d.n_qubits < 1)
        parse_fail(lineno, "expected `molecule <name> qubits <n>`");
      have_header = true;
      continue;
    }
    if (!have_header) parse_fail(lineno, "missing molecule header");

    if (tok == "r") {
      double r;
      if (!(ls >> r)) parse_fail(lineno, "expected `r <value>`");
      flush_block(lineno);
      if (!d.entries.empty() && r <= d.entries.back().r)
        parse_fail(lineno, "bond lengths must be strictly increasing");
      d.entries.push_back({r, PauliHamiltonian{d.n_qubits, {}, r}, std::nullopt});
      continue;
    }

    // term line: <coefficient> <pauli-word>
    double coeff;
    std::string word;
    try {
      std::size_t used = 0;
      coeff = std::stod(tok, &used);
      if (used != tok.size()) parse_fail(lineno, "malformed coefficient");
    } catch (const std::logic_error&) {
      parse_fail(lineno, "malformed coefficient");
    }
    if (!(ls >> word)) parse_fail(lineno, "missing pauli word");
    if (static_cast<int>(word.size()) != d.n_qubits)
      parse_fail(lineno, "pauli word length mismatch");
    for (char c : word)
      if (c != 'I' && c != 'X' && c != 'Y' && c != 'Z')
        parse_fail(lineno, "invalid pauli letter");
    std::string extra;
    if (ls >> extra) parse_fail(lineno, "trailing token");
    if (d.entries.empty()) parse_fail(lineno, "term before any r block");
    if (block_terms.emplace(word, 0.0).second) block_order.push_back(word);
    block_terms[word] += coeff;
  }
  if (!have_header) parse_fail(lineno, "missing molecule header");
  if (d.entries.empty()) parse_fail(lineno, "no r blocks");
  flush_block(lineno);
  return d;
}

MoleculeDataset load_hamiltonian_file(const std::string& path) {
  std::ifstream f(path);
  if (!f) throw std::runtime_error("cannot open hamiltonian file: " + path);
  std::ostringstream ss;
  ss << f.rdbuf();
  return parse_hamiltonian_file(ss.str());
}

std::string serialize_hamiltonian_file(const MoleculeDataset& d) {
  std::ostringstream os;
  char buf[64];
  os << "molecule " << d.molecule << " qubits " << d.n_qubits << "\n";
  for (const auto& e : d.entries) {
    std::snprintf(buf, sizeof buf, "%.17g", e.r);
    os << "r " << buf << "\n";
    for (const PauliTerm& t : e.hamiltonian.terms) {
      std::snprintf(buf, sizeof buf, "%.17g", t.coefficient);
      os << buf << " " << t.word << "\n";
    }
  }
  return os.str();
}

LabeledEnsemble dataset_to_ensemble(const MoleculeDataset& d,
                                    const std::vector<double>& r_values) {
  LabeledEnsemble ens;
  auto add = [&ens](double r, const StateVector& gs) {
    ens.entries.push_back({{r}, DensityMatrix::from_state(gs), gs});
  };
  if (r_values.empty()) {
    for (const auto& e : d.entries) add(e.r, d.ground_at(e.r).state);
  } else {
    for (double r : r_values) add(r, d.ground_at(r).state);
  }
  return ens;
}

}  // namespace qgaa
