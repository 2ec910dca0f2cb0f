#include "qgaa/circuits.hpp"

#include <algorithm>
#include <cmath>
#include <map>
#include <sstream>

namespace qgaa {

namespace {

constexpr double kPi = 3.14159265358979323846;

int gate_arity(GateKind k) {
  switch (k) {
    case GateKind::RX:
    case GateKind::RY:
    case GateKind::RZ:
    case GateKind::H:
      return 1;
    case GateKind::CX:
    case GateKind::CZ:
      return 2;
    case GateKind::CSWAP:
      return 3;
  }
  return 0;
}

double bound_angle(const Gate& g, const std::vector<double>& params) {
  double a = g.angle_offset;
  if (g.param_slot) a += g.param_scale * params[*g.param_slot];
  return a;
}

// In-place gate application on a 2^n amplitude vector; qubit 0 = MSB.
void apply_gate(std::vector<cx>& amp, int n, const Gate& g, double angle) {
  const std::size_t dim = amp.size();
  auto mask = [&](int q) { return std::size_t{1} << (n - 1 - q); };
  switch (g.kind) {
    case GateKind::RX:
    case GateKind::RY:
    case GateKind::RZ:
    case GateKind::H: {
      cx u00, u01, u10, u11;
      const double c = std::cos(angle / 2), s = std::sin(angle / 2);
      switch (g.kind) {
        case GateKind::RX:
          u00 = c; u01 = cx(0, -s); u10 = cx(0, -s); u11 = c;
          break;
        case GateKind::RY:
          u00 = c; u01 = -s; u10 = s; u11 = c;
          break;
        case GateKind::RZ:
          u00 = std::exp(cx(0, -angle / 2)); u01 = 0;
          u10 = 0; u11 = std::exp(cx(0, angle / 2));
          break;
        default:  // H
          u00 = u01 = u10 = 1.0 / std::sqrt(2.0);
          u11 = -u00;
          break;
      }
      const std::size_t m = mask(g.targets[0]);
      for (std::size_t i = 0; i < dim; ++i) {
        if (i & m) continue;
        const cx a0 = amp[i], a1 = amp[i | m];
        amp[i] = u00 * a0 + u01 * a1;
        amp[i | m] = u10 * a0 + u11 * a1;
      }
      break;
    }
    case GateKind::CX: {
      const std::size_t mc = mask(g.targets[0]), mt = mask(g.targets[1]);
      for (std::size_t i = 0; i < dim; ++i)
        if ((i & mc) && !(i & mt)) std::swap(amp[i], amp[i | mt]);
      break;
    }
    case GateKind::CZ: {
      const std::size_t mc = mask(g.targets[0]), mt = mask(g.targets[1]);
      for (std::size_t i = 0; i < dim; ++i)
        if ((i & mc) && (i & mt)) amp[i] = -amp[i];
      break;
    }
    case GateKind::CSWAP: {
      const std::size_t mc = mask(g.targets[0]);
      const std::size_t ma = mask(g.targets[1]), mb = mask(g.targets[2]);
      for (std::size_t i = 0; i < dim; ++i)
        if ((i & mc) && (i & ma) && !(i & mb))
          std::swap(amp[i], amp[(i ^ ma) | mb]);
      break;
    }
  }
}

}  // namespace

const char* gate_name(GateKind k) {
  switch (k) {
    case GateKind::RX: return "RX";
    case GateKind::RY: return "RY";
    case GateKind::RZ: return "RZ";
    case GateKind::H: return "H";
    case GateKind::CX: return "CX";
    case GateKind::CZ: return "CZ";
    case GateKind::CSWAP: return "CSWAP";
  }
  return "?";
}

void ParamCircuit::validate() const {
  for (const Gate& g : gates) {
    if (static_cast<int>(g.targets.size()) != gate_arity(g.kind))
      throw std::invalid_argument("gate target count mismatch");
    for (int t : g.targets)
      if (t < 0 || t >= n_qubits)
        throw std::invalid_argument("gate target out of range");
    if (g.param_slot) {
      if (!g.is_rotation())
        throw std::invalid_argument("parameter slot on non-rotation gate");
      if (*g.param_slot < 0 || *g.param_slot >= n_params)
        throw std::invalid_argument("parameter slot out of range");
    }
  }
}

std::string ParamCircuit::dump() const {
  std::ostringstream os;
  for (const Gate& g : gates) {
    os << gate_name(g.kind);
    for (int t : g.targets) os << " q" << t;
    if (g.param_slot) os << " slot:" << *g.param_slot;
    if (g.is_rotation()) os << " offset:" << g.angle_offset;
    if (g.param_slot && g.param_scale != 1.0) os << " scale:" << g.param_scale;
    os << "\n";
  }
  return os.str();
}

UnitaryMatrix gate_matrix(const Gate& g, double angle) {
  const int nq = gate_arity(g.kind);
  const std::size_t d = std::size_t{1} << nq;
  // local circuit: targets renamed to 0..nq-1
  Gate local = g;
  local.param_slot.reset();
  local.angle_offset = angle;
  local.targets.clear();
  for (int t = 0; t < nq; ++t) local.targets.push_back(t);
  CMatrix m(d, d);
  for (std::size_t col = 0; col < d; ++col) {
    std::vector<cx> amp(d);
    amp[col] = 1.0;
    apply_gate(amp, nq, local, angle);
    for (std::size_t row = 0; row < d; ++row) m(row, col) = amp[row];
  }
  return UnitaryMatrix(std::move(m));
}

UnitaryMatrix circuit_unitary(const ParamCircuit& c,
                              const std::vector<double>& params) {
  if (static_cast<int>(params.size()) != c.n_params)
    throw std::invalid_argument("parameter vector length mismatch");
  const std::size_t d = std::size_t{1} << c.n_qubits;
  CMatrix m(d, d);
  for (std::size_t col = 0; col < d; ++col) {
    std::vector<cx> amp(d);
    amp[col] = 1.0;
    for (const Gate& g : c.gates)
      apply_gate(amp, c.n_qubits, g, bound_angle(g, params));
    for (std::size_t row = 0; row < d; ++row) m(row, col) = amp[row];
  }
  return UnitaryMatrix(std::move(m));
}

StateVector apply_to_state(const ParamCircuit& c,
                           const std::vector<double>& params,
                           const StateVector& psi) {
  if (psi.n_qubits != c.n_qubits)
    throw std::invalid_argument("state/circuit qubit count mismatch");
  if (static_cast<int>(params.size()) != c.n_params)
    throw std::invalid_argument("parameter vector length mismatch");
  std::vector<cx> amp = psi.amplitudes;
  for (const Gate& g : c.gates)
    apply_gate(amp, c.n_qubits, g, bound_angle(g, params));
  return StateVector(c.n_qubits, std::move(amp));
}

DensityMatrix apply_to_density(const ParamCircuit& c,
                               const std::vector<double>& params,
                               const DensityMatrix& rho) {
  if (rho.n_qubits != c.n_qubits)
    throw std::invalid_argument("state/circuit qubit count mismatch");
  const UnitaryMatrix u = circuit_unitary(c, params);
  return DensityMatrix(rho.n_qubits, u.matrix * rho.matrix * u.matrix.adjoint());
}

namespace {

void rotation_layer(ParamCircuit& c, GateKind kind, int& slot, int from, int to) {
  for (int q = from; q < to; ++q)
    c.gates.push_back({kind, {q}, slot++, 0.0, 1.0});
}

// CX chain of Fig.-14 style layers: control runs up from the bottom wire
void cx_chain_up(ParamCircuit& c, int n) {
  for (int q = n - 1; q >= 1; --q) c.gates.push_back({GateKind::CX, {q, q - 1}, {}});
}

void cx_ring(ParamCircuit& c, int n) {
  for (int q = 0; q + 1 < n; ++q) c.gates.push_back({GateKind::CX, {q, q + 1}, {}});
  c.gates.push_back({GateKind::CX, {n - 1, 0}, {}});
}

}  // namespace

const char* family_name(AnsatzFamily f) {
  switch (f) {
    case AnsatzFamily::entangled_qae: return "entangled_qae";
    case AnsatzFamily::entangled_generator: return "entangled_generator";
    case AnsatzFamily::entangled_discriminator: return "entangled_discriminator";
    case AnsatzFamily::linear_entangling: return "linear_entangling";
    case AnsatzFamily::circular_entangling: return "circular_entangling";
    case AnsatzFamily::generator_meta: return "generator_meta";
  }
  return "?";
}

AnsatzFamily family_from_name(const std::string& name) {
  for (AnsatzFamily f :
       {AnsatzFamily::entangled_qae, AnsatzFamily::entangled_generator,
        AnsatzFamily::entangled_discriminator, AnsatzFamily::linear_entangling,
        AnsatzFamily::circular_entangling, AnsatzFamily::generator_meta})
    if (name == family_name(f)) return f;
  throw std::invalid_argument("unknown ansatz family: " + name);
}

int ansatz_param_count(const AnsatzSpec& s) {
  switch (s.family) {
    case AnsatzFamily::entangled_qae: return 4;
    case AnsatzFamily::entangled_generator: return 2;
    case AnsatzFamily::entangled_discriminator: return 12;
    case AnsatzFamily::linear_entangling: return 4 * s.n_qubits * s.depth;
    case AnsatzFamily::circular_entangling: return 2 * s.n_qubits * s.depth;
    case AnsatzFamily::generator_meta:
      return 6 * s.n_qubits * s.depth;
  }
  return 0;
}

namespace {

// Label-conditioned discriminator: the inverse of the label preparation
// (RZ(k1) RY(k0) or RY(r)) is applied to the first input qubit after the
// trainable gates, so the induced POVM varies with the label without extra
// qubits or parameter slots. Placed on the inverse side, the projector the
// discriminator implements can align with a latent family of the form
// (fixed unitary) x (label preparation) exactly.
void disc_label_unencoding(ParamCircuit& c, const AnsatzSpec& s) {
  if (s.label.empty()) return;
  if (s.label.size() > 2)
    throw std::invalid_argument("discriminator label arity must be 1 or 2");
  if (s.label.size() == 2)
    c.gates.push_back({GateKind::RZ, {0}, std::nullopt, -s.label[1]});
  c.gates.push_back({GateKind::RY, {0}, std::nullopt, -s.label[0]});
}

}  // namespace

ParamCircuit build_ansatz(const AnsatzSpec& s) {
  ParamCircuit c;
  c.n_qubits = s.n_qubits;
  c.n_params = ansatz_param_count(s);
  int slot = 0;
  switch (s.family) {
    case AnsatzFamily::entangled_qae: {
      if (s.n_qubits != 2)
        throw std::invalid_argument("entangled_qae ansatz is 2-qubit");
      c.gates.push_back({GateKind::RY, {0}, 0});
      c.gates.push_back({GateKind::RY, {1}, 1});
      c.gates.push_back({GateKind::CZ, {0, 1}, {}});
      c.gates.push_back({GateKind::RY, {0}, 2});
      c.gates.push_back({GateKind::RY, {1}, 3});
      break;
    }
    case AnsatzFamily::entangled_generator: {
      if (s.n_qubits != 1 || s.label.size() != 2)
        throw std::invalid_argument(
            "entangled_generator needs 1 qubit and label (k0, k1)");
      const double k0 = s.label[0], k1 = s.label[1];
      c.gates.push_back({GateKind::RY, {0}, std::nullopt, k0});
      c.gates.push_back({GateKind::RZ, {0}, 0, k1});
      c.gates.push_back({GateKind::RY, {0}, 1});
      break;
    }
    case AnsatzFamily::entangled_discriminator: {
      if (s.n_qubits != 2)
        throw std::invalid_argument("entangled_discriminator is 2-qubit");
      // All trainable rotations act on the input wire, with a single final
      // CX onto the probe. The induced POVM element is then the rank-1
      // projector V(theta_d)^dag |0><0| V(theta_d): its top eigenvalue is
      // pinned at 1, so the only stationary point of the adversarial game
      // has the projector aligned with the real state and both probe
      // probabilities at 1 - the reported convergence signature. Layered
      // two-wire variants leave the top eigenvalue free and stall the
      // probability curves below the stopping threshold.
      for (int block = 0; block < 4; ++block) {
        c.gates.push_back({GateKind::RX, {0}, slot++});
        c.gates.push_back({GateKind::RY, {0}, slot++});
        c.gates.push_back({GateKind::RZ, {0}, slot++});
      }
      disc_label_unencoding(c, s);
      c.gates.push_back({GateKind::CX, {0, 1}, {}});
      break;
    }
    case AnsatzFamily::linear_entangling: {
      if (s.n_qubits < 2 || s.depth < 1)
        throw std::invalid_argument("linear_entangling needs n>=2, d>=1");
      for (int layer = 0; layer < s.depth; ++layer) {
        rotation_layer(c, GateKind::RX, slot, 0, s.n_qubits);
        rotation_layer(c, GateKind::RY, slot, 0, s.n_qubits);
        cx_chain_up(c, s.n_qubits);
        rotation_layer(c, GateKind::RX, slot, 0, s.n_qubits);
        rotation_layer(c, GateKind::RY, slot, 0, s.n_qubits);
      }
      disc_label_unencoding(c, s);
      break;
    }
    case AnsatzFamily::circular_entangling: {
      if (s.n_qubits < 2 || s.depth < 1)
        throw std::invalid_argument("circular_entangling needs n>=2, d>=1");
      for (int layer = 0; layer < s.depth; ++layer) {
        rotation_layer(c, GateKind::RX, slot, 0, s.n_qubits);
        rotation_layer(c, GateKind::RY, slot, 0, s.n_qubits);
        cx_ring(c, s.n_qubits);
      }
      disc_label_unencoding(c, s);
      break;
    }
    case AnsatzFamily::generator_meta: {
      if (s.label.size() != 1)
        throw std::invalid_argument("generator_meta needs label (r)");
      const double r = s.label[0];
      // Each block re-uploads the label: per qubit RY(a*r + b), RZ(c*r + d)
      // (RY/RZ angles add), then a trainable RX/RY row and a CX chain.
      // Re-uploading lets deeper circuits realize higher harmonics in r
      // instead of a single fixed frequency per qubit.
      for (int block = 0; block < s.depth; ++block) {
        for (int q = 0; q < s.n_qubits; ++q) {
          c.gates.push_back({GateKind::RY, {q}, slot++, 0.0, r});
          c.gates.push_back({GateKind::RY, {q}, slot++, 0.0, 1.0});
          c.gates.push_back({GateKind::RZ, {q}, slot++, 0.0, r});
          c.gates.push_back({GateKind::RZ, {q}, slot++, 0.0, 1.0});
        }
        rotation_layer(c, GateKind::RX, slot, 0, s.n_qubits);
        rotation_layer(c, GateKind::RY, slot, 0, s.n_qubits);
        if (s.n_qubits > 1) cx_chain_up(c, s.n_qubits);
      }
      break;
    }
  }
  if (s.mirror)
    for (Gate& g : c.gates)
      for (int& t : g.targets) t = s.n_qubits - 1 - t;
  if (s.reversed) std::reverse(c.gates.begin(), c.gates.end());
  c.validate();
  return c;
}

std::vector<double> slot_scales(const ParamCircuit& c) {
  std::map<int, const Gate*> slot_gate;
  for (const Gate& g : c.gates) {
    if (!g.param_slot) continue;
    if (!g.is_rotation())
      throw std::invalid_argument("parameterized non-rotation gate");
    if (!slot_gate.emplace(*g.param_slot, &g).second)
      throw std::invalid_argument("parameter slot bound by multiple gates");
  }
  if (static_cast<int>(slot_gate.size()) != c.n_params)
    throw std::invalid_argument("unbound parameter slot");
  std::vector<double> scales(c.n_params);
  for (const auto& [slot, g] : slot_gate) scales[slot] = g->param_scale;
  return scales;
}

std::vector<double> param_shift_grad_scales(
    const std::function<double(const std::vector<double>&)>& loss,
    const std::vector<double>& scales, const std::vector<double>& params) {
  if (scales.size() != params.size())
    throw std::invalid_argument("parameter vector length mismatch");
  std::vector<double> grad(params.size(), 0.0);
  std::vector<double> p = params;
  for (std::size_t slot = 0; slot < params.size(); ++slot) {
    const double scale = scales[slot];
    if (std::abs(scale) < 1e-15) continue;
    const double shift = (kPi / 2.0) / scale;
    const double orig = p[slot];
    p[slot] = orig + shift;
    const double lp = loss(p);
    p[slot] = orig - shift;
    const double lm = loss(p);
    p[slot] = orig;
    grad[slot] = scale * (lp - lm) / 2.0;
  }
  return grad;
}

std::vector<double> param_shift_grad(
    const std::function<double(const std::vector<double>&)>& loss,
    const ParamCircuit& c, const std::vector<double>& params) {
  if (static_cast<int>(params.size()) != c.n_params)
    throw std::invalid_argument("parameter vector length mismatch");
  return param_shift_grad_scales(loss, slot_scales(c), params);
}

}  // namespace qgaa
