#pragma once

#include <functional>
#include <optional>
#include <string>
#include <vector>

#include "qgaa/linalg.hpp"

namespace qgaa {

enum class GateKind { RX, RY, RZ, H, CX, CZ, CSWAP };

const char* gate_name(GateKind k);

/// One gate. Rotation gates bind the angle
///   param_scale * params[param_slot] + angle_offset
/// (angle_offset alone when no slot is set). Label constants such as RY(k0)
/// or the r-scaled slots of the meta generator fold into offset/scale, so
/// label circuits and trainable circuits share one type.
struct Gate {
  GateKind kind;
  std::vector<int> targets;
  std::optional<int> param_slot;
  double angle_offset = 0.0;
  double param_scale = 1.0;

  bool is_rotation() const {
    return kind == GateKind::RX || kind == GateKind::RY || kind == GateKind::RZ;
  }
};

struct ParamCircuit {
  int n_qubits = 0;
  std::vector<Gate> gates;
  int n_params = 0;

  void validate() const;
  /// one-gate-per-line debug dump, e.g. `RY q0 slot:3 offset:0.0`
  std::string dump() const;
};

enum class AnsatzFamily {
  entangled_qae,            // 2-qubit encoder/decoder: RY pair, CZ, RY pair
  entangled_generator,      // 1-qubit Euler ansatz conditioned on (k0, k1)
  entangled_discriminator,  // 2-qubit probe discriminator, 12 parameters
  linear_entangling,        // RX+RY layers with a CX chain, 4n params/layer
  circular_entangling,      // RX+RY layers with a CX ring, 2n params/layer
  generator_meta,           // re-uploaded label encoding + processing blocks
};

struct AnsatzSpec {
  AnsatzFamily family;
  int n_qubits = 0;
  int depth = 1;
  /// label values for label-conditioned families (entangled_generator: k0,
  /// k1; generator_meta: r). Empty otherwise.
  std::vector<double> label;
  /// Relabel every target q -> n-1-q. The entangled-example encoder is
  /// published with its parameters indexed from the opposite wire end; the
  /// mirrored build reproduces its quoted optimum exactly.
  bool mirror = false;
  /// Reverse the gate order (adjoint structure with free parameters).
  /// Decoders use this: the layered families are not closed under
  /// inversion, and a decoder oriented like the encoder provably cannot
  /// invert it on the states these ansatzes compress.
  bool reversed = false;
};

const char* family_name(AnsatzFamily f);
AnsatzFamily family_from_name(const std::string& name);

/// Closed-form trainable-parameter count for a family/size/depth.
int ansatz_param_count(const AnsatzSpec& spec);

ParamCircuit build_ansatz(const AnsatzSpec& spec);

UnitaryMatrix gate_matrix(const Gate& g, double bound_angle);

UnitaryMatrix circuit_unitary(const ParamCircuit& c,
                              const std::vector<double>& params);

StateVector apply_to_state(const ParamCircuit& c,
                           const std::vector<double>& params,
                           const StateVector& psi);

DensityMatrix apply_to_density(const ParamCircuit& c,
                               const std::vector<double>& params,
                               const DensityMatrix& rho);

/// Per-slot param_scale of the gate binding each slot. Every slot must be
/// bound by exactly one single-qubit rotation gate.
std::vector<double> slot_scales(const ParamCircuit& c);

/// Exact gradient of `loss` via the parameter-shift rule, given the binding
/// scale of each slot (e.g. a concatenation of slot_scales over several
/// circuits sharing one parameter vector).
std::vector<double> param_shift_grad_scales(
    const std::function<double(const std::vector<double>&)>& loss,
    const std::vector<double>& scales, const std::vector<double>& params);

/// Exact gradient of `loss` via the parameter-shift rule. Every slot must be
/// bound by exactly one single-qubit rotation gate.
std::vector<double> param_shift_grad(
    const std::function<double(const std::vector<double>&)>& loss,
    const ParamCircuit& c, const std::vector<double>& params);

}  // namespace qgaa
