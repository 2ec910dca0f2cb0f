#pragma once

#include <optional>
#include <string>
#include <utility>
#include <vector>

#include "qgaa/circuits.hpp"
#include "qgaa/linalg.hpp"
#include "qgaa/metrics.hpp"
#include "qgaa/optimize.hpp"
#include "qgaa/train_record.hpp"

namespace qgaa {

struct QaeConfig {
  int n = 0;  // input qubits
  int l = 0;  // latent qubits, 1 <= l < n
  AnsatzSpec encoder;
  AnsatzSpec decoder;
  OptimizerKind optimizer = OptimizerKind::cobyla;
  int budget = 5000;  // COBYLA evaluations or Adam iterations
  double lr = 0.01;   // Adam only
  unsigned seed = 0;
  /// optional explicit start, concatenated theta_E | phi_D
  std::optional<std::vector<double>> init_params;

  void validate() const;
  ParamCircuit encoder_circuit() const;
  ParamCircuit decoder_circuit() const;
};

struct TrainedQae {
  QaeConfig config;
  std::vector<double> theta_e;
  std::vector<double> phi_d;
  double final_loss = 0.0;
  /// per-state reconstruction fidelities in ensemble order
  std::vector<std::pair<std::vector<double>, double>> fidelities;

  std::string to_json() const;
  static TrainedQae from_json(const std::string& text);
};

/// Latent state: Tr_trash[U_E sigma U_E^dag], latent = first l qubits.
DensityMatrix encode(const QaeConfig& cfg, const std::vector<double>& theta_e,
                     const DensityMatrix& sigma);

/// U_D (eta x |0..0><0..0|) U_D^dag on n qubits.
DensityMatrix decode(const QaeConfig& cfg, const std::vector<double>& phi_d,
                     const DensityMatrix& eta);

/// Eq.-style reconstruction loss: mean of 1 - F(sigma, decode(encode(sigma))).
double qae_loss(const QaeConfig& cfg, const std::vector<double>& theta_e,
                const std::vector<double>& phi_d,
                const LabeledEnsemble& ensemble);

TrainedQae train_qae(const QaeConfig& cfg, const LabeledEnsemble& ensemble,
                     TrainRecord* record = nullptr);

}  // namespace qgaa
