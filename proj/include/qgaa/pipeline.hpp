#pragma once

#include <optional>
#include <string>
#include <utility>
#include <vector>

#include "qgaa/adversarial.hpp"
#include "qgaa/hamiltonian.hpp"
#include "qgaa/metrics.hpp"
#include "qgaa/qae.hpp"

namespace qgaa {

/// One experiment: which stages run, how each stage is configured, and where
/// the artifact goes. All randomness flows from `seed`, fanned out to
/// per-stage sub-seeds (see sub_seed).
struct ExperimentConfig {
  std::string experiment = "entangled";  // entangled | h2 | lih | baseline
  std::vector<std::string> stages = {"qae", "qgan", "generate"};
  unsigned seed = 0;
  std::string out_dir;

  // entangled demo grid: k0 on [pi/2 - halfwidth, pi/2 + halfwidth]
  int n_k0 = 5;
  int n_k1 = 16;
  double k0_halfwidth = 0.06;  // units of pi

  // molecule runs
  std::string fixture;          // .ham file path
  std::vector<double> train_r;  // training bond lengths (subset of fixture)

  // stage knobs; defaults are filled per experiment by default_config
  QaeConfig qae;
  AdversarialConfig adv;
  int generator_depth = 1;
  int discriminator_depth = 3;
  AnsatzFamily generator_family = AnsatzFamily::generator_meta;
  AnsatzFamily discriminator_family = AnsatzFamily::entangled_discriminator;
  bool label_conditioned = true;

  // training robustness: restart a stage from the next sub-seed until it
  // meets its target or the restart budget runs out; best attempt is kept
  int qae_restarts = 8;
  double qae_target_loss = 1e-3;
  int qgan_restarts = 5;
  double qgan_target_fid = 0.95;

  static ExperimentConfig default_config(const std::string& experiment);
  static ExperimentConfig from_json(const std::string& text);
  std::string to_json() const;
  void validate() const;
};

/// Deterministic per-stage RNG seed derivation (FNV-style mix of the run
/// seed, a stage tag, and the attempt index).
unsigned sub_seed(unsigned seed, const std::string& stage, int attempt);

struct MetricRow {
  std::vector<double> label;
  bool in_train = false;
  double fidelity = 0.0;
  double energy_true = 0.0;   // molecules only
  double energy_gen = 0.0;    // molecules only
  double abs_delta_e = 0.0;   // molecules only
};

struct RunArtifact {
  ExperimentConfig config;
  std::optional<TrainedQae> qae;
  TrainRecord qae_record;
  std::optional<AdversarialResult> adv;
  std::vector<MetricRow> metrics;
  /// named CSV payloads written under series/ and bloch/
  std::vector<std::pair<std::string, std::string>> series;
  std::vector<std::pair<std::string, std::string>> bloch;

  std::string metrics_csv() const;
  std::string params_json() const;
};

/// |psi_K> = CX(q0 -> q1) RZ(k1) RY(k0) |00>
StateVector entangled_state(double k0, double k1);

/// Discrete n_k0 x n_k1 grid over the high-entanglement band.
LabeledEnsemble entangled_ensemble(int n_k0, int n_k1, double k0_halfwidth_pi);

RunArtifact run_entangled_demo(const ExperimentConfig& cfg);
RunArtifact run_molecule_qgaa(const ExperimentConfig& cfg,
                              const MoleculeDataset& dataset);
/// Appendix-style baseline: the generator emits full n-qubit states, no QAE.
RunArtifact run_baseline_qgan(const ExperimentConfig& cfg,
                              const MoleculeDataset& dataset);

/// Writes config.json, params.json, metrics.csv, series/*.csv, bloch/*.csv.
void export_artifact(const RunArtifact& artifact, const std::string& dir);

}  // namespace qgaa
