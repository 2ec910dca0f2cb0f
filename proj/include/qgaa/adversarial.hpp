#pragma once

#include <vector>

#include "qgaa/circuits.hpp"
#include "qgaa/linalg.hpp"
#include "qgaa/metrics.hpp"
#include "qgaa/optimize.hpp"
#include "qgaa/train_record.hpp"

namespace qgaa {

/// Conditional generator G(K, theta_g): an l-qubit label-conditioned ansatz
/// applied to |0..0>.
struct GeneratorSpec {
  int l = 0;
  AnsatzFamily family = AnsatzFamily::entangled_generator;
  int depth = 1;
  std::vector<double> theta_g;

  AnsatzSpec ansatz_for(const std::vector<double>& label) const;
  int param_count() const;
};

/// Probe-qubit discriminator: an ansatz over l+1 qubits acting on
/// (state x |0><0|_probe); the probe is the last qubit.
///
/// With label_conditioned set, the inverse of the label preparation is
/// folded into fixed rotations on the first input qubit after the trainable
/// layers, making the induced POVM T_K label-dependent without extra qubits
/// or parameters. The unconditioned
/// measurement sees only the label-averaged states, and for a training grid
/// whose mean state is maximally mixed the averaged loss is flat at 0.5, so
/// conditioning is what makes the min-max game on such grids non-degenerate.
struct DiscriminatorSpec {
  int l = 0;
  AnsatzFamily family = AnsatzFamily::entangled_discriminator;
  int depth = 1;
  bool label_conditioned = false;
  std::vector<double> theta_d;

  AnsatzSpec ansatz(const std::vector<double>& label = {}) const;
  int param_count() const;
};

struct AdversarialConfig {
  int max_iter = 500;
  OptimizerKind optimizer = OptimizerKind::adam;
  double lr_g = 0.1;
  double lr_d = 0.01;
  ScheduleConfig sched_g;  // identity schedule by default
  ScheduleConfig sched_d;
  int disc_steps = 1;  // discriminator updates per outer iteration
  int gen_steps = 1;   // generator updates per outer iteration
  int cobyla_inner_budget = 25;  // evaluations per agent step, cobyla mode
  double eps_loss = 0.02;
  double eps_prob = 0.05;
  // Third stop condition on the recorded real-vs-fake fidelity, the
  // conclusive convergence signal: the loss and probe probabilities alone
  // can also be satisfied mid-chase before the generator has aligned.
  double eps_fid = 0.01;
  unsigned seed = 0;

  void validate() const;
};

struct AdversarialResult {
  GeneratorSpec generator;
  DiscriminatorSpec discriminator;
  TrainRecord record;
  bool converged = false;
  int stop_iter = 0;
};

DensityMatrix generate(const GeneratorSpec& g, const std::vector<double>& label);

/// Prob(probe = +1 | state) = (1 + <Z_probe>)/2 after U_d. The label is
/// used only when the discriminator is label-conditioned.
double discriminator_prob_real(const DiscriminatorSpec& d,
                               const DensityMatrix& state,
                               const std::vector<double>& label = {});

/// L_K = 1/2 [1 + P(+1|eta_K) - P(+1|nu_K)]
double per_label_loss(const DiscriminatorSpec& d, const GeneratorSpec& g,
                      const DensityMatrix& eta_k,
                      const std::vector<double>& label);

/// Mean of per_label_loss over the (label -> real state) source.
double qgan_loss(const DiscriminatorSpec& d, const GeneratorSpec& g,
                 const LabeledEnsemble& real_source);

/// Alternating min-max training: discriminator ascent, loss recompute,
/// generator descent. Stops when |L - 0.5| < eps_loss,
/// min(p_real, p_fake) > 1 - eps_prob, and mean_fid > 1 - eps_fid all hold.
AdversarialResult train_adversarial(const AdversarialConfig& cfg,
                                    const LabeledEnsemble& real_source,
                                    GeneratorSpec g0, DiscriminatorSpec d0);

}  // namespace qgaa
