#include "qgaa/adversarial.hpp"

#include <cmath>
#include <stdexcept>

namespace qgaa {

AnsatzSpec GeneratorSpec::ansatz_for(const std::vector<double>& label) const {
  return AnsatzSpec{family, l, depth, label};
}

int GeneratorSpec::param_count() const {
  return ansatz_param_count(AnsatzSpec{family, l, depth,
                                       std::vector<double>(2, 0.0)});
}

AnsatzSpec DiscriminatorSpec::ansatz(const std::vector<double>& label) const {
  return AnsatzSpec{family, l + 1, depth,
                    label_conditioned ? label : std::vector<double>{}};
}

int DiscriminatorSpec::param_count() const {
  return ansatz_param_count(ansatz());
}

void AdversarialConfig::validate() const {
  if (max_iter < 1) throw std::invalid_argument("max_iter must be positive");
  if (eps_loss <= 0 || eps_loss >= 0.5 || eps_prob <= 0 || eps_prob >= 0.5)
    throw std::invalid_argument("stopping thresholds must lie in (0, 0.5)");
  if (eps_fid <= 0 || eps_fid > 1)
    throw std::invalid_argument("eps_fid must lie in (0, 1]");
  if (disc_steps < 1 || gen_steps < 1)
    throw std::invalid_argument("per-agent inner steps must be >= 1");
}

DensityMatrix generate(const GeneratorSpec& g, const std::vector<double>& label) {
  const ParamCircuit c = build_ansatz(g.ansatz_for(label));
  const StateVector out =
      apply_to_state(c, g.theta_g, StateVector::basis(g.l, 0));
  return DensityMatrix::from_state(out);
}

double discriminator_prob_real(const DiscriminatorSpec& d,
                               const DensityMatrix& state,
                               const std::vector<double>& label) {
  if (state.n_qubits != d.l)
    throw std::invalid_argument("discriminator input must have l qubits");
  const DensityMatrix probe =
      DensityMatrix::from_state(StateVector::basis(1, 0));
  const DensityMatrix out = apply_to_density(
      build_ansatz(d.ansatz(label)), d.theta_d, tensor_product(state, probe));
  // probe is the last qubit (least significant bit); P(+1) = P(probe = 0)
  double p0 = 0;
  for (std::size_t i = 0; i < out.dim(); i += 2) p0 += out.matrix(i, i).real();
  return p0;
}

double per_label_loss(const DiscriminatorSpec& d, const GeneratorSpec& g,
                      const DensityMatrix& eta_k,
                      const std::vector<double>& label) {
  const double p_real = discriminator_prob_real(d, eta_k, label);
  const double p_fake = discriminator_prob_real(d, generate(g, label), label);
  return 0.5 * (1.0 + p_real - p_fake);
}

double qgan_loss(const DiscriminatorSpec& d, const GeneratorSpec& g,
                 const LabeledEnsemble& real_source) {
  if (real_source.entries.empty()) throw std::invalid_argument("empty source");
  double total = 0;
  for (const auto& e : real_source.entries)
    total += per_label_loss(d, g, e.state, e.label);
  return total / static_cast<double>(real_source.size());
}

namespace {

struct IterationStats {
  double loss = 0, p_real = 0, p_fake = 0, mean_fid = 0;
};

IterationStats evaluate(const DiscriminatorSpec& d, const GeneratorSpec& g,
                        const LabeledEnsemble& real) {
  IterationStats s;
  for (const auto& e : real.entries) {
    const DensityMatrix nu = generate(g, e.label);
    const double pr = discriminator_prob_real(d, e.state, e.label);
    const double pf = discriminator_prob_real(d, nu, e.label);
    s.p_real += pr;
    s.p_fake += pf;
    s.loss += 0.5 * (1.0 + pr - pf);
    s.mean_fid += fidelity(e.state, nu);
  }
  const double m = static_cast<double>(real.size());
  s.loss /= m;
  s.p_real /= m;
  s.p_fake /= m;
  s.mean_fid /= m;
  return s;
}

// dL/dtheta_g, averaged per label so label-scaled generator slots (meta
// ansatz) each see their own parameter-shift frequency
std::vector<double> generator_grad(const DiscriminatorSpec& d,
                                   const GeneratorSpec& g,
                                   const LabeledEnsemble& real) {
  std::vector<double> grad(g.theta_g.size(), 0.0);
  GeneratorSpec work = g;
  for (const auto& e : real.entries) {
    const std::vector<double> scales =
        slot_scales(build_ansatz(g.ansatz_for(e.label)));
    auto loss = [&](const std::vector<double>& p) {
      work.theta_g = p;
      // p_real does not depend on theta_g; the per-label loss gradient is
      // that of -P(+1|nu)/2
      return -0.5 * discriminator_prob_real(d, generate(work, e.label), e.label);
    };
    const std::vector<double> gk =
        param_shift_grad_scales(loss, scales, g.theta_g);
    for (std::size_t i = 0; i < grad.size(); ++i) grad[i] += gk[i];
  }
  for (double& v : grad) v /= static_cast<double>(real.size());
  return grad;
}

std::vector<double> discriminator_grad(const DiscriminatorSpec& d,
                                       const GeneratorSpec& g,
                                       const LabeledEnsemble& real,
                                       const std::vector<double>& scales) {
  DiscriminatorSpec work = d;
  auto loss = [&](const std::vector<double>& p) {
    work.theta_d = p;
    return qgan_loss(work, g, real);
  };
  return param_shift_grad_scales(loss, scales, d.theta_d);
}

}  // namespace

AdversarialResult train_adversarial(const AdversarialConfig& cfg,
                                    const LabeledEnsemble& real_source,
                                    GeneratorSpec g0, DiscriminatorSpec d0) {
  cfg.validate();
  if (real_source.entries.empty()) throw std::invalid_argument("empty source");
  if (static_cast<int>(g0.theta_g.size()) != g0.param_count())
    throw std::invalid_argument("generator parameter length mismatch");
  if (static_cast<int>(d0.theta_d.size()) != d0.param_count())
    throw std::invalid_argument("discriminator parameter length mismatch");

  AdversarialResult res;
  res.generator = std::move(g0);
  res.discriminator = std::move(d0);
  GeneratorSpec& g = res.generator;
  DiscriminatorSpec& d = res.discriminator;

  const std::vector<double> disc_scales = slot_scales(build_ansatz(d.ansatz()));
  AdamState adam_g(g.theta_g.size(), cfg.lr_g);
  AdamState adam_d(d.theta_d.size(), cfg.lr_d);

  for (int iter = 0; iter < cfg.max_iter; ++iter) {
    const double lr_g = schedule_lr(cfg.sched_g, iter, cfg.lr_g);
    const double lr_d = schedule_lr(cfg.sched_d, iter, cfg.lr_d);

    // discriminator's strategy: ascend L_QGAN
    for (int s = 0; s < cfg.disc_steps; ++s) {
      if (cfg.optimizer == OptimizerKind::adam) {
        std::vector<double> grad =
            discriminator_grad(d, g, real_source, disc_scales);
        for (double& v : grad) v = -v;  // ascent
        adam_d.lr = lr_d;
        adam_step(adam_d, grad, d.theta_d);
      } else {
        DiscriminatorSpec work = d;
        auto neg = [&](const std::vector<double>& p) {
          work.theta_d = p;
          return -qgan_loss(work, g, real_source);
        };
        d.theta_d = cobyla_minimize(neg, d.theta_d, cfg.cobyla_inner_budget,
                                    lr_d, 1e-8).x;
      }
    }

    // recompute with the updated discriminator, then the generator's strategy
    for (int s = 0; s < cfg.gen_steps; ++s) {
      if (cfg.optimizer == OptimizerKind::adam) {
        const std::vector<double> grad = generator_grad(d, g, real_source);
        adam_g.lr = lr_g;
        adam_step(adam_g, grad, g.theta_g);
      } else {
        GeneratorSpec work = g;
        auto obj = [&](const std::vector<double>& p) {
          work.theta_g = p;
          return qgan_loss(d, work, real_source);
        };
        g.theta_g = cobyla_minimize(obj, g.theta_g, cfg.cobyla_inner_budget,
                                    lr_g, 1e-8).x;
      }
    }

    const IterationStats st = evaluate(d, g, real_source);
    if (std::isnan(st.loss))
      throw std::runtime_error("adversarial training produced NaN loss");
    res.record.steps.push_back(
        {iter, st.loss, st.p_real, st.p_fake, st.mean_fid, lr_g, lr_d});
    res.stop_iter = iter + 1;
    if (std::abs(st.loss - 0.5) < cfg.eps_loss &&
        std::min(st.p_real, st.p_fake) > 1.0 - cfg.eps_prob &&
        st.mean_fid > 1.0 - cfg.eps_fid) {
      res.converged = true;
      break;
    }
  }
  return res;
}

}  // namespace qgaa
