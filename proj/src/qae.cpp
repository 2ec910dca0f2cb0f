#include "qgaa/qae.hpp"

#include <cmath>
#include <cstdio>
#include <limits>
#include <random>
#include <sstream>

#include "qgaa/optimize.hpp"

#include "json.hpp"

namespace qgaa {

namespace {
constexpr double kTwoPi = 6.28318530717958647692;
}

std::string TrainRecord::to_csv() const {
  std::ostringstream os;
  os << "iter,loss,p_real,p_fake,mean_fidelity,lr_g,lr_d\n";
  char buf[256];
  for (const TrainStep& s : steps) {
    std::snprintf(buf, sizeof buf, "%d,%.12g,%.12g,%.12g,%.12g,%.12g,%.12g\n",
                  s.iter, s.loss, s.p_real, s.p_fake, s.mean_fidelity, s.lr_g,
                  s.lr_d);
    os << buf;
  }
  return os.str();
}

void QaeConfig::validate() const {
  if (l < 1 || l >= n) throw std::invalid_argument("need 1 <= l < n");
  if (encoder.n_qubits != n || decoder.n_qubits != n)
    throw std::invalid_argument("encoder/decoder must act on n qubits");
  if (budget < 1) throw std::invalid_argument("budget must be positive");
}

ParamCircuit QaeConfig::encoder_circuit() const { return build_ansatz(encoder); }
ParamCircuit QaeConfig::decoder_circuit() const { return build_ansatz(decoder); }

DensityMatrix encode(const QaeConfig& cfg, const std::vector<double>& theta_e,
                     const DensityMatrix& sigma) {
  if (sigma.n_qubits != cfg.n)
    throw std::invalid_argument("input state must have n qubits");
  const DensityMatrix full =
      apply_to_density(cfg.encoder_circuit(), theta_e, sigma);
  std::vector<int> keep(cfg.l);
  for (int q = 0; q < cfg.l; ++q) keep[q] = q;
  return partial_trace(full, keep);
}

DensityMatrix decode(const QaeConfig& cfg, const std::vector<double>& phi_d,
                     const DensityMatrix& eta) {
  if (eta.n_qubits != cfg.l)
    throw std::invalid_argument("latent state must have l qubits");
  const DensityMatrix trash =
      DensityMatrix::from_state(StateVector::basis(cfg.n - cfg.l, 0));
  return apply_to_density(cfg.decoder_circuit(), phi_d,
                          tensor_product(eta, trash));
}

namespace {

// Decoder restricted to its live input block: column a holds
// U_D |a>|0..0>, so decode(eta) = A eta A^dag without touching the rest of
// the unitary.
CMatrix decoder_columns(const QaeConfig& cfg, const ParamCircuit& dec,
                        const std::vector<double>& phi_d) {
  const std::size_t ldim = std::size_t{1} << cfg.l;
  const std::size_t tdim = std::size_t{1} << (cfg.n - cfg.l);
  CMatrix a(ldim * tdim, ldim);
  for (std::size_t col = 0; col < ldim; ++col) {
    const StateVector out =
        apply_to_state(dec, phi_d, StateVector::basis(cfg.n, col * tdim));
    for (std::size_t row = 0; row < out.dim(); ++row) a(row, col) = out.amplitudes[row];
  }
  return a;
}

// eta_{ab} = sum_t phi[(a t)] conj(phi[(b t)]) - the latent reduction of a
// pure encoded state, latent = most significant bits.
DensityMatrix latent_of_pure(int l, int trash, const StateVector& phi) {
  const std::size_t ldim = std::size_t{1} << l;
  const std::size_t tdim = std::size_t{1} << trash;
  CMatrix m(ldim, ldim);
  for (std::size_t a = 0; a < ldim; ++a)
    for (std::size_t b = 0; b < ldim; ++b) {
      cx s = 0;
      for (std::size_t t = 0; t < tdim; ++t)
        s += phi.amplitudes[a * tdim + t] * std::conj(phi.amplitudes[b * tdim + t]);
      m(a, b) = s;
    }
  return DensityMatrix(l, std::move(m));
}

}  // namespace

double qae_loss(const QaeConfig& cfg, const std::vector<double>& theta_e,
                const std::vector<double>& phi_d,
                const LabeledEnsemble& ensemble) {
  if (ensemble.entries.empty()) throw std::invalid_argument("empty ensemble");
  const ParamCircuit enc = cfg.encoder_circuit();
  const ParamCircuit dec = cfg.decoder_circuit();
  const CMatrix a = decoder_columns(cfg, dec, phi_d);
  const std::size_t ldim = std::size_t{1} << cfg.l;
  double total = 0;
  for (const auto& e : ensemble.entries) {
    DensityMatrix eta =
        e.pure ? latent_of_pure(cfg.l, cfg.n - cfg.l,
                                apply_to_state(enc, theta_e, *e.pure))
               : encode(cfg, theta_e, e.state);
    if (e.pure) {
      // F(|psi>, A eta A^dag) = w^dag eta w with w = A^dag psi
      std::vector<cx> w(ldim, 0.0);
      for (std::size_t col = 0; col < ldim; ++col)
        for (std::size_t row = 0; row < a.rows(); ++row)
          w[col] += std::conj(a(row, col)) * e.pure->amplitudes[row];
      cx f = 0;
      for (std::size_t i = 0; i < ldim; ++i)
        for (std::size_t j = 0; j < ldim; ++j)
          f += std::conj(w[i]) * eta.matrix(i, j) * w[j];
      total += 1.0 - f.real();
    } else {
      const DensityMatrix rho = decode(cfg, phi_d, eta);
      total += 1.0 - fidelity(e.state, rho);
    }
  }
  return total / static_cast<double>(ensemble.size());
}

TrainedQae train_qae(const QaeConfig& cfg, const LabeledEnsemble& ensemble,
                     TrainRecord* record) {
  cfg.validate();
  if (ensemble.entries.empty()) throw std::invalid_argument("empty ensemble");
  const int ne = ansatz_param_count(cfg.encoder);
  const int nd = ansatz_param_count(cfg.decoder);

  std::vector<double> p;
  if (cfg.init_params) {
    p = *cfg.init_params;
    if (static_cast<int>(p.size()) != ne + nd)
      throw std::invalid_argument("init_params length mismatch");
  } else {
    std::mt19937 rng(cfg.seed);
    std::uniform_real_distribution<double> u(0.0, kTwoPi);
    p.resize(ne + nd);
    for (double& v : p) v = u(rng);
  }

  auto split_loss = [&](const std::vector<double>& x) {
    return qae_loss(cfg, {x.begin(), x.begin() + ne}, {x.begin() + ne, x.end()},
                    ensemble);
  };

  std::vector<double> best = p;
  double best_loss;
  if (cfg.optimizer == OptimizerKind::cobyla) {
    int evals = 0;
    double running_best = std::numeric_limits<double>::infinity();
    auto traced = [&](const std::vector<double>& x) {
      const double v = split_loss(x);
      running_best = std::min(running_best, v);
      if (record) record->steps.push_back({evals, running_best, 0, 0,
                                           1.0 - running_best, 0, 0});
      ++evals;
      return v;
    };
    const CobylaResult r = cobyla_minimize(traced, p, cfg.budget);
    best = r.x;
    best_loss = r.f;
  } else {
    AdamState adam(p.size(), cfg.lr);
    std::vector<double> scales = slot_scales(cfg.encoder_circuit());
    const std::vector<double> dec_scales = slot_scales(cfg.decoder_circuit());
    scales.insert(scales.end(), dec_scales.begin(), dec_scales.end());
    best_loss = split_loss(p);
    for (int it = 0; it < cfg.budget; ++it) {
      const std::vector<double> g = param_shift_grad_scales(split_loss, scales, p);
      adam_step(adam, g, p);
      const double v = split_loss(p);
      if (record) record->steps.push_back({it, v, 0, 0, 1.0 - v, 0, 0});
      if (v < best_loss) {
        best_loss = v;
        best = p;
      }
    }
  }

  TrainedQae out;
  out.config = cfg;
  out.theta_e = {best.begin(), best.begin() + ne};
  out.phi_d = {best.begin() + ne, best.end()};
  out.final_loss = best_loss;
  for (const auto& e : ensemble.entries) {
    const DensityMatrix rho =
        decode(cfg, out.phi_d, encode(cfg, out.theta_e, e.state));
    out.fidelities.emplace_back(e.label, fidelity(e.state, rho));
  }
  return out;
}

namespace {

nlohmann::json spec_to_json(const AnsatzSpec& s) {
  return {{"family", family_name(s.family)},
          {"n_qubits", s.n_qubits},
          {"depth", s.depth},
          {"label", s.label},
          {"mirror", s.mirror},
          {"reversed", s.reversed}};
}

AnsatzSpec spec_from_json(const nlohmann::json& j) {
  AnsatzSpec s;
  s.family = family_from_name(j.at("family").get<std::string>());
  s.n_qubits = j.at("n_qubits").get<int>();
  s.depth = j.at("depth").get<int>();
  s.label = j.at("label").get<std::vector<double>>();
  s.mirror = j.value("mirror", false);
  s.reversed = j.value("reversed", false);
  return s;
}

}  // namespace

std::string TrainedQae::to_json() const {
  nlohmann::json fids = nlohmann::json::array();
  for (const auto& [label, f] : fidelities)
    fids.push_back({{"label", label}, {"fidelity", f}});
  nlohmann::json j = {
      {"config",
       {{"n", config.n},
        {"l", config.l},
        {"encoder", spec_to_json(config.encoder)},
        {"decoder", spec_to_json(config.decoder)},
        {"optimizer",
         config.optimizer == OptimizerKind::cobyla ? "cobyla" : "adam"},
        {"budget", config.budget},
        {"lr", config.lr},
        {"seed", config.seed}}},
      {"theta_e", theta_e},
      {"phi_d", phi_d},
      {"final_loss", final_loss},
      {"fidelities", fids}};
  return j.dump(2);
}

TrainedQae TrainedQae::from_json(const std::string& text) {
  const nlohmann::json j = nlohmann::json::parse(text);
  TrainedQae q;
  const nlohmann::json& c = j.at("config");
  q.config.n = c.at("n").get<int>();
  q.config.l = c.at("l").get<int>();
  q.config.encoder = spec_from_json(c.at("encoder"));
  q.config.decoder = spec_from_json(c.at("decoder"));
  q.config.optimizer = c.at("optimizer").get<std::string>() == "adam"
                           ? OptimizerKind::adam
                           : OptimizerKind::cobyla;
  q.config.budget = c.at("budget").get<int>();
  q.config.lr = c.at("lr").get<double>();
  q.config.seed = c.at("seed").get<unsigned>();
  q.theta_e = j.at("theta_e").get<std::vector<double>>();
  q.phi_d = j.at("phi_d").get<std::vector<double>>();
  q.final_loss = j.at("final_loss").get<double>();
  for (const auto& f : j.at("fidelities"))
    q.fidelities.emplace_back(f.at("label").get<std::vector<double>>(),
                              f.at("fidelity").get<double>());
  return q;
}

}  // namespace qgaa
