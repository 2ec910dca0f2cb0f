#include "qgaa/pipeline.hpp"

#include <cmath>
#include <cstdio>
#include <filesystem>
#include <fstream>
#include <random>
#include <sstream>
#include <stdexcept>

#include "json.hpp"

namespace qgaa {

namespace {

constexpr double kPi = 3.14159265358979323846;
constexpr double kTwoPi = 2.0 * kPi;

nlohmann::json spec_to_json(const AnsatzSpec& s) {
  return {{"family", family_name(s.family)}, {"n_qubits", s.n_qubits},
          {"depth", s.depth},                {"label", s.label},
          {"mirror", s.mirror},              {"reversed", s.reversed}};
}

AnsatzSpec spec_from_json(const nlohmann::json& j) {
  AnsatzSpec s;
  s.family = family_from_name(j.at("family").get<std::string>());
  s.n_qubits = j.at("n_qubits").get<int>();
  s.depth = j.at("depth").get<int>();
  s.label = j.value("label", std::vector<double>{});
  s.mirror = j.value("mirror", false);
  s.reversed = j.value("reversed", false);
  return s;
}

const char* opt_name(OptimizerKind k) {
  return k == OptimizerKind::adam ? "adam" : "cobyla";
}

OptimizerKind opt_from_name(const std::string& s) {
  if (s == "adam") return OptimizerKind::adam;
  if (s == "cobyla") return OptimizerKind::cobyla;
  throw std::invalid_argument("unknown optimizer: " + s);
}

std::string fmt(double v) {
  char buf[40];
  std::snprintf(buf, sizeof buf, "%.12g", v);
  return buf;
}

}  // namespace

unsigned sub_seed(unsigned seed, const std::string& stage, int attempt) {
  std::uint64_t h = 1469598103934665603ull ^ seed;
  auto mix = [&h](std::uint64_t v) {
    h ^= v;
    h *= 1099511628211ull;
  };
  for (char c : stage) mix(static_cast<unsigned char>(c));
  mix(static_cast<std::uint64_t>(attempt) + 0x9e3779b9u);
  return static_cast<unsigned>(h ^ (h >> 32));
}

ExperimentConfig ExperimentConfig::default_config(const std::string& experiment) {
  ExperimentConfig c;
  c.experiment = experiment;
  if (experiment == "entangled") {
    c.qae.n = 2;
    c.qae.l = 1;
    c.qae.encoder = {AnsatzFamily::entangled_qae, 2, 1, {}, true, false};
    c.qae.decoder = {AnsatzFamily::entangled_qae, 2, 1, {}, false, true};
    c.qae.optimizer = OptimizerKind::cobyla;
    c.qae.budget = 3000;
    c.qae_target_loss = 1e-4;
    c.generator_family = AnsatzFamily::entangled_generator;
    c.discriminator_family = AnsatzFamily::entangled_discriminator;
    c.label_conditioned = true;
    c.qgan_target_fid = 0.99;
  } else if (experiment == "h2") {
    c.stages = {"qae", "qgan", "generate"};
    c.fixture = "fixtures/h2_sto3g_jw_4q.ham";
    c.train_r = {0.3, 0.6, 0.9, 1.2, 1.5, 1.8, 2.1};
    c.qae.n = 4;
    c.qae.l = 1;
    c.qae.encoder = {AnsatzFamily::linear_entangling, 4, 1, {}, false, false};
    c.qae.decoder = {AnsatzFamily::linear_entangling, 4, 1, {}, false, true};
    c.qae.optimizer = OptimizerKind::cobyla;
    c.qae.budget = 12000;
    c.qae_target_loss = 1e-3;
    c.generator_depth = 1;
    c.discriminator_depth = 1;
    c.generator_family = AnsatzFamily::generator_meta;
    c.discriminator_family = AnsatzFamily::entangled_discriminator;
    c.label_conditioned = true;
    c.qgan_target_fid = 0.95;
  } else if (experiment == "lih") {
    c.stages = {"qae", "qgan", "generate"};
    c.fixture = "fixtures/lih_6q.ham";
    c.train_r = {0.5, 1.0, 1.5, 2.0, 2.5, 3.0, 3.5, 4.0};
    c.qae.n = 6;
    c.qae.l = 4;
    c.qae.encoder = {AnsatzFamily::circular_entangling, 6, 3, {}, false, false};
    c.qae.decoder = {AnsatzFamily::circular_entangling, 6, 3, {}, false, true};
    c.qae.optimizer = OptimizerKind::adam;
    c.qae.budget = 2000;
    c.qae.lr = 0.02;
    c.qae_restarts = 4;
    c.qae_target_loss = 0.10;
    c.generator_depth = 3;
    c.discriminator_depth = 3;
    c.generator_family = AnsatzFamily::generator_meta;
    c.discriminator_family = AnsatzFamily::circular_entangling;
    c.label_conditioned = true;
    c.adv.max_iter = 1000;
    c.adv.sched_g = {0.75, 100};
    c.adv.sched_d = {0.75, 250};
    c.qgan_restarts = 3;
    c.qgan_target_fid = 0.80;
  } else if (experiment == "baseline") {
    // Appendix-style comparison: the generator emits the full 4-qubit
    // states, so it needs the depth the QGAA generator spends on 1 qubit.
    c.stages = {"baseline"};
    c.fixture = "fixtures/h2_sto3g_jw_4q.ham";
    c.train_r = {0.3, 0.6, 0.9, 1.2, 1.5, 1.8, 2.1};
    c.qae.n = 4;
    c.qae.l = 4;  // generator width; no QAE stage runs
    c.generator_depth = 3;
    c.discriminator_depth = 3;
    c.generator_family = AnsatzFamily::generator_meta;
    c.discriminator_family = AnsatzFamily::circular_entangling;
    c.label_conditioned = true;
    c.adv.max_iter = 500;
    c.qgan_restarts = 3;
    c.qgan_target_fid = 0.90;
  } else {
    throw std::invalid_argument("unknown experiment: " + experiment);
  }
  return c;
}

void ExperimentConfig::validate() const {
  if (experiment != "entangled" && experiment != "h2" && experiment != "lih" &&
      experiment != "baseline")
    throw std::invalid_argument("unknown experiment: " + experiment);
  for (const std::string& s : stages)
    if (s != "qae" && s != "qgan" && s != "generate" && s != "baseline")
      throw std::invalid_argument("unknown stage: " + s);
  if (experiment == "entangled") {
    if (n_k0 < 1 || n_k1 < 1) throw std::invalid_argument("empty label grid");
  } else if (fixture.empty()) {
    throw std::invalid_argument("molecule experiment needs a fixture path");
  }
  if (qae_restarts < 1 || qgan_restarts < 1)
    throw std::invalid_argument("restart budgets must be positive");
}

std::string ExperimentConfig::to_json() const {
  nlohmann::json j = {
      {"experiment", experiment},
      {"stages", stages},
      {"seed", seed},
      {"out_dir", out_dir},
      {"n_k0", n_k0},
      {"n_k1", n_k1},
      {"k0_halfwidth", k0_halfwidth},
      {"fixture", fixture},
      {"train_r", train_r},
      {"qae",
       {{"n", qae.n},
        {"l", qae.l},
        {"encoder", spec_to_json(qae.encoder)},
        {"decoder", spec_to_json(qae.decoder)},
        {"optimizer", opt_name(qae.optimizer)},
        {"budget", qae.budget},
        {"lr", qae.lr}}},
      {"adv",
       {{"max_iter", adv.max_iter},
        {"optimizer", opt_name(adv.optimizer)},
        {"lr_g", adv.lr_g},
        {"lr_d", adv.lr_d},
        {"sched_g", {{"factor", adv.sched_g.factor}, {"period", adv.sched_g.period}}},
        {"sched_d", {{"factor", adv.sched_d.factor}, {"period", adv.sched_d.period}}},
        {"disc_steps", adv.disc_steps},
        {"gen_steps", adv.gen_steps},
        {"cobyla_inner_budget", adv.cobyla_inner_budget},
        {"eps_loss", adv.eps_loss},
        {"eps_prob", adv.eps_prob},
        {"eps_fid", adv.eps_fid}}},
      {"generator_depth", generator_depth},
      {"discriminator_depth", discriminator_depth},
      {"generator_family", family_name(generator_family)},
      {"discriminator_family", family_name(discriminator_family)},
      {"label_conditioned", label_conditioned},
      {"qae_restarts", qae_restarts},
      {"qae_target_loss", qae_target_loss},
      {"qgan_restarts", qgan_restarts},
      {"qgan_target_fid", qgan_target_fid}};
  return j.dump(2);
}

ExperimentConfig ExperimentConfig::from_json(const std::string& text) {
  const nlohmann::json j = nlohmann::json::parse(text);
  ExperimentConfig c =
      default_config(j.value("experiment", std::string("entangled")));
  if (j.contains("stages")) c.stages = j.at("stages").get<std::vector<std::string>>();
  c.seed = j.value("seed", c.seed);
  c.out_dir = j.value("out_dir", c.out_dir);
  c.n_k0 = j.value("n_k0", c.n_k0);
  c.n_k1 = j.value("n_k1", c.n_k1);
  c.k0_halfwidth = j.value("k0_halfwidth", c.k0_halfwidth);
  c.fixture = j.value("fixture", c.fixture);
  if (j.contains("train_r")) c.train_r = j.at("train_r").get<std::vector<double>>();
  if (j.contains("qae")) {
    const nlohmann::json& q = j.at("qae");
    c.qae.n = q.value("n", c.qae.n);
    c.qae.l = q.value("l", c.qae.l);
    if (q.contains("encoder")) c.qae.encoder = spec_from_json(q.at("encoder"));
    if (q.contains("decoder")) c.qae.decoder = spec_from_json(q.at("decoder"));
    if (q.contains("optimizer"))
      c.qae.optimizer = opt_from_name(q.at("optimizer").get<std::string>());
    c.qae.budget = q.value("budget", c.qae.budget);
    c.qae.lr = q.value("lr", c.qae.lr);
  }
  if (j.contains("adv")) {
    const nlohmann::json& a = j.at("adv");
    c.adv.max_iter = a.value("max_iter", c.adv.max_iter);
    if (a.contains("optimizer"))
      c.adv.optimizer = opt_from_name(a.at("optimizer").get<std::string>());
    c.adv.lr_g = a.value("lr_g", c.adv.lr_g);
    c.adv.lr_d = a.value("lr_d", c.adv.lr_d);
    if (a.contains("sched_g"))
      c.adv.sched_g = {a.at("sched_g").value("factor", 1.0),
                       a.at("sched_g").value("period", 0)};
    if (a.contains("sched_d"))
      c.adv.sched_d = {a.at("sched_d").value("factor", 1.0),
                       a.at("sched_d").value("period", 0)};
    c.adv.disc_steps = a.value("disc_steps", c.adv.disc_steps);
    c.adv.gen_steps = a.value("gen_steps", c.adv.gen_steps);
    c.adv.cobyla_inner_budget =
        a.value("cobyla_inner_budget", c.adv.cobyla_inner_budget);
    c.adv.eps_loss = a.value("eps_loss", c.adv.eps_loss);
    c.adv.eps_prob = a.value("eps_prob", c.adv.eps_prob);
    c.adv.eps_fid = a.value("eps_fid", c.adv.eps_fid);
  }
  c.generator_depth = j.value("generator_depth", c.generator_depth);
  c.discriminator_depth = j.value("discriminator_depth", c.discriminator_depth);
  if (j.contains("generator_family"))
    c.generator_family =
        family_from_name(j.at("generator_family").get<std::string>());
  if (j.contains("discriminator_family"))
    c.discriminator_family =
        family_from_name(j.at("discriminator_family").get<std::string>());
  c.label_conditioned = j.value("label_conditioned", c.label_conditioned);
  c.qae_restarts = j.value("qae_restarts", c.qae_restarts);
  c.qae_target_loss = j.value("qae_target_loss", c.qae_target_loss);
  c.qgan_restarts = j.value("qgan_restarts", c.qgan_restarts);
  c.qgan_target_fid = j.value("qgan_target_fid", c.qgan_target_fid);
  c.validate();
  return c;
}

StateVector entangled_state(double k0, double k1) {
  ParamCircuit c;
  c.n_qubits = 2;
  c.gates.push_back({GateKind::RY, {0}, std::nullopt, k0});
  c.gates.push_back({GateKind::RZ, {0}, std::nullopt, k1});
  c.gates.push_back({GateKind::CX, {0, 1}});
  return apply_to_state(c, {}, StateVector::basis(2, 0));
}

LabeledEnsemble entangled_ensemble(int n_k0, int n_k1, double k0_halfwidth_pi) {
  LabeledEnsemble ens;
  for (int i = 0; i < n_k0; ++i) {
    const double frac = n_k0 == 1 ? 0.5 : static_cast<double>(i) / (n_k0 - 1);
    const double k0 = (0.5 - k0_halfwidth_pi + 2.0 * k0_halfwidth_pi * frac) * kPi;
    for (int j = 0; j < n_k1; ++j) {
      const double k1 = kTwoPi * j / n_k1;
      const StateVector psi = entangled_state(k0, k1);
      ens.entries.push_back({{k0, k1}, DensityMatrix::from_state(psi), psi});
    }
  }
  return ens;
}

namespace {

bool has_stage(const ExperimentConfig& c, const std::string& s) {
  for (const std::string& st : c.stages)
    if (st == s) return true;
  return false;
}

nlohmann::json read_json_file(const std::string& path) {
  std::ifstream f(path);
  if (!f) throw std::runtime_error("cannot open " + path);
  return nlohmann::json::parse(f);
}

TrainedQae load_prior_qae(const ExperimentConfig& cfg) {
  const nlohmann::json j = read_json_file(cfg.out_dir + "/params.json");
  if (!j.contains("qae"))
    throw std::runtime_error("no persisted QAE stage in " + cfg.out_dir);
  return TrainedQae::from_json(j.at("qae").dump());
}

GeneratorSpec load_prior_generator(const ExperimentConfig& cfg) {
  const nlohmann::json j = read_json_file(cfg.out_dir + "/params.json");
  if (!j.contains("generator"))
    throw std::runtime_error("no persisted QGAN stage in " + cfg.out_dir);
  const nlohmann::json& g = j.at("generator");
  GeneratorSpec spec;
  spec.l = g.at("l").get<int>();
  spec.family = family_from_name(g.at("family").get<std::string>());
  spec.depth = g.at("depth").get<int>();
  spec.theta_g = g.at("theta_g").get<std::vector<double>>();
  return spec;
}

TrainedQae train_qae_with_restarts(const ExperimentConfig& cfg,
                                   const LabeledEnsemble& train,
                                   TrainRecord* record) {
  TrainedQae best;
  TrainRecord best_record;
  bool have = false;
  for (int attempt = 0; attempt < cfg.qae_restarts; ++attempt) {
    QaeConfig qc = cfg.qae;
    qc.seed = sub_seed(cfg.seed, "qae", attempt);
    TrainRecord rec;
    const TrainedQae t = train_qae(qc, train, &rec);
    if (!have || t.final_loss < best.final_loss) {
      best = t;
      best_record = std::move(rec);
      have = true;
    }
    if (best.final_loss <= cfg.qae_target_loss) break;
  }
  if (record) *record = std::move(best_record);
  return best;
}

AdversarialResult train_qgan_with_restarts(const ExperimentConfig& cfg,
                                           const LabeledEnsemble& latents,
                                           bool entangled_init) {
  AdversarialResult best;
  bool have = false;
  for (int attempt = 0; attempt < cfg.qgan_restarts; ++attempt) {
    const unsigned s = sub_seed(cfg.seed, "qgan", attempt);
    std::mt19937 rng(s);

    GeneratorSpec g;
    g.l = cfg.qae.l;
    g.family = cfg.generator_family;
    g.depth = cfg.generator_depth;
    g.theta_g.resize(g.param_count());
    DiscriminatorSpec d;
    d.l = cfg.qae.l;
    d.family = cfg.discriminator_family;
    d.depth = cfg.discriminator_depth;
    d.label_conditioned = cfg.label_conditioned;
    d.theta_d.resize(d.param_count());

    if (entangled_init) {
      // published starting point theta_g = (pi/2, 0) plus unit noise
      std::normal_distribution<double> n01(0.0, 1.0);
      g.theta_g[0] = 0.5 * kPi + n01(rng);
      for (std::size_t i = 1; i < g.theta_g.size(); ++i) g.theta_g[i] = n01(rng);
      for (double& v : d.theta_d) v = n01(rng);
    } else {
      std::uniform_real_distribution<double> u(0.0, kTwoPi);
      for (double& v : g.theta_g) v = u(rng);
      for (double& v : d.theta_d) v = u(rng);
    }

    AdversarialConfig ac = cfg.adv;
    ac.seed = s;
    AdversarialResult r = train_adversarial(ac, latents, g, d);
    const double fid = r.record.steps.empty()
                           ? 0.0
                           : r.record.steps.back().mean_fidelity;
    const double best_fid = have && !best.record.steps.empty()
                                ? best.record.steps.back().mean_fidelity
                                : -1.0;
    if (!have || (r.converged && !best.converged) ||
        (r.converged == best.converged && fid > best_fid)) {
      best = std::move(r);
      have = true;
    }
    if (best.converged &&
        best.record.steps.back().mean_fidelity >= cfg.qgan_target_fid)
      break;
  }
  return best;
}

std::string bloch_csv(
    const std::string& label_header,
    const std::vector<std::pair<std::vector<double>, BlochVector>>& rows) {
  std::string out = label_header + ",x,y,z\n";
  for (const auto& [label, b] : rows) {
    std::string cells;
    for (double v : label) cells += fmt(v) + ",";
    out += cells + fmt(b.x) + "," + fmt(b.y) + "," + fmt(b.z) + "\n";
  }
  return out;
}

}  // namespace

RunArtifact run_entangled_demo(const ExperimentConfig& cfg) {
  cfg.validate();
  RunArtifact art;
  art.config = cfg;
  const LabeledEnsemble train =
      entangled_ensemble(cfg.n_k0, cfg.n_k1, cfg.k0_halfwidth);

  TrainedQae qae;
  if (has_stage(cfg, "qae")) {
    qae = train_qae_with_restarts(cfg, train, &art.qae_record);
    art.qae = qae;
    art.series.emplace_back("qae_loss", art.qae_record.to_csv());
  } else if (has_stage(cfg, "qgan") || has_stage(cfg, "generate")) {
    qae = load_prior_qae(cfg);
    art.qae = qae;
  }

  LabeledEnsemble latents;
  if (has_stage(cfg, "qgan") || has_stage(cfg, "generate")) {
    for (const auto& e : train.entries)
      latents.entries.push_back(
          {e.label, encode(qae.config, qae.theta_e, e.state)});
  }

  GeneratorSpec gen;
  if (has_stage(cfg, "qgan")) {
    AdversarialResult res = train_qgan_with_restarts(cfg, latents, true);
    gen = res.generator;
    art.series.emplace_back("qgan", res.record.to_csv());
    art.adv = std::move(res);
  } else if (has_stage(cfg, "generate")) {
    gen = load_prior_generator(cfg);
  }

  if (has_stage(cfg, "generate")) {
    std::vector<std::pair<std::vector<double>, BlochVector>> lat_rows, gen_rows;
    for (std::size_t i = 0; i < train.entries.size(); ++i) {
      const auto& e = train.entries[i];
      const DensityMatrix nu = generate(gen, e.label);
      const DensityMatrix xi = decode(qae.config, qae.phi_d, nu);
      MetricRow row;
      row.label = e.label;
      row.in_train = true;
      row.fidelity = fidelity(e.state, xi);
      art.metrics.push_back(row);
      lat_rows.emplace_back(e.label, bloch_vector(latents.entries[i].state));
      gen_rows.emplace_back(e.label, bloch_vector(nu));
    }
    art.bloch.emplace_back("latent", bloch_csv("k0,k1", lat_rows));
    art.bloch.emplace_back("generated", bloch_csv("k0,k1", gen_rows));
  }
  return art;
}

RunArtifact run_molecule_qgaa(const ExperimentConfig& cfg,
                              const MoleculeDataset& dataset) {
  cfg.validate();
  RunArtifact art;
  art.config = cfg;
  const LabeledEnsemble train = dataset_to_ensemble(dataset, cfg.train_r);

  TrainedQae qae;
  if (has_stage(cfg, "qae")) {
    qae = train_qae_with_restarts(cfg, train, &art.qae_record);
    art.qae = qae;
    art.series.emplace_back("qae_loss", art.qae_record.to_csv());
  } else if (has_stage(cfg, "qgan") || has_stage(cfg, "generate")) {
    qae = load_prior_qae(cfg);
    art.qae = qae;
  }

  LabeledEnsemble latents;
  if (has_stage(cfg, "qgan")) {
    for (const auto& e : train.entries)
      latents.entries.push_back(
          {e.label, encode(qae.config, qae.theta_e, e.state)});
  }

  GeneratorSpec gen;
  if (has_stage(cfg, "qgan")) {
    AdversarialResult res = train_qgan_with_restarts(cfg, latents, false);
    gen = res.generator;
    art.series.emplace_back("qgan", res.record.to_csv());
    art.adv = std::move(res);
  } else if (has_stage(cfg, "generate")) {
    gen = load_prior_generator(cfg);
  }

  if (has_stage(cfg, "generate")) {
    std::vector<std::pair<std::vector<double>, BlochVector>> lat_rows, gen_rows;
    auto in_train = [&cfg](double r) {
      for (double t : cfg.train_r)
        if (std::abs(t - r) <= 1e-9) return true;
      return false;
    };
    for (const auto& ent : dataset.entries) {
      const DensityMatrix nu = generate(gen, {ent.r});
      const DensityMatrix xi = decode(qae.config, qae.phi_d, nu);
      const GroundState& gs = dataset.ground_at(ent.r);
      MetricRow row;
      row.label = {ent.r};
      row.in_train = in_train(ent.r);
      row.fidelity = fidelity(DensityMatrix::from_state(gs.state), xi);
      row.energy_true = gs.energy;
      row.energy_gen = expectation(ent.hamiltonian, xi);
      row.abs_delta_e = std::abs(row.energy_gen - row.energy_true);
      art.metrics.push_back(row);
      if (cfg.qae.l == 1) {
        if (row.in_train)
          lat_rows.push_back(
              {{ent.r},
               bloch_vector(encode(qae.config, qae.theta_e,
                                   DensityMatrix::from_state(gs.state)))});
        gen_rows.push_back({{ent.r}, bloch_vector(nu)});
      }
    }
    if (cfg.qae.l == 1) {
      art.bloch.emplace_back("latent", bloch_csv("r", lat_rows));
      art.bloch.emplace_back("generated", bloch_csv("r", gen_rows));
    }
  }
  return art;
}

RunArtifact run_baseline_qgan(const ExperimentConfig& cfg,
                              const MoleculeDataset& dataset) {
  cfg.validate();
  RunArtifact art;
  art.config = cfg;
  const LabeledEnsemble train = dataset_to_ensemble(dataset, cfg.train_r);

  AdversarialResult res = train_qgan_with_restarts(cfg, train, false);
  art.series.emplace_back("qgan", res.record.to_csv());

  auto in_train = [&cfg](double r) {
    for (double t : cfg.train_r)
      if (std::abs(t - r) <= 1e-9) return true;
    return false;
  };
  for (const auto& ent : dataset.entries) {
    const DensityMatrix nu = generate(res.generator, {ent.r});
    const GroundState& gs = dataset.ground_at(ent.r);
    MetricRow row;
    row.label = {ent.r};
    row.in_train = in_train(ent.r);
    row.fidelity = fidelity(DensityMatrix::from_state(gs.state), nu);
    row.energy_true = gs.energy;
    row.energy_gen = expectation(ent.hamiltonian, nu);
    row.abs_delta_e = std::abs(row.energy_gen - row.energy_true);
    art.metrics.push_back(row);
  }
  art.adv = std::move(res);
  return art;
}

std::string RunArtifact::metrics_csv() const {
  std::string out;
  const bool molecular = !metrics.empty() && metrics.front().label.size() == 1;
  if (molecular) {
    out = "r,in_train,fidelity,energy_true,energy_gen,abs_delta_e\n";
    for (const MetricRow& m : metrics)
      out += fmt(m.label[0]) + "," + (m.in_train ? "1" : "0") + "," +
             fmt(m.fidelity) + "," + fmt(m.energy_true) + "," +
             fmt(m.energy_gen) + "," + fmt(m.abs_delta_e) + "\n";
  } else {
    out = "k0,k1,in_train,fidelity\n";
    for (const MetricRow& m : metrics)
      out += fmt(m.label[0]) + "," + fmt(m.label[1]) + "," +
             (m.in_train ? "1" : "0") + "," + fmt(m.fidelity) + "\n";
  }
  return out;
}

std::string RunArtifact::params_json() const {
  nlohmann::json j = nlohmann::json::object();
  if (qae) j["qae"] = nlohmann::json::parse(qae->to_json());
  if (adv) {
    j["generator"] = {{"l", adv->generator.l},
                      {"family", family_name(adv->generator.family)},
                      {"depth", adv->generator.depth},
                      {"theta_g", adv->generator.theta_g}};
    j["discriminator"] = {
        {"l", adv->discriminator.l},
        {"family", family_name(adv->discriminator.family)},
        {"depth", adv->discriminator.depth},
        {"label_conditioned", adv->discriminator.label_conditioned},
        {"theta_d", adv->discriminator.theta_d}};
    j["converged"] = adv->converged;
    j["stop_iter"] = adv->stop_iter;
  }
  return j.dump(2);
}

void export_artifact(const RunArtifact& artifact, const std::string& dir) {
  namespace fs = std::filesystem;
  fs::create_directories(dir);
  auto write = [](const fs::path& p, const std::string& text) {
    std::ofstream f(p, std::ios::binary);
    if (!f) throw std::runtime_error("cannot write " + p.string());
    f << text;
  };
  write(fs::path(dir) / "config.json", artifact.config.to_json() + "\n");
  const bool empty = !artifact.qae && !artifact.adv && artifact.metrics.empty() &&
                     artifact.series.empty() && artifact.bloch.empty();
  if (empty) return;
  write(fs::path(dir) / "params.json", artifact.params_json() + "\n");
  write(fs::path(dir) / "metrics.csv", artifact.metrics_csv());
  if (!artifact.series.empty()) {
    fs::create_directories(fs::path(dir) / "series");
    for (const auto& [name, csv] : artifact.series)
      write(fs::path(dir) / "series" / (name + ".csv"), csv);
  }
  if (!artifact.bloch.empty()) {
    fs::create_directories(fs::path(dir) / "bloch");
    for (const auto& [name, csv] : artifact.bloch)
      write(fs::path(dir) / "bloch" / (name + ".csv"), csv);
  }
}

}  // namespace qgaa
