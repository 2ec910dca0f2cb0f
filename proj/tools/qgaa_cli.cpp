#include <cstdio>
#include <cstdlib>
#include <fstream>
#include <iostream>
#include <numeric>
#include <sstream>
#include <string>
#include <vector>

#include "CLI11.hpp"

#include "qgaa/hamiltonian.hpp"
#include "qgaa/metrics.hpp"
#include "qgaa/pipeline.hpp"

namespace {

using namespace qgaa;

struct CommonOpts {
  std::string config_path;
  std::string experiment;
  std::string out_dir;
  std::string fixture;
  int seed = -1;
  double min_fidelity = -1.0;  // acceptance gate; unset when negative
  double max_delta_e = -1.0;

  void attach(CLI::App* cmd) {
    cmd->add_option("--config", config_path, "JSON experiment config");
    cmd->add_option("--experiment", experiment,
                    "experiment id (entangled|h2|lih|baseline)");
    cmd->add_option("--out", out_dir, "artifact output directory");
    cmd->add_option("--fixture", fixture, "hamiltonian fixture path");
    cmd->add_option("--seed", seed, "RNG seed (overrides config)");
    cmd->add_option("--min-fidelity", min_fidelity,
                    "exit 2 when mean fidelity falls below this");
    cmd->add_option("--max-delta-e", max_delta_e,
                    "exit 2 when mean |dE| exceeds this (Ha)");
  }

  ExperimentConfig resolve(const std::string& fallback_experiment) const {
    ExperimentConfig cfg;
    if (!config_path.empty()) {
      std::ifstream f(config_path);
      if (!f) throw std::runtime_error("cannot open config: " + config_path);
      std::ostringstream ss;
      ss << f.rdbuf();
      cfg = ExperimentConfig::from_json(ss.str());
      if (!experiment.empty() && experiment != cfg.experiment)
        cfg = ExperimentConfig::default_config(experiment);
    } else {
      cfg = ExperimentConfig::default_config(
          experiment.empty() ? fallback_experiment : experiment);
    }
    if (!out_dir.empty()) cfg.out_dir = out_dir;
    if (!fixture.empty()) cfg.fixture = fixture;
    if (seed >= 0) cfg.seed = static_cast<unsigned>(seed);
    if (const char* env = std::getenv("QGAA_SEED"))
      cfg.seed = static_cast<unsigned>(std::strtoul(env, nullptr, 10));
    return cfg;
  }
};

int finish(const CommonOpts& opts, const RunArtifact& art) {
  if (!art.config.out_dir.empty()) export_artifact(art, art.config.out_dir);
  if (art.metrics.empty()) return 0;
  double mf = 0, mde = 0;
  for (const MetricRow& m : art.metrics) {
    mf += m.fidelity;
    mde += m.abs_delta_e;
  }
  mf /= static_cast<double>(art.metrics.size());
  mde /= static_cast<double>(art.metrics.size());
  std::printf("mean_fidelity %.6f\n", mf);
  if (art.metrics.front().label.size() == 1)
    std::printf("mean_abs_delta_e %.6f\n", mde);
  if (opts.min_fidelity >= 0 && mf < opts.min_fidelity) return 2;
  if (opts.max_delta_e >= 0 && mde > opts.max_delta_e) return 2;
  return 0;
}

int run_stages(const CommonOpts& opts, const std::string& fallback,
               const std::vector<std::string>& stages) {
  ExperimentConfig cfg = opts.resolve(fallback);
  if (!stages.empty()) cfg.stages = stages;
  RunArtifact art;
  if (cfg.experiment == "entangled") {
    art = run_entangled_demo(cfg);
  } else if (cfg.experiment == "baseline") {
    art = run_baseline_qgan(cfg, load_hamiltonian_file(cfg.fixture));
  } else {
    art = run_molecule_qgaa(cfg, load_hamiltonian_file(cfg.fixture));
  }
  if (art.qae)
    std::printf("qae_loss %.6g\n", art.qae->final_loss);
  if (art.adv)
    std::printf("qgan_converged %d stop_iter %d\n", art.adv->converged ? 1 : 0,
                art.adv->stop_iter);
  return finish(opts, art);
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"quantum generative adversarial autoencoder toolkit"};
  app.require_subcommand(1);

  CommonOpts entangled_o, qae_o, qgan_o, gen_o, base_o;
  auto* cmd_entangled =
      app.add_subcommand("entangled", "2-qubit entangled-state demo (QAE + QGAN)");
  entangled_o.attach(cmd_entangled);
  auto* cmd_qae = app.add_subcommand("qae", "train the autoencoder stage only");
  qae_o.attach(cmd_qae);
  auto* cmd_qgan =
      app.add_subcommand("qgan", "train the adversarial stage on persisted latents");
  qgan_o.attach(cmd_qgan);
  auto* cmd_gen =
      app.add_subcommand("generate", "generation sweep from persisted parameters");
  gen_o.attach(cmd_gen);
  auto* cmd_base =
      app.add_subcommand("baseline", "QGAN directly on full-width states (no QAE)");
  base_o.attach(cmd_base);

  auto* cmd_ham = app.add_subcommand("ham", "hamiltonian fixture utilities");
  std::string ham_fixture;
  double ham_r = 0.0;
  auto* cmd_gs = cmd_ham->add_subcommand("ground-state",
                                         "exact ground state at a bond length");
  cmd_gs->add_option("--fixture", ham_fixture, "hamiltonian fixture path")
      ->required();
  cmd_gs->add_option("--r", ham_r, "bond length (angstrom)")->required();

  std::string rank_fixture;
  double rank_tol = 1e-8;
  auto* cmd_rank =
      app.add_subcommand("rank", "rank of the uniform ground-state ensemble");
  cmd_rank->add_option("--fixture", rank_fixture, "hamiltonian fixture path")
      ->required();
  cmd_rank->add_option("--tol", rank_tol, "relative eigenvalue cutoff");

  CLI11_PARSE(app, argc, argv);

  try {
    if (*cmd_entangled) return run_stages(entangled_o, "entangled", {});
    if (*cmd_qae) return run_stages(qae_o, "h2", {"qae"});
    if (*cmd_qgan) return run_stages(qgan_o, "h2", {"qgan"});
    if (*cmd_gen) return run_stages(gen_o, "h2", {"generate"});
    if (*cmd_base) {
      CommonOpts o = base_o;
      if (o.experiment.empty()) o.experiment = "baseline";
      return run_stages(o, "baseline", {"baseline"});
    }
    if (*cmd_gs) {
      const MoleculeDataset ds = load_hamiltonian_file(ham_fixture);
      const GroundState& gs = ds.ground_at(ham_r);
      std::printf("molecule %s r %.6g energy %.10f\n", ds.molecule.c_str(),
                  ham_r, gs.energy);
      for (std::size_t i = 0; i < gs.state.dim(); ++i) {
        const auto a = gs.state.amplitudes[i];
        if (std::abs(a) > 1e-6)
          std::printf("  |%zu>  %+.8f %+.8fi\n", i, a.real(), a.imag());
      }
      return 0;
    }
    if (*cmd_rank) {
      const MoleculeDataset ds = load_hamiltonian_file(rank_fixture);
      const LabeledEnsemble ens = dataset_to_ensemble(ds);
      std::printf("rank %d over %zu states\n", ensemble_rank(ens, rank_tol),
                  ens.size());
      return 0;
    }
  } catch (const std::exception& e) {
    std::fprintf(stderr, "error: %s\n", e.what());
    return 1;
  }
  return 0;
}
