#include <cmath>
#include <filesystem>
#include <fstream>

#include "doctest.h"
#include "json.hpp"
#include "qgaa/pipeline.hpp"

using namespace qgaa;
namespace fs = std::filesystem;

namespace {
constexpr double kPi = 3.14159265358979323846;

ExperimentConfig reduced_entangled(unsigned seed) {
  ExperimentConfig cfg = ExperimentConfig::default_config("entangled");
  cfg.seed = seed;
  cfg.n_k0 = 2;
  cfg.n_k1 = 4;
  cfg.qae.budget = 400;
  cfg.qae_restarts = 2;
  cfg.adv.max_iter = 60;
  cfg.qgan_restarts = 1;
  cfg.qgan_target_fid = 0.5;
  return cfg;
}

struct TempDir {
  fs::path path;
  explicit TempDir(const std::string& name)
      : path(fs::temp_directory_path() / name) {
    fs::remove_all(path);
  }
  ~TempDir() { fs::remove_all(path); }
};

std::string slurp(const fs::path& p) {
  std::ifstream f(p, std::ios::binary);
  REQUIRE(f.good());
  return {std::istreambuf_iterator<char>(f), std::istreambuf_iterator<char>()};
}
}  // namespace

TEST_CASE("default configs validate and round-trip through JSON") {
  for (const std::string& exp : {"entangled", "h2", "lih", "baseline"}) {
    const ExperimentConfig cfg = ExperimentConfig::default_config(exp);
    CHECK_NOTHROW(cfg.validate());
    const ExperimentConfig back = ExperimentConfig::from_json(cfg.to_json());
    CHECK(back.to_json() == cfg.to_json());
  }
  CHECK_THROWS(ExperimentConfig::default_config("he3"));
}

TEST_CASE("config validation rejects bad shapes") {
  ExperimentConfig cfg = ExperimentConfig::default_config("entangled");
  cfg.stages = {"transmogrify"};
  CHECK_THROWS(cfg.validate());
  cfg = ExperimentConfig::default_config("h2");
  cfg.fixture.clear();
  CHECK_THROWS(cfg.validate());
  cfg = ExperimentConfig::default_config("entangled");
  cfg.n_k0 = 0;
  CHECK_THROWS(cfg.validate());
}

TEST_CASE("sub-seed derivation is deterministic and stage-distinct") {
  CHECK(sub_seed(7, "qae", 0) == sub_seed(7, "qae", 0));
  CHECK(sub_seed(7, "qae", 0) != sub_seed(7, "qae", 1));
  CHECK(sub_seed(7, "qae", 0) != sub_seed(7, "qgan", 0));
  CHECK(sub_seed(7, "qae", 0) != sub_seed(8, "qae", 0));
}

TEST_CASE("entangled training grid sits in the high-entanglement band") {
  const LabeledEnsemble ens = entangled_ensemble(5, 16, 0.06);
  CHECK(ens.size() == 80);
  bool k1_zero = false, k1_half = false;
  for (const auto& e : ens.entries) {
    REQUIRE(e.pure.has_value());
    CHECK(entanglement_entropy(*e.pure, {0}) >= 0.97 - 5e-3);
    if (std::abs(e.label[0] - 0.5 * kPi) < 1e-12) {
      if (std::abs(e.label[1]) < 1e-12) k1_zero = true;
      if (std::abs(e.label[1] - 0.5 * kPi) < 1e-12) k1_half = true;
    }
  }
  // Fig.-style marker states K = (0.5 pi, 0) and (0.5 pi, 0.5 pi)
  CHECK(k1_zero);
  CHECK(k1_half);
}

TEST_CASE("empty artifact exports config.json only") {
  TempDir tmp("qgaa_test_empty_artifact");
  RunArtifact art;
  art.config = ExperimentConfig::default_config("entangled");
  export_artifact(art, tmp.path.string());
  CHECK(fs::exists(tmp.path / "config.json"));
  CHECK(!fs::exists(tmp.path / "params.json"));
  CHECK(!fs::exists(tmp.path / "metrics.csv"));
  CHECK(!fs::exists(tmp.path / "series"));
}

TEST_CASE("reduced entangled run: determinism, schema, persistence") {
  TempDir tmp("qgaa_test_entangled_run");
  ExperimentConfig cfg = reduced_entangled(123);
  cfg.out_dir = tmp.path.string();

  const RunArtifact a = run_entangled_demo(cfg);
  const RunArtifact b = run_entangled_demo(cfg);
  CHECK(a.metrics_csv() == b.metrics_csv());  // byte-identical reruns
  CHECK(a.params_json() == b.params_json());

  REQUIRE(a.qae.has_value());
  REQUIRE(a.adv.has_value());
  CHECK(a.metrics.size() == 8);
  CHECK(a.metrics_csv().rfind("k0,k1,in_train,fidelity\n", 0) == 0);

  // series CSVs share the TrainRecord header
  for (const auto& [name, csv] : a.series)
    CHECK(csv.rfind("iter,loss,p_real,p_fake,mean_fidelity,lr_g,lr_d\n", 0) ==
          0);
  REQUIRE(a.bloch.size() == 2);
  CHECK(a.bloch[0].second.rfind("k0,k1,x,y,z\n", 0) == 0);

  export_artifact(a, cfg.out_dir);
  CHECK(fs::exists(tmp.path / "config.json"));
  CHECK(fs::exists(tmp.path / "params.json"));
  CHECK(fs::exists(tmp.path / "metrics.csv"));
  CHECK(slurp(tmp.path / "metrics.csv") == a.metrics_csv());

  // staged execution from the persisted artifact matches the joint run
  ExperimentConfig gen_only = cfg;
  gen_only.stages = {"generate"};
  const RunArtifact c = run_entangled_demo(gen_only);
  CHECK(c.metrics_csv() == a.metrics_csv());

  // reloading params.json and recomputing metrics reproduces metrics.csv
  const nlohmann::json params = nlohmann::json::parse(slurp(tmp.path / "params.json"));
  const TrainedQae qae = TrainedQae::from_json(params.at("qae").dump());
  GeneratorSpec g;
  g.l = params.at("generator").at("l").get<int>();
  g.family = family_from_name(params.at("generator").at("family"));
  g.depth = params.at("generator").at("depth").get<int>();
  g.theta_g = params.at("generator").at("theta_g").get<std::vector<double>>();
  for (const MetricRow& row : a.metrics) {
    const DensityMatrix xi =
        decode(qae.config, qae.phi_d, generate(g, row.label));
    const DensityMatrix sigma = DensityMatrix::from_state(
        entangled_state(row.label[0], row.label[1]));
    CHECK(fidelity(sigma, xi) == doctest::Approx(row.fidelity).epsilon(1e-9));
  }
}

TEST_CASE("qgan stage refuses to run without a persisted qae") {
  TempDir tmp("qgaa_test_missing_stage");
  ExperimentConfig cfg = reduced_entangled(5);
  cfg.out_dir = tmp.path.string();
  cfg.stages = {"qgan"};
  CHECK_THROWS(run_entangled_demo(cfg));
}

TEST_CASE("reduced molecule run produces the energy metric schema") {
  const MoleculeDataset ds = load_hamiltonian_file("fixtures/h2_sto3g_jw_4q.ham");
  ExperimentConfig cfg = ExperimentConfig::default_config("h2");
  cfg.seed = 11;
  cfg.qae.budget = 600;
  cfg.qae_restarts = 1;
  cfg.qae_target_loss = 1.0;
  cfg.adv.max_iter = 15;
  cfg.qgan_restarts = 1;
  cfg.qgan_target_fid = 0.0;
  const RunArtifact art = run_molecule_qgaa(cfg, ds);
  CHECK(art.metrics.size() == ds.entries.size());
  CHECK(art.metrics_csv().rfind(
            "r,in_train,fidelity,energy_true,energy_gen,abs_delta_e\n", 0) == 0);
  int in_train = 0;
  for (const MetricRow& m : art.metrics) {
    CHECK(m.abs_delta_e ==
          doctest::Approx(std::abs(m.energy_gen - m.energy_true)).epsilon(1e-12));
    // generated energies are variational upper bounds
    CHECK(m.energy_gen >= m.energy_true - 1e-9);
    in_train += m.in_train ? 1 : 0;
  }
  CHECK(in_train == int(cfg.train_r.size()));
  // 1-qubit latent: Bloch trajectories exported for latent and generated
  REQUIRE(art.bloch.size() == 2);
  CHECK(art.bloch[1].second.rfind("r,x,y,z\n", 0) == 0);
}

TEST_CASE("baseline run generates full-width states") {
  const MoleculeDataset ds = load_hamiltonian_file("fixtures/h2_sto3g_jw_4q.ham");
  ExperimentConfig cfg = ExperimentConfig::default_config("baseline");
  cfg.seed = 3;
  cfg.adv.max_iter = 8;
  cfg.qgan_restarts = 1;
  cfg.qgan_target_fid = 0.0;
  const RunArtifact art = run_baseline_qgan(cfg, ds);
  CHECK(art.metrics.size() == ds.entries.size());
  CHECK(!art.qae.has_value());
  REQUIRE(art.adv.has_value());
  CHECK(art.adv->generator.l == 4);
  // resource comparison: wider generator than the latent-space pipeline
  const ExperimentConfig h2 = ExperimentConfig::default_config("h2");
  GeneratorSpec small;
  small.l = h2.qae.l;
  small.family = h2.generator_family;
  small.depth = h2.generator_depth;
  CHECK(art.adv->generator.param_count() > small.param_count());
}
