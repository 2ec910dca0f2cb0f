#include <pybind11/complex.h>
#include <pybind11/pybind11.h>
#include <pybind11/stl.h>

#include "qgaa/adversarial.hpp"
#include "qgaa/hamiltonian.hpp"
#include "qgaa/metrics.hpp"
#include "qgaa/pipeline.hpp"
#include "qgaa/qae.hpp"

namespace py = pybind11;
using namespace qgaa;

PYBIND11_MODULE(_qgaa, m) {
  m.doc() = "quantum generative adversarial autoencoder toolkit";

  py::class_<StateVector>(m, "StateVector")
      .def_readonly("n_qubits", &StateVector::n_qubits)
      .def_readonly("amplitudes", &StateVector::amplitudes)
      .def_static("basis", &StateVector::basis);

  py::class_<DensityMatrix>(m, "DensityMatrix")
      .def_readonly("n_qubits", &DensityMatrix::n_qubits)
      .def_static("from_state", &DensityMatrix::from_state)
      .def("__getitem__",
           [](const DensityMatrix& d, std::pair<std::size_t, std::size_t> ij) {
             return d.matrix(ij.first, ij.second);
           });

  py::class_<BlochVector>(m, "BlochVector")
      .def_readonly("x", &BlochVector::x)
      .def_readonly("y", &BlochVector::y)
      .def_readonly("z", &BlochVector::z)
      .def("norm", &BlochVector::norm);

  m.def("fidelity", &fidelity);
  m.def("purity", &purity);
  m.def("swap_overlap", &swap_overlap);
  m.def("entanglement_entropy", &entanglement_entropy);
  m.def("bloch_vector", &bloch_vector);
  m.def("bloch_overlap", &bloch_overlap);

  py::class_<GroundState>(m, "GroundState")
      .def_readonly("energy", &GroundState::energy)
      .def_readonly("state", &GroundState::state);

  py::class_<MoleculeDataset>(m, "MoleculeDataset")
      .def_readonly("molecule", &MoleculeDataset::molecule)
      .def_readonly("n_qubits", &MoleculeDataset::n_qubits)
      .def("r_values",
           [](const MoleculeDataset& d) {
             std::vector<double> rs;
             for (const auto& e : d.entries) rs.push_back(e.r);
             return rs;
           })
      .def("ground_at", &MoleculeDataset::ground_at,
           py::return_value_policy::reference_internal);

  m.def("load_hamiltonian_file", &load_hamiltonian_file);
  m.def("parse_hamiltonian_file", &parse_hamiltonian_file);
  m.def("dataset_to_ensemble", &dataset_to_ensemble, py::arg("dataset"),
        py::arg("r_values") = std::vector<double>{});

  py::class_<LabeledEnsemble>(m, "LabeledEnsemble")
      .def("__len__", &LabeledEnsemble::size)
      .def("label", [](const LabeledEnsemble& e,
                       std::size_t i) { return e.entries.at(i).label; })
      .def("state", [](const LabeledEnsemble& e, std::size_t i) {
        return e.entries.at(i).state;
      });
  m.def("ensemble_rank", &ensemble_rank, py::arg("states"),
        py::arg("tol") = 1e-8);

  py::class_<TrainedQae>(m, "TrainedQae")
      .def_readonly("theta_e", &TrainedQae::theta_e)
      .def_readonly("phi_d", &TrainedQae::phi_d)
      .def_readonly("final_loss", &TrainedQae::final_loss)
      .def("to_json", &TrainedQae::to_json)
      .def_static("from_json", &TrainedQae::from_json);

  py::class_<ExperimentConfig>(m, "ExperimentConfig")
      .def_static("default_config", &ExperimentConfig::default_config)
      .def_static("from_json", &ExperimentConfig::from_json)
      .def("to_json", &ExperimentConfig::to_json)
      .def_readwrite("experiment", &ExperimentConfig::experiment)
      .def_readwrite("stages", &ExperimentConfig::stages)
      .def_readwrite("seed", &ExperimentConfig::seed)
      .def_readwrite("out_dir", &ExperimentConfig::out_dir)
      .def_readwrite("fixture", &ExperimentConfig::fixture)
      .def_readwrite("train_r", &ExperimentConfig::train_r);

  py::class_<MetricRow>(m, "MetricRow")
      .def_readonly("label", &MetricRow::label)
      .def_readonly("in_train", &MetricRow::in_train)
      .def_readonly("fidelity", &MetricRow::fidelity)
      .def_readonly("energy_true", &MetricRow::energy_true)
      .def_readonly("energy_gen", &MetricRow::energy_gen)
      .def_readonly("abs_delta_e", &MetricRow::abs_delta_e);

  py::class_<RunArtifact>(m, "RunArtifact")
      .def_readonly("metrics", &RunArtifact::metrics)
      .def_property_readonly(
          "qae", [](const RunArtifact& a) { return a.qae; })
      .def("metrics_csv", &RunArtifact::metrics_csv)
      .def("params_json", &RunArtifact::params_json);

  m.def("entangled_state", &entangled_state);
  m.def("entangled_ensemble", &entangled_ensemble);
  m.def("run_entangled_demo", &run_entangled_demo);
  m.def("run_molecule_qgaa", &run_molecule_qgaa);
  m.def("run_baseline_qgan", &run_baseline_qgan);
  m.def("export_artifact", &export_artifact);
  m.def("sub_seed", &sub_seed);
}
