#include <cmath>
#include <random>

#include "doctest.h"
#include "qgaa/circuits.hpp"

using namespace qgaa;

namespace {
constexpr double kPi = 3.14159265358979323846;

double fd_grad(const std::function<double(const std::vector<double>&)>& f,
               std::vector<double> x, std::size_t i, double h = 1e-6) {
  x[i] += h;
  const double up = f(x);
  x[i] -= 2 * h;
  const double dn = f(x);
  return (up - dn) / (2 * h);
}
}  // namespace

TEST_CASE("rotation gate conventions") {
  // RY(theta) = [[cos t/2, -sin t/2], [sin t/2, cos t/2]]
  Gate ry{GateKind::RY, {0}, std::nullopt, 0.0, 1.0};
  UnitaryMatrix u = gate_matrix(ry, kPi / 2);
  const double c = std::cos(kPi / 4), s = std::sin(kPi / 4);
  CHECK(std::abs(u.matrix(0, 0) - cx(c, 0)) < 1e-12);
  CHECK(std::abs(u.matrix(0, 1) - cx(-s, 0)) < 1e-12);
  CHECK(std::abs(u.matrix(1, 0) - cx(s, 0)) < 1e-12);

  Gate rz{GateKind::RZ, {0}, std::nullopt, 0.0, 1.0};
  u = gate_matrix(rz, kPi);
  CHECK(std::abs(u.matrix(0, 0) - std::exp(cx(0, -kPi / 2))) < 1e-12);
  CHECK(std::abs(u.matrix(1, 1) - std::exp(cx(0, kPi / 2))) < 1e-12);
}

TEST_CASE("angle binding: scale times slot plus offset") {
  ParamCircuit c;
  c.n_qubits = 1;
  c.gates.push_back({GateKind::RY, {0}, 0, 0.25, 2.0});
  c.n_params = 1;
  const StateVector out = apply_to_state(c, {0.5}, StateVector::basis(1, 0));
  // angle = 2.0 * 0.5 + 0.25 = 1.25
  CHECK(out.amplitudes[0].real() == doctest::Approx(std::cos(0.625)));
  CHECK(out.amplitudes[1].real() == doctest::Approx(std::sin(0.625)));
}

TEST_CASE("qubit 0 is the most significant bit") {
  ParamCircuit c;
  c.n_qubits = 2;
  c.gates.push_back({GateKind::RY, {0}, std::nullopt, kPi});  // X-like on q0
  const StateVector out = apply_to_state(c, {}, StateVector::basis(2, 0));
  CHECK(std::abs(out.amplitudes[2]) == doctest::Approx(1.0));  // |10>
}

TEST_CASE("ansatz parameter counts per family") {
  CHECK(ansatz_param_count({AnsatzFamily::entangled_qae, 2, 1, {}, false, false}) == 4);
  CHECK(ansatz_param_count({AnsatzFamily::entangled_generator, 1, 1, {0.1, 0.2},
                            false, false}) == 2);
  CHECK(ansatz_param_count({AnsatzFamily::entangled_discriminator, 2, 1, {},
                            false, false}) == 12);
  CHECK(ansatz_param_count({AnsatzFamily::linear_entangling, 4, 1, {}, false,
                            false}) == 16);
  CHECK(ansatz_param_count({AnsatzFamily::circular_entangling, 6, 3, {}, false,
                            false}) == 36);
  CHECK(ansatz_param_count({AnsatzFamily::generator_meta, 1, 1, {0.7}, false,
                            false}) == 6);
  CHECK(ansatz_param_count({AnsatzFamily::generator_meta, 4, 3, {0.7}, false,
                            false}) == 72);
}

TEST_CASE("builder output is unitary for random parameters") {
  std::mt19937 rng(5);
  std::uniform_real_distribution<double> u(0.0, 2 * kPi);
  for (AnsatzFamily fam :
       {AnsatzFamily::entangled_qae, AnsatzFamily::linear_entangling,
        AnsatzFamily::circular_entangling}) {
    AnsatzSpec s{fam, fam == AnsatzFamily::entangled_qae ? 2 : 4, 2, {}, false,
                 false};
    if (fam == AnsatzFamily::entangled_qae) s.depth = 1;
    const ParamCircuit c = build_ansatz(s);
    std::vector<double> p(c.n_params);
    for (double& v : p) v = u(rng);
    CHECK_NOTHROW(circuit_unitary(c, p).validate());
  }
}

TEST_CASE("mirror relabels wires") {
  AnsatzSpec s{AnsatzFamily::entangled_qae, 2, 1, {}, false, false};
  const ParamCircuit plain = build_ansatz(s);
  s.mirror = true;
  const ParamCircuit mirrored = build_ansatz(s);
  REQUIRE(plain.gates.size() == mirrored.gates.size());
  for (std::size_t i = 0; i < plain.gates.size(); ++i)
    for (std::size_t t = 0; t < plain.gates[i].targets.size(); ++t)
      CHECK(mirrored.gates[i].targets[t] == 1 - plain.gates[i].targets[t]);
}

TEST_CASE("reversed builds the adjoint gate order") {
  AnsatzSpec s{AnsatzFamily::linear_entangling, 3, 1, {}, false, false};
  const ParamCircuit fwd = build_ansatz(s);
  s.reversed = true;
  const ParamCircuit rev = build_ansatz(s);
  REQUIRE(fwd.gates.size() == rev.gates.size());
  const std::size_t n = fwd.gates.size();
  for (std::size_t i = 0; i < n; ++i) {
    CHECK(rev.gates[i].kind == fwd.gates[n - 1 - i].kind);
    CHECK(rev.gates[i].targets == fwd.gates[n - 1 - i].targets);
  }
}

TEST_CASE("parameter shift matches finite differences on all families") {
  std::mt19937 rng(17);
  std::uniform_real_distribution<double> u(0.0, 2 * kPi);
  for (AnsatzSpec s : {AnsatzSpec{AnsatzFamily::entangled_qae, 2, 1, {}, false,
                                  false},
                       AnsatzSpec{AnsatzFamily::linear_entangling, 3, 1, {},
                                  false, false},
                       AnsatzSpec{AnsatzFamily::generator_meta, 2, 1, {0.7},
                                  false, false}}) {
    const ParamCircuit c = build_ansatz(s);
    std::vector<double> p(c.n_params);
    for (double& v : p) v = u(rng);
    auto loss = [&](const std::vector<double>& x) {
      const StateVector out =
          apply_to_state(c, x, StateVector::basis(c.n_qubits, 0));
      return std::norm(out.amplitudes[0]);
    };
    const std::vector<double> g = param_shift_grad(loss, c, p);
    for (std::size_t i = 0; i < p.size(); ++i)
      CHECK(g[i] == doctest::Approx(fd_grad(loss, p, i)).epsilon(1e-5));
  }
}

TEST_CASE("entangled generator implements the Euler ansatz") {
  // RY(g1) RZ(g0 + k1) RY(k0) |0>
  const double k0 = 0.37, k1 = 1.1, g0 = 0.4, g1 = 2.2;
  AnsatzSpec s{AnsatzFamily::entangled_generator, 1, 1, {k0, k1}, false, false};
  const ParamCircuit c = build_ansatz(s);
  const StateVector out = apply_to_state(c, {g0, g1}, StateVector::basis(1, 0));

  ParamCircuit ref;
  ref.n_qubits = 1;
  ref.gates.push_back({GateKind::RY, {0}, std::nullopt, k0});
  ref.gates.push_back({GateKind::RZ, {0}, std::nullopt, g0 + k1});
  ref.gates.push_back({GateKind::RY, {0}, std::nullopt, g1});
  const StateVector want = apply_to_state(ref, {}, StateVector::basis(1, 0));
  for (std::size_t i = 0; i < 2; ++i)
    CHECK(std::abs(out.amplitudes[i] - want.amplitudes[i]) < 1e-12);
}

TEST_CASE("circuit dump names gates one per line") {
  AnsatzSpec s{AnsatzFamily::entangled_qae, 2, 1, {}, false, false};
  const std::string d = build_ansatz(s).dump();
  CHECK(d.find("RY") != std::string::npos);
  CHECK(d.find("CZ") != std::string::npos);
  CHECK(d.find("slot:") != std::string::npos);
}

TEST_CASE("slot scales report the binding scale") {
  ParamCircuit c;
  c.n_qubits = 1;
  c.gates.push_back({GateKind::RY, {0}, 0, 0.0, 2.5});
  c.gates.push_back({GateKind::RZ, {0}, 1, 0.1, 1.0});
  c.n_params = 2;
  const std::vector<double> s = slot_scales(c);
  CHECK(s[0] == doctest::Approx(2.5));
  CHECK(s[1] == doctest::Approx(1.0));
}
