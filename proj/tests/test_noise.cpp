// Copyright 2026 The darwinium Authors
//
// Licensed under the Apache License, Version 2.0 (the "License");
// you may not use this file except in compliance with the License.
// You may obtain a copy of the License at
//
//     http://www.apache.org/licenses/LICENSE-2.0
//
// Unless required by applicable law or agreed to in writing, software
// distributed under the License is distributed on an "AS IS" BASIS,
// WITHOUT WARRANTIES OR CONDITIONS OF ANY KIND, either express or implied.
// See the License for the specific language governing permissions and
// limitations under the License.
#include <doctest.h>

#include "darwinium/circuit.hpp"
#include "darwinium/gates.hpp"
#include "darwinium/noise.hpp"
#include "test_util.hpp"

using namespace darwinium;
namespace tu = testutil;

namespace {

Mat2 projector(const Eigen::Vector2cd &v) { return v * v.adjoint(); }

// Trajectory average of |psi><psi| for a one-qubit channel.
Mat2 trajectory_average(const Eigen::Vector2cd &psi, const KrausSet &k, int samples, std::uint64_t seed) {
    Mat2 acc = Mat2::Zero();
    CounterRng rng(seed);
    for (int i = 0; i < samples; ++i) {
        StateVector s(1, {psi(0), psi(1)});
        apply_kraus_trajectory(s, 0, k, rng);
        const Eigen::Vector2cd v(s[0], s[1]);
        acc += v * v.adjoint();
    }
    return acc / samples;
}

double trace_norm_distance(const Mat2 &a, const Mat2 &b) {
    Eigen::SelfAdjointEigenSolver<Mat2> es(a - b);
    return 0.5 * es.eigenvalues().cwiseAbs().sum();
}

}  // namespace

TEST_CASE("Kraus sets are complete") {
    CounterRng rng(1);
    for (int i = 0; i < 50; ++i) {
        const double t = rng.uniform(1.0, 5e4);
        CHECK(amplitude_damping(t, rng.uniform(1.0, 200.0)).is_complete(1e-10));
        CHECK(pure_dephasing(t, rng.uniform(1.0, 200.0)).is_complete(1e-10));
        CHECK(depolarizing(rng.uniform()).is_complete(1e-10));
    }
    CHECK(depolarizing(0.0).is_identity());
    CHECK_THROWS_AS(depolarizing(1.2), ConfigError);
    CHECK_THROWS_AS(amplitude_damping(-1.0, 10.0), ConfigError);
    CHECK_THROWS_AS(pure_dephasing(5.0, 0.0), ConfigError);
}

TEST_CASE("channel actions match the analytic forms") {
    const Mat2 one = projector(Eigen::Vector2cd(0, 1));
    const Mat2 zero = projector(Eigen::Vector2cd(1, 0));
    const Mat2 plus = projector(Eigen::Vector2cd(1, 1) / std::sqrt(2.0));

    // t = T1 (1 us = 1000 ns)
    const Mat2 damped = amplitude_damping(1000.0, 1.0).apply(one);
    CHECK(damped(1, 1).real() == doctest::Approx(std::exp(-1.0)).epsilon(1e-12));
    CHECK(1.0 - std::exp(-1.0) == doctest::Approx(0.6321).epsilon(1e-4));

    for (double p : {0.0, 0.3, 1.0}) {
        const Mat2 r = depolarizing(p).apply(zero);
        CHECK((tu::pauli('Z') * r).trace().real() == doctest::Approx(1.0 - p).epsilon(1e-12));
    }
    const double t = 470.0;
    const double tphi = 2.0;
    const Mat2 r = pure_dephasing(t, tphi).apply(plus);
    CHECK((tu::pauli('X') * r).trace().real() == doctest::Approx(std::exp(-t / (1000.0 * tphi))).epsilon(1e-12));
    CHECK((amplitude_damping(1e-9, 100.0).operators[0] - Mat2::Identity()).norm() <= 1e-12);
}

TEST_CASE("trajectory averages converge to the channel") {
    const int samples = 100000;
    SUBCASE("full depolarizing on |0>") {
        const Mat2 avg = trajectory_average({1, 0}, depolarizing(1.0), samples, 2);
        CHECK(std::abs((tu::pauli('Z') * avg).trace().real()) <= 0.02);
    }
    SUBCASE("damping on |1> for one T1") {
        const Mat2 avg = trajectory_average({0, 1}, amplitude_damping(1000.0, 1.0), samples, 3);
        CHECK(std::abs(avg(1, 1).real() - std::exp(-1.0)) <= 0.01);
    }
    SUBCASE("random channel and state") {
        const Eigen::Vector2cd psi = testutil::random_vector(1, 4);
        for (const KrausSet &k : {depolarizing(0.37), amplitude_damping(800.0, 1.3), pure_dephasing(300.0, 0.4)}) {
            const Mat2 avg = trajectory_average(psi, k, samples, 5);
            CHECK(trace_norm_distance(avg, k.apply(projector(psi))) <= 0.02);
        }
    }
}

TEST_CASE("identity channel leaves the state alone") {
    StateVector s = testutil::random_state(3, 6);
    const StateVector before = s;
    CounterRng rng(7);
    apply_kraus_trajectory(s, 1, depolarizing(0.0), rng);
    CHECK(fidelity(s, before) == doctest::Approx(1.0).epsilon(1e-14));
}

TEST_CASE("readout flips") {
    CounterRng rng(8);
    CHECK(readout_flip("0101", 0.0, rng) == "0101");
    CHECK(readout_flip("0101", 1.0, rng) == "1010");
    int flips = 0;
    const int n = 1000000;
    for (int i = 0; i < n; ++i) {
        flips += readout_flip("0", 0.008, rng) == "1" ? 1 : 0;
    }
    CHECK(std::abs(flips / static_cast<double>(n) - 0.008) <= 0.0005);
    const std::vector<double> probs{1.0, 0.0, 0.0, 0.0};
    const auto conf = readout_confusion(probs, 2, 0.1);
    CHECK(conf[0] == doctest::Approx(0.81));
    CHECK(conf[3] == doctest::Approx(0.01));
}

TEST_CASE("noise wrapper layers") {
    const NoiseParams np = NoiseParams::nine_qubit();
    Circuit one_layer;
    one_layer.n_qubits = 4;
    one_layer.ops = {CzOp{0, 1}};
    const NoisyCircuit w = noisy_gate_wrapper(one_layer, np);
    CHECK(w.idle_qubits() == std::vector<int>{2, 3});
    CHECK(w.count_events("idle-") == 6);
    CHECK(w.count_events() == 12);

    // Disjoint gates share a layer, overlapping ones do not.
    Circuit packed = one_layer;
    packed.ops.push_back(CzOp{2, 3});
    CHECK(noisy_gate_wrapper(packed, np).count_events("idle-") == 0);
    Circuit chained = one_layer;
    chained.ops.push_back(CzOp{1, 2});
    CHECK(noisy_gate_wrapper(chained, np).count_events("idle-") == 12);

    // A single-qubit gate closes the layer and gets no idle noise.
    Circuit mixed = one_layer;
    mixed.ops.insert(mixed.ops.begin(), SingleQubitOp{3, gates::hadamard(), "H"});
    CHECK(noisy_gate_wrapper(mixed, np).count_events("depolarizing") == 3);
}

TEST_CASE("noise-free wrapper is the plain circuit") {
    BranchingModelConfig cfg;
    cfg.model = BranchingModel::Fig3ScrambledEnvironment;
    cfg.theta = 1.1;
    const Circuit c = build_circuit(cfg);
    const NoisyCircuit w = noisy_gate_wrapper(c, NoiseParams::noiseless());
    CHECK(w.steps.size() == c.ops.size());
    CounterRng rng(9);
    const StateVector a = run_trajectory(w, rng);
    const StateVector b = run_circuit(c);
    CHECK(testutil::to_vec(a) == testutil::to_vec(b));
}

TEST_CASE("noise params json") {
    const NoiseParams np = noise_params_from_json({{"eps_cz", 0.01}, {"T1_us", "inf"}});
    CHECK(np.eps_cz == 0.01);
    CHECK(std::isinf(np.T1));
    CHECK(noise_params_from_json(to_json(np)).eps_cz == 0.01);
    CHECK_THROWS_AS(noise_params_from_json({{"T1", 5.0}}), ConfigError);
    CHECK_THROWS_AS(noise_params_from_json({{"eps_cz", 2.0}}), ConfigError);
    CHECK_THROWS_AS(noise_params_from_json({{"depolarizing_scale", -1.0}}), ConfigError);
}
