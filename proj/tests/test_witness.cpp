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
#include "darwinium/density_matrix.hpp"
#include "darwinium/witness.hpp"
#include "test_util.hpp"

using namespace darwinium;
namespace tu = testutil;

namespace {

BranchingModelConfig fig3(double theta) {
    BranchingModelConfig cfg;
    cfg.model = BranchingModel::Fig3ScrambledEnvironment;
    cfg.theta = theta;
    return cfg;
}

MatX dense_witness(int n, const WitnessObservable &w) {
    return tu::embed_1q(n, w.fragment_qubit, w.B) * tu::embed_dense(n, w.system, w.A);
}

}  // namespace

TEST_CASE("witness endpoints on the fig3 model") {
    const auto lay = model_layout(fig3(0.0));
    const auto w = WitnessObservable::fig4_default(lay);
    CHECK(w.b_norm() == doctest::Approx(1.0));
    CHECK(expectation(run_circuit(build_circuit(fig3(0.0))), w) == doctest::Approx(2.0 / std::sqrt(5.0)).epsilon(1e-12));
    CHECK(std::abs(2.0 / std::sqrt(5.0) - 0.8944) <= 1e-4);
    CHECK(std::abs(expectation(run_circuit(build_circuit(fig3(kPi / 2))), w)) <= 1e-12);
}

TEST_CASE("witness matches a dense contraction") {
    const StateVector s = tu::random_state(6, 61);
    WitnessObservable w;
    w.A = tu::random_vector(4, 62).reshaped(4, 4);
    w.A = (w.A + w.A.adjoint()).eval();
    w.B = tu::pauli('X') + 0.5 * tu::pauli('Z');
    w.system = {4, 1};
    w.fragment_qubit = 2;
    const VecX v = tu::to_vec(s);
    const double oracle = (v.adjoint() * dense_witness(6, w) * v)(0, 0).real();
    CHECK(expectation(s, w) == doctest::Approx(oracle).epsilon(1e-10));
    CHECK(expectation(DensityMatrix::from_pure(s), w) == doctest::Approx(oracle).epsilon(1e-10));

    w.fragment_qubit = 1;
    CHECK_THROWS_AS(w.validate(6), ConfigError);
}

TEST_CASE("Pauli decomposition rebuilds the observable") {
    ModelLayout lay;
    lay.system = {0};
    lay.environment = {1};
    const auto w = WitnessObservable::fig4_default(lay);
    MatX rebuilt = MatX::Zero(4, 4);
    for (const auto &t : pauli_decomposition(w)) {
        MatX term = MatX::Identity(4, 4);
        for (const auto &[q, c] : t.factors) {
            term = tu::embed_1q(2, q, tu::pauli(c)) * term;
        }
        rebuilt += t.coeff * term;
    }
    CHECK((rebuilt - dense_witness(2, w)).norm() <= 1e-12);
}

TEST_CASE("sampled witness converges and readout shrinks it") {
    const auto cfg = fig3(0.3);
    const auto lay = model_layout(cfg);
    const StateVector s = run_circuit(build_circuit(cfg));
    const std::vector<int> keep{0, 1};
    const DensityMatrix rho = partial_trace(s, keep);
    ModelLayout local;
    local.system = {0};
    local.environment = {1};
    const auto w = WitnessObservable::fig4_default(local);
    const double exact = expectation(s, WitnessObservable::fig4_default(lay));
    CounterRng rng(63);
    CHECK(sampled_expectation(rho, w, 4'000'000, 0.0, rng) == doctest::Approx(exact).epsilon(2e-3));
    // Every Pauli term here has weight 2.
    const double eps = 0.05;
    CHECK(sampled_expectation(rho, w, 4'000'000, eps, rng) ==
          doctest::Approx(exact * (1 - 2 * eps) * (1 - 2 * eps)).epsilon(3e-3));
}

TEST_CASE("witness zero window and information plateau coincide") {
    std::vector<double> grid;
    for (int i = 0; i <= 32; ++i) {
        grid.push_back(kPi * i / 32);
    }
    const auto cfg = fig3(0.0);
    const auto rep = witness_vs_mi_correspondence(cfg, grid, WitnessObservable::fig4_default(model_layout(cfg)));
    REQUIRE(rep.witness_window.has_value());
    REQUIRE(rep.mi_window.has_value());
    CHECK(rep.windows_contain_half_pi);
    CHECK(rep.mi_plateau_on_witness_window);
    CHECK(rep.witness_window_symmetric);
    CHECK(rep.rows.size() == grid.size());
    CHECK(pair_averaged_mi(run_circuit(build_circuit(fig3(kPi / 2))), model_layout(cfg)) ==
          doctest::Approx(1.0).epsilon(1e-9));
}
