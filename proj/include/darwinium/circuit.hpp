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

/**
 * @file
 * Gate lists and the three branching-model circuit builders.
 *
 * Qubit layout of each model:
 *   fig1  S = 0,            E_k = k          (k = 1..N)
 *   fig2  S = {0, 1},       E_k = k + 1      (k = 1..N), pointers "00"/"11"
 *   fig3  S = 0, E_k = k (k = 1..4), aux_k = k + 4
 */
#pragma once

#include <cstdint>
#include <string>
#include <variant>
#include <vector>

#include <json.hpp>

#include "darwinium/gates.hpp"
#include "darwinium/state_vector.hpp"

namespace darwinium {

struct SingleQubitOp {
    int qubit = 0;
    Mat2 u = Mat2::Identity();
    std::string name;
};

struct CzOp {
    int a = 0;
    int b = 1;
};

struct ConditionalOp {
    ConditionalGateSpec gate;
};

using Operation = std::variant<SingleQubitOp, CzOp, ConditionalOp>;

/// Qubits an operation touches (controls first for conditional gates).
std::vector<int> op_qubits(const Operation &op);

struct Circuit {
    int n_qubits = 0;
    std::vector<Operation> ops;
    std::string model;
    std::uint64_t seed = 0;

    /// Throws ConfigError if any index is out of range or a gate is malformed.
    void validate() const;
};

enum class BranchingModel { Fig1SingleQubitSystem, Fig2LogicalPairSystem, Fig3ScrambledEnvironment };

std::string to_string(BranchingModel m);
BranchingModel parse_branching_model(const std::string &s);

/// Which side of the environment/auxiliary pair acts as control in fig3.
enum class AuxOrientation { EnvironmentControlsAux, AuxControlsEnvironment };

struct BranchingModelConfig {
    BranchingModel model = BranchingModel::Fig1SingleQubitSystem;
    int n_env = 4;
    /// Initial system state sqrt(p)|0_S> + sqrt(1-p)|1_S>.
    double p = 0.5;
    /// Coupling angle, fig3 only.
    double theta = 0.0;
    std::uint64_t rng_seed = 0;
    AuxOrientation aux_orientation = AuxOrientation::EnvironmentControlsAux;
    /// fig3: apply the four scrambling gates after all system-environment
    /// gates (true) or interleaved right after each one (false).
    bool scramble_after = true;

    [[nodiscard]] double q() const { return 1.0 - p; }
    void validate() const;
};

struct ModelLayout {
    std::vector<int> system;
    std::vector<int> environment;
    std::vector<int> auxiliary;
    std::pair<std::string, std::string> pointer_labels;
    int n_qubits = 0;
};

ModelLayout model_layout(const BranchingModelConfig &cfg);

/// fig3 coupling gate U(theta) between a control and a target.
ConditionalGateSpec scrambling_gate(int control, int target, double theta);

Circuit build_circuit(const BranchingModelConfig &cfg);
/// Apply all ops in order to |0...0>.
StateVector run_circuit(const Circuit &circuit);
void apply_operation(StateVector &state, const Operation &op);

/// Per-environment-qubit branch rotations (U^0_k, U^1_k) of a fig1/fig2
/// circuit, in environment order.
std::vector<std::pair<BranchRotation, BranchRotation>> record_rotations(const Circuit &circuit);

inline constexpr const char *kCircuitSchema = "darwinium.circuit/1";

nlohmann::json circuit_to_json(const Circuit &circuit);
Circuit circuit_from_json(const nlohmann::json &doc);

}  // namespace darwinium
