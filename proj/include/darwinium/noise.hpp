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
 * Single-qubit Kraus channels, stochastic trajectory sampling on state
 * vectors, and the gate-level noise model used for the noisy experiments.
 *
 * Units: gate times in nanoseconds, coherence times in microseconds.
 * Infinite coherence times are allowed and mean "no decay".
 */
#pragma once

#include <memory>
#include <span>
#include <string>
#include <variant>
#include <vector>

#include <json.hpp>

#include "darwinium/circuit.hpp"
#include "darwinium/rng.hpp"
#include "darwinium/state_vector.hpp"

namespace darwinium {

struct NoiseParams {
    double t_sq = 20.0;        // ns
    double t_sq_idle = 47.0;   // ns
    double t_cz = 47.0;        // ns
    double eps_sq = 0.00033;
    double eps_sq_idle = 0.00082;
    double eps_cz = 0.00238;
    double eps_readout = 0.008;
    double T1 = 135.0;         // us
    double Tphi = 40.0;        // us
    std::uint64_t shots = 5'000'000;
    /// p_dep = depolarizing_scale * eps. The listed errors are used as-is
    /// by default; this is the one calibration knob.
    double depolarizing_scale = 1.0;

    /// Device averages of the 9-qubit lattice (the defaults above).
    static NoiseParams nine_qubit();
    /// Device averages of the 12-qubit lattice.
    static NoiseParams twelve_qubit();
    /// Every rate zero, coherence times infinite.
    static NoiseParams noiseless();

    void validate() const;
};

nlohmann::json to_json(const NoiseParams &np);
/// Missing keys keep their 9-qubit defaults.
NoiseParams noise_params_from_json(const nlohmann::json &j);

struct KrausSet {
    std::vector<Mat2> operators;

    /// max |sum K^dag K - I| <= tol
    [[nodiscard]] bool is_complete(double tol = 1e-10) const;
    /// A single operator equal to the identity.
    [[nodiscard]] bool is_identity() const;
    /// Exact channel action on a 2x2 density matrix.
    [[nodiscard]] Mat2 apply(const Mat2 &rho) const;
};

/// K0 = diag(1, sqrt(1-g)), K1 = sqrt(g)|0><1| with g = 1 - exp(-t/T1).
KrausSet amplitude_damping(double t_ns, double T1_us);
/// Phase flip with probability (1 - exp(-t/Tphi)) / 2.
KrausSet pure_dephasing(double t_ns, double Tphi_us);
/// rho -> (1-p) rho + p I/2, as four Pauli Kraus operators.
KrausSet depolarizing(double p);

/// Pick K_i with probability ||K_i psi||^2, apply it and renormalize.
void apply_kraus_trajectory(StateVector &state, int qubit, const KrausSet &k, CounterRng &rng);
StateVector apply_channel_trajectory(StateVector state, int qubit, const KrausSet &k, CounterRng &rng);

struct NoiseEvent {
    int qubit = 0;
    std::shared_ptr<const KrausSet> channel;
    std::string kind;  ///< "depolarizing", "damping", "dephasing" (prefixed "idle-" for idlers)
};

using NoisyStep = std::variant<Operation, NoiseEvent>;

struct NoisyCircuit {
    int n_qubits = 0;
    std::vector<NoisyStep> steps;

    [[nodiscard]] std::size_t count_events(std::string_view kind_prefix = "") const;
    /// Distinct qubits that received at least one idle event.
    [[nodiscard]] std::vector<int> idle_qubits() const;
};

/**
 * Interleave noise events into a circuit.
 *
 * Every gate is followed by depolarizing, amplitude damping and pure
 * dephasing on the qubits it touches, in that order. Single-qubit gates use
 * (eps_sq, t_sq). Entangling gates (CZ and conditional gates) are packed
 * into layers: a run of consecutive gates on pairwise disjoint qubits is
 * one layer. Touched qubits get (eps_cz, t_cz) and every qubit idle in
 * the layer gets (eps_sq_idle, t_sq_idle) once. Channels that are exactly the
 * identity are omitted, so a noiseless parameter set returns the circuit
 * unchanged.
 */
NoisyCircuit noisy_gate_wrapper(const Circuit &circuit, const NoiseParams &np);

/// One stochastic realization of a noisy circuit starting from |0...0>.
StateVector run_trajectory(const NoisyCircuit &circuit, CounterRng &rng);

/// Each character flipped independently with probability eps.
std::string readout_flip(std::string_view bits, double eps, CounterRng &rng);

/// Push an outcome distribution over n bits through independent bit flips
/// with probability eps (the exact average of readout_flip).
std::vector<double> readout_confusion(std::span<const double> probs, int n_bits, double eps);

}  // namespace darwinium
