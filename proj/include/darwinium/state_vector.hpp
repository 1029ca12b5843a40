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
 * Dense pure state over n qubits and the gate operations on it.
 */
#pragma once

#include <span>
#include <string_view>
#include <vector>

#include "darwinium/gates.hpp"
#include "darwinium/types.hpp"

namespace darwinium {

/**
 * Complex amplitudes over 2^n basis states. Qubit q is bit q of the basis
 * index. Bitstring labels are written with the highest qubit first, so
 * "10" is qubit 1 set and qubit 0 clear.
 */
class StateVector {
  public:
    StateVector() = default;
    /// |0...0> on n qubits.
    explicit StateVector(int n_qubits);
    /// Takes ownership of amplitudes; size must be a power of two.
    StateVector(int n_qubits, std::vector<cplx> amps);

    [[nodiscard]] int n_qubits() const noexcept { return n_qubits_; }
    [[nodiscard]] std::size_t size() const noexcept { return amps_.size(); }
    [[nodiscard]] std::span<const cplx> amplitudes() const noexcept { return amps_; }
    [[nodiscard]] std::span<cplx> amplitudes() noexcept { return amps_; }
    [[nodiscard]] cplx operator[](std::size_t i) const { return amps_[i]; }

    [[nodiscard]] double norm_squared() const;
    void normalize();

    void apply_1q(int qubit, const Mat2 &u);
    void apply_cz(int a, int b);
    void apply_conditional(const ConditionalGateSpec &g);
    /// Dense unitary on an arbitrary qubit list (local bit j = qubits[j]).
    void apply_dense(std::span<const int> qubits, const MatX &u);

  private:
    void check_qubit(int q) const;

    int n_qubits_ = 0;
    std::vector<cplx> amps_;
};

/// Parse a bitstring label (highest qubit first) into a basis index.
std::uint64_t parse_basis_label(std::string_view label, int n_qubits);
/// Inverse of parse_basis_label.
std::string basis_label(std::uint64_t index, int n_qubits);

StateVector init_state(int n_qubits, std::string_view basis_label);

// Value-returning forms; they validate the gate (unitarity, distinct
// indices) before dispatching to the in-place kernel.
StateVector apply_1q(StateVector state, int qubit, const Mat2 &u);
StateVector apply_cz(StateVector state, int a, int b);
StateVector apply_conditional(StateVector state, const ConditionalGateSpec &g);

/// |<a|b>|^2
double fidelity(const StateVector &a, const StateVector &b);

}  // namespace darwinium
