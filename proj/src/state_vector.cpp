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
#include "darwinium/state_vector.hpp"

#include <cmath>
#include <string>

#include "darwinium/kernels.hpp"

namespace darwinium {

namespace {

void check_register_size(int n_qubits) {
    if (n_qubits < 0 || n_qubits > kMaxQubits) {
        throw ConfigError("register size " + std::to_string(n_qubits) + " outside [0, " +
                          std::to_string(kMaxQubits) + "]");
    }
}

kernels::ControlPattern control_pattern(const ConditionalGateSpec &g) {
    kernels::ControlPattern p;
    const auto k = g.control_qubits.size();
    for (std::size_t j = 0; j < k; ++j) {
        const std::uint64_t bit = std::uint64_t{1} << g.control_qubits[j];
        p.mask |= bit;
        // Label is written highest control first: char k-1-j is control j.
        if (g.pointer_subspace.first[k - 1 - j] == '1') {
            p.pattern0 |= bit;
        }
        if (g.pointer_subspace.second[k - 1 - j] == '1') {
            p.pattern1 |= bit;
        }
    }
    return p;
}

}  // namespace

StateVector::StateVector(int n_qubits) : n_qubits_(n_qubits) {
    check_register_size(n_qubits);
    amps_.assign(std::size_t{1} << n_qubits, cplx{0.0, 0.0});
    amps_[0] = 1.0;
}

StateVector::StateVector(int n_qubits, std::vector<cplx> amps) : n_qubits_(n_qubits), amps_(std::move(amps)) {
    check_register_size(n_qubits);
    if (amps_.size() != (std::size_t{1} << n_qubits)) {
        throw ConfigError("amplitude count does not match 2^n_qubits");
    }
}

double StateVector::norm_squared() const { return kernels::omp::norm_squared(amps_); }

void StateVector::normalize() {
    const double n2 = norm_squared();
    if (!(n2 > 0.0)) {
        throw DegenerateInputError("cannot normalize an all-zero state");
    }
    kernels::omp::scale(amps_, 1.0 / std::sqrt(n2));
}

void StateVector::check_qubit(int q) const {
    if (q < 0 || q >= n_qubits_) {
        throw ConfigError("qubit index " + std::to_string(q) + " out of range for " + std::to_string(n_qubits_) +
                          " qubits");
    }
}

void StateVector::apply_1q(int qubit, const Mat2 &u) {
    check_qubit(qubit);
    if (!is_unitary(u)) {
        throw ValidationError("single-qubit gate is not unitary");
    }
    kernels::omp::apply_1q(amps_, qubit, u);
}

void StateVector::apply_cz(int a, int b) {
    check_qubit(a);
    check_qubit(b);
    if (a == b) {
        throw ConfigError("CZ needs two distinct qubits");
    }
    kernels::omp::apply_cz(amps_, a, b);
}

void StateVector::apply_conditional(const ConditionalGateSpec &g) {
    g.validate();
    for (int q : g.control_qubits) {
        check_qubit(q);
    }
    check_qubit(g.target);
    kernels::omp::apply_conditional(amps_, control_pattern(g), g.target, g.branch0.matrix(), g.branch1.matrix());
}

void StateVector::apply_dense(std::span<const int> qubits, const MatX &u) {
    for (int q : qubits) {
        check_qubit(q);
    }
    const auto dim = Eigen::Index{1} << qubits.size();
    if (u.rows() != dim || u.cols() != dim) {
        throw ConfigError("dense operator dimension does not match qubit list");
    }
    kernels::omp::apply_dense(amps_, qubits, u);
}

std::uint64_t parse_basis_label(std::string_view label, int n_qubits) {
    if (static_cast<int>(label.size()) != n_qubits) {
        throw ConfigError("basis label '" + std::string(label) + "' does not have " + std::to_string(n_qubits) +
                          " characters");
    }
    std::uint64_t index = 0;
    for (char c : label) {
        if (c != '0' && c != '1') {
            throw ConfigError("basis label '" + std::string(label) + "' is not a bitstring");
        }
        index = (index << 1) | static_cast<std::uint64_t>(c == '1');
    }
    return index;
}

std::string basis_label(std::uint64_t index, int n_qubits) {
    std::string s(static_cast<std::size_t>(n_qubits), '0');
    for (int q = 0; q < n_qubits; ++q) {
        if ((index >> q) & 1U) {
            s[static_cast<std::size_t>(n_qubits - 1 - q)] = '1';
        }
    }
    return s;
}

StateVector init_state(int n_qubits, std::string_view label) {
    const std::uint64_t index = parse_basis_label(label, n_qubits);
    StateVector s(n_qubits);
    s.amplitudes()[0] = 0.0;
    s.amplitudes()[index] = 1.0;
    return s;
}

StateVector apply_1q(StateVector state, int qubit, const Mat2 &u) {
    state.apply_1q(qubit, u);
    return state;
}

StateVector apply_cz(StateVector state, int a, int b) {
    state.apply_cz(a, b);
    return state;
}

StateVector apply_conditional(StateVector state, const ConditionalGateSpec &g) {
    state.apply_conditional(g);
    return state;
}

double fidelity(const StateVector &a, const StateVector &b) {
    if (a.size() != b.size()) {
        throw ConfigError("fidelity of states with different sizes");
    }
    return std::norm(kernels::omp::inner(a.amplitudes(), b.amplitudes()));
}

}  // namespace darwinium
