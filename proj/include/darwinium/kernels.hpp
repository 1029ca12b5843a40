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
 * In-place amplitude kernels over a bit-indexed state vector.
 *
 * Basis index bit q holds the value of qubit q (qubit 0 is the least
 * significant bit). Two implementations share one signature set:
 * `serial` is the straightforward reference used by the tests, `omp`
 * splits the outer loops across OpenMP threads. Callers go through the
 * `StateVector` API, which dispatches to `omp`.
 *
 * The kernels do no validation; indices and sizes are checked upstream.
 */
#pragma once

#include <cstdint>
#include <span>

#include "darwinium/types.hpp"

namespace darwinium::kernels {

/// Control register condition of a conditional gate, in bit-mask form.
struct ControlPattern {
    std::uint64_t mask = 0;      ///< OR of all control-qubit bits
    std::uint64_t pattern0 = 0;  ///< control bits selecting branch 0
    std::uint64_t pattern1 = 0;  ///< control bits selecting branch 1
};

namespace serial {
void apply_1q(std::span<cplx> amps, int qubit, const Mat2 &u);
void apply_cz(std::span<cplx> amps, int a, int b);
void apply_conditional(std::span<cplx> amps, const ControlPattern &ctrl, int target, const Mat2 &u0,
                       const Mat2 &u1);
/// Dense 2^k x 2^k matrix on `qubits`; local index bit j is qubits[j].
void apply_dense(std::span<cplx> amps, std::span<const int> qubits, const MatX &m);
void scale(std::span<cplx> amps, double factor);
double norm_squared(std::span<const cplx> amps);
/// <bra|ket>
cplx inner(std::span<const cplx> bra, std::span<const cplx> ket);
/// Reduced 2x2 density matrix of one qubit (unnormalized if amps are).
Mat2 qubit_density(std::span<const cplx> amps, int qubit);
}  // namespace serial

namespace omp {
void apply_1q(std::span<cplx> amps, int qubit, const Mat2 &u);
void apply_cz(std::span<cplx> amps, int a, int b);
void apply_conditional(std::span<cplx> amps, const ControlPattern &ctrl, int target, const Mat2 &u0,
                       const Mat2 &u1);
/// Dense 2^k x 2^k matrix on `qubits`; local index bit j is qubits[j].
void apply_dense(std::span<cplx> amps, std::span<const int> qubits, const MatX &m);
void scale(std::span<cplx> amps, double factor);
double norm_squared(std::span<const cplx> amps);
/// <bra|ket>
cplx inner(std::span<const cplx> bra, std::span<const cplx> ket);
/// Reduced 2x2 density matrix of one qubit (unnormalized if amps are).
Mat2 qubit_density(std::span<const cplx> amps, int qubit);
}  // namespace omp

/// Insert a zero bit at position `bit` of `i`.
constexpr std::uint64_t insert_zero_bit(std::uint64_t i, int bit) noexcept {
    const std::uint64_t low = i & ((std::uint64_t{1} << bit) - 1);
    return ((i >> bit) << (bit + 1)) | low;
}

}  // namespace darwinium::kernels
