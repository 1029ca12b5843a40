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
#pragma once

#include <span>
#include <vector>

#include "darwinium/state_vector.hpp"
#include "darwinium/types.hpp"

namespace darwinium {

/**
 * Hermitian, unit-trace, positive semidefinite operator on k qubits.
 *
 * Local qubit j is bit j of the row/column index. Construction validates
 * the invariants (Hermitian and trace within 1e-10, smallest eigenvalue
 * >= -1e-8) unless `Unchecked` is passed.
 */
class DensityMatrix {
  public:
    struct Unchecked {};

    DensityMatrix() = default;
    explicit DensityMatrix(MatX m);
    DensityMatrix(MatX m, Unchecked);

    static DensityMatrix from_pure(const StateVector &psi);

    [[nodiscard]] const MatX &matrix() const noexcept { return m_; }
    [[nodiscard]] Eigen::Index dim() const noexcept { return m_.rows(); }
    [[nodiscard]] int n_qubits() const noexcept { return n_qubits_; }

    /// Throws ValidationError if an invariant fails.
    void validate() const;

  private:
    MatX m_;
    int n_qubits_ = 0;
};

/// Reduced state on `keep`; keep[j] becomes local qubit j.
DensityMatrix partial_trace(const StateVector &psi, std::span<const int> keep);
DensityMatrix partial_trace(const DensityMatrix &rho, std::span<const int> keep);

/**
 * Factor Psi with Psi Psi^dag = rho_keep, keep[j] -> row bit j.
 *
 * For a pure state this is the amplitude matrix reshaped with the traced
 * qubits as columns, then cut to its numerical rank: directions with
 * relative weight below `rank_tol` are dropped. Column count is the rank
 * of rho_keep. A nonpositive `rank_tol` returns the raw reshaping.
 */
MatX reduced_factor(const StateVector &psi, std::span<const int> keep, double rank_tol = 1e-14);
/// Same for a mixed state via its eigendecomposition.
MatX reduced_factor(const DensityMatrix &rho, std::span<const int> keep, double rank_tol = 1e-14);

/// Full basis-index offsets of a register's 2^|qubits| patterns: out[l]
/// has bit qubits[j] set iff bit j of l is set.
std::vector<std::uint64_t> scatter_offsets(std::span<const int> qubits);

/// Clip eigenvalues at zero and renormalize to unit trace. Throws
/// DegenerateInputError if nothing positive remains.
DensityMatrix psd_project(const MatX &hermitian, double hermitian_tol = 1e-8);

/// 0.5 * sum |eigenvalues(a - b)|
double trace_distance(const MatX &a, const MatX &b);
/// Uhlmann fidelity (Tr sqrt(sqrt(a) b sqrt(a)))^2.
double state_fidelity(const MatX &a, const MatX &b);

MatX kron(const MatX &a, const MatX &b);

}  // namespace darwinium
