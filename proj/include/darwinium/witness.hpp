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
 * Local classicality witness O = A (x) B (x) I ... and its sweeps.
 */
#pragma once

#include <optional>
#include <vector>

#include "darwinium/circuit.hpp"
#include "darwinium/density_matrix.hpp"
#include "darwinium/rng.hpp"
#include "darwinium/state_vector.hpp"

namespace darwinium {

struct WitnessObservable {
    /// 2^|system| square, on `system` (local bit j = system[j]).
    MatX A;
    /// On `fragment_qubit`.
    Mat2 B;
    std::vector<int> system;
    int fragment_qubit = 1;

    /// sigma_x on S and (2 sigma_z + sigma_y)/sqrt(5) on the first
    /// environment qubit of the layout.
    static WitnessObservable fig4_default(const ModelLayout &layout);

    /// Frobenius norm of B divided by sqrt(2); 1 for the default.
    [[nodiscard]] double b_norm() const;
    /// Throws ValidationError on non-Hermitian A or B, ConfigError on
    /// bad placement.
    void validate(int n_qubits) const;
};

/// <psi|O|psi>. Throws ValidationError if the imaginary part exceeds 1e-10.
double expectation(const StateVector &psi, const WitnessObservable &w);
/// Tr(rho O) for rho on all qubits of the register.
double expectation(const DensityMatrix &rho, const WitnessObservable &w);

struct WitnessPoint {
    double theta = 0.0;
    double value = 0.0;
};

/// Noiseless fig3 final state at each theta.
std::vector<WitnessPoint> witness_sweep(BranchingModelConfig cfg, const std::vector<double> &theta_grid,
                                        const WitnessObservable &w);

/// One Pauli string of O: coefficient and per-qubit labels ('I','X','Y','Z').
struct PauliTerm {
    double coeff = 0.0;
    std::vector<std::pair<int, char>> factors;
};

/// O expanded in Pauli strings over its support; the identity term is
/// kept with an empty factor list.
std::vector<PauliTerm> pauli_decomposition(const WitnessObservable &w, double tol = 1e-12);

/**
 * Shot estimate of <O>: each non-identity Pauli string is measured with
 * `shots` repetitions. Readout error flips each measured bit with
 * probability eps_readout.
 */
double sampled_expectation(const DensityMatrix &rho, const WitnessObservable &w, std::uint64_t shots,
                           double eps_readout, CounterRng &rng);

struct CorrespondenceRow {
    double theta = 0.0;
    double witness = 0.0;
    /// I(S:F) averaged over all pairs of environment qubits.
    double mi_pair_mean = 0.0;
};

struct CorrespondenceReport {
    std::vector<CorrespondenceRow> rows;
    double eps_w = 0.02;
    double eps_i = 0.05;
    /// h(p), the entropy of the fully decohered system.
    double h_s = 1.0;
    /// Contiguous grid window around the point nearest pi/2 where
    /// |<O>| <= eps_w; empty if that point fails.
    std::optional<std::pair<double, double>> witness_window;
    /// Same for |I - H_S| <= eps_i.
    std::optional<std::pair<double, double>> mi_window;
    /// Both windows contain pi/2.
    bool windows_contain_half_pi = false;
    /// Every grid point inside the witness window has |I - H_S| <= eps_i.
    bool mi_plateau_on_witness_window = false;
    /// The witness window is symmetric about pi/2 within one grid step.
    bool witness_window_symmetric = false;
};

CorrespondenceReport witness_vs_mi_correspondence(BranchingModelConfig cfg, const std::vector<double> &theta_grid,
                                                  const WitnessObservable &w, double eps_w = 0.02,
                                                  double eps_i = 0.05);

/// Pair-averaged I(S:F) with m = 2 on a fig3 state; auxiliaries traced out.
double pair_averaged_mi(const StateVector &psi, const ModelLayout &layout);

}  // namespace darwinium
