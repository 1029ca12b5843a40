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
 * Entropies, mutual information, Holevo bound and quantum discord.
 *
 * All logarithms are base 2. Conditional entropies and Holevo quantities
 * are evaluated on a factor Psi of rho_SF (Psi Psi^dag = rho_SF) whose row
 * index holds the system bits in the low positions and the fragment bits
 * above them. Rank-deficient states keep Psi narrow, which is what makes
 * the inner loop of the basis search cheap.
 */
#pragma once

#include <cstdint>
#include <span>
#include <string>
#include <utility>
#include <vector>

#include <json.hpp>

#include "darwinium/density_matrix.hpp"
#include "darwinium/nelder_mead.hpp"
#include "darwinium/state_vector.hpp"

namespace darwinium {

/// Eigenvalues at or below this count as zero in 0 log 0.
inline constexpr double kEntropyFloor = 1e-12;

struct FragmentPartition {
    std::vector<int> system;
    std::vector<int> fragment;
    std::vector<int> complement;

    [[nodiscard]] int m() const { return static_cast<int>(fragment.size()); }
    [[nodiscard]] int n_env() const { return static_cast<int>(fragment.size() + complement.size()); }
    /// Disjoint, nonempty system, all indices in [0, n_qubits).
    void validate(int n_qubits) const;
};

/// The first m environment qubits form the fragment, the rest the complement.
FragmentPartition make_partition(std::vector<int> system, const std::vector<int> &environment, int m);

/**
 * Rank-1 product projective measurement. Qubit j is measured along the
 * Bloch direction (theta_j, phi_j): outcome 0 is
 * cos(theta/2)|0> + e^{i phi} sin(theta/2)|1>, outcome 1 its orthogonal
 * partner.
 */
struct MeasurementBasis {
    std::vector<std::pair<double, double>> angles;

    static MeasurementBasis computational(int n_qubits);
    /// Columns are the outcome-0 and outcome-1 vectors of qubit j.
    [[nodiscard]] Mat2 rotation(std::size_t j) const;
};

/// -sum l log2 l over the given spectrum.
double entropy_of_spectrum(std::span<const double> eigenvalues);
/// Throws ValidationError on non-Hermitian input.
double von_neumann_entropy(const MatX &rho);
double von_neumann_entropy(const DensityMatrix &rho);

/// Entropy of the reduced state of a pure state on `qubits`, computed on
/// whichever side of the cut is smaller.
double subsystem_entropy(const StateVector &psi, std::span<const int> qubits);

/// H_S + H_F - H_SF. Qubits outside the partition (auxiliaries) are
/// traced out implicitly.
double mutual_information(const StateVector &psi, const FragmentPartition &part);
/// Same on a mixed state; partition indices are local qubits of rho.
double mutual_information(const DensityMatrix &rho, const FragmentPartition &part);

/**
 * sum_a p_a H(rho_S^a) for the product basis on the fragment.
 *
 * `factor` has 2^(n_sys + n_frag) rows; see the file comment for layout.
 */
double conditional_entropy_fixed_basis(const MatX &factor, int n_sys, const MeasurementBasis &basis);
/// rho_SF with system qubits as local qubits 0..n_sys-1.
double conditional_entropy_fixed_basis(const DensityMatrix &rho_sf, int n_sys, const MeasurementBasis &basis);

struct HolevoOptions {
    /// Total starts including the computational-basis start.
    int restarts = 8;
    std::uint64_t seed = 0x5eed;
    NelderMeadOptions nm{};
};

struct HolevoResult {
    double chi = 0.0;
    double h_s = 0.0;
    /// Minimum conditional entropy found.
    double h_cond = 0.0;
    /// Conditional entropy in the computational basis.
    double h_cond_computational = 0.0;
    MeasurementBasis basis;
    bool converged = false;
};

/// chi = H_S - min over product projective bases of the conditional
/// entropy. The computational basis is always the first candidate.
HolevoResult holevo_bound(const MatX &factor, int n_sys, const HolevoOptions &opt = {});
HolevoResult holevo_bound(const DensityMatrix &rho_sf, int n_sys, const HolevoOptions &opt = {});

struct DiscordOptions {
    HolevoOptions holevo{};
    /// D is clamped to [-tol_opt, inf).
    double tol_opt = 1e-3;
};

struct DiscordResult {
    double I = 0.0;
    double chi = 0.0;
    double D = 0.0;
    double D_raw = 0.0;
    bool converged = true;
};

DiscordResult quantum_discord(const StateVector &psi, const FragmentPartition &part, const DiscordOptions &opt = {});
/// rho holds system qubits first, then fragment qubits.
DiscordResult quantum_discord(const DensityMatrix &rho_sf, int n_sys, const DiscordOptions &opt = {});

struct InfoPoint {
    double sweep = 0.0;
    std::vector<double> I, chi, D;
};

struct Stats {
    double mean = 0.0;
    double std = 0.0;
};
/// Mean and population standard deviation.
Stats summarize(std::span<const double> xs);

struct InfoCurve {
    std::string sweep_name;  ///< "m", "N" or "theta"
    std::uint64_t seed = 0;
    std::vector<InfoPoint> points;

    /// Header: sweep,I_mean,I_std,chi_mean,chi_std,D_mean,D_std,runs,seed
    [[nodiscard]] std::string to_csv() const;
    [[nodiscard]] nlohmann::json to_json() const;
};

}  // namespace darwinium
