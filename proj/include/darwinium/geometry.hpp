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
 * Geometric quantum states: ensembles of conditional system states
 * obtained by conditioning on computational-basis outcomes of the
 * environment, their Bloch coordinates, P(theta) and the branch signal.
 *
 * Outcome labels list the measured qubits in partition order: character i
 * of a fragment label is the outcome of part.fragment[i].
 */
#pragma once

#include <array>
#include <optional>
#include <string>
#include <vector>

#include <json.hpp>

#include "darwinium/info.hpp"
#include "darwinium/state_vector.hpp"

namespace darwinium {

/**
 * Two orthogonal basis states of the system register. Labels are written
 * like control labels: the last character is system[0]. They span the
 * logical qubit whose Bloch vector is reported.
 */
struct PointerBasis {
    std::vector<int> system;
    std::string zero = "0";
    std::string one = "1";

    void validate() const;
};

using Bloch = std::array<double, 3>;

struct GeometricEntry {
    double X = 0.0;
    std::string f_label;
    std::optional<std::string> fbar_label;
    /// Conditional logical state, always set.
    Mat2 rho = Mat2::Zero();
    /// Set for full-environment conditioning, where the state is pure.
    std::optional<Eigen::Vector2cd> chi;
    Bloch bloch{0.0, 0.0, 0.0};
};

struct GeometricEnsemble {
    std::vector<GeometricEntry> entries;
    /// Weight found outside the pointer subspace and dropped before
    /// renormalizing X.
    double discarded_fraction = 0.0;
};

/// Entries with X above this are kept.
inline constexpr double kMinBranchWeight = 1e-12;

/**
 * |psi> = sum sqrt(X_ab) |chi_ab>|f_a>|fbar_b>. Every qubit of psi must
 * belong to the partition. Each chi has its first nonzero logical
 * amplitude real and positive.
 */
GeometricEnsemble geometric_decomposition(const StateVector &psi, const FragmentPartition &part,
                                          const PointerBasis &pb);

/// Conditioning on the fragment only; every qubit outside S and F is
/// traced out. sum_a X_a rho_a = rho_S (logical block).
GeometricEnsemble fragment_ensemble(const StateVector &psi, const FragmentPartition &part, const PointerBasis &pb);

Bloch bloch_coordinates(const Mat2 &rho);
Bloch bloch_coordinates(const Eigen::Vector2cd &chi);

/// atan2(|(x, y)|, z); a zero vector maps to pi/2.
double polar_angle(const Bloch &b);

/// P(theta) = total X of entries with polar angle <= theta.
std::vector<double> integrated_probability(const GeometricEnsemble &ens, const std::vector<double> &theta_grid);

struct BranchBin {
    double z = 0.0;  ///< bin center
    double A = 0.0;
    double weight = 0.0;
};

/// A(z) = sum over entries in bin z of X * sum_i (1 - 2 f_i). Bins are
/// centered on multiples of bin_width; output sorted by z.
std::vector<BranchBin> branch_signal(const GeometricEnsemble &ens, double bin_width = 0.02);

enum class DecodedBranch { Zero, One, Undecided };

/// Majority vote over the record bits. Throws ConfigError on an empty
/// or non-binary label.
DecodedBranch decode_branch(const std::string &f_label);

/// Probability that decoding the fragment outcome names the branch it
/// came from. Uses the diagonal of each conditional state, so it applies
/// to fragment ensembles. Ties score one half.
double decode_accuracy(const GeometricEnsemble &ens);

nlohmann::json to_json(const GeometricEnsemble &ens);

}  // namespace darwinium
