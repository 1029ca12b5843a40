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
 * Shot-sampled Pauli-basis measurements, linear-inversion state
 * tomography and logical post-selection.
 *
 * A measured register is a list of physical qubits. It is grouped into
 * tomographic units: one unit per qubit, or, in logical mode, qubits[0]
 * and qubits[1] form unit 0 (the logical pair |00>, |11>) and every
 * later qubit is its own unit. Before readout each unit is rotated by
 * I, Rx(pi/2) or Ry(pi/2) (labels 'I', 'X', 'Y'); in logical mode unit 0
 * gets the logical versions exp(-i pi/4 X_L), exp(-i pi/4 Y_L) with
 * X_L = X (x) X and Y_L = X (x) Y.
 *
 * Setting strings list units in order (character j is unit j). Outcome
 * labels are written like basis labels: the last character is
 * qubits[0] (or unit 0 once collapsed).
 */
#pragma once

#include <cstdint>
#include <map>
#include <ostream>
#include <string>
#include <vector>

#include <json.hpp>

#include "darwinium/density_matrix.hpp"
#include "darwinium/geometry.hpp"
#include "darwinium/rng.hpp"
#include "darwinium/state_vector.hpp"

namespace darwinium {

inline constexpr int kMaxTomographyUnits = 5;

struct TomographySetting {
    std::string labels;
    bool logical = false;
};

/**
 * Counts per outcome. In exact (infinite-shot) mode the counts are the
 * outcome probabilities and `shots` is 1; otherwise counts are integers
 * summing to `shots`.
 */
struct ShotRecord {
    TomographySetting setting;
    std::map<std::string, double> counts;
    double shots = 0.0;
    bool exact = false;
};

/// 3^n settings in lexicographic order over "IXY". n is capped at 5.
std::vector<TomographySetting> enumerate_settings(int n, bool logical = false);

/// Rotation applied before readout for one label.
Mat2 setting_rotation(char label);
/// Logical rotation on the pair; local bit 0 is qubits[0].
MatX logical_setting_rotation(char label);

/// Pauli index (1 = X, 2 = Y, 3 = Z) and sign s such that measuring Z
/// after the rotation measures s * P.
std::pair<int, int> measured_pauli(char label);

/// Outcome distribution over `qubits` after the setting's rotations.
std::vector<double> setting_probabilities(const StateVector &psi, const std::vector<int> &qubits,
                                          const TomographySetting &s);
/// Same for a state whose local qubits are the measured register.
std::vector<double> setting_probabilities(const DensityMatrix &rho, const TomographySetting &s);

/**
 * Sample `shots` outcomes (0 = exact probabilities) after pushing the
 * distribution through independent readout flips with probability
 * eps_readout.
 */
ShotRecord sample_distribution(const std::vector<double> &probs, int n_bits, const TomographySetting &s,
                               std::uint64_t shots, CounterRng &rng, double eps_readout = 0.0);

ShotRecord sample_measurements(const StateVector &psi, const std::vector<int> &qubits, const TomographySetting &s,
                               std::uint64_t shots, CounterRng &rng, double eps_readout = 0.0);

/// One record per setting of `settings`, each from its own substream of rng.
std::vector<ShotRecord> sample_all(const DensityMatrix &rho, const std::vector<TomographySetting> &settings,
                                   std::uint64_t shots, const CounterRng &rng, double eps_readout = 0.0);

/// Pauli-expectation least squares; may be non-physical.
MatX linear_inversion(const std::vector<ShotRecord> &records, int n);
/// linear_inversion followed by psd_project.
DensityMatrix reconstruct_density(const std::vector<ShotRecord> &records, int n);
/// Reconstruct on n units, then trace down to `keep`.
DensityMatrix reconstruct_traced(const std::vector<ShotRecord> &records, int n, const std::vector<int> &keep);

struct PostselectResult {
    std::vector<ShotRecord> records;
    double discarded_fraction = 0.0;
};

/// Drop outcomes whose bits at positions (a, b) of the measured register
/// are 01 or 10. Throws DegenerateInputError if nothing is left.
PostselectResult logical_postselect(const std::vector<ShotRecord> &records, std::pair<int, int> system_bits);

/// Merge register positions 0 and 1 (already post-selected) into one
/// logical unit.
std::vector<ShotRecord> collapse_logical(const std::vector<ShotRecord> &records);

/**
 * Fragment ensemble from unit-level records in which only unit 0 (the
 * system) is rotated and units 1..m are read in the computational basis.
 * Entry labels follow the geometry convention (character i is unit i+1).
 */
GeometricEnsemble tomographic_fragment_ensemble(const std::vector<ShotRecord> &records, int m);

nlohmann::json to_json(const ShotRecord &r);
void write_jsonl(std::ostream &os, const std::vector<ShotRecord> &records);

}  // namespace darwinium
