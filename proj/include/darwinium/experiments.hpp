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
 * Experiment drivers behind the command-line tool. Each driver fans its
 * realizations out over OpenMP threads; realization r always draws from
 * substream r of the master seed and results are merged in index order,
 * so outputs do not depend on the worker count.
 */
#pragma once

#include <cstdint>
#include <map>
#include <string>
#include <vector>

#include <json.hpp>

#include "darwinium/circuit.hpp"
#include "darwinium/geometry.hpp"
#include "darwinium/info.hpp"
#include "darwinium/noise.hpp"
#include "darwinium/witness.hpp"

namespace darwinium {

inline constexpr const char *kOutputSchema = "darwinium.output/1";

/// Build identifier compiled into the library.
const char *build_id();

struct ExperimentConfig {
    std::string experiment = "fig1b";  ///< fig1b fig1c fig2 fig2c fig2d fig2e fig3 fig4 oracle-check

    int n_env = 10;
    std::vector<int> m_values;      ///< empty: 0..N (fig1b) or 1..4 (fig3)
    std::vector<int> n_values;      ///< fig1c environment sizes
    int m_fixed = 3;                ///< fig1c fragment size
    std::vector<double> theta;      ///< empty: theta_points on [0, pi]
    int theta_points = 33;
    int runs = 20;
    double p = 0.5;
    std::uint64_t seed = 20240601;
    int workers = 0;                ///< 0: OpenMP default

    bool noise = false;
    NoiseParams noise_params{};
    /// Per tomography setting; 0 means exact probabilities.
    std::uint64_t shots = 0;
    int trajectories = 10000;

    int holevo_restarts = 8;
    int holevo_max_evals = 1500;
    double tol_opt = 1e-3;

    AuxOrientation aux_orientation = AuxOrientation::EnvironmentControlsAux;
    bool scramble_after = true;

    // fig2
    std::vector<int> fig2_n_values{2, 6, 10};
    std::vector<int> fig2_m_ensemble{2, 5, 8};
    std::vector<int> fig2_m_signal{2, 4, 6, 8};
    double bin_width = 0.02;
    bool tomography = false;

    // fig4
    double eps_w = 0.02;
    double eps_i = 0.05;

    // oracle-check
    int oracle_draws = 100;
    int oracle_max_n = 8;
    bool oracle_random_p = true;
    bool inject_overlap_sign_error = false;

    /// Resolved theta grid.
    [[nodiscard]] std::vector<double> theta_grid() const;
    [[nodiscard]] DiscordOptions discord_options(std::uint64_t seed) const;
    void validate() const;
};

/// Defaults for an experiment, overridden by any keys present in `j`.
ExperimentConfig experiment_config_from_json(const nlohmann::json &j);
nlohmann::json to_json(const ExperimentConfig &cfg);

/// Per-realization model seed.
std::uint64_t realization_seed(std::uint64_t master, std::uint64_t r);

InfoCurve run_fig1b(const ExperimentConfig &cfg);
InfoCurve run_fig1c(const ExperimentConfig &cfg);

struct Fig2Result {
    std::vector<double> theta_grid;
    /// P(theta) per environment size: [N] -> [run][theta index].
    std::map<int, std::vector<std::vector<double>>> p_theta;
    /// Fragment ensembles of the first min(runs, 10) realizations: [m][run].
    std::map<int, std::vector<GeometricEnsemble>> ensembles;
    /// Decode accuracy: [m][run], for m in the union of both m lists.
    std::map<int, std::vector<double>> decode_accuracy;
    /// A(z) pooled over runs with weight 1/runs: [m].
    std::map<int, std::vector<BranchBin>> signal;
    /// Mean |z| of fragment-ensemble entries: [m][run].
    std::map<int, std::vector<double>> z_spread;
    /// Tomographic path only: [m][run].
    std::map<int, std::vector<double>> discarded_fraction;
    std::map<int, std::vector<double>> tomo_decode_accuracy;
    bool tomographic = false;
};

Fig2Result run_fig2(const ExperimentConfig &cfg);

struct Fig3Result {
    /// One curve per fragment size, sweep variable theta.
    std::map<int, InfoCurve> curves;
    bool noisy = false;
};

Fig3Result run_fig3(const ExperimentConfig &cfg);

struct Fig4Row {
    double theta = 0.0;
    std::vector<double> witness;
    std::vector<double> mi;
};

struct Fig4Result {
    std::vector<Fig4Row> rows;
    /// Noiseless correspondence report (always computed).
    CorrespondenceReport report;
};

Fig4Result run_fig4(const ExperimentConfig &cfg);

struct OracleCheckResult {
    int draws = 0;
    int comparisons = 0;
    double max_deviation = 0.0;
    bool passed = false;
};

OracleCheckResult run_oracle_check(const ExperimentConfig &cfg);

/**
 * Trajectory average of the reduced state on `keep` for a noisy circuit.
 * Trajectories are grouped in fixed chunks and the chunk sums are added in
 * order, so the result is independent of the thread count.
 */
DensityMatrix averaged_reduced_state(const NoisyCircuit &noisy, const std::vector<int> &keep, int trajectories,
                                     const CounterRng &rng);

struct ExperimentOutput {
    /// File name -> content.
    std::map<std::string, std::string> files;
    nlohmann::json summary;
    /// False only for a failed oracle check.
    bool passed = true;
};

/// Run the configured experiment and render its CSV and JSON files.
ExperimentOutput run_experiment(const ExperimentConfig &cfg);

}  // namespace darwinium
