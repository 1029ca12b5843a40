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
#include "darwinium/experiments.hpp"

#include <omp.h>

#include <algorithm>
#include <cmath>
#include <set>
#include <sstream>

#include "darwinium/oracle.hpp"
#include "darwinium/tomography.hpp"

#ifndef DARWINIUM_BUILD_ID
#define DARWINIUM_BUILD_ID "unknown"
#endif

namespace darwinium {

using nlohmann::json;

const char *build_id() { return DARWINIUM_BUILD_ID; }

std::uint64_t realization_seed(std::uint64_t master, std::uint64_t r) { return CounterRng(master).substream(r).key(); }

std::vector<double> ExperimentConfig::theta_grid() const {
    if (!theta.empty()) {
        return theta;
    }
    std::vector<double> g;
    for (int i = 0; i < theta_points; ++i) {
        g.push_back(theta_points == 1 ? 0.0 : kPi * i / (theta_points - 1));
    }
    return g;
}

DiscordOptions ExperimentConfig::discord_options(std::uint64_t s) const {
    DiscordOptions o;
    o.holevo.restarts = holevo_restarts;
    o.holevo.nm.max_evals = holevo_max_evals;
    o.holevo.seed = s;
    o.tol_opt = tol_opt;
    return o;
}

namespace {

const std::set<std::string> kExperiments{"fig1b", "fig1c", "fig2",         "fig2c", "fig2d",
                                         "fig2e", "fig3",  "fig4", "oracle-check"};

bool is_fig2(const std::string &e) { return e.rfind("fig2", 0) == 0; }

}  // namespace

void ExperimentConfig::validate() const {
    if (!kExperiments.contains(experiment)) {
        throw ConfigError("unknown experiment '" + experiment + "'");
    }
    if (runs < 1 || n_env < 1 || theta_points < 1 || trajectories < 1 || holevo_restarts < 1 ||
        holevo_max_evals < 1 || oracle_draws < 1 || oracle_max_n < 1 || oracle_max_n > 12) {
        throw ConfigError("counts in the experiment config must be positive (oracle max_N <= 12)");
    }
    if (!(p >= 0.0 && p <= 1.0)) {
        throw ConfigError("p must lie in [0, 1]");
    }
    if ((experiment == "fig3" || experiment == "fig4") && n_env != 4) {
        throw ConfigError("the fig3 model has exactly 4 environment qubits");
    }
    for (int m : m_values) {
        if (m < 0 || m > n_env) {
            throw ConfigError("fragment sizes must lie in [0, N]");
        }
    }
    if (experiment == "fig1c") {
        if (n_values.empty()) {
            throw ConfigError("fig1c needs a nonempty N list");
        }
        for (int n : n_values) {
            if (n < 1 || n < m_fixed) {
                throw ConfigError("fig1c needs N >= max(1, m)");
            }
        }
    }
    if (is_fig2(experiment)) {
        for (int m : fig2_m_ensemble) {
            if (m < 0 || m > n_env) {
                throw ConfigError("fig2 fragment sizes must lie in [0, N]");
            }
        }
        for (int m : fig2_m_signal) {
            if (m < 1 || m > n_env) {
                throw ConfigError("fig2 signal fragment sizes must lie in [1, N]");
            }
        }
        if (tomography && !fig2_m_ensemble.empty()) {
            for (int m : fig2_m_ensemble) {
                if (m + 1 > kMaxTomographyUnits + 8) {
                    throw ConfigError("fragment too large for conditional tomography");
                }
            }
        }
    }
    if (!(bin_width > 0.0)) {
        throw ConfigError("bin width must be positive");
    }
    noise_params.validate();
}

ExperimentConfig experiment_config_from_json(const json &j) {
    static const std::set<std::string> known{
        "experiment", "N",     "m",           "N_values",    "m_fixed", "theta",  "theta_points",
        "runs",       "p",     "seed",        "workers",     "noise",   "noise_params", "shots",
        "trajectories", "holevo", "tol_opt",  "aux_orientation", "scramble_after", "fig2", "eps_w",
        "eps_i",      "oracle"};
    if (!j.is_object()) {
        throw ConfigError("experiment config must be a JSON object");
    }
    for (const auto &[k, v] : j.items()) {
        if (!known.contains(k)) {
            throw ConfigError("unknown config key '" + k + "'");
        }
    }
    ExperimentConfig c;
    try {
        c.experiment = j.value("experiment", c.experiment);
        if (c.experiment == "fig1c") {
            c.n_values = {4, 5, 6, 7, 8, 9, 10};
        } else if (c.experiment == "fig3" || c.experiment == "fig4") {
            c.n_env = 4;
            c.runs = 1;
        } else if (is_fig2(c.experiment)) {
            c.runs = 10;
            c.trajectories = 200;
        }
        c.n_env = j.value("N", c.n_env);
        c.m_values = j.value("m", c.m_values);
        c.n_values = j.value("N_values", c.n_values);
        c.m_fixed = j.value("m_fixed", c.m_fixed);
        c.theta = j.value("theta", c.theta);
        c.theta_points = j.value("theta_points", c.theta_points);
        c.runs = j.value("runs", c.runs);
        if (j.contains("p")) {
            c.p = j.at("p").get<double>();
            c.oracle_random_p = false;
        }
        c.seed = j.value("seed", c.seed);
        c.workers = j.value("workers", c.workers);
        if (j.contains("noise")) {
            c.noise = j.at("noise").get<bool>();
        }
        if (j.contains("noise_params")) {
            c.noise_params = noise_params_from_json(j.at("noise_params"));
        }
        c.shots = j.value("shots", c.shots);
        c.trajectories = j.value("trajectories", c.trajectories);
        if (j.contains("holevo")) {
            const auto &h = j.at("holevo");
            c.holevo_restarts = h.value("restarts", c.holevo_restarts);
            c.holevo_max_evals = h.value("max_evals", c.holevo_max_evals);
        }
        c.tol_opt = j.value("tol_opt", c.tol_opt);
        if (j.contains("aux_orientation")) {
            const auto s = j.at("aux_orientation").get<std::string>();
            if (s == "env-controls-aux") {
                c.aux_orientation = AuxOrientation::EnvironmentControlsAux;
            } else if (s == "aux-controls-env") {
                c.aux_orientation = AuxOrientation::AuxControlsEnvironment;
            } else {
                throw ConfigError("aux_orientation must be env-controls-aux or aux-controls-env");
            }
        }
        c.scramble_after = j.value("scramble_after", c.scramble_after);
        if (j.contains("fig2")) {
            const auto &f = j.at("fig2");
            c.fig2_n_values = f.value("N_values", c.fig2_n_values);
            c.fig2_m_ensemble = f.value("m_ensemble", c.fig2_m_ensemble);
            c.fig2_m_signal = f.value("m_signal", c.fig2_m_signal);
            c.bin_width = f.value("bin_width", c.bin_width);
            c.tomography = f.value("tomography", c.tomography);
        }
        c.eps_w = j.value("eps_w", c.eps_w);
        c.eps_i = j.value("eps_i", c.eps_i);
        if (j.contains("oracle")) {
            const auto &o = j.at("oracle");
            c.oracle_draws = o.value("draws", c.oracle_draws);
            c.oracle_max_n = o.value("max_N", c.oracle_max_n);
            c.oracle_random_p = o.value("random_p", c.oracle_random_p);
            c.inject_overlap_sign_error = o.value("inject_overlap_sign_error", c.inject_overlap_sign_error);
        }
    } catch (const json::exception &e) {
        throw ConfigError(std::string("bad experiment config: ") + e.what());
    }
    c.validate();
    return c;
}

json to_json(const ExperimentConfig &c) {
    return {{"experiment", c.experiment},
            {"N", c.n_env},
            {"m", c.m_values},
            {"N_values", c.n_values},
            {"m_fixed", c.m_fixed},
            {"theta", c.theta_grid()},
            {"runs", c.runs},
            {"p", c.p},
            {"seed", c.seed},
            {"noise", c.noise},
            {"noise_params", to_json(c.noise_params)},
            {"shots", c.shots},
            {"trajectories", c.trajectories},
            {"holevo", {{"restarts", c.holevo_restarts}, {"max_evals", c.holevo_max_evals}}},
            {"tol_opt", c.tol_opt},
            {"aux_orientation", c.aux_orientation == AuxOrientation::EnvironmentControlsAux ? "env-controls-aux"
                                                                                             : "aux-controls-env"},
            {"scramble_after", c.scramble_after},
            {"fig2",
             {{"N_values", c.fig2_n_values},
              {"m_ensemble", c.fig2_m_ensemble},
              {"m_signal", c.fig2_m_signal},
              {"bin_width", c.bin_width},
              {"tomography", c.tomography}}},
            {"eps_w", c.eps_w},
            {"eps_i", c.eps_i},
            {"oracle",
             {{"draws", c.oracle_draws},
              {"max_N", c.oracle_max_n},
              {"random_p", c.oracle_random_p},
              {"inject_overlap_sign_error", c.inject_overlap_sign_error}}}};
}

namespace {

int thread_count(const ExperimentConfig &cfg) { return cfg.workers > 0 ? cfg.workers : omp_get_max_threads(); }

BranchingModelConfig model_config(BranchingModel model, int n_env, double p, std::uint64_t seed) {
    BranchingModelConfig m;
    m.model = model;
    m.n_env = n_env;
    m.p = p;
    m.rng_seed = seed;
    return m;
}

BranchingModelConfig fig3_config(const ExperimentConfig &cfg, double theta) {
    BranchingModelConfig m = model_config(BranchingModel::Fig3ScrambledEnvironment, cfg.n_env, cfg.p, cfg.seed);
    m.theta = theta;
    m.aux_orientation = cfg.aux_orientation;
    m.scramble_after = cfg.scramble_after;
    return m;
}

std::uint64_t holevo_seed(std::uint64_t master, std::uint64_t r, std::uint64_t k) {
    return mix64(realization_seed(master ^ 0x686f6c65766fULL, r) + k);
}

}  // namespace

InfoCurve run_fig1b(const ExperimentConfig &cfg) {
    const int n = cfg.n_env;
    std::vector<int> ms = cfg.m_values;
    if (ms.empty()) {
        for (int m = 0; m <= n; ++m) {
            ms.push_back(m);
        }
    }
    std::vector<StateVector> states(static_cast<std::size_t>(cfg.runs));
    std::vector<ModelLayout> layouts(states.size());
    for (int r = 0; r < cfg.runs; ++r) {
        const auto mc =
            model_config(BranchingModel::Fig1SingleQubitSystem, n, cfg.p, realization_seed(cfg.seed, static_cast<std::uint64_t>(r)));
        states[static_cast<std::size_t>(r)] = run_circuit(build_circuit(mc));
        layouts[static_cast<std::size_t>(r)] = model_layout(mc);
    }
    const std::size_t jobs = states.size() * ms.size();
    std::vector<DiscordResult> out(jobs);
#pragma omp parallel for schedule(dynamic) num_threads(thread_count(cfg))
    for (std::size_t k = 0; k < jobs; ++k) {
        const std::size_t r = k / ms.size();
        const int m = ms[k % ms.size()];
        const auto &lay = layouts[r];
        out[k] = quantum_discord(states[r], make_partition(lay.system, lay.environment, m),
                                 cfg.discord_options(holevo_seed(cfg.seed, r, static_cast<std::uint64_t>(m))));
    }
    InfoCurve curve;
    curve.sweep_name = "m";
    curve.seed = cfg.seed;
    for (std::size_t i = 0; i < ms.size(); ++i) {
        InfoPoint pt;
        pt.sweep = ms[i];
        for (std::size_t r = 0; r < states.size(); ++r) {
            const DiscordResult &d = out[r * ms.size() + i];
            pt.I.push_back(d.I);
            pt.chi.push_back(d.chi);
            pt.D.push_back(d.D);
        }
        curve.points.push_back(std::move(pt));
    }
    return curve;
}

InfoCurve run_fig1c(const ExperimentConfig &cfg) {
    const auto &ns = cfg.n_values;
    const std::size_t runs = static_cast<std::size_t>(cfg.runs);
    const std::size_t jobs = ns.size() * runs;
    std::vector<DiscordResult> out(jobs);
#pragma omp parallel for schedule(dynamic) num_threads(thread_count(cfg))
    for (std::size_t k = 0; k < jobs; ++k) {
        const int n = ns[k / runs];
        const std::size_t r = k % runs;
        const auto mc = model_config(BranchingModel::Fig1SingleQubitSystem, n, cfg.p, realization_seed(cfg.seed, r));
        const ModelLayout lay = model_layout(mc);
        out[k] = quantum_discord(run_circuit(build_circuit(mc)), make_partition(lay.system, lay.environment, cfg.m_fixed),
                                 cfg.discord_options(holevo_seed(cfg.seed, r, static_cast<std::uint64_t>(n))));
    }
    InfoCurve curve;
    curve.sweep_name = "N";
    curve.seed = cfg.seed;
    for (std::size_t i = 0; i < ns.size(); ++i) {
        InfoPoint pt;
        pt.sweep = ns[i];
        for (std::size_t r = 0; r < runs; ++r) {
            const DiscordResult &d = out[i * runs + r];
            pt.I.push_back(d.I);
            pt.chi.push_back(d.chi);
            pt.D.push_back(d.D);
        }
        curve.points.push_back(std::move(pt));
    }
    return curve;
}

DensityMatrix averaged_reduced_state(const NoisyCircuit &noisy, const std::vector<int> &keep, int trajectories,
                                     const CounterRng &rng) {
    if (trajectories < 1) {
        throw ConfigError("need at least one trajectory");
    }
    constexpr int kChunk = 64;
    const int n_chunks = (trajectories + kChunk - 1) / kChunk;
    const Eigen::Index dim = Eigen::Index{1} << keep.size();
    std::vector<MatX> sums(static_cast<std::size_t>(n_chunks), MatX::Zero(dim, dim));
#pragma omp parallel for schedule(dynamic)
    for (int c = 0; c < n_chunks; ++c) {
        MatX &acc = sums[static_cast<std::size_t>(c)];
        for (int t = c * kChunk; t < std::min(trajectories, (c + 1) * kChunk); ++t) {
            CounterRng sub = rng.substream(static_cast<std::uint64_t>(t));
            const MatX a = reduced_factor(run_trajectory(noisy, sub), keep, 0.0);
            acc.noalias() += a * a.adjoint();
        }
    }
    MatX total = MatX::Zero(dim, dim);
    for (const auto &s : sums) {
        total += s;
    }
    total /= static_cast<double>(trajectories);
    total = (0.5 * (total + total.adjoint())).eval();
    return DensityMatrix(total / total.trace().real(), DensityMatrix::Unchecked{});
}

namespace {

void merge_bins(std::map<long, BranchBin> &pool, const std::vector<BranchBin> &bins, double bin_width, double w) {
    for (const auto &b : bins) {
        BranchBin &dst = pool[std::lround(b.z / bin_width)];
        dst.z = b.z;
        dst.A += w * b.A;
        dst.weight += w * b.weight;
    }
}

// Per-setting outcome distribution over the measured register, averaged
// over noisy trajectories when noise is on.
std::vector<std::vector<double>> logical_setting_distributions(const ExperimentConfig &cfg, const Circuit &circuit,
                                                               const StateVector &ideal,
                                                               const std::vector<int> &qubits,
                                                               const std::vector<TomographySetting> &settings,
                                                               const CounterRng &rng) {
    std::vector<std::vector<double>> probs(settings.size());
    if (!cfg.noise) {
        for (std::size_t s = 0; s < settings.size(); ++s) {
            probs[s] = setting_probabilities(ideal, qubits, settings[s]);
        }
        return probs;
    }
    const NoisyCircuit noisy = noisy_gate_wrapper(circuit, cfg.noise_params);
    for (auto &p : probs) {
        p.assign(std::size_t{1} << qubits.size(), 0.0);
    }
    for (int t = 0; t < cfg.trajectories; ++t) {
        CounterRng sub = rng.substream(static_cast<std::uint64_t>(t));
        const StateVector psi = run_trajectory(noisy, sub);
        for (std::size_t s = 0; s < settings.size(); ++s) {
            const auto q = setting_probabilities(psi, qubits, settings[s]);
            for (std::size_t i = 0; i < q.size(); ++i) {
                probs[s][i] += q[i] / cfg.trajectories;
            }
        }
    }
    return probs;
}

}  // namespace

Fig2Result run_fig2(const ExperimentConfig &cfg) {
    Fig2Result res;
    res.theta_grid = cfg.theta_grid();
    res.tomographic = cfg.tomography || cfg.noise;
    const std::size_t runs = static_cast<std::size_t>(cfg.runs);
    const bool want_c = cfg.experiment == "fig2" || cfg.experiment == "fig2c";
    const bool want_d = cfg.experiment == "fig2" || cfg.experiment == "fig2d";
    const bool want_e = cfg.experiment == "fig2" || cfg.experiment == "fig2e";

    if (want_c) {
        for (int n : cfg.fig2_n_values) {
            std::vector<std::vector<double>> rows(runs);
#pragma omp parallel for schedule(dynamic) num_threads(thread_count(cfg))
            for (std::size_t r = 0; r < runs; ++r) {
                const auto mc = model_config(BranchingModel::Fig2LogicalPairSystem, n, cfg.p, realization_seed(cfg.seed, r));
                const ModelLayout lay = model_layout(mc);
                const PointerBasis pb{lay.system, lay.pointer_labels.first, lay.pointer_labels.second};
                const auto ens = geometric_decomposition(run_circuit(build_circuit(mc)),
                                                         make_partition(lay.system, lay.environment, n), pb);
                rows[r] = integrated_probability(ens, res.theta_grid);
            }
            res.p_theta[n] = std::move(rows);
        }
    }
    if (!want_d && !want_e) {
        return res;
    }

    std::set<int> ms;
    if (want_d) {
        ms.insert(cfg.fig2_m_ensemble.begin(), cfg.fig2_m_ensemble.end());
    }
    if (want_e) {
        ms.insert(cfg.fig2_m_signal.begin(), cfg.fig2_m_signal.end());
    }
    const std::vector<int> m_list(ms.begin(), ms.end());
    const std::size_t kept_ensembles = std::min<std::size_t>(runs, 10);

    struct Cell {
        GeometricEnsemble ens;
        double accuracy = 0.0;
        double spread = 0.0;
        double discarded = 0.0;
        double tomo_accuracy = 0.0;
    };
    std::vector<Cell> cells(runs * m_list.size());
#pragma omp parallel for schedule(dynamic) num_threads(thread_count(cfg))
    for (std::size_t k = 0; k < cells.size(); ++k) {
        const std::size_t r = k / m_list.size();
        const int m = m_list[k % m_list.size()];
        const auto mc = model_config(BranchingModel::Fig2LogicalPairSystem, cfg.n_env, cfg.p, realization_seed(cfg.seed, r));
        const ModelLayout lay = model_layout(mc);
        const PointerBasis pb{lay.system, lay.pointer_labels.first, lay.pointer_labels.second};
        const Circuit circuit = build_circuit(mc);
        const StateVector psi = run_circuit(circuit);
        const FragmentPartition part = make_partition(lay.system, lay.environment, m);
        Cell &cell = cells[k];
        cell.ens = fragment_ensemble(psi, part, pb);
        cell.accuracy = decode_accuracy(cell.ens);
        for (const auto &e : cell.ens.entries) {
            cell.spread += e.X * std::abs(e.bloch[2]);
        }
        if (res.tomographic) {
            std::vector<int> qubits = lay.system;
            qubits.insert(qubits.end(), part.fragment.begin(), part.fragment.end());
            std::vector<TomographySetting> settings;
            for (char l : std::string("IXY")) {
                settings.push_back({l + std::string(static_cast<std::size_t>(m), 'I'), true});
            }
            const CounterRng rng = CounterRng(realization_seed(cfg.seed ^ 0x746f6d6fULL, r)).substream(static_cast<std::uint64_t>(m));
            const auto probs = logical_setting_distributions(cfg, circuit, psi, qubits, settings, rng.substream(0));
            std::vector<ShotRecord> records;
            for (std::size_t s = 0; s < settings.size(); ++s) {
                CounterRng sub = rng.substream(s + 1);
                records.push_back(sample_distribution(probs[s], static_cast<int>(qubits.size()), settings[s], cfg.shots,
                                                      sub, cfg.noise ? cfg.noise_params.eps_readout : 0.0));
            }
            const PostselectResult ps = logical_postselect(records, {0, 1});
            cell.discarded = ps.discarded_fraction;
            cell.tomo_accuracy = m == 0 ? 0.5 : decode_accuracy(tomographic_fragment_ensemble(collapse_logical(ps.records), m));
        }
    }

    for (std::size_t i = 0; i < m_list.size(); ++i) {
        const int m = m_list[i];
        std::map<long, BranchBin> pool;
        for (std::size_t r = 0; r < runs; ++r) {
            Cell &cell = cells[r * m_list.size() + i];
            res.decode_accuracy[m].push_back(cell.accuracy);
            res.z_spread[m].push_back(cell.spread);
            if (res.tomographic) {
                res.discarded_fraction[m].push_back(cell.discarded);
                res.tomo_decode_accuracy[m].push_back(cell.tomo_accuracy);
            }
            if (want_e && m > 0 && std::find(cfg.fig2_m_signal.begin(), cfg.fig2_m_signal.end(), m) != cfg.fig2_m_signal.end()) {
                merge_bins(pool, branch_signal(cell.ens, cfg.bin_width), cfg.bin_width, 1.0 / static_cast<double>(runs));
            }
            if (want_d && r < kept_ensembles &&
                std::find(cfg.fig2_m_ensemble.begin(), cfg.fig2_m_ensemble.end(), m) != cfg.fig2_m_ensemble.end()) {
                res.ensembles[m].push_back(std::move(cell.ens));
            }
        }
        if (!pool.empty()) {
            auto &bins = res.signal[m];
            for (const auto &[key, b] : pool) {
                bins.push_back(b);
            }
        }
    }
    return res;
}

Fig3Result run_fig3(const ExperimentConfig &cfg) {
    Fig3Result res;
    res.noisy = cfg.noise;
    std::vector<int> ms = cfg.m_values;
    if (ms.empty()) {
        ms = {1, 2, 3, 4};
    }
    const std::vector<double> grid = cfg.theta_grid();
    const std::size_t runs = cfg.noise ? static_cast<std::size_t>(cfg.runs) : 1;
    // [theta][run][m]
    std::vector<std::vector<std::vector<DiscordResult>>> out(
        grid.size(), std::vector<std::vector<DiscordResult>>(runs, std::vector<DiscordResult>(ms.size())));

    if (!cfg.noise) {
#pragma omp parallel for schedule(dynamic) num_threads(thread_count(cfg))
        for (std::size_t t = 0; t < grid.size(); ++t) {
            const auto mc = fig3_config(cfg, grid[t]);
            const ModelLayout lay = model_layout(mc);
            const StateVector psi = run_circuit(build_circuit(mc));
            for (std::size_t i = 0; i < ms.size(); ++i) {
                out[t][0][i] = quantum_discord(psi, make_partition(lay.system, lay.environment, ms[i]),
                                               cfg.discord_options(holevo_seed(cfg.seed, t, static_cast<std::uint64_t>(ms[i]))));
            }
        }
    } else {
        const std::vector<int> keep{0, 1, 2, 3, 4};
        const auto settings = enumerate_settings(static_cast<int>(keep.size()));
        for (std::size_t t = 0; t < grid.size(); ++t) {
            const auto mc = fig3_config(cfg, grid[t]);
            const NoisyCircuit noisy = noisy_gate_wrapper(build_circuit(mc), cfg.noise_params);
            for (std::size_t r = 0; r < runs; ++r) {
                const CounterRng rng(realization_seed(cfg.seed, t * runs + r));
                const DensityMatrix rho_true = averaged_reduced_state(noisy, keep, cfg.trajectories, rng.substream(0));
                const DensityMatrix rho = reconstruct_density(
                    sample_all(rho_true, settings, cfg.shots, rng.substream(1), cfg.noise_params.eps_readout),
                    static_cast<int>(keep.size()));
                for (std::size_t i = 0; i < ms.size(); ++i) {
                    std::vector<int> sf{0};
                    for (int k = 1; k <= ms[i]; ++k) {
                        sf.push_back(k);
                    }
                    out[t][r][i] = quantum_discord(partial_trace(rho, sf), 1,
                                                   cfg.discord_options(holevo_seed(cfg.seed, t * runs + r,
                                                                                   static_cast<std::uint64_t>(ms[i]))));
                }
            }
        }
    }
    for (std::size_t i = 0; i < ms.size(); ++i) {
        InfoCurve curve;
        curve.sweep_name = "theta";
        curve.seed = cfg.seed;
        for (std::size_t t = 0; t < grid.size(); ++t) {
            InfoPoint pt;
            pt.sweep = grid[t];
            for (std::size_t r = 0; r < runs; ++r) {
                pt.I.push_back(out[t][r][i].I);
                pt.chi.push_back(out[t][r][i].chi);
                pt.D.push_back(out[t][r][i].D);
            }
            curve.points.push_back(std::move(pt));
        }
        res.curves[ms[i]] = std::move(curve);
    }
    return res;
}

Fig4Result run_fig4(const ExperimentConfig &cfg) {
    Fig4Result res;
    const std::vector<double> grid = cfg.theta_grid();
    const auto base = fig3_config(cfg, 0.0);
    const ModelLayout lay = model_layout(base);
    res.report = witness_vs_mi_correspondence(base, grid, WitnessObservable::fig4_default(lay), cfg.eps_w, cfg.eps_i);
    if (!cfg.noise) {
        for (const auto &row : res.report.rows) {
            res.rows.push_back({row.theta, {row.witness}, {row.mi_pair_mean}});
        }
        return res;
    }
    // Noisy path: the reduced state of S and E is all that is measured.
    const std::vector<int> keep{0, 1, 2, 3, 4};
    ModelLayout local;
    local.system = {0};
    local.environment = {1, 2, 3, 4};
    const WitnessObservable w = WitnessObservable::fig4_default(local);
    const auto settings = enumerate_settings(static_cast<int>(keep.size()));
    const std::uint64_t witness_shots = cfg.shots > 0 ? cfg.shots : cfg.noise_params.shots;
    for (std::size_t t = 0; t < grid.size(); ++t) {
        const NoisyCircuit noisy = noisy_gate_wrapper(build_circuit(fig3_config(cfg, grid[t])), cfg.noise_params);
        Fig4Row row;
        row.theta = grid[t];
        for (int r = 0; r < cfg.runs; ++r) {
            const CounterRng rng(realization_seed(cfg.seed, t * static_cast<std::size_t>(cfg.runs) + static_cast<std::size_t>(r)));
            const DensityMatrix rho_true = averaged_reduced_state(noisy, keep, cfg.trajectories, rng.substream(0));
            CounterRng wrng = rng.substream(2);
            row.witness.push_back(sampled_expectation(rho_true, w, witness_shots, cfg.noise_params.eps_readout, wrng));
            const DensityMatrix rho = reconstruct_density(
                sample_all(rho_true, settings, cfg.shots, rng.substream(1), cfg.noise_params.eps_readout),
                static_cast<int>(keep.size()));
            double mi = 0.0;
            int pairs = 0;
            for (int a = 1; a <= 4; ++a) {
                for (int b = a + 1; b <= 4; ++b) {
                    FragmentPartition part;
                    part.system = {0};
                    part.fragment = {a, b};
                    mi += mutual_information(rho, part);
                    ++pairs;
                }
            }
            row.mi.push_back(mi / pairs);
        }
        res.rows.push_back(std::move(row));
    }
    return res;
}

OracleCheckResult run_oracle_check(const ExperimentConfig &cfg) {
    std::vector<double> dev(static_cast<std::size_t>(cfg.oracle_draws), 0.0);
    std::vector<int> cmp(dev.size(), 0);
#pragma omp parallel for schedule(dynamic) num_threads(thread_count(cfg))
    for (int d = 0; d < cfg.oracle_draws; ++d) {
        const std::uint64_t seed = realization_seed(cfg.seed, static_cast<std::uint64_t>(d));
        const int n = 1 + d % cfg.oracle_max_n;
        double p = cfg.p;
        if (cfg.oracle_random_p) {
            CounterRng prng = CounterRng(seed).substream(1);
            p = prng.uniform();
        }
        const auto mc = model_config(BranchingModel::Fig1SingleQubitSystem, n, p, seed);
        const ModelLayout lay = model_layout(mc);
        const Circuit circuit = build_circuit(mc);
        const StateVector psi = run_circuit(circuit);
        oracle::RecordOverlaps s;
        for (const auto &[b0, b1] : record_rotations(circuit)) {
            cplx v = oracle::record_overlap(b0.theta, b0.phi, b1.theta, b1.phi);
            if (cfg.inject_overlap_sign_error) {
                // Mutation fixture: flip the sign of the sine term.
                v = std::cos(b1.theta / 2) * std::cos(b0.theta / 2) -
                    std::polar(1.0, b0.phi - b1.phi) * std::sin(b1.theta / 2) * std::sin(b0.theta / 2);
            }
            s.s.push_back(v);
        }
        for (int m = 0; m <= n; ++m) {
            const double sim = mutual_information(psi, make_partition(lay.system, lay.environment, m));
            const double ref = oracle::closed_form_mi(p, s, m);
            dev[static_cast<std::size_t>(d)] = std::max(dev[static_cast<std::size_t>(d)], std::abs(sim - ref));
            ++cmp[static_cast<std::size_t>(d)];
        }
    }
    OracleCheckResult res;
    res.draws = cfg.oracle_draws;
    for (std::size_t d = 0; d < dev.size(); ++d) {
        res.max_deviation = std::max(res.max_deviation, dev[d]);
        res.comparisons += cmp[d];
    }
    res.passed = res.max_deviation <= 1e-9;
    return res;
}

namespace {

std::string fmt(double x) {
    std::ostringstream os;
    os.precision(12);
    os << x;
    return os.str();
}

json metadata(const ExperimentConfig &cfg) {
    return {{"schema", kOutputSchema},
            {"experiment", cfg.experiment},
            {"config", to_json(cfg)},
            {"seed", cfg.seed},
            {"build_id", build_id()},
            {"bit_order", "qubit 0 is the least significant bit; labels are written highest qubit first"}};
}

std::string dump(const json &j) { return j.dump(2) + "\n"; }

void render_fig2(const ExperimentConfig &cfg, const Fig2Result &res, ExperimentOutput &out) {
    json doc = metadata(cfg);
    if (!res.p_theta.empty()) {
        std::ostringstream csv;
        csv << "N,theta,P_mean,P_std,runs\n";
        json pj = json::object();
        for (const auto &[n, rows] : res.p_theta) {
            for (std::size_t t = 0; t < res.theta_grid.size(); ++t) {
                std::vector<double> col;
                for (const auto &row : rows) {
                    col.push_back(row[t]);
                }
                const Stats s = summarize(col);
                csv << n << ',' << fmt(res.theta_grid[t]) << ',' << fmt(s.mean) << ',' << fmt(s.std) << ','
                    << rows.size() << '\n';
            }
            pj[std::to_string(n)] = rows;
        }
        out.files["fig2c_ptheta.csv"] = csv.str();
        doc["theta"] = res.theta_grid;
        doc["P_theta"] = pj;
    }
    if (!res.decode_accuracy.empty()) {
        std::ostringstream csv;
        csv << "m,accuracy_mean,accuracy_std,z_spread_mean,z_spread_std,runs";
        if (res.tomographic) {
            csv << ",tomo_accuracy_mean,tomo_accuracy_std,discarded_mean";
        }
        csv << '\n';
        json acc = json::object();
        for (const auto &[m, a] : res.decode_accuracy) {
            const Stats s = summarize(a);
            const Stats z = summarize(res.z_spread.at(m));
            csv << m << ',' << fmt(s.mean) << ',' << fmt(s.std) << ',' << fmt(z.mean) << ',' << fmt(z.std) << ','
                << a.size();
            json e{{"accuracy", a}, {"z_spread", res.z_spread.at(m)}};
            if (res.tomographic) {
                const Stats t = summarize(res.tomo_decode_accuracy.at(m));
                const Stats d = summarize(res.discarded_fraction.at(m));
                csv << ',' << fmt(t.mean) << ',' << fmt(t.std) << ',' << fmt(d.mean);
                e["tomo_accuracy"] = res.tomo_decode_accuracy.at(m);
                e["discarded_fraction"] = res.discarded_fraction.at(m);
            }
            csv << '\n';
            acc[std::to_string(m)] = e;
        }
        out.files["fig2_decode.csv"] = csv.str();
        doc["decode"] = acc;
    }
    if (!res.ensembles.empty()) {
        json ens = json::object();
        for (const auto &[m, list] : res.ensembles) {
            json arr = json::array();
            for (const auto &e : list) {
                arr.push_back(to_json(e));
            }
            ens[std::to_string(m)] = arr;
        }
        json d = metadata(cfg);
        d["ensembles"] = ens;
        out.files["fig2d_ensembles.json"] = dump(d);
    }
    if (!res.signal.empty()) {
        std::ostringstream csv;
        csv << "m,z,A,weight\n";
        for (const auto &[m, bins] : res.signal) {
            for (const auto &b : bins) {
                csv << m << ',' << fmt(b.z) << ',' << fmt(b.A) << ',' << fmt(b.weight) << '\n';
            }
        }
        out.files["fig2e_signal.csv"] = csv.str();
    }
    out.files[cfg.experiment + ".json"] = dump(doc);
}

}  // namespace

ExperimentOutput run_experiment(const ExperimentConfig &cfg) {
    cfg.validate();
    ExperimentOutput out;
    const std::string &e = cfg.experiment;
    if (e == "fig1b" || e == "fig1c") {
        const InfoCurve curve = e == "fig1b" ? run_fig1b(cfg) : run_fig1c(cfg);
        out.files[e + ".csv"] = curve.to_csv();
        json doc = metadata(cfg);
        doc["curve"] = curve.to_json();
        out.files[e + ".json"] = dump(doc);
        json pts = json::array();
        for (const auto &p : curve.points) {
            pts.push_back({{curve.sweep_name, p.sweep}, {"I", summarize(p.I).mean}, {"D", summarize(p.D).mean}});
        }
        out.summary = {{"experiment", e}, {"points", pts}};
    } else if (is_fig2(e)) {
        const Fig2Result res = run_fig2(cfg);
        render_fig2(cfg, res, out);
        json acc = json::object();
        for (const auto &[m, a] : res.decode_accuracy) {
            acc[std::to_string(m)] = summarize(a).mean;
        }
        out.summary = {{"experiment", e}, {"decode_accuracy", acc}};
    } else if (e == "fig3") {
        const Fig3Result res = run_fig3(cfg);
        json doc = metadata(cfg);
        json curves = json::object();
        json summary = json::object();
        for (const auto &[m, curve] : res.curves) {
            out.files["fig3_m" + std::to_string(m) + ".csv"] = curve.to_csv();
            curves[std::to_string(m)] = curve.to_json();
            json pts = json::array();
            for (const auto &p : curve.points) {
                pts.push_back({{"theta", p.sweep}, {"I", summarize(p.I).mean}, {"chi", summarize(p.chi).mean},
                               {"D", summarize(p.D).mean}});
            }
            summary[std::to_string(m)] = pts;
        }
        doc["noisy"] = res.noisy;
        doc["curves"] = curves;
        out.files["fig3.json"] = dump(doc);
        out.summary = {{"experiment", e}, {"noisy", res.noisy}, {"curves", summary}};
    } else if (e == "fig4") {
        const Fig4Result res = run_fig4(cfg);
        std::ostringstream csv;
        csv << "theta,witness_mean,witness_std,mi_mean,mi_std\n";
        json rows = json::array();
        for (const auto &r : res.rows) {
            const Stats w = summarize(r.witness);
            const Stats m = summarize(r.mi);
            csv << fmt(r.theta) << ',' << fmt(w.mean) << ',' << fmt(w.std) << ',' << fmt(m.mean) << ',' << fmt(m.std)
                << '\n';
            rows.push_back({{"theta", r.theta}, {"witness", r.witness}, {"mi", r.mi}});
        }
        out.files["fig4.csv"] = csv.str();
        const auto win = [](const auto &w) { return w ? json{w->first, w->second} : json(nullptr); };
        json report{{"eps_w", res.report.eps_w},
                    {"eps_i", res.report.eps_i},
                    {"h_s", res.report.h_s},
                    {"witness_window", win(res.report.witness_window)},
                    {"mi_window", win(res.report.mi_window)},
                    {"windows_contain_half_pi", res.report.windows_contain_half_pi},
                    {"mi_plateau_on_witness_window", res.report.mi_plateau_on_witness_window},
                    {"witness_window_symmetric", res.report.witness_window_symmetric}};
        json doc = metadata(cfg);
        doc["rows"] = rows;
        doc["noiseless_report"] = report;
        out.files["fig4.json"] = dump(doc);
        out.summary = {{"experiment", e}, {"report", report}};
    } else {
        const OracleCheckResult res = run_oracle_check(cfg);
        json doc = metadata(cfg);
        json r{{"draws", res.draws},
               {"comparisons", res.comparisons},
               {"max_deviation", res.max_deviation},
               {"tolerance", 1e-9},
               {"passed", res.passed}};
        doc["result"] = r;
        out.files["oracle_check.json"] = dump(doc);
        out.summary = {{"experiment", e}, {"result", r}};
        out.passed = res.passed;
    }
    return out;
}

}  // namespace darwinium
