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
#include "darwinium/witness.hpp"

#include <algorithm>
#include <cmath>
#include <random>

#include "darwinium/gates.hpp"
#include "darwinium/info.hpp"
#include "darwinium/kernels.hpp"
#include "darwinium/oracle.hpp"

namespace darwinium {

WitnessObservable WitnessObservable::fig4_default(const ModelLayout &layout) {
    if (layout.system.size() != 1 || layout.environment.empty()) {
        throw ConfigError("default witness needs a single-qubit system and an environment");
    }
    WitnessObservable w;
    w.A = pauli::x();
    w.B = (2.0 * pauli::z() + pauli::y()) / std::sqrt(5.0);
    w.system = layout.system;
    w.fragment_qubit = layout.environment.front();
    return w;
}

double WitnessObservable::b_norm() const { return B.norm() / std::sqrt(2.0); }

void WitnessObservable::validate(int n_qubits) const {
    if (system.empty() || A.rows() != (Eigen::Index{1} << system.size()) || A.cols() != A.rows()) {
        throw ConfigError("witness A does not match its system register");
    }
    for (int q : system) {
        if (q < 0 || q >= n_qubits || q == fragment_qubit) {
            throw ConfigError("witness placement indices must be distinct and in range");
        }
    }
    if (fragment_qubit < 0 || fragment_qubit >= n_qubits) {
        throw ConfigError("witness fragment qubit out of range");
    }
    if (!is_hermitian(A, 1e-12) || !is_hermitian(B, 1e-12)) {
        throw ValidationError("witness factors must be Hermitian");
    }
}

namespace {

// O v in place, for a register of n qubits.
void apply_witness(std::span<cplx> v, const WitnessObservable &w) {
    kernels::omp::apply_dense(v, w.system, w.A);
    kernels::omp::apply_1q(v, w.fragment_qubit, w.B);
}

double checked_real(cplx z) {
    if (std::abs(z.imag()) > 1e-10) {
        throw ValidationError("witness expectation is not real");
    }
    return z.real();
}

}  // namespace

double expectation(const StateVector &psi, const WitnessObservable &w) {
    w.validate(psi.n_qubits());
    std::vector<cplx> ov(psi.amplitudes().begin(), psi.amplitudes().end());
    apply_witness(ov, w);
    return checked_real(kernels::omp::inner(psi.amplitudes(), ov));
}

double expectation(const DensityMatrix &rho, const WitnessObservable &w) {
    w.validate(rho.n_qubits());
    // Tr(O rho) = sum_c (O rho[:, c])_c
    cplx tr{0.0, 0.0};
    std::vector<cplx> col(static_cast<std::size_t>(rho.dim()));
    for (Eigen::Index c = 0; c < rho.dim(); ++c) {
        for (Eigen::Index r = 0; r < rho.dim(); ++r) {
            col[static_cast<std::size_t>(r)] = rho.matrix()(r, c);
        }
        apply_witness(col, w);
        tr += col[static_cast<std::size_t>(c)];
    }
    return checked_real(tr);
}

std::vector<WitnessPoint> witness_sweep(BranchingModelConfig cfg, const std::vector<double> &theta_grid,
                                        const WitnessObservable &w) {
    if (cfg.model != BranchingModel::Fig3ScrambledEnvironment) {
        throw ConfigError("witness sweep runs on the fig3 model");
    }
    std::vector<WitnessPoint> out;
    out.reserve(theta_grid.size());
    for (double th : theta_grid) {
        cfg.theta = th;
        out.push_back({th, expectation(run_circuit(build_circuit(cfg)), w)});
    }
    return out;
}

std::vector<PauliTerm> pauli_decomposition(const WitnessObservable &w, double tol) {
    const int k = static_cast<int>(w.system.size()) + 1;
    std::vector<int> support(w.system);
    support.push_back(w.fragment_qubit);
    // Local bit j of the support is support[j]; kron puts its right factor low.
    const MatX o = kron(w.B, w.A);
    const std::array<Mat2, 4> paulis{pauli::identity(), pauli::x(), pauli::y(), pauli::z()};
    const char names[4] = {'I', 'X', 'Y', 'Z'};
    std::vector<PauliTerm> terms;
    const double dim = std::ldexp(1.0, k);
    for (std::size_t code = 0; code < (std::size_t{1} << (2 * k)); ++code) {
        MatX p = MatX::Identity(1, 1);
        PauliTerm t;
        for (int j = 0; j < k; ++j) {
            const std::size_t d = (code >> (2 * j)) & 3U;
            p = kron(MatX(paulis[d]), p);
            if (d != 0) {
                t.factors.emplace_back(support[static_cast<std::size_t>(j)], names[d]);
            }
        }
        t.coeff = (o * p).trace().real() / dim;
        if (std::abs(t.coeff) > tol) {
            terms.push_back(std::move(t));
        }
    }
    return terms;
}

double sampled_expectation(const DensityMatrix &rho, const WitnessObservable &w, std::uint64_t shots,
                           double eps_readout, CounterRng &rng) {
    w.validate(rho.n_qubits());
    if (shots == 0) {
        throw ConfigError("sampled expectation needs at least one shot");
    }
    if (!(eps_readout >= 0.0 && eps_readout <= 1.0)) {
        throw ConfigError("readout error must lie in [0, 1]");
    }
    double total = 0.0;
    for (const PauliTerm &t : pauli_decomposition(w)) {
        if (t.factors.empty()) {
            total += t.coeff;
            continue;
        }
        // Exact <P>, damped by independent readout flips on each factor.
        cplx ev{0.0, 0.0};
        std::vector<cplx> col(static_cast<std::size_t>(rho.dim()));
        for (Eigen::Index c = 0; c < rho.dim(); ++c) {
            for (Eigen::Index r = 0; r < rho.dim(); ++r) {
                col[static_cast<std::size_t>(r)] = rho.matrix()(r, c);
            }
            for (const auto &[q, name] : t.factors) {
                const Mat2 p = name == 'X' ? pauli::x() : name == 'Y' ? pauli::y() : pauli::z();
                kernels::omp::apply_1q(col, q, p);
            }
            ev += col[static_cast<std::size_t>(c)];
        }
        const double damp = std::pow(1.0 - 2.0 * eps_readout, static_cast<double>(t.factors.size()));
        const double p_plus = std::clamp(0.5 * (1.0 + damp * ev.real()), 0.0, 1.0);
        std::binomial_distribution<std::uint64_t> draw(shots, p_plus);
        const double est = 2.0 * static_cast<double>(draw(rng)) / static_cast<double>(shots) - 1.0;
        total += t.coeff * est;
    }
    return total;
}

double pair_averaged_mi(const StateVector &psi, const ModelLayout &layout) {
    const auto &env = layout.environment;
    if (env.size() < 2) {
        throw ConfigError("pair average needs at least two environment qubits");
    }
    double sum = 0.0;
    int count = 0;
    for (std::size_t a = 0; a < env.size(); ++a) {
        for (std::size_t b = a + 1; b < env.size(); ++b) {
            FragmentPartition part;
            part.system = layout.system;
            part.fragment = {env[a], env[b]};
            for (std::size_t c = 0; c < env.size(); ++c) {
                if (c != a && c != b) {
                    part.complement.push_back(env[c]);
                }
            }
            sum += mutual_information(psi, part);
            ++count;
        }
    }
    return sum / count;
}

namespace {

std::optional<std::pair<double, double>> window_around(const std::vector<double> &grid, std::size_t centre,
                                                       const std::vector<bool> &ok) {
    if (!ok[centre]) {
        return std::nullopt;
    }
    std::size_t lo = centre;
    std::size_t hi = centre;
    while (lo > 0 && ok[lo - 1]) {
        --lo;
    }
    while (hi + 1 < grid.size() && ok[hi + 1]) {
        ++hi;
    }
    return std::pair{grid[lo], grid[hi]};
}

}  // namespace

CorrespondenceReport witness_vs_mi_correspondence(BranchingModelConfig cfg, const std::vector<double> &theta_grid,
                                                  const WitnessObservable &w, double eps_w, double eps_i) {
    if (theta_grid.empty()) {
        throw ConfigError("theta grid is empty");
    }
    if (cfg.model != BranchingModel::Fig3ScrambledEnvironment) {
        throw ConfigError("witness correspondence runs on the fig3 model");
    }
    CorrespondenceReport rep;
    rep.eps_w = eps_w;
    rep.eps_i = eps_i;
    const ModelLayout layout = model_layout(cfg);
    for (double th : theta_grid) {
        cfg.theta = th;
        const StateVector psi = run_circuit(build_circuit(cfg));
        rep.rows.push_back({th, expectation(psi, w), pair_averaged_mi(psi, layout)});
    }
    // Plateau value: entropy of the fully decohered system.
    rep.h_s = oracle::binary_entropy(cfg.p);

    std::size_t centre = 0;
    for (std::size_t i = 0; i < theta_grid.size(); ++i) {
        if (std::abs(theta_grid[i] - kPi / 2) < std::abs(theta_grid[centre] - kPi / 2)) {
            centre = i;
        }
    }
    std::vector<bool> w_ok, i_ok;
    for (const auto &r : rep.rows) {
        w_ok.push_back(std::abs(r.witness) <= eps_w);
        i_ok.push_back(std::abs(r.mi_pair_mean - rep.h_s) <= eps_i);
    }
    rep.witness_window = window_around(theta_grid, centre, w_ok);
    rep.mi_window = window_around(theta_grid, centre, i_ok);
    const auto contains = [](const auto &win) { return win && win->first <= kPi / 2 + 1e-12 && win->second >= kPi / 2 - 1e-12; };
    rep.windows_contain_half_pi = contains(rep.witness_window) && contains(rep.mi_window);

    if (rep.witness_window) {
        double step = 0.0;
        for (std::size_t i = 1; i < theta_grid.size(); ++i) {
            step = std::max(step, std::abs(theta_grid[i] - theta_grid[i - 1]));
        }
        const auto [lo, hi] = *rep.witness_window;
        rep.witness_window_symmetric = std::abs((kPi / 2 - lo) - (hi - kPi / 2)) <= step + 1e-12;
        rep.mi_plateau_on_witness_window = true;
        for (std::size_t i = 0; i < theta_grid.size(); ++i) {
            if (theta_grid[i] >= lo && theta_grid[i] <= hi && !i_ok[i]) {
                rep.mi_plateau_on_witness_window = false;
            }
        }
    }
    return rep;
}

}  // namespace darwinium
