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
#include "darwinium/tomography.hpp"

#include <array>
#include <bit>
#include <cmath>
#include <random>
#include <set>

#include "darwinium/gates.hpp"
#include "darwinium/kernels.hpp"
#include "darwinium/noise.hpp"

namespace darwinium {

std::vector<TomographySetting> enumerate_settings(int n, bool logical) {
    if (n < 1 || n > kMaxTomographyUnits) {
        throw ConfigError("tomography supports 1 to 5 units");
    }
    std::vector<TomographySetting> out;
    std::size_t total = 1;
    for (int j = 0; j < n; ++j) {
        total *= 3;
    }
    static constexpr char kLabels[3] = {'I', 'X', 'Y'};
    for (std::size_t code = 0; code < total; ++code) {
        std::string labels(static_cast<std::size_t>(n), 'I');
        std::size_t c = code;
        for (int j = n - 1; j >= 0; --j) {
            labels[static_cast<std::size_t>(j)] = kLabels[c % 3];
            c /= 3;
        }
        out.push_back({labels, logical});
    }
    return out;
}

Mat2 setting_rotation(char label) {
    switch (label) {
    case 'I':
        return Mat2::Identity();
    case 'X':
        return gates::rx(kPi / 2);
    case 'Y':
        return gates::ry(kPi / 2);
    default:
        throw ConfigError(std::string("unknown tomography label '") + label + "'");
    }
}

MatX logical_setting_rotation(char label) {
    const double c = std::cos(kPi / 4);
    const double s = std::sin(kPi / 4);
    const cplx mi{0.0, -1.0};
    switch (label) {
    case 'I':
        return MatX::Identity(4, 4);
    case 'X':
        return c * MatX::Identity(4, 4) + mi * s * kron(MatX(pauli::x()), MatX(pauli::x()));
    case 'Y':
        // Y_L = X on qubits[1], Y on qubits[0]
        return c * MatX::Identity(4, 4) + mi * s * kron(MatX(pauli::x()), MatX(pauli::y()));
    default:
        throw ConfigError(std::string("unknown tomography label '") + label + "'");
    }
}

std::pair<int, int> measured_pauli(char label) {
    const Mat2 r = setting_rotation(label);
    const Mat2 m = r.adjoint() * pauli::z() * r;
    const std::array<Mat2, 3> ps{pauli::x(), pauli::y(), pauli::z()};
    for (int k = 0; k < 3; ++k) {
        const double c = (m * ps[static_cast<std::size_t>(k)]).trace().real() / 2.0;
        if (std::abs(std::abs(c) - 1.0) < 1e-9) {
            return {k + 1, c > 0 ? 1 : -1};
        }
    }
    throw std::logic_error("rotated Z is not a signed Pauli");
}

namespace {

std::size_t unit_count(std::size_t n_qubits, const TomographySetting &s) {
    const std::size_t units = s.logical ? n_qubits - 1 : n_qubits;
    if (n_qubits == 0 || (s.logical && n_qubits < 2) || s.labels.size() != units) {
        throw ConfigError("setting does not match the measured register");
    }
    return units;
}

void rotate(std::span<cplx> amps, const std::vector<int> &qubits, const TomographySetting &s) {
    unit_count(qubits.size(), s);
    std::size_t k = 0;
    for (std::size_t j = 0; j < s.labels.size(); ++j) {
        const char l = s.labels[j];
        if (s.logical && j == 0) {
            if (l != 'I') {
                const int pair[2] = {qubits[0], qubits[1]};
                kernels::omp::apply_dense(amps, pair, logical_setting_rotation(l));
            }
            k = 2;
            continue;
        }
        if (l != 'I') {
            kernels::omp::apply_1q(amps, qubits[k], setting_rotation(l));
        }
        ++k;
    }
}

}  // namespace

std::vector<double> setting_probabilities(const StateVector &psi, const std::vector<int> &qubits,
                                          const TomographySetting &s) {
    std::set<int> seen;
    for (int q : qubits) {
        if (q < 0 || q >= psi.n_qubits() || !seen.insert(q).second) {
            throw ConfigError("measured qubits must be distinct and in range");
        }
    }
    std::vector<cplx> amps(psi.amplitudes().begin(), psi.amplitudes().end());
    rotate(amps, qubits, s);
    std::vector<double> probs(std::size_t{1} << qubits.size(), 0.0);
    for (std::size_t i = 0; i < amps.size(); ++i) {
        std::size_t local = 0;
        for (std::size_t k = 0; k < qubits.size(); ++k) {
            local |= ((i >> qubits[k]) & 1U) << k;
        }
        probs[local] += std::norm(amps[i]);
    }
    return probs;
}

std::vector<double> setting_probabilities(const DensityMatrix &rho, const TomographySetting &s) {
    const int n = rho.n_qubits();
    std::vector<int> qubits(static_cast<std::size_t>(n));
    for (int q = 0; q < n; ++q) {
        qubits[static_cast<std::size_t>(q)] = q;
    }
    // Rotation as a full matrix, column by column.
    MatX u = MatX::Identity(rho.dim(), rho.dim());
    std::vector<cplx> col(static_cast<std::size_t>(rho.dim()));
    for (Eigen::Index c = 0; c < rho.dim(); ++c) {
        for (Eigen::Index r = 0; r < rho.dim(); ++r) {
            col[static_cast<std::size_t>(r)] = u(r, c);
        }
        rotate(col, qubits, s);
        for (Eigen::Index r = 0; r < rho.dim(); ++r) {
            u(r, c) = col[static_cast<std::size_t>(r)];
        }
    }
    const MatX rotated = u * rho.matrix() * u.adjoint();
    std::vector<double> probs(static_cast<std::size_t>(rho.dim()));
    for (Eigen::Index i = 0; i < rho.dim(); ++i) {
        probs[static_cast<std::size_t>(i)] = std::max(rotated(i, i).real(), 0.0);
    }
    return probs;
}

ShotRecord sample_distribution(const std::vector<double> &probs, int n_bits, const TomographySetting &s,
                               std::uint64_t shots, CounterRng &rng, double eps_readout) {
    const std::vector<double> p = readout_confusion(probs, n_bits, eps_readout);
    ShotRecord rec;
    rec.setting = s;
    if (shots == 0) {
        rec.exact = true;
        rec.shots = 1.0;
        double total = 0.0;
        for (double x : p) {
            total += x;
        }
        for (std::size_t i = 0; i < p.size(); ++i) {
            if (p[i] > 0.0) {
                rec.counts[basis_label(i, n_bits)] = p[i] / total;
            }
        }
        return rec;
    }
    // Multinomial as a chain of conditional binomials.
    rec.shots = static_cast<double>(shots);
    std::uint64_t remaining = shots;
    double rest = 0.0;
    for (double x : p) {
        rest += x;
    }
    for (std::size_t i = 0; i < p.size() && remaining > 0; ++i) {
        std::uint64_t k = remaining;
        if (i + 1 < p.size() && rest > 0.0) {
            std::binomial_distribution<std::uint64_t> draw(remaining, std::clamp(p[i] / rest, 0.0, 1.0));
            k = draw(rng);
        }
        rest -= p[i];
        remaining -= k;
        if (k > 0) {
            rec.counts[basis_label(i, n_bits)] = static_cast<double>(k);
        }
    }
    return rec;
}

ShotRecord sample_measurements(const StateVector &psi, const std::vector<int> &qubits, const TomographySetting &s,
                               std::uint64_t shots, CounterRng &rng, double eps_readout) {
    return sample_distribution(setting_probabilities(psi, qubits, s), static_cast<int>(qubits.size()), s, shots, rng,
                               eps_readout);
}

std::vector<ShotRecord> sample_all(const DensityMatrix &rho, const std::vector<TomographySetting> &settings,
                                   std::uint64_t shots, const CounterRng &rng, double eps_readout) {
    std::vector<ShotRecord> out(settings.size());
#pragma omp parallel for schedule(dynamic)
    for (std::size_t i = 0; i < settings.size(); ++i) {
        CounterRng sub = rng.substream(i);
        out[i] = sample_distribution(setting_probabilities(rho, settings[i]), rho.n_qubits(), settings[i], shots, sub,
                                     eps_readout);
    }
    return out;
}

MatX linear_inversion(const std::vector<ShotRecord> &records, int n) {
    if (n < 1 || n > kMaxTomographyUnits) {
        throw ConfigError("tomography supports 1 to 5 units");
    }
    std::set<std::string> seen;
    const std::size_t dim = std::size_t{1} << n;
    std::vector<double> sum(std::size_t{1} << (2 * n), 0.0);
    std::vector<int> cnt(sum.size(), 0);
    for (const ShotRecord &r : records) {
        if (r.setting.labels.size() != static_cast<std::size_t>(n) || !seen.insert(r.setting.labels).second) {
            throw ConfigError("records must hold each n-unit setting once");
        }
        std::vector<double> f(dim, 0.0);
        double total = 0.0;
        for (const auto &[label, c] : r.counts) {
            f[parse_basis_label(label, n)] += c;
            total += c;
        }
        if (!(total > 0.0)) {
            throw DegenerateInputError("record without counts");
        }
        std::array<std::pair<int, int>, kMaxTomographyUnits> mp{};
        for (int j = 0; j < n; ++j) {
            mp[static_cast<std::size_t>(j)] = measured_pauli(r.setting.labels[static_cast<std::size_t>(j)]);
        }
        for (std::size_t mask = 0; mask < dim; ++mask) {
            double e = 0.0;
            for (std::size_t o = 0; o < dim; ++o) {
                e += (std::popcount(o & mask) % 2 == 0 ? f[o] : -f[o]);
            }
            e /= total;
            std::size_t code = 0;
            for (int j = 0; j < n; ++j) {
                if ((mask >> j) & 1U) {
                    const auto [p, sign] = mp[static_cast<std::size_t>(j)];
                    code |= static_cast<std::size_t>(p) << (2 * j);
                    e *= sign;
                }
            }
            sum[code] += e;
            ++cnt[code];
        }
    }
    std::size_t expected = 1;
    for (int j = 0; j < n; ++j) {
        expected *= 3;
    }
    if (seen.size() != expected) {
        throw ConfigError("tomography needs all 3^n settings");
    }
    const std::array<Mat2, 4> ps{pauli::identity(), pauli::x(), pauli::y(), pauli::z()};
    MatX rho = MatX::Zero(static_cast<Eigen::Index>(dim), static_cast<Eigen::Index>(dim));
    for (std::size_t code = 0; code < sum.size(); ++code) {
        if (cnt[code] == 0) {
            throw std::logic_error("Pauli string without a compatible setting");
        }
        MatX p = MatX::Identity(1, 1);
        for (int j = 0; j < n; ++j) {
            p = kron(MatX(ps[(code >> (2 * j)) & 3U]), p);
        }
        rho += (sum[code] / cnt[code]) * p;
    }
    return rho / static_cast<double>(dim);
}

DensityMatrix reconstruct_density(const std::vector<ShotRecord> &records, int n) {
    return psd_project(linear_inversion(records, n));
}

DensityMatrix reconstruct_traced(const std::vector<ShotRecord> &records, int n, const std::vector<int> &keep) {
    return partial_trace(reconstruct_density(records, n), keep);
}

PostselectResult logical_postselect(const std::vector<ShotRecord> &records, std::pair<int, int> system_bits) {
    PostselectResult res;
    double kept = 0.0;
    double dropped = 0.0;
    for (const ShotRecord &r : records) {
        ShotRecord out = r;
        out.counts.clear();
        double rec_kept = 0.0;
        for (const auto &[label, c] : r.counts) {
            const auto len = static_cast<int>(label.size());
            const int a = system_bits.first;
            const int b = system_bits.second;
            if (a < 0 || b < 0 || a >= len || b >= len || a == b) {
                throw ConfigError("post-selection positions out of range");
            }
            if (label[static_cast<std::size_t>(len - 1 - a)] == label[static_cast<std::size_t>(len - 1 - b)]) {
                out.counts[label] = c;
                rec_kept += c;
            } else {
                dropped += c;
            }
        }
        kept += rec_kept;
        if (!r.exact) {
            out.shots = rec_kept;
        }
        res.records.push_back(std::move(out));
    }
    if (!(kept > 0.0)) {
        throw DegenerateInputError("post-selection discarded every count");
    }
    res.discarded_fraction = dropped / (kept + dropped);
    return res;
}

std::vector<ShotRecord> collapse_logical(const std::vector<ShotRecord> &records) {
    std::vector<ShotRecord> out;
    for (const ShotRecord &r : records) {
        ShotRecord c = r;
        c.counts.clear();
        for (const auto &[label, v] : r.counts) {
            const std::size_t len = label.size();
            if (len < 2 || label[len - 1] != label[len - 2]) {
                throw ConfigError("collapse needs post-selected logical outcomes");
            }
            c.counts[label.substr(0, len - 2) + label[len - 1]] += v;
        }
        out.push_back(std::move(c));
    }
    return out;
}

GeometricEnsemble tomographic_fragment_ensemble(const std::vector<ShotRecord> &records, int m) {
    if (m < 0) {
        throw ConfigError("fragment size must be nonnegative");
    }
    struct Acc {
        double weight = 0.0;
        std::map<char, std::array<double, 2>> counts;
    };
    std::map<std::string, Acc> by_outcome;
    int n_settings = 0;
    for (const ShotRecord &r : records) {
        if (r.setting.labels.size() != static_cast<std::size_t>(m + 1) ||
            r.setting.labels.find_first_not_of('I', 1) != std::string::npos) {
            throw ConfigError("conditional tomography rotates only the system unit");
        }
        ++n_settings;
        double total = 0.0;
        for (const auto &kv : r.counts) {
            total += kv.second;
        }
        for (const auto &[label, c] : r.counts) {
            std::string f(static_cast<std::size_t>(m), '0');
            for (int i = 0; i < m; ++i) {
                f[static_cast<std::size_t>(i)] = label[static_cast<std::size_t>(m - 1 - i)];
            }
            Acc &acc = by_outcome[f];
            acc.weight += c / total;
            acc.counts[r.setting.labels[0]][label.back() == '1' ? 1 : 0] += c;
        }
    }
    if (n_settings != 3) {
        throw ConfigError("conditional tomography needs the three system settings");
    }
    GeometricEnsemble ens;
    double norm = 0.0;
    for (const auto &[f, acc] : by_outcome) {
        Eigen::Vector3d r = Eigen::Vector3d::Zero();
        for (const auto &[label, c] : acc.counts) {
            const auto [p, sign] = measured_pauli(label);
            if (c[0] + c[1] > 0.0) {
                r(p - 1) = sign * (c[0] - c[1]) / (c[0] + c[1]);
            }
        }
        // Clipping a qubit's spectrum at zero is the same as shrinking r to the sphere.
        if (r.norm() > 1.0) {
            r.normalize();
        }
        GeometricEntry e;
        e.X = acc.weight / 3.0;
        e.f_label = f;
        e.rho = 0.5 * (Mat2::Identity() + r(0) * pauli::x() + r(1) * pauli::y() + r(2) * pauli::z());
        e.bloch = {r(0), r(1), r(2)};
        norm += e.X;
        ens.entries.push_back(std::move(e));
    }
    for (auto &e : ens.entries) {
        e.X /= norm;
    }
    return ens;
}

nlohmann::json to_json(const ShotRecord &r) {
    return {{"setting", r.setting.labels}, {"logical", r.setting.logical}, {"shots", r.shots},
            {"exact", r.exact},             {"counts", r.counts}};
}

void write_jsonl(std::ostream &os, const std::vector<ShotRecord> &records) {
    for (const auto &r : records) {
        os << to_json(r).dump() << '\n';
    }
}

}  // namespace darwinium
