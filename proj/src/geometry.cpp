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
#include "darwinium/geometry.hpp"

#include <algorithm>
#include <cmath>
#include <map>
#include <set>

#include "darwinium/density_matrix.hpp"

namespace darwinium {

void PointerBasis::validate() const {
    const auto n = system.size();
    if (n == 0 || zero.size() != n || one.size() != n || zero == one) {
        throw ConfigError("pointer labels must be distinct bitstrings over the system register");
    }
    for (const auto &l : {zero, one}) {
        if (l.find_first_not_of("01") != std::string::npos) {
            throw ConfigError("pointer labels may only contain 0 and 1");
        }
    }
}

namespace {

struct Registers {
    std::vector<std::uint64_t> sys, frag, rest;
    std::uint64_t p0 = 0, p1 = 0;
};

Registers registers(const StateVector &psi, const FragmentPartition &part, const PointerBasis &pb,
                    bool require_cover) {
    part.validate(psi.n_qubits());
    pb.validate();
    if (pb.system != part.system) {
        throw ConfigError("pointer basis and partition disagree on the system register");
    }
    std::set<int> used(part.system.begin(), part.system.end());
    used.insert(part.fragment.begin(), part.fragment.end());
    std::vector<int> rest;
    if (require_cover) {
        used.insert(part.complement.begin(), part.complement.end());
        if (static_cast<int>(used.size()) != psi.n_qubits()) {
            throw ConfigError("geometric decomposition needs every qubit in the partition");
        }
        rest = part.complement;
    } else {
        for (int q = 0; q < psi.n_qubits(); ++q) {
            if (!used.contains(q)) {
                rest.push_back(q);
            }
        }
    }
    Registers r;
    r.sys = scatter_offsets(part.system);
    r.frag = scatter_offsets(part.fragment);
    r.rest = scatter_offsets(rest);
    const int ns = static_cast<int>(part.system.size());
    r.p0 = r.sys[parse_basis_label(pb.zero, ns)];
    r.p1 = r.sys[parse_basis_label(pb.one, ns)];
    return r;
}

// Character i is bit i of the local index.
std::string register_label(std::size_t local, std::size_t width) {
    std::string s(width, '0');
    for (std::size_t i = 0; i < width; ++i) {
        if ((local >> i) & 1U) {
            s[i] = '1';
        }
    }
    return s;
}

double renormalizer(double discarded) {
    const double keep = 1.0 - discarded;
    if (!(keep > kMinBranchWeight)) {
        throw DegenerateInputError("no weight left inside the pointer subspace");
    }
    return keep;
}

}  // namespace

GeometricEnsemble geometric_decomposition(const StateVector &psi, const FragmentPartition &part,
                                          const PointerBasis &pb) {
    const Registers reg = registers(psi, part, pb, true);
    const auto amps = psi.amplitudes();
    struct Raw {
        std::size_t a, b;
        cplx a0, a1;
        double w;
    };
    std::vector<Raw> raw;
    double outside = 0.0;
    for (std::size_t a = 0; a < reg.frag.size(); ++a) {
        for (std::size_t b = 0; b < reg.rest.size(); ++b) {
            const std::uint64_t base = reg.frag[a] | reg.rest[b];
            double all = 0.0;
            for (std::uint64_t s : reg.sys) {
                all += std::norm(amps[base | s]);
            }
            const cplx a0 = amps[base | reg.p0];
            const cplx a1 = amps[base | reg.p1];
            const double w = std::norm(a0) + std::norm(a1);
            outside += all - w;
            raw.push_back({a, b, a0, a1, w});
        }
    }
    GeometricEnsemble ens;
    ens.discarded_fraction = std::max(outside, 0.0) / psi.norm_squared();
    const double keep = renormalizer(ens.discarded_fraction) * psi.norm_squared();
    for (const Raw &r : raw) {
        const double X = r.w / keep;
        if (X <= kMinBranchWeight) {
            continue;
        }
        Eigen::Vector2cd chi(r.a0, r.a1);
        chi /= std::sqrt(r.w);
        const cplx lead = std::abs(chi(0)) > 1e-15 ? chi(0) : chi(1);
        chi *= std::conj(lead) / std::abs(lead);
        GeometricEntry e;
        e.X = X;
        e.f_label = register_label(r.a, part.fragment.size());
        e.fbar_label = register_label(r.b, part.complement.size());
        e.rho = chi * chi.adjoint();
        e.chi = chi;
        e.bloch = bloch_coordinates(chi);
        ens.entries.push_back(std::move(e));
    }
    return ens;
}

GeometricEnsemble fragment_ensemble(const StateVector &psi, const FragmentPartition &part, const PointerBasis &pb) {
    const Registers reg = registers(psi, part, pb, false);
    const auto amps = psi.amplitudes();
    std::vector<Mat2> blocks(reg.frag.size(), Mat2::Zero());
    double outside = 0.0;
    for (std::size_t a = 0; a < reg.frag.size(); ++a) {
        for (std::uint64_t t : reg.rest) {
            const std::uint64_t base = reg.frag[a] | t;
            const Eigen::Vector2cd v(amps[base | reg.p0], amps[base | reg.p1]);
            blocks[a] += v * v.adjoint();
            double all = 0.0;
            for (std::uint64_t s : reg.sys) {
                all += std::norm(amps[base | s]);
            }
            outside += all - v.squaredNorm();
        }
    }
    GeometricEnsemble ens;
    ens.discarded_fraction = std::max(outside, 0.0) / psi.norm_squared();
    const double keep = renormalizer(ens.discarded_fraction) * psi.norm_squared();
    for (std::size_t a = 0; a < blocks.size(); ++a) {
        const double w = blocks[a].trace().real();
        if (w / keep <= kMinBranchWeight) {
            continue;
        }
        GeometricEntry e;
        e.X = w / keep;
        e.f_label = register_label(a, part.fragment.size());
        e.rho = blocks[a] / w;
        e.bloch = bloch_coordinates(e.rho);
        ens.entries.push_back(std::move(e));
    }
    return ens;
}

Bloch bloch_coordinates(const Mat2 &rho) {
    return {2.0 * rho(1, 0).real(), 2.0 * rho(1, 0).imag(), (rho(0, 0) - rho(1, 1)).real()};
}

Bloch bloch_coordinates(const Eigen::Vector2cd &chi) {
    return bloch_coordinates(Mat2(chi * chi.adjoint()));
}

double polar_angle(const Bloch &b) {
    const double r = std::hypot(b[0], b[1], b[2]);
    if (r < 1e-12) {
        return kPi / 2.0;
    }
    return std::atan2(std::hypot(b[0], b[1]), b[2]);
}

std::vector<double> integrated_probability(const GeometricEnsemble &ens, const std::vector<double> &theta_grid) {
    std::vector<std::pair<double, double>> pts;
    pts.reserve(ens.entries.size());
    for (const auto &e : ens.entries) {
        pts.emplace_back(polar_angle(e.bloch), e.X);
    }
    std::sort(pts.begin(), pts.end());
    std::vector<double> out;
    out.reserve(theta_grid.size());
    for (double th : theta_grid) {
        double acc = 0.0;
        for (const auto &[angle, x] : pts) {
            if (angle > th + 1e-12) {
                break;
            }
            acc += x;
        }
        out.push_back(acc);
    }
    return out;
}

std::vector<BranchBin> branch_signal(const GeometricEnsemble &ens, double bin_width) {
    if (!(bin_width > 0.0)) {
        throw ConfigError("bin width must be positive");
    }
    std::map<long, BranchBin> bins;
    for (const auto &e : ens.entries) {
        const long k = std::lround(e.bloch[2] / bin_width);
        BranchBin &b = bins[k];
        b.z = static_cast<double>(k) * bin_width;
        double votes = 0.0;
        for (char c : e.f_label) {
            votes += c == '0' ? 1.0 : -1.0;
        }
        b.A += e.X * votes;
        b.weight += e.X;
    }
    std::vector<BranchBin> out;
    out.reserve(bins.size());
    for (const auto &[k, b] : bins) {
        out.push_back(b);
    }
    return out;
}

DecodedBranch decode_branch(const std::string &f_label) {
    if (f_label.empty() || f_label.find_first_not_of("01") != std::string::npos) {
        throw ConfigError("decode needs a nonempty bitstring");
    }
    const auto ones = std::count(f_label.begin(), f_label.end(), '1');
    const auto zeros = static_cast<long>(f_label.size()) - ones;
    if (zeros > ones) {
        return DecodedBranch::Zero;
    }
    if (ones > zeros) {
        return DecodedBranch::One;
    }
    return DecodedBranch::Undecided;
}

double decode_accuracy(const GeometricEnsemble &ens) {
    double acc = 0.0;
    for (const auto &e : ens.entries) {
        const double p0 = e.rho(0, 0).real();
        const double p1 = e.rho(1, 1).real();
        switch (e.f_label.empty() ? DecodedBranch::Undecided : decode_branch(e.f_label)) {
        case DecodedBranch::Zero:
            acc += e.X * p0;
            break;
        case DecodedBranch::One:
            acc += e.X * p1;
            break;
        case DecodedBranch::Undecided:
            acc += 0.5 * e.X;
            break;
        }
    }
    return acc;
}

nlohmann::json to_json(const GeometricEnsemble &ens) {
    nlohmann::json entries = nlohmann::json::array();
    for (const auto &e : ens.entries) {
        nlohmann::json j{{"X", e.X}, {"f", e.f_label}, {"bloch", e.bloch}};
        if (e.fbar_label) {
            j["fbar"] = *e.fbar_label;
        }
        entries.push_back(std::move(j));
    }
    return {{"discarded_fraction", ens.discarded_fraction}, {"entries", entries}};
}

}  // namespace darwinium
