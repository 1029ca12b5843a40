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
#include "darwinium/info.hpp"

#include <algorithm>
#include <bit>
#include <cmath>
#include <limits>
#include <set>
#include <sstream>

#include "darwinium/gates.hpp"
#include "darwinium/rng.hpp"

namespace darwinium {

void FragmentPartition::validate(int n_qubits) const {
    if (system.empty()) {
        throw ConfigError("partition needs at least one system qubit");
    }
    std::set<int> seen;
    for (const auto *list : {&system, &fragment, &complement}) {
        for (int q : *list) {
            if (q < 0 || q >= n_qubits || !seen.insert(q).second) {
                throw ConfigError("partition indices must be distinct and in range");
            }
        }
    }
}

FragmentPartition make_partition(std::vector<int> system, const std::vector<int> &environment, int m) {
    if (m < 0 || m > static_cast<int>(environment.size())) {
        throw ConfigError("fragment size must lie in [0, N]");
    }
    FragmentPartition part;
    part.system = std::move(system);
    part.fragment.assign(environment.begin(), environment.begin() + m);
    part.complement.assign(environment.begin() + m, environment.end());
    return part;
}

MeasurementBasis MeasurementBasis::computational(int n_qubits) {
    MeasurementBasis b;
    b.angles.assign(static_cast<std::size_t>(n_qubits), {0.0, 0.0});
    return b;
}

Mat2 MeasurementBasis::rotation(std::size_t j) const {
    const auto [theta, phi] = angles.at(j);
    const double c = std::cos(theta / 2.0);
    const double s = std::sin(theta / 2.0);
    const cplx e = std::polar(1.0, phi);
    Mat2 v;
    v << c, -std::conj(e) * s, e * s, c;
    return v;
}

double entropy_of_spectrum(std::span<const double> eigenvalues) {
    double h = 0.0;
    for (double l : eigenvalues) {
        if (l > kEntropyFloor) {
            h -= l * std::log2(l);
        }
    }
    return std::max(h, 0.0);
}

namespace {

// Spectrum of a small Hermitian PSD block; closed form for 2x2.
double block_entropy(const MatX &rho) {
    if (rho.rows() == 1) {
        return 0.0;
    }
    if (rho.rows() == 2) {
        const double a = rho(0, 0).real();
        const double d = rho(1, 1).real();
        const double r = std::sqrt(0.25 * (a - d) * (a - d) + std::norm(rho(0, 1)));
        const double ev[2] = {0.5 * (a + d) + r, 0.5 * (a + d) - r};
        return entropy_of_spectrum(ev);
    }
    Eigen::SelfAdjointEigenSolver<MatX> es(rho, Eigen::EigenvaluesOnly);
    const Eigen::VectorXd ev = es.eigenvalues();
    return entropy_of_spectrum({ev.data(), static_cast<std::size_t>(ev.size())});
}

int log2_exact(Eigen::Index n) {
    if (n <= 0 || !std::has_single_bit(static_cast<std::uint64_t>(n))) {
        throw ConfigError("dimension is not a power of two");
    }
    return std::countr_zero(static_cast<std::uint64_t>(n));
}

std::vector<int> concat(const std::vector<int> &a, const std::vector<int> &b) {
    std::vector<int> out(a);
    out.insert(out.end(), b.begin(), b.end());
    return out;
}

}  // namespace

double von_neumann_entropy(const MatX &rho) {
    if (rho.rows() != rho.cols() || !is_hermitian(rho, 1e-10)) {
        throw ValidationError("entropy needs a Hermitian matrix");
    }
    return block_entropy(0.5 * (rho + rho.adjoint()));
}

double von_neumann_entropy(const DensityMatrix &rho) { return von_neumann_entropy(rho.matrix()); }

double subsystem_entropy(const StateVector &psi, std::span<const int> qubits) {
    if (qubits.empty() || static_cast<int>(qubits.size()) == psi.n_qubits()) {
        return 0.0;
    }
    const MatX a = reduced_factor(psi, qubits, 0.0);
    // Nonzero spectra of A A^dag and A^dag A coincide.
    return a.rows() <= a.cols() ? block_entropy(a * a.adjoint()) : block_entropy(a.adjoint() * a);
}

double mutual_information(const StateVector &psi, const FragmentPartition &part) {
    part.validate(psi.n_qubits());
    if (part.fragment.empty()) {
        return 0.0;
    }
    const double hs = subsystem_entropy(psi, part.system);
    const double hf = subsystem_entropy(psi, part.fragment);
    const std::vector<int> sf = concat(part.system, part.fragment);
    const double hsf = subsystem_entropy(psi, sf);
    return hs + hf - hsf;
}

double mutual_information(const DensityMatrix &rho, const FragmentPartition &part) {
    part.validate(rho.n_qubits());
    if (part.fragment.empty()) {
        return 0.0;
    }
    const std::vector<int> sf = concat(part.system, part.fragment);
    return von_neumann_entropy(partial_trace(rho, part.system)) + von_neumann_entropy(partial_trace(rho, part.fragment)) -
           von_neumann_entropy(partial_trace(rho, sf));
}

namespace {

// Rotate fragment qubits into the measurement basis, then sum block
// entropies weighted by outcome probability.
// Plain complex product; skips the NaN/Inf recovery of operator*.
inline cplx cmul(cplx a, cplx b) {
    return {a.real() * b.real() - a.imag() * b.imag(), a.real() * b.imag() + a.imag() * b.real()};
}

double conditional_entropy_impl(MatX w, int n_sys, const MeasurementBasis &basis) {
    const int n_frag = log2_exact(w.rows()) - n_sys;
    if (n_frag < 0 || static_cast<int>(basis.angles.size()) != n_frag) {
        throw ConfigError("measurement basis does not match the fragment size");
    }
    const Eigen::Index rows = w.rows();
    // Column-wise so the inner loop walks contiguous memory.
    for (int j = 0; j < n_frag; ++j) {
        const Mat2 vd = basis.rotation(static_cast<std::size_t>(j)).adjoint();
        const cplx v00 = vd(0, 0), v01 = vd(0, 1), v10 = vd(1, 0), v11 = vd(1, 1);
        const Eigen::Index bit = Eigen::Index{1} << (n_sys + j);
        for (Eigen::Index c = 0; c < w.cols(); ++c) {
            cplx *col = w.col(c).data();
            for (Eigen::Index r = 0; r < rows; ++r) {
                if ((r & bit) != 0) {
                    continue;
                }
                const cplx w0 = col[r];
                const cplx w1 = col[r | bit];
                col[r] = cmul(v00, w0) + cmul(v01, w1);
                col[r | bit] = cmul(v10, w0) + cmul(v11, w1);
            }
        }
    }
    const Eigen::Index ds = Eigen::Index{1} << n_sys;
    double h = 0.0;
    if (ds == 2) {
        // Single-qubit system: each outcome block is a 2x2 Gram matrix.
        for (Eigen::Index a = 0; a < rows; a += 2) {
            double s00 = 0.0;
            double s11 = 0.0;
            cplx s01 = 0.0;
            for (Eigen::Index c = 0; c < w.cols(); ++c) {
                const cplx x0 = w(a, c);
                const cplx x1 = w(a + 1, c);
                s00 += std::norm(x0);
                s11 += std::norm(x1);
                s01 += x0 * std::conj(x1);
            }
            const double p = s00 + s11;
            if (p > kEntropyFloor) {
                const double r = std::sqrt(0.25 * (s00 - s11) * (s00 - s11) + std::norm(s01)) / p;
                const double ev[2] = {0.5 + r, 0.5 - r};
                h += p * entropy_of_spectrum(ev);
            }
        }
        return h;
    }
    for (Eigen::Index a = 0; a < rows / ds; ++a) {
        const auto block = w.middleRows(a * ds, ds);
        const MatX rho = block * block.adjoint();
        const double p = rho.trace().real();
        if (p > kEntropyFloor) {
            h += p * block_entropy(rho / p);
        }
    }
    return h;
}

}  // namespace

double conditional_entropy_fixed_basis(const MatX &factor, int n_sys, const MeasurementBasis &basis) {
    return conditional_entropy_impl(factor, n_sys, basis);
}

double conditional_entropy_fixed_basis(const DensityMatrix &rho_sf, int n_sys, const MeasurementBasis &basis) {
    std::vector<int> all(static_cast<std::size_t>(rho_sf.n_qubits()));
    for (int q = 0; q < rho_sf.n_qubits(); ++q) {
        all[static_cast<std::size_t>(q)] = q;
    }
    return conditional_entropy_impl(reduced_factor(rho_sf, all, 1e-14), n_sys, basis);
}

namespace {

// Angles for each fragment qubit optimized on its own S-f_j marginal. A
// cheap, separable guess used to seed one restart.
Eigen::VectorXd separable_seed(const MatX &factor, int n_sys, int n_frag, const NelderMeadOptions &nm_opt) {
    const Eigen::Index ds = Eigen::Index{1} << n_sys;
    const Eigen::Index k = factor.cols();
    const Eigen::Index rest = Eigen::Index{1} << (n_frag - 1);
    Eigen::VectorXd seed(2 * n_frag);
    NelderMeadOptions small = nm_opt;
    small.max_evals = std::min(nm_opt.max_evals, 200);
    for (int j = 0; j < n_frag; ++j) {
        MatX wj = MatX::Zero(2 * ds, rest * k);
        for (Eigen::Index r = 0; r < factor.rows(); ++r) {
            const auto f = static_cast<std::uint64_t>(r >> n_sys);
            const auto b = static_cast<Eigen::Index>((f >> j) & 1U);
            const auto low = f & ((std::uint64_t{1} << j) - 1);
            const auto others = static_cast<Eigen::Index>(((f >> (j + 1)) << j) | low);
            wj.row((r & (ds - 1)) | (b << n_sys)).segment(others * k, k) = factor.row(r);
        }
        const auto obj = [&](const Eigen::VectorXd &x) {
            MeasurementBasis basis;
            basis.angles = {{x(0), x(1)}};
            return conditional_entropy_impl(wj, n_sys, basis);
        };
        NelderMeadResult best;
        best.f = std::numeric_limits<double>::infinity();
        for (const auto &start : {Eigen::Vector2d(0.0, 0.0), Eigen::Vector2d(kPi / 2, 0.0), Eigen::Vector2d(kPi / 2, kPi / 2)}) {
            NelderMeadResult nm = nelder_mead(obj, start, small);
            if (nm.f < best.f) {
                best = std::move(nm);
            }
        }
        seed.segment(2 * j, 2) = best.x;
    }
    return seed;
}

}  // namespace

HolevoResult holevo_bound(const MatX &factor, int n_sys, const HolevoOptions &opt) {
    const int n_frag = log2_exact(factor.rows()) - n_sys;
    if (n_sys < 1 || n_frag < 0) {
        throw ConfigError("factor is too small for the requested system size");
    }
    const Eigen::Index ds = Eigen::Index{1} << n_sys;
    MatX rho_s = MatX::Zero(ds, ds);
    for (Eigen::Index a = 0; a < factor.rows() / ds; ++a) {
        const auto block = factor.middleRows(a * ds, ds);
        rho_s += block * block.adjoint();
    }

    HolevoResult res;
    res.h_s = block_entropy(rho_s);
    res.basis = MeasurementBasis::computational(n_frag);
    if (n_frag == 0) {
        res.h_cond = res.h_cond_computational = res.h_s;
        res.converged = true;
        return res;
    }

    const auto to_basis = [n_frag](const Eigen::VectorXd &x) {
        MeasurementBasis b;
        b.angles.resize(static_cast<std::size_t>(n_frag));
        for (int j = 0; j < n_frag; ++j) {
            b.angles[static_cast<std::size_t>(j)] = {x(2 * j), x(2 * j + 1)};
        }
        return b;
    };
    const auto objective = [&](const Eigen::VectorXd &x) {
        return conditional_entropy_impl(factor, n_sys, to_basis(x));
    };

    res.h_cond_computational = objective(Eigen::VectorXd::Zero(2 * n_frag));
    res.h_cond = res.h_cond_computational;
    const CounterRng master(opt.seed);
    for (int r = 0; r < std::max(opt.restarts, 1); ++r) {
        Eigen::VectorXd x0 = Eigen::VectorXd::Zero(2 * n_frag);
        if (r == 1 && n_frag > 1) {
            x0 = separable_seed(factor, n_sys, n_frag, opt.nm);
        } else if (r > 0) {
            CounterRng rng = master.substream(static_cast<std::uint64_t>(r));
            for (int j = 0; j < n_frag; ++j) {
                x0(2 * j) = rng.uniform(0.0, kPi);
                x0(2 * j + 1) = rng.uniform(-kPi, kPi);
            }
        }
        const NelderMeadResult nm = nelder_mead(objective, x0, opt.nm);
        // Strict improvement only, so ties go to the earliest restart.
        if (r == 0 || nm.f < res.h_cond) {
            res.h_cond = std::min(nm.f, res.h_cond);
            if (nm.f <= res.h_cond) {
                res.basis = to_basis(nm.x);
            }
            res.converged = nm.converged;
        }
        // H(S|outcome) >= 0, so nothing can beat a zero.
        if (res.h_cond <= kEntropyFloor) {
            break;
        }
    }
    res.chi = std::max(res.h_s - res.h_cond, 0.0);
    return res;
}

HolevoResult holevo_bound(const DensityMatrix &rho_sf, int n_sys, const HolevoOptions &opt) {
    std::vector<int> all(static_cast<std::size_t>(rho_sf.n_qubits()));
    for (int q = 0; q < rho_sf.n_qubits(); ++q) {
        all[static_cast<std::size_t>(q)] = q;
    }
    return holevo_bound(reduced_factor(rho_sf, all, 1e-14), n_sys, opt);
}

namespace {

DiscordResult finish_discord(double I, const HolevoResult &h, double tol_opt) {
    DiscordResult d;
    d.I = I;
    d.chi = h.chi;
    d.D_raw = I - h.chi;
    d.D = std::max(d.D_raw, -tol_opt);
    d.converged = h.converged;
    return d;
}

}  // namespace

DiscordResult quantum_discord(const StateVector &psi, const FragmentPartition &part, const DiscordOptions &opt) {
    const double I = mutual_information(psi, part);
    if (part.fragment.empty()) {
        return {};
    }
    const std::vector<int> sf = concat(part.system, part.fragment);
    const MatX factor = reduced_factor(psi, sf, 1e-14);
    return finish_discord(I, holevo_bound(factor, static_cast<int>(part.system.size()), opt.holevo), opt.tol_opt);
}

DiscordResult quantum_discord(const DensityMatrix &rho_sf, int n_sys, const DiscordOptions &opt) {
    FragmentPartition part;
    for (int q = 0; q < rho_sf.n_qubits(); ++q) {
        (q < n_sys ? part.system : part.fragment).push_back(q);
    }
    const double I = mutual_information(rho_sf, part);
    if (part.fragment.empty()) {
        return {};
    }
    return finish_discord(I, holevo_bound(rho_sf, n_sys, opt.holevo), opt.tol_opt);
}

Stats summarize(std::span<const double> xs) {
    Stats s;
    if (xs.empty()) {
        return s;
    }
    for (double x : xs) {
        s.mean += x;
    }
    s.mean /= static_cast<double>(xs.size());
    double var = 0.0;
    for (double x : xs) {
        var += (x - s.mean) * (x - s.mean);
    }
    s.std = std::sqrt(var / static_cast<double>(xs.size()));
    return s;
}

std::string InfoCurve::to_csv() const {
    std::ostringstream os;
    os.precision(12);
    os << "sweep,I_mean,I_std,chi_mean,chi_std,D_mean,D_std,runs,seed\n";
    for (const auto &p : points) {
        const Stats i = summarize(p.I);
        const Stats c = summarize(p.chi);
        const Stats d = summarize(p.D);
        os << p.sweep << ',' << i.mean << ',' << i.std << ',' << c.mean << ',' << c.std << ',' << d.mean << ','
           << d.std << ',' << p.I.size() << ',' << seed << '\n';
    }
    return os.str();
}

nlohmann::json InfoCurve::to_json() const {
    nlohmann::json pts = nlohmann::json::array();
    for (const auto &p : points) {
        pts.push_back({{"sweep", p.sweep}, {"I", p.I}, {"chi", p.chi}, {"D", p.D}});
    }
    return {{"sweep_name", sweep_name}, {"seed", seed}, {"points", pts}};
}

}  // namespace darwinium
