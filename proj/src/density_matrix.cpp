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
#include "darwinium/density_matrix.hpp"

#include <algorithm>
#include <bit>
#include <cmath>
#include <set>
#include <string>

#include "darwinium/gates.hpp"

namespace darwinium {

namespace {

int qubits_for_dim(Eigen::Index dim) {
    if (dim <= 0 || !std::has_single_bit(static_cast<std::uint64_t>(dim))) {
        throw ConfigError("density matrix dimension " + std::to_string(dim) + " is not a power of two");
    }
    return std::countr_zero(static_cast<std::uint64_t>(dim));
}

void check_keep(std::span<const int> keep, int n_qubits) {
    if (keep.empty()) {
        throw ConfigError("partial trace needs a nonempty keep list");
    }
    std::set<int> seen;
    for (int q : keep) {
        if (q < 0 || q >= n_qubits || !seen.insert(q).second) {
            throw ConfigError("partial trace keep list has an invalid or repeated index");
        }
    }
}

std::vector<int> complement_of(std::span<const int> keep, int n_qubits) {
    std::vector<int> rest;
    for (int q = 0; q < n_qubits; ++q) {
        if (std::find(keep.begin(), keep.end(), q) == keep.end()) {
            rest.push_back(q);
        }
    }
    return rest;
}

}  // namespace

std::vector<std::uint64_t> scatter_offsets(std::span<const int> qubits) {
    const std::size_t n = std::size_t{1} << qubits.size();
    std::vector<std::uint64_t> out(n, 0);
    for (std::size_t l = 0; l < n; ++l) {
        for (std::size_t j = 0; j < qubits.size(); ++j) {
            if ((l >> j) & 1U) {
                out[l] |= std::uint64_t{1} << qubits[j];
            }
        }
    }
    return out;
}

DensityMatrix::DensityMatrix(MatX m) : m_(std::move(m)), n_qubits_(qubits_for_dim(m_.rows())) { validate(); }

DensityMatrix::DensityMatrix(MatX m, Unchecked) : m_(std::move(m)), n_qubits_(qubits_for_dim(m_.rows())) {}

DensityMatrix DensityMatrix::from_pure(const StateVector &psi) {
    const auto amps = psi.amplitudes();
    const Eigen::Map<const VecX> v(amps.data(), static_cast<Eigen::Index>(amps.size()));
    return DensityMatrix(v * v.adjoint(), Unchecked{});
}

void DensityMatrix::validate() const {
    if (m_.rows() != m_.cols()) {
        throw ValidationError("density matrix is not square");
    }
    if (!is_hermitian(m_, 1e-10)) {
        throw ValidationError("density matrix is not Hermitian");
    }
    if (std::abs(m_.trace() - cplx(1.0, 0.0)) > 1e-10) {
        throw ValidationError("density matrix trace differs from 1");
    }
    Eigen::SelfAdjointEigenSolver<MatX> es(m_, Eigen::EigenvaluesOnly);
    if (es.eigenvalues().minCoeff() < -1e-8) {
        throw ValidationError("density matrix has a negative eigenvalue");
    }
}

DensityMatrix partial_trace(const StateVector &psi, std::span<const int> keep) {
    const MatX f = reduced_factor(psi, keep, 0.0);
    return DensityMatrix(f * f.adjoint(), DensityMatrix::Unchecked{});
}

DensityMatrix partial_trace(const DensityMatrix &rho, std::span<const int> keep) {
    check_keep(keep, rho.n_qubits());
    const std::vector<int> rest = complement_of(keep, rho.n_qubits());
    const auto row = scatter_offsets(keep);
    const auto col = scatter_offsets(rest);
    const auto dk = static_cast<Eigen::Index>(row.size());
    MatX out = MatX::Zero(dk, dk);
    const MatX &m = rho.matrix();
    for (Eigen::Index r = 0; r < dk; ++r) {
        for (Eigen::Index c = 0; c < dk; ++c) {
            cplx acc{0.0, 0.0};
            for (std::uint64_t t : col) {
                acc += m(static_cast<Eigen::Index>(row[static_cast<std::size_t>(r)] | t),
                         static_cast<Eigen::Index>(row[static_cast<std::size_t>(c)] | t));
            }
            out(r, c) = acc;
        }
    }
    return DensityMatrix(std::move(out), DensityMatrix::Unchecked{});
}

namespace {

MatX factor_from_gram(const MatX &gram, double rank_tol) {
    Eigen::SelfAdjointEigenSolver<MatX> es(gram);
    const VecX::RealScalar top = std::max(es.eigenvalues().maxCoeff(), 0.0);
    std::vector<Eigen::Index> cols;
    for (Eigen::Index i = 0; i < es.eigenvalues().size(); ++i) {
        if (es.eigenvalues()(i) > rank_tol * std::max(top, 1.0)) {
            cols.push_back(i);
        }
    }
    MatX f(gram.rows(), static_cast<Eigen::Index>(cols.size()));
    for (std::size_t j = 0; j < cols.size(); ++j) {
        f.col(static_cast<Eigen::Index>(j)) =
            es.eigenvectors().col(cols[j]) * std::sqrt(es.eigenvalues()(cols[j]));
    }
    return f;
}

}  // namespace

MatX reduced_factor(const StateVector &psi, std::span<const int> keep, double rank_tol) {
    check_keep(keep, psi.n_qubits());
    const std::vector<int> rest = complement_of(keep, psi.n_qubits());
    const auto row = scatter_offsets(keep);
    const auto col = scatter_offsets(rest);
    const auto amps = psi.amplitudes();
    MatX a(static_cast<Eigen::Index>(row.size()), static_cast<Eigen::Index>(col.size()));
    for (std::size_t c = 0; c < col.size(); ++c) {
        for (std::size_t r = 0; r < row.size(); ++r) {
            a(static_cast<Eigen::Index>(r), static_cast<Eigen::Index>(c)) = amps[row[r] | col[c]];
        }
    }
    if (rank_tol <= 0.0) {
        return a;
    }
    if (a.cols() > a.rows()) {
        return factor_from_gram(a * a.adjoint(), rank_tol);
    }
    // Narrow case: drop null directions through the small A^dag A problem.
    Eigen::SelfAdjointEigenSolver<MatX> es(a.adjoint() * a);
    const double top = std::max(es.eigenvalues().maxCoeff(), 0.0);
    std::vector<Eigen::Index> keep_cols;
    for (Eigen::Index i = 0; i < es.eigenvalues().size(); ++i) {
        if (es.eigenvalues()(i) > rank_tol * std::max(top, 1.0)) {
            keep_cols.push_back(i);
        }
    }
    if (keep_cols.size() == static_cast<std::size_t>(a.cols())) {
        return a;
    }
    MatX v(a.cols(), static_cast<Eigen::Index>(keep_cols.size()));
    for (std::size_t j = 0; j < keep_cols.size(); ++j) {
        v.col(static_cast<Eigen::Index>(j)) = es.eigenvectors().col(keep_cols[j]);
    }
    return a * v;
}

MatX reduced_factor(const DensityMatrix &rho, std::span<const int> keep, double rank_tol) {
    const DensityMatrix reduced =
        static_cast<int>(keep.size()) == rho.n_qubits() && std::is_sorted(keep.begin(), keep.end())
            ? rho
            : partial_trace(rho, keep);
    return factor_from_gram(reduced.matrix(), rank_tol);
}

DensityMatrix psd_project(const MatX &hermitian, double hermitian_tol) {
    if (!is_hermitian(hermitian, hermitian_tol)) {
        throw ValidationError("psd_project needs a Hermitian input");
    }
    const MatX sym = 0.5 * (hermitian + hermitian.adjoint());
    Eigen::SelfAdjointEigenSolver<MatX> es(sym);
    Eigen::VectorXd ev = es.eigenvalues().cwiseMax(0.0);
    const double total = ev.sum();
    if (!(total > 0.0)) {
        throw DegenerateInputError("no positive eigenvalue left after clipping");
    }
    ev /= total;
    MatX out = es.eigenvectors() * ev.cast<cplx>().asDiagonal() * es.eigenvectors().adjoint();
    out = (0.5 * (out + out.adjoint())).eval();
    return DensityMatrix(std::move(out), DensityMatrix::Unchecked{});
}

double trace_distance(const MatX &a, const MatX &b) {
    const MatX d = a - b;
    Eigen::SelfAdjointEigenSolver<MatX> es(0.5 * (d + d.adjoint()), Eigen::EigenvaluesOnly);
    return 0.5 * es.eigenvalues().cwiseAbs().sum();
}

double state_fidelity(const MatX &a, const MatX &b) {
    Eigen::SelfAdjointEigenSolver<MatX> es(0.5 * (a + a.adjoint()));
    const Eigen::VectorXd sq = es.eigenvalues().cwiseMax(0.0).cwiseSqrt();
    const MatX root = es.eigenvectors() * sq.cast<cplx>().asDiagonal() * es.eigenvectors().adjoint();
    const MatX inner = root * b * root;
    Eigen::SelfAdjointEigenSolver<MatX> es2(0.5 * (inner + inner.adjoint()), Eigen::EigenvaluesOnly);
    const double t = es2.eigenvalues().cwiseMax(0.0).cwiseSqrt().sum();
    return t * t;
}

MatX kron(const MatX &a, const MatX &b) {
    // Row index = ia * rows(b) + ib, so b occupies the low bits.
    MatX out(a.rows() * b.rows(), a.cols() * b.cols());
    for (Eigen::Index i = 0; i < a.rows(); ++i) {
        for (Eigen::Index j = 0; j < a.cols(); ++j) {
            out.block(i * b.rows(), j * b.cols(), b.rows(), b.cols()) = a(i, j) * b;
        }
    }
    return out;
}

}  // namespace darwinium
