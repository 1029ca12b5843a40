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
// Independent dense-matrix oracles shared by the unit tests. Nothing here
// calls the kernels or the reduced-factor code under test.
#pragma once

#include <cmath>
#include <complex>
#include <vector>

#include "darwinium/rng.hpp"
#include "darwinium/state_vector.hpp"
#include "darwinium/types.hpp"

namespace testutil {

using darwinium::cplx;
using darwinium::Mat2;
using darwinium::MatX;
using darwinium::VecX;

inline VecX random_vector(int n, std::uint64_t seed) {
    darwinium::CounterRng rng(seed);
    VecX v(std::size_t{1} << n);
    for (Eigen::Index i = 0; i < v.size(); ++i) {
        // Box-Muller keeps the state Haar-ish without extra machinery.
        const double u1 = std::max(rng.uniform(), 1e-300);
        const double u2 = rng.uniform();
        const double r = std::sqrt(-2.0 * std::log(u1));
        v(i) = {r * std::cos(2 * M_PI * u2), r * std::sin(2 * M_PI * u2)};
    }
    return v.normalized();
}

inline darwinium::StateVector random_state(int n, std::uint64_t seed) {
    const VecX v = random_vector(n, seed);
    return darwinium::StateVector(n, std::vector<cplx>(v.data(), v.data() + v.size()));
}

inline VecX to_vec(const darwinium::StateVector &s) {
    const auto a = s.amplitudes();
    return Eigen::Map<const VecX>(a.data(), static_cast<Eigen::Index>(a.size()));
}

/// Full 2^n operator of a single-qubit gate, built by explicit index walk.
inline MatX embed_1q(int n, int q, const Mat2 &u) {
    const Eigen::Index dim = Eigen::Index{1} << n;
    MatX m = MatX::Zero(dim, dim);
    for (Eigen::Index i = 0; i < dim; ++i) {
        for (Eigen::Index j = 0; j < dim; ++j) {
            if ((i & ~(Eigen::Index{1} << q)) != (j & ~(Eigen::Index{1} << q))) {
                continue;
            }
            m(i, j) = u((i >> q) & 1, (j >> q) & 1);
        }
    }
    return m;
}

/// Full operator of a dense k-qubit gate; local bit j is qubits[j].
inline MatX embed_dense(int n, const std::vector<int> &qubits, const MatX &u) {
    const Eigen::Index dim = Eigen::Index{1} << n;
    Eigen::Index mask = 0;
    for (int q : qubits) {
        mask |= Eigen::Index{1} << q;
    }
    const auto local = [&](Eigen::Index i) {
        Eigen::Index l = 0;
        for (std::size_t j = 0; j < qubits.size(); ++j) {
            l |= ((i >> qubits[j]) & 1) << j;
        }
        return l;
    };
    MatX m = MatX::Zero(dim, dim);
    for (Eigen::Index i = 0; i < dim; ++i) {
        for (Eigen::Index j = 0; j < dim; ++j) {
            if ((i & ~mask) == (j & ~mask)) {
                m(i, j) = u(local(i), local(j));
            }
        }
    }
    return m;
}

/// Partial trace by the textbook double loop over kept and traced indices.
inline MatX dense_partial_trace(const MatX &rho, int n, const std::vector<int> &keep) {
    std::vector<int> traced;
    for (int q = 0; q < n; ++q) {
        if (std::find(keep.begin(), keep.end(), q) == keep.end()) {
            traced.push_back(q);
        }
    }
    const auto compose = [&](Eigen::Index k, Eigen::Index t) {
        Eigen::Index idx = 0;
        for (std::size_t j = 0; j < keep.size(); ++j) {
            idx |= ((k >> j) & 1) << keep[j];
        }
        for (std::size_t j = 0; j < traced.size(); ++j) {
            idx |= ((t >> j) & 1) << traced[j];
        }
        return idx;
    };
    const Eigen::Index dk = Eigen::Index{1} << keep.size();
    const Eigen::Index dt = Eigen::Index{1} << traced.size();
    MatX out = MatX::Zero(dk, dk);
    for (Eigen::Index a = 0; a < dk; ++a) {
        for (Eigen::Index b = 0; b < dk; ++b) {
            for (Eigen::Index t = 0; t < dt; ++t) {
                out(a, b) += rho(compose(a, t), compose(b, t));
            }
        }
    }
    return out;
}

inline Mat2 pauli(char c) {
    Mat2 m;
    switch (c) {
        case 'X':
            m << 0, 1, 1, 0;
            break;
        case 'Y':
            m << 0, cplx(0, -1), cplx(0, 1), 0;
            break;
        case 'Z':
            m << 1, 0, 0, -1;
            break;
        default:
            m = Mat2::Identity();
    }
    return m;
}

/// Entropy in bits from a dense eigen-decomposition.
inline double dense_entropy(const MatX &rho) {
    Eigen::SelfAdjointEigenSolver<MatX> es(0.5 * (rho + rho.adjoint()));
    double h = 0.0;
    for (Eigen::Index i = 0; i < es.eigenvalues().size(); ++i) {
        const double l = es.eigenvalues()(i);
        if (l > 1e-14) {
            h -= l * std::log2(l);
        }
    }
    return h;
}

}  // namespace testutil
