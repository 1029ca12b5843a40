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

// Reference kernels. Kept deliberately plain; the OpenMP versions are
// checked against these.

#include <vector>

#include "darwinium/kernels.hpp"

namespace darwinium::kernels::serial {

void apply_1q(std::span<cplx> amps, int qubit, const Mat2 &u) {
    const std::uint64_t half = amps.size() / 2;
    const std::uint64_t stride = std::uint64_t{1} << qubit;
    for (std::uint64_t k = 0; k < half; ++k) {
        const std::uint64_t i0 = insert_zero_bit(k, qubit);
        const std::uint64_t i1 = i0 | stride;
        const cplx a0 = amps[i0];
        const cplx a1 = amps[i1];
        amps[i0] = u(0, 0) * a0 + u(0, 1) * a1;
        amps[i1] = u(1, 0) * a0 + u(1, 1) * a1;
    }
}

void apply_cz(std::span<cplx> amps, int a, int b) {
    const std::uint64_t both = (std::uint64_t{1} << a) | (std::uint64_t{1} << b);
    for (std::uint64_t i = 0; i < amps.size(); ++i) {
        if ((i & both) == both) {
            amps[i] = -amps[i];
        }
    }
}

void apply_conditional(std::span<cplx> amps, const ControlPattern &ctrl, int target, const Mat2 &u0,
                       const Mat2 &u1) {
    const std::uint64_t half = amps.size() / 2;
    const std::uint64_t stride = std::uint64_t{1} << target;
    for (std::uint64_t k = 0; k < half; ++k) {
        const std::uint64_t i0 = insert_zero_bit(k, target);
        const std::uint64_t c = i0 & ctrl.mask;
        const Mat2 *u = nullptr;
        if (c == ctrl.pattern0) {
            u = &u0;
        } else if (c == ctrl.pattern1) {
            u = &u1;
        } else {
            continue;  // outside the pointer subspace: identity
        }
        const std::uint64_t i1 = i0 | stride;
        const cplx a0 = amps[i0];
        const cplx a1 = amps[i1];
        amps[i0] = (*u)(0, 0) * a0 + (*u)(0, 1) * a1;
        amps[i1] = (*u)(1, 0) * a0 + (*u)(1, 1) * a1;
    }
}

void apply_dense(std::span<cplx> amps, std::span<const int> qubits, const MatX &m) {
    const int k = static_cast<int>(qubits.size());
    const std::uint64_t local = std::uint64_t{1} << k;
    std::vector<std::uint64_t> offsets(local, 0);
    std::uint64_t mask = 0;
    for (std::uint64_t l = 0; l < local; ++l) {
        for (int j = 0; j < k; ++j) {
            if ((l >> j) & 1U) {
                offsets[l] |= std::uint64_t{1} << qubits[j];
            }
        }
    }
    for (int j = 0; j < k; ++j) {
        mask |= std::uint64_t{1} << qubits[j];
    }
    VecX in(static_cast<Eigen::Index>(local));
    for (std::uint64_t base = 0; base < amps.size(); ++base) {
        if (base & mask) {
            continue;
        }
        for (std::uint64_t l = 0; l < local; ++l) {
            in(static_cast<Eigen::Index>(l)) = amps[base | offsets[l]];
        }
        const VecX out = m * in;
        for (std::uint64_t l = 0; l < local; ++l) {
            amps[base | offsets[l]] = out(static_cast<Eigen::Index>(l));
        }
    }
}

void scale(std::span<cplx> amps, double factor) {
    for (auto &a : amps) {
        a *= factor;
    }
}

double norm_squared(std::span<const cplx> amps) {
    double acc = 0.0;
    for (const auto &a : amps) {
        acc += std::norm(a);
    }
    return acc;
}

cplx inner(std::span<const cplx> bra, std::span<const cplx> ket) {
    cplx acc{0.0, 0.0};
    for (std::size_t i = 0; i < bra.size(); ++i) {
        acc += std::conj(bra[i]) * ket[i];
    }
    return acc;
}

Mat2 qubit_density(std::span<const cplx> amps, int qubit) {
    const std::uint64_t half = amps.size() / 2;
    const std::uint64_t stride = std::uint64_t{1} << qubit;
    double p0 = 0.0;
    double p1 = 0.0;
    cplx c01{0.0, 0.0};
    for (std::uint64_t k = 0; k < half; ++k) {
        const std::uint64_t i0 = insert_zero_bit(k, qubit);
        const cplx a0 = amps[i0];
        const cplx a1 = amps[i0 | stride];
        p0 += std::norm(a0);
        p1 += std::norm(a1);
        c01 += a0 * std::conj(a1);
    }
    Mat2 rho;
    rho << p0, c01, std::conj(c01), p1;
    return rho;
}

}  // namespace darwinium::kernels::serial
