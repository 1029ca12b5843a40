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
#include <algorithm>
#include <cstdint>
#include <vector>

#include "darwinium/kernels.hpp"

namespace darwinium::kernels::omp {

namespace {
// Below this many amplitudes the fork/join overhead dominates.
constexpr std::int64_t kParallelThreshold = std::int64_t{1} << 14;
}  // namespace

void apply_1q(std::span<cplx> amps, int qubit, const Mat2 &u) {
    const auto half = static_cast<std::int64_t>(amps.size() / 2);
    const std::uint64_t stride = std::uint64_t{1} << qubit;
    const cplx u00 = u(0, 0), u01 = u(0, 1), u10 = u(1, 0), u11 = u(1, 1);
    cplx *data = amps.data();
#pragma omp parallel for schedule(static) if (half >= kParallelThreshold)
    for (std::int64_t k = 0; k < half; ++k) {
        const std::uint64_t i0 = insert_zero_bit(static_cast<std::uint64_t>(k), qubit);
        const std::uint64_t i1 = i0 | stride;
        const cplx a0 = data[i0];
        const cplx a1 = data[i1];
        data[i0] = u00 * a0 + u01 * a1;
        data[i1] = u10 * a0 + u11 * a1;
    }
}

void apply_cz(std::span<cplx> amps, int a, int b) {
    // Enumerate only indices with both bits set: 2^(n-2) of them.
    const int lo = a < b ? a : b;
    const int hi = a < b ? b : a;
    const auto quarter = static_cast<std::int64_t>(amps.size() / 4);
    const std::uint64_t both = (std::uint64_t{1} << a) | (std::uint64_t{1} << b);
    cplx *data = amps.data();
#pragma omp parallel for schedule(static) if (quarter >= kParallelThreshold)
    for (std::int64_t k = 0; k < quarter; ++k) {
        const std::uint64_t i = insert_zero_bit(insert_zero_bit(static_cast<std::uint64_t>(k), lo), hi) | both;
        data[i] = -data[i];
    }
}

void apply_conditional(std::span<cplx> amps, const ControlPattern &ctrl, int target, const Mat2 &u0,
                       const Mat2 &u1) {
    const auto half = static_cast<std::int64_t>(amps.size() / 2);
    const std::uint64_t stride = std::uint64_t{1} << target;
    cplx *data = amps.data();
#pragma omp parallel for schedule(static) if (half >= kParallelThreshold)
    for (std::int64_t k = 0; k < half; ++k) {
        const std::uint64_t i0 = insert_zero_bit(static_cast<std::uint64_t>(k), target);
        const std::uint64_t c = i0 & ctrl.mask;
        const Mat2 *u = c == ctrl.pattern0 ? &u0 : (c == ctrl.pattern1 ? &u1 : nullptr);
        if (u == nullptr) {
            continue;
        }
        const std::uint64_t i1 = i0 | stride;
        const cplx a0 = data[i0];
        const cplx a1 = data[i1];
        data[i0] = (*u)(0, 0) * a0 + (*u)(0, 1) * a1;
        data[i1] = (*u)(1, 0) * a0 + (*u)(1, 1) * a1;
    }
}

void apply_dense(std::span<cplx> amps, std::span<const int> qubits, const MatX &m) {
    const int k = static_cast<int>(qubits.size());
    const std::uint64_t local = std::uint64_t{1} << k;
    std::vector<std::uint64_t> offsets(local, 0);
    std::vector<int> sorted(qubits.begin(), qubits.end());
    std::sort(sorted.begin(), sorted.end());
    for (std::uint64_t l = 0; l < local; ++l) {
        for (int j = 0; j < k; ++j) {
            if ((l >> j) & 1U) {
                offsets[l] |= std::uint64_t{1} << qubits[j];
            }
        }
    }
    const auto blocks = static_cast<std::int64_t>(amps.size() >> k);
    cplx *data = amps.data();
#pragma omp parallel if (blocks * static_cast<std::int64_t>(local) >= kParallelThreshold)
    {
        std::vector<cplx> in(local);
#pragma omp for schedule(static)
        for (std::int64_t b = 0; b < blocks; ++b) {
            std::uint64_t base = static_cast<std::uint64_t>(b);
            for (int q : sorted) {
                base = insert_zero_bit(base, q);
            }
            for (std::uint64_t l = 0; l < local; ++l) {
                in[l] = data[base | offsets[l]];
            }
            for (std::uint64_t r = 0; r < local; ++r) {
                cplx acc{0.0, 0.0};
                for (std::uint64_t c = 0; c < local; ++c) {
                    acc += m(static_cast<Eigen::Index>(r), static_cast<Eigen::Index>(c)) * in[c];
                }
                data[base | offsets[r]] = acc;
            }
        }
    }
}

void scale(std::span<cplx> amps, double factor) {
    const auto n = static_cast<std::int64_t>(amps.size());
    cplx *data = amps.data();
#pragma omp parallel for schedule(static) if (n >= kParallelThreshold)
    for (std::int64_t i = 0; i < n; ++i) {
        data[i] *= factor;
    }
}

double norm_squared(std::span<const cplx> amps) {
    const auto n = static_cast<std::int64_t>(amps.size());
    const cplx *data = amps.data();
    double acc = 0.0;
#pragma omp parallel for schedule(static) reduction(+ : acc) if (n >= kParallelThreshold)
    for (std::int64_t i = 0; i < n; ++i) {
        acc += std::norm(data[i]);
    }
    return acc;
}

cplx inner(std::span<const cplx> bra, std::span<const cplx> ket) {
    const auto n = static_cast<std::int64_t>(bra.size());
    double re = 0.0;
    double im = 0.0;
#pragma omp parallel for schedule(static) reduction(+ : re, im) if (n >= kParallelThreshold)
    for (std::int64_t i = 0; i < n; ++i) {
        const cplx t = std::conj(bra[i]) * ket[i];
        re += t.real();
        im += t.imag();
    }
    return {re, im};
}

Mat2 qubit_density(std::span<const cplx> amps, int qubit) {
    const auto half = static_cast<std::int64_t>(amps.size() / 2);
    const std::uint64_t stride = std::uint64_t{1} << qubit;
    const cplx *data = amps.data();
    double p0 = 0.0, p1 = 0.0, re = 0.0, im = 0.0;
#pragma omp parallel for schedule(static) reduction(+ : p0, p1, re, im) if (half >= kParallelThreshold)
    for (std::int64_t k = 0; k < half; ++k) {
        const std::uint64_t i0 = insert_zero_bit(static_cast<std::uint64_t>(k), qubit);
        const cplx a0 = data[i0];
        const cplx a1 = data[i0 | stride];
        p0 += std::norm(a0);
        p1 += std::norm(a1);
        const cplx c = a0 * std::conj(a1);
        re += c.real();
        im += c.imag();
    }
    Mat2 rho;
    rho << p0, cplx{re, im}, cplx{re, -im}, p1;
    return rho;
}

}  // namespace darwinium::kernels::omp
