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
 * Closed-form quantities of the single-system branching state
 *
 *   sqrt(p)|0_S>|R^0_1 ... R^0_N> + sqrt(q)|1_S>|R^1_1 ... R^1_N>,
 *
 * with records |R^j_k> = cos(theta/2)|0> - i sin(theta/2) e^{i phi}|1>.
 * Everything reduces to 2x2 matrices, so nothing here touches the state
 * vector engine or a general eigen-solver.
 */
#pragma once

#include <vector>

#include "darwinium/types.hpp"

namespace darwinium::oracle {

struct RecordOverlaps {
    std::vector<cplx> s;

    [[nodiscard]] int size() const { return static_cast<int>(s.size()); }
    /// Throws ValidationError if some |s_k| > 1 + 1e-12.
    void validate() const;
};

/// Record vector of one branch rotation.
Eigen::Vector2cd record_state(double theta, double phi);

/// s = <R^1|R^0> = cos(t1/2)cos(t0/2) + e^{i(phi0-phi1)} sin(t1/2)sin(t0/2)
cplx record_overlap(double theta0, double phi0, double theta1, double phi1);

/// h(x) in bits; throws ConfigError outside [0, 1].
double binary_entropy(double x);

/**
 * lambda_+ = (1 + sqrt((2p-1)^2 + 4p(1-p) prod_{k=a..b} |s_k|^2)) / 2
 * with 1-based inclusive indices. An empty range (a > b) has product 1.
 */
double lambda_plus(int a, int b, double p, const RecordOverlaps &s);

/// I(S:F) = h(l+_{1,N}) + h(l+_{1,m}) - h(l+_{m+1,N}) where F holds the
/// first m environment qubits.
double closed_form_mi(double p, const RecordOverlaps &s, int m);

struct ReducedMatrices {
    Mat2 rho_s;       ///< off-diagonal sqrt(pq) prod_{1..N} s_k
    Mat2 rho_sf;      ///< off-diagonal sqrt(pq) prod_{m+1..N} s_k
    Mat2 rho_sfbar;   ///< off-diagonal sqrt(pq) prod_{1..m} s_k
};

/// Nonzero blocks of rho_S, rho_SF and rho_SFbar in the pointer basis.
ReducedMatrices reduced_matrices(double p, const RecordOverlaps &s, int m);

}  // namespace darwinium::oracle
