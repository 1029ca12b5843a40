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
#pragma once

#include <string>
#include <utility>
#include <vector>

#include "darwinium/rng.hpp"
#include "darwinium/types.hpp"

namespace darwinium {

namespace gates {
Mat2 hadamard();
Mat2 pauli_x();
/// exp(-i angle X / 2)
Mat2 rx(double angle);
/// exp(-i angle Y / 2)
Mat2 ry(double angle);
/// exp[-i theta/2 (X cos phi + Y sin phi)]; maps |0> to
/// cos(theta/2)|0> - i sin(theta/2) e^{i phi}|1>.
Mat2 xy_rotation(double theta, double phi);
}  // namespace gates

bool is_unitary(const MatX &u, double tol = 1e-10);
bool is_hermitian(const MatX &m, double tol = 1e-10);

/// Rotation angles of one branch of a conditional gate.
struct BranchRotation {
    double theta = 0.0;
    double phi = 0.0;

    [[nodiscard]] Mat2 matrix() const { return gates::xy_rotation(theta, phi); }
};

/**
 * |0_S><0_S| (x) U0 + |1_S><1_S| (x) U1 acting on `target`, with the two
 * pointer labels read on `control_qubits`.
 *
 * Labels are bitstrings over the control register written most-significant
 * first: the last character is control_qubits[0]. Control states outside
 * the pointer pair leave the target untouched.
 */
struct ConditionalGateSpec {
    std::vector<int> control_qubits;
    std::pair<std::string, std::string> pointer_subspace{"0", "1"};
    int target = 0;
    BranchRotation branch0;
    BranchRotation branch1;

    /// Throws ConfigError on malformed labels, overlapping indices or
    /// non-finite angles.
    void validate() const;
    /// Wrap theta into [-2pi, 2pi) and phi into [-pi, pi). The rotation is
    /// 4pi-periodic in theta and 2pi-periodic in phi, so this is exact.
    [[nodiscard]] ConditionalGateSpec canonical() const;
};

/// Single-control gate U(theta) = |0><0| (x) I + |1><1| (x) exp(-i theta Y/2).
ConditionalGateSpec controlled_y_rotation(int control, int target, double theta);

/// theta uniform on [(j-1/2)pi, (j+1/2)pi), phi uniform on [-pi, pi).
BranchRotation sample_branch_params(int branch, CounterRng &rng);

double wrap_angle(double x, double lo, double period);

}  // namespace darwinium
