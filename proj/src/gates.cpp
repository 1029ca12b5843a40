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
#include "darwinium/gates.hpp"

#include <algorithm>
#include <cmath>
#include <set>

namespace darwinium {

namespace pauli {
Mat2 identity() { return Mat2::Identity(); }
Mat2 x() {
    Mat2 m;
    m << 0.0, 1.0, 1.0, 0.0;
    return m;
}
Mat2 y() {
    Mat2 m;
    m << 0.0, cplx(0.0, -1.0), cplx(0.0, 1.0), 0.0;
    return m;
}
Mat2 z() {
    Mat2 m;
    m << 1.0, 0.0, 0.0, -1.0;
    return m;
}
}  // namespace pauli

namespace gates {

Mat2 hadamard() {
    const double r = 1.0 / std::sqrt(2.0);
    Mat2 m;
    m << r, r, r, -r;
    return m;
}

Mat2 pauli_x() { return pauli::x(); }

Mat2 rx(double angle) { return xy_rotation(angle, 0.0); }

Mat2 ry(double angle) { return xy_rotation(angle, kPi / 2); }

Mat2 xy_rotation(double theta, double phi) {
    const double c = std::cos(theta / 2);
    const double s = std::sin(theta / 2);
    const cplx mi(0.0, -1.0);
    Mat2 m;
    m << c, mi * s * std::polar(1.0, -phi), mi * s * std::polar(1.0, phi), c;
    return m;
}

}  // namespace gates

bool is_unitary(const MatX &u, double tol) {
    if (u.rows() != u.cols()) {
        return false;
    }
    const MatX prod = u.adjoint() * u;
    return (prod - MatX::Identity(u.rows(), u.cols())).cwiseAbs().maxCoeff() <= tol;
}

bool is_hermitian(const MatX &m, double tol) {
    if (m.rows() != m.cols()) {
        return false;
    }
    return (m - m.adjoint()).cwiseAbs().maxCoeff() <= tol;
}

double wrap_angle(double x, double lo, double period) {
    double r = std::fmod(x - lo, period);
    if (r < 0) {
        r += period;
    }
    return lo + r;
}

void ConditionalGateSpec::validate() const {
    if (control_qubits.empty()) {
        throw ConfigError("conditional gate needs at least one control qubit");
    }
    const auto &[l0, l1] = pointer_subspace;
    const auto bad_label = [&](const std::string &l) {
        return l.size() != control_qubits.size() ||
               std::any_of(l.begin(), l.end(), [](char c) { return c != '0' && c != '1'; });
    };
    if (bad_label(l0) || bad_label(l1)) {
        throw ConfigError("pointer labels must be bitstrings of length " + std::to_string(control_qubits.size()));
    }
    if (l0 == l1) {
        throw ConfigError("pointer labels must be distinct");
    }
    std::set<int> seen;
    for (int q : control_qubits) {
        if (q < 0 || !seen.insert(q).second) {
            throw ConfigError("control qubits must be distinct non-negative indices");
        }
    }
    if (target < 0 || seen.contains(target)) {
        throw ConfigError("conditional gate target overlaps its controls");
    }
    for (const auto *b : {&branch0, &branch1}) {
        if (!std::isfinite(b->theta) || !std::isfinite(b->phi)) {
            throw ConfigError("conditional gate angles must be finite");
        }
    }
}

ConditionalGateSpec ConditionalGateSpec::canonical() const {
    ConditionalGateSpec out = *this;
    for (auto *b : {&out.branch0, &out.branch1}) {
        b->theta = wrap_angle(b->theta, -2 * kPi, 4 * kPi);
        b->phi = wrap_angle(b->phi, -kPi, 2 * kPi);
    }
    return out;
}

ConditionalGateSpec controlled_y_rotation(int control, int target, double theta) {
    ConditionalGateSpec g;
    g.control_qubits = {control};
    g.pointer_subspace = {"0", "1"};
    g.target = target;
    g.branch0 = {0.0, 0.0};
    g.branch1 = {theta, kPi / 2};
    return g.canonical();
}

BranchRotation sample_branch_params(int branch, CounterRng &rng) {
    if (branch != 0 && branch != 1) {
        throw ConfigError("branch index must be 0 or 1");
    }
    BranchRotation r;
    r.theta = rng.uniform((branch - 0.5) * kPi, (branch + 0.5) * kPi);
    r.phi = rng.uniform(-kPi, kPi);
    return r;
}

}  // namespace darwinium
