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
#include "darwinium/oracle.hpp"

#include <cmath>

namespace darwinium::oracle {

void RecordOverlaps::validate() const {
    for (const cplx &v : s) {
        if (!(std::abs(v) <= 1.0 + 1e-12)) {
            throw ValidationError("record overlap exceeds 1 in magnitude");
        }
    }
}

Eigen::Vector2cd record_state(double theta, double phi) {
    return {cplx(std::cos(theta / 2.0), 0.0), cplx(0.0, -std::sin(theta / 2.0)) * std::polar(1.0, phi)};
}

cplx record_overlap(double theta0, double phi0, double theta1, double phi1) {
    return std::cos(theta1 / 2.0) * std::cos(theta0 / 2.0) +
           std::polar(1.0, phi0 - phi1) * std::sin(theta1 / 2.0) * std::sin(theta0 / 2.0);
}

double binary_entropy(double x) {
    if (!(x >= 0.0 && x <= 1.0)) {
        throw ConfigError("binary entropy argument must lie in [0, 1]");
    }
    double h = 0.0;
    if (x > 0.0) {
        h -= x * std::log2(x);
    }
    if (x < 1.0) {
        h -= (1.0 - x) * std::log2(1.0 - x);
    }
    return h;
}

namespace {

// prod_{k=a..b} s_k, 1-based, empty range -> 1
cplx overlap_product(int a, int b, const RecordOverlaps &s) {
    if (a <= b && (a < 1 || b > s.size())) {
        throw ConfigError("overlap range out of bounds");
    }
    cplx prod{1.0, 0.0};
    for (int k = a; k <= b; ++k) {
        prod *= s.s[static_cast<std::size_t>(k - 1)];
    }
    return prod;
}

void check_p(double p) {
    if (!(p >= 0.0 && p <= 1.0)) {
        throw ConfigError("p must lie in [0, 1]");
    }
}

Mat2 pointer_block(double p, cplx off) {
    Mat2 r;
    const double c = std::sqrt(p * (1.0 - p));
    r << p, c * off, c * std::conj(off), 1.0 - p;
    return r;
}

}  // namespace

double lambda_plus(int a, int b, double p, const RecordOverlaps &s) {
    check_p(p);
    const double mod2 = std::norm(overlap_product(a, b, s));
    const double disc = (2.0 * p - 1.0) * (2.0 * p - 1.0) + 4.0 * p * (1.0 - p) * mod2;
    return 0.5 * (1.0 + std::sqrt(std::min(disc, 1.0)));
}

double closed_form_mi(double p, const RecordOverlaps &s, int m) {
    const int n = s.size();
    if (m < 0 || m > n) {
        throw ConfigError("fragment size must lie in [0, N]");
    }
    return binary_entropy(lambda_plus(1, n, p, s)) + binary_entropy(lambda_plus(1, m, p, s)) -
           binary_entropy(lambda_plus(m + 1, n, p, s));
}

ReducedMatrices reduced_matrices(double p, const RecordOverlaps &s, int m) {
    check_p(p);
    const int n = s.size();
    if (m < 0 || m > n) {
        throw ConfigError("fragment size must lie in [0, N]");
    }
    return {pointer_block(p, overlap_product(1, n, s)), pointer_block(p, overlap_product(m + 1, n, s)),
            pointer_block(p, overlap_product(1, m, s))};
}

}  // namespace darwinium::oracle
