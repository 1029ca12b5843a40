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
 * Scalar and small-matrix aliases plus the error hierarchy shared by all
 * darwinium modules.
 */
#pragma once

#include <complex>
#include <cstddef>
#include <cstdint>
#include <numbers>
#include <stdexcept>
#include <string>

#include <Eigen/Dense>

namespace darwinium {

using cplx = std::complex<double>;
using Mat2 = Eigen::Matrix2cd;
using MatX = Eigen::MatrixXcd;
using VecX = Eigen::VectorXcd;

inline constexpr double kPi = std::numbers::pi;

/// Hard cap on register size for the dense engine.
inline constexpr int kMaxQubits = 24;

/// Base class for every error raised by the library.
class Error : public std::runtime_error {
  public:
    using std::runtime_error::runtime_error;
};

/// Malformed labels, bad indices, inconsistent model settings.
class ConfigError : public Error {
  public:
    using Error::Error;
};

/// Numerical contract violated by an input (non-unitary, non-Hermitian...).
class ValidationError : public Error {
  public:
    using Error::Error;
};

/// Input is well formed but carries nothing to work with (zero trace,
/// everything post-selected away, ...).
class DegenerateInputError : public Error {
  public:
    using Error::Error;
};

namespace pauli {
Mat2 identity();
Mat2 x();
Mat2 y();
Mat2 z();
}  // namespace pauli

}  // namespace darwinium
