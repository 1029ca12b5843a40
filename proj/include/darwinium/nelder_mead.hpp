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
 * Derivative-free Nelder-Mead simplex minimizer.
 */
#pragma once

#include <functional>

#include <Eigen/Dense>

namespace darwinium {

struct NelderMeadOptions {
    int max_evals = 2000;
    /// Stop when the simplex spread of f falls below this.
    double ftol = 1e-12;
    /// ... and the simplex diameter below this.
    double xtol = 1e-7;
    /// Edge length of the initial simplex along each coordinate.
    double initial_step = 0.6;
    /// Dimension-dependent coefficients (Gao and Han 2012); they keep the
    /// simplex from collapsing in 10+ dimensions.
    bool adaptive = true;
};

struct NelderMeadResult {
    Eigen::VectorXd x;
    double f = 0.0;
    int evals = 0;
    bool converged = false;
};

/// Standard coefficients (1, 2, 1/2, 1/2) unless `adaptive`. Never
/// returns a point worse than x0.
NelderMeadResult nelder_mead(const std::function<double(const Eigen::VectorXd &)> &f,
                             const Eigen::VectorXd &x0, const NelderMeadOptions &opt = {});

}  // namespace darwinium
