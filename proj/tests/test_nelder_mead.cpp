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
#include <doctest.h>

#include <cmath>

#include "darwinium/nelder_mead.hpp"

using darwinium::nelder_mead;
using darwinium::NelderMeadOptions;

TEST_CASE("Rosenbrock valley") {
    const auto f = [](const Eigen::VectorXd &x) {
        return 100.0 * std::pow(x(1) - x(0) * x(0), 2) + std::pow(1.0 - x(0), 2);
    };
    NelderMeadOptions opt;
    opt.max_evals = 5000;
    const auto r = nelder_mead(f, Eigen::Vector2d(-1.2, 1.0), opt);
    CHECK(r.converged);
    CHECK(r.x(0) == doctest::Approx(1.0).epsilon(1e-5));
    CHECK(r.x(1) == doctest::Approx(1.0).epsilon(1e-5));
}

TEST_CASE("quadratic bowl in 12 dimensions") {
    const auto f = [](const Eigen::VectorXd &x) {
        double s = 0.0;
        for (Eigen::Index i = 0; i < x.size(); ++i) {
            s += (i + 1.0) * (x(i) - 0.1 * i) * (x(i) - 0.1 * i);
        }
        return s;
    };
    for (bool adaptive : {true, false}) {
        NelderMeadOptions opt;
        opt.adaptive = adaptive;
        opt.max_evals = 40000;
        const auto r = nelder_mead(f, Eigen::VectorXd::Zero(12), opt);
        CHECK(r.f <= 1e-8);
    }
}

TEST_CASE("never worse than the start and respects the budget") {
    int calls = 0;
    const auto f = [&calls](const Eigen::VectorXd &x) {
        ++calls;
        return std::cos(3 * x(0)) + x.squaredNorm();
    };
    NelderMeadOptions opt;
    opt.max_evals = 50;
    const Eigen::VectorXd x0 = Eigen::Vector3d(0.4, -0.2, 0.9);
    const auto r = nelder_mead(f, x0, opt);
    CHECK(r.f <= f(x0));
    CHECK(r.evals == calls - 1);
    CHECK(r.evals <= opt.max_evals + 4);
    const auto z = nelder_mead([](const Eigen::VectorXd &) { return 2.0; }, Eigen::VectorXd(0), opt);
    CHECK(z.evals == 1);
}
