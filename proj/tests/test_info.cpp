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

#include "darwinium/circuit.hpp"
#include "darwinium/density_matrix.hpp"
#include "darwinium/info.hpp"
#include "test_util.hpp"

using namespace darwinium;
namespace tu = testutil;

namespace {

MatX dense_rho(const StateVector &s) {
    const VecX v = tu::to_vec(s);
    return v * v.adjoint();
}

// H(S | product measurement on F), by explicit projectors. System qubits
// are 0..n_sys-1 of rho, fragment qubits follow.
double dense_conditional_entropy(const MatX &rho, int n_sys, const MeasurementBasis &basis) {
    const int nf = static_cast<int>(basis.angles.size());
    const int n = n_sys + nf;
    std::vector<int> sys(static_cast<std::size_t>(n_sys));
    std::iota(sys.begin(), sys.end(), 0);
    double h = 0.0;
    for (int o = 0; o < (1 << nf); ++o) {
        MatX proj = MatX::Identity(1, 1);
        for (int j = nf - 1; j >= 0; --j) {
            const Eigen::Vector2cd b = basis.rotation(static_cast<std::size_t>(j)).col((o >> j) & 1);
            proj = kron(proj, b * b.adjoint());
        }
        std::vector<int> frag(static_cast<std::size_t>(nf));
        std::iota(frag.begin(), frag.end(), n_sys);
        const MatX full = tu::embed_dense(n, frag, proj);
        const MatX cond = tu::dense_partial_trace(full * rho * full, n, sys);
        const double p = cond.trace().real();
        if (p > 1e-14) {
            h += p * tu::dense_entropy(cond / p);
        }
    }
    return h;
}

StateVector fig1_state(int n, std::uint64_t seed, double p = 0.5) {
    BranchingModelConfig cfg;
    cfg.n_env = n;
    cfg.rng_seed = seed;
    cfg.p = p;
    return run_circuit(build_circuit(cfg));
}

}  // namespace

TEST_CASE("partial trace and reduced factor match the dense oracle") {
    const StateVector s = tu::random_state(5, 21);
    const MatX rho = dense_rho(s);
    for (const std::vector<int> &keep : {std::vector<int>{0}, {3, 1}, {4, 0, 2}, {0, 1, 2, 3, 4}}) {
        const MatX oracle = tu::dense_partial_trace(rho, 5, keep);
        const DensityMatrix a = partial_trace(s, keep);
        CHECK((a.matrix() - oracle).norm() <= 1e-10);
        CHECK(a.matrix().trace().real() == doctest::Approx(1.0).epsilon(1e-12));
        const DensityMatrix b = partial_trace(DensityMatrix(rho), keep);
        CHECK((b.matrix() - oracle).norm() <= 1e-10);
        const MatX w = reduced_factor(s, keep);
        CHECK((w * w.adjoint() - oracle).norm() <= 1e-10);
    }
}

TEST_CASE("PSD projection is idempotent and lands on a state") {
    MatX h = tu::random_vector(6, 22).reshaped(8, 8);
    h = (0.5 * (h + h.adjoint())).eval();
    const DensityMatrix p1 = psd_project(h);
    const DensityMatrix p2 = psd_project(p1.matrix());
    CHECK((p1.matrix() - p2.matrix()).norm() <= 1e-12);
    CHECK(p1.matrix().trace().real() == doctest::Approx(1.0).epsilon(1e-12));
    Eigen::SelfAdjointEigenSolver<MatX> es(p1.matrix());
    CHECK(es.eigenvalues().minCoeff() >= -1e-12);
}

TEST_CASE("entropy examples and invariants") {
    CHECK(von_neumann_entropy(MatX(MatX::Identity(2, 2) / 2.0)) == doctest::Approx(1.0));
    CHECK(von_neumann_entropy(MatX(MatX::Identity(8, 8) / 8.0)) == doctest::Approx(3.0));
    MatX bad = MatX::Identity(2, 2) / 2.0;
    bad(0, 1) = 0.3;
    CHECK_THROWS_AS(von_neumann_entropy(bad), ValidationError);

    // Additivity on a product of two random mixed states.
    MatX a = tu::random_vector(4, 23).reshaped(4, 4);
    a = a * a.adjoint();
    a /= a.trace();
    MatX b = tu::random_vector(2, 24).reshaped(2, 2);
    b = b * b.adjoint();
    b /= b.trace();
    CHECK(von_neumann_entropy(kron(a, b)) ==
          doctest::Approx(von_neumann_entropy(a) + von_neumann_entropy(b)).epsilon(1e-10));

    // H_A = H_{A-bar} for a pure state.
    const StateVector s = tu::random_state(7, 25);
    const std::vector<int> A{0, 2, 5};
    const std::vector<int> Abar{1, 3, 4, 6};
    CHECK(subsystem_entropy(s, A) == doctest::Approx(subsystem_entropy(s, Abar)).epsilon(1e-10));
    CHECK(subsystem_entropy(s, A) == doctest::Approx(tu::dense_entropy(tu::dense_partial_trace(dense_rho(s), 7, A))).epsilon(1e-10));
}

TEST_CASE("mutual information examples") {
    // Bell pair: I = 2.
    StateVector bell(2, {std::sqrt(0.5), 0, 0, std::sqrt(0.5)});
    FragmentPartition part{{0}, {1}, {}};
    CHECK(mutual_information(bell, part) == doctest::Approx(2.0));
    CHECK(mutual_information(DensityMatrix::from_pure(bell), part) == doctest::Approx(2.0));
    // Product state: I = 0.
    const StateVector prod = init_state(2, "01");
    CHECK(std::abs(mutual_information(prod, part)) <= 1e-12);
    // GHZ-3, one qubit of the environment: I = 1.
    StateVector ghz(3, {std::sqrt(0.5), 0, 0, 0, 0, 0, 0, std::sqrt(0.5)});
    CHECK(mutual_information(ghz, make_partition({0}, {1, 2}, 1)) == doctest::Approx(1.0));
    CHECK(mutual_information(ghz, make_partition({0}, {1, 2}, 2)) == doctest::Approx(2.0));
    CHECK(mutual_information(ghz, make_partition({0}, {1, 2}, 0)) == 0.0);
    CHECK_THROWS_AS(make_partition({0}, {1, 2}, 3), ConfigError);
}

TEST_CASE("fixed-basis conditional entropy matches projectors") {
    const StateVector s = fig1_state(4, 26, 0.3);
    const std::vector<int> sf{0, 1, 2, 3};
    const MatX rho = tu::dense_partial_trace(dense_rho(s), 5, sf);
    MeasurementBasis basis;
    basis.angles = {{0.3, 1.0}, {2.0, -0.5}, {1.2, 2.2}};
    CHECK(conditional_entropy_fixed_basis(DensityMatrix(rho), 1, basis) ==
          doctest::Approx(dense_conditional_entropy(rho, 1, basis)).epsilon(1e-10));
    CHECK(conditional_entropy_fixed_basis(reduced_factor(s, sf), 1, MeasurementBasis::computational(3)) ==
          doctest::Approx(dense_conditional_entropy(rho, 1, MeasurementBasis::computational(3))).epsilon(1e-10));
    for (std::size_t j = 0; j < 3; ++j) {
        CHECK(is_unitary(basis.rotation(j)));
    }
}

TEST_CASE("Holevo bound beats a brute-force grid for one fragment qubit") {
    for (std::uint64_t seed : {31, 32, 33}) {
        const StateVector s = fig1_state(3, seed);
        const std::vector<int> sf{0, 1};
        const MatX rho = tu::dense_partial_trace(dense_rho(s), 4, sf);
        const double hs = tu::dense_entropy(tu::dense_partial_trace(rho, 2, {0}));
        double best = 0.0;
        for (int i = 0; i <= 120; ++i) {
            for (int k = 0; k < 120; ++k) {
                MeasurementBasis b;
                b.angles = {{kPi * i / 120.0, -kPi + 2 * kPi * k / 120.0}};
                best = std::max(best, hs - dense_conditional_entropy(rho, 1, b));
            }
        }
        const HolevoResult h = holevo_bound(DensityMatrix(rho), 1);
        CHECK(h.chi >= best - 1e-9);
        CHECK(h.chi <= best + 1e-3);
        CHECK(h.h_s == doctest::Approx(hs).epsilon(1e-10));
        CHECK(h.chi >= h.h_s - h.h_cond_computational - 1e-15);
        CHECK(h.chi <= mutual_information(s, make_partition({0}, {1, 2, 3}, 1)) + 1e-9);
    }
}

TEST_CASE("Holevo optimum never loses to the computational basis") {
    for (int m = 1; m <= 5; ++m) {
        const StateVector s = fig1_state(6, 40 + static_cast<std::uint64_t>(m));
        const auto part = make_partition({0}, {1, 2, 3, 4, 5, 6}, m);
        const DiscordResult d = quantum_discord(s, part);
        std::vector<int> sf{0};
        sf.insert(sf.end(), part.fragment.begin(), part.fragment.end());
        const HolevoResult h = holevo_bound(reduced_factor(s, sf), 1);
        CHECK(h.chi >= h.h_s - h.h_cond_computational);
        CHECK(d.chi == doctest::Approx(h.chi).epsilon(1e-12));
        CHECK(d.D >= -1e-3);
        CHECK(d.D_raw == doctest::Approx(d.I - d.chi).epsilon(1e-12));
    }
}

TEST_CASE("fig3 discord endpoints") {
    BranchingModelConfig cfg;
    cfg.model = BranchingModel::Fig3ScrambledEnvironment;
    const ModelLayout lay = model_layout(cfg);
    cfg.theta = kPi / 2;
    const StateVector s = run_circuit(build_circuit(cfg));
    for (int m = 1; m <= 3; ++m) {
        const auto d = quantum_discord(s, make_partition(lay.system, lay.environment, m));
        CHECK(d.I == doctest::Approx(1.0).epsilon(1e-9));
        CHECK(std::abs(d.D) <= 1e-6);
    }
    const auto d4 = quantum_discord(s, make_partition(lay.system, lay.environment, 4));
    CHECK(d4.I == doctest::Approx(2.0).epsilon(1e-9));
    CHECK(d4.chi == doctest::Approx(1.0).epsilon(1e-9));
    CHECK(d4.D == doctest::Approx(1.0).epsilon(1e-9));

    // Same numbers through the density-matrix path.
    const DensityMatrix rho = partial_trace(s, std::vector<int>{0, 1, 2, 3, 4});
    const auto dm = quantum_discord(rho, 1);
    CHECK(dm.D == doctest::Approx(1.0).epsilon(1e-9));

    cfg.theta = 0.0;
    const StateVector z = run_circuit(build_circuit(cfg));
    for (int m = 1; m <= 4; ++m) {
        const auto d = quantum_discord(z, make_partition(lay.system, lay.environment, m));
        CHECK(std::abs(d.I) <= 1e-9);
        CHECK(std::abs(d.D) <= 1e-9);
    }
}

TEST_CASE("summaries and curves") {
    const std::vector<double> xs{1.0, 2.0, 3.0};
    const Stats s = summarize(xs);
    CHECK(s.mean == doctest::Approx(2.0));
    CHECK(s.std == doctest::Approx(std::sqrt(2.0 / 3.0)));
    InfoCurve c;
    c.sweep_name = "m";
    c.seed = 3;
    c.points.push_back({1.0, {0.5}, {0.25}, {0.25}});
    const std::string csv = c.to_csv();
    CHECK(csv.starts_with("sweep,I_mean,I_std,chi_mean,chi_std,D_mean,D_std,runs,seed\n"));
    CHECK(c.to_json()["points"][0]["I"][0] == 0.5);
}
