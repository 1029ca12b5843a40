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
#include "darwinium/geometry.hpp"
#include "test_util.hpp"

using namespace darwinium;

namespace {

struct Fig2 {
    StateVector psi;
    ModelLayout lay;
    PointerBasis pb;
};

Fig2 fig2_state(int n, std::uint64_t seed) {
    BranchingModelConfig cfg;
    cfg.model = BranchingModel::Fig2LogicalPairSystem;
    cfg.n_env = n;
    cfg.rng_seed = seed;
    const ModelLayout lay = model_layout(cfg);
    return {run_circuit(build_circuit(cfg)), lay, {lay.system, "00", "11"}};
}

// Basis index with system pattern s (two bits) and env outcome label,
// label[i] being the value of env qubit i.
std::uint64_t index_of(int s, const std::string &label) {
    std::uint64_t idx = static_cast<std::uint64_t>(s);
    for (std::size_t i = 0; i < label.size(); ++i) {
        if (label[i] == '1') {
            idx |= std::uint64_t{1} << (2 + i);
        }
    }
    return idx;
}

GeometricEntry entry(double x, std::string label, double rho00, double z) {
    GeometricEntry e;
    e.X = x;
    e.f_label = std::move(label);
    e.rho << rho00, 0, 0, 1 - rho00;
    e.bloch = {0, 0, z};
    return e;
}

}  // namespace

TEST_CASE("geometric decomposition reconstructs the state") {
    for (std::uint64_t seed : {1, 2, 3}) {
        const Fig2 f = fig2_state(5, seed);
        const auto ens = geometric_decomposition(f.psi, make_partition(f.lay.system, f.lay.environment, 5), f.pb);
        double total = 0.0;
        double residual = 0.0;
        for (const auto &e : ens.entries) {
            total += e.X;
            REQUIRE(e.chi.has_value());
            const Eigen::Vector2cd v(f.psi[index_of(0b00, e.f_label)], f.psi[index_of(0b11, e.f_label)]);
            // Equal up to the per-branch phase that the decomposition fixes.
            residual = std::max(residual, std::abs(std::abs(e.chi->dot(v)) - std::sqrt(e.X)));
            residual = std::max(residual, std::abs(v.squaredNorm() - e.X));
            CHECK(std::abs(e.chi->norm() - 1.0) <= 1e-12);
            const Bloch b = bloch_coordinates(*e.chi);
            CHECK(std::hypot(b[0], b[1], b[2]) == doctest::Approx(1.0).epsilon(1e-12));
        }
        CHECK(total == doctest::Approx(1.0).epsilon(1e-12));
        CHECK(residual <= 1e-9);
        CHECK(ens.discarded_fraction <= 1e-12);
    }
}

TEST_CASE("fragment ensemble of the whole environment matches the pure decomposition") {
    const Fig2 f = fig2_state(4, 7);
    const auto part = make_partition(f.lay.system, f.lay.environment, 4);
    const auto pure = geometric_decomposition(f.psi, part, f.pb);
    const auto frag = fragment_ensemble(f.psi, part, f.pb);
    REQUIRE(pure.entries.size() == frag.entries.size());
    for (std::size_t i = 0; i < pure.entries.size(); ++i) {
        CHECK(pure.entries[i].f_label == frag.entries[i].f_label);
        CHECK(pure.entries[i].X == doctest::Approx(frag.entries[i].X).epsilon(1e-12));
        CHECK(pure.entries[i].bloch[2] == doctest::Approx(frag.entries[i].bloch[2]).epsilon(1e-10));
    }
    // Smaller fragments: mixed conditional states, weights still sum to 1.
    const auto m2 = fragment_ensemble(f.psi, make_partition(f.lay.system, f.lay.environment, 2), f.pb);
    double total = 0.0;
    for (const auto &e : m2.entries) {
        total += e.X;
        CHECK(e.rho.trace().real() == doctest::Approx(1.0).epsilon(1e-12));
        CHECK(e.f_label.size() == 2);
    }
    CHECK(total == doctest::Approx(1.0).epsilon(1e-12));
}

TEST_CASE("bloch coordinates and polar angle") {
    Mat2 zero = Mat2::Zero();
    zero(0, 0) = 1;
    CHECK(bloch_coordinates(zero)[2] == doctest::Approx(1.0));
    const Bloch plus = bloch_coordinates(Eigen::Vector2cd(Eigen::Vector2cd(1, 1) / std::sqrt(2.0)));
    CHECK(plus[0] == doctest::Approx(1.0));
    const Bloch plus_i = bloch_coordinates(Eigen::Vector2cd(Eigen::Vector2cd(1, cplx(0, 1)) / std::sqrt(2.0)));
    CHECK(plus_i[1] == doctest::Approx(1.0));
    CHECK(polar_angle({0, 0, 1}) == doctest::Approx(0.0));
    CHECK(polar_angle({0, 0, -1}) == doctest::Approx(kPi));
    CHECK(polar_angle({0, 0, 0}) == doctest::Approx(kPi / 2));
}

TEST_CASE("integrated probability is a CDF in theta") {
    const Fig2 f = fig2_state(6, 11);
    const auto ens = geometric_decomposition(f.psi, make_partition(f.lay.system, f.lay.environment, 6), f.pb);
    std::vector<double> grid;
    for (int i = 0; i <= 20; ++i) {
        grid.push_back(kPi * i / 20);
    }
    const auto p = integrated_probability(ens, grid);
    for (std::size_t i = 1; i < p.size(); ++i) {
        CHECK(p[i] >= p[i - 1]);
    }
    CHECK(p.back() == doctest::Approx(1.0).epsilon(1e-12));
}

TEST_CASE("decoding") {
    CHECK(decode_branch("0010") == DecodedBranch::Zero);
    CHECK(decode_branch("111") == DecodedBranch::One);
    CHECK(decode_branch("0110") == DecodedBranch::Undecided);
    CHECK_THROWS_AS(decode_branch(""), ConfigError);
    CHECK_THROWS_AS(decode_branch("02"), ConfigError);

    GeometricEnsemble ens;
    ens.entries = {entry(0.6, "00", 0.9, 0.8), entry(0.4, "01", 0.5, 0.0)};
    CHECK(decode_accuracy(ens) == doctest::Approx(0.6 * 0.9 + 0.5 * 0.4));
}

TEST_CASE("branch signal sums votes per z bin") {
    GeometricEnsemble ens;
    ens.entries = {entry(0.3, "001", 1, 0.9), entry(0.2, "000", 1, 0.901), entry(0.5, "111", 0, -0.91)};
    const auto bins = branch_signal(ens, 0.02);
    REQUIRE(bins.size() == 2);
    CHECK(bins[0].z == doctest::Approx(-0.92));
    CHECK(bins[0].A == doctest::Approx(-1.5));
    CHECK(bins[1].z == doctest::Approx(0.9));
    CHECK(bins[1].A == doctest::Approx(0.3 * 1 + 0.2 * 3));
    CHECK(bins[1].weight == doctest::Approx(0.5));
    CHECK_THROWS_AS(branch_signal(ens, 0.0), ConfigError);
    const auto j = to_json(ens);
    CHECK(j["entries"].size() == 3);
}

TEST_CASE("pointer basis validation") {
    PointerBasis pb{{0, 1}, "00", "0"};
    CHECK_THROWS_AS(pb.validate(), ConfigError);
}
