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

#include <omp.h>

#include <algorithm>
#include <sstream>

#include "darwinium/circuit.hpp"
#include "darwinium/density_matrix.hpp"
#include "darwinium/geometry.hpp"
#include "darwinium/tomography.hpp"
#include "test_util.hpp"

using namespace darwinium;
namespace tu = testutil;

namespace {

DensityMatrix random_mixed(int n, std::uint64_t seed) {
    const Eigen::Index d = Eigen::Index{1} << n;
    const MatX g = tu::random_vector(2 * n, seed).reshaped(d, d);
    MatX rho = g * g.adjoint();
    rho /= rho.trace();
    return DensityMatrix(rho);
}

std::vector<ShotRecord> exact_records(const DensityMatrix &rho, double eps = 0.0) {
    return sample_all(rho, enumerate_settings(rho.n_qubits()), 0, CounterRng(1), eps);
}

}  // namespace

TEST_CASE("settings enumerate 3^n labels in order") {
    const auto s = enumerate_settings(3);
    CHECK(s.size() == 27);
    CHECK(s.front().labels == "III");
    CHECK(s[1].labels == "IIX");
    CHECK(s.back().labels == "YYY");
    CHECK_THROWS_AS(enumerate_settings(0), ConfigError);
    CHECK_THROWS_AS(enumerate_settings(6), ConfigError);
}

TEST_CASE("measured Pauli signs follow from the rotations") {
    for (char l : std::string("IXY")) {
        const Mat2 r = setting_rotation(l);
        const Mat2 measured = r.adjoint() * tu::pauli('Z') * r;
        const auto [idx, sign] = measured_pauli(l);
        const char p = "IXYZ"[idx];
        CHECK((measured - sign * tu::pauli(p)).norm() <= 1e-12);
    }
    for (char l : std::string("IXY")) {
        CHECK(is_unitary(logical_setting_rotation(l)));
    }
    CHECK_THROWS_AS(setting_rotation('Q'), ConfigError);
}

TEST_CASE("infinite-shot reconstruction is exact for n <= 4") {
    for (int n = 1; n <= 4; ++n) {
        const DensityMatrix rho = random_mixed(n, 70 + static_cast<std::uint64_t>(n));
        const auto rec = exact_records(rho);
        CHECK((linear_inversion(rec, n) - rho.matrix()).norm() <= 1e-9);
        CHECK((reconstruct_density(rec, n).matrix() - rho.matrix()).norm() <= 1e-9);
        const StateVector psi = tu::random_state(n, 80 + static_cast<std::uint64_t>(n));
        const DensityMatrix pure = DensityMatrix::from_pure(psi);
        CHECK((reconstruct_density(exact_records(pure), n).matrix() - pure.matrix()).norm() <= 1e-9);
    }
    const DensityMatrix rho = random_mixed(3, 90);
    const std::vector<int> keep{2, 0};
    CHECK((reconstruct_traced(exact_records(rho), 3, keep).matrix() - partial_trace(rho, keep).matrix()).norm() <=
          1e-9);
}

TEST_CASE("readout error damps correlators by (1 - 2 eps)^weight") {
    const DensityMatrix zz = DensityMatrix::from_pure(init_state(2, "00"));
    const double eps = 0.04;
    const MatX r = linear_inversion(exact_records(zz, eps), 2);
    MatX zz_op = kron(tu::pauli('Z'), tu::pauli('Z'));
    CHECK((zz_op * r).trace().real() == doctest::Approx((1 - 2 * eps) * (1 - 2 * eps)).epsilon(1e-12));
    MatX z0 = kron(Mat2::Identity(), tu::pauli('Z'));
    CHECK((z0 * r).trace().real() == doctest::Approx(1 - 2 * eps).epsilon(1e-12));
}

TEST_CASE("finite shots") {
    const DensityMatrix rho = random_mixed(2, 91);
    const auto settings = enumerate_settings(2);
    const auto rec = sample_all(rho, settings, 1000, CounterRng(2));
    for (const auto &r : rec) {
        double total = 0.0;
        for (const auto &[label, c] : r.counts) {
            total += c;
            CHECK(label.size() == 2);
        }
        CHECK(total == 1000.0);
        CHECK_FALSE(r.exact);
    }
    // Thread count does not change the draw.
    const int saved = omp_get_max_threads();
    omp_set_num_threads(1);
    const auto a = sample_all(rho, settings, 500, CounterRng(3));
    omp_set_num_threads(4);
    const auto b = sample_all(rho, settings, 500, CounterRng(3));
    omp_set_num_threads(saved);
    for (std::size_t i = 0; i < a.size(); ++i) {
        CHECK(a[i].counts == b[i].counts);
    }
    auto dup = rec;
    dup.push_back(rec.front());
    CHECK_THROWS_AS(linear_inversion(dup, 2), ConfigError);
    auto missing = rec;
    missing.pop_back();
    CHECK_THROWS_AS(linear_inversion(missing, 2), ConfigError);
}

TEST_CASE("logical post-selection on the noiseless fig2 state") {
    BranchingModelConfig cfg;
    cfg.model = BranchingModel::Fig2LogicalPairSystem;
    cfg.n_env = 3;
    cfg.rng_seed = 92;
    const ModelLayout lay = model_layout(cfg);
    const StateVector psi = run_circuit(build_circuit(cfg));
    const int m = 2;
    std::vector<int> qubits{0, 1, lay.environment[0], lay.environment[1]};
    std::vector<ShotRecord> records;
    CounterRng rng(93);
    for (char l : std::string("IXY")) {
        TomographySetting s{l + std::string(m, 'I'), true};
        records.push_back(sample_measurements(psi, qubits, s, 0, rng));
    }
    const auto ps = logical_postselect(records, {0, 1});
    CHECK(ps.discarded_fraction == 0.0);
    const auto tomo = tomographic_fragment_ensemble(collapse_logical(ps.records), m);
    const auto exact = fragment_ensemble(psi, make_partition(lay.system, lay.environment, m), {lay.system, "00", "11"});
    REQUIRE(tomo.entries.size() == exact.entries.size());
    // Entry order differs between the two paths, so match by label.
    for (const auto &ex : exact.entries) {
        const auto it = std::find_if(tomo.entries.begin(), tomo.entries.end(),
                                     [&](const auto &e) { return e.f_label == ex.f_label; });
        REQUIRE(it != tomo.entries.end());
        CHECK(it->X == doctest::Approx(ex.X).epsilon(1e-9));
        for (std::size_t k = 0; k < 3; ++k) {
            CHECK(std::abs(it->bloch[k] - ex.bloch[k]) <= 1e-9);
        }
    }
    CHECK(decode_accuracy(tomo) == doctest::Approx(decode_accuracy(exact)).epsilon(1e-9));
}

TEST_CASE("shot record json") {
    const auto rec = exact_records(DensityMatrix::from_pure(init_state(1, "1")));
    const auto j = to_json(rec.front());
    CHECK(j.contains("counts"));
    std::ostringstream os;
    write_jsonl(os, rec);
    const std::string text = os.str();
    CHECK(std::count(text.begin(), text.end(), '\n') == 3);
}
