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

#include "darwinium/experiments.hpp"

using namespace darwinium;
using nlohmann::json;

namespace {

ExperimentConfig small(const std::string &exp) {
    json j{{"experiment", exp}, {"runs", 2}, {"seed", 7}};
    if (exp == "fig1b") {
        j["N"] = 4;
        j["holevo"] = {{"restarts", 2}, {"max_evals", 200}};
    } else if (exp == "fig2") {
        j["fig2"] = {{"N_values", {2, 4}}, {"m_ensemble", {2}}, {"m_signal", {2, 3}}};
        j["N"] = 4;
        j["theta_points"] = 9;
    } else if (exp == "fig3") {
        j["theta_points"] = 3;
        j["holevo"] = {{"restarts", 2}, {"max_evals", 200}};
    } else if (exp == "fig4") {
        j["theta_points"] = 9;
    } else if (exp == "oracle-check") {
        j["oracle"] = {{"draws", 5}, {"max_N", 4}};
    }
    return experiment_config_from_json(j);
}

ExperimentOutput run_with_threads(const ExperimentConfig &cfg, int threads) {
    const int saved = omp_get_max_threads();
    omp_set_num_threads(threads);
    auto out = run_experiment(cfg);
    omp_set_num_threads(saved);
    return out;
}

}  // namespace

TEST_CASE("config errors") {
    CHECK_THROWS_AS(experiment_config_from_json(json{{"experiment", "fig9"}}), ConfigError);
    CHECK_THROWS_AS(experiment_config_from_json(json{{"experiment", "fig1b"}, {"bogus", 1}}), ConfigError);
    CHECK_THROWS_AS(experiment_config_from_json(json{{"experiment", "fig1b"}, {"N", "ten"}}), ConfigError);
    CHECK_THROWS_AS(experiment_config_from_json(json{{"experiment", "fig3"}, {"N", 5}}), ConfigError);
    CHECK_THROWS_AS(experiment_config_from_json(json{{"experiment", "fig1b"}, {"runs", 0}}), ConfigError);
    CHECK_THROWS_AS(experiment_config_from_json(json{{"experiment", "fig1b"}, {"p", 1.5}}), ConfigError);
    CHECK_THROWS_AS(
        experiment_config_from_json(json{{"experiment", "fig1b"}, {"noise_params", {{"T1", 20.0}}}}),
        ConfigError);
    CHECK_THROWS_AS(experiment_config_from_json(json{{"experiment", "oracle-check"}, {"oracle", {{"max_N", 13}}}}),
                    ConfigError);
}

TEST_CASE("config defaults and round trip") {
    const auto c = experiment_config_from_json(json{{"experiment", "fig3"}});
    CHECK(c.n_env == 4);
    CHECK(c.runs == 1);
    const auto g = c.theta_grid();
    CHECK(g.size() == 33);
    CHECK(g.front() == 0.0);
    CHECK(g.back() == doctest::Approx(kPi));
    const auto back = experiment_config_from_json(to_json(small("fig2")));
    CHECK(to_json(back) == to_json(small("fig2")));
    CHECK(realization_seed(1, 0) != realization_seed(1, 1));
    CHECK(realization_seed(1, 3) == realization_seed(1, 3));
}

TEST_CASE("outputs are deterministic and independent of the thread count") {
    for (const char *exp : {"fig1b", "fig2", "fig3", "fig4", "oracle-check"}) {
        CAPTURE(exp);
        const auto cfg = small(exp);
        const auto a = run_with_threads(cfg, 1);
        const auto b = run_with_threads(cfg, 3);
        const auto c = run_with_threads(cfg, 1);
        CHECK(a.files == b.files);
        CHECK(a.files == c.files);
        CHECK(a.passed);
    }
}

TEST_CASE("metadata and file names") {
    const auto out = run_experiment(small("fig1b"));
    REQUIRE(out.files.count("fig1b.csv") == 1);
    REQUIRE(out.files.count("fig1b.json") == 1);
    CHECK(out.files.at("fig1b.csv").rfind("sweep,I_mean,I_std,chi_mean,chi_std,D_mean,D_std,runs,seed", 0) == 0);
    const json j = json::parse(out.files.at("fig1b.json"));
    for (const char *k : {"schema", "experiment", "config", "seed", "build_id", "bit_order"}) {
        CHECK(j.contains(k));
    }
    CHECK(j["schema"] == kOutputSchema);
    CHECK(j["seed"] == 7);

    const auto f2 = run_experiment(small("fig2"));
    for (const char *f : {"fig2c_ptheta.csv", "fig2_decode.csv", "fig2d_ensembles.json", "fig2e_signal.csv"}) {
        CHECK(f2.files.count(f) == 1);
    }
    const auto f3 = run_experiment(small("fig3"));
    for (const char *f : {"fig3_m1.csv", "fig3_m4.csv", "fig3.json"}) {
        CHECK(f3.files.count(f) == 1);
    }
}

TEST_CASE("oracle check detects the injected sign error") {
    auto cfg = small("oracle-check");
    CHECK(run_oracle_check(cfg).passed);
    cfg.inject_overlap_sign_error = true;
    const auto r = run_oracle_check(cfg);
    CHECK_FALSE(r.passed);
    CHECK(r.max_deviation > 1e-3);
    CHECK_FALSE(run_experiment(cfg).passed);
}

TEST_CASE("noiseless fig1b endpoints") {
    const auto curve = run_fig1b(small("fig1b"));
    REQUIRE(curve.points.size() == 5);
    for (double v : curve.points.front().I) {
        CHECK(std::abs(v) <= 1e-9);
    }
    // The full environment purifies S, so I = 2 H_S and D = H_S.
    const auto &last = curve.points.back();
    for (std::size_t r = 0; r < last.I.size(); ++r) {
        CHECK(last.I[r] > 1.0);
        CHECK(last.D[r] == doctest::Approx(0.5 * last.I[r]).epsilon(1e-3));
    }
}
