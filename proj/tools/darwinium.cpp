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
#include <CLI11.hpp>

#include <cstdlib>
#include <filesystem>
#include <fstream>
#include <iostream>

#include "darwinium/experiments.hpp"

namespace fs = std::filesystem;
using darwinium::ConfigError;
using nlohmann::json;

namespace {

constexpr int kExitValidation = 2;
constexpr int kExitCheckFailed = 3;

json read_config(const std::string &path) {
    std::ifstream in(path);
    if (!in) {
        throw ConfigError("cannot open config '" + path + "'");
    }
    try {
        return json::parse(in);
    } catch (const json::parse_error &e) {
        throw ConfigError("config '" + path + "' is not valid JSON: " + e.what());
    }
}

}  // namespace

int main(int argc, char **argv) {
    CLI::App app{"darwinium: quantum Darwinism simulations"};
    std::string experiment;
    std::string config_path;
    std::optional<std::uint64_t> seed;
    std::string out_dir;
    std::string noise;
    std::optional<std::uint64_t> shots;
    bool exact = false;
    std::optional<int> workers;

    app.add_option("experiment", experiment, "fig1b | fig1c | fig2 | fig2c | fig2d | fig2e | fig3 | fig4 | oracle-check")
        ->required();
    app.add_option("--config", config_path, "JSON experiment config")->required();
    app.add_option("--seed", seed, "master seed");
    app.add_option("--out", out_dir, "output directory (default: $DARWINIUM_OUT or .)");
    app.add_option("--noise", noise, "noise model on or off")->check(CLI::IsMember({"on", "off"}));
    auto *shots_opt = app.add_option("--shots", shots, "shots per tomography setting");
    app.add_flag("--exact", exact, "infinite-shot statistics")->excludes(shots_opt);
    app.add_option("--workers", workers, "worker threads (0 = all cores)")->check(CLI::NonNegativeNumber);

    try {
        app.parse(argc, argv);
    } catch (const CLI::ParseError &e) {
        const int rc = app.exit(e);
        return rc == 0 ? 0 : kExitValidation;
    }

    try {
        json j = read_config(config_path);
        if (j.contains("experiment") && j["experiment"] != experiment) {
            throw ConfigError("config is for '" + j["experiment"].get<std::string>() + "', not '" + experiment + "'");
        }
        j["experiment"] = experiment;
        if (seed) {
            j["seed"] = *seed;
        }
        if (!noise.empty()) {
            j["noise"] = noise == "on";
        }
        if (shots) {
            j["shots"] = *shots;
        }
        if (exact) {
            j["shots"] = 0;
        }
        if (workers) {
            j["workers"] = *workers;
        }
        const auto cfg = darwinium::experiment_config_from_json(j);

        if (out_dir.empty()) {
            const char *env = std::getenv("DARWINIUM_OUT");
            out_dir = env != nullptr && *env != '\0' ? env : ".";
        }
        fs::create_directories(out_dir);

        const auto out = darwinium::run_experiment(cfg);
        for (const auto &[name, body] : out.files) {
            std::ofstream f(fs::path(out_dir) / name, std::ios::binary);
            f << body;
            if (!f) {
                std::cerr << "darwinium: failed writing " << name << "\n";
                return 1;
            }
        }
        std::cout << out.summary.dump(2) << "\n";
        return out.passed ? 0 : kExitCheckFailed;
    } catch (const darwinium::Error &e) {
        std::cerr << "darwinium: " << e.what() << "\n";
        return kExitValidation;
    }
}
