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
#include "darwinium/circuit.hpp"

#include <cmath>
#include <set>

#include "darwinium/rng.hpp"

namespace darwinium {

using nlohmann::json;

std::vector<int> op_qubits(const Operation &op) {
    return std::visit(
        [](const auto &o) -> std::vector<int> {
            using T = std::decay_t<decltype(o)>;
            if constexpr (std::is_same_v<T, SingleQubitOp>) {
                return {o.qubit};
            } else if constexpr (std::is_same_v<T, CzOp>) {
                return {o.a, o.b};
            } else {
                std::vector<int> q = o.gate.control_qubits;
                q.push_back(o.gate.target);
                return q;
            }
        },
        op);
}

void Circuit::validate() const {
    if (n_qubits < 0 || n_qubits > kMaxQubits) {
        throw ConfigError("circuit register size out of range");
    }
    for (const auto &op : ops) {
        for (int q : op_qubits(op)) {
            if (q < 0 || q >= n_qubits) {
                throw ConfigError("circuit op references qubit " + std::to_string(q) + " outside register of " +
                                  std::to_string(n_qubits));
            }
        }
        if (const auto *c = std::get_if<CzOp>(&op); c != nullptr && c->a == c->b) {
            throw ConfigError("CZ needs two distinct qubits");
        }
        if (const auto *c = std::get_if<ConditionalOp>(&op)) {
            c->gate.validate();
        }
    }
}

std::string to_string(BranchingModel m) {
    switch (m) {
    case BranchingModel::Fig1SingleQubitSystem:
        return "fig1-single-qubit-system";
    case BranchingModel::Fig2LogicalPairSystem:
        return "fig2-logical-pair-system";
    case BranchingModel::Fig3ScrambledEnvironment:
        return "fig3-scrambled-environment";
    }
    return "unknown";
}

BranchingModel parse_branching_model(const std::string &s) {
    for (auto m : {BranchingModel::Fig1SingleQubitSystem, BranchingModel::Fig2LogicalPairSystem,
                   BranchingModel::Fig3ScrambledEnvironment}) {
        if (s == to_string(m)) {
            return m;
        }
    }
    throw ConfigError("unknown branching model '" + s + "'");
}

void BranchingModelConfig::validate() const {
    if (!(p >= 0.0 && p <= 1.0)) {
        throw ConfigError("initial probability p must lie in [0, 1]");
    }
    if (!std::isfinite(theta)) {
        throw ConfigError("theta must be finite");
    }
    switch (model) {
    case BranchingModel::Fig1SingleQubitSystem:
        if (n_env < 0 || n_env + 1 > kMaxQubits) {
            throw ConfigError("fig1 environment size out of range");
        }
        break;
    case BranchingModel::Fig2LogicalPairSystem:
        if (n_env < 0 || n_env + 2 > kMaxQubits) {
            throw ConfigError("fig2 environment size out of range");
        }
        break;
    case BranchingModel::Fig3ScrambledEnvironment:
        if (n_env != 4) {
            throw ConfigError("fig3 model has exactly 4 environment and 4 auxiliary qubits");
        }
        break;
    }
}

ModelLayout model_layout(const BranchingModelConfig &cfg) {
    cfg.validate();
    ModelLayout l;
    const int n_sys = cfg.model == BranchingModel::Fig2LogicalPairSystem ? 2 : 1;
    for (int q = 0; q < n_sys; ++q) {
        l.system.push_back(q);
    }
    for (int k = 0; k < cfg.n_env; ++k) {
        l.environment.push_back(n_sys + k);
    }
    if (cfg.model == BranchingModel::Fig3ScrambledEnvironment) {
        for (int k = 0; k < cfg.n_env; ++k) {
            l.auxiliary.push_back(n_sys + cfg.n_env + k);
        }
    }
    l.pointer_labels = n_sys == 2 ? std::pair<std::string, std::string>{"00", "11"}
                                  : std::pair<std::string, std::string>{"0", "1"};
    l.n_qubits = n_sys + cfg.n_env + static_cast<int>(l.auxiliary.size());
    return l;
}

ConditionalGateSpec scrambling_gate(int control, int target, double theta) {
    return controlled_y_rotation(control, target, theta);
}

namespace {

SingleQubitOp preparation(double p) {
    if (p == 0.5) {
        return {0, gates::hadamard(), "H"};
    }
    // Ry(a)|0> = cos(a/2)|0> + sin(a/2)|1>
    return {0, gates::ry(2.0 * std::acos(std::sqrt(p))), "RY"};
}

}  // namespace

Circuit build_circuit(const BranchingModelConfig &cfg) {
    const ModelLayout layout = model_layout(cfg);
    Circuit c;
    c.n_qubits = layout.n_qubits;
    c.model = to_string(cfg.model);
    c.seed = cfg.rng_seed;

    switch (cfg.model) {
    case BranchingModel::Fig1SingleQubitSystem:
    case BranchingModel::Fig2LogicalPairSystem: {
        c.ops.emplace_back(preparation(cfg.p));
        if (cfg.model == BranchingModel::Fig2LogicalPairSystem) {
            // sqrt(p)|0>|+>  --CZ-->  sqrt(p)|0+> + sqrt(q)|1->  --H_1-->  sqrt(p)|00> + sqrt(q)|11>
            c.ops.emplace_back(SingleQubitOp{1, gates::hadamard(), "H"});
            c.ops.emplace_back(CzOp{0, 1});
            c.ops.emplace_back(SingleQubitOp{1, gates::hadamard(), "H"});
        }
        CounterRng rng(cfg.rng_seed);
        for (int target : layout.environment) {
            ConditionalGateSpec g;
            g.control_qubits = layout.system;
            g.pointer_subspace = layout.pointer_labels;
            g.target = target;
            g.branch0 = sample_branch_params(0, rng);
            g.branch1 = sample_branch_params(1, rng);
            c.ops.emplace_back(ConditionalOp{g});
        }
        break;
    }
    case BranchingModel::Fig3ScrambledEnvironment: {
        c.ops.emplace_back(preparation(cfg.p));
        std::vector<Operation> scramblers;
        for (std::size_t k = 0; k < layout.environment.size(); ++k) {
            const int env = layout.environment[k];
            const int aux = layout.auxiliary[k];
            const bool env_ctrl = cfg.aux_orientation == AuxOrientation::EnvironmentControlsAux;
            Operation s = ConditionalOp{scrambling_gate(env_ctrl ? env : aux, env_ctrl ? aux : env,
                                                        cfg.theta + 1.5 * kPi)};
            c.ops.emplace_back(ConditionalOp{scrambling_gate(layout.system[0], env, 2.0 * cfg.theta)});
            if (cfg.scramble_after) {
                scramblers.push_back(std::move(s));
            } else {
                c.ops.push_back(std::move(s));
            }
        }
        c.ops.insert(c.ops.end(), scramblers.begin(), scramblers.end());
        break;
    }
    }
    c.validate();
    return c;
}

void apply_operation(StateVector &state, const Operation &op) {
    std::visit(
        [&state](const auto &o) {
            using T = std::decay_t<decltype(o)>;
            if constexpr (std::is_same_v<T, SingleQubitOp>) {
                state.apply_1q(o.qubit, o.u);
            } else if constexpr (std::is_same_v<T, CzOp>) {
                state.apply_cz(o.a, o.b);
            } else {
                state.apply_conditional(o.gate);
            }
        },
        op);
}

StateVector run_circuit(const Circuit &circuit) {
    circuit.validate();
    StateVector state(circuit.n_qubits);
    for (const auto &op : circuit.ops) {
        apply_operation(state, op);
    }
    return state;
}

std::vector<std::pair<BranchRotation, BranchRotation>> record_rotations(const Circuit &circuit) {
    std::vector<std::pair<BranchRotation, BranchRotation>> out;
    for (const auto &op : circuit.ops) {
        if (const auto *c = std::get_if<ConditionalOp>(&op)) {
            out.emplace_back(c->gate.branch0, c->gate.branch1);
        }
    }
    return out;
}

namespace {

json matrix_to_json(const Mat2 &u) {
    json rows = json::array();
    for (int r = 0; r < 2; ++r) {
        json row = json::array();
        for (int c = 0; c < 2; ++c) {
            row.push_back({u(r, c).real(), u(r, c).imag()});
        }
        rows.push_back(row);
    }
    return rows;
}

Mat2 matrix_from_json(const json &j) {
    Mat2 u;
    for (int r = 0; r < 2; ++r) {
        for (int c = 0; c < 2; ++c) {
            const auto &e = j.at(static_cast<std::size_t>(r)).at(static_cast<std::size_t>(c));
            u(r, c) = cplx(e.at(0).get<double>(), e.at(1).get<double>());
        }
    }
    return u;
}

}  // namespace

json circuit_to_json(const Circuit &circuit) {
    json ops = json::array();
    for (const auto &op : circuit.ops) {
        std::visit(
            [&ops](const auto &o) {
                using T = std::decay_t<decltype(o)>;
                if constexpr (std::is_same_v<T, SingleQubitOp>) {
                    ops.push_back({{"type", "1q"}, {"name", o.name}, {"qubit", o.qubit}, {"matrix", matrix_to_json(o.u)}});
                } else if constexpr (std::is_same_v<T, CzOp>) {
                    ops.push_back({{"type", "cz"}, {"a", o.a}, {"b", o.b}});
                } else {
                    const auto &g = o.gate;
                    ops.push_back({{"type", "conditional"},
                                   {"controls", g.control_qubits},
                                   {"pointer", {g.pointer_subspace.first, g.pointer_subspace.second}},
                                   {"target", g.target},
                                   {"branch0", {{"theta", g.branch0.theta}, {"phi", g.branch0.phi}}},
                                   {"branch1", {{"theta", g.branch1.theta}, {"phi", g.branch1.phi}}}});
                }
            },
            op);
    }
    return {{"schema", kCircuitSchema},
            {"bit_order", "qubit0-lsb; labels written highest qubit first"},
            {"n_qubits", circuit.n_qubits},
            {"model", circuit.model},
            {"seed", circuit.seed},
            {"ops", ops}};
}

Circuit circuit_from_json(const json &doc) {
    try {
        if (doc.at("schema").get<std::string>() != kCircuitSchema) {
            throw ConfigError("unsupported circuit schema '" + doc.at("schema").get<std::string>() + "'");
        }
        Circuit c;
        c.n_qubits = doc.at("n_qubits").get<int>();
        c.model = doc.value("model", "");
        c.seed = doc.value("seed", std::uint64_t{0});
        for (const auto &j : doc.at("ops")) {
            const auto type = j.at("type").get<std::string>();
            if (type == "1q") {
                c.ops.emplace_back(SingleQubitOp{j.at("qubit").get<int>(), matrix_from_json(j.at("matrix")),
                                                 j.value("name", "")});
            } else if (type == "cz") {
                c.ops.emplace_back(CzOp{j.at("a").get<int>(), j.at("b").get<int>()});
            } else if (type == "conditional") {
                ConditionalGateSpec g;
                g.control_qubits = j.at("controls").get<std::vector<int>>();
                g.pointer_subspace = {j.at("pointer").at(0).get<std::string>(), j.at("pointer").at(1).get<std::string>()};
                g.target = j.at("target").get<int>();
                g.branch0 = {j.at("branch0").at("theta").get<double>(), j.at("branch0").at("phi").get<double>()};
                g.branch1 = {j.at("branch1").at("theta").get<double>(), j.at("branch1").at("phi").get<double>()};
                c.ops.emplace_back(ConditionalOp{g});
            } else {
                throw ConfigError("unknown op type '" + type + "'");
            }
        }
        c.validate();
        return c;
    } catch (const json::exception &e) {
        throw ConfigError(std::string("malformed circuit document: ") + e.what());
    }
}

}  // namespace darwinium
