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
#include "darwinium/noise.hpp"

#include <cmath>
#include <limits>
#include <algorithm>
#include <set>
#include <stdexcept>

#include "darwinium/kernels.hpp"

namespace darwinium {

NoiseParams NoiseParams::nine_qubit() { return NoiseParams{}; }

NoiseParams NoiseParams::twelve_qubit() {
    NoiseParams np;
    np.eps_sq = 0.00043;
    np.eps_sq_idle = 0.00079;
    np.eps_cz = 0.00277;
    np.shots = 1'000'000;
    return np;
}

NoiseParams NoiseParams::noiseless() {
    NoiseParams np;
    np.eps_sq = np.eps_sq_idle = np.eps_cz = np.eps_readout = 0.0;
    np.T1 = np.Tphi = std::numeric_limits<double>::infinity();
    return np;
}

void NoiseParams::validate() const {
    for (double e : {eps_sq, eps_sq_idle, eps_cz, eps_readout}) {
        if (!(e >= 0.0 && e <= 1.0)) {
            throw ConfigError("noise probabilities must lie in [0, 1]");
        }
    }
    for (double t : {t_sq, t_sq_idle, t_cz, T1, Tphi}) {
        if (!(t > 0.0)) {
            throw ConfigError("noise times must be positive");
        }
    }
    if (shots == 0) {
        throw ConfigError("shots must be at least 1");
    }
    if (!(depolarizing_scale >= 0.0) || depolarizing_scale * std::max({eps_sq, eps_sq_idle, eps_cz}) > 1.0) {
        throw ConfigError("scaled depolarizing probabilities must lie in [0, 1]");
    }
}

nlohmann::json to_json(const NoiseParams &np) {
    const auto time = [](double t) -> nlohmann::json {
        if (std::isinf(t)) {
            return "inf";
        }
        return t;
    };
    return {{"t_sq_ns", np.t_sq},         {"t_sq_idle_ns", np.t_sq_idle}, {"t_cz_ns", np.t_cz},
            {"eps_sq", np.eps_sq},        {"eps_sq_idle", np.eps_sq_idle}, {"eps_cz", np.eps_cz},
            {"eps_readout", np.eps_readout}, {"T1_us", time(np.T1)},     {"Tphi_us", time(np.Tphi)},
            {"shots", np.shots},          {"depolarizing_scale", np.depolarizing_scale}};
}

NoiseParams noise_params_from_json(const nlohmann::json &j) {
    static const std::set<std::string> known{"t_sq_ns", "t_sq_idle_ns", "t_cz_ns", "eps_sq", "eps_sq_idle",
                                             "eps_cz",  "eps_readout",  "T1_us",   "Tphi_us", "shots",
                                             "depolarizing_scale"};
    if (!j.is_object()) {
        throw ConfigError("noise_params must be a JSON object");
    }
    for (const auto &[k, v] : j.items()) {
        if (!known.contains(k)) {
            throw ConfigError("unknown noise_params key '" + k + "'");
        }
    }
    NoiseParams np;
    const auto time = [&j](const char *key, double fallback) {
        if (!j.contains(key)) {
            return fallback;
        }
        const auto &v = j.at(key);
        if (v.is_string() && v.get<std::string>() == "inf") {
            return std::numeric_limits<double>::infinity();
        }
        return v.get<double>();
    };
    np.t_sq = time("t_sq_ns", np.t_sq);
    np.t_sq_idle = time("t_sq_idle_ns", np.t_sq_idle);
    np.t_cz = time("t_cz_ns", np.t_cz);
    np.eps_sq = j.value("eps_sq", np.eps_sq);
    np.eps_sq_idle = j.value("eps_sq_idle", np.eps_sq_idle);
    np.eps_cz = j.value("eps_cz", np.eps_cz);
    np.eps_readout = j.value("eps_readout", np.eps_readout);
    np.T1 = time("T1_us", np.T1);
    np.Tphi = time("Tphi_us", np.Tphi);
    np.shots = j.value("shots", np.shots);
    np.depolarizing_scale = j.value("depolarizing_scale", np.depolarizing_scale);
    np.validate();
    return np;
}

bool KrausSet::is_complete(double tol) const {
    Mat2 sum = Mat2::Zero();
    for (const auto &k : operators) {
        sum += k.adjoint() * k;
    }
    return (sum - Mat2::Identity()).cwiseAbs().maxCoeff() <= tol;
}

bool KrausSet::is_identity() const {
    return operators.size() == 1 && operators.front() == Mat2::Identity();
}

Mat2 KrausSet::apply(const Mat2 &rho) const {
    Mat2 out = Mat2::Zero();
    for (const auto &k : operators) {
        out += k * rho * k.adjoint();
    }
    return out;
}

namespace {

void check_times(double t_ns, double T_us) {
    if (!(t_ns > 0.0) || !(T_us > 0.0)) {
        throw ConfigError("channel times must be positive");
    }
}

}  // namespace

KrausSet amplitude_damping(double t_ns, double T1_us) {
    check_times(t_ns, T1_us);
    const double gamma = -std::expm1(-t_ns / (T1_us * 1e3));
    if (gamma == 0.0) {
        return {{Mat2::Identity()}};
    }
    Mat2 k0, k1;
    k0 << 1.0, 0.0, 0.0, std::sqrt(1.0 - gamma);
    k1 << 0.0, std::sqrt(gamma), 0.0, 0.0;
    return {{k0, k1}};
}

KrausSet pure_dephasing(double t_ns, double Tphi_us) {
    check_times(t_ns, Tphi_us);
    const double p = -std::expm1(-t_ns / (Tphi_us * 1e3)) / 2.0;
    if (p == 0.0) {
        return {{Mat2::Identity()}};
    }
    return {{std::sqrt(1.0 - p) * pauli::identity(), std::sqrt(p) * pauli::z()}};
}

KrausSet depolarizing(double p) {
    if (!(p >= 0.0 && p <= 1.0)) {
        throw ConfigError("depolarizing probability must lie in [0, 1]");
    }
    if (p == 0.0) {
        return {{Mat2::Identity()}};
    }
    const double c = std::sqrt(p / 4.0);
    return {{std::sqrt(1.0 - 0.75 * p) * pauli::identity(), c * pauli::x(), c * pauli::y(), c * pauli::z()}};
}

void apply_kraus_trajectory(StateVector &state, int qubit, const KrausSet &k, CounterRng &rng) {
    if (qubit < 0 || qubit >= state.n_qubits()) {
        throw ConfigError("noise event qubit out of range");
    }
    if (k.is_identity()) {
        return;
    }
    auto amps = state.amplitudes();
    const Mat2 rho = kernels::omp::qubit_density(amps, qubit);
    const double total = rho.trace().real();
    if (!(total > 0.0)) {
        throw std::logic_error("trajectory reached an all-zero state");
    }
    // Branch weights Tr(K rho K^dag) sum to Tr(rho) by completeness.
    std::vector<double> w(k.operators.size());
    for (std::size_t i = 0; i < w.size(); ++i) {
        const Mat2 &op = k.operators[i];
        w[i] = (op * rho * op.adjoint()).trace().real();
    }
    const double u = rng.uniform() * total;
    double acc = 0.0;
    std::size_t pick = w.size();
    for (std::size_t i = 0; i < w.size(); ++i) {
        acc += w[i];
        if (u < acc && w[i] > 0.0) {
            pick = i;
            break;
        }
    }
    if (pick == w.size()) {
        // Round-off pushed u past the last partial sum: take the last live branch.
        for (std::size_t i = w.size(); i-- > 0;) {
            if (w[i] > 0.0) {
                pick = i;
                break;
            }
        }
    }
    const double weight = w[pick];
    kernels::omp::apply_1q(amps, qubit, k.operators[pick]);
    kernels::omp::scale(amps, std::sqrt(total / weight));
}

StateVector apply_channel_trajectory(StateVector state, int qubit, const KrausSet &k, CounterRng &rng) {
    if (!k.is_complete()) {
        throw ValidationError("Kraus set is not complete");
    }
    apply_kraus_trajectory(state, qubit, k, rng);
    return state;
}

std::size_t NoisyCircuit::count_events(std::string_view kind_prefix) const {
    std::size_t n = 0;
    for (const auto &s : steps) {
        if (const auto *e = std::get_if<NoiseEvent>(&s); e != nullptr && e->kind.starts_with(kind_prefix)) {
            ++n;
        }
    }
    return n;
}

std::vector<int> NoisyCircuit::idle_qubits() const {
    std::set<int> q;
    for (const auto &s : steps) {
        if (const auto *e = std::get_if<NoiseEvent>(&s); e != nullptr && e->kind.starts_with("idle-")) {
            q.insert(e->qubit);
        }
    }
    return {q.begin(), q.end()};
}

NoisyCircuit noisy_gate_wrapper(const Circuit &circuit, const NoiseParams &np) {
    circuit.validate();
    np.validate();

    struct ChannelTriple {
        std::shared_ptr<const KrausSet> depol, damp, dephase;
    };
    const auto triple = [&np](double eps, double t, double T1, double Tphi) {
        return ChannelTriple{std::make_shared<const KrausSet>(depolarizing(np.depolarizing_scale * eps)),
                             std::make_shared<const KrausSet>(amplitude_damping(t, T1)),
                             std::make_shared<const KrausSet>(pure_dephasing(t, Tphi))};
    };
    const ChannelTriple sq = triple(np.eps_sq, np.t_sq, np.T1, np.Tphi);
    const ChannelTriple cz = triple(np.eps_cz, np.t_cz, np.T1, np.Tphi);
    const ChannelTriple idle = triple(np.eps_sq_idle, np.t_sq_idle, np.T1, np.Tphi);

    NoisyCircuit out;
    out.n_qubits = circuit.n_qubits;
    const auto emit = [&out](int q, const ChannelTriple &c, const std::string &prefix) {
        for (const auto &[ch, kind] : {std::pair{c.depol, "depolarizing"}, std::pair{c.damp, "damping"},
                                       std::pair{c.dephase, "dephasing"}}) {
            if (!ch->is_identity()) {
                out.steps.emplace_back(NoiseEvent{q, ch, prefix + kind});
            }
        }
    };

    // Consecutive two-qubit gates on disjoint qubits share one layer; each
    // layer's idlers get idle noise once.
    std::vector<const Operation *> layer;
    std::set<int> busy;
    const auto flush = [&] {
        if (layer.empty()) {
            return;
        }
        for (const Operation *op : layer) {
            out.steps.emplace_back(*op);
        }
        for (const Operation *op : layer) {
            for (int q : op_qubits(*op)) {
                emit(q, cz, "");
            }
        }
        for (int q = 0; q < circuit.n_qubits; ++q) {
            if (!busy.contains(q)) {
                emit(q, idle, "idle-");
            }
        }
        layer.clear();
        busy.clear();
    };
    for (const auto &op : circuit.ops) {
        const std::vector<int> touched = op_qubits(op);
        if (std::holds_alternative<SingleQubitOp>(op)) {
            flush();
            out.steps.emplace_back(op);
            emit(touched.front(), sq, "");
            continue;
        }
        if (std::ranges::any_of(touched, [&](int q) { return busy.contains(q); })) {
            flush();
        }
        layer.push_back(&op);
        busy.insert(touched.begin(), touched.end());
    }
    flush();
    return out;
}

StateVector run_trajectory(const NoisyCircuit &circuit, CounterRng &rng) {
    StateVector state(circuit.n_qubits);
    for (const auto &step : circuit.steps) {
        if (const auto *op = std::get_if<Operation>(&step)) {
            apply_operation(state, *op);
        } else {
            const auto &e = std::get<NoiseEvent>(step);
            apply_kraus_trajectory(state, e.qubit, *e.channel, rng);
        }
    }
    return state;
}

std::string readout_flip(std::string_view bits, double eps, CounterRng &rng) {
    if (!(eps >= 0.0 && eps <= 1.0)) {
        throw ConfigError("readout error must lie in [0, 1]");
    }
    std::string out(bits);
    for (char &c : out) {
        if (rng.uniform() < eps) {
            c = c == '0' ? '1' : '0';
        }
    }
    return out;
}

std::vector<double> readout_confusion(std::span<const double> probs, int n_bits, double eps) {
    if (!(eps >= 0.0 && eps <= 1.0)) {
        throw ConfigError("readout error must lie in [0, 1]");
    }
    std::vector<double> p(probs.begin(), probs.end());
    if (p.size() != (std::size_t{1} << n_bits)) {
        throw ConfigError("distribution size does not match bit count");
    }
    if (eps == 0.0) {
        return p;
    }
    // Independent flips factorize: apply the 2x2 confusion matrix per bit.
    for (int b = 0; b < n_bits; ++b) {
        const std::size_t stride = std::size_t{1} << b;
        for (std::size_t k = 0; k < p.size() / 2; ++k) {
            const auto i0 = static_cast<std::size_t>(kernels::insert_zero_bit(k, b));
            const double p0 = p[i0];
            const double p1 = p[i0 | stride];
            p[i0] = (1.0 - eps) * p0 + eps * p1;
            p[i0 | stride] = eps * p0 + (1.0 - eps) * p1;
        }
    }
    return p;
}

}  // namespace darwinium
