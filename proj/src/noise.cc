// Copyright 2026 The bellsig Authors
//
// Licensed under the Apache License, Version 2.0 (the "License");
// you may not use this file except in compliance with the License.
// You may obtain a copy of the License at
//
//      http://www.apache.org/licenses/LICENSE-2.0
//
// Unless required by applicable law or agreed to in writing, software
// distributed under the License is distributed on an "AS IS" BASIS,
// WITHOUT WARRANTIES OR CONDITIONS OF ANY KIND, either express or implied.
// See the License for the specific language governing permissions and
// limitations under the License.

#include "bellsig/noise.h"

#include <cmath>

#include "bellsig/errors.h"

namespace bellsig {

namespace {

void check_probability(double p, const std::string &what) {
    if (!(p >= 0.0 && p <= 1.0)) {
        throw ValidationError("noise: " + what + " must lie in [0, 1]");
    }
}

nlohmann::json qubit_to_json(const QubitNoise &q) {
    return {{"depolarizing", q.depolarizing}, {"damping", q.damping}, {"readout", q.readout}};
}

QubitNoise qubit_from_json(const nlohmann::json &j) {
    QubitNoise q;
    q.depolarizing = j.value("depolarizing", 0.0);
    q.damping = j.value("damping", 0.0);
    if (j.contains("readout")) {
        q.readout = j.at("readout").get<Confusion>();
    }
    return q;
}

}  // namespace

bool SignalingInjection::is_zero() const {
    return on_a == std::array<double, 2>{} && on_b == std::array<double, 2>{} && phase_on_a == 0.0 &&
           phase_on_b == 0.0;
}

void NoiseConfig::validate() const {
    for (Role r : {Role::A, Role::S, Role::B}) {
        const QubitNoise &q = qubit(r);
        const std::string name = "qubit " + to_string(r);
        check_probability(q.depolarizing, name + " depolarizing");
        check_probability(q.damping, name + " damping");
        for (int t = 0; t < 2; ++t) {
            check_probability(q.readout[t][0], name + " readout");
            check_probability(q.readout[t][1], name + " readout");
            if (std::abs(q.readout[t][0] + q.readout[t][1] - 1.0) > 1e-12) {
                throw ValidationError("noise: " + name + " readout row " + std::to_string(t) + " does not sum to 1");
            }
        }
    }
    for (const auto &c : zz) {
        if (c.first == c.second) {
            throw ValidationError("noise: ZZ coupling needs two different roles");
        }
        if (!std::isfinite(c.phase)) {
            throw ValidationError("noise: ZZ phase must be finite");
        }
    }
    auto check_shift = [](const QubitNoise &q, const std::array<double, 2> &eps, const std::string &who) {
        for (double e : eps) {
            if (!(e >= -1.0 && e <= 1.0)) {
                throw ValidationError("noise: signaling epsilon for " + who + " must lie in [-1, 1]");
            }
            for (double sign : {0.5, -0.5}) {
                for (int t = 0; t < 2; ++t) {
                    double p = q.readout[t][0] + sign * e;
                    if (p < 0.0 || p > 1.0) {
                        throw ValidationError("noise: signaling epsilon " + std::to_string(e) + " pushes " + who +
                                              " readout outside [0, 1]");
                    }
                }
            }
        }
    };
    check_shift(qubit(Role::A), signaling.on_a, "A");
    check_shift(qubit(Role::B), signaling.on_b, "B");
    if (!std::isfinite(signaling.phase_on_a) || !std::isfinite(signaling.phase_on_b)) {
        throw ValidationError("noise: signaling phases must be finite");
    }
}

const NoiseConfig &NoiseModel::for_pair(const std::string &label) const {
    auto it = per_pair.find(label);
    return it == per_pair.end() ? defaults : it->second;
}

nlohmann::json noise_config_to_json(const NoiseConfig &cfg) {
    nlohmann::json qubits;
    for (Role r : {Role::A, Role::S, Role::B}) {
        qubits[to_string(r)] = qubit_to_json(cfg.qubit(r));
    }
    nlohmann::json zz = nlohmann::json::array();
    for (const auto &c : cfg.zz) {
        zz.push_back({{"roles", {to_string(c.first), to_string(c.second)}}, {"phase", c.phase}});
    }
    const auto &s = cfg.signaling;
    return {
        {"qubits", qubits},
        {"zz", zz},
        {"signaling",
         {{"on_a", s.on_a}, {"on_b", s.on_b}, {"phase_on_a", s.phase_on_a}, {"phase_on_b", s.phase_on_b}}},
    };
}

NoiseConfig noise_config_from_json(const nlohmann::json &j) {
    try {
        NoiseConfig cfg;
        if (j.contains("qubits")) {
            for (const auto &[name, q] : j.at("qubits").items()) {
                cfg.qubit(role_from_string(name)) = qubit_from_json(q);
            }
        }
        if (j.contains("zz")) {
            for (const auto &c : j.at("zz")) {
                auto roles = c.at("roles");
                if (!roles.is_array() || roles.size() != 2) {
                    throw ValidationError("noise: zz roles must be a two-element array");
                }
                cfg.zz.push_back({role_from_string(roles[0].get<std::string>()),
                                  role_from_string(roles[1].get<std::string>()), c.at("phase").get<double>()});
            }
        }
        if (j.contains("signaling")) {
            const auto &s = j.at("signaling");
            // "epsilon" is shorthand for the same shift on all four deltas.
            if (s.contains("epsilon")) {
                double e = s.at("epsilon").get<double>();
                cfg.signaling.on_a = {e, e};
                cfg.signaling.on_b = {e, e};
            }
            if (s.contains("on_a")) {
                cfg.signaling.on_a = s.at("on_a").get<std::array<double, 2>>();
            }
            if (s.contains("on_b")) {
                cfg.signaling.on_b = s.at("on_b").get<std::array<double, 2>>();
            }
            cfg.signaling.phase_on_a = s.value("phase_on_a", 0.0);
            cfg.signaling.phase_on_b = s.value("phase_on_b", 0.0);
        }
        cfg.validate();
        return cfg;
    } catch (const nlohmann::json::exception &ex) {
        throw ValidationError(std::string("noise: ") + ex.what());
    }
}

nlohmann::json noise_model_to_json(const NoiseModel &model) {
    nlohmann::json j = noise_config_to_json(model.defaults);
    j["schema"] = "noise/1";
    if (!model.per_pair.empty()) {
        nlohmann::json pairs;
        for (const auto &[label, cfg] : model.per_pair) {
            pairs[label] = noise_config_to_json(cfg);
        }
        j["pairs"] = pairs;
    }
    return j;
}

NoiseModel noise_model_from_json(const nlohmann::json &j) {
    try {
        if (j.value("schema", std::string()) != "noise/1") {
            throw ValidationError("noise: expected schema 'noise/1'");
        }
        NoiseModel model;
        model.defaults = noise_config_from_json(j);
        if (j.contains("pairs")) {
            for (const auto &[label, cfg] : j.at("pairs").items()) {
                model.per_pair[label] = noise_config_from_json(cfg);
            }
        }
        return model;
    } catch (const nlohmann::json::exception &ex) {
        throw ValidationError(std::string("noise: ") + ex.what());
    }
}

}  // namespace bellsig
