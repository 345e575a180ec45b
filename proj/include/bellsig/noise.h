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

#ifndef BELLSIG_NOISE_H
#define BELLSIG_NOISE_H

#include <array>
#include <map>
#include <string>
#include <vector>

#include "bellsig/circuit.h"
#include "json.hpp"

namespace bellsig {

/// Row-stochastic readout matrix: confusion[true_bit][reported_bit].
using Confusion = std::array<std::array<double, 2>, 2>;

inline constexpr Confusion kPerfectReadout{{{1.0, 0.0}, {0.0, 1.0}}};

struct QubitNoise {
    /// Applied after every gate touching the qubit: rho -> (1-p) rho + p I/2.
    double depolarizing = 0.0;
    /// Amplitude damping strength gamma, applied after depolarizing.
    double damping = 0.0;
    Confusion readout = kPerfectReadout;

    bool operator==(const QubitNoise &other) const = default;
};

/// exp(-i phase Z Z / 2) between two roles, applied after the readout
/// rotations (during the measurement window).
struct ZZCoupling {
    Role first = Role::A;
    Role second = Role::B;
    double phase = 0.0;

    bool operator==(const ZZCoupling &other) const = default;
};

/// Deliberate cross-party dependence used to calibrate detection power.
///
/// on_b[b]: with B's own setting b and A's setting a, B's probability of
/// reporting + is shifted by on_b[b] * (1/2 - a) for both true states, so
/// delta P_{*b} moves by exactly on_b[b]. on_a is the mirror image for A.
/// phase_on_b: B's readout rotation frame is shifted by phase_on_b * (a - 1/2)
/// radians (and A's by phase_on_a * (b - 1/2)).
struct SignalingInjection {
    std::array<double, 2> on_a{};
    std::array<double, 2> on_b{};
    double phase_on_a = 0.0;
    double phase_on_b = 0.0;

    bool is_zero() const;
    bool operator==(const SignalingInjection &other) const = default;
};

struct NoiseConfig {
    /// Indexed by Role (A, S, B).
    std::array<QubitNoise, 3> qubits{};
    std::vector<ZZCoupling> zz;
    SignalingInjection signaling;

    const QubitNoise &qubit(Role r) const {
        return qubits[static_cast<size_t>(r)];
    }
    QubitNoise &qubit(Role r) {
        return qubits[static_cast<size_t>(r)];
    }
    /// Throws ValidationError when a probability is out of range, a readout
    /// row does not sum to 1 within 1e-12, or an injection would push a
    /// readout probability outside [0, 1].
    void validate() const;

    bool operator==(const NoiseConfig &other) const = default;
};

/// A default configuration plus per-pair overrides keyed by PairRecord::label().
struct NoiseModel {
    NoiseConfig defaults;
    std::map<std::string, NoiseConfig> per_pair;

    const NoiseConfig &for_pair(const std::string &label) const;
    bool operator==(const NoiseModel &other) const = default;
};

nlohmann::json noise_config_to_json(const NoiseConfig &cfg);
NoiseConfig noise_config_from_json(const nlohmann::json &j);
/// `{"schema":"noise/1", ...NoiseConfig fields..., "pairs": {"49-66": {...}}}`
nlohmann::json noise_model_to_json(const NoiseModel &model);
NoiseModel noise_model_from_json(const nlohmann::json &j);

}  // namespace bellsig

#endif
