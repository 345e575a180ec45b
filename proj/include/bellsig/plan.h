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

#ifndef BELLSIG_PLAN_H
#define BELLSIG_PLAN_H

#include <array>
#include <cstdint>
#include <numbers>
#include <string>
#include <vector>

#include "bellsig/topology.h"
#include "json.hpp"

namespace bellsig {

/// a) Bell test on next neighbors, b) idle test on next neighbors,
/// c) idle test on fourth neighbors.
enum class TestKind { A, B, C };

std::string to_string(TestKind t);
TestKind test_kind_from_string(const std::string &s);
/// A-B distance used by each test: 2, 2, 4.
int test_distance(TestKind t);

/// Measurement setting pair (a, b), each 0 or 1.
struct Setting {
    int a = 0;
    int b = 0;

    Setting() = default;
    Setting(int a_, int b_);

    /// 2a + b: 00, 01, 10, 11.
    size_t index() const {
        return static_cast<size_t>(2 * a + b);
    }
    static Setting from_index(size_t i);

    bool operator==(const Setting &other) const = default;
};


struct BellAngles {
    std::array<double, 2> alpha{0.0, std::numbers::pi / 2};
    std::array<double, 2> beta{-std::numbers::pi / 4, std::numbers::pi / 4};

    bool operator==(const BellAngles &other) const = default;
};

/// CNOT-level circuits as drawn, or lowered to {S_theta, ECR_down} pulses.
enum class GateLevel { Cnot, Native };

struct PlanParams {
    TestKind test = TestKind::A;
    int repetitions = 25;
    int shots = 20000;
    int jobs = 60;
    uint64_t seed = 0;
    GateLevel gate_level = GateLevel::Cnot;
    BellAngles angles{};
    std::string device;
    std::vector<PairRecord> pairs;
};

struct ExperimentPlan {
    std::string device;
    TestKind test = TestKind::A;
    GateLevel gate_level = GateLevel::Cnot;
    BellAngles angles{};
    int repetitions = 0;
    int shots = 0;
    int jobs = 0;
    uint64_t seed = 0;
    std::vector<PairRecord> pairs;
    /// Per job, the shuffled circuit order (4 * repetitions settings).
    std::vector<std::vector<Setting>> job_orders;

    uint64_t trials_per_setting() const {
        return static_cast<uint64_t>(jobs) * static_cast<uint64_t>(repetitions) * static_cast<uint64_t>(shots);
    }
    size_t circuits_per_job() const {
        return 4 * static_cast<size_t>(repetitions);
    }
    /// Throws ValidationError when an invariant does not hold.
    void validate() const;

    bool operator==(const ExperimentPlan &other) const = default;
};

/// Seeded per-job Fisher-Yates shuffle of `repetitions` copies of each setting.
ExperimentPlan make_plan(const PlanParams &params);

nlohmann::json plan_to_json(const ExperimentPlan &plan);
ExperimentPlan plan_from_json(const nlohmann::json &j);

}  // namespace bellsig

#endif
