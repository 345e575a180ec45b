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

#include "bellsig/plan.h"

#include <stdexcept>

#include "bellsig/errors.h"
#include "bellsig/rng.h"

namespace bellsig {

namespace {

// Counter word 1 of the shuffle streams; simulation streams use pair indices there.
constexpr uint64_t kShuffleStream = 0x53485546464C4531ULL;

}  // namespace

std::string to_string(TestKind t) {
    switch (t) {
        case TestKind::A:
            return "a";
        case TestKind::B:
            return "b";
        case TestKind::C:
            return "c";
    }
    return "?";
}

TestKind test_kind_from_string(const std::string &s) {
    if (s == "a") {
        return TestKind::A;
    }
    if (s == "b") {
        return TestKind::B;
    }
    if (s == "c") {
        return TestKind::C;
    }
    throw ValidationError("unknown test kind '" + s + "' (expected a, b or c)");
}

int test_distance(TestKind t) {
    return t == TestKind::C ? 4 : 2;
}

Setting::Setting(int a_, int b_) : a(a_), b(b_) {
    if ((a != 0 && a != 1) || (b != 0 && b != 1)) {
        throw std::invalid_argument("Setting: a and b must be 0 or 1");
    }
}

Setting Setting::from_index(size_t i) {
    if (i > 3) {
        throw std::invalid_argument("Setting::from_index: index must be below 4");
    }
    return Setting(static_cast<int>(i >> 1), static_cast<int>(i & 1));
}

void ExperimentPlan::validate() const {
    if (repetitions < 1 || shots < 1 || jobs < 1) {
        throw ValidationError("plan: repetitions, shots and jobs must be at least 1");
    }
    if (job_orders.size() != static_cast<size_t>(jobs)) {
        throw ValidationError("plan: expected " + std::to_string(jobs) + " job orders, found " +
                              std::to_string(job_orders.size()));
    }
    for (size_t j = 0; j < job_orders.size(); ++j) {
        std::array<int, 4> tally{};
        for (const auto &s : job_orders[j]) {
            ++tally[s.index()];
        }
        for (int n : tally) {
            if (n != repetitions) {
                throw ValidationError("plan: job " + std::to_string(j) + " does not contain each setting exactly " +
                                      std::to_string(repetitions) + " times");
            }
        }
    }
    for (const auto &p : pairs) {
        if (p.path.size() != static_cast<size_t>(p.distance) + 1 || p.path.front() != p.a || p.path.back() != p.b) {
            throw ValidationError("plan: pair " + p.label() + " has an inconsistent path");
        }
        if (test == TestKind::A && p.path.size() != 3) {
            throw ValidationError("plan: test a needs A-S-B paths of length 3, pair " + p.label());
        }
    }
}

ExperimentPlan make_plan(const PlanParams &params) {
    if (params.repetitions < 1 || params.shots < 1 || params.jobs < 1) {
        throw std::invalid_argument("make_plan: repetitions, shots and jobs must be at least 1");
    }
    ExperimentPlan plan;
    plan.device = params.device;
    plan.test = params.test;
    plan.gate_level = params.gate_level;
    plan.angles = params.angles;
    plan.repetitions = params.repetitions;
    plan.shots = params.shots;
    plan.jobs = params.jobs;
    plan.seed = params.seed;
    plan.pairs = params.pairs;
    const size_t n = plan.circuits_per_job();
    for (int job = 0; job < params.jobs; ++job) {
        std::vector<Setting> order;
        order.reserve(n);
        for (size_t s = 0; s < 4; ++s) {
            for (int r = 0; r < params.repetitions; ++r) {
                order.push_back(Setting::from_index(s));
            }
        }
        PhiloxStream rng(params.seed, kShuffleStream, static_cast<uint64_t>(job));
        for (size_t i = n - 1; i > 0; --i) {
            std::swap(order[i], order[rng.uniform_below(i + 1)]);
        }
        plan.job_orders.push_back(std::move(order));
    }
    plan.validate();
    return plan;
}

nlohmann::json plan_to_json(const ExperimentPlan &plan) {
    nlohmann::json pairs = nlohmann::json::array();
    for (const auto &p : plan.pairs) {
        pairs.push_back(pair_to_json(p));
    }
    nlohmann::json orders = nlohmann::json::array();
    for (const auto &job : plan.job_orders) {
        nlohmann::json o = nlohmann::json::array();
        for (const auto &s : job) {
            o.push_back({s.a, s.b});
        }
        orders.push_back(std::move(o));
    }
    return {
        {"schema", "plan/1"},
        {"device", plan.device},
        {"test", to_string(plan.test)},
        {"gate_level", plan.gate_level == GateLevel::Cnot ? "cnot" : "native"},
        {"angles", {{"alpha", plan.angles.alpha}, {"beta", plan.angles.beta}}},
        {"repetitions", plan.repetitions},
        {"shots", plan.shots},
        {"jobs", plan.jobs},
        {"seed", plan.seed},
        {"pairs", pairs},
        {"job_orders", orders},
    };
}

ExperimentPlan plan_from_json(const nlohmann::json &j) {
    try {
        if (j.at("schema").get<std::string>() != "plan/1") {
            throw ValidationError("plan: unsupported schema '" + j.at("schema").get<std::string>() + "'");
        }
        ExperimentPlan plan;
        plan.device = j.at("device").get<std::string>();
        plan.test = test_kind_from_string(j.at("test").get<std::string>());
        auto level = j.at("gate_level").get<std::string>();
        if (level != "cnot" && level != "native") {
            throw ValidationError("plan: gate_level must be 'cnot' or 'native'");
        }
        plan.gate_level = level == "cnot" ? GateLevel::Cnot : GateLevel::Native;
        plan.angles.alpha = j.at("angles").at("alpha").get<std::array<double, 2>>();
        plan.angles.beta = j.at("angles").at("beta").get<std::array<double, 2>>();
        plan.repetitions = j.at("repetitions").get<int>();
        plan.shots = j.at("shots").get<int>();
        plan.jobs = j.at("jobs").get<int>();
        plan.seed = j.at("seed").get<uint64_t>();
        for (const auto &p : j.at("pairs")) {
            plan.pairs.push_back(pair_from_json(p));
        }
        for (const auto &o : j.at("job_orders")) {
            std::vector<Setting> order;
            for (const auto &s : o) {
                order.emplace_back(s.at(0).get<int>(), s.at(1).get<int>());
            }
            plan.job_orders.push_back(std::move(order));
        }
        plan.validate();
        return plan;
    } catch (const nlohmann::json::exception &ex) {
        throw ValidationError(std::string("plan: ") + ex.what());
    } catch (const std::invalid_argument &ex) {
        throw ValidationError(std::string("plan: ") + ex.what());
    }
}

}  // namespace bellsig
