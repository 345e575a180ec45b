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

#include "bellsig/simulator.h"

#include <cmath>
#include <numbers>
#include <random>

#include "bellsig/errors.h"
#include "gtest/gtest.h"

using namespace bellsig;

namespace {

constexpr double kPi = std::numbers::pi;

double correlator(const OutcomeDistribution &d) {
    return d.p[0] - d.p[1] - d.p[2] + d.p[3];
}

double a_plus(const OutcomeDistribution &d) {
    return d.p[0] + d.p[1];
}

double b_plus(const OutcomeDistribution &d) {
    return d.p[0] + d.p[2];
}

std::array<OutcomeDistribution, 4> all_settings(TestKind test, const NoiseConfig &noise,
                                                GateLevel level = GateLevel::Cnot, const BellAngles &angles = {}) {
    std::array<OutcomeDistribution, 4> out;
    for (size_t s = 0; s < 4; ++s) {
        out[s] = outcome_distribution(build_circuit(test, Setting::from_index(s), angles, level), noise);
    }
    return out;
}

// delta P in the library's order d0*, d1*, d*0, d*1, at distribution level.
std::array<double, 4> deltas(const std::array<OutcomeDistribution, 4> &d) {
    auto at = [&](int a, int b) -> const OutcomeDistribution & {
        return d[Setting(a, b).index()];
    };
    return {a_plus(at(0, 0)) - a_plus(at(0, 1)), a_plus(at(1, 0)) - a_plus(at(1, 1)),
            b_plus(at(0, 0)) - b_plus(at(1, 0)), b_plus(at(0, 1)) - b_plus(at(1, 1))};
}

NoiseConfig random_local_noise(std::mt19937_64 &gen) {
    std::uniform_real_distribution<double> u(0.0, 1.0);
    NoiseConfig cfg;
    for (auto &q : cfg.qubits) {
        q.depolarizing = 0.3 * u(gen);
        q.damping = 0.3 * u(gen);
        double f0 = 0.005 + 0.095 * u(gen), f1 = 0.005 + 0.095 * u(gen);
        q.readout = {{{1 - f0, f0}, {f1, 1 - f1}}};
    }
    const Role roles[] = {Role::A, Role::S, Role::B};
    int terms = static_cast<int>(u(gen) * 3);
    for (int t = 0; t < terms; ++t) {
        Role r1 = roles[static_cast<int>(u(gen) * 3) % 3];
        Role r2 = roles[(static_cast<int>(r1) + 1 + static_cast<int>(u(gen) * 2) % 2) % 3];
        cfg.zz.push_back({r1, r2, 4 * kPi * (u(gen) - 0.5)});
    }
    cfg.validate();
    return cfg;
}

Eigen::VectorXcd bell_pair() {
    Eigen::VectorXcd psi = Eigen::VectorXcd::Zero(4);
    psi(0) = psi(3) = 1.0 / std::sqrt(2.0);
    return psi;
}

}  // namespace

TEST(QuantumState, starts_in_zero) {
    QuantumState s(3);
    EXPECT_EQ(s.num_qubits(), 3u);
    EXPECT_DOUBLE_EQ(s.trace(), 1.0);
    EXPECT_EQ(s.probabilities()[0], 1.0);
    EXPECT_TRUE(s.is_physical(1e-12));
    EXPECT_THROW(QuantumState(5), std::invalid_argument);
    EXPECT_THROW(QuantumState(0), std::invalid_argument);
}

TEST(QuantumState, s_gate_prepares_minus_i_state) {
    QuantumState s(1);
    s.apply_gate(s_gate(), {0});
    auto v = s.bloch_vector(0);
    EXPECT_NEAR(v[0], 0, 1e-15);
    EXPECT_NEAR(v[1], -1, 1e-15);
    EXPECT_NEAR(v[2], 0, 1e-15);
    Eigen::VectorXcd psi(2);
    psi << 1.0 / std::sqrt(2.0), Complex(0, -1.0 / std::sqrt(2.0));
    EXPECT_LT(max_abs_diff(s.density_matrix(), psi * psi.adjoint()), 1e-15);
}

TEST(QuantumState, identity_and_double_s) {
    QuantumState s(2);
    s.apply_gate(hadamard(), {1});
    Matrix before = s.density_matrix();
    s.apply_gate(Unitary::identity(2), {0});
    EXPECT_LT(max_abs_diff(s.density_matrix(), before), 1e-15);

    QuantumState t(1);
    t.apply_gate(s_gate(), {0});
    t.apply_gate(s_gate(), {0});
    EXPECT_NEAR(t.probabilities()[1], 1.0, 1e-15);
    EXPECT_THROW(t.apply_gate(cnot(Direction::Down), {0}), std::invalid_argument);
    EXPECT_THROW(t.apply_gate(s_gate(), {1}), std::invalid_argument);
}

TEST(QuantumState, reduced_state) {
    QuantumState s = QuantumState::from_state_vector(bell_pair());
    Matrix r = s.reduced({1});
    EXPECT_LT(max_abs_diff(r, 0.5 * Matrix::Identity(2, 2)), 1e-15);
    EXPECT_LT(max_abs_diff(s.reduced({0, 1}), s.density_matrix()), 1e-15);
    EXPECT_THROW(s.reduced({0, 0}), std::invalid_argument);
}

TEST(QuantumState, rejects_unphysical_inputs) {
    EXPECT_THROW(QuantumState::from_density_matrix(Matrix::Identity(2, 2)), std::invalid_argument);
    Matrix m = Matrix::Zero(2, 2);
    m(0, 0) = 1.5;
    m(1, 1) = -0.5;
    EXPECT_THROW(QuantumState::from_density_matrix(m), std::invalid_argument);
    Eigen::VectorXcd psi = Eigen::VectorXcd::Ones(2);
    EXPECT_THROW(QuantumState::from_state_vector(psi), std::invalid_argument);
}

TEST(Channels, kraus_sets_are_complete) {
    for (double p : {0.0, 0.3, 1.0}) {
        for (const auto &set : {depolarizing_kraus(p), amplitude_damping_kraus(p)}) {
            Matrix sum = Matrix::Zero(2, 2);
            for (const auto &k : set) {
                sum += k.adjoint() * k;
            }
            EXPECT_LT(max_abs_diff(sum, Matrix::Identity(2, 2)), 1e-15);
        }
    }
    EXPECT_THROW(depolarizing_kraus(1.1), std::invalid_argument);
    EXPECT_THROW(amplitude_damping_kraus(-0.1), std::invalid_argument);
}

TEST(Channels, rejects_non_trace_preserving) {
    QuantumState s(1);
    EXPECT_THROW(s.apply_channel({Matrix::Identity(2, 2), Matrix::Identity(2, 2)}, {0}), std::invalid_argument);
    EXPECT_THROW(s.apply_channel({}, {0}), std::invalid_argument);
}

TEST(Channels, full_depolarization_kills_correlations) {
    QuantumState s = QuantumState::from_state_vector(bell_pair());
    s.apply_channel(depolarizing_kraus(1.0), {0});
    EXPECT_LT(max_abs_diff(s.reduced({0}), 0.5 * Matrix::Identity(2, 2)), 1e-15);
    EXPECT_LT(max_abs_diff(s.density_matrix(), 0.25 * Matrix::Identity(4, 4)), 1e-15);
}

TEST(Channels, full_damping_and_zero_noise) {
    QuantumState s(1);
    s.apply_gate(pauli(PauliAxis::X), {0});
    s.apply_channel(amplitude_damping_kraus(1.0), {0});
    EXPECT_NEAR(s.probabilities()[0], 1.0, 1e-15);

    QuantumState t = QuantumState::from_state_vector(bell_pair());
    Matrix before = t.density_matrix();
    t.apply_channel(depolarizing_kraus(0.0), {1});
    t.apply_channel(amplitude_damping_kraus(0.0), {0});
    EXPECT_LT(max_abs_diff(t.density_matrix(), before), 1e-15);
}

TEST(Channels, random_sequences_stay_physical) {
    std::mt19937_64 gen(21);
    std::uniform_real_distribution<double> u(0.0, 1.0);
    for (int trial = 0; trial < 30; ++trial) {
        QuantumState s(4);
        for (int step = 0; step < 40; ++step) {
            size_t q = static_cast<size_t>(u(gen) * 4) % 4;
            size_t r = (q + 1 + static_cast<size_t>(u(gen) * 3) % 3) % 4;
            switch (static_cast<int>(u(gen) * 4) % 4) {
                case 0:
                    s.apply_gate(s_theta(6 * u(gen)), {q});
                    break;
                case 1:
                    s.apply_gate(ecr(Direction::Down), {q, r});
                    break;
                case 2:
                    s.apply_channel(depolarizing_kraus(u(gen)), {q});
                    break;
                default:
                    s.apply_channel(amplitude_damping_kraus(u(gen)), {q});
                    break;
            }
        }
        const Matrix &rho = s.density_matrix();
        EXPECT_NEAR(s.trace(), 1.0, 1e-12);
        EXPECT_LT(max_abs_diff(rho, rho.adjoint()), 1e-12);
        EXPECT_TRUE(s.is_physical(1e-10));
    }
}

TEST(OutcomeDistribution, ideal_bell_values) {
    auto d = all_settings(TestKind::A, NoiseConfig{});
    EXPECT_NEAR(d[0].p[0], 0.42677669529663675, 1e-12);
    EXPECT_NEAR(correlator(d[0]), 1.0 / std::sqrt(2.0), 1e-12);
    for (const auto &x : d) {
        EXPECT_NEAR(a_plus(x), 0.5, 1e-12);
        EXPECT_NEAR(b_plus(x), 0.5, 1e-12);
        EXPECT_NEAR(x.p[0] + x.p[1] + x.p[2] + x.p[3], 1.0, 1e-12);
    }
    double chsh = correlator(d[0]) - correlator(d[1]) - correlator(d[2]) - correlator(d[3]);
    EXPECT_NEAR(chsh, 2 * std::sqrt(2.0), 1e-12);
}

TEST(OutcomeDistribution, correlator_is_minus_sin_sum_on_grid) {
    for (GateLevel level : {GateLevel::Cnot, GateLevel::Native}) {
        for (int i = 0; i < 20; ++i) {
            for (int j = 0; j < 20; ++j) {
                BellAngles angles;
                angles.alpha[0] = -kPi + 2 * kPi * i / 20;
                angles.beta[0] = -kPi + 2 * kPi * j / 20 + 0.05;
                auto d = outcome_distribution(build_circuit(TestKind::A, Setting(0, 0), angles, level), {});
                EXPECT_NEAR(correlator(d), -std::sin(angles.alpha[0] + angles.beta[0]), 1e-10);
            }
        }
    }
}

TEST(OutcomeDistribution, idle_test_is_a_product_of_halves) {
    for (TestKind t : {TestKind::B, TestKind::C}) {
        for (const auto &d : all_settings(t, NoiseConfig{})) {
            for (double p : d.p) {
                EXPECT_NEAR(p, 0.25, 1e-15);
            }
        }
    }
}

TEST(OutcomeDistribution, readout_confusion_is_classical) {
    NoiseConfig cfg;
    cfg.qubit(Role::A).readout = {{{0.9, 0.1}, {0.2, 0.8}}};
    // After the pulse A is an equal mixture of true 0 and 1.
    auto d = outcome_distribution(build_circuit(TestKind::B, Setting(1, 1)), cfg);
    EXPECT_NEAR(a_plus(d), 0.5 * 0.9 + 0.5 * 0.2, 1e-15);
    EXPECT_NEAR(b_plus(d), 0.5, 1e-15);
}

TEST(OutcomeDistribution, damping_after_readout_pulse) {
    NoiseConfig cfg;
    cfg.qubit(Role::B).damping = 0.3;
    auto d = outcome_distribution(build_circuit(TestKind::C, Setting(0, 0)), cfg);
    EXPECT_NEAR(b_plus(d), 0.5 + 0.5 * 0.3, 1e-15);
    EXPECT_NEAR(a_plus(d), 0.5, 1e-15);
}

TEST(NoSignaling, random_local_noise_gives_zero_deltas) {
    std::mt19937_64 gen(2024);
    for (int trial = 0; trial < 200; ++trial) {
        NoiseConfig cfg = random_local_noise(gen);
        TestKind test = trial % 3 == 0 ? TestKind::C : TestKind::A;
        GateLevel level = trial % 2 ? GateLevel::Native : GateLevel::Cnot;
        for (double d : deltas(all_settings(test, cfg, level))) {
            EXPECT_NEAR(d, 0.0, 1e-12) << "trial " << trial;
        }
    }
}

TEST(NoSignaling, injection_shifts_by_epsilon) {
    std::mt19937_64 gen(7);
    for (int trial = 0; trial < 20; ++trial) {
        NoiseConfig cfg = random_local_noise(gen);
        cfg.signaling.on_b = {1e-3, -2e-3};
        cfg.signaling.on_a = {0.0, 5e-4};
        cfg.validate();
        auto d = deltas(all_settings(TestKind::A, cfg));
        EXPECT_NEAR(d[kDelta0Star], 0.0, 1e-12);
        EXPECT_NEAR(d[kDelta1Star], 5e-4, 1e-12);
        EXPECT_NEAR(d[kDeltaStar0], 1e-3, 1e-12);
        EXPECT_NEAR(d[kDeltaStar1], -2e-3, 1e-12);
    }
}

TEST(NoSignaling, injection_must_stay_a_probability) {
    NoiseConfig cfg;
    cfg.signaling.on_b = {1e-3, 0.0};
    EXPECT_THROW(cfg.validate(), ValidationError);
    cfg.qubit(Role::B).readout = {{{0.99, 0.01}, {0.02, 0.98}}};
    EXPECT_NO_THROW(cfg.validate());
    cfg.signaling.on_b = {1.5, 0.0};
    EXPECT_THROW(cfg.validate(), ValidationError);
}

TEST(NoSignaling, phase_injection_changes_correlations_not_marginals) {
    // The reduced state of B has no transverse coherence before its pulse, so a
    // setting-dependent frame on B's pulse leaves its marginal untouched.
    NoiseConfig cfg;
    cfg.qubit(Role::B).damping = 0.05;
    cfg.qubit(Role::S).depolarizing = 0.02;
    auto base = all_settings(TestKind::A, cfg);
    cfg.signaling.phase_on_b = 0.2;
    auto shifted = all_settings(TestKind::A, cfg);
    for (double d : deltas(shifted)) {
        EXPECT_NEAR(d, 0.0, 1e-12);
    }
    EXPECT_GT(std::abs(correlator(shifted[0]) - correlator(base[0])), 1e-3);
}

TEST(ZZ, never_moves_marginals) {
    NoiseConfig cfg;
    cfg.qubit(Role::A).damping = 0.1;
    cfg.qubit(Role::B).depolarizing = 0.05;
    auto base = all_settings(TestKind::A, cfg);
    for (int k = 0; k <= 16; ++k) {
        cfg.zz = {{Role::A, Role::B, k * kPi / 8}, {Role::S, Role::B, 0.3 * k}};
        auto d = all_settings(TestKind::A, cfg);
        for (size_t s = 0; s < 4; ++s) {
            EXPECT_NEAR(a_plus(d[s]), a_plus(base[s]), 1e-12);
            EXPECT_NEAR(b_plus(d[s]), b_plus(base[s]), 1e-12);
        }
    }
}

TEST(ZZ, terms_on_absent_roles_are_skipped) {
    NoiseConfig cfg;
    cfg.zz = {{Role::S, Role::B, 1.0}};
    auto d = all_settings(TestKind::B, cfg);
    EXPECT_NEAR(d[0].p[0], 0.25, 1e-15);
}

TEST(SampleCounts, small_and_degenerate) {
    OutcomeDistribution d{Setting(0, 0), {1.0, 0.0, 0.0, 0.0}};
    EXPECT_EQ(sample_counts(d, 777, 1), (OutcomeCounts{777, 0, 0, 0}));
    EXPECT_THROW(sample_counts(d, 0, 1), std::invalid_argument);
    OutcomeDistribution u{Setting(0, 0), {0.25, 0.25, 0.25, 0.25}};
    auto one = sample_counts(u, 1, 3);
    EXPECT_EQ(one[0] + one[1] + one[2] + one[3], 1u);
    EXPECT_EQ(sample_counts(u, 100, 3, 1, 2, 3), sample_counts(u, 100, 3, 1, 2, 3));
}

TEST(SampleCounts, mean_over_seeds) {
    OutcomeDistribution d = outcome_distribution(build_circuit(TestKind::A, Setting(0, 0)), {});
    const uint64_t n = 20000;
    double sum = 0;
    for (uint64_t seed = 0; seed < 1000; ++seed) {
        sum += static_cast<double>(sample_counts(d, n, seed)[0]) / n;
    }
    double mean = sum / 1000;
    double sigma = std::sqrt(d.p[0] * (1 - d.p[0]) / n / 1000);
    EXPECT_NEAR(mean, d.p[0], 5 * sigma);
}

TEST(SimulatePlan, totals_order_and_metadata) {
    PlanParams p;
    p.jobs = 4;
    p.repetitions = 3;
    p.shots = 500;
    p.seed = 1;
    p.pairs = {PairRecord{0, 2, {0, 1, 2}, 2, 1.5}, PairRecord{3, 5, {3, 4, 5}, 2, {}}};
    ExperimentPlan plan = make_plan(p);
    auto tables = simulate_plan(plan, NoiseModel{}, 42);
    ASSERT_EQ(tables.size(), 8u);
    for (size_t i = 0; i < tables.size(); ++i) {
        EXPECT_EQ(tables[i].pair, (i < 4 ? std::vector<int>{0, 1, 2} : std::vector<int>{3, 4, 5}));
        EXPECT_EQ(*tables[i].job, static_cast<int>(i % 4));
        for (size_t s = 0; s < 4; ++s) {
            EXPECT_EQ(tables[i].total(Setting::from_index(s)), 1500u);
        }
    }
    EXPECT_EQ(*tables[0].delta_f_mhz, 1.5);
    EXPECT_FALSE(tables[4].delta_f_mhz.has_value());
}

TEST(SimulatePlan, deterministic_and_thread_independent) {
    PlanParams p;
    p.jobs = 6;
    p.repetitions = 5;
    p.shots = 1000;
    p.seed = 3;
    p.pairs = {PairRecord{0, 2, {0, 1, 2}, 2, {}}, PairRecord{3, 5, {3, 4, 5}, 2, {}}};
    ExperimentPlan plan = make_plan(p);
    NoiseModel noise;
    noise.defaults.qubit(Role::A).depolarizing = 0.01;
    auto serial = simulate_plan(plan, noise, 9, 1);
    EXPECT_EQ(simulate_plan(plan, noise, 9, 1), serial);
    EXPECT_EQ(simulate_plan(plan, noise, 9, 4), serial);
    EXPECT_EQ(simulate_plan(plan, noise, 9, 64), serial);
    EXPECT_NE(simulate_plan(plan, noise, 10, 1), serial);
}

TEST(SimulatePlan, per_pair_noise_and_synthetic_pair) {
    PlanParams p;
    p.jobs = 1;
    p.repetitions = 1;
    p.shots = 100;
    p.test = TestKind::C;
    ExperimentPlan synthetic = make_plan(p);
    auto t = simulate_plan(synthetic, NoiseModel{}, 1);
    ASSERT_EQ(t.size(), 1u);
    EXPECT_TRUE(t[0].pair.empty());

    p.pairs = {PairRecord{49, 66, {49, 55, 68, 67, 66}, 4, {}}};
    ExperimentPlan plan = make_plan(p);
    NoiseModel noise;
    NoiseConfig flip;
    flip.qubit(Role::A).readout = {{{0.0, 1.0}, {0.0, 1.0}}};
    noise.per_pair["49-66"] = flip;
    auto tables = simulate_plan(plan, noise, 1);
    EXPECT_EQ(tables[0].pair, (std::vector<int>{49, 66}));
    for (size_t s = 0; s < 4; ++s) {
        EXPECT_EQ(tables[0].counts[s][0] + tables[0].counts[s][1], 0u);
    }
}

TEST(NoiseJson, round_trip_and_shorthand) {
    NoiseModel m;
    m.defaults.qubit(Role::S).depolarizing = 0.01;
    m.defaults.qubit(Role::B).readout = {{{0.97, 0.03}, {0.05, 0.95}}};
    m.defaults.zz = {{Role::A, Role::B, 0.1}};
    m.defaults.signaling.on_b = {1e-3, 0.0};
    m.defaults.signaling.phase_on_a = 0.05;
    m.per_pair["49-66"] = m.defaults;
    EXPECT_EQ(noise_model_from_json(nlohmann::json::parse(noise_model_to_json(m).dump())), m);

    auto j = nlohmann::json::parse(R"({"schema": "noise/1",
        "qubits": {"A": {"readout": [[0.98, 0.02], [0.03, 0.97]]}, "B": {"readout": [[0.98, 0.02], [0.03, 0.97]]}},
        "signaling": {"epsilon": 0.001}})");
    NoiseModel s = noise_model_from_json(j);
    EXPECT_EQ(s.defaults.signaling.on_a, (std::array<double, 2>{1e-3, 1e-3}));
    EXPECT_EQ(s.defaults.signaling.on_b, (std::array<double, 2>{1e-3, 1e-3}));

    EXPECT_THROW(noise_model_from_json(nlohmann::json::parse(R"({"schema": "noise/2"})")), ValidationError);
    EXPECT_THROW(noise_model_from_json(nlohmann::json::parse(
                     R"({"schema": "noise/1", "qubits": {"A": {"readout": [[0.9, 0.2], [0, 1]]}}})")),
                 ValidationError);
    EXPECT_THROW(noise_model_from_json(nlohmann::json::parse(R"({"schema": "noise/1", "qubits": {"Q": {}}})")),
                 ValidationError);
}
