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

#include <algorithm>
#include <atomic>
#include <exception>
#include <mutex>
#include <cmath>
#include <stdexcept>
#include <thread>

#include <Eigen/Eigenvalues>

#include "bellsig/sampling.h"

namespace bellsig {

namespace {

constexpr double kKrausTolerance = 1e-10;

Matrix pauli_matrix(PauliAxis axis) {
    return pauli(axis).matrix();
}

}  // namespace

QuantumState::QuantumState(size_t num_qubits) : num_qubits_(num_qubits) {
    if (num_qubits == 0 || num_qubits > kMaxSimQubits) {
        throw std::invalid_argument("QuantumState: between 1 and 4 qubits supported");
    }
    const auto dim = static_cast<Eigen::Index>(1) << num_qubits;
    rho_ = Matrix::Zero(dim, dim);
    rho_(0, 0) = 1.0;
}

QuantumState::QuantumState(size_t n, Matrix rho) : num_qubits_(n), rho_(std::move(rho)) {
}

QuantumState QuantumState::from_state_vector(const Eigen::VectorXcd &psi) {
    const auto dim = psi.size();
    size_t n = 0;
    while ((Eigen::Index{1} << n) < dim) {
        ++n;
    }
    if ((Eigen::Index{1} << n) != dim || n == 0 || n > kMaxSimQubits) {
        throw std::invalid_argument("from_state_vector: length must be 2, 4, 8 or 16");
    }
    if (std::abs(psi.squaredNorm() - 1.0) > 1e-10) {
        throw std::invalid_argument("from_state_vector: state is not normalized");
    }
    return QuantumState(n, psi * psi.adjoint());
}

QuantumState QuantumState::from_density_matrix(const Matrix &rho) {
    const auto dim = rho.rows();
    size_t n = 0;
    while ((Eigen::Index{1} << n) < dim) {
        ++n;
    }
    if (rho.cols() != dim || (Eigen::Index{1} << n) != dim || n == 0 || n > kMaxSimQubits) {
        throw std::invalid_argument("from_density_matrix: must be square of size 2, 4, 8 or 16");
    }
    QuantumState s(n, rho);
    if (!s.is_physical(1e-10)) {
        throw std::invalid_argument("from_density_matrix: not a density matrix");
    }
    return s;
}

void QuantumState::apply_gate(const Unitary &gate, const std::vector<size_t> &targets) {
    apply_gate(gate.matrix(), targets);
}

void QuantumState::apply_gate(const Matrix &gate, const std::vector<size_t> &targets) {
    if (gate.rows() != (Eigen::Index{1} << targets.size())) {
        throw std::invalid_argument("apply_gate: gate dimension does not match the number of targets");
    }
    Matrix u = embed_operator(gate, targets, num_qubits_);
    rho_ = u * rho_ * u.adjoint();
}

void QuantumState::apply_channel(const std::vector<Matrix> &kraus, const std::vector<size_t> &targets) {
    if (kraus.empty()) {
        throw std::invalid_argument("apply_channel: empty Kraus set");
    }
    const auto local_dim = Eigen::Index{1} << targets.size();
    Matrix completeness = Matrix::Zero(local_dim, local_dim);
    for (const auto &k : kraus) {
        if (k.rows() != local_dim || k.cols() != local_dim) {
            throw std::invalid_argument("apply_channel: Kraus operator dimension does not match the targets");
        }
        completeness += k.adjoint() * k;
    }
    if ((completeness - Matrix::Identity(local_dim, local_dim)).cwiseAbs().maxCoeff() > kKrausTolerance) {
        throw std::invalid_argument("apply_channel: Kraus set is not trace preserving");
    }
    Matrix out = Matrix::Zero(rho_.rows(), rho_.cols());
    for (const auto &k : kraus) {
        Matrix big = embed_operator(k, targets, num_qubits_);
        out += big * rho_ * big.adjoint();
    }
    rho_ = std::move(out);
}

double QuantumState::trace() const {
    return rho_.trace().real();
}

bool QuantumState::is_physical(double tol) const {
    if (std::abs(rho_.trace() - Complex(1.0, 0.0)) > tol) {
        return false;
    }
    if ((rho_ - rho_.adjoint()).cwiseAbs().maxCoeff() > tol) {
        return false;
    }
    Eigen::SelfAdjointEigenSolver<Matrix> solver(rho_, Eigen::EigenvaluesOnly);
    return solver.eigenvalues().minCoeff() >= -tol;
}

std::vector<double> QuantumState::probabilities() const {
    std::vector<double> p(static_cast<size_t>(rho_.rows()));
    for (Eigen::Index i = 0; i < rho_.rows(); ++i) {
        p[static_cast<size_t>(i)] = rho_(i, i).real();
    }
    return p;
}

Matrix QuantumState::reduced(const std::vector<size_t> &keep) const {
    const size_t n = num_qubits_;
    for (size_t i = 0; i < keep.size(); ++i) {
        if (keep[i] >= n) {
            throw std::invalid_argument("reduced: qubit out of range");
        }
        for (size_t j = 0; j < i; ++j) {
            if (keep[i] == keep[j]) {
                throw std::invalid_argument("reduced: repeated qubit");
            }
        }
    }
    size_t keep_mask = 0;
    for (size_t q : keep) {
        keep_mask |= size_t{1} << (n - 1 - q);
    }
    auto local = [&](size_t full) {
        size_t idx = 0;
        for (size_t q : keep) {
            idx = (idx << 1) | ((full >> (n - 1 - q)) & 1);
        }
        return idx;
    };
    const auto k = Eigen::Index{1} << keep.size();
    Matrix out = Matrix::Zero(k, k);
    const size_t dim = size_t{1} << n;
    for (size_t r = 0; r < dim; ++r) {
        for (size_t c = 0; c < dim; ++c) {
            // Traced-out bits must agree.
            if ((r & ~keep_mask) != (c & ~keep_mask)) {
                continue;
            }
            out(static_cast<Eigen::Index>(local(r)), static_cast<Eigen::Index>(local(c))) +=
                rho_(static_cast<Eigen::Index>(r), static_cast<Eigen::Index>(c));
        }
    }
    return out;
}

std::array<double, 3> QuantumState::bloch_vector(size_t qubit) const {
    Matrix r = reduced({qubit});
    return {(r * pauli_matrix(PauliAxis::X)).trace().real(), (r * pauli_matrix(PauliAxis::Y)).trace().real(),
            (r * pauli_matrix(PauliAxis::Z)).trace().real()};
}

std::vector<Matrix> depolarizing_kraus(double p) {
    if (!(p >= 0.0 && p <= 1.0)) {
        throw std::invalid_argument("depolarizing_kraus: p must lie in [0, 1]");
    }
    std::vector<Matrix> k;
    k.push_back(std::sqrt(1.0 - 0.75 * p) * Matrix::Identity(2, 2));
    for (PauliAxis a : {PauliAxis::X, PauliAxis::Y, PauliAxis::Z}) {
        k.push_back(std::sqrt(0.25 * p) * pauli_matrix(a));
    }
    return k;
}

std::vector<Matrix> amplitude_damping_kraus(double gamma) {
    if (!(gamma >= 0.0 && gamma <= 1.0)) {
        throw std::invalid_argument("amplitude_damping_kraus: gamma must lie in [0, 1]");
    }
    Matrix k0 = Matrix::Zero(2, 2);
    k0(0, 0) = 1.0;
    k0(1, 1) = std::sqrt(1.0 - gamma);
    Matrix k1 = Matrix::Zero(2, 2);
    k1(0, 1) = std::sqrt(gamma);
    return {k0, k1};
}

Matrix zz_phase(double phase) {
    Matrix m = Matrix::Zero(4, 4);
    const Complex even = std::polar(1.0, -phase / 2);
    const Complex odd = std::polar(1.0, phase / 2);
    m(0, 0) = even;
    m(1, 1) = odd;
    m(2, 2) = odd;
    m(3, 3) = even;
    return m;
}

OutcomeDistribution outcome_distribution(const Circuit &circuit, const NoiseConfig &noise) {
    const size_t qa = circuit.qubit_a();
    const size_t qb = circuit.qubit_b();
    const int a = circuit.setting.a;
    const int b = circuit.setting.b;
    const SignalingInjection &inj = noise.signaling;

    std::vector<const QubitNoise *> local_noise(circuit.num_qubits, nullptr);
    for (Role r : {Role::A, Role::S, Role::B}) {
        if (auto q = circuit.qubit(r)) {
            local_noise[*q] = &noise.qubit(r);
        }
    }

    // Setting-dependent frame shift of each party's readout pulse.
    std::array<double, 2> readout_shift{inj.phase_on_a * (b - 0.5), inj.phase_on_b * (a - 0.5)};

    QuantumState state(circuit.num_qubits);
    const auto &ops = circuit.gates.ops();
    for (size_t i = 0; i < ops.size(); ++i) {
        GateLabel label = ops[i].label;
        for (size_t party = 0; party < 2; ++party) {
            if (i != circuit.readout_gate[party] || readout_shift[party] == 0.0) {
                continue;
            }
            if (label.kind() == GateKind::S) {
                label = GateLabel(GateKind::STheta, readout_shift[party]);
            } else if (label.kind() == GateKind::STheta) {
                label = GateLabel(GateKind::STheta, *label.angle() + readout_shift[party]);
            } else {
                throw std::logic_error("readout gate is not an S pulse");
            }
        }
        state.apply_gate(gate_matrix(label), ops[i].targets);
        for (size_t t : ops[i].targets) {
            const QubitNoise *qn = local_noise[t];
            if (qn == nullptr) {
                continue;
            }
            if (qn->depolarizing > 0.0) {
                state.apply_channel(depolarizing_kraus(qn->depolarizing), {t});
            }
            if (qn->damping > 0.0) {
                state.apply_channel(amplitude_damping_kraus(qn->damping), {t});
            }
        }
    }
    for (const auto &term : noise.zz) {
        auto q1 = circuit.qubit(term.first);
        auto q2 = circuit.qubit(term.second);
        if (!q1 || !q2 || *q1 == *q2 || term.phase == 0.0) {
            continue;
        }
        state.apply_gate(zz_phase(term.phase), {*q1, *q2});
    }

    Matrix ab = state.reduced({qa, qb});
    std::array<double, 4> truth{};
    for (size_t k = 0; k < 4; ++k) {
        truth[k] = std::max(0.0, ab(static_cast<Eigen::Index>(k), static_cast<Eigen::Index>(k)).real());
    }

    // reported[party][true bit][reported bit]
    std::array<Confusion, 2> reported{noise.qubit(Role::A).readout, noise.qubit(Role::B).readout};
    const std::array<double, 2> plus_shift{inj.on_a[a] * (0.5 - b), inj.on_b[b] * (0.5 - a)};
    for (size_t party = 0; party < 2; ++party) {
        for (size_t t = 0; t < 2; ++t) {
            reported[party][t][0] += plus_shift[party];
            reported[party][t][1] -= plus_shift[party];
        }
    }

    OutcomeDistribution dist;
    dist.setting = circuit.setting;
    for (size_t ta = 0; ta < 2; ++ta) {
        for (size_t tb = 0; tb < 2; ++tb) {
            const double pt = truth[2 * ta + tb];
            for (size_t xa = 0; xa < 2; ++xa) {
                for (size_t xb = 0; xb < 2; ++xb) {
                    dist.p[2 * xa + xb] += pt * reported[0][ta][xa] * reported[1][tb][xb];
                }
            }
        }
    }
    return dist;
}

OutcomeCounts sample_counts(const OutcomeDistribution &dist, uint64_t n, uint64_t seed, uint64_t stream_a,
                            uint64_t stream_b, uint64_t stream_c) {
    if (n == 0) {
        throw std::invalid_argument("sample_counts: need at least one sample");
    }
    PhiloxStream rng(seed, stream_a, stream_b, stream_c);
    return sample_multinomial(rng, n, dist.p);
}

std::vector<int> pair_ids(const PairRecord &pair) {
    if (pair.path.size() == 3) {
        return pair.path;
    }
    return {pair.a, pair.b};
}

std::vector<CountsTable> simulate_plan(const ExperimentPlan &plan, const NoiseModel &noise, uint64_t seed,
                                       unsigned threads) {
    plan.validate();
    struct PairWork {
        std::vector<int> ids;
        std::optional<double> delta_f;
        std::array<OutcomeDistribution, 4> dist;
    };
    std::vector<PairWork> work;
    auto prepare = [&](const NoiseConfig &cfg, PairWork w) {
        cfg.validate();
        for (size_t s = 0; s < 4; ++s) {
            Circuit c = build_circuit(plan.test, Setting::from_index(s), plan.angles, plan.gate_level);
            w.dist[s] = outcome_distribution(c, cfg);
        }
        work.push_back(std::move(w));
    };
    if (plan.pairs.empty()) {
        prepare(noise.defaults, PairWork{});
    }
    for (const auto &p : plan.pairs) {
        prepare(noise.for_pair(p.label()), PairWork{pair_ids(p), p.delta_f_mhz, {}});
    }

    const size_t jobs = static_cast<size_t>(plan.jobs);
    std::vector<CountsTable> out(work.size() * jobs);
    auto run_task = [&](size_t task) {
        const size_t pi = task / jobs;
        const size_t job = task % jobs;
        CountsTable &t = out[task];
        t.pair = work[pi].ids;
        t.test = plan.test;
        t.job = static_cast<int>(job);
        t.delta_f_mhz = work[pi].delta_f;
        const auto &order = plan.job_orders[job];
        for (size_t c = 0; c < order.size(); ++c) {
            const Setting s = order[c];
            t.add(s, sample_counts(work[pi].dist[s.index()], static_cast<uint64_t>(plan.shots), seed, pi, job, c));
        }
    };

    const size_t tasks = out.size();
    const unsigned n_threads = std::max(1u, std::min<unsigned>(threads, static_cast<unsigned>(tasks)));
    if (n_threads <= 1) {
        for (size_t i = 0; i < tasks; ++i) {
            run_task(i);
        }
        return out;
    }
    std::atomic<size_t> next{0};
    std::vector<std::thread> pool;
    std::exception_ptr failure;
    std::mutex failure_mutex;
    for (unsigned w = 0; w < n_threads; ++w) {
        pool.emplace_back([&] {
            for (size_t i = next++; i < tasks; i = next++) {
                try {
                    run_task(i);
                } catch (...) {
                    std::lock_guard<std::mutex> lock(failure_mutex);
                    if (!failure) {
                        failure = std::current_exception();
                    }
                }
            }
        });
    }
    for (auto &th : pool) {
        th.join();
    }
    if (failure) {
        std::rethrow_exception(failure);
    }
    return out;
}

}  // namespace bellsig
