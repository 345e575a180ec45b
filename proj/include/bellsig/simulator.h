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

#ifndef BELLSIG_SIMULATOR_H
#define BELLSIG_SIMULATOR_H

#include <array>
#include <cstdint>
#include <vector>

#include "bellsig/circuit.h"
#include "bellsig/gates.h"
#include "bellsig/noise.h"
#include "bellsig/plan.h"
#include "bellsig/rng.h"
#include "bellsig/statistics.h"

namespace bellsig {

inline constexpr size_t kMaxSimQubits = 4;

/// Density matrix of up to four qubits; qubit 0 is the most significant bit.
class QuantumState {
   public:
    /// |0...0><0...0|.
    explicit QuantumState(size_t num_qubits);
    static QuantumState from_state_vector(const Eigen::VectorXcd &psi);
    /// Throws std::invalid_argument unless rho passes is_physical(1e-10).
    static QuantumState from_density_matrix(const Matrix &rho);

    size_t num_qubits() const {
        return num_qubits_;
    }
    const Matrix &density_matrix() const {
        return rho_;
    }

    /// rho -> U rho U^dagger on the embedded targets.
    void apply_gate(const Unitary &gate, const std::vector<size_t> &targets);
    void apply_gate(const Matrix &gate, const std::vector<size_t> &targets);
    /// rho -> sum_k K rho K^dagger. Throws std::invalid_argument unless
    /// sum_k K^dagger K = I to 1e-10.
    void apply_channel(const std::vector<Matrix> &kraus, const std::vector<size_t> &targets);

    double trace() const;
    /// Unit trace, Hermitian and eigenvalues >= -tol.
    bool is_physical(double tol) const;
    /// Diagonal of rho: basis-state probabilities.
    std::vector<double> probabilities() const;
    /// Reduced density matrix of `keep` (in that order).
    Matrix reduced(const std::vector<size_t> &keep) const;
    /// (<X>, <Y>, <Z>) of one qubit.
    std::array<double, 3> bloch_vector(size_t qubit) const;

   private:
    QuantumState(size_t n, Matrix rho);

    size_t num_qubits_;
    Matrix rho_;
};

/// (1 - p) rho + p I/2 as Kraus operators.
std::vector<Matrix> depolarizing_kraus(double p);
/// |1> decays to |0> with probability gamma.
std::vector<Matrix> amplitude_damping_kraus(double gamma);
/// exp(-i phase Z Z / 2).
Matrix zz_phase(double phase);

/// P(AB) in the order ++, +-, -+, -- for one setting.
struct OutcomeDistribution {
    Setting setting{};
    std::array<double, 4> p{};
};

/// Evolves the circuit from |0...0> under the configured noise: phase
/// injection on the readout pulses, gate noise after every gate, ZZ terms in
/// the measurement window, then per-qubit readout confusion with the
/// setting-dependent injection shift.
OutcomeDistribution outcome_distribution(const Circuit &circuit, const NoiseConfig &noise);

/// One multinomial draw of size n (n >= 1) on a fresh Philox stream
/// (seed; stream_a, stream_b, stream_c).
OutcomeCounts sample_counts(const OutcomeDistribution &dist, uint64_t n, uint64_t seed, uint64_t stream_a = 0,
                            uint64_t stream_b = 0, uint64_t stream_c = 0);

/// Simulates every (pair, job) of the plan. Each circuit draws `shots`
/// samples from the stream (seed; pair index, job, circuit index), so the
/// result does not depend on `threads`. Output is ordered by pair, then job. A plan without pairs is
/// simulated once with an empty pair and the default noise.
std::vector<CountsTable> simulate_plan(const ExperimentPlan &plan, const NoiseModel &noise, uint64_t seed,
                                       unsigned threads = 1);

/// Device ids recorded in a CountsTable for a pair: the full A-S-B path when
/// the path has three nodes, otherwise (A, B).
std::vector<int> pair_ids(const PairRecord &pair);

}  // namespace bellsig

#endif
