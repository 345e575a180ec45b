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

#ifndef BELLSIG_TRANSPILER_H
#define BELLSIG_TRANSPILER_H

#include <cstddef>
#include <map>
#include <string>
#include <utility>
#include <vector>

#include "bellsig/gates.h"

namespace bellsig {

struct GateOp {
    GateLabel label;
    std::vector<size_t> targets;

    bool operator==(const GateOp &other) const = default;
};

/// An ordered gate list (first op acts first) plus a per-qubit Z frame that is
/// still pending after the last op. The full operator is
/// (tensor_q Z_{frame(q)}) * G_last * ... * G_first.
class GateSeq {
   public:
    GateSeq() = default;

    void append(GateLabel label, std::vector<size_t> targets);
    void append(const GateOp &op) {
        append(op.label, op.targets);
    }

    const std::vector<GateOp> &ops() const & {
        return ops_;
    }
    // By value on temporaries, so `for (op : f().ops())` does not dangle.
    std::vector<GateOp> ops() && {
        return std::move(ops_);
    }
    std::vector<GateOp> &mutable_ops() {
        return ops_;
    }
    size_t size() const {
        return ops_.size();
    }
    bool empty() const {
        return ops_.empty();
    }
    /// One past the largest target index used (by ops or frames).
    size_t min_num_qubits() const;

    double frame(size_t qubit) const;
    const std::map<size_t, double> &frames() const {
        return frames_;
    }
    /// Adds `angle` to the pending frame of `qubit`, reduced mod 2*pi.
    void add_frame(size_t qubit, double angle);

    bool operator==(const GateSeq &other) const = default;

   private:
    std::vector<GateOp> ops_;
    std::map<size_t, double> frames_;
};

/// CNOT in the native set {X, S, Z+, ECR_down} (down) or {Z-, H, S, ECR_down} (up),
/// on qubits 0 and 1.
GateSeq transpile_cnot(Direction direction);
/// ECR_up = (HH) ECR_down (Y+ Y-) on qubits 0 and 1.
GateSeq transpile_ecr_up();

/// Renames qubit i of `seq` to mapping[i].
GateSeq remap_qubits(const GateSeq &seq, const std::vector<size_t> &mapping);

/// Rewrites H, X, Y+-, Z+-, S_theta and the framed ECR into {S, Z_theta, ECR_down}.
/// Throws std::invalid_argument on CNOT, ECR_up or CR labels.
GateSeq expand_to_pulses(const GateSeq &seq);

/// Absorbs every Z_theta into the frames of later pulses: each S becomes
/// S_theta(frame), frames pass through ECR_down's control with a sign flip and
/// become the ECR_down_theta parameter on its target. Remaining frames are
/// left in the accumulator. Preserves the operator including the frames.
GateSeq compile_virtual_z(const GateSeq &seq);

/// Replaces CNOTs and ECR_up by their ECR_down forms, then compiles virtual Z.
GateSeq lower_to_native(const GateSeq &seq);

/// Ordered product of the embedded gate matrices; pending frames are ignored.
Unitary seq_to_unitary(const GateSeq &seq, size_t num_qubits);
/// tensor_q Z_{frame(q)} on `num_qubits` qubits.
Unitary frame_unitary(const GateSeq &seq, size_t num_qubits);

size_t count_two_qubit_gates(const GateSeq &seq);

/// One gate per line: `NAME(theta) q[i] q[j]`, angles printed with 12 significant digits.
std::string dump(const GateSeq &seq);

struct GateIdentity {
    std::string name;
    Unitary lhs;
    Unitary rhs;
};

struct IdentityResult {
    std::string name;
    double phase_residual;
    bool passed;
};

/// The ECR/CNOT relations of the native gate set, each as a pair of unitaries
/// that must agree up to global phase.
std::vector<GateIdentity> native_gate_identities();
std::vector<IdentityResult> verify_identities(double tol);

}  // namespace bellsig

#endif
