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

#ifndef BELLSIG_GATES_H
#define BELLSIG_GATES_H

#include <complex>
#include <cstddef>
#include <optional>
#include <string>
#include <string_view>
#include <vector>

#include <Eigen/Dense>

namespace bellsig {

using Complex = std::complex<double>;
using Matrix = Eigen::MatrixXcd;

/// Absolute max-norm tolerance used for exact-entry gate algebra.
inline constexpr double kGateTolerance = 1e-12;

/// A unitary matrix on one to three qubits.
///
/// Basis ordering is |00>, |01>, |10>, |11> (and the 3-qubit analogue) with
/// the first label on the most significant bit. Construction checks
/// U^dagger U = I in Frobenius norm.
class Unitary {
   public:
    explicit Unitary(Matrix m, double tol = kGateTolerance);

    static Unitary identity(size_t dim);

    size_t dim() const {
        return static_cast<size_t>(m_.rows());
    }
    size_t num_qubits() const;
    const Matrix &matrix() const {
        return m_;
    }
    Complex operator()(size_t row, size_t col) const {
        return m_(static_cast<Eigen::Index>(row), static_cast<Eigen::Index>(col));
    }

    Unitary operator*(const Unitary &rhs) const;
    Unitary adjoint() const;
    /// e^{i phi} U.
    Unitary with_phase(double phi) const;

   private:
    struct Unchecked {};
    Unitary(Matrix m, Unchecked) : m_(std::move(m)) {
    }
    Matrix m_;
};

enum class PauliAxis { I, X, Y, Z };
enum class Direction { Down, Up };

Unitary pauli(PauliAxis axis);

/// V_theta = exp(-i theta V / 2) = cos(theta/2) - i V sin(theta/2), for V^2 = I.
Unitary rot(const Unitary &v, double theta);

/// S = sqrt(X) = (1 - i X) / sqrt(2).
Unitary s_gate();
/// Z_theta = diag(e^{-i theta/2}, e^{i theta/2}).
Unitary z_theta(double theta);
/// S_theta = Z_theta^dagger S Z_theta: the S pulse played in a frame rotated by theta.
Unitary s_theta(double theta);
Unitary hadamard();
Unitary y_plus();
Unitary y_minus();
Unitary z_plus();
Unitary z_minus();

/// CR^{+-} = (Z X)_{+-pi/4}.
Unitary cr_plus();
Unitary cr_minus();

/// ECR_down = (XI - YX) / sqrt(2). Up is the qubit-swapped version.
Unitary ecr(Direction direction);
/// ECR_down conjugated by a target-qubit frame: (I Z_phi)^dagger ECR_down (I Z_phi).
Unitary ecr_down_framed(double target_frame);
Unitary cnot(Direction direction);

/// Tensor product with `a` on the first (most significant) qubit.
Unitary kron(const Unitary &a, const Unitary &b);

/// <a'b'|G'|ab> = <b'a'|G|ba> for a two-qubit gate.
Unitary swap_qubits(const Unitary &g);

/// True iff min_phi max|u - e^{i phi} v| <= tol, with phi taken from the
/// ratio at the largest-magnitude entry of v.
bool equal_up_to_global_phase(const Unitary &u, const Unitary &v, double tol = kGateTolerance);

/// Max-norm of the difference of two matrices.
double max_abs_diff(const Matrix &a, const Matrix &b);

/// Embeds an operator acting on `targets` (first target = most significant
/// factor) into an n-qubit space with qubit 0 as the most significant bit.
Matrix embed_operator(const Matrix &op, const std::vector<size_t> &targets, size_t num_qubits);

enum class GateKind {
    S,
    STheta,
    ZTheta,
    H,
    X,
    YPlus,
    YMinus,
    ZPlus,
    ZMinus,
    EcrDown,
    EcrUp,
    EcrDownFramed,
    CnotDown,
    CnotUp,
    CrPlus,
    CrMinus,
};

/// A gate symbol with its angle, when the kind is parameterized.
class GateLabel {
   public:
    explicit GateLabel(GateKind kind);
    GateLabel(GateKind kind, double angle);

    GateKind kind() const {
        return kind_;
    }
    std::optional<double> angle() const {
        return angle_;
    }
    size_t arity() const;
    std::string name() const;

    bool operator==(const GateLabel &other) const = default;

   private:
    GateKind kind_;
    std::optional<double> angle_;
};

bool is_parameterized(GateKind kind);
size_t gate_arity(GateKind kind);
std::string_view gate_kind_name(GateKind kind);

Unitary gate_matrix(const GateLabel &label);

}  // namespace bellsig

#endif
