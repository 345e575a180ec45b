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

#include "bellsig/gates.h"

#include <cmath>
#include <numbers>
#include <stdexcept>

namespace bellsig {

namespace {

constexpr Complex kI{0.0, 1.0};
const double kInvSqrt2 = 1.0 / std::numbers::sqrt2;

Matrix mat2(Complex a, Complex b, Complex c, Complex d) {
    Matrix m(2, 2);
    m << a, b, c, d;
    return m;
}

bool valid_dim(Eigen::Index d) {
    return d == 2 || d == 4 || d == 8;
}

}  // namespace

Unitary::Unitary(Matrix m, double tol) : m_(std::move(m)) {
    if (m_.rows() != m_.cols() || !valid_dim(m_.rows())) {
        throw std::invalid_argument("Unitary: dimension must be 2, 4 or 8, got " + std::to_string(m_.rows()) + "x" +
                                    std::to_string(m_.cols()));
    }
    Matrix residual = m_.adjoint() * m_ - Matrix::Identity(m_.rows(), m_.cols());
    if (residual.norm() > tol) {
        throw std::invalid_argument("Unitary: matrix is not unitary (||U^+U - I|| = " + std::to_string(residual.norm()) +
                                    ")");
    }
}

Unitary Unitary::identity(size_t dim) {
    auto d = static_cast<Eigen::Index>(dim);
    return Unitary(Matrix::Identity(d, d));
}

size_t Unitary::num_qubits() const {
    switch (m_.rows()) {
        case 2:
            return 1;
        case 4:
            return 2;
        default:
            return 3;
    }
}

Unitary Unitary::operator*(const Unitary &rhs) const {
    if (dim() != rhs.dim()) {
        throw std::invalid_argument("Unitary product: dimension mismatch");
    }
    return Unitary(m_ * rhs.m_, Unchecked{});
}

Unitary Unitary::adjoint() const {
    return Unitary(m_.adjoint(), Unchecked{});
}

Unitary Unitary::with_phase(double phi) const {
    return Unitary(std::polar(1.0, phi) * m_, Unchecked{});
}

Unitary pauli(PauliAxis axis) {
    switch (axis) {
        case PauliAxis::I:
            return Unitary(mat2(1, 0, 0, 1));
        case PauliAxis::X:
            return Unitary(mat2(0, 1, 1, 0));
        case PauliAxis::Y:
            return Unitary(mat2(0, -kI, kI, 0));
        case PauliAxis::Z:
            return Unitary(mat2(1, 0, 0, -1));
    }
    throw std::invalid_argument("pauli: unknown axis");
}

Unitary rot(const Unitary &v, double theta) {
    const Matrix &m = v.matrix();
    Matrix id = Matrix::Identity(m.rows(), m.cols());
    if (max_abs_diff(m * m, id) > kGateTolerance) {
        throw std::invalid_argument("rot: generator does not square to the identity");
    }
    return Unitary(std::cos(theta / 2) * id - kI * std::sin(theta / 2) * m);
}

Unitary s_gate() {
    return Unitary(kInvSqrt2 * mat2(1, -kI, -kI, 1));
}

Unitary z_theta(double theta) {
    return Unitary(mat2(std::polar(1.0, -theta / 2), 0, 0, std::polar(1.0, theta / 2)));
}

Unitary s_theta(double theta) {
    Unitary z = z_theta(theta);
    return z.adjoint() * s_gate() * z;
}

Unitary hadamard() {
    return Unitary(kInvSqrt2 * mat2(1, 1, 1, -1));
}

Unitary y_plus() {
    return rot(pauli(PauliAxis::Y), std::numbers::pi / 2);
}

Unitary y_minus() {
    return rot(pauli(PauliAxis::Y), -std::numbers::pi / 2);
}

Unitary z_plus() {
    return z_theta(std::numbers::pi / 2);
}

Unitary z_minus() {
    return z_theta(-std::numbers::pi / 2);
}

Unitary cr_plus() {
    return rot(kron(pauli(PauliAxis::Z), pauli(PauliAxis::X)), std::numbers::pi / 4);
}

Unitary cr_minus() {
    return rot(kron(pauli(PauliAxis::Z), pauli(PauliAxis::X)), -std::numbers::pi / 4);
}

Unitary ecr(Direction direction) {
    Matrix m(4, 4);
    // clang-format off
    m << 0,   0,   1,   kI,
         0,   0,   kI,  1,
         1,   -kI, 0,   0,
         -kI, 1,   0,   0;
    // clang-format on
    Unitary down(kInvSqrt2 * m);
    return direction == Direction::Down ? down : swap_qubits(down);
}

Unitary ecr_down_framed(double target_frame) {
    Unitary frame = kron(pauli(PauliAxis::I), z_theta(target_frame));
    return frame.adjoint() * ecr(Direction::Down) * frame;
}

Unitary cnot(Direction direction) {
    Matrix m = Matrix::Zero(4, 4);
    m(0, 0) = 1;
    m(1, 1) = 1;
    m(2, 3) = 1;
    m(3, 2) = 1;
    Unitary down(m);
    return direction == Direction::Down ? down : swap_qubits(down);
}

Unitary kron(const Unitary &a, const Unitary &b) {
    const Matrix &x = a.matrix();
    const Matrix &y = b.matrix();
    if (x.rows() * y.rows() > 8) {
        throw std::invalid_argument("kron: result exceeds three qubits");
    }
    Matrix out(x.rows() * y.rows(), x.cols() * y.cols());
    for (Eigen::Index i = 0; i < x.rows(); ++i) {
        for (Eigen::Index j = 0; j < x.cols(); ++j) {
            out.block(i * y.rows(), j * y.cols(), y.rows(), y.cols()) = x(i, j) * y;
        }
    }
    return Unitary(std::move(out));
}

Unitary swap_qubits(const Unitary &g) {
    if (g.dim() != 4) {
        throw std::invalid_argument("swap_qubits: expected a two-qubit gate");
    }
    auto swapped = [](Eigen::Index ab) {
        return ((ab & 1) << 1) | (ab >> 1);
    };
    Matrix out(4, 4);
    for (Eigen::Index r = 0; r < 4; ++r) {
        for (Eigen::Index c = 0; c < 4; ++c) {
            out(r, c) = g.matrix()(swapped(r), swapped(c));
        }
    }
    return Unitary(std::move(out));
}

double max_abs_diff(const Matrix &a, const Matrix &b) {
    if (a.rows() != b.rows() || a.cols() != b.cols()) {
        throw std::invalid_argument("max_abs_diff: dimension mismatch");
    }
    return (a - b).cwiseAbs().maxCoeff();
}

bool equal_up_to_global_phase(const Unitary &u, const Unitary &v, double tol) {
    if (u.dim() != v.dim()) {
        return false;
    }
    Eigen::Index r = 0;
    Eigen::Index c = 0;
    v.matrix().cwiseAbs().maxCoeff(&r, &c);
    Complex ref_u = u.matrix()(r, c);
    if (std::abs(ref_u) == 0.0) {
        return false;
    }
    Complex phase = ref_u / v.matrix()(r, c);
    phase /= std::abs(phase);
    return max_abs_diff(u.matrix(), phase * v.matrix()) <= tol;
}

Matrix embed_operator(const Matrix &op, const std::vector<size_t> &targets, size_t num_qubits) {
    const size_t k = targets.size();
    if (op.rows() != op.cols() || op.rows() != (Eigen::Index{1} << k)) {
        throw std::invalid_argument("embed_operator: operator size does not match target count");
    }
    for (size_t i = 0; i < k; ++i) {
        if (targets[i] >= num_qubits) {
            throw std::invalid_argument("embed_operator: target " + std::to_string(targets[i]) + " out of range");
        }
        for (size_t j = 0; j < i; ++j) {
            if (targets[i] == targets[j]) {
                throw std::invalid_argument("embed_operator: repeated target");
            }
        }
    }
    const size_t dim = size_t{1} << num_qubits;
    size_t target_mask = 0;
    for (size_t t : targets) {
        target_mask |= size_t{1} << (num_qubits - 1 - t);
    }
    auto local_index = [&](size_t full) {
        size_t idx = 0;
        for (size_t t : targets) {
            idx = (idx << 1) | ((full >> (num_qubits - 1 - t)) & 1);
        }
        return idx;
    };
    Matrix out = Matrix::Zero(static_cast<Eigen::Index>(dim), static_cast<Eigen::Index>(dim));
    for (size_t r = 0; r < dim; ++r) {
        for (size_t c = 0; c < dim; ++c) {
            if ((r & ~target_mask) != (c & ~target_mask)) {
                continue;
            }
            out(static_cast<Eigen::Index>(r), static_cast<Eigen::Index>(c)) =
                op(static_cast<Eigen::Index>(local_index(r)), static_cast<Eigen::Index>(local_index(c)));
        }
    }
    return out;
}

bool is_parameterized(GateKind kind) {
    return kind == GateKind::STheta || kind == GateKind::ZTheta || kind == GateKind::EcrDownFramed;
}

size_t gate_arity(GateKind kind) {
    switch (kind) {
        case GateKind::EcrDown:
        case GateKind::EcrUp:
        case GateKind::EcrDownFramed:
        case GateKind::CnotDown:
        case GateKind::CnotUp:
        case GateKind::CrPlus:
        case GateKind::CrMinus:
            return 2;
        default:
            return 1;
    }
}

std::string_view gate_kind_name(GateKind kind) {
    switch (kind) {
        case GateKind::S:
            return "S";
        case GateKind::STheta:
            return "S_theta";
        case GateKind::ZTheta:
            return "Z_theta";
        case GateKind::H:
            return "H";
        case GateKind::X:
            return "X";
        case GateKind::YPlus:
            return "Y+";
        case GateKind::YMinus:
            return "Y-";
        case GateKind::ZPlus:
            return "Z+";
        case GateKind::ZMinus:
            return "Z-";
        case GateKind::EcrDown:
            return "ECR_down";
        case GateKind::EcrUp:
            return "ECR_up";
        case GateKind::EcrDownFramed:
            return "ECR_down_theta";
        case GateKind::CnotDown:
            return "CNOT_down";
        case GateKind::CnotUp:
            return "CNOT_up";
        case GateKind::CrPlus:
            return "CR+";
        case GateKind::CrMinus:
            return "CR-";
    }
    return "?";
}

GateLabel::GateLabel(GateKind kind) : kind_(kind) {
    if (is_parameterized(kind)) {
        throw std::invalid_argument(std::string("GateLabel: ") + std::string(gate_kind_name(kind)) +
                                    " requires an angle");
    }
}

GateLabel::GateLabel(GateKind kind, double angle) : kind_(kind), angle_(angle) {
    if (!is_parameterized(kind)) {
        throw std::invalid_argument(std::string("GateLabel: ") + std::string(gate_kind_name(kind)) +
                                    " takes no angle");
    }
    if (!std::isfinite(angle)) {
        throw std::invalid_argument("GateLabel: angle must be finite");
    }
}

size_t GateLabel::arity() const {
    return gate_arity(kind_);
}

std::string GateLabel::name() const {
    return std::string(gate_kind_name(kind_));
}

Unitary gate_matrix(const GateLabel &label) {
    switch (label.kind()) {
        case GateKind::S:
            return s_gate();
        case GateKind::STheta:
            return s_theta(*label.angle());
        case GateKind::ZTheta:
            return z_theta(*label.angle());
        case GateKind::H:
            return hadamard();
        case GateKind::X:
            return pauli(PauliAxis::X);
        case GateKind::YPlus:
            return y_plus();
        case GateKind::YMinus:
            return y_minus();
        case GateKind::ZPlus:
            return z_plus();
        case GateKind::ZMinus:
            return z_minus();
        case GateKind::EcrDown:
            return ecr(Direction::Down);
        case GateKind::EcrUp:
            return ecr(Direction::Up);
        case GateKind::EcrDownFramed:
            return ecr_down_framed(*label.angle());
        case GateKind::CnotDown:
            return cnot(Direction::Down);
        case GateKind::CnotUp:
            return cnot(Direction::Up);
        case GateKind::CrPlus:
            return cr_plus();
        case GateKind::CrMinus:
            return cr_minus();
    }
    throw std::invalid_argument("gate_matrix: unknown gate kind");
}

}  // namespace bellsig
