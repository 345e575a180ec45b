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
#include <random>

#include "gtest/gtest.h"

using namespace bellsig;

namespace {

const Complex I1{0.0, 1.0};
const double R2 = 1.0 / std::sqrt(2.0);

Matrix mat2(Complex a, Complex b, Complex c, Complex d) {
    Matrix m(2, 2);
    m << a, b, c, d;
    return m;
}

// exp(-i t n.sigma / 2), built directly from Pauli matrices.
Matrix axis_rotation(double nx, double ny, double nz, double t) {
    Matrix x = mat2(0, 1, 1, 0);
    Matrix y = mat2(0, -I1, I1, 0);
    Matrix z = mat2(1, 0, 0, -1);
    Matrix n = nx * x + ny * y + nz * z;
    return std::cos(t / 2) * Matrix::Identity(2, 2) - I1 * std::sin(t / 2) * n;
}

}  // namespace

TEST(Unitary, rejects_non_unitary_and_bad_sizes) {
    EXPECT_THROW(Unitary(mat2(1, 1, 0, 1)), std::invalid_argument);
    EXPECT_THROW(Unitary(Matrix::Identity(3, 3)), std::invalid_argument);
    EXPECT_THROW(Unitary(Matrix::Identity(16, 16)), std::invalid_argument);
    EXPECT_NO_THROW(Unitary(Matrix::Identity(8, 8)));
    EXPECT_EQ(Unitary::identity(4).num_qubits(), 2u);
}

TEST(Gates, s_matches_sqrt_x) {
    Matrix expected = R2 * mat2(1, -I1, -I1, 1);
    EXPECT_LT(max_abs_diff(s_gate().matrix(), expected), 1e-15);
    Unitary s2 = s_gate() * s_gate();
    EXPECT_LT(max_abs_diff(s2.matrix(), -I1 * pauli(PauliAxis::X).matrix()), 1e-15);
}

TEST(Gates, s_on_zero_gives_minus_i_one) {
    Eigen::Vector2cd psi = s_gate().matrix() * Eigen::Vector2cd(1, 0);
    EXPECT_NEAR(std::abs(psi(0) - R2), 0, 1e-15);
    EXPECT_NEAR(std::abs(psi(1) + I1 * R2), 0, 1e-15);
}

TEST(Gates, z_theta_entries) {
    Unitary z = z_theta(0.3);
    EXPECT_NEAR(std::abs(z(0, 0) - std::polar(1.0, -0.15)), 0, 1e-15);
    EXPECT_NEAR(std::abs(z(1, 1) - std::polar(1.0, 0.15)), 0, 1e-15);
    EXPECT_EQ(z(0, 1), Complex(0));
}

TEST(Gates, s_theta_rotates_about_cos_minus_sin_axis) {
    std::mt19937_64 gen(3);
    std::uniform_real_distribution<double> angle(-7.0, 7.0);
    for (int k = 0; k < 50; ++k) {
        double t = angle(gen);
        Matrix expected = axis_rotation(std::cos(t), -std::sin(t), 0, std::numbers::pi / 2);
        EXPECT_LT(max_abs_diff(s_theta(t).matrix(), expected), 1e-13) << t;
    }
    EXPECT_LT(max_abs_diff(s_theta(0).matrix(), s_gate().matrix()), 1e-15);
}

TEST(Gates, rot_requires_involution) {
    EXPECT_THROW(rot(s_gate(), 1.0), std::invalid_argument);
    Unitary r = rot(pauli(PauliAxis::Z), 0.7);
    EXPECT_LT(max_abs_diff(r.matrix(), z_theta(0.7).matrix()), 1e-15);
}

TEST(Gates, named_single_qubit_gates) {
    EXPECT_LT(max_abs_diff(hadamard().matrix(), R2 * mat2(1, 1, 1, -1)), 1e-15);
    EXPECT_TRUE(equal_up_to_global_phase(z_plus(), z_theta(std::numbers::pi / 2)));
    EXPECT_TRUE(equal_up_to_global_phase(z_minus(), z_theta(-std::numbers::pi / 2)));
    EXPECT_TRUE(equal_up_to_global_phase(y_plus(), Unitary(axis_rotation(0, 1, 0, std::numbers::pi / 2))));
    EXPECT_TRUE(equal_up_to_global_phase(y_minus(), Unitary(axis_rotation(0, 1, 0, -std::numbers::pi / 2))));
}

TEST(Gates, ecr_down_explicit_matrix) {
    Matrix m(4, 4);
    m << 0, 0, 1, I1, 0, 0, I1, 1, 1, -I1, 0, 0, -I1, 1, 0, 0;
    EXPECT_LT(max_abs_diff(ecr(Direction::Down).matrix(), R2 * m), 1e-15);
    EXPECT_LT(max_abs_diff((ecr(Direction::Down) * ecr(Direction::Down)).matrix(), Matrix::Identity(4, 4)), 1e-15);
}

TEST(Gates, ecr_up_is_swapped_down) {
    Matrix swap = Matrix::Zero(4, 4);
    swap(0, 0) = swap(1, 2) = swap(2, 1) = swap(3, 3) = 1;
    Matrix expected = swap * ecr(Direction::Down).matrix() * swap;
    EXPECT_LT(max_abs_diff(ecr(Direction::Up).matrix(), expected), 1e-15);
}

TEST(Gates, cnot_matrices) {
    Matrix down = Matrix::Zero(4, 4);
    down(0, 0) = down(1, 1) = down(2, 3) = down(3, 2) = 1;
    Matrix up = Matrix::Zero(4, 4);
    up(0, 0) = up(3, 1) = up(2, 2) = up(1, 3) = 1;
    EXPECT_LT(max_abs_diff(cnot(Direction::Down).matrix(), down), 1e-15);
    EXPECT_LT(max_abs_diff(cnot(Direction::Up).matrix(), up), 1e-15);
}

TEST(Gates, cross_resonance_pair) {
    Matrix zx = kron(pauli(PauliAxis::Z), pauli(PauliAxis::X)).matrix();
    Matrix cp = std::cos(std::numbers::pi / 8) * Matrix::Identity(4, 4) - I1 * std::sin(std::numbers::pi / 8) * zx;
    EXPECT_LT(max_abs_diff(cr_plus().matrix(), cp), 1e-15);
    EXPECT_LT(max_abs_diff((cr_plus() * cr_minus()).matrix(), Matrix::Identity(4, 4)), 1e-15);
}

TEST(Gates, framed_ecr) {
    Unitary f = kron(Unitary::identity(2), z_theta(0.4));
    Unitary expected = f.adjoint() * ecr(Direction::Down) * f;
    EXPECT_LT(max_abs_diff(ecr_down_framed(0.4).matrix(), expected.matrix()), 1e-15);
    EXPECT_LT(max_abs_diff(ecr_down_framed(0).matrix(), ecr(Direction::Down).matrix()), 1e-15);
}

TEST(Gates, global_phase_comparison) {
    Unitary h = hadamard();
    EXPECT_TRUE(equal_up_to_global_phase(h, h.with_phase(1.234)));
    EXPECT_FALSE(equal_up_to_global_phase(h, s_gate()));
    EXPECT_FALSE(equal_up_to_global_phase(h, kron(h, h)));
}

TEST(Gates, embed_operator_orders_targets) {
    // CNOT with control on qubit 2 and target on qubit 0 of three.
    Matrix big = embed_operator(cnot(Direction::Down).matrix(), {2, 0}, 3);
    for (size_t in = 0; in < 8; ++in) {
        size_t out = (in & 1) ? in ^ 4u : in;
        EXPECT_EQ(big(static_cast<Eigen::Index>(out), static_cast<Eigen::Index>(in)), Complex(1)) << in;
    }
    EXPECT_THROW(embed_operator(s_gate().matrix(), {3}, 3), std::invalid_argument);
    EXPECT_THROW(embed_operator(cnot(Direction::Down).matrix(), {1, 1}, 3), std::invalid_argument);
}

TEST(GateLabel, angle_presence_is_checked) {
    EXPECT_THROW(GateLabel(GateKind::STheta), std::invalid_argument);
    EXPECT_THROW(GateLabel(GateKind::S, 0.1), std::invalid_argument);
    EXPECT_THROW(GateLabel(GateKind::ZTheta, std::nan("")), std::invalid_argument);
    GateLabel l(GateKind::EcrDownFramed, 0.5);
    EXPECT_EQ(l.arity(), 2u);
    EXPECT_EQ(l.name(), "ECR_down_theta");
    EXPECT_EQ(GateLabel(GateKind::YPlus).name(), "Y+");
}

TEST(GateLabel, matrix_lookup_matches_constructors) {
    EXPECT_LT(max_abs_diff(gate_matrix(GateLabel(GateKind::STheta, 0.9)).matrix(), s_theta(0.9).matrix()), 1e-15);
    EXPECT_LT(max_abs_diff(gate_matrix(GateLabel(GateKind::CnotUp)).matrix(), cnot(Direction::Up).matrix()), 1e-15);
    EXPECT_LT(max_abs_diff(gate_matrix(GateLabel(GateKind::X)).matrix(), pauli(PauliAxis::X).matrix()), 1e-15);
}
