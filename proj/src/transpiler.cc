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

#include "bellsig/transpiler.h"

#include <cmath>
#include <cstdio>
#include <numbers>
#include <stdexcept>

namespace bellsig {

namespace {

constexpr double kTwoPi = 2 * std::numbers::pi;
constexpr double kHalfPi = std::numbers::pi / 2;

GateLabel z_label(double theta) {
    return GateLabel(GateKind::ZTheta, theta);
}

double phase_residual(const Unitary &u, const Unitary &v) {
    Eigen::Index r = 0;
    Eigen::Index c = 0;
    v.matrix().cwiseAbs().maxCoeff(&r, &c);
    Complex phase = u.matrix()(r, c) / v.matrix()(r, c);
    if (std::abs(phase) == 0.0) {
        return max_abs_diff(u.matrix(), v.matrix());
    }
    phase /= std::abs(phase);
    return max_abs_diff(u.matrix(), phase * v.matrix());
}

}  // namespace

void GateSeq::append(GateLabel label, std::vector<size_t> targets) {
    if (targets.size() != label.arity()) {
        throw std::invalid_argument("GateSeq: " + label.name() + " needs " + std::to_string(label.arity()) +
                                    " target(s)");
    }
    if (targets.size() == 2 && targets[0] == targets[1]) {
        throw std::invalid_argument("GateSeq: two-qubit gate targets must be distinct");
    }
    ops_.push_back(GateOp{std::move(label), std::move(targets)});
}

size_t GateSeq::min_num_qubits() const {
    size_t n = 0;
    for (const auto &op : ops_) {
        for (size_t t : op.targets) {
            n = std::max(n, t + 1);
        }
    }
    for (const auto &[q, _] : frames_) {
        n = std::max(n, q + 1);
    }
    return n;
}

double GateSeq::frame(size_t qubit) const {
    auto it = frames_.find(qubit);
    return it == frames_.end() ? 0.0 : it->second;
}

void GateSeq::add_frame(size_t qubit, double angle) {
    double v = std::fmod(frame(qubit) + angle, kTwoPi);
    if (v == 0.0) {
        frames_.erase(qubit);
    } else {
        frames_[qubit] = v;
    }
}

GateSeq transpile_cnot(Direction direction) {
    GateSeq seq;
    if (direction == Direction::Down) {
        seq.append(GateLabel(GateKind::X), {0});
        seq.append(GateLabel(GateKind::S), {1});
        seq.append(GateLabel(GateKind::EcrDown), {0, 1});
        seq.append(GateLabel(GateKind::ZPlus), {0});
    } else {
        seq.append(GateLabel(GateKind::ZMinus), {0});
        seq.append(GateLabel(GateKind::H), {1});
        seq.append(GateLabel(GateKind::S), {0});
        seq.append(GateLabel(GateKind::S), {1});
        seq.append(GateLabel(GateKind::EcrDown), {0, 1});
        seq.append(GateLabel(GateKind::H), {0});
        seq.append(GateLabel(GateKind::H), {1});
    }
    return seq;
}

GateSeq transpile_ecr_up() {
    GateSeq seq;
    seq.append(GateLabel(GateKind::YPlus), {0});
    seq.append(GateLabel(GateKind::YMinus), {1});
    seq.append(GateLabel(GateKind::EcrDown), {0, 1});
    seq.append(GateLabel(GateKind::H), {0});
    seq.append(GateLabel(GateKind::H), {1});
    return seq;
}

GateSeq remap_qubits(const GateSeq &seq, const std::vector<size_t> &mapping) {
    GateSeq out;
    for (const auto &op : seq.ops()) {
        std::vector<size_t> targets;
        for (size_t t : op.targets) {
            if (t >= mapping.size()) {
                throw std::invalid_argument("remap_qubits: no mapping for qubit " + std::to_string(t));
            }
            targets.push_back(mapping[t]);
        }
        out.append(op.label, std::move(targets));
    }
    for (const auto &[q, angle] : seq.frames()) {
        if (q >= mapping.size()) {
            throw std::invalid_argument("remap_qubits: no mapping for qubit " + std::to_string(q));
        }
        out.add_frame(mapping[q], angle);
    }
    return out;
}

GateSeq expand_to_pulses(const GateSeq &seq) {
    GateSeq out;
    const GateLabel s(GateKind::S);
    for (const auto &op : seq.ops()) {
        const auto &t = op.targets;
        switch (op.label.kind()) {
            case GateKind::S:
            case GateKind::ZTheta:
            case GateKind::EcrDown:
                out.append(op);
                break;
            case GateKind::STheta: {
                double theta = *op.label.angle();
                out.append(z_label(theta), t);
                out.append(s, t);
                out.append(z_label(-theta), t);
                break;
            }
            case GateKind::H:
                out.append(z_label(kHalfPi), t);
                out.append(s, t);
                out.append(z_label(kHalfPi), t);
                break;
            case GateKind::X:
                // S S = -i X
                out.append(s, t);
                out.append(s, t);
                break;
            case GateKind::YPlus:
                // Y+ = Z+ S Z-
                out.append(z_label(-kHalfPi), t);
                out.append(s, t);
                out.append(z_label(kHalfPi), t);
                break;
            case GateKind::YMinus:
                out.append(z_label(kHalfPi), t);
                out.append(s, t);
                out.append(z_label(-kHalfPi), t);
                break;
            case GateKind::ZPlus:
                out.append(z_label(kHalfPi), t);
                break;
            case GateKind::ZMinus:
                out.append(z_label(-kHalfPi), t);
                break;
            case GateKind::EcrDownFramed: {
                double phi = *op.label.angle();
                out.append(z_label(phi), {t[1]});
                out.append(GateLabel(GateKind::EcrDown), t);
                out.append(z_label(-phi), {t[1]});
                break;
            }
            default:
                throw std::invalid_argument("expand_to_pulses: " + op.label.name() +
                                            " is not expandable into {S, Z_theta, ECR_down}");
        }
    }
    for (const auto &[q, angle] : seq.frames()) {
        out.add_frame(q, angle);
    }
    return out;
}

GateSeq compile_virtual_z(const GateSeq &seq) {
    GateSeq pulses = expand_to_pulses(seq);
    GateSeq out;
    std::map<size_t, double> frame;
    auto reduce = [](double a) {
        return std::fmod(a, kTwoPi);
    };
    for (const auto &op : pulses.ops()) {
        switch (op.label.kind()) {
            case GateKind::ZTheta:
                frame[op.targets[0]] = reduce(frame[op.targets[0]] + *op.label.angle());
                break;
            case GateKind::S: {
                double phi = frame[op.targets[0]];
                if (phi == 0.0) {
                    out.append(op);
                } else {
                    out.append(GateLabel(GateKind::STheta, phi), op.targets);
                }
                break;
            }
            case GateKind::EcrDown: {
                size_t control = op.targets[0];
                size_t target = op.targets[1];
                double phi = frame[target];
                if (phi == 0.0) {
                    out.append(op);
                } else {
                    out.append(GateLabel(GateKind::EcrDownFramed, phi), op.targets);
                }
                // ECR (Z_a x I) = (Z_{-a} x I) ECR
                frame[control] = -frame[control];
                break;
            }
            default:
                throw std::logic_error("compile_virtual_z: unexpected label after expansion");
        }
    }
    for (const auto &[q, angle] : frame) {
        out.add_frame(q, angle);
    }
    for (const auto &[q, angle] : pulses.frames()) {
        out.add_frame(q, angle);
    }
    return out;
}

GateSeq lower_to_native(const GateSeq &seq) {
    GateSeq flat;
    for (const auto &op : seq.ops()) {
        switch (op.label.kind()) {
            case GateKind::CnotDown:
            case GateKind::CnotUp: {
                Direction d = op.label.kind() == GateKind::CnotDown ? Direction::Down : Direction::Up;
                for (const auto &sub : remap_qubits(transpile_cnot(d), op.targets).ops()) {
                    flat.append(sub);
                }
                break;
            }
            case GateKind::EcrUp:
                for (const auto &sub : remap_qubits(transpile_ecr_up(), op.targets).ops()) {
                    flat.append(sub);
                }
                break;
            default:
                flat.append(op);
        }
    }
    for (const auto &[q, angle] : seq.frames()) {
        flat.add_frame(q, angle);
    }
    return compile_virtual_z(flat);
}

Unitary seq_to_unitary(const GateSeq &seq, size_t num_qubits) {
    if (num_qubits < 1 || num_qubits > 3) {
        throw std::invalid_argument("seq_to_unitary: supports one to three qubits");
    }
    const auto dim = Eigen::Index{1} << num_qubits;
    Matrix u = Matrix::Identity(dim, dim);
    for (const auto &op : seq.ops()) {
        for (size_t t : op.targets) {
            if (t >= num_qubits) {
                throw std::invalid_argument("seq_to_unitary: target " + std::to_string(t) + " out of range");
            }
        }
        u = embed_operator(gate_matrix(op.label).matrix(), op.targets, num_qubits) * u;
    }
    return Unitary(std::move(u), 1e-10);
}

Unitary frame_unitary(const GateSeq &seq, size_t num_qubits) {
    if (num_qubits < 1 || num_qubits > 3) {
        throw std::invalid_argument("frame_unitary: supports one to three qubits");
    }
    const auto dim = Eigen::Index{1} << num_qubits;
    Matrix u = Matrix::Identity(dim, dim);
    for (const auto &[q, angle] : seq.frames()) {
        if (q >= num_qubits) {
            throw std::invalid_argument("frame_unitary: frame on qubit " + std::to_string(q) + " out of range");
        }
        u = embed_operator(z_theta(angle).matrix(), {q}, num_qubits) * u;
    }
    return Unitary(std::move(u));
}

size_t count_two_qubit_gates(const GateSeq &seq) {
    size_t n = 0;
    for (const auto &op : seq.ops()) {
        n += op.label.arity() == 2;
    }
    return n;
}

std::string dump(const GateSeq &seq) {
    std::string out;
    char buf[64];
    for (const auto &op : seq.ops()) {
        out += op.label.name();
        if (auto a = op.label.angle()) {
            std::snprintf(buf, sizeof(buf), "(%.12g)", *a);
            out += buf;
        }
        for (size_t t : op.targets) {
            out += " q[" + std::to_string(t) + "]";
        }
        out += '\n';
    }
    return out;
}

std::vector<GateIdentity> native_gate_identities() {
    const Unitary id = pauli(PauliAxis::I);
    const Unitary x = pauli(PauliAxis::X);
    const Unitary h = hadamard();
    const Unitary s = s_gate();
    const Unitary hh = kron(h, h);
    const Unitary ecr_down = ecr(Direction::Down);
    return {
        {"ECR_down = CR- (X I) CR+", ecr_down, cr_minus() * kron(x, id) * cr_plus()},
        {"ECR_down ECR_down = I", ecr_down * ecr_down, Unitary::identity(4)},
        {"ECR_up = (H H) ECR_down (Y+ Y-)", ecr(Direction::Up), hh * ecr_down * kron(y_plus(), y_minus())},
        {"CNOT_down = (Z+ I) ECR_down (X S)", cnot(Direction::Down), kron(z_plus(), id) * ecr_down * kron(x, s)},
        {"CNOT_up = (H H) CNOT_down (H H)", cnot(Direction::Up), hh * cnot(Direction::Down) * hh},
        {"CNOT_up = (H H) ECR_down (S S) (Z- H)", cnot(Direction::Up),
         hh * ecr_down * kron(s, s) * kron(z_minus(), h)},
        {"H = Z+ S Z+", h, z_plus() * s * z_plus()},
        {"Y+ = Z+ S Z-", y_plus(), z_plus() * s * z_minus()},
        {"Y- = Z- S Z+", y_minus(), z_minus() * s * z_plus()},
        {"H H = I", h * h, id},
        {"CNOT_down from transpile_cnot", cnot(Direction::Down), seq_to_unitary(transpile_cnot(Direction::Down), 2)},
        {"CNOT_up from transpile_cnot", cnot(Direction::Up), seq_to_unitary(transpile_cnot(Direction::Up), 2)},
        {"ECR_up from transpile_ecr_up", ecr(Direction::Up), seq_to_unitary(transpile_ecr_up(), 2)},
    };
}

std::vector<IdentityResult> verify_identities(double tol) {
    std::vector<IdentityResult> out;
    for (const auto &ident : native_gate_identities()) {
        double r = phase_residual(ident.lhs, ident.rhs);
        out.push_back({ident.name, r, r <= tol});
    }
    return out;
}

}  // namespace bellsig
