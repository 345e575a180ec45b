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

#include "bellsig/circuit.h"

#include <stdexcept>

#include "bellsig/errors.h"

namespace bellsig {

std::string to_string(Role r) {
    switch (r) {
        case Role::A:
            return "A";
        case Role::S:
            return "S";
        case Role::B:
            return "B";
    }
    return "?";
}

Role role_from_string(const std::string &s) {
    if (s == "A") {
        return Role::A;
    }
    if (s == "S") {
        return Role::S;
    }
    if (s == "B") {
        return Role::B;
    }
    throw ValidationError("unknown qubit role '" + s + "' (expected A, S or B)");
}

namespace {

size_t last_op_on(const GateSeq &seq, size_t qubit) {
    const auto &ops = seq.ops();
    for (size_t i = ops.size(); i-- > 0;) {
        for (size_t t : ops[i].targets) {
            if (t == qubit) {
                return i;
            }
        }
    }
    throw std::logic_error("circuit has no gate on a measured qubit");
}

}  // namespace

Circuit build_circuit(TestKind test, Setting setting, const BellAngles &angles, GateLevel level) {
    Circuit c;
    c.test = test;
    c.setting = setting;
    size_t a, b;
    if (test == TestKind::A) {
        c.num_qubits = 3;
        a = 0;
        size_t s = 1;
        b = 2;
        c.roles = {a, s, b};
        c.gates.append(GateLabel(GateKind::S), {s});
        c.gates.append(GateLabel(GateKind::CnotDown), {s, b});
        c.gates.append(GateLabel(GateKind::CnotDown), {s, a});
        c.gates.append(GateLabel(GateKind::CnotDown), {a, s});
    } else {
        c.num_qubits = 2;
        a = 0;
        b = 1;
        c.roles = {a, std::nullopt, b};
    }
    c.gates.append(GateLabel(GateKind::STheta, angles.alpha[setting.a]), {a});
    c.gates.append(GateLabel(GateKind::STheta, angles.beta[setting.b]), {b});
    if (level == GateLevel::Native) {
        c.gates = lower_to_native(c.gates);
    }
    c.readout_gate = {last_op_on(c.gates, a), last_op_on(c.gates, b)};
    return c;
}

}  // namespace bellsig
