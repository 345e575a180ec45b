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

#ifndef BELLSIG_CIRCUIT_H
#define BELLSIG_CIRCUIT_H

#include <array>
#include <cstddef>
#include <optional>
#include <string>

#include "bellsig/plan.h"
#include "bellsig/transpiler.h"

namespace bellsig {

/// Party A, source S (test a only) and party B.
enum class Role { A, S, B };

std::string to_string(Role r);
Role role_from_string(const std::string &s);

/// One CHSH / idle test circuit. Local qubit indices are A = 0 and, for test
/// a, S = 1 and B = 2; tests b and c use A = 0, B = 1.
struct Circuit {
    TestKind test = TestKind::A;
    Setting setting{};
    size_t num_qubits = 0;
    GateSeq gates;
    /// Local index of each role, when present.
    std::array<std::optional<size_t>, 3> roles{};
    /// Position in `gates` of the readout rotation on A and on B.
    std::array<size_t, 2> readout_gate{};

    std::optional<size_t> qubit(Role r) const {
        return roles[static_cast<size_t>(r)];
    }
    size_t qubit_a() const {
        return *roles[static_cast<size_t>(Role::A)];
    }
    size_t qubit_b() const {
        return *roles[static_cast<size_t>(Role::B)];
    }
};

/// Test a: S on the source, CNOT(S->B), then the swap pair CNOT(S->A),
/// CNOT(A->S), then S_alpha on A and S_beta on B. Tests b and c: only the
/// two readout rotations on |00>.
Circuit build_circuit(TestKind test, Setting setting, const BellAngles &angles = {},
                      GateLevel level = GateLevel::Cnot);

}  // namespace bellsig

#endif
