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

#ifndef BELLSIG_TOPOLOGY_H
#define BELLSIG_TOPOLOGY_H

#include <map>
#include <optional>
#include <string>
#include <utility>
#include <vector>

#include "json.hpp"

namespace bellsig {

struct QubitInfo {
    int id;
    /// Drive frequency in MHz, when known.
    std::optional<double> f_mhz;
};

/// Device coupling map: qubits and the undirected edges that support
/// two-qubit gates.
class CouplingGraph {
   public:
    CouplingGraph(std::vector<QubitInfo> qubits, std::vector<std::pair<int, int>> edges);

    /// `{ "qubits": [{"id":0,"f_mhz":4900.1}, ...], "edges": [[0,1], ...] }`
    static CouplingGraph from_json(const nlohmann::json &j);
    static CouplingGraph load(const std::string &path);
    nlohmann::json to_json() const;

    const std::vector<QubitInfo> &qubits() const {
        return qubits_;
    }
    const std::vector<std::pair<int, int>> &edges() const {
        return edges_;
    }
    bool has_qubit(int id) const {
        return index_.count(id) != 0;
    }
    std::optional<double> frequency(int id) const;
    /// Neighbors in ascending id order.
    const std::vector<int> &neighbors(int id) const;
    /// BFS distances from `source`; -1 when unreachable. Indexed like qubits().
    std::vector<int> distances_from(int source) const;
    size_t index_of(int id) const;

   private:
    std::vector<QubitInfo> qubits_;
    std::vector<std::pair<int, int>> edges_;
    std::map<int, size_t> index_;
    std::vector<std::vector<int>> adjacency_;
};

struct PairRecord {
    int a;
    int b;
    /// Shortest path from a to b, endpoints included.
    std::vector<int> path;
    int distance;
    /// f_A - f_B in MHz, when both frequencies are known.
    std::optional<double> delta_f_mhz;

    /// "55-68-67" for distance-2 pairs (A-S-B), "49-66" otherwise.
    std::string label() const;

    bool operator==(const PairRecord &other) const = default;
};

nlohmann::json pair_to_json(const PairRecord &p);
PairRecord pair_from_json(const nlohmann::json &j);

/// All unordered pairs (a < b) at shortest-path distance exactly `d`, each with
/// the lexicographically smallest shortest path from a to b.
std::vector<PairRecord> pairs_at_distance(const CouplingGraph &graph, int d);

/// Greedy qubit-disjoint subset, scanning pairs by (path length, min id, path).
std::vector<PairRecord> select_disjoint(std::vector<PairRecord> pairs);

}  // namespace bellsig

#endif
