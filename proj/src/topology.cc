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

#include "bellsig/topology.h"

#include <algorithm>
#include <deque>
#include <fstream>
#include <set>
#include <stdexcept>

#include "bellsig/errors.h"

namespace bellsig {

CouplingGraph::CouplingGraph(std::vector<QubitInfo> qubits, std::vector<std::pair<int, int>> edges)
    : qubits_(std::move(qubits)), edges_(std::move(edges)) {
    std::sort(qubits_.begin(), qubits_.end(), [](const QubitInfo &x, const QubitInfo &y) {
        return x.id < y.id;
    });
    for (size_t i = 0; i < qubits_.size(); ++i) {
        if (!index_.emplace(qubits_[i].id, i).second) {
            throw ValidationError("coupling map: duplicate qubit id " + std::to_string(qubits_[i].id));
        }
        if (qubits_[i].f_mhz && !(*qubits_[i].f_mhz > 0.0)) {
            throw ValidationError("coupling map: qubit " + std::to_string(qubits_[i].id) +
                                  " has a non-positive frequency");
        }
    }
    adjacency_.resize(qubits_.size());
    std::set<std::pair<int, int>> seen;
    std::vector<std::pair<int, int>> unique;
    for (auto &[u, v] : edges_) {
        if (u == v) {
            throw ValidationError("coupling map: self-loop on qubit " + std::to_string(u));
        }
        if (!has_qubit(u) || !has_qubit(v)) {
            throw ValidationError("coupling map: edge [" + std::to_string(u) + "," + std::to_string(v) +
                                  "] references an unknown qubit");
        }
        if (!seen.emplace(std::min(u, v), std::max(u, v)).second) {
            continue;
        }
        unique.emplace_back(std::min(u, v), std::max(u, v));
        adjacency_[index_.at(u)].push_back(v);
        adjacency_[index_.at(v)].push_back(u);
    }
    edges_ = std::move(unique);
    for (auto &nbrs : adjacency_) {
        std::sort(nbrs.begin(), nbrs.end());
    }
}

CouplingGraph CouplingGraph::from_json(const nlohmann::json &j) {
    try {
        std::vector<QubitInfo> qubits;
        for (const auto &q : j.at("qubits")) {
            QubitInfo info{q.at("id").get<int>(), std::nullopt};
            if (q.contains("f_mhz") && !q.at("f_mhz").is_null()) {
                info.f_mhz = q.at("f_mhz").get<double>();
            }
            qubits.push_back(info);
        }
        std::vector<std::pair<int, int>> edges;
        for (const auto &e : j.at("edges")) {
            if (!e.is_array() || e.size() != 2) {
                throw ValidationError("coupling map: each edge must be a two-element array");
            }
            edges.emplace_back(e[0].get<int>(), e[1].get<int>());
        }
        return CouplingGraph(std::move(qubits), std::move(edges));
    } catch (const nlohmann::json::exception &ex) {
        throw ValidationError(std::string("coupling map: ") + ex.what());
    }
}

CouplingGraph CouplingGraph::load(const std::string &path) {
    std::ifstream in(path);
    if (!in) {
        throw ValidationError("cannot open coupling map " + path);
    }
    nlohmann::json j;
    try {
        in >> j;
    } catch (const nlohmann::json::exception &ex) {
        throw ValidationError("coupling map " + path + ": " + ex.what());
    }
    return from_json(j);
}

nlohmann::json CouplingGraph::to_json() const {
    nlohmann::json qs = nlohmann::json::array();
    for (const auto &q : qubits_) {
        nlohmann::json e{{"id", q.id}};
        if (q.f_mhz) {
            e["f_mhz"] = *q.f_mhz;
        }
        qs.push_back(e);
    }
    nlohmann::json es = nlohmann::json::array();
    for (const auto &[u, v] : edges_) {
        es.push_back({u, v});
    }
    return {{"qubits", qs}, {"edges", es}};
}

size_t CouplingGraph::index_of(int id) const {
    auto it = index_.find(id);
    if (it == index_.end()) {
        throw std::out_of_range("coupling map: unknown qubit " + std::to_string(id));
    }
    return it->second;
}

std::optional<double> CouplingGraph::frequency(int id) const {
    return qubits_[index_of(id)].f_mhz;
}

const std::vector<int> &CouplingGraph::neighbors(int id) const {
    return adjacency_[index_of(id)];
}

std::vector<int> CouplingGraph::distances_from(int source) const {
    std::vector<int> dist(qubits_.size(), -1);
    std::deque<int> queue{source};
    dist[index_of(source)] = 0;
    while (!queue.empty()) {
        int u = queue.front();
        queue.pop_front();
        int du = dist[index_of(u)];
        for (int v : neighbors(u)) {
            int &dv = dist[index_of(v)];
            if (dv < 0) {
                dv = du + 1;
                queue.push_back(v);
            }
        }
    }
    return dist;
}

std::string PairRecord::label() const {
    std::string out;
    const std::vector<int> ends{a, b};
    const auto &ids = path.size() == 3 ? path : ends;
    for (size_t i = 0; i < ids.size(); ++i) {
        if (i) {
            out += '-';
        }
        out += std::to_string(ids[i]);
    }
    return out;
}

nlohmann::json pair_to_json(const PairRecord &p) {
    nlohmann::json j{{"a", p.a}, {"b", p.b}, {"path", p.path}, {"distance", p.distance}};
    if (p.delta_f_mhz) {
        j["delta_f_mhz"] = *p.delta_f_mhz;
    }
    return j;
}

PairRecord pair_from_json(const nlohmann::json &j) {
    PairRecord p{j.at("a").get<int>(), j.at("b").get<int>(), j.at("path").get<std::vector<int>>(),
                 j.at("distance").get<int>(), std::nullopt};
    if (j.contains("delta_f_mhz") && !j.at("delta_f_mhz").is_null()) {
        p.delta_f_mhz = j.at("delta_f_mhz").get<double>();
    }
    if (p.path.size() != static_cast<size_t>(p.distance) + 1 || p.path.front() != p.a || p.path.back() != p.b) {
        throw ValidationError("pair " + p.label() + ": path does not match endpoints and distance");
    }
    return p;
}

std::vector<PairRecord> pairs_at_distance(const CouplingGraph &graph, int d) {
    if (graph.qubits().empty()) {
        throw std::invalid_argument("pairs_at_distance: empty graph");
    }
    if (d < 1) {
        throw std::invalid_argument("pairs_at_distance: distance must be at least 1");
    }
    std::vector<PairRecord> out;
    for (const auto &qb : graph.qubits()) {
        // Distances to b let us walk from each a along the smallest next id.
        std::vector<int> to_b = graph.distances_from(qb.id);
        for (const auto &qa : graph.qubits()) {
            if (qa.id >= qb.id || to_b[graph.index_of(qa.id)] != d) {
                continue;
            }
            PairRecord rec{qa.id, qb.id, {qa.id}, d, std::nullopt};
            int cur = qa.id;
            while (cur != qb.id) {
                int want = to_b[graph.index_of(cur)] - 1;
                for (int v : graph.neighbors(cur)) {
                    if (to_b[graph.index_of(v)] == want) {
                        cur = v;
                        break;
                    }
                }
                rec.path.push_back(cur);
            }
            auto fa = qa.f_mhz;
            auto fb = qb.f_mhz;
            if (fa && fb) {
                rec.delta_f_mhz = *fa - *fb;
            }
            out.push_back(std::move(rec));
        }
    }
    std::sort(out.begin(), out.end(), [](const PairRecord &x, const PairRecord &y) {
        return std::pair(x.a, x.b) < std::pair(y.a, y.b);
    });
    return out;
}

std::vector<PairRecord> select_disjoint(std::vector<PairRecord> pairs) {
    auto min_id = [](const PairRecord &p) {
        return *std::min_element(p.path.begin(), p.path.end());
    };
    std::stable_sort(pairs.begin(), pairs.end(), [&](const PairRecord &x, const PairRecord &y) {
        if (x.path.size() != y.path.size()) {
            return x.path.size() < y.path.size();
        }
        if (min_id(x) != min_id(y)) {
            return min_id(x) < min_id(y);
        }
        return x.path < y.path;
    });
    std::set<int> used;
    std::vector<PairRecord> out;
    for (auto &p : pairs) {
        bool clash = std::any_of(p.path.begin(), p.path.end(), [&](int q) {
            return used.count(q) != 0;
        });
        if (clash) {
            continue;
        }
        used.insert(p.path.begin(), p.path.end());
        out.push_back(std::move(p));
    }
    return out;
}

}  // namespace bellsig
