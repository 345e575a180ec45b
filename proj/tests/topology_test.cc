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
#include <set>

#include "bellsig/errors.h"
#include "gtest/gtest.h"

using namespace bellsig;

namespace {

CouplingGraph chain(int n) {
    std::vector<QubitInfo> qs;
    std::vector<std::pair<int, int>> es;
    for (int i = 0; i < n; ++i) {
        qs.push_back({i, 5000.0 + 10 * i});
        if (i) {
            es.emplace_back(i - 1, i);
        }
    }
    return CouplingGraph(qs, es);
}

CouplingGraph eagle() {
    return CouplingGraph::load(std::string(BELLSIG_TEST_DATA) + "/eagle127.json");
}

bool disjoint(const std::vector<PairRecord> &pairs) {
    std::set<int> used;
    for (const auto &p : pairs) {
        for (int q : p.path) {
            if (!used.insert(q).second) {
                return false;
            }
        }
    }
    return true;
}

bool overlaps(const PairRecord &a, const PairRecord &b) {
    for (int q : a.path) {
        if (std::find(b.path.begin(), b.path.end(), q) != b.path.end()) {
            return true;
        }
    }
    return false;
}

}  // namespace

TEST(CouplingGraph, validation) {
    EXPECT_THROW(CouplingGraph({{0, {}}, {0, {}}}, {}), ValidationError);
    EXPECT_THROW(CouplingGraph({{0, {}}, {1, {}}}, {{0, 0}}), ValidationError);
    EXPECT_THROW(CouplingGraph({{0, {}}, {1, {}}}, {{0, 2}}), ValidationError);
    EXPECT_THROW(CouplingGraph({{0, -5.0}}, {}), ValidationError);
    CouplingGraph g({{0, {}}, {1, {}}, {2, {}}}, {{1, 0}, {0, 1}, {2, 1}});
    EXPECT_EQ(g.edges().size(), 2u);
    EXPECT_EQ(g.neighbors(1), (std::vector<int>{0, 2}));
}

TEST(CouplingGraph, json_round_trip) {
    CouplingGraph g = chain(4);
    CouplingGraph h = CouplingGraph::from_json(g.to_json());
    EXPECT_EQ(h.to_json(), g.to_json());
    EXPECT_EQ(*h.frequency(2), 5020.0);
}

TEST(CouplingGraph, eagle_map_shape) {
    CouplingGraph g = eagle();
    EXPECT_EQ(g.qubits().size(), 127u);
    EXPECT_EQ(g.edges().size(), 144u);
    for (const auto &q : g.qubits()) {
        EXPECT_LE(g.neighbors(q.id).size(), 3u);
        EXPECT_GE(g.neighbors(q.id).size(), 1u);
    }
}

TEST(PairsAtDistance, three_chain) {
    auto pairs = pairs_at_distance(chain(3), 2);
    ASSERT_EQ(pairs.size(), 1u);
    EXPECT_EQ(pairs[0].a, 0);
    EXPECT_EQ(pairs[0].b, 2);
    EXPECT_EQ(pairs[0].path, (std::vector<int>{0, 1, 2}));
    EXPECT_EQ(pairs[0].label(), "0-1-2");
    EXPECT_DOUBLE_EQ(*pairs[0].delta_f_mhz, -20.0);
}

TEST(PairsAtDistance, five_chain_endpoints) {
    auto pairs = pairs_at_distance(chain(5), 4);
    ASSERT_EQ(pairs.size(), 1u);
    EXPECT_EQ(pairs[0].label(), "0-4");
    EXPECT_EQ(pairs[0].path.size(), 5u);
}

TEST(PairsAtDistance, errors) {
    EXPECT_THROW(pairs_at_distance(CouplingGraph({}, {}), 2), std::invalid_argument);
    EXPECT_THROW(pairs_at_distance(chain(3), 0), std::invalid_argument);
}

TEST(PairsAtDistance, lexicographic_path_on_a_square) {
    // 0-1-3 and 0-2-3 are both shortest; the smaller middle id wins.
    CouplingGraph g({{0, {}}, {1, {}}, {2, {}}, {3, {}}}, {{0, 1}, {0, 2}, {1, 3}, {2, 3}});
    auto pairs = pairs_at_distance(g, 2);
    auto it = std::find_if(pairs.begin(), pairs.end(), [](const PairRecord &p) {
        return p.a == 0 && p.b == 3;
    });
    ASSERT_NE(it, pairs.end());
    EXPECT_EQ(it->path, (std::vector<int>{0, 1, 3}));
}

TEST(PairsAtDistance, heavy_hex_contains_kyoto_triples) {
    auto pairs = pairs_at_distance(eagle(), 2);
    std::set<std::string> labels;
    for (const auto &p : pairs) {
        labels.insert(p.label());
    }
    const char *triples[] = {"55-68-67", "34-43-44", "29-30-31", "101-102-103", "7-8-9",
                             "74-89-88", "94-95-96", "25-26-27", "63-62-72",    "38-39-40",
                             "58-59-60", "21-22-23", "80-79-91"};
    std::vector<PairRecord> chosen;
    for (const char *t : triples) {
        EXPECT_TRUE(labels.count(t)) << t;
        for (const auto &p : pairs) {
            if (p.label() == t) {
                chosen.push_back(p);
            }
        }
    }
    EXPECT_EQ(chosen.size(), 13u);
    EXPECT_TRUE(disjoint(chosen));
}

TEST(PairsAtDistance, heavy_hex_fourth_neighbours) {
    auto pairs = pairs_at_distance(eagle(), 4);
    auto it = std::find_if(pairs.begin(), pairs.end(), [](const PairRecord &p) {
        return p.label() == "49-66";
    });
    ASSERT_NE(it, pairs.end());
    EXPECT_EQ(it->distance, 4);
}

TEST(SelectDisjoint, chain_overlap) {
    auto chosen = select_disjoint(pairs_at_distance(chain(5), 2));
    EXPECT_EQ(chosen.size(), 1u);
    EXPECT_EQ(chosen[0].label(), "0-1-2");
    EXPECT_TRUE(select_disjoint({}).empty());
}

TEST(SelectDisjoint, heavy_hex_is_disjoint_maximal_and_stable) {
    auto all = pairs_at_distance(eagle(), 2);
    auto chosen = select_disjoint(all);
    EXPECT_GE(chosen.size(), 13u);
    EXPECT_TRUE(disjoint(chosen));
    for (const auto &p : all) {
        bool hit = std::any_of(chosen.begin(), chosen.end(), [&](const PairRecord &c) {
            return overlaps(p, c);
        });
        EXPECT_TRUE(hit) << p.label();
    }
    std::vector<PairRecord> reversed(all.rbegin(), all.rend());
    EXPECT_EQ(select_disjoint(reversed), chosen);
}

TEST(PairRecord, json_round_trip_and_validation) {
    PairRecord p{49, 66, {49, 55, 68, 67, 66}, 4, -1.5};
    EXPECT_EQ(pair_from_json(pair_to_json(p)), p);
    auto j = pair_to_json(p);
    j["distance"] = 3;
    EXPECT_THROW(pair_from_json(j), ValidationError);
}
