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

#include "bellsig/rng.h"

#include <set>

#include "gtest/gtest.h"

using namespace bellsig;

TEST(Philox, known_answer_zero) {
    auto r = philox4x64({0, 0, 0, 0}, {0, 0});
    EXPECT_EQ(r[0], 0x16554d9eca36314cULL);
    EXPECT_EQ(r[1], 0xdb20fe9d672d0fdcULL);
    EXPECT_EQ(r[2], 0xd7e772cee186176bULL);
    EXPECT_EQ(r[3], 0x7e68b68aec7ba23bULL);
}

TEST(Philox, known_answer_mixed) {
    auto r = philox4x64({5, 7, 11, 13}, {0x123456789abcdef0ULL, 42});
    EXPECT_EQ(r[0], 0x411acf0d99c3d3e1ULL);
    EXPECT_EQ(r[1], 0x49dea069ff67805aULL);
    EXPECT_EQ(r[2], 0x81e9c575d390453fULL);
    EXPECT_EQ(r[3], 0x705a8a97aea7e6e4ULL);
}

TEST(PhiloxStream, first_block_is_counter_zero) {
    PhiloxStream s(0, 0, 0, 0);
    EXPECT_EQ(s.next_u64(), 0x16554d9eca36314cULL);
    EXPECT_EQ(s.next_u64(), 0xdb20fe9d672d0fdcULL);
    EXPECT_EQ(s.next_u64(), 0xd7e772cee186176bULL);
    EXPECT_EQ(s.next_u64(), 0x7e68b68aec7ba23bULL);
}

TEST(PhiloxStream, streams_are_reproducible_and_distinct) {
    PhiloxStream a(9, 1, 2, 3), b(9, 1, 2, 3), c(9, 1, 2, 4), d(10, 1, 2, 3);
    std::set<uint64_t> firsts;
    for (int i = 0; i < 100; ++i) {
        uint64_t x = a.next_u64();
        EXPECT_EQ(x, b.next_u64());
        firsts.insert(x);
    }
    EXPECT_EQ(firsts.size(), 100u);
    EXPECT_NE(PhiloxStream(9, 1, 2, 3).next_u64(), c.next_u64());
    EXPECT_NE(PhiloxStream(9, 1, 2, 3).next_u64(), d.next_u64());
}

TEST(PhiloxStream, uniform_ranges) {
    PhiloxStream s(1, 2);
    double sum = 0;
    for (int i = 0; i < 100000; ++i) {
        double u = s.uniform();
        ASSERT_GE(u, 0.0);
        ASSERT_LT(u, 1.0);
        double o = s.uniform_open();
        ASSERT_GT(o, 0.0);
        ASSERT_LT(o, 1.0);
        sum += u;
    }
    EXPECT_NEAR(sum / 100000, 0.5, 0.005);
}

TEST(PhiloxStream, uniform_below_is_unbiased) {
    PhiloxStream s(3, 4);
    int tally[7] = {};
    const int n = 70000;
    for (int i = 0; i < n; ++i) {
        uint64_t k = s.uniform_below(7);
        ASSERT_LT(k, 7u);
        ++tally[k];
    }
    double chi2 = 0;
    for (int t : tally) {
        chi2 += (t - n / 7.0) * (t - n / 7.0) / (n / 7.0);
    }
    // 6 degrees of freedom; 22.46 is the 0.999 quantile.
    EXPECT_LT(chi2, 22.46);
    EXPECT_EQ(s.uniform_below(1), 0u);
}
