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

#ifndef BELLSIG_STATISTICS_H
#define BELLSIG_STATISTICS_H

#include <array>
#include <cstdint>
#include <optional>
#include <utility>
#include <vector>

#include "bellsig/plan.h"

namespace bellsig {

/// Outcome order within a setting: ++, +-, -+, -- (A first; + is bit 0).
using OutcomeCounts = std::array<uint64_t, 4>;

/// Joint outcome counts n(AB) for every setting pair (a, b).
struct CountsTable {
    /// Indexed by Setting::index() then outcome.
    std::array<OutcomeCounts, 4> counts{};
    /// Device qubit ids of the pair (A, [S...,] B); empty when synthetic.
    std::vector<int> pair;
    TestKind test = TestKind::A;
    std::optional<int> job;
    std::optional<double> delta_f_mhz;

    uint64_t total(Setting s) const;
    void add(Setting s, const OutcomeCounts &n);
    /// Adds counts; metadata (pair, test) must agree. The job id is dropped.
    CountsTable &operator+=(const CountsTable &other);

    bool operator==(const CountsTable &other) const = default;
};

/// Order of the four no-signaling deltas everywhere in this library.
enum DeltaIndex : size_t { kDelta0Star = 0, kDelta1Star = 1, kDeltaStar0 = 2, kDeltaStar1 = 3 };

/// Short names "d0*", "d1*", "d*0", "d*1".
const char *delta_name(size_t i);

/// Exact fraction num/den in lowest terms, den > 0.
struct Ratio {
    int64_t num = 0;
    int64_t den = 1;

    double value() const {
        return static_cast<double>(num) / static_cast<double>(den);
    }
    bool operator==(const Ratio &other) const = default;
};

Ratio make_ratio(__int128 num, __int128 den);
Ratio operator+(const Ratio &x, const Ratio &y);
Ratio operator-(const Ratio &x, const Ratio &y);

struct Marginals {
    /// P_ab(+*) and P_ab(*+), indexed by Setting::index().
    std::array<double, 4> a_plus{};
    std::array<double, 4> b_plus{};
};

/// Throws DegenerateInput when a setting has zero trials.
Marginals marginals(const CountsTable &counts);

/// delta P_{a*} = P_a0(+*) - P_a1(+*), delta P_{*b} = P_0b(*+) - P_1b(*+),
/// in DeltaIndex order. Count differences are taken exactly before dividing.
std::array<double, 4> delta_p(const CountsTable &counts);
std::array<Ratio, 4> delta_p_exact(const CountsTable &counts);

struct CHSHReport {
    double value = 0.0;
    double sigma = 0.0;
    /// (CHSH - 2) / sigma against the classical bound; NaN when sigma == 0.
    double z = 0.0;
    /// <AB>_ab indexed by Setting::index().
    std::array<double, 4> correlators{};
};

/// s_ab = +1 for a = b = 0, -1 otherwise.
int chsh_sign(Setting s);
CHSHReport chsh(const CountsTable &counts);

/// sigma^2 = sum_ab (1 - <AB>_ab^2) / N_ab (reduces to the equal-N formula).
double sigma_chsh(const CountsTable &counts);
/// sigma^2_{a*} = sum_b P(+*)P(-*) / N_ab, sigma^2_{*b} = sum_a P(*+)P(*-) / N_ab.
std::array<double, 4> sigma_marginals(const CountsTable &counts);

/// erfc(x), accurate to ~1e-14 relative for x up to at least 27.
double complementary_error_function(double x);
/// Two-sided Gaussian tail: erfc(|delta| / (sqrt(2) sigma)). Throws for sigma <= 0.
double p_value(double delta, double sigma);
/// min(1, m p). Throws for m < 1 or p outside [0, 1].
double bonferroni(double p, double m);

/// 127 qubits times 8 neighbor directions.
inline constexpr double kDefaultLookElsewhere = 127.0 * 8.0;

struct NoSigReport {
    std::array<double, 4> deltas{};
    std::array<double, 4> sigmas{};
    /// delta / sigma; NaN where sigma == 0.
    std::array<double, 4> z{};
    std::array<double, 4> p_raw{};
    std::array<double, 4> p_corrected{};
    double max_abs_z = 0.0;
    size_t max_index = 0;
    /// Corrected p-value of the delta with the largest |z|.
    double p_corrected_max = 1.0;
    /// True when some sigma is exactly zero.
    bool degenerate_variance = false;
};

NoSigReport no_signaling_report(const CountsTable &counts, double look_elsewhere = kDefaultLookElsewhere);

/// Sum of all tables; they must share pair and test.
CountsTable aggregate(const std::vector<CountsTable> &series);

struct PerJobSeries {
    std::vector<std::optional<int>> job_ids;
    std::vector<std::array<double, 4>> deltas;
    /// delta_p of the summed counts.
    std::array<double, 4> aggregate{};
    CountsTable total;
};

/// Throws ValidationError for an empty series or mixed pairs/tests.
PerJobSeries per_job(const std::vector<CountsTable> &series);

/// Spearman rank correlation (ties mid-ranked) between max |z| and 1/|delta f|.
/// Returns 0 when either ranking is constant. Needs at least 3 entries.
double freq_correlation(const std::vector<std::pair<NoSigReport, double>> &reports);

/// Spearman rank correlation of two equal-length samples.
double spearman(const std::vector<double> &x, const std::vector<double> &y);

}  // namespace bellsig

#endif
