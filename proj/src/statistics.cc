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

#include "bellsig/statistics.h"

#include <algorithm>
#include <cmath>
#include <limits>
#include <numbers>
#include <numeric>
#include <stdexcept>

#include "bellsig/errors.h"

namespace bellsig {

namespace {

constexpr double kNaN = std::numeric_limits<double>::quiet_NaN();

uint64_t a_plus_count(const OutcomeCounts &n) {
    return n[0] + n[1];
}

uint64_t b_plus_count(const OutcomeCounts &n) {
    return n[0] + n[2];
}

void require_trials(const CountsTable &counts) {
    for (size_t i = 0; i < 4; ++i) {
        if (counts.total(Setting::from_index(i)) == 0) {
            Setting s = Setting::from_index(i);
            throw DegenerateInput("setting ab=" + std::to_string(s.a) + std::to_string(s.b) + " has no trials");
        }
    }
}

// Difference n1/N1 - n2/N2 with the count difference formed exactly when N1 == N2.
double frac_diff(uint64_t n1, uint64_t total1, uint64_t n2, uint64_t total2) {
    if (total1 == total2) {
        return (static_cast<double>(n1) - static_cast<double>(n2)) / static_cast<double>(total1);
    }
    return static_cast<double>(n1) / static_cast<double>(total1) - static_cast<double>(n2) / static_cast<double>(total2);
}

__int128 gcd128(__int128 a, __int128 b) {
    if (a < 0) {
        a = -a;
    }
    if (b < 0) {
        b = -b;
    }
    while (b != 0) {
        __int128 t = a % b;
        a = b;
        b = t;
    }
    return a;
}

std::vector<double> mid_ranks(const std::vector<double> &v) {
    std::vector<size_t> order(v.size());
    std::iota(order.begin(), order.end(), 0);
    std::sort(order.begin(), order.end(), [&](size_t i, size_t j) {
        return v[i] < v[j];
    });
    std::vector<double> ranks(v.size());
    size_t i = 0;
    while (i < order.size()) {
        size_t j = i;
        while (j + 1 < order.size() && v[order[j + 1]] == v[order[i]]) {
            ++j;
        }
        double r = (static_cast<double>(i) + static_cast<double>(j)) / 2.0 + 1.0;
        for (size_t k = i; k <= j; ++k) {
            ranks[order[k]] = r;
        }
        i = j + 1;
    }
    return ranks;
}

}  // namespace

uint64_t CountsTable::total(Setting s) const {
    const auto &n = counts[s.index()];
    return n[0] + n[1] + n[2] + n[3];
}

void CountsTable::add(Setting s, const OutcomeCounts &n) {
    for (size_t k = 0; k < 4; ++k) {
        counts[s.index()][k] += n[k];
    }
}

CountsTable &CountsTable::operator+=(const CountsTable &other) {
    if (pair != other.pair || test != other.test) {
        throw ValidationError("cannot combine counts of different pairs or tests");
    }
    for (size_t s = 0; s < 4; ++s) {
        for (size_t k = 0; k < 4; ++k) {
            counts[s][k] += other.counts[s][k];
        }
    }
    job.reset();
    return *this;
}

const char *delta_name(size_t i) {
    static constexpr const char *kNames[4] = {"d0*", "d1*", "d*0", "d*1"};
    return kNames[i];
}

Ratio make_ratio(__int128 num, __int128 den) {
    if (den == 0) {
        throw std::invalid_argument("make_ratio: zero denominator");
    }
    if (den < 0) {
        num = -num;
        den = -den;
    }
    __int128 g = gcd128(num, den);
    if (g > 1) {
        num /= g;
        den /= g;
    }
    constexpr __int128 kMax = std::numeric_limits<int64_t>::max();
    if (num > kMax || -num > kMax || den > kMax) {
        throw std::overflow_error("make_ratio: value does not fit in 64 bits");
    }
    return Ratio{static_cast<int64_t>(num), static_cast<int64_t>(den)};
}

Ratio operator+(const Ratio &x, const Ratio &y) {
    return make_ratio(static_cast<__int128>(x.num) * y.den + static_cast<__int128>(y.num) * x.den,
                      static_cast<__int128>(x.den) * y.den);
}

Ratio operator-(const Ratio &x, const Ratio &y) {
    return x + Ratio{-y.num, y.den};
}

Marginals marginals(const CountsTable &counts) {
    require_trials(counts);
    Marginals m;
    for (size_t i = 0; i < 4; ++i) {
        const auto &n = counts.counts[i];
        double total = static_cast<double>(counts.total(Setting::from_index(i)));
        m.a_plus[i] = static_cast<double>(a_plus_count(n)) / total;
        m.b_plus[i] = static_cast<double>(b_plus_count(n)) / total;
    }
    return m;
}

std::array<double, 4> delta_p(const CountsTable &counts) {
    require_trials(counts);
    std::array<double, 4> d{};
    auto n = [&](int a, int b) -> const OutcomeCounts & {
        return counts.counts[Setting(a, b).index()];
    };
    auto total = [&](int a, int b) {
        return counts.total(Setting(a, b));
    };
    for (int a = 0; a < 2; ++a) {
        d[kDelta0Star + a] = frac_diff(a_plus_count(n(a, 0)), total(a, 0), a_plus_count(n(a, 1)), total(a, 1));
    }
    for (int b = 0; b < 2; ++b) {
        d[kDeltaStar0 + b] = frac_diff(b_plus_count(n(0, b)), total(0, b), b_plus_count(n(1, b)), total(1, b));
    }
    return d;
}

std::array<Ratio, 4> delta_p_exact(const CountsTable &counts) {
    require_trials(counts);
    auto frac = [&](uint64_t k, Setting s) {
        return make_ratio(k, counts.total(s));
    };
    auto n = [&](int a, int b) -> const OutcomeCounts & {
        return counts.counts[Setting(a, b).index()];
    };
    std::array<Ratio, 4> d;
    for (int a = 0; a < 2; ++a) {
        d[kDelta0Star + a] = frac(a_plus_count(n(a, 0)), Setting(a, 0)) - frac(a_plus_count(n(a, 1)), Setting(a, 1));
    }
    for (int b = 0; b < 2; ++b) {
        d[kDeltaStar0 + b] = frac(b_plus_count(n(0, b)), Setting(0, b)) - frac(b_plus_count(n(1, b)), Setting(1, b));
    }
    return d;
}

int chsh_sign(Setting s) {
    return s.a == 0 && s.b == 0 ? 1 : -1;
}

CHSHReport chsh(const CountsTable &counts) {
    require_trials(counts);
    CHSHReport r;
    for (size_t i = 0; i < 4; ++i) {
        const auto &n = counts.counts[i];
        double same = static_cast<double>(n[0]) + static_cast<double>(n[3]);
        double diff = static_cast<double>(n[1]) + static_cast<double>(n[2]);
        r.correlators[i] = (same - diff) / static_cast<double>(counts.total(Setting::from_index(i)));
        r.value += chsh_sign(Setting::from_index(i)) * r.correlators[i];
    }
    r.sigma = sigma_chsh(counts);
    r.z = r.sigma > 0 ? (r.value - 2.0) / r.sigma : kNaN;
    return r;
}

double sigma_chsh(const CountsTable &counts) {
    require_trials(counts);
    double var = 0.0;
    for (size_t i = 0; i < 4; ++i) {
        const auto &n = counts.counts[i];
        double total = static_cast<double>(counts.total(Setting::from_index(i)));
        double e = (static_cast<double>(n[0]) + static_cast<double>(n[3]) - static_cast<double>(n[1]) -
                    static_cast<double>(n[2])) /
                   total;
        var += (1.0 - e * e) / total;
    }
    return std::sqrt(std::max(var, 0.0));
}

std::array<double, 4> sigma_marginals(const CountsTable &counts) {
    Marginals m = marginals(counts);
    std::array<double, 4> var{};
    for (size_t i = 0; i < 4; ++i) {
        Setting s = Setting::from_index(i);
        double total = static_cast<double>(counts.total(s));
        var[kDelta0Star + s.a] += m.a_plus[i] * (1.0 - m.a_plus[i]) / total;
        var[kDeltaStar0 + s.b] += m.b_plus[i] * (1.0 - m.b_plus[i]) / total;
    }
    std::array<double, 4> sigma{};
    for (size_t k = 0; k < 4; ++k) {
        sigma[k] = std::sqrt(var[k]);
    }
    return sigma;
}

double complementary_error_function(double x) {
    if (std::isnan(x)) {
        return x;
    }
    if (x < 0.0) {
        return 2.0 - complementary_error_function(-x);
    }
    if (x < 0.5) {
        // erf(x) = 2/sqrt(pi) sum_n (-1)^n x^(2n+1) / (n! (2n+1))
        double x2 = x * x;
        double term = x;
        double sum = x;
        for (int n = 1; n < 60; ++n) {
            term *= -x2 / n;
            double add = term / (2 * n + 1);
            sum += add;
            if (std::abs(add) < 1e-17 * std::abs(sum)) {
                break;
            }
        }
        return 1.0 - 2.0 / std::sqrt(std::numbers::pi) * sum;
    }
    if (x > 27.3) {
        return 0.0;
    }
    // erfc(x) = exp(-x^2)/sqrt(pi) / K, K = x + (1/2)/(x + (2/2)/(x + (3/2)/(x + ...))),
    // evaluated with the modified Lentz algorithm.
    constexpr double kTiny = 1e-300;
    double f = x;
    double c = x;
    double d = 0.0;
    for (int i = 1; i < 100000; ++i) {
        double a = 0.5 * i;
        d = x + a * d;
        if (std::abs(d) < kTiny) {
            d = kTiny;
        }
        c = x + a / c;
        if (std::abs(c) < kTiny) {
            c = kTiny;
        }
        d = 1.0 / d;
        double delta = c * d;
        f *= delta;
        if (std::abs(delta - 1.0) < 1e-16) {
            break;
        }
    }
    // x^2 = hi^2 + (x - hi)(x + hi) with hi^2 exact; a plain x * x loses ~1e-13 near x = 25.
    double hi = std::ldexp(std::trunc(std::ldexp(x, 20)), -20);
    double e = std::exp(-hi * hi) * std::exp(-(x - hi) * (x + hi));
    return e / (std::sqrt(std::numbers::pi) * f);
}

double p_value(double delta, double sigma) {
    if (!(sigma > 0.0)) {
        throw std::invalid_argument("p_value: sigma must be positive");
    }
    return complementary_error_function(std::abs(delta) / (std::numbers::sqrt2 * sigma));
}

double bonferroni(double p, double m) {
    if (!(m >= 1.0)) {
        throw std::invalid_argument("bonferroni: number of tests must be at least 1");
    }
    if (!(p >= 0.0 && p <= 1.0)) {
        throw std::invalid_argument("bonferroni: p must lie in [0, 1]");
    }
    return std::min(1.0, m * p);
}

NoSigReport no_signaling_report(const CountsTable &counts, double look_elsewhere) {
    NoSigReport r;
    r.deltas = delta_p(counts);
    r.sigmas = sigma_marginals(counts);
    r.max_abs_z = -1.0;
    for (size_t k = 0; k < 4; ++k) {
        if (r.sigmas[k] > 0.0) {
            r.z[k] = r.deltas[k] / r.sigmas[k];
            r.p_raw[k] = p_value(r.deltas[k], r.sigmas[k]);
            r.p_corrected[k] = bonferroni(r.p_raw[k], look_elsewhere);
            if (std::abs(r.z[k]) > r.max_abs_z) {
                r.max_abs_z = std::abs(r.z[k]);
                r.max_index = k;
            }
        } else {
            r.degenerate_variance = true;
            r.z[k] = kNaN;
            r.p_raw[k] = kNaN;
            r.p_corrected[k] = kNaN;
        }
    }
    if (r.max_abs_z < 0.0) {
        r.max_abs_z = kNaN;
        r.p_corrected_max = kNaN;
    } else {
        r.p_corrected_max = r.p_corrected[r.max_index];
    }
    return r;
}

CountsTable aggregate(const std::vector<CountsTable> &series) {
    if (series.empty()) {
        throw ValidationError("aggregate: empty series");
    }
    CountsTable total = series.front();
    total.job.reset();
    for (size_t i = 1; i < series.size(); ++i) {
        total += series[i];
    }
    return total;
}

PerJobSeries per_job(const std::vector<CountsTable> &series) {
    if (series.empty()) {
        throw ValidationError("per_job: empty series");
    }
    PerJobSeries out;
    for (const auto &t : series) {
        if (t.pair != series.front().pair || t.test != series.front().test) {
            throw ValidationError("per_job: series mixes pairs or tests");
        }
        out.job_ids.push_back(t.job);
        out.deltas.push_back(delta_p(t));
    }
    out.total = aggregate(series);
    out.aggregate = delta_p(out.total);
    return out;
}

double spearman(const std::vector<double> &x, const std::vector<double> &y) {
    if (x.size() != y.size()) {
        throw std::invalid_argument("spearman: samples differ in length");
    }
    std::vector<double> rx = mid_ranks(x);
    std::vector<double> ry = mid_ranks(y);
    const double n = static_cast<double>(x.size());
    double mx = std::accumulate(rx.begin(), rx.end(), 0.0) / n;
    double my = std::accumulate(ry.begin(), ry.end(), 0.0) / n;
    double sxy = 0.0, sxx = 0.0, syy = 0.0;
    for (size_t i = 0; i < rx.size(); ++i) {
        sxy += (rx[i] - mx) * (ry[i] - my);
        sxx += (rx[i] - mx) * (rx[i] - mx);
        syy += (ry[i] - my) * (ry[i] - my);
    }
    if (sxx == 0.0 || syy == 0.0) {
        return 0.0;
    }
    return sxy / std::sqrt(sxx * syy);
}

double freq_correlation(const std::vector<std::pair<NoSigReport, double>> &reports) {
    if (reports.size() < 3) {
        throw DegenerateInput("freq_correlation: need at least 3 pairs with a frequency difference");
    }
    std::vector<double> z, inv_f;
    for (const auto &[rep, df] : reports) {
        z.push_back(rep.max_abs_z);
        inv_f.push_back(df == 0.0 ? std::numeric_limits<double>::infinity() : 1.0 / std::abs(df));
    }
    return spearman(z, inv_f);
}

}  // namespace bellsig
