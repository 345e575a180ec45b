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

#include "bellsig/sampling.h"

#include <cmath>
#include <stdexcept>

namespace bellsig {

namespace {

// Stirling series correction log(k!) - [(k+1/2) log(k+1) - (k+1) + log(sqrt(2 pi))].
double stirling_correction(uint64_t k) {
    static constexpr double kTable[10] = {
        0.08106146679532726, 0.04134069595540929, 0.02767792568499834, 0.02079067210376509,
        0.01664469118982119, 0.01387612882307075, 0.01189670994589177, 0.01041126526197209,
        0.009255462182712733, 0.008330563433362871,
    };
    if (k < 10) {
        return kTable[k];
    }
    double r = 1.0 / static_cast<double>(k + 1);
    double r2 = r * r;
    return (1.0 / 12 - (1.0 / 360 - r2 / 1260) * r2) * r;
}

uint64_t binomial_inversion(PhiloxStream &rng, uint64_t n, double p) {
    const double q = 1 - p;
    const double s = p / q;
    const double a = static_cast<double>(n + 1) * s;
    const double r0 = std::pow(q, static_cast<double>(n));
    while (true) {
        double u = rng.uniform();
        double r = r0;
        uint64_t x = 0;
        while (u > r) {
            u -= r;
            ++x;
            if (x > n) {
                break;
            }
            r *= a / static_cast<double>(x) - s;
        }
        if (x <= n) {
            return x;
        }
    }
}

// W. Hormann, "The generation of binomial random variates",
// J. Statist. Comput. Simul. 46 (1993). Requires p <= 1/2 and n p >= 10.
uint64_t binomial_btrd(PhiloxStream &rng, uint64_t n, double p) {
    const double nd = static_cast<double>(n);
    const double m = std::floor((nd + 1) * p);
    const double r = p / (1 - p);
    const double nr = (nd + 1) * r;
    const double npq = nd * p * (1 - p);
    const double sqrt_npq = std::sqrt(npq);
    const double b = 1.15 + 2.53 * sqrt_npq;
    const double a = -0.0873 + 0.0248 * b + 0.01 * p;
    const double c = nd * p + 0.5;
    const double alpha = (2.83 + 5.1 / b) * sqrt_npq;
    const double v_r = 0.92 - 4.2 / b;
    const double u_rv_r = 0.86 * v_r;

    while (true) {
        double v = rng.uniform_open();
        double u;
        if (v <= u_rv_r) {
            u = v / v_r - 0.43;
            return static_cast<uint64_t>(std::floor((2 * a / (0.5 - std::abs(u)) + b) * u + c));
        }
        if (v >= v_r) {
            u = rng.uniform_open() - 0.5;
        } else {
            u = v / v_r - 0.93;
            u = std::copysign(0.5, u) - u;
            v = rng.uniform_open() * v_r;
        }

        const double us = 0.5 - std::abs(u);
        const double kd = std::floor((2 * a / us + b) * u + c);
        if (kd < 0 || kd > nd) {
            continue;
        }
        v = v * alpha / (a / (us * us) + b);
        const double km = std::abs(kd - m);
        if (km <= 15) {
            // Recursive evaluation of f(k) / f(m).
            double f = 1.0;
            if (m < kd) {
                for (double i = m + 1; i <= kd; ++i) {
                    f *= nr / i - r;
                }
            } else if (m > kd) {
                for (double i = kd + 1; i <= m; ++i) {
                    v *= nr / i - r;
                }
            }
            if (v <= f) {
                return static_cast<uint64_t>(kd);
            }
            continue;
        }
        // Squeeze on log scale.
        v = std::log(v);
        const double rho = (km / npq) * (((km / 3 + 0.625) * km + 1.0 / 6) / npq + 0.5);
        const double t = -km * km / (2 * npq);
        if (v < t - rho) {
            return static_cast<uint64_t>(kd);
        }
        if (v > t + rho) {
            continue;
        }
        const auto k = static_cast<uint64_t>(kd);
        const auto mi = static_cast<uint64_t>(m);
        const double nm = nd - m + 1;
        const double h = (m + 0.5) * std::log((m + 1) / (r * nm)) + stirling_correction(mi) +
                         stirling_correction(n - mi);
        const double nk = nd - kd + 1;
        if (v <= h + (nd + 1) * std::log(nm / nk) + (kd + 0.5) * std::log(nk * r / (kd + 1)) -
                     stirling_correction(k) - stirling_correction(n - k)) {
            return k;
        }
    }
}

}  // namespace

uint64_t sample_binomial(PhiloxStream &rng, uint64_t n, double p) {
    if (!(p >= 0.0 && p <= 1.0)) {
        throw std::invalid_argument("sample_binomial: p must lie in [0, 1]");
    }
    if (n == 0 || p == 0.0) {
        return 0;
    }
    if (p == 1.0) {
        return n;
    }
    if (p > 0.5) {
        return n - sample_binomial(rng, n, 1.0 - p);
    }
    if (static_cast<double>(n) * p < 10.0) {
        return binomial_inversion(rng, n, p);
    }
    return binomial_btrd(rng, n, p);
}

std::array<uint64_t, 4> sample_multinomial(PhiloxStream &rng, uint64_t n, const std::array<double, 4> &probs) {
    for (double p : probs) {
        if (!(p >= 0.0)) {
            throw std::invalid_argument("sample_multinomial: probabilities must be nonnegative");
        }
    }
    std::array<uint64_t, 4> counts{};
    uint64_t remaining = n;
    for (size_t i = 0; i < 3 && remaining > 0; ++i) {
        double tail = 0.0;
        for (size_t j = i; j < 4; ++j) {
            tail += probs[j];
        }
        double p = tail > 0.0 ? std::min(1.0, probs[i] / tail) : 0.0;
        counts[i] = sample_binomial(rng, remaining, p);
        remaining -= counts[i];
    }
    counts[3] = remaining;
    return counts;
}

}  // namespace bellsig
