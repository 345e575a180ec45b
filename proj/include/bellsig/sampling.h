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

#ifndef BELLSIG_SAMPLING_H
#define BELLSIG_SAMPLING_H

#include <array>
#include <cstdint>

#include "bellsig/rng.h"

namespace bellsig {

/// Binomial(n, p) draw. Uses inversion when min(p, 1-p) * n < 10 and
/// Hormann's BTRD transformed rejection otherwise.
uint64_t sample_binomial(PhiloxStream &rng, uint64_t n, double p);

/// One multinomial draw of size n over four categories by sequential
/// binomial conditioning.
std::array<uint64_t, 4> sample_multinomial(PhiloxStream &rng, uint64_t n, const std::array<double, 4> &probs);

}  // namespace bellsig

#endif
