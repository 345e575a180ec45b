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

#ifndef BELLSIG_RNG_H
#define BELLSIG_RNG_H

#include <array>
#include <cstdint>

namespace bellsig {

/// Philox4x64-10 block function (Salmon et al., Random123).
std::array<uint64_t, 4> philox4x64(std::array<uint64_t, 4> counter, std::array<uint64_t, 2> key);

/// A counter-based random stream. The key is the user seed; counter words
/// 1..3 name the stream (e.g. pair, job, circuit) and word 0 counts blocks,
/// so any stream can be regenerated independently of execution order.
class PhiloxStream {
   public:
    PhiloxStream(uint64_t seed, uint64_t stream_a, uint64_t stream_b = 0, uint64_t stream_c = 0);

    uint64_t next_u64();
    /// Uniform on [0, 1) with 53 random bits.
    double uniform();
    /// Uniform on (0, 1).
    double uniform_open();
    /// Unbiased integer in [0, bound) (Lemire's multiply-and-reject).
    uint64_t uniform_below(uint64_t bound);

   private:
    std::array<uint64_t, 4> counter_;
    std::array<uint64_t, 2> key_;
    std::array<uint64_t, 4> block_{};
    int used_ = 4;
};

}  // namespace bellsig

#endif
