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

#ifndef BELLSIG_COUNTS_IO_H
#define BELLSIG_COUNTS_IO_H

#include <cstdint>
#include <map>
#include <string>
#include <vector>

#include "bellsig/plan.h"
#include "bellsig/statistics.h"
#include "json.hpp"

namespace bellsig {

inline constexpr const char *kCountsSchema = "counts/1";

/// Counts of one setting accumulated over `repetitions` circuits of `shots` each.
struct CountsRecord {
    std::vector<int> pair;
    int job = 0;
    Setting setting{};
    OutcomeCounts counts{};
    uint64_t shots = 0;
    uint64_t repetitions = 1;

    bool operator==(const CountsRecord &other) const = default;
};

struct CountsFile {
    std::string device;
    TestKind test = TestKind::A;
    std::vector<CountsRecord> records;
    /// f_A - f_B per pair label ("55-68-67", "49-66").
    std::map<std::string, double> delta_f_mhz;

    bool operator==(const CountsFile &other) const = default;
};

/// "55-68-67" style label of a list of device ids.
std::string pair_label(const std::vector<int> &ids);

/// Throws ValidationError naming the offending record index.
CountsFile counts_from_json(const nlohmann::json &j);
nlohmann::json counts_to_json(const CountsFile &file);
/// Deterministic text: one record per line.
std::string emit_counts(const CountsFile &file);
CountsFile parse_counts_text(const std::string &text);
CountsFile read_counts_file(const std::string &path);
void write_counts_file(const std::string &path, const CountsFile &file);

/// One table per (pair, job), ordered by pair ids then job.
std::vector<CountsTable> to_tables(const CountsFile &file);
/// read_counts_file followed by to_tables.
std::vector<CountsTable> parse_counts(const std::string &path);

/// Inverse of to_tables for tables holding `repetitions` circuits of `shots`
/// per setting. Tables without a job id get job 0.
CountsFile from_tables(const std::string &device, TestKind test, const std::vector<CountsTable> &tables,
                       uint64_t shots, uint64_t repetitions);

}  // namespace bellsig

#endif
