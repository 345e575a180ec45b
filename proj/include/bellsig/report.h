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

#ifndef BELLSIG_REPORT_H
#define BELLSIG_REPORT_H

#include <cstdint>
#include <optional>
#include <string>
#include <vector>

#include "bellsig/plan.h"
#include "bellsig/statistics.h"
#include "json.hpp"

namespace bellsig {

inline constexpr const char *kReportSchema = "report/1";

struct PairReport {
    std::vector<int> pair;
    size_t jobs = 0;
    /// N_ab per setting.
    std::array<uint64_t, 4> trials{};
    NoSigReport nosig;
    CHSHReport chsh;
    std::optional<double> delta_f_mhz;
};

struct Report {
    std::string device;
    TestKind test = TestKind::A;
    double look_elsewhere = kDefaultLookElsewhere;
    std::vector<PairReport> pairs;
    /// Spearman(max |z|, 1/|delta f|) when at least three pairs carry delta f.
    std::optional<double> freq_correlation;
};

/// Sums the per-job tables of every pair and evaluates all statistics.
/// Pairs appear in order of first occurrence.
Report analyze_tables(const std::string &device, TestKind test, const std::vector<CountsTable> &tables,
                      double look_elsewhere = kDefaultLookElsewhere);

/// `x` rounded to six significant digits.
double round_sig6(double x);

/// report/1 JSON; every number has six significant digits and undefined
/// statistics (zero variance) are null.
nlohmann::json report_to_json(const Report &report);

/// Fixed-width table: delta P and sigma in units of 1e-4 with three
/// significant digits, '*' after entries with |z| > 5. Test a adds CHSH
/// and its sigma. Reads report/1 JSON so it works on saved reports.
std::string render_paper_table(const nlohmann::json &report);

/// `pair,job,d0*,d1*,d*0,d*1,N` per table, one line per (pair, job).
std::string per_job_csv(const std::vector<CountsTable> &tables);

}  // namespace bellsig

#endif
