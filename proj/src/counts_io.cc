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

#include "bellsig/counts_io.h"

#include <fstream>
#include <set>
#include <sstream>
#include <tuple>

#include "bellsig/errors.h"

namespace bellsig {

namespace {

using nlohmann::json;

[[noreturn]] void fail_record(size_t index, const std::string &what) {
    throw ValidationError("counts record " + std::to_string(index) + ": " + what);
}

CountsRecord record_from_json(const json &r, size_t index) {
    if (!r.is_object()) {
        fail_record(index, "not an object");
    }
    for (const char *key : {"pair", "job", "setting", "counts", "shots"}) {
        if (!r.contains(key)) {
            fail_record(index, std::string("missing '") + key + "'");
        }
    }
    CountsRecord rec;
    try {
        rec.pair = r.at("pair").get<std::vector<int>>();
        rec.job = r.at("job").get<int>();
        auto setting = r.at("setting").get<std::vector<int>>();
        if (setting.size() != 2 || setting[0] < 0 || setting[0] > 1 || setting[1] < 0 || setting[1] > 1) {
            fail_record(index, "setting must be [a, b] with a, b in {0, 1}");
        }
        rec.setting = Setting(setting[0], setting[1]);
        auto counts = r.at("counts").get<std::vector<uint64_t>>();
        if (counts.size() != 4) {
            fail_record(index, "counts must list n++, n+-, n-+, n--");
        }
        std::copy(counts.begin(), counts.end(), rec.counts.begin());
        rec.shots = r.at("shots").get<uint64_t>();
        rec.repetitions = r.value("repetitions", uint64_t{1});
    } catch (const json::exception &e) {
        fail_record(index, e.what());
    }
    if (rec.pair.size() < 2) {
        fail_record(index, "pair needs at least the A and B qubit ids");
    }
    std::set<int> distinct(rec.pair.begin(), rec.pair.end());
    if (distinct.size() != rec.pair.size() || *distinct.begin() < 0) {
        fail_record(index, "pair ids must be distinct and nonnegative");
    }
    if (rec.job < 0) {
        fail_record(index, "job id must be nonnegative");
    }
    if (rec.shots == 0 || rec.repetitions == 0) {
        fail_record(index, "shots and repetitions must be positive");
    }
    uint64_t sum = rec.counts[0] + rec.counts[1] + rec.counts[2] + rec.counts[3];
    if (sum != rec.shots * rec.repetitions) {
        fail_record(index, "counts sum to " + std::to_string(sum) + " but shots x repetitions = " +
                               std::to_string(rec.shots * rec.repetitions));
    }
    return rec;
}

json record_to_json(const CountsRecord &r) {
    json j = json::object();
    j["pair"] = r.pair;
    j["job"] = r.job;
    j["setting"] = {r.setting.a, r.setting.b};
    j["counts"] = r.counts;
    j["shots"] = r.shots;
    j["repetitions"] = r.repetitions;
    return j;
}

}  // namespace

std::string pair_label(const std::vector<int> &ids) {
    std::string s;
    for (size_t i = 0; i < ids.size(); ++i) {
        if (i) {
            s += '-';
        }
        s += std::to_string(ids[i]);
    }
    return s;
}

CountsFile counts_from_json(const json &j) {
    if (!j.is_object()) {
        throw ValidationError("counts file must be a JSON object");
    }
    if (j.value("schema", std::string()) != kCountsSchema) {
        throw ValidationError(std::string("counts file schema must be '") + kCountsSchema + "'");
    }
    CountsFile f;
    try {
        f.device = j.value("device", std::string());
        f.test = test_kind_from_string(j.at("test").get<std::string>());
        if (j.contains("delta_f_mhz")) {
            f.delta_f_mhz = j.at("delta_f_mhz").get<std::map<std::string, double>>();
        }
    } catch (const json::exception &e) {
        throw ValidationError(std::string("counts file header: ") + e.what());
    }
    if (!j.contains("records") || !j.at("records").is_array()) {
        throw ValidationError("counts file needs a 'records' array");
    }
    const auto &records = j.at("records");
    std::set<std::tuple<std::vector<int>, int, size_t>> seen;
    std::map<std::pair<std::vector<int>, int>, std::set<size_t>> groups;
    for (size_t i = 0; i < records.size(); ++i) {
        CountsRecord rec = record_from_json(records[i], i);
        if (!seen.emplace(rec.pair, rec.job, rec.setting.index()).second) {
            fail_record(i, "duplicate (pair, job, setting)");
        }
        groups[{rec.pair, rec.job}].insert(rec.setting.index());
        f.records.push_back(std::move(rec));
    }
    for (const auto &[key, settings] : groups) {
        if (settings.size() != 4) {
            throw ValidationError("pair " + pair_label(key.first) + " job " + std::to_string(key.second) +
                                  " does not have all four settings");
        }
    }
    return f;
}

json counts_to_json(const CountsFile &file) {
    json j = json::object();
    j["schema"] = kCountsSchema;
    j["device"] = file.device;
    j["test"] = to_string(file.test);
    if (!file.delta_f_mhz.empty()) {
        j["delta_f_mhz"] = file.delta_f_mhz;
    }
    json records = json::array();
    for (const auto &r : file.records) {
        records.push_back(record_to_json(r));
    }
    j["records"] = std::move(records);
    return j;
}

std::string emit_counts(const CountsFile &file) {
    json header = counts_to_json(file);
    std::ostringstream out;
    out << "{\n";
    out << "  \"schema\": " << header["schema"].dump() << ",\n";
    out << "  \"device\": " << header["device"].dump() << ",\n";
    out << "  \"test\": " << header["test"].dump() << ",\n";
    if (header.contains("delta_f_mhz")) {
        out << "  \"delta_f_mhz\": " << header["delta_f_mhz"].dump() << ",\n";
    }
    out << "  \"records\": [";
    const auto &records = header["records"];
    for (size_t i = 0; i < records.size(); ++i) {
        out << (i ? ",\n    " : "\n    ") << records[i].dump();
    }
    out << (records.empty() ? "]\n" : "\n  ]\n");
    out << "}\n";
    return out.str();
}

CountsFile parse_counts_text(const std::string &text) {
    json j;
    try {
        j = json::parse(text);
    } catch (const json::parse_error &e) {
        throw ValidationError(std::string("counts file is not valid JSON: ") + e.what());
    }
    return counts_from_json(j);
}

CountsFile read_counts_file(const std::string &path) {
    std::ifstream in(path);
    if (!in) {
        throw ValidationError("cannot read counts file '" + path + "'");
    }
    std::stringstream buf;
    buf << in.rdbuf();
    return parse_counts_text(buf.str());
}

void write_counts_file(const std::string &path, const CountsFile &file) {
    std::ofstream out(path, std::ios::binary);
    if (!out) {
        throw ValidationError("cannot write counts file '" + path + "'");
    }
    out << emit_counts(file);
}

std::vector<CountsTable> to_tables(const CountsFile &file) {
    std::map<std::pair<std::vector<int>, int>, CountsTable> groups;
    for (const auto &r : file.records) {
        auto [it, inserted] = groups.try_emplace({r.pair, r.job});
        CountsTable &t = it->second;
        if (inserted) {
            t.pair = r.pair;
            t.test = file.test;
            t.job = r.job;
            auto df = file.delta_f_mhz.find(pair_label(r.pair));
            if (df != file.delta_f_mhz.end()) {
                t.delta_f_mhz = df->second;
            }
        }
        t.add(r.setting, r.counts);
    }
    std::vector<CountsTable> out;
    out.reserve(groups.size());
    for (auto &[key, table] : groups) {
        out.push_back(std::move(table));
    }
    return out;
}

std::vector<CountsTable> parse_counts(const std::string &path) {
    return to_tables(read_counts_file(path));
}

CountsFile from_tables(const std::string &device, TestKind test, const std::vector<CountsTable> &tables,
                       uint64_t shots, uint64_t repetitions) {
    CountsFile f;
    f.device = device;
    f.test = test;
    for (const auto &t : tables) {
        if (t.test != test) {
            throw ValidationError("from_tables: table test kind differs from the file's");
        }
        if (t.delta_f_mhz) {
            f.delta_f_mhz[pair_label(t.pair)] = *t.delta_f_mhz;
        }
        for (size_t s = 0; s < 4; ++s) {
            CountsRecord r;
            r.pair = t.pair;
            r.job = t.job.value_or(0);
            r.setting = Setting::from_index(s);
            r.counts = t.counts[s];
            r.shots = shots;
            r.repetitions = repetitions;
            f.records.push_back(std::move(r));
        }
    }
    return f;
}

}  // namespace bellsig
