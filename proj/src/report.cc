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

#include "bellsig/report.h"

#include <cmath>
#include <cstdio>
#include <cstdlib>
#include <map>
#include <sstream>

#include "bellsig/counts_io.h"
#include "bellsig/errors.h"

namespace bellsig {

namespace {

using nlohmann::json;

constexpr double kSignificanceZ = 5.0;

json number(double x) {
    if (!std::isfinite(x)) {
        return nullptr;
    }
    return round_sig6(x);
}

template <size_t N>
json numbers(const std::array<double, N> &xs) {
    json a = json::array();
    for (double x : xs) {
        a.push_back(number(x));
    }
    return a;
}

std::string sig3(double x) {
    char buf[32];
    std::snprintf(buf, sizeof buf, "%.3g", x);
    return buf;
}

double as_double(const json &j) {
    return j.is_number() ? j.get<double>() : std::nan("");
}

std::string pad(const std::string &s, size_t width) {
    if (s.size() >= width) {
        return s + " ";
    }
    return std::string(width - s.size(), ' ') + s;
}

}  // namespace

double round_sig6(double x) {
    if (!std::isfinite(x) || x == 0.0) {
        return x;
    }
    char buf[32];
    std::snprintf(buf, sizeof buf, "%.6g", x);
    return std::strtod(buf, nullptr);
}

Report analyze_tables(const std::string &device, TestKind test, const std::vector<CountsTable> &tables,
                      double look_elsewhere) {
    if (tables.empty()) {
        throw ValidationError("no counts to analyze");
    }
    Report r;
    r.device = device;
    r.test = test;
    r.look_elsewhere = look_elsewhere;
    std::vector<std::vector<int>> order;
    std::map<std::vector<int>, std::vector<CountsTable>> by_pair;
    for (const auto &t : tables) {
        if (t.test != test) {
            throw ValidationError("counts mix test kinds");
        }
        auto [it, inserted] = by_pair.try_emplace(t.pair);
        if (inserted) {
            order.push_back(t.pair);
        }
        it->second.push_back(t);
    }
    std::vector<std::pair<NoSigReport, double>> with_freq;
    for (const auto &ids : order) {
        const auto &series = by_pair[ids];
        PairReport p;
        p.pair = ids;
        p.jobs = series.size();
        CountsTable total = aggregate(series);
        for (size_t s = 0; s < 4; ++s) {
            p.trials[s] = total.total(Setting::from_index(s));
        }
        p.nosig = no_signaling_report(total, look_elsewhere);
        p.chsh = chsh(total);
        p.delta_f_mhz = series.front().delta_f_mhz;
        if (p.delta_f_mhz && !p.nosig.degenerate_variance) {
            with_freq.emplace_back(p.nosig, *p.delta_f_mhz);
        }
        r.pairs.push_back(std::move(p));
    }
    if (with_freq.size() >= 3) {
        r.freq_correlation = freq_correlation(with_freq);
    }
    return r;
}

json report_to_json(const Report &report) {
    json j = json::object();
    j["schema"] = kReportSchema;
    j["device"] = report.device;
    j["test"] = to_string(report.test);
    j["look_elsewhere_m"] = round_sig6(report.look_elsewhere);
    j["notes"] =
        "p_raw is the two-sided Gaussian tail erfc(|z|/sqrt(2)); p_corrected = min(1, m p_raw). "
        "p_corrected_max belongs to the delta with the largest |z|. sigma uses the per-setting trial "
        "counts. Probabilities rounded to a few decimals shift |z| noticeably at |z| ~ 9, so p-values "
        "recomputed from rounded tables agree with count-based ones only to within an order of magnitude.";
    json pairs = json::array();
    for (const auto &p : report.pairs) {
        json e = json::object();
        e["pair"] = p.pair;
        e["label"] = pair_label(p.pair);
        e["jobs"] = p.jobs;
        e["trials"] = p.trials;
        e["deltas"] = numbers(p.nosig.deltas);
        e["sigmas"] = numbers(p.nosig.sigmas);
        e["z"] = numbers(p.nosig.z);
        e["p_raw"] = numbers(p.nosig.p_raw);
        e["p_corrected"] = numbers(p.nosig.p_corrected);
        e["max_abs_z"] = number(p.nosig.max_abs_z);
        e["max_delta"] = std::isfinite(p.nosig.max_abs_z) ? json(delta_name(p.nosig.max_index)) : json(nullptr);
        e["p_corrected_max"] = number(p.nosig.p_corrected_max);
        e["degenerate_variance"] = p.nosig.degenerate_variance;
        e["chsh"] = number(p.chsh.value);
        e["chsh_sigma"] = number(p.chsh.sigma);
        e["chsh_z"] = number(p.chsh.z);
        e["correlators"] = numbers(p.chsh.correlators);
        e["delta_f_mhz"] = p.delta_f_mhz ? number(*p.delta_f_mhz) : json(nullptr);
        pairs.push_back(std::move(e));
    }
    j["pairs"] = std::move(pairs);
    j["freq_correlation"] = report.freq_correlation ? number(*report.freq_correlation) : json(nullptr);
    return j;
}

std::string render_paper_table(const json &report) {
    if (!report.is_object() || report.value("schema", std::string()) != kReportSchema) {
        throw ValidationError(std::string("report schema must be '") + kReportSchema + "'");
    }
    std::ostringstream out;
    try {
        const bool bell = report.at("test").get<std::string>() == "a";
        size_t label_width = 8;
        for (const auto &p : report.at("pairs")) {
            label_width = std::max(label_width, p.at("label").get<std::string>().size() + 2);
        }
        const size_t w = 10;
        out << "device " << report.value("device", std::string()) << ", test " << report.at("test").get<std::string>()
            << "\n";
        out << std::string(label_width - (bell ? 5 : 3), ' ') << (bell ? "A-S-B" : "A-B");
        if (bell) {
            out << pad("CHSH", w) << pad("sigma", w);
        }
        for (const char *name : {"dP0*", "dP1*", "dP*0", "dP*1"}) {
            out << pad(name, w);
        }
        out << pad("f_A-B", w) << "\n";
        double sig_lo = INFINITY, sig_hi = -INFINITY;
        for (const auto &p : report.at("pairs")) {
            out << pad(p.at("label").get<std::string>(), label_width);
            if (bell) {
                double c = as_double(p.at("chsh"));
                double s = as_double(p.at("chsh_sigma"));
                out << pad(std::isfinite(c) ? sig3(c) : "-", w) << pad(std::isfinite(s) ? sig3(s * 1e4) : "-", w);
            }
            for (size_t k = 0; k < 4; ++k) {
                double d = as_double(p.at("deltas")[k]);
                double z = as_double(p.at("z")[k]);
                double s = as_double(p.at("sigmas")[k]);
                if (std::isfinite(s)) {
                    sig_lo = std::min(sig_lo, s);
                    sig_hi = std::max(sig_hi, s);
                }
                std::string cell = sig3(d * 1e4);
                if (std::isfinite(z) && std::abs(z) > kSignificanceZ) {
                    cell += "*";
                }
                out << pad(cell, w);
            }
            double f = as_double(p.at("delta_f_mhz"));
            out << pad(std::isfinite(f) ? sig3(f) : "-", w) << "\n";
        }
        out << "delta P and sigma in units of 1e-4; f_A-B = f_A - f_B in MHz; * marks |delta P| > 5 sigma.\n";
        if (std::isfinite(sig_lo)) {
            out << "sigma of delta P: " << sig3(sig_lo * 1e4);
            if (sig3(sig_hi * 1e4) != sig3(sig_lo * 1e4)) {
                out << " to " << sig3(sig_hi * 1e4);
            }
            out << "\n";
        }
        const json &rho = report.at("freq_correlation");
        if (rho.is_number()) {
            out << "Spearman(max |z|, 1/|f_A-B|) = " << sig3(rho.get<double>()) << "\n";
        }
    } catch (const json::exception &e) {
        throw ValidationError(std::string("malformed report: ") + e.what());
    }
    return out.str();
}

std::string per_job_csv(const std::vector<CountsTable> &tables) {
    std::ostringstream out;
    out << "pair,job,d0*,d1*,d*0,d*1,N\n";
    char buf[32];
    for (const auto &t : tables) {
        out << pair_label(t.pair) << ',' << (t.job ? std::to_string(*t.job) : std::string());
        for (double d : delta_p(t)) {
            std::snprintf(buf, sizeof buf, "%.6g", d);
            out << ',' << buf;
        }
        out << ',' << t.total(Setting(0, 0)) << "\n";
    }
    return out.str();
}

}  // namespace bellsig
