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

#include "bellsig/cli.h"

#include <filesystem>
#include <fstream>
#include <iostream>
#include <sstream>

#include "CLI11.hpp"
#include "bellsig/counts_io.h"
#include "bellsig/errors.h"
#include "bellsig/noise.h"
#include "bellsig/plan.h"
#include "bellsig/report.h"
#include "bellsig/simulator.h"
#include "bellsig/topology.h"
#include "bellsig/transpiler.h"

namespace bellsig {

namespace {

using nlohmann::json;

json read_json(const std::string &path, const char *what) {
    std::ifstream in(path);
    if (!in) {
        throw ValidationError(std::string("cannot read ") + what + " '" + path + "'");
    }
    try {
        return json::parse(in);
    } catch (const json::parse_error &e) {
        throw ValidationError(std::string(what) + " '" + path + "' is not valid JSON: " + e.what());
    }
}

void write_text(const std::string &path, const std::string &text) {
    std::ofstream out(path, std::ios::binary);
    if (!out) {
        throw ValidationError("cannot write '" + path + "'");
    }
    out << text;
}

struct PlanArgs {
    std::string device;
    std::string name;
    std::string test = "a";
    int distance = 0;
    int jobs = 60;
    int shots = 20000;
    int reps = 25;
    uint64_t seed = 0;
    std::string gate_level = "cnot";
    std::string out;
};

int cmd_plan(const PlanArgs &a, std::ostream &out) {
    CouplingGraph graph = CouplingGraph::load(a.device);
    PlanParams p;
    p.test = test_kind_from_string(a.test);
    const int d = a.distance == 0 ? test_distance(p.test) : a.distance;
    if (d != test_distance(p.test)) {
        throw ValidationError("test " + a.test + " runs at distance " + std::to_string(test_distance(p.test)) +
                              ", not " + std::to_string(d));
    }
    p.jobs = a.jobs;
    p.shots = a.shots;
    p.repetitions = a.reps;
    p.seed = a.seed;
    p.gate_level = a.gate_level == "native" ? GateLevel::Native : GateLevel::Cnot;
    p.device = a.name.empty() ? std::filesystem::path(a.device).stem().string() : a.name;
    p.pairs = select_disjoint(pairs_at_distance(graph, d));
    if (p.pairs.empty()) {
        throw ValidationError("coupling map has no qubit pairs at distance " + std::to_string(d));
    }
    ExperimentPlan plan = make_plan(p);
    write_text(a.out, plan_to_json(plan).dump(1) + "\n");
    out << "plan: " << plan.pairs.size() << " pairs, " << plan.jobs << " jobs x " << plan.circuits_per_job()
        << " circuits x " << plan.shots << " shots -> " << a.out << "\n";
    return kExitOk;
}

struct SimulateArgs {
    std::string plan;
    std::string noise;
    uint64_t seed = 0;
    unsigned threads = 1;
    std::string out;
};

int cmd_simulate(const SimulateArgs &a, std::ostream &out) {
    ExperimentPlan plan = plan_from_json(read_json(a.plan, "plan"));
    NoiseModel noise;
    if (!a.noise.empty()) {
        noise = noise_model_from_json(read_json(a.noise, "noise config"));
    }
    std::vector<CountsTable> tables = simulate_plan(plan, noise, a.seed, a.threads);
    CountsFile file = from_tables(plan.device, plan.test, tables, static_cast<uint64_t>(plan.shots),
                                  static_cast<uint64_t>(plan.repetitions));
    write_counts_file(a.out, file);
    out << "simulate: " << tables.size() << " (pair, job) tables, " << plan.trials_per_setting()
        << " trials per setting per pair -> " << a.out << "\n";
    return kExitOk;
}

struct AnalyzeArgs {
    std::string counts;
    double m = kDefaultLookElsewhere;
    std::string out;
    std::string table;
    std::string per_job_csv;
};

int cmd_analyze(const AnalyzeArgs &a, std::ostream &out) {
    CountsFile file = read_counts_file(a.counts);
    std::vector<CountsTable> tables = to_tables(file);
    if (!(a.m >= 1.0)) {
        throw ValidationError("--bonferroni-m must be at least 1");
    }
    Report report = analyze_tables(file.device, file.test, tables, a.m);
    json j = report_to_json(report);
    write_text(a.out, j.dump(2) + "\n");
    std::string table = render_paper_table(j);
    if (a.table.empty()) {
        out << table;
    } else {
        write_text(a.table, table);
    }
    if (!a.per_job_csv.empty()) {
        write_text(a.per_job_csv, per_job_csv(tables));
    }
    return kExitOk;
}

int cmd_transpile_verify(double tol, std::ostream &out) {
    bool ok = true;
    for (const auto &r : verify_identities(tol)) {
        char buf[64];
        std::snprintf(buf, sizeof buf, "%.3e", r.phase_residual);
        out << (r.passed ? "PASS " : "FAIL ") << r.name << "  residual " << buf << "\n";
        ok = ok && r.passed;
    }
    return ok ? kExitOk : kExitNumerical;
}

int cmd_report(const std::string &path, const std::string &format, const std::string &out_path, std::ostream &out) {
    if (format != "paper-table") {
        throw ValidationError("unknown report format '" + format + "'");
    }
    std::string table = render_paper_table(read_json(path, "report"));
    if (out_path.empty()) {
        out << table;
    } else {
        write_text(out_path, table);
    }
    return kExitOk;
}

}  // namespace

int run_cli(const std::vector<std::string> &args, std::ostream &out, std::ostream &err) {
    CLI::App app{"Bell and no-signaling test laboratory: plan, simulate and analyze CHSH experiments", "bellsig"};
    app.require_subcommand(1);

    PlanArgs plan_args;
    auto *plan = app.add_subcommand("plan", "Select disjoint qubit pairs and shuffle the circuits of every job");
    plan->add_option("--device", plan_args.device, "Coupling map JSON")->required()->check(CLI::ExistingFile);
    plan->add_option("--name", plan_args.name, "Device name recorded in the plan (default: map file stem)");
    plan->add_option("--test", plan_args.test, "Test kind")->check(CLI::IsMember({"a", "b", "c"}));
    plan->add_option("--distance", plan_args.distance, "A-B distance (2 for tests a and b, 4 for c)");
    plan->add_option("--jobs", plan_args.jobs, "Jobs")->capture_default_str();
    plan->add_option("--shots", plan_args.shots, "Shots per circuit")->capture_default_str();
    plan->add_option("--reps", plan_args.reps, "Repetitions of each setting per job")->capture_default_str();
    plan->add_option("--seed", plan_args.seed, "Shuffle seed (64-bit)")->required();
    plan->add_option("--gate-level", plan_args.gate_level, "cnot or native")
        ->check(CLI::IsMember({"cnot", "native"}));
    plan->add_option("--out", plan_args.out, "Output plan JSON")->required();

    SimulateArgs sim_args;
    auto *sim = app.add_subcommand("simulate", "Sample counts for every (pair, job) of a plan");
    sim->add_option("--plan", sim_args.plan, "Plan JSON")->required()->check(CLI::ExistingFile);
    sim->add_option("--noise", sim_args.noise, "Noise JSON (default: ideal)")->check(CLI::ExistingFile);
    sim->add_option("--seed", sim_args.seed, "Sampling seed (64-bit)")->required();
    sim->add_option("--threads", sim_args.threads, "Worker threads; output does not depend on it")
        ->capture_default_str();
    sim->add_option("--out", sim_args.out, "Output counts JSON")->required();

    AnalyzeArgs an_args;
    auto *analyze = app.add_subcommand("analyze", "CHSH and no-signaling statistics of a counts file");
    analyze->add_option("--counts", an_args.counts, "Counts JSON")->required()->check(CLI::ExistingFile);
    analyze->add_option("--bonferroni-m", an_args.m, "Number of tests for the look-elsewhere correction")
        ->capture_default_str();
    analyze->add_option("--out", an_args.out, "Output report JSON")->required();
    analyze->add_option("--table", an_args.table, "Output table text (default: stdout)");
    analyze->add_option("--per-job-csv", an_args.per_job_csv, "Per-job delta series CSV");

    double tol = 1e-10;
    auto *verify = app.add_subcommand("transpile-verify", "Check the native gate identities");
    verify->add_option("--tol", tol, "Tolerance up to global phase")->capture_default_str();

    std::string report_path, format = "paper-table", report_out;
    auto *report = app.add_subcommand("report", "Render a saved report");
    report->add_option("--report", report_path, "Report JSON")->required()->check(CLI::ExistingFile);
    report->add_option("--format", format, "Output format")->check(CLI::IsMember({"paper-table"}));
    report->add_option("--out", report_out, "Output file (default: stdout)");

    std::vector<const char *> argv{"bellsig"};
    for (const auto &a : args) {
        argv.push_back(a.c_str());
    }
    try {
        app.parse(static_cast<int>(argv.size()), argv.data());
    } catch (const CLI::CallForHelp &e) {
        return app.exit(e, out, err);
    } catch (const CLI::CallForAllHelp &e) {
        return app.exit(e, out, err);
    } catch (const CLI::ParseError &e) {
        app.exit(e, out, err);
        return kExitUsage;
    }

    try {
        if (*plan) {
            return cmd_plan(plan_args, out);
        }
        if (*sim) {
            return cmd_simulate(sim_args, out);
        }
        if (*analyze) {
            return cmd_analyze(an_args, out);
        }
        if (*verify) {
            return cmd_transpile_verify(tol, out);
        }
        if (*report) {
            return cmd_report(report_path, format, report_out, out);
        }
    } catch (const ValidationError &e) {
        err << "error: " << e.what() << "\n";
        return kExitValidation;
    } catch (const DegenerateInput &e) {
        err << "error: " << e.what() << "\n";
        return kExitValidation;
    } catch (const std::invalid_argument &e) {
        err << "error: " << e.what() << "\n";
        return kExitValidation;
    }
    return kExitUsage;
}

}  // namespace bellsig
