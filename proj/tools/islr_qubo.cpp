// Copyright 2026 The islr-qubo Authors
//
//    Licensed under the Apache License, Version 2.0 (the "License");
//    you may not use this file except in compliance with the License.
//    You may obtain a copy of the License at
//
//        http://www.apache.org/licenses/LICENSE-2.0
//
//    Unless required by applicable law or agreed to in writing, software
//    distributed under the License is distributed on an "AS IS" BASIS,
//    WITHOUT WARRANTIES OR CONDITIONS OF ANY KIND, either express or implied.
//    See the License for the specific language governing permissions and
//    limitations under the License.

// islr-qubo: build, solve, verify and benchmark ISLR phase-code QUBO models.

#include <cstdio>
#include <fstream>
#include <iostream>
#include <sstream>

#include <CLI11.hpp>

#include "islr/bench.hpp"

namespace {

using namespace islr;
using bench::Json;

constexpr int kExitUser = 1;
constexpr int kExitInternal = 2;

class UserError : public std::runtime_error {
  public:
    using std::runtime_error::runtime_error;
};

std::string read_file(const std::string& path) {
    std::ifstream in(path, std::ios::binary);
    if (!in) throw UserError("cannot open '" + path + "'");
    std::ostringstream s;
    s << in.rdbuf();
    return s.str();
}

void write_output(const std::string& path, const std::string& text) {
    if (path.empty() || path == "-") {
        std::cout << text;
        return;
    }
    std::ofstream out(path, std::ios::binary);
    if (!out) throw UserError("cannot write '" + path + "'");
    out << text;
}

QuadraticModel load_model(const std::string& path) {
    const std::string text = read_file(path);
    const auto first = text.find_first_not_of(" \t\r\n");
    if (first != std::string::npos && text[first] == '{') return import_model_json(text);
    return import_model(text);
}

struct Options {
    std::string problem = "binary-matched";
    std::string n_text;
    std::string q_text = "2";
    std::optional<double> lambda;
    std::optional<double> lambda1, lambda2, lambda3;
    std::optional<double> lambda_oh, lambda_s, lambda_ch, lambda_cv;
    AnnealSchedule schedule;
    int workers = default_workers();
    std::string out;
    std::string format;
    std::string model;
    std::string result;
    std::string backend = "sa";
    bool timing = false;
    std::uint64_t oracle_budget = std::uint64_t{1} << 20;
};

void add_weight_flags(CLI::App* cmd, Options& o) {
    cmd->add_option("--lambda", o.lambda, "Set every Lagrange multiplier (default 10)");
    cmd->add_option("--lambda1", o.lambda1, "Binary: diagonal penalty weight");
    cmd->add_option("--lambda2", o.lambda2, "Binary: symmetry penalty weight");
    cmd->add_option("--lambda3", o.lambda3, "Binary: triplet penalty weight");
    cmd->add_option("--lambda-oh", o.lambda_oh, "Poly-phase: one-hot penalty weight");
    cmd->add_option("--lambda-s", o.lambda_s, "Poly-phase: symmetry penalty weight");
    cmd->add_option("--lambda-ch", o.lambda_ch, "Poly-phase: horizontal chain weight");
    cmd->add_option("--lambda-cv", o.lambda_cv, "Poly-phase: vertical chain weight (defaults to --lambda-ch)");
}

void add_schedule_flags(CLI::App* cmd, Options& o) {
    cmd->add_option("--sweeps", o.schedule.num_sweeps, "Annealing sweeps per restart")->capture_default_str();
    cmd->add_option("--restarts", o.schedule.num_restarts, "Independent annealing restarts")->capture_default_str();
    cmd->add_option("--beta-start", o.schedule.beta_start, "Initial inverse temperature")->capture_default_str();
    cmd->add_option("--beta-end", o.schedule.beta_end, "Final inverse temperature")->capture_default_str();
    cmd->add_option("--seed", o.schedule.rng_seed, "Random seed")->capture_default_str();
    cmd->add_option("--workers", o.workers, "Worker threads (default from ISLR_QUBO_WORKERS)");
}

void apply_weights(const Options& o, binary_lift::Weights& bw, polyphase_lift::Weights& pw) {
    if (o.lambda) {
        bw = {*o.lambda, *o.lambda, *o.lambda};
        pw = polyphase_lift::Weights::uniform(*o.lambda);
    }
    if (o.lambda1) bw.lambda1 = *o.lambda1;
    if (o.lambda2) bw.lambda2 = *o.lambda2;
    if (o.lambda3) bw.lambda3 = *o.lambda3;
    if (o.lambda_oh) pw.lambda_oh = *o.lambda_oh;
    if (o.lambda_s) pw.lambda_s = *o.lambda_s;
    if (o.lambda_ch) {
        pw.lambda_ch = *o.lambda_ch;
        if (!o.lambda_cv) pw.lambda_cv = *o.lambda_ch;
    }
    if (o.lambda_cv) pw.lambda_cv = *o.lambda_cv;
}

bench::ExperimentConfig experiment(const Options& o) {
    bench::ExperimentConfig c;
    c.problem = bench::case_from_string(o.problem);
    if (o.n_text.empty()) throw UserError("--n is required");
    const auto ns = bench::parse_index_list(o.n_text);
    if (ns.size() != 1) throw UserError("--n must be a single length here");
    c.n = ns.front();
    const auto qs = bench::parse_index_list(o.q_text);
    if (qs.size() != 1) throw UserError("--q must be a single value here");
    c.q = static_cast<int>(qs.front());
    apply_weights(o, c.binary_weights, c.polyphase_weights);
    c.schedule = o.schedule;
    c.validate();
    return c;
}

std::string dump(const Json& j) { return j.dump(2) + "\n"; }

std::string summary_text(const Json& s) {
    std::ostringstream out;
    out << "case " << s["case"].get<std::string>() << ", N=" << s["n"];
    if (s.contains("q")) out << ", Q=" << s["q"];
    out << "\nvariables " << s["num_vars"] << ", interactions " << s["num_interactions"] << "\n";
    out << "Lagrange multiplier lower bounds:";
    for (const auto& [k, v] : s["lambda_lower_bounds"].items()) out << ' ' << k << '>' << format_real(v.get<double>());
    out << "\nestimated sample time (model) " << format_short(s["estimated_sample_time_us_model"].get<double>(), 4)
        << " us\n";
    if (s.contains("warning")) out << "warning: " << s["warning"].get<std::string>() << "\n";
    return out.str();
}

int cmd_build(const Options& o) {
    const QuadraticModel m = bench::build_model(experiment(o));
    const std::string body = o.format == "json" ? export_model_json(m) : export_model(m);
    write_output(o.out, body);
    // counts go to stderr when the model itself is on stdout
    (o.out.empty() || o.out == "-" ? std::cerr : std::cout) << summary_text(bench::build_summary(m));
    return 0;
}

int cmd_solve(const Options& o) {
    if (o.model.empty()) throw UserError("--model is required");
    const QuadraticModel m = load_model(o.model);
    const auto backend = bench::backend_from_string(o.backend);
    if (backend == bench::Backend::none) throw UserError("solve needs --backend sa or exact");
    const bench::SolveOutcome r = bench::solve(m, backend, o.schedule, o.workers);
    write_output(o.out, dump(r.result));
    std::cerr << "best energy " << format_real(r.result["best_energy"].get<double>()) << ", wall time "
              << format_real(r.wall_seconds) << " s\n";
    return 0;
}

int cmd_verify(const Options& o) {
    if (o.model.empty() || o.result.empty()) throw UserError("--model and --result are required");
    const QuadraticModel m = load_model(o.model);
    nlohmann::json result;
    try {
        result = nlohmann::json::parse(read_file(o.result));
    } catch (const nlohmann::json::parse_error& e) {
        throw UserError(std::string("cannot parse result file: ") + e.what());
    }
    const bench::VerifyReport r = bench::verify(m, result);
    write_output(o.out, o.format == "json" ? dump(bench::to_json(r)) : bench::to_text(r));
    return r.energy_consistent ? 0 : kExitUser;
}

int cmd_sweep(const Options& o) {
    bench::SweepConfig c;
    c.problem = bench::case_from_string(o.problem);
    if (o.n_text.empty()) throw UserError("--n is required (e.g. --n 3..8)");
    c.ns = bench::parse_index_list(o.n_text);
    c.qs.clear();
    for (Index q : bench::parse_index_list(o.q_text)) c.qs.push_back(static_cast<int>(q));
    apply_weights(o, c.binary_weights, c.polyphase_weights);
    c.schedule = o.schedule;
    c.backend = bench::backend_from_string(o.backend);
    c.oracle_budget = o.oracle_budget;
    c.timing = o.timing;
    c.workers = o.workers;
    const auto records = bench::run_sweep(c);
    write_output(o.out, o.format == "json" ? dump(bench::sweep_json(records, c.timing)) : bench::sweep_csv(records, c.timing));
    return 0;
}

int cmd_oracle(const Options& o, bool has_q) {
    if (o.n_text.empty()) throw UserError("--n is required");
    const auto ns = bench::parse_index_list(o.n_text);
    std::optional<int> q;
    if (has_q) q = static_cast<int>(bench::parse_index_list(o.q_text).front());
    Json all = Json::array();
    std::ostringstream text;
    for (Index n : ns) {
        Json r = bench::oracle(n, q, o.workers);
        text << "N=" << n;
        if (q) text << " Q=" << *q;
        text << " min ISLR " << format_short(r["min_islr"].get<double>()) << " (" << r["count"] << " optimizer(s))\n";
        for (const auto& opt : r["optimizers"]) {
            text << "  " << (opt.contains("sequence") ? opt["sequence"].get<std::string>() : opt["phase_indices"].dump())
                 << "  peak sidelobe " << format_short(opt["peak_sidelobe"].get<double>()) << '\n';
        }
        all.push_back(std::move(r));
    }
    write_output(o.out, o.format == "json" ? dump(all.size() == 1 ? all.front() : all) : text.str());
    return 0;
}

int cmd_info(const Options& o) {
    Json s;
    if (!o.model.empty()) {
        s = bench::build_summary(load_model(o.model));
    } else {
        s = bench::build_summary(bench::build_model(experiment(o)));
    }
    write_output(o.out, o.format == "json" ? dump(s) : summary_text(s));
    return 0;
}

}  // namespace

int main(int argc, char** argv) {
    CLI::App app{"Build, solve and verify QUBO models of the ISLR phase-code design problem"};
    app.require_subcommand(1);
    Options o;

    auto* build = app.add_subcommand("build", "Assemble a model and write it in the text (or JSON) model format");
    build->add_option("--case", o.problem, "binary-matched | polyphase-matched | polyphase-mismatched-relaxation")
            ->capture_default_str();
    build->add_option("--n", o.n_text, "Sequence length")->required();
    build->add_option("--q", o.q_text, "Phase states (poly-phase cases)")->capture_default_str();
    add_weight_flags(build, o);
    build->add_option("--out", o.out, "Output path (default stdout)");
    build->add_option("--format", o.format, "text | json")->check(CLI::IsMember({"text", "json"}));

    auto* solve = app.add_subcommand("solve", "Minimize a model with simulated annealing or exhaustive search");
    solve->add_option("--model", o.model, "Model file")->required();
    solve->add_option("--backend", o.backend, "sa | exact")->capture_default_str();
    add_schedule_flags(solve, o);
    solve->add_option("--out", o.out, "Result JSON path (default stdout)");

    auto* verify = app.add_subcommand("verify", "Decode a result, list violations and re-evaluate its energy");
    verify->add_option("--model", o.model, "Model file")->required();
    verify->add_option("--result", o.result, "Result JSON from solve")->required();
    verify->add_option("--out", o.out, "Report path (default stdout)");
    verify->add_option("--format", o.format, "text | json")->check(CLI::IsMember({"text", "json"}));

    auto* sweep = app.add_subcommand("sweep", std::string("Run a range of instances and emit one record each\n\n") +
                                                       bench::kSweepColumnsHelp);
    sweep->add_option("--case", o.problem, "binary-matched | polyphase-matched | polyphase-mismatched-relaxation")
            ->capture_default_str();
    sweep->add_option("--n", o.n_text, "Lengths: 5, 3,4,7 or 3..8")->required();
    sweep->add_option("--q", o.q_text, "Phase states list (poly-phase cases)")->capture_default_str();
    sweep->add_option("--backend", o.backend, "sa | exact | none")->capture_default_str();
    sweep->add_option("--oracle-budget", o.oracle_budget, "Max states for the sequence-space oracle")
            ->capture_default_str();
    sweep->add_flag("--timing", o.timing, "Add a wall_time_s column (output no longer reproducible byte-for-byte)");
    add_weight_flags(sweep, o);
    add_schedule_flags(sweep, o);
    sweep->add_option("--out", o.out, "Output path (default stdout)");
    sweep->add_option("--format", o.format, "csv | json")->check(CLI::IsMember({"csv", "json"}));

    auto* orc = app.add_subcommand("oracle", "Brute-force optimum over sequence space");
    orc->add_option("--n", o.n_text, "Sequence length(s)")->required();
    auto* q_opt = orc->add_option("--q", o.q_text, "Phase states; omit for binary codes");
    orc->add_option("--workers", o.workers, "Worker threads");
    orc->add_option("--out", o.out, "Output path (default stdout)");
    orc->add_option("--format", o.format, "text | json")->check(CLI::IsMember({"text", "json"}));

    auto* info = app.add_subcommand("info", "Summarize a model file or an instance");
    info->add_option("--model", o.model, "Model file");
    info->add_option("--case", o.problem, "Instance case")->capture_default_str();
    info->add_option("--n", o.n_text, "Sequence length");
    info->add_option("--q", o.q_text, "Phase states")->capture_default_str();
    add_weight_flags(info, o);
    info->add_option("--out", o.out, "Output path (default stdout)");
    info->add_option("--format", o.format, "text | json")->check(CLI::IsMember({"text", "json"}));

    try {
        app.parse(argc, argv);
    } catch (const CLI::CallForHelp& e) {
        return app.exit(e);
    } catch (const CLI::CallForAllHelp& e) {
        return app.exit(e);
    } catch (const CLI::ParseError& e) {
        app.exit(e);
        return kExitUser;
    }

    try {
        if (*build) return cmd_build(o);
        if (*solve) return cmd_solve(o);
        if (*verify) return cmd_verify(o);
        if (*sweep) return cmd_sweep(o);
        if (*orc) return cmd_oracle(o, q_opt->count() > 0);
        if (*info) return cmd_info(o);
    } catch (const UserError& e) {
        std::cerr << "error: " << e.what() << '\n';
        return kExitUser;
    } catch (const ParseError& e) {
        std::cerr << "parse error: " << e.what() << '\n';
        return kExitUser;
    } catch (const BudgetError& e) {
        std::cerr << "refused: " << e.what() << '\n';
        return kExitUser;
    } catch (const DomainError& e) {
        std::cerr << "error: " << e.what() << '\n';
        return kExitUser;
    } catch (const ContractError& e) {
        std::cerr << "error: " << e.what() << '\n';
        return kExitUser;
    } catch (const std::exception& e) {
        std::cerr << "internal error: " << e.what() << '\n';
        return kExitInternal;
    }
    return kExitInternal;
}
