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

#include "islr/bench.hpp"

#include <algorithm>
#include <charconv>
#include <chrono>
#include <cmath>
#include <sstream>
#include <thread>

namespace islr::bench {

namespace {

std::string join_indices(std::span<const int> v) {
    std::string out;
    for (std::size_t i = 0; i < v.size(); ++i) {
        if (i) out += ',';
        out += std::to_string(v[i]);
    }
    return out;
}

Index meta_index(const QuadraticModel& m, const std::string& key) {
    const std::string text = m.meta(key);
    Index value = 0;
    auto res = std::from_chars(text.data(), text.data() + text.size(), value);
    if (text.empty() || res.ec != std::errc{} || res.ptr != text.data() + text.size()) {
        throw ContractError("model metadata '" + key + "' is missing or not an integer");
    }
    return value;
}

double meta_real(const QuadraticModel& m, const std::string& key, double fallback) {
    const std::string text = m.meta(key);
    if (text.empty()) return fallback;
    double value = fallback;
    std::from_chars(text.data(), text.data() + text.size(), value);
    return value;
}

Json assignment_json(const Assignment& a) {
    Json out = Json::array();
    for (auto v : a.values()) out.push_back(static_cast<int>(v));
    return out;
}

bool within(double a, double b) { return std::abs(a - b) <= 1e-9 * std::max(1.0, std::abs(b)); }

std::int64_t peak_sidelobe(const BinarySequence& s) {
    std::int64_t peak = 0;
    for (Index k = 1; k < s.size(); ++k) peak = std::max(peak, std::abs(autocorrelation(s, k)));
    return peak;
}

double peak_sidelobe(const PolyphaseSequence& r) {
    double peak = 0.0;
    for (Index k = 1; k < r.size(); ++k) peak = std::max(peak, std::abs(complex_autocorrelation(r, k)));
    return peak;
}

std::string csv_field(const std::optional<double>& v) { return v ? format_real(*v) : std::string{}; }

}  // namespace

std::string to_string(Case c) {
    switch (c) {
        case Case::binary_matched:
            return "binary-matched";
        case Case::polyphase_matched:
            return "polyphase-matched";
        case Case::polyphase_relaxation:
            return "polyphase-mismatched-relaxation";
    }
    return "unknown";
}

Case case_from_string(const std::string& text) {
    if (text == "binary-matched" || text == "binary") return Case::binary_matched;
    if (text == "polyphase-matched" || text == "polyphase") return Case::polyphase_matched;
    if (text == "polyphase-mismatched-relaxation") return Case::polyphase_relaxation;
    throw DomainError("unknown case '" + text +
                      "', expected binary-matched, polyphase-matched or polyphase-mismatched-relaxation");
}

bool is_polyphase(Case c) { return c != Case::binary_matched; }

void ExperimentConfig::validate() const {
    if (n < 2) throw DomainError("--n must be at least 2");
    if (is_polyphase(problem)) {
        if (q < 2) throw DomainError("--q must be at least 2 for poly-phase cases");
        polyphase_weights.validate();
    } else {
        binary_weights.validate();
    }
}

std::int64_t variable_count(Case c, Index n, int q) {
    return c == Case::binary_matched ? binary_lift::variable_count(n) : polyphase_lift::variable_count(n, q);
}

QuadraticModel build_model(const ExperimentConfig& config) {
    config.validate();
    if (config.problem == Case::binary_matched) return binary_lift::assemble(config.n, config.binary_weights);
    polyphase_lift::BuildOptions opts;
    opts.include_symmetry = config.problem == Case::polyphase_matched;
    return polyphase_lift::assemble(config.n, config.q, config.polyphase_weights, opts);
}

ExperimentConfig config_from_model(const QuadraticModel& m) {
    if (m.meta("case").empty()) throw ContractError("model file carries no 'case' metadata");
    ExperimentConfig c;
    c.problem = case_from_string(m.meta("case"));
    c.n = meta_index(m, "n");
    if (is_polyphase(c.problem)) c.q = static_cast<int>(meta_index(m, "q"));
    if (m.num_vars() != variable_count(c.problem, c.n, c.q)) {
        throw ContractError("model has " + std::to_string(m.num_vars()) + " variables, layout for its metadata needs " +
                            std::to_string(variable_count(c.problem, c.n, c.q)));
    }
    return c;
}

Json build_summary(const QuadraticModel& m) {
    const ExperimentConfig c = config_from_model(m);
    Json j;
    j["case"] = to_string(c.problem);
    j["n"] = c.n;
    if (is_polyphase(c.problem)) j["q"] = c.q;
    j["domain"] = to_string(m.domain());
    j["num_vars"] = m.num_vars();
    j["num_interactions"] = m.num_interactions();
    j["energy_scale"] = meta_real(m, "energy_scale", 1.0);
    if (c.problem == Case::binary_matched) {
        const auto b = binary_lift::lagrange_bounds(c.n);
        j["lambda_lower_bounds"] = {{"lambda1", b.lambda1}, {"lambda2", b.lambda2}, {"lambda3", b.lambda3}};
    } else {
        const auto b = polyphase_lift::lagrange_bounds(c.n, c.q);
        j["lambda_lower_bounds"] = {{"lambda_oh", b.lambda_oh},
                                    {"lambda_s", b.lambda_s},
                                    {"lambda_ch", b.lambda_ch},
                                    {"lambda_cv", b.lambda_cv}};
    }
    j["estimated_sample_time_us_model"] = m.num_vars() > 0 ? estimate_sample_time(m.num_vars()) : 0.0;
    if (!m.meta("warning").empty()) j["warning"] = m.meta("warning");
    return j;
}

Decoded decode_for_model(const QuadraticModel& m, const ExperimentConfig& c, const Assignment& a) {
    if (a.size() != static_cast<std::size_t>(m.num_vars())) {
        throw ContractError("assignment has " + std::to_string(a.size()) + " values, model has " +
                            std::to_string(m.num_vars()) + " variables");
    }
    Decoded out;
    if (c.problem == Case::binary_matched) {
        const auto r = binary_lift::decode(a, c.n);
        out.feasible = r.feasible;
        for (Index i : r.diagonal_violations) {
            out.violations.push_back("diagonal Z(" + std::to_string(i) + "," + std::to_string(i) + ") != +1");
        }
        for (auto [i, j] : r.asymmetric_pairs) {
            out.violations.push_back("asymmetric Z(" + std::to_string(i) + "," + std::to_string(j) + ") != Z(" +
                                     std::to_string(j) + "," + std::to_string(i) + ")");
        }
        for (const auto& t : r.bad_triplets) {
            out.violations.push_back("triplet (" + std::to_string(t.i) + "," + std::to_string(t.j) + "," +
                                     std::to_string(t.k) + "): Z(i,j) Z(i,k) != Z(j,k)");
        }
        if (r.sequence) {
            out.sequence = r.sequence->to_string();
            out.emitted = out.sequence;
            out.islr = static_cast<double>(*r.islr);
        }
        return out;
    }
    const auto r = polyphase_lift::decode(a, c.n, c.q, c.problem == Case::polyphase_matched);
    out.feasible = r.feasible;
    for (auto [bn, bm] : r.onehot_violations) {
        out.violations.push_back("block (" + std::to_string(bn) + "," + std::to_string(bm) + ") not one-hot");
    }
    for (const auto& v : r.symmetry_violations) {
        out.violations.push_back("symmetry Z'(" + std::to_string(v.n) + "," + std::to_string(v.m) + ")_(" +
                                 std::to_string(v.i) + "," + std::to_string(v.j) + ") != Z'(" + std::to_string(v.m) +
                                 "," + std::to_string(v.n) + ")_(" + std::to_string(v.j) + "," + std::to_string(v.i) +
                                 ")");
    }
    for (const auto& v : r.chain_h_violations) {
        out.violations.push_back("row " + std::to_string(v.i) + " sums of blocks (" + std::to_string(v.n) + "," +
                                 std::to_string(v.m) + ") and (" + std::to_string(v.n) + "," +
                                 std::to_string(v.m + 1) + ") differ");
    }
    for (const auto& v : r.chain_v_violations) {
        out.violations.push_back("column " + std::to_string(v.j) + " sums of blocks (" + std::to_string(v.n) + "," +
                                 std::to_string(v.m) + ") and (" + std::to_string(v.n + 1) + "," +
                                 std::to_string(v.m) + ") differ");
    }
    if (r.sequence) {
        out.sequence = join_indices(r.sequence->phase_indices());
        out.emitted = join_indices(r.emitted->phase_indices());
        out.islr = r.islr;
    }
    return out;
}

std::string to_string(Backend b) {
    switch (b) {
        case Backend::none:
            return "none";
        case Backend::sa:
            return "sa";
        case Backend::exact:
            return "exact";
    }
    return "unknown";
}

Backend backend_from_string(const std::string& text) {
    if (text == "none") return Backend::none;
    if (text == "sa") return Backend::sa;
    if (text == "exact") return Backend::exact;
    throw DomainError("unknown backend '" + text + "', expected sa, exact or none");
}

SolveOutcome solve(const QuadraticModel& m, Backend backend, const AnnealSchedule& schedule, int workers) {
    std::optional<ExperimentConfig> config;
    if (!m.meta("case").empty()) config = config_from_model(m);

    SolveOutcome out;
    Json& j = out.result;
    j["format"] = "islr-qubo-result";
    j["schema_version"] = kSchemaVersion;
    j["backend"] = to_string(backend);
    j["domain"] = to_string(m.domain());
    j["num_vars"] = m.num_vars();
    if (config) {
        j["case"] = to_string(config->problem);
        j["n"] = config->n;
        if (is_polyphase(config->problem)) j["q"] = config->q;
    }
    const auto start = std::chrono::steady_clock::now();
    if (backend == Backend::sa) {
        AnnealOptions opts;
        opts.workers = workers;
        if (config) {
            opts.feasible = [&](const Assignment& a) { return decode_for_model(m, *config, a).feasible; };
        }
        const SolveResult r = simulated_annealing(m, schedule, opts);
        j["seed"] = schedule.rng_seed;
        j["schedule"] = {{"num_sweeps", schedule.num_sweeps},
                         {"num_restarts", schedule.num_restarts},
                         {"beta_start", schedule.beta_start},
                         {"beta_end", schedule.beta_end}};
        j["best_energy"] = r.best_energy;
        j["best_assignment"] = assignment_json(r.best_assignment);
        j["per_restart_energies"] = r.per_restart_energies;
        if (r.num_feasible) j["num_feasible"] = *r.num_feasible;
    } else if (backend == Backend::exact) {
        const QuboOptimum r = exhaustive_qubo(m, workers);
        j["best_energy"] = r.min_energy;
        j["best_assignment"] = assignment_json(r.argmin.front());
        j["argmin_count"] = r.argmin.size();
        j["argmin_truncated"] = r.argmin_truncated;
        if (config) {
            j["num_feasible"] = std::count_if(r.argmin.begin(), r.argmin.end(), [&](const Assignment& a) {
                return decode_for_model(m, *config, a).feasible;
            });
        }
    } else {
        throw ContractError("solve needs backend sa or exact");
    }
    out.wall_seconds = std::chrono::duration<double>(std::chrono::steady_clock::now() - start).count();
    return out;
}

VerifyReport verify(const QuadraticModel& m, const nlohmann::json& result) {
    const ExperimentConfig config = config_from_model(m);
    std::vector<std::int8_t> values;
    double reported = 0.0;
    try {
        if (result.at("num_vars").get<int>() != m.num_vars()) {
            throw ContractError("result is for " + std::to_string(result.at("num_vars").get<int>()) +
                                " variables, model has " + std::to_string(m.num_vars()));
        }
        if (result.at("domain").get<std::string>() != to_string(m.domain())) {
            throw ContractError("result domain does not match the model");
        }
        for (const auto& v : result.at("best_assignment")) values.push_back(static_cast<std::int8_t>(v.get<int>()));
        reported = result.at("best_energy").get<double>();
    } catch (const nlohmann::json::exception& e) {
        throw ContractError(std::string("malformed result document: ") + e.what());
    }
    const Assignment a(m.domain(), std::move(values));

    VerifyReport r;
    r.recomputed_energy = energy(m, a);
    r.reported_energy = reported;
    r.energy_consistent = within(r.recomputed_energy, reported);
    r.energy_scale = meta_real(m, "energy_scale", 1.0);
    r.decoded = decode_for_model(m, config, a);
    if (r.decoded.feasible) r.islr_from_energy = r.recomputed_energy / r.energy_scale;
    return r;
}

Json to_json(const VerifyReport& r) {
    Json j;
    j["format"] = "islr-qubo-verify";
    j["schema_version"] = kSchemaVersion;
    j["feasible"] = r.decoded.feasible;
    j["energy_consistent"] = r.energy_consistent;
    j["energy_recomputed"] = r.recomputed_energy;
    j["energy_reported"] = r.reported_energy;
    j["energy_scale"] = r.energy_scale;
    if (r.decoded.feasible) {
        j["sequence"] = r.decoded.sequence;
        if (r.decoded.emitted != r.decoded.sequence) j["emitted"] = r.decoded.emitted;
        j["islr"] = r.decoded.islr ? Json(*r.decoded.islr) : Json(nullptr);
        j["islr_from_energy"] = *r.islr_from_energy;
    }
    j["violations"] = r.decoded.violations;
    return j;
}

std::string to_text(const VerifyReport& r) {
    std::ostringstream out;
    out << "energy recomputed " << format_real(r.recomputed_energy) << ", reported " << format_real(r.reported_energy)
        << (r.energy_consistent ? " (consistent)" : " (MISMATCH)") << '\n';
    if (r.decoded.feasible) {
        out << "feasible: sequence " << r.decoded.sequence << '\n';
        if (r.decoded.emitted != r.decoded.sequence) out << "emitted " << r.decoded.emitted << '\n';
        if (r.decoded.islr) out << "ISLR " << format_short(*r.decoded.islr) << '\n';
        out << "energy / scale " << format_short(*r.islr_from_energy) << '\n';
    } else {
        out << "infeasible: " << r.decoded.violations.size() << " violation(s)\n";
        for (const auto& v : r.decoded.violations) out << "  " << v << '\n';
    }
    return out.str();
}

const char* const kSweepColumnsHelp =
        "CSV columns (empty field = not available):\n"
        "  case                           binary-matched | polyphase-matched | polyphase-mismatched-relaxation\n"
        "  n, q                           sequence length, phase states (empty for binary)\n"
        "  num_vars, num_interactions     model size\n"
        "  min_energy_found               lowest raw model energy found by the backend\n"
        "  decoded_islr                   best ISLR among feasible solutions (energy doubling divided out)\n"
        "  feasible_fraction              feasible restarts (sa) or argmin states (exact)\n"
        "  success_fraction               fraction reaching the sequence-space optimum\n"
        "  oracle_islr                    sequence-space optimum, when within --oracle-budget\n"
        "  estimated_sample_time_us_model per-sample annealer time, estimated (model), not measured\n"
        "  wall_time_s                    only with --timing\n";

std::vector<BenchRecord> run_sweep(const SweepConfig& config) {
    struct Instance {
        Index n;
        int q;
    };
    std::vector<Instance> instances;
    for (Index n : config.ns) {
        if (is_polyphase(config.problem)) {
            for (int q : config.qs) instances.push_back({n, q});
        } else {
            instances.push_back({n, 2});
        }
    }
    std::vector<BenchRecord> records(instances.size());
    std::vector<std::exception_ptr> errors(instances.size());

    auto run_one = [&](std::size_t idx) {
        const auto start = std::chrono::steady_clock::now();
        const Instance inst = instances[idx];
        ExperimentConfig ec;
        ec.problem = config.problem;
        ec.n = inst.n;
        ec.q = inst.q;
        ec.binary_weights = config.binary_weights;
        ec.polyphase_weights = config.polyphase_weights;
        ec.schedule = config.schedule;
        const QuadraticModel m = build_model(ec);

        BenchRecord& rec = records[idx];
        rec.problem = config.problem;
        rec.n = inst.n;
        if (is_polyphase(config.problem)) rec.q = inst.q;
        rec.num_vars = m.num_vars();
        if (rec.num_vars != variable_count(ec.problem, ec.n, ec.q)) {
            throw std::logic_error("variable count disagrees with the layout formula");
        }
        rec.num_interactions = m.num_interactions();
        rec.estimated_sample_time_us = estimate_sample_time(m.num_vars());

        if (config.problem == Case::binary_matched) {
            if (inst.n <= kMaxOracleSequenceLength && (std::uint64_t{1} << inst.n) <= config.oracle_budget) {
                rec.oracle_islr = static_cast<double>(exhaustive_sequences(inst.n).min_islr);
            }
        } else if (config.problem == Case::polyphase_matched) {
            double states = std::pow(static_cast<double>(inst.q), static_cast<double>(inst.n));
            if (states <= static_cast<double>(std::min(config.oracle_budget, kMaxOraclePolyphaseStates))) {
                rec.oracle_islr = exhaustive_polyphase(inst.n, inst.q).min_islr;
            }
        }

        std::vector<Assignment> candidates;
        if (config.backend == Backend::sa) {
            const SolveResult r = simulated_annealing(m, config.schedule);
            rec.min_energy_found = r.best_energy;
            candidates = r.restart_assignments;
        } else if (config.backend == Backend::exact && m.num_vars() <= kMaxOracleQuboVars) {
            QuboOptimum r = exhaustive_qubo(m);
            rec.min_energy_found = r.min_energy;
            candidates = std::move(r.argmin);
        }
        if (!candidates.empty()) {
            int feasible = 0, success = 0;
            for (const auto& a : candidates) {
                const Decoded d = decode_for_model(m, ec, a);
                if (!d.feasible) continue;
                ++feasible;
                if (d.islr) {
                    if (!rec.decoded_islr || *d.islr < *rec.decoded_islr) rec.decoded_islr = d.islr;
                    if (rec.oracle_islr && within(*d.islr, *rec.oracle_islr)) ++success;
                }
            }
            const auto total = static_cast<double>(candidates.size());
            rec.feasible_fraction = feasible / total;
            if (rec.oracle_islr) rec.success_fraction = success / total;
        }
        if (config.timing) {
            rec.wall_time_s = std::chrono::duration<double>(std::chrono::steady_clock::now() - start).count();
        }
    };

    const auto workers = static_cast<std::size_t>(std::clamp(config.workers, 1, 256));
    auto guarded = [&](std::size_t i) {
        try {
            run_one(i);
        } catch (...) {
            errors[i] = std::current_exception();
        }
    };
    if (workers <= 1) {
        for (std::size_t i = 0; i < instances.size(); ++i) guarded(i);
    } else {
        std::vector<std::jthread> pool;
        for (std::size_t t = 0; t < std::min(workers, instances.size()); ++t) {
            pool.emplace_back([&, t] {
                for (std::size_t i = t; i < instances.size(); i += workers) guarded(i);
            });
        }
    }
    for (const auto& e : errors) {
        if (e) std::rethrow_exception(e);
    }
    return records;
}

std::string sweep_csv(const std::vector<BenchRecord>& records, bool timing) {
    std::ostringstream out;
    out << "case,n,q,num_vars,num_interactions,min_energy_found,decoded_islr,feasible_fraction,success_fraction,"
           "oracle_islr,estimated_sample_time_us_model";
    if (timing) out << ",wall_time_s";
    out << '\n';
    for (const auto& r : records) {
        out << to_string(r.problem) << ',' << r.n << ',' << (r.q ? std::to_string(*r.q) : "") << ',' << r.num_vars << ','
            << r.num_interactions << ',' << csv_field(r.min_energy_found) << ',' << csv_field(r.decoded_islr) << ','
            << csv_field(r.feasible_fraction) << ',' << csv_field(r.success_fraction) << ','
            << csv_field(r.oracle_islr) << ',' << format_real(r.estimated_sample_time_us);
        if (timing) out << ',' << csv_field(r.wall_time_s);
        out << '\n';
    }
    return out.str();
}

Json sweep_json(const std::vector<BenchRecord>& records, bool timing) {
    auto opt = [](const std::optional<double>& v) { return v ? Json(*v) : Json(nullptr); };
    Json j;
    j["format"] = "islr-qubo-sweep";
    j["schema_version"] = kSchemaVersion;
    Json rows = Json::array();
    for (const auto& r : records) {
        Json row;
        row["case"] = to_string(r.problem);
        row["n"] = r.n;
        row["q"] = r.q ? Json(*r.q) : Json(nullptr);
        row["num_vars"] = r.num_vars;
        row["num_interactions"] = r.num_interactions;
        row["min_energy_found"] = opt(r.min_energy_found);
        row["decoded_islr"] = opt(r.decoded_islr);
        row["feasible_fraction"] = opt(r.feasible_fraction);
        row["success_fraction"] = opt(r.success_fraction);
        row["oracle_islr"] = opt(r.oracle_islr);
        row["estimated_sample_time_us_model"] = r.estimated_sample_time_us;
        if (timing) row["wall_time_s"] = opt(r.wall_time_s);
        rows.push_back(std::move(row));
    }
    j["records"] = std::move(rows);
    return j;
}

Json oracle(Index n, std::optional<int> q, int workers) {
    Json j;
    j["n"] = n;
    Json list = Json::array();
    if (!q) {
        const SequenceOptimum r = exhaustive_sequences(n, workers);
        j["case"] = "binary";
        j["min_islr"] = r.min_islr;
        for (const auto& s : r.optimizers) {
            list.push_back({{"sequence", s.to_string()}, {"peak_sidelobe", peak_sidelobe(s)}});
        }
    } else {
        const PolyphaseOptimum r = exhaustive_polyphase(n, *q, workers);
        j["case"] = "polyphase";
        j["q"] = *q;
        j["min_islr"] = r.min_islr;
        for (const auto& s : r.optimizers) {
            list.push_back({{"phase_indices", std::vector<int>(s.phase_indices().begin(), s.phase_indices().end())},
                            {"peak_sidelobe", peak_sidelobe(s)}});
        }
    }
    j["count"] = list.size();
    j["optimizers"] = std::move(list);
    return j;
}

std::vector<Index> parse_index_list(const std::string& text) {
    auto parse = [&](std::string_view tok) {
        Index v = 0;
        auto res = std::from_chars(tok.data(), tok.data() + tok.size(), v);
        if (tok.empty() || res.ec != std::errc{} || res.ptr != tok.data() + tok.size()) {
            throw DomainError("invalid integer '" + std::string(tok) + "' in list '" + text + "'");
        }
        return v;
    };
    std::vector<Index> out;
    std::string_view rest(text);
    while (true) {
        const auto comma = rest.find(',');
        const std::string_view item = rest.substr(0, comma);
        if (const auto dots = item.find(".."); dots != std::string_view::npos) {
            const Index lo = parse(item.substr(0, dots));
            const Index hi = parse(item.substr(dots + 2));
            if (hi < lo) throw DomainError("empty range '" + std::string(item) + "'");
            for (Index v = lo; v <= hi; ++v) out.push_back(v);
        } else {
            out.push_back(parse(item));
        }
        if (comma == std::string_view::npos) break;
        rest.remove_prefix(comma + 1);
    }
    return out;
}

}  // namespace islr::bench
