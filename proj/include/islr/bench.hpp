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

#pragma once

#include <optional>
#include <string>
#include <vector>

#include <nlohmann/json.hpp>

#include "islr/binary_lift.hpp"
#include "islr/polyphase_lift.hpp"
#include "islr/quadratic_model.hpp"
#include "islr/solvers.hpp"

/// Experiment harness behind the islr-qubo command line tool.
namespace islr::bench {

using Json = nlohmann::ordered_json;

inline constexpr int kSchemaVersion = 1;

enum class Case { binary_matched, polyphase_matched, polyphase_relaxation };

std::string to_string(Case c);
Case case_from_string(const std::string& text);
bool is_polyphase(Case c);

struct ExperimentConfig {
    Case problem = Case::binary_matched;
    Index n = 0;
    int q = 2;
    binary_lift::Weights binary_weights;
    polyphase_lift::Weights polyphase_weights;
    AnnealSchedule schedule;

    void validate() const;
};

/// N^2 + C(N,3) for the binary case, (NQ)^2 otherwise.
std::int64_t variable_count(Case c, Index n, int q);

/// Assembled model with metadata for `config`.
QuadraticModel build_model(const ExperimentConfig& config);

/// Case, N and Q recovered from a model's metadata.
ExperimentConfig config_from_model(const QuadraticModel& m);

/// Human-readable build summary: counts and Lagrange lower bounds.
Json build_summary(const QuadraticModel& m);

struct Decoded {
    bool feasible = false;
    std::optional<double> islr;
    /// "+-" literal for binary codes, comma-separated phase indices for poly-phase codes.
    std::string sequence;
    std::string emitted;
    std::vector<std::string> violations;
};

/// Decodes with the lift named in the model's metadata.
Decoded decode_for_model(const QuadraticModel& m, const ExperimentConfig& config, const Assignment& a);

enum class Backend { none, sa, exact };

std::string to_string(Backend b);
Backend backend_from_string(const std::string& text);

struct SolveOutcome {
    /// Result document; carries no timing so identical inputs give identical bytes.
    Json result;
    double wall_seconds = 0.0;
};

SolveOutcome solve(const QuadraticModel& m, Backend backend, const AnnealSchedule& schedule, int workers = 1);

struct VerifyReport {
    bool energy_consistent = false;
    double recomputed_energy = 0.0;
    double reported_energy = 0.0;
    double energy_scale = 1.0;
    Decoded decoded;
    /// recomputed energy divided by the scale, when feasible
    std::optional<double> islr_from_energy;
};

VerifyReport verify(const QuadraticModel& m, const nlohmann::json& result);
Json to_json(const VerifyReport& r);
std::string to_text(const VerifyReport& r);

struct SweepConfig {
    Case problem = Case::binary_matched;
    std::vector<Index> ns;
    std::vector<int> qs{2};
    binary_lift::Weights binary_weights;
    polyphase_lift::Weights polyphase_weights;
    AnnealSchedule schedule;
    Backend backend = Backend::sa;
    /// Sequence-space oracle runs only when the state count is within this budget.
    std::uint64_t oracle_budget = std::uint64_t{1} << 20;
    bool timing = false;
    int workers = 1;
};

struct BenchRecord {
    Case problem = Case::binary_matched;
    Index n = 0;
    std::optional<int> q;
    std::int64_t num_vars = 0;
    std::size_t num_interactions = 0;
    std::optional<double> min_energy_found;
    std::optional<double> decoded_islr;
    std::optional<double> feasible_fraction;
    std::optional<double> success_fraction;
    std::optional<double> oracle_islr;
    double estimated_sample_time_us = 0.0;
    std::optional<double> wall_time_s;
};

/// One record per (n, q), in input order.
std::vector<BenchRecord> run_sweep(const SweepConfig& config);

/// Column reference shown by `islr-qubo sweep --help`.
extern const char* const kSweepColumnsHelp;
std::string sweep_csv(const std::vector<BenchRecord>& records, bool timing);
Json sweep_json(const std::vector<BenchRecord>& records, bool timing);

/// Global optimum by sequence-space enumeration; q absent means binary.
Json oracle(Index n, std::optional<int> q, int workers = 1);

/// "5", "3,4,7" or "3..8".
std::vector<Index> parse_index_list(const std::string& text);

}  // namespace islr::bench
