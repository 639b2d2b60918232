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

#include <chrono>
#include <cstdint>
#include <functional>
#include <optional>
#include <span>
#include <vector>

#include "islr/quadratic_model.hpp"
#include "islr/waveform.hpp"

namespace islr {

/// Enumeration budgets of the exhaustive oracles.
inline constexpr Index kMaxOracleSequenceLength = 28;
inline constexpr std::uint64_t kMaxOraclePolyphaseStates = std::uint64_t{1} << 24;
inline constexpr int kMaxOracleQuboVars = 24;

/// Worker count from ISLR_QUBO_WORKERS, else the hardware concurrency.
int default_workers();

struct SequenceOptimum {
    std::int64_t min_islr = 0;
    /// Every minimizer with x_0 = +1, lexicographically ordered (-1 < +1).
    std::vector<BinarySequence> optimizers;
};

struct PolyphaseOptimum {
    double min_islr = 0.0;
    /// Every minimizer with q_0 = 0, lexicographically ordered.
    std::vector<PolyphaseSequence> optimizers;
};

struct QuboOptimum {
    double min_energy = 0.0;
    /// Lexicographically ordered argmin set.
    std::vector<Assignment> argmin;
    bool argmin_truncated = false;
};

SequenceOptimum exhaustive_sequences(Index n, int workers = 1);
/// Requires Q^N <= 2^24.
PolyphaseOptimum exhaustive_polyphase(Index n, int q, int workers = 1);
/// Gray-code enumeration of all 2^num_vars assignments.
QuboOptimum exhaustive_qubo(const QuadraticModel& m, int workers = 1, std::size_t max_argmin = std::size_t{1} << 20);

struct AnnealSchedule {
    int num_sweeps = 1000;
    double beta_start = 0.1;
    double beta_end = 10.0;
    int num_restarts = 20;
    std::uint64_t rng_seed = 0;

    void validate() const;
    /// Inverse temperature of sweep t on the geometric ladder.
    double beta(int sweep) const;
};

struct SolveResult {
    Assignment best_assignment;
    double best_energy = 0.0;
    std::vector<double> per_restart_energies;
    /// Lowest-energy state visited by each restart.
    std::vector<Assignment> restart_assignments;
    std::optional<int> num_feasible;
    std::chrono::duration<double> wall_time{};
};

struct AnnealOptions {
    int workers = 1;
    /// When set, counts restarts whose best state passes the check.
    std::function<bool(const Assignment&)> feasible;
    /// Sweeps between full energy re-evaluations.
    int check_interval = 64;
};

/// Seed of restart r derived from the schedule's seed.
std::uint64_t restart_seed(std::uint64_t seed, int restart);

SolveResult simulated_annealing(const QuadraticModel& m, const AnnealSchedule& s, const AnnealOptions& opts = {});
/// One independent chain per entry of `restart_seeds`; s.num_restarts is ignored.
SolveResult simulated_annealing(const QuadraticModel& m, const AnnealSchedule& s,
                                std::span<const std::uint64_t> restart_seeds, const AnnealOptions& opts = {});

/// Modelled annealer cost of one sample in microseconds: fixed delay plus
/// anneal and readout times interpolated in log(num_vars) between the
/// anchor sizes 10 and 144. Reporting only, never a measurement.
double estimate_sample_time(Index num_vars);

namespace timing {
inline constexpr double kDelayUs = 21.0;
inline constexpr double kAnnealLowUs = 50.0;
inline constexpr double kAnnealHighUs = 250.0;
inline constexpr double kReadoutLowUs = 80.0;
inline constexpr double kReadoutHighUs = 115.0;
inline constexpr double kLowVars = 10.0;
inline constexpr double kHighVars = 144.0;
}  // namespace timing

}  // namespace islr
