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

#include <algorithm>
#include <cmath>
#include <exception>
#include <limits>
#include <numeric>
#include <random>
#include <string>
#include <thread>

#include "adjacency.hpp"
#include "islr/solvers.hpp"

namespace islr {

namespace {

std::uint64_t splitmix64(std::uint64_t x) {
    x += 0x9e3779b97f4a7c15ULL;
    x = (x ^ (x >> 30)) * 0xbf58476d1ce4e5b9ULL;
    x = (x ^ (x >> 27)) * 0x94d049bb133111ebULL;
    return x ^ (x >> 31);
}

/// Distribution code is written out so results do not depend on the standard library.
class Rng {
  public:
    explicit Rng(std::uint64_t seed) : engine_(seed) {}

    double uniform() { return static_cast<double>(engine_() >> 11) * 0x1.0p-53; }
    bool bit() { return (engine_() >> 63) != 0; }
    std::uint64_t below(std::uint64_t bound) {
        const std::uint64_t limit = std::numeric_limits<std::uint64_t>::max() -
                                    std::numeric_limits<std::uint64_t>::max() % bound;
        std::uint64_t r;
        do {
            r = engine_();
        } while (r >= limit);
        return r % bound;
    }

  private:
    std::mt19937_64 engine_;
};

struct ChainResult {
    double energy;
    Assignment state;
};

ChainResult run_chain(const QuadraticModel& m, const detail::Adjacency& adj, const AnnealSchedule& s,
                      std::uint64_t seed, int check_interval) {
    const auto n = static_cast<std::size_t>(m.num_vars());
    const bool spin = m.domain() == Domain::spin;
    Rng rng(seed);

    std::vector<std::int8_t> x(n);
    for (auto& v : x) v = rng.bit() ? 1 : (spin ? -1 : 0);
    std::vector<double> f = detail::local_fields(m, adj, x);
    double e = energy(m, Assignment(m.domain(), x));

    std::vector<std::int8_t> best = x;
    double best_e = e;
    // Flips accepted since `best` was last synchronised with `x`.
    std::vector<std::size_t> journal;
    bool journal_overflow = false;

    std::vector<std::size_t> order(n);
    std::iota(order.begin(), order.end(), std::size_t{0});

    for (int sweep = 0; sweep < s.num_sweeps; ++sweep) {
        const double beta = s.beta(sweep);
        for (std::size_t i = n; i > 1; --i) std::swap(order[i - 1], order[rng.below(i)]);
        for (std::size_t i : order) {
            const int old = x[i];
            const int now = spin ? -old : 1 - old;
            const double delta = (now - old) * f[i];
            if (delta > 0.0 && rng.uniform() >= std::exp(-beta * delta)) continue;
            x[i] = static_cast<std::int8_t>(now);
            e += delta;
            for (int a = adj.start[i]; a < adj.start[i + 1]; ++a) {
                f[static_cast<std::size_t>(adj.neighbour[static_cast<std::size_t>(a)])] +=
                        adj.coeff[static_cast<std::size_t>(a)] * (now - old);
            }
            if (!journal_overflow) {
                journal.push_back(i);
                if (journal.size() > n) {
                    journal_overflow = true;
                    journal.clear();
                }
            }
            if (e < best_e) {
                best_e = e;
                if (journal_overflow) {
                    best = x;
                } else {
                    for (std::size_t j : journal) best[j] = x[j];
                }
                journal.clear();
                journal_overflow = false;
            }
        }
        if ((sweep + 1) % check_interval == 0 || sweep + 1 == s.num_sweeps) {
            const double full = energy(m, Assignment(m.domain(), x));
            if (std::abs(full - e) > detail::energy_tolerance(full)) {
                throw std::logic_error("annealer energy bookkeeping drifted: tracked " + std::to_string(e) +
                                       ", recomputed " + std::to_string(full));
            }
        }
    }
    Assignment state(m.domain(), std::move(best));
    const double exact = energy(m, state);
    return {exact, std::move(state)};
}

}  // namespace

void AnnealSchedule::validate() const {
    if (num_sweeps < 1) throw ContractError("annealing needs at least one sweep");
    if (num_restarts < 1) throw ContractError("annealing needs at least one restart");
    if (!(beta_start > 0.0 && beta_start < beta_end)) {
        throw ContractError("inverse temperatures must satisfy 0 < beta_start < beta_end");
    }
}

double AnnealSchedule::beta(int sweep) const {
    if (num_sweeps == 1) return beta_end;
    const double t = static_cast<double>(sweep) / static_cast<double>(num_sweeps - 1);
    return beta_start * std::pow(beta_end / beta_start, t);
}

std::uint64_t restart_seed(std::uint64_t seed, int restart) {
    return splitmix64(splitmix64(seed) + static_cast<std::uint64_t>(restart));
}

SolveResult simulated_annealing(const QuadraticModel& m, const AnnealSchedule& s, const AnnealOptions& opts) {
    s.validate();
    std::vector<std::uint64_t> seeds(static_cast<std::size_t>(s.num_restarts));
    for (int r = 0; r < s.num_restarts; ++r) seeds[static_cast<std::size_t>(r)] = restart_seed(s.rng_seed, r);
    return simulated_annealing(m, s, seeds, opts);
}

SolveResult simulated_annealing(const QuadraticModel& m, const AnnealSchedule& s,
                                std::span<const std::uint64_t> restart_seeds, const AnnealOptions& opts) {
    AnnealSchedule checked = s;
    checked.num_restarts = std::max<int>(1, static_cast<int>(restart_seeds.size()));
    checked.validate();
    if (restart_seeds.empty()) throw ContractError("annealing needs at least one restart seed");
    if (opts.check_interval < 1) throw ContractError("energy check interval must be positive");

    const auto start = std::chrono::steady_clock::now();
    const detail::Adjacency adj = detail::make_adjacency(m);
    const std::size_t restarts = restart_seeds.size();
    std::vector<std::optional<ChainResult>> chains(restarts);
    std::vector<std::exception_ptr> errors(restarts);

    auto work = [&](std::size_t r) {
        try {
            chains[r] = run_chain(m, adj, s, restart_seeds[r], opts.check_interval);
        } catch (...) {
            errors[r] = std::current_exception();
        }
    };
    const auto workers = static_cast<std::size_t>(std::clamp(opts.workers, 1, 256));
    if (workers <= 1 || restarts <= 1) {
        for (std::size_t r = 0; r < restarts; ++r) work(r);
    } else {
        std::vector<std::jthread> pool;
        for (std::size_t t = 0; t < std::min(workers, restarts); ++t) {
            pool.emplace_back([&, t] {
                for (std::size_t r = t; r < restarts; r += workers) work(r);
            });
        }
    }
    for (const auto& err : errors) {
        if (err) std::rethrow_exception(err);
    }

    SolveResult result;
    std::size_t best = 0;
    for (std::size_t r = 0; r < restarts; ++r) {
        result.per_restart_energies.push_back(chains[r]->energy);
        if (chains[r]->energy < chains[best]->energy) best = r;
    }
    result.best_energy = chains[best]->energy;
    result.best_assignment = chains[best]->state;
    for (auto& c : chains) result.restart_assignments.push_back(std::move(c->state));
    if (opts.feasible) {
        result.num_feasible = static_cast<int>(
                std::count_if(result.restart_assignments.begin(), result.restart_assignments.end(), opts.feasible));
    }
    result.wall_time = std::chrono::steady_clock::now() - start;
    return result;
}

}  // namespace islr
