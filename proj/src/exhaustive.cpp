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
#include <bit>
#include <cstdlib>
#include <string>
#include <thread>

#include "adjacency.hpp"
#include "islr/solvers.hpp"

namespace islr {

namespace {

/// Runs body(chunk) for chunk in [0, chunks) on up to `workers` threads.
template <typename Body>
void for_each_chunk(std::size_t chunks, int workers, Body&& body) {
    const auto w = static_cast<std::size_t>(std::clamp(workers, 1, 256));
    if (w <= 1 || chunks <= 1) {
        for (std::size_t c = 0; c < chunks; ++c) body(c);
        return;
    }
    std::vector<std::jthread> pool;
    for (std::size_t t = 0; t < std::min(w, chunks); ++t) {
        pool.emplace_back([&, t] {
            for (std::size_t c = t; c < chunks; c += w) body(c);
        });
    }
}

/// Prefix bits used to split a 2^bits enumeration into independent chunks.
int split_bits(int bits, int workers) {
    int t = 0;
    while ((1 << t) < workers && t < bits && t < 8) ++t;
    return t;
}

template <typename Value>
struct Candidates {
    Value best{};
    bool any = false;
    std::vector<std::uint64_t> masks;
    bool truncated = false;
};

}  // namespace

int default_workers() {
    if (const char* env = std::getenv("ISLR_QUBO_WORKERS")) {
        const int w = std::atoi(env);
        if (w > 0) return w;
    }
    return static_cast<int>(std::max(1U, std::thread::hardware_concurrency()));
}

SequenceOptimum exhaustive_sequences(Index n, int workers) {
    if (n < 2) throw DomainError("sequence length must be at least 2, got " + std::to_string(n));
    if (n > kMaxOracleSequenceLength) {
        throw BudgetError("exhaustive sequence search is limited to N <= " + std::to_string(kMaxOracleSequenceLength) +
                          " (2^N enumeration), got N=" + std::to_string(n));
    }
    // x_0 = +1; bit b of the mask is position b + 1.
    const int free_bits = static_cast<int>(n - 1);
    const int prefix = split_bits(free_bits, workers);
    const int low = free_bits - prefix;
    std::vector<Candidates<std::int64_t>> parts(std::size_t{1} << prefix);

    for_each_chunk(parts.size(), workers, [&](std::size_t chunk) {
        auto& out = parts[chunk];
        std::vector<int> s(static_cast<std::size_t>(n), -1);
        s[0] = 1;
        std::uint64_t mask = static_cast<std::uint64_t>(chunk) << low;
        for (int b = low; b < free_bits; ++b) {
            if ((mask >> b) & 1U) s[static_cast<std::size_t>(b + 1)] = 1;
        }
        std::vector<std::int64_t> c(static_cast<std::size_t>(n), 0);
        for (Index k = 1; k < n; ++k) {
            for (Index i = 0; i + k < n; ++i) c[static_cast<std::size_t>(k)] += s[static_cast<std::size_t>(i)] * s[static_cast<std::size_t>(i + k)];
        }
        auto visit = [&] {
            std::int64_t e = 0;
            for (Index k = 1; k < n; ++k) e += c[static_cast<std::size_t>(k)] * c[static_cast<std::size_t>(k)];
            if (!out.any || e < out.best) {
                out.any = true;
                out.best = e;
                out.masks.clear();
            }
            if (e == out.best) out.masks.push_back(mask);
        };
        visit();
        const std::uint64_t steps = std::uint64_t{1} << low;
        for (std::uint64_t g = 1; g < steps; ++g) {
            const int bit = std::countr_zero(g);
            const Index j = bit + 1;
            const int sj = s[static_cast<std::size_t>(j)];
            for (Index k = 1; k < n; ++k) {
                std::int64_t d = 0;
                if (j - k >= 0) d += s[static_cast<std::size_t>(j - k)];
                if (j + k < n) d += s[static_cast<std::size_t>(j + k)];
                c[static_cast<std::size_t>(k)] -= 2 * sj * d;
            }
            s[static_cast<std::size_t>(j)] = -sj;
            mask ^= std::uint64_t{1} << bit;
            visit();
        }
    });

    SequenceOptimum result;
    bool any = false;
    for (const auto& p : parts) {
        if (!any || p.best < result.min_islr) result.min_islr = p.best;
        any = true;
    }
    for (const auto& p : parts) {
        if (p.best != result.min_islr) continue;
        for (std::uint64_t mask : p.masks) {
            Eigen::VectorXi x = Eigen::VectorXi::Constant(n, -1);
            x(0) = 1;
            for (int b = 0; b < free_bits; ++b) {
                if ((mask >> b) & 1U) x(b + 1) = 1;
            }
            result.optimizers.emplace_back(x);
        }
    }
    std::sort(result.optimizers.begin(), result.optimizers.end(), [](const BinarySequence& a, const BinarySequence& b) {
        return a.to_vector() < b.to_vector();
    });
    return result;
}

PolyphaseOptimum exhaustive_polyphase(Index n, int q, int workers) {
    if (n < 2) throw DomainError("sequence length must be at least 2, got " + std::to_string(n));
    if (q < 2) throw DomainError("number of phase states must be at least 2, got " + std::to_string(q));
    std::uint64_t total = 1;
    for (Index i = 0; i < n; ++i) {
        total *= static_cast<std::uint64_t>(q);
        if (total > kMaxOraclePolyphaseStates) {
            throw BudgetError("exhaustive poly-phase search is limited to Q^N <= 2^24, got Q=" + std::to_string(q) +
                              ", N=" + std::to_string(n));
        }
    }
    const std::uint64_t count = total / static_cast<std::uint64_t>(q);  // q_0 fixed to 0
    std::vector<std::complex<double>> roots(static_cast<std::size_t>(q));
    for (int s = 0; s < q; ++s) roots[static_cast<std::size_t>(s)] = unit_root(s, q);

    const std::size_t chunks = std::min<std::uint64_t>(count, static_cast<std::uint64_t>(std::max(1, workers)) * 4);
    std::vector<Candidates<double>> parts(chunks);
    for_each_chunk(chunks, workers, [&](std::size_t chunk) {
        auto& out = parts[chunk];
        const std::uint64_t lo = count * chunk / chunks;
        const std::uint64_t hi = count * (chunk + 1) / chunks;
        std::vector<int> digits(static_cast<std::size_t>(n), 0);
        std::uint64_t rem = lo;
        for (Index pos = n - 1; pos >= 1; --pos) {
            digits[static_cast<std::size_t>(pos)] = static_cast<int>(rem % static_cast<std::uint64_t>(q));
            rem /= static_cast<std::uint64_t>(q);
        }
        for (std::uint64_t idx = lo; idx < hi; ++idx) {
            double e = 0.0;
            for (Index k = 1; k < n; ++k) {
                std::complex<double> c = 0.0;
                for (Index i = 0; i + k < n; ++i) {
                    const int d = digits[static_cast<std::size_t>(i)] - digits[static_cast<std::size_t>(i + k)];
                    c += roots[static_cast<std::size_t>((d % q + q) % q)];
                }
                e += std::norm(c);
            }
            if (!out.any || e < out.best - detail::energy_tolerance(out.best)) {
                out.any = true;
                out.best = e;
                out.masks.clear();
            }
            if (std::abs(e - out.best) <= detail::energy_tolerance(out.best)) out.masks.push_back(idx);
            for (Index pos = n - 1; pos >= 1; --pos) {
                if (++digits[static_cast<std::size_t>(pos)] < q) break;
                digits[static_cast<std::size_t>(pos)] = 0;
            }
        }
    });

    PolyphaseOptimum result;
    bool any = false;
    for (const auto& p : parts) {
        if (!p.any) continue;
        if (!any || p.best < result.min_islr) result.min_islr = p.best;
        any = true;
    }
    for (const auto& p : parts) {
        if (!p.any || std::abs(p.best - result.min_islr) > detail::energy_tolerance(result.min_islr)) continue;
        for (std::uint64_t idx : p.masks) {
            std::vector<int> digits(static_cast<std::size_t>(n), 0);
            for (Index pos = n - 1; pos >= 1; --pos) {
                digits[static_cast<std::size_t>(pos)] = static_cast<int>(idx % static_cast<std::uint64_t>(q));
                idx /= static_cast<std::uint64_t>(q);
            }
            result.optimizers.emplace_back(std::move(digits), q);
        }
    }
    // Exact re-evaluation settles near-ties between chunks.
    double best = result.min_islr;
    for (const auto& r : result.optimizers) best = std::min(best, islr_polyphase(r));
    std::erase_if(result.optimizers, [&](const PolyphaseSequence& r) {
        return std::abs(islr_polyphase(r) - best) > detail::energy_tolerance(best);
    });
    result.min_islr = best;
    return result;
}

QuboOptimum exhaustive_qubo(const QuadraticModel& m, int workers, std::size_t max_argmin) {
    const int n = m.num_vars();
    if (n > kMaxOracleQuboVars) {
        throw BudgetError("exhaustive QUBO search is limited to " + std::to_string(kMaxOracleQuboVars) +
                          " variables, model has " + std::to_string(n));
    }
    if (n == 0) return {m.offset(), {Assignment(m.domain(), {})}, false};

    const detail::Adjacency adj = detail::make_adjacency(m);
    const bool spin = m.domain() == Domain::spin;
    const std::int8_t off = spin ? -1 : 0;
    const int prefix = split_bits(n, workers);
    const int low = n - prefix;
    std::vector<Candidates<double>> parts(std::size_t{1} << prefix);

    for_each_chunk(parts.size(), workers, [&](std::size_t chunk) {
        auto& out = parts[chunk];
        std::uint64_t mask = static_cast<std::uint64_t>(chunk) << low;
        std::vector<std::int8_t> x(static_cast<std::size_t>(n), off);
        for (int b = low; b < n; ++b) {
            if ((mask >> b) & 1U) x[static_cast<std::size_t>(b)] = 1;
        }
        std::vector<double> f = detail::local_fields(m, adj, x);
        double e = m.offset();
        for (int i = 0; i < n; ++i) {
            // each pair is counted twice through the fields
            e += 0.5 * (m.linear(i) + f[static_cast<std::size_t>(i)]) * x[static_cast<std::size_t>(i)];
        }
        auto visit = [&] {
            if (!out.any || e < out.best - detail::energy_tolerance(out.best)) {
                out.any = true;
                out.best = e;
                out.masks.clear();
                out.truncated = false;
            }
            if (std::abs(e - out.best) <= detail::energy_tolerance(out.best)) {
                if (out.masks.size() < max_argmin) {
                    out.masks.push_back(mask);
                } else {
                    out.truncated = true;
                }
            }
        };
        visit();
        const std::uint64_t steps = std::uint64_t{1} << low;
        for (std::uint64_t g = 1; g < steps; ++g) {
            const int i = std::countr_zero(g);
            const auto ui = static_cast<std::size_t>(i);
            const int old = x[ui];
            const int now = spin ? -old : 1 - old;
            e += (now - old) * f[ui];
            x[ui] = static_cast<std::int8_t>(now);
            for (int a = adj.start[ui]; a < adj.start[ui + 1]; ++a) {
                f[static_cast<std::size_t>(adj.neighbour[static_cast<std::size_t>(a)])] +=
                        adj.coeff[static_cast<std::size_t>(a)] * (now - old);
            }
            mask ^= std::uint64_t{1} << i;
            visit();
        }
    });

    // Exact re-evaluation of every candidate removes incremental drift.
    QuboOptimum result;
    std::vector<std::pair<double, Assignment>> found;
    double part_best = parts.front().best;
    for (const auto& p : parts) part_best = std::min(part_best, p.best);
    for (const auto& p : parts) {
        if (p.best > part_best + detail::energy_tolerance(part_best)) continue;
        result.argmin_truncated = result.argmin_truncated || p.truncated;
        for (std::uint64_t mask : p.masks) {
            Assignment a = Assignment::from_bits(m.domain(), static_cast<std::size_t>(n), mask);
            found.emplace_back(energy(m, a), std::move(a));
        }
    }
    double best = found.front().first;
    for (const auto& [e, a] : found) best = std::min(best, e);
    for (auto& [e, a] : found) {
        if (std::abs(e - best) <= detail::energy_tolerance(best)) result.argmin.push_back(std::move(a));
    }
    std::sort(result.argmin.begin(), result.argmin.end());
    if (result.argmin.size() > max_argmin) {
        result.argmin.resize(max_argmin);
        result.argmin_truncated = true;
    }
    result.min_energy = best;
    return result;
}

}  // namespace islr
