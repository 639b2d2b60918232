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

#include <algorithm>
#include <cmath>
#include <cstdint>
#include <vector>

#include "islr/quadratic_model.hpp"

namespace islr::detail {

/// Symmetric compressed neighbour lists of a model's pair terms.
struct Adjacency {
    std::vector<int> start;
    std::vector<int> neighbour;
    std::vector<double> coeff;
};

inline Adjacency make_adjacency(const QuadraticModel& m) {
    const auto n = static_cast<std::size_t>(m.num_vars());
    std::vector<int> degree(n, 0);
    for (const auto& t : m.quadratic()) {
        ++degree[static_cast<std::size_t>(t.u)];
        ++degree[static_cast<std::size_t>(t.v)];
    }
    Adjacency adj;
    adj.start.assign(n + 1, 0);
    for (std::size_t i = 0; i < n; ++i) adj.start[i + 1] = adj.start[i] + degree[i];
    adj.neighbour.resize(static_cast<std::size_t>(adj.start[n]));
    adj.coeff.resize(adj.neighbour.size());
    std::vector<int> fill(adj.start.begin(), adj.start.end() - 1);
    for (const auto& t : m.quadratic()) {
        auto a = static_cast<std::size_t>(fill[static_cast<std::size_t>(t.u)]++);
        adj.neighbour[a] = t.v;
        adj.coeff[a] = t.coeff;
        auto b = static_cast<std::size_t>(fill[static_cast<std::size_t>(t.v)]++);
        adj.neighbour[b] = t.u;
        adj.coeff[b] = t.coeff;
    }
    return adj;
}

/// h_i + sum_j J_ij x_j for every i.
inline std::vector<double> local_fields(const QuadraticModel& m, const Adjacency& adj, const std::vector<std::int8_t>& x) {
    std::vector<double> f(x.size());
    for (std::size_t i = 0; i < x.size(); ++i) {
        double s = m.linear(static_cast<int>(i));
        for (int e = adj.start[i]; e < adj.start[i + 1]; ++e) {
            s += adj.coeff[static_cast<std::size_t>(e)] * x[static_cast<std::size_t>(adj.neighbour[static_cast<std::size_t>(e)])];
        }
        f[i] = s;
    }
    return f;
}

inline double energy_tolerance(double e) { return 1e-9 * std::max(1.0, std::abs(e)); }

}  // namespace islr::detail
