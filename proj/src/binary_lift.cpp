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

#include "islr/binary_lift.hpp"

#include <string>

namespace islr::binary_lift {

namespace {

void check_length(Index n) {
    if (n < 2) throw DomainError("sequence length must be at least 2, got " + std::to_string(n));
}

ModelBuilder make_builder(const Layout& layout) {
    return ModelBuilder(Domain::spin, static_cast<int>(layout.num_vars()));
}

}  // namespace

Layout::Layout(Index n) : n_(n) {
    check_length(n);
    rank_.assign(static_cast<std::size_t>(n * n * n), -1);
    for (Index i = 0; i < n; ++i) {
        for (Index j = i + 1; j < n; ++j) {
            for (Index k = j + 1; k < n; ++k) {
                rank_[static_cast<std::size_t>((i * n + j) * n + k)] = static_cast<int>(triplets_.size());
                triplets_.push_back({i, j, k});
            }
        }
    }
}

int Layout::triplet_index(Index i, Index j, Index k) const {
    if (i < 0 || k >= n_ || !(i < j && j < k)) {
        throw DomainError("triplet (" + std::to_string(i) + ", " + std::to_string(j) + ", " + std::to_string(k) +
                          ") is not i < j < k within [0, " + std::to_string(n_) + ")");
    }
    return rank_[static_cast<std::size_t>((i * n_ + j) * n_ + k)];
}

void Weights::validate() const {
    if (!(lambda1 > 0.0 && lambda2 > 0.0 && lambda3 > 0.0)) {
        throw ContractError("binary-lift Lagrange multipliers must be strictly positive");
    }
}

Eigen::MatrixXi delay_matrix(Index n, Index k) {
    if (k < -n + 1 || k > n - 1) {
        throw DomainError("delay " + std::to_string(k) + " outside [" + std::to_string(-n + 1) + ", " +
                          std::to_string(n - 1) + "]");
    }
    Eigen::MatrixXi q = Eigen::MatrixXi::Zero(n, n);
    for (Index i = 0; i < n; ++i) {
        if (i + k >= 0 && i + k < n) q(i, i + k) = 1;
    }
    return q;
}

QuadraticModel build_objective(Index n) {
    const Layout layout(n);
    ModelBuilder b = make_builder(layout);
    // sum_{k != 0} (vec(Q^k) . z)^2; z_p^2 = 1 lands in the offset.
    std::vector<std::pair<int, double>> support;
    for (Index k = -n + 1; k <= n - 1; ++k) {
        if (k == 0) continue;
        const Eigen::MatrixXi q = delay_matrix(n, k);
        support.clear();
        for (Index j = 0; j < n; ++j) {
            for (Index i = 0; i < n; ++i) {
                if (q(i, j) != 0) support.emplace_back(layout.gamma(i, j), 1.0);
            }
        }
        b.add_squared(support, 0.0);
    }
    return b.build();
}

QuadraticModel build_h1(Index n) {
    const Layout layout(n);
    ModelBuilder b = make_builder(layout);
    b.add_offset(static_cast<double>(n));
    for (Index i = 0; i < n; ++i) b.add_linear(layout.gamma(i, i), -1.0);
    return b.build();
}

QuadraticModel build_H2(Index n) {
    const Layout layout(n);
    ModelBuilder b = make_builder(layout);
    b.add_offset(static_cast<double>(n * (n - 1) / 2));
    for (Index i = 0; i < n; ++i) {
        for (Index j = i + 1; j < n; ++j) b.add_quadratic(layout.gamma(i, j), layout.gamma(j, i), -1.0);
    }
    return b.build();
}

QuadraticModel build_H3(Index n) {
    const Layout layout(n);
    ModelBuilder b = make_builder(layout);
    for (const auto& [i, j, k] : layout.triplets()) {
        const int zij = layout.gamma(i, j);
        const int zik = layout.gamma(i, k);
        const int zjk = layout.gamma(j, k);
        const int a = layout.ancilla(i, j, k);
        b.add_offset(4.0);
        b.add_quadratic(zij, zik, 1.0);
        b.add_quadratic(zij, zjk, -1.0);
        b.add_quadratic(zik, zjk, -1.0);
        b.add_quadratic(zij, a, -2.0);
        b.add_quadratic(zik, a, -2.0);
        b.add_quadratic(zjk, a, 2.0);
        b.add_linear(zij, 1.0);
        b.add_linear(zik, 1.0);
        b.add_linear(zjk, -1.0);
        b.add_linear(a, -2.0);
    }
    return b.build();
}

QuadraticModel build_penalties(Index n, const Weights& w) {
    w.validate();
    const Layout layout(n);
    ModelBuilder b = make_builder(layout);
    b.add_model(build_h1(n), w.lambda1).add_model(build_H2(n), w.lambda2).add_model(build_H3(n), w.lambda3);
    return b.build();
}

QuadraticModel assemble(Index n, const Weights& w) {
    w.validate();
    const Layout layout(n);
    QuadraticModel h = build_objective(n);
    h = add_scaled(h, build_h1(n), w.lambda1);
    h = add_scaled(h, build_H2(n), w.lambda2);
    h = add_scaled(h, build_H3(n), w.lambda3);
    const LagrangeBounds bounds = lagrange_bounds(n);
    const auto num = format_real;
    return h.with_metadata({
            {"case", "binary-matched"},
            {"n", std::to_string(n)},
            {"energy_scale", "2"},
            {"layout", "z[j*N+i]=Z(i,j); ancilla[N^2+t] for triplet t in lexicographic i<j<k order"},
            {"num_primary", std::to_string(layout.num_primary())},
            {"num_ancilla", std::to_string(layout.num_ancilla())},
            {"lambda1", num(w.lambda1)},
            {"lambda2", num(w.lambda2)},
            {"lambda3", num(w.lambda3)},
            {"lambda_lower_bound", num(bounds.lambda1)},
    });
}

LagrangeBounds lagrange_bounds(Index n) {
    const double half = static_cast<double>(max_islr(n)) / 2.0;
    return {half, half, half};
}

int gadget_value(int z_ij, int z_ik, int z_jk, int a) {
    return 4 + z_ij * z_ik - z_ij * z_jk - z_ik * z_jk - 2 * z_ij * a - 2 * z_ik * a + 2 * z_jk * a + z_ij + z_ik -
           z_jk - 2 * a;
}

int gadget_minimizer(int z_ij, int z_ik, int z_jk) { return z_ij + z_ik - z_jk > 0 ? 1 : -1; }

Assignment lift(const BinarySequence& x) {
    const Layout layout(x.size());
    std::vector<std::int8_t> z(static_cast<std::size_t>(layout.num_vars()));
    for (Index j = 0; j < x.size(); ++j) {
        for (Index i = 0; i < x.size(); ++i) {
            z[static_cast<std::size_t>(layout.gamma(i, j))] = static_cast<std::int8_t>(x[i] * x[j]);
        }
    }
    for (const auto& [i, j, k] : layout.triplets()) {
        const int a = gadget_minimizer(x[i] * x[j], x[i] * x[k], x[j] * x[k]);
        z[static_cast<std::size_t>(layout.ancilla(i, j, k))] = static_cast<std::int8_t>(a);
    }
    return {Domain::spin, std::move(z)};
}

DecodeReport decode(const Assignment& assignment, Index n) {
    const Layout layout(n);
    if (assignment.size() != static_cast<std::size_t>(layout.num_vars())) {
        throw ContractError("assignment has " + std::to_string(assignment.size()) + " values, binary layout for N=" +
                            std::to_string(n) + " needs " + std::to_string(layout.num_vars()));
    }
    const Assignment a = to_spin_domain(assignment);
    auto Z = [&](Index i, Index j) { return a[static_cast<std::size_t>(layout.gamma(i, j))]; };

    DecodeReport report;
    for (Index i = 0; i < n; ++i) {
        if (Z(i, i) != 1) report.diagonal_violations.push_back(i);
    }
    for (Index i = 0; i < n; ++i) {
        for (Index j = i + 1; j < n; ++j) {
            if (Z(i, j) != Z(j, i)) report.asymmetric_pairs.emplace_back(i, j);
        }
    }
    for (const auto& t : layout.triplets()) {
        const int zij = Z(t.i, t.j), zik = Z(t.i, t.k), zjk = Z(t.j, t.k);
        if (zij * zik != zjk) report.bad_triplets.push_back(t);
        const int anc = a[static_cast<std::size_t>(layout.ancilla(t.i, t.j, t.k))];
        if (gadget_value(zij, zik, zjk, anc) > gadget_value(zij, zik, zjk, -anc)) {
            report.suboptimal_ancilla.push_back(t);
        }
    }
    report.feasible =
            report.diagonal_violations.empty() && report.asymmetric_pairs.empty() && report.bad_triplets.empty();
    if (report.feasible) {
        Eigen::VectorXi x(n);
        x(0) = 1;
        for (Index j = 1; j < n; ++j) x(j) = Z(0, j);
        report.sequence.emplace(x);
        report.islr = islr_binary(*report.sequence);
    }
    return report;
}

std::int64_t variable_count(Index n) {
    check_length(n);
    return static_cast<std::int64_t>(n) * n + static_cast<std::int64_t>(n) * (n - 1) * (n - 2) / 6;
}

}  // namespace islr::binary_lift
