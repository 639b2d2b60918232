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

#include <array>
#include <cstdint>
#include <optional>
#include <utility>
#include <vector>

#include <Eigen/Core>

#include "islr/quadratic_model.hpp"
#include "islr/waveform.hpp"

/// QUBO for the binary matched-filter ISLR problem.
///
/// The sequence x is lifted to Z = x x^T, flattened column-major into spins
/// z_{gamma(i,j)} with gamma(i,j) = j N + i. Penalties force Z to be a
/// symmetric rank-one sign matrix:
///   h1  diagonal entries equal +1,
///   H2  Z_ij = Z_ji,
///   H3  Z_ij Z_ik = Z_jk for i < j < k, one ancilla spin per triplet.
/// Ancilla spins follow the N^2 primary spins, triplets in lexicographic order.
namespace islr::binary_lift {

struct Triplet {
    Index i;
    Index j;
    Index k;

    friend bool operator==(const Triplet&, const Triplet&) = default;
};

class Layout {
  public:
    explicit Layout(Index n);

    Index n() const noexcept { return n_; }
    Index num_primary() const noexcept { return n_ * n_; }
    Index num_ancilla() const noexcept { return static_cast<Index>(triplets_.size()); }
    Index num_vars() const noexcept { return num_primary() + num_ancilla(); }

    int gamma(Index i, Index j) const { return static_cast<int>(j * n_ + i); }
    std::pair<Index, Index> cell(int flat) const { return {flat % n_, flat / n_}; }

    /// Rank of (i, j, k), i < j < k, in [0, C(N,3)).
    int triplet_index(Index i, Index j, Index k) const;
    const Triplet& triplet(int t) const { return triplets_[static_cast<std::size_t>(t)]; }
    const std::vector<Triplet>& triplets() const noexcept { return triplets_; }
    int ancilla(Index i, Index j, Index k) const { return static_cast<int>(num_primary()) + triplet_index(i, j, k); }

  private:
    Index n_;
    std::vector<Triplet> triplets_;
    std::vector<int> rank_;  // n^3 lookup, -1 off the i<j<k simplex
};

struct Weights {
    double lambda1 = 10.0;
    double lambda2 = 10.0;
    double lambda3 = 10.0;

    void validate() const;
};

/// Strict lower bounds Delta_N / 2 that make a single violation unprofitable.
struct LagrangeBounds {
    double lambda1;
    double lambda2;
    double lambda3;
};

struct DecodeReport {
    bool feasible = false;
    std::vector<Index> diagonal_violations;
    std::vector<std::pair<Index, Index>> asymmetric_pairs;
    std::vector<Triplet> bad_triplets;
    /// Triplets whose ancilla spin is not the gadget minimizer. Does not affect feasibility.
    std::vector<Triplet> suboptimal_ancilla;
    std::optional<BinarySequence> sequence;
    std::optional<std::int64_t> islr;
};

/// Q^k for the matched case: entry (i,j) is 1 iff j = i + k.
Eigen::MatrixXi delay_matrix(Index n, Index k);

/// Models below are all over Layout(n).num_vars() spins.
QuadraticModel build_objective(Index n);
QuadraticModel build_h1(Index n);
QuadraticModel build_H2(Index n);
QuadraticModel build_H3(Index n);
/// lambda1 h1 + lambda2 H2 + lambda3 H3, no objective.
QuadraticModel build_penalties(Index n, const Weights& w = {});
QuadraticModel assemble(Index n, const Weights& w = {});

LagrangeBounds lagrange_bounds(Index n);

/// Per-triplet value of the H3 gadget.
int gadget_value(int z_ij, int z_ik, int z_jk, int ancilla);
/// Ancilla spin minimizing the gadget for given triplet spins.
int gadget_minimizer(int z_ij, int z_ik, int z_jk);

Assignment lift(const BinarySequence& x);
/// Accepts spin or binary assignments.
DecodeReport decode(const Assignment& a, Index n);

/// N^2 + C(N,3)
std::int64_t variable_count(Index n);

}  // namespace islr::binary_lift
