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
#include <span>
#include <vector>

#include <Eigen/Core>

#include "islr/quadratic_model.hpp"
#include "islr/waveform.hpp"

/// QUBO for the Q-phase matched-filter ISLR problem.
///
/// Each phase is one-hot encoded in a block of Q bits, b in {0,1}^{NQ}, and
/// the outer product Z' = b b^T is flattened row-major: block (n,m), cell
/// (i,j) sits at (nQ + i) NQ + (mQ + j). Penalties: one-hot per block,
/// symmetry between blocks (n,m) and (m,n), and equal row (column) sums
/// across horizontally (vertically) adjacent blocks.
namespace islr::polyphase_lift {

/// The (N, NQ) block-diagonal matrix mapping a one-hot b to its phasors.
class PhaseMatrix {
  public:
    PhaseMatrix(Index n, int q);

    Index n() const noexcept { return n_; }
    int q() const noexcept { return q_; }
    const Eigen::MatrixXcd& entries() const noexcept { return entries_; }

    template <typename Derived>
    Eigen::VectorXcd apply(const Eigen::MatrixBase<Derived>& b) const {
        return entries_ * b.template cast<std::complex<double>>();
    }

  private:
    Index n_;
    int q_;
    Eigen::MatrixXcd entries_;
};

struct BlockCell {
    Index n;
    Index m;
    int i;
    int j;

    friend bool operator==(const BlockCell&, const BlockCell&) = default;
};

class Layout {
  public:
    Layout(Index n, int q);

    Index n() const noexcept { return n_; }
    int q() const noexcept { return q_; }
    Index width() const noexcept { return n_ * q_; }
    Index num_vars() const noexcept { return width() * width(); }

    int index(Index n, Index m, int i, int j) const {
        return static_cast<int>((n * q_ + i) * width() + (m * q_ + j));
    }
    int index(const BlockCell& c) const { return index(c.n, c.m, c.i, c.j); }
    BlockCell cell(int flat) const;

  private:
    Index n_;
    int q_;
};

struct Weights {
    double lambda_oh = 10.0;
    double lambda_s = 10.0;
    double lambda_ch = 10.0;
    double lambda_cv = 10.0;

    /// All four multipliers equal to `lambda`.
    static Weights uniform(double lambda) { return {lambda, lambda, lambda, lambda}; }
    void validate() const;
};

struct LagrangeBounds {
    double lambda_oh;
    double lambda_s;
    double lambda_ch;
    double lambda_cv;
};

struct BuildOptions {
    /// Off: drop the symmetry penalty, which relaxes the model towards the
    /// mismatched filter case with no main-lobe guarantee.
    bool include_symmetry = true;
};

struct DecodeReport {
    bool feasible = false;
    /// Blocks whose entries do not sum to exactly one.
    std::vector<std::pair<Index, Index>> onehot_violations;
    /// (n, m, i, j) with n < m where Z'(n,m)_{ij} != Z'(m,n)_{ji}.
    std::vector<BlockCell> symmetry_violations;
    /// (n, m, i, 0): row i sums of blocks (n,m) and (n,m+1) differ.
    std::vector<BlockCell> chain_h_violations;
    /// (n, m, 0, j): column j sums of blocks (n,m) and (n+1,m) differ.
    std::vector<BlockCell> chain_v_violations;
    /// Column index of the nonzero in block (0, m), for every m.
    std::optional<PolyphaseSequence> sequence;
    /// `sequence` rotated so that q_0 = 0.
    std::optional<PolyphaseSequence> canonical;
    /// Row index of the nonzero in block (n, 0). Equals `sequence` unless symmetry was relaxed.
    std::optional<PolyphaseSequence> emitted;
    std::optional<double> islr;
};

PhaseMatrix phase_matrix(Index n, int q);

/// A^k = Phi^* Q^k Phi, of shape (NQ, NQ).
Eigen::MatrixXcd coupling_matrix(Index n, int q, Index k);

/// Models below are all over Layout(n, q).num_vars() binary variables.
QuadraticModel build_objective(Index n, int q);
QuadraticModel build_onehot(Index n, int q);
QuadraticModel build_symmetry(Index n, int q);
QuadraticModel build_chain_h(Index n, int q);
QuadraticModel build_chain_v(Index n, int q);
QuadraticModel build_penalties(Index n, int q, const Weights& w = {}, const BuildOptions& opts = {});
QuadraticModel assemble(Index n, int q, const Weights& w = {}, const BuildOptions& opts = {});

LagrangeBounds lagrange_bounds(Index n, int q);

/// One-hot encoding of a sequence, length NQ.
Eigen::VectorXi one_hot(const PolyphaseSequence& r);
/// z' = vec(b b^T); b must hold exactly one 1 per block of Q.
Assignment lift(std::span<const int> b, Index n, int q);
Assignment lift(const PolyphaseSequence& r);

/// Accepts spin or binary assignments. With require_symmetry off the symmetry
/// condition is not checked (relaxed model).
DecodeReport decode(const Assignment& a, Index n, int q, bool require_symmetry = true);

/// (NQ)^2
std::int64_t variable_count(Index n, int q);

}  // namespace islr::polyphase_lift
