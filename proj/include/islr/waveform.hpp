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

#include <complex>
#include <cstdint>
#include <initializer_list>
#include <span>
#include <string>
#include <string_view>
#include <vector>

#include <Eigen/Dense>

#include "islr/errors.hpp"

namespace islr {

using Index = Eigen::Index;

/// Aperiodic correlation at delay k of a dense vector with itself,
///   sum_{i < N-k} x_i * conj(x_{i+k}).
/// Works for integer spins and complex phasors alike; for real scalars the
/// conjugate is the identity.
template <typename Derived>
typename Derived::Scalar aperiodic_correlation(const Eigen::MatrixBase<Derived>& x, Index k) {
    const Index n = x.size();
    if (k < 1 || k > n - 1) {
        throw DomainError("delay " + std::to_string(k) + " outside [1, " + std::to_string(n - 1) + "]");
    }
    // Eigen's dot conjugates its left operand.
    return x.tail(n - k).dot(x.head(n - k));
}

/// Sum of squared sidelobe magnitudes, k = 1..N-1.
template <typename Derived>
auto sidelobe_energy(const Eigen::MatrixBase<Derived>& x) {
    using Scalar = typename Derived::Scalar;
    using Real = typename Eigen::NumTraits<Scalar>::Real;
    Real total = 0;
    for (Index k = 1; k < x.size(); ++k) {
        total += Eigen::numext::abs2(aperiodic_correlation(x, k));
    }
    return total;
}

/// A binary phase code over {-1, +1} (phases pi and 0).
class BinarySequence {
  public:
    explicit BinarySequence(std::vector<int> spins);
    explicit BinarySequence(const Eigen::VectorXi& spins);
    BinarySequence(std::initializer_list<int> spins) : BinarySequence(std::vector<int>(spins)) {}

    /// Parses "+-+" style literals.
    static BinarySequence from_string(std::string_view text);

    Index size() const noexcept { return spins_.size(); }
    int operator[](Index i) const { return spins_(i); }
    const Eigen::VectorXi& spins() const noexcept { return spins_; }

    BinarySequence negated() const;
    BinarySequence reversed() const;
    /// Representative of {x, -x} with x_0 = +1.
    BinarySequence canonical() const;

    std::string to_string() const;
    std::vector<int> to_vector() const;

    friend bool operator==(const BinarySequence& a, const BinarySequence& b) {
        return a.spins_ == b.spins_;
    }

  private:
    Eigen::VectorXi spins_;
};

/// A poly-phase code whose elements are Q-th roots of unity exp(i 2 pi q_n / Q).
class PolyphaseSequence {
  public:
    PolyphaseSequence(std::vector<int> phase_indices, int num_states);

    Index size() const noexcept { return static_cast<Index>(indices_.size()); }
    int num_states() const noexcept { return num_states_; }
    int operator[](Index i) const { return indices_[static_cast<std::size_t>(i)]; }
    std::span<const int> phase_indices() const noexcept { return indices_; }

    Eigen::VectorXcd values() const;
    /// Adds `shift` to every index modulo Q.
    PolyphaseSequence rotated(int shift) const;
    /// Rotation that makes q_0 = 0.
    PolyphaseSequence canonical() const;

    friend bool operator==(const PolyphaseSequence&, const PolyphaseSequence&) = default;

  private:
    std::vector<int> indices_;
    int num_states_;
};

/// Emitted code plus a (possibly longer) receive filter S' = [prefix, middle, suffix].
class MismatchedPair {
  public:
    MismatchedPair(BinarySequence emitted, std::vector<int> filter, Index prefix_len, Index suffix_len);

    const BinarySequence& emitted() const noexcept { return emitted_; }
    const Eigen::VectorXi& filter() const noexcept { return filter_; }
    Index prefix_len() const noexcept { return prefix_len_; }
    Index suffix_len() const noexcept { return suffix_len_; }
    Index filter_len() const noexcept { return filter_.size(); }
    Index main_lobe_delay() const noexcept { return prefix_len_; }

  private:
    BinarySequence emitted_;
    Eigen::VectorXi filter_;
    Index prefix_len_;
    Index suffix_len_;
};

/// unit root exp(i 2 pi q / Q)
std::complex<double> unit_root(int q, int num_states);

std::int64_t autocorrelation(const BinarySequence& s, Index k);
std::int64_t islr_binary(const BinarySequence& s);

std::int64_t cross_correlation(const MismatchedPair& p, Index k);
std::int64_t islr_mismatched(const MismatchedPair& p);

std::complex<double> complex_autocorrelation(const PolyphaseSequence& r, Index k);
double islr_polyphase(const PolyphaseSequence& r);

/// N(N-1)(2N-1)/6, attained by the constant sequence.
std::int64_t max_islr(Index n);

}  // namespace islr
