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

#include "islr/waveform.hpp"

#include <algorithm>
#include <numbers>

namespace islr {

namespace {

void check_length(Index n) {
    if (n < 2) {
        throw DomainError("sequence length must be at least 2, got " + std::to_string(n));
    }
}

}  // namespace

BinarySequence::BinarySequence(std::vector<int> spins)
        : BinarySequence(Eigen::Map<const Eigen::VectorXi>(spins.data(), static_cast<Index>(spins.size()))) {}

BinarySequence::BinarySequence(const Eigen::VectorXi& spins) : spins_(spins) {
    check_length(spins_.size());
    for (Index i = 0; i < spins_.size(); ++i) {
        if (spins_(i) != 1 && spins_(i) != -1) {
            throw DomainError("binary sequence element " + std::to_string(i) + " is " +
                              std::to_string(spins_(i)) + ", expected -1 or +1");
        }
    }
}

BinarySequence BinarySequence::from_string(std::string_view text) {
    std::vector<int> spins;
    spins.reserve(text.size());
    for (char c : text) {
        if (c == '+') {
            spins.push_back(1);
        } else if (c == '-') {
            spins.push_back(-1);
        } else {
            throw DomainError(std::string("unexpected character '") + c + "' in binary sequence literal");
        }
    }
    return BinarySequence(std::move(spins));
}

BinarySequence BinarySequence::negated() const { return BinarySequence(Eigen::VectorXi(-spins_)); }

BinarySequence BinarySequence::reversed() const { return BinarySequence(Eigen::VectorXi(spins_.reverse())); }

BinarySequence BinarySequence::canonical() const { return spins_(0) == 1 ? *this : negated(); }

std::string BinarySequence::to_string() const {
    std::string out;
    out.reserve(static_cast<std::size_t>(size()));
    for (Index i = 0; i < size(); ++i) out.push_back(spins_(i) > 0 ? '+' : '-');
    return out;
}

std::vector<int> BinarySequence::to_vector() const { return {spins_.data(), spins_.data() + spins_.size()}; }

PolyphaseSequence::PolyphaseSequence(std::vector<int> phase_indices, int num_states)
        : indices_(std::move(phase_indices)), num_states_(num_states) {
    check_length(size());
    if (num_states_ < 2) {
        throw DomainError("number of phase states must be at least 2, got " + std::to_string(num_states_));
    }
    for (std::size_t i = 0; i < indices_.size(); ++i) {
        if (indices_[i] < 0 || indices_[i] >= num_states_) {
            throw DomainError("phase index " + std::to_string(indices_[i]) + " at position " + std::to_string(i) +
                              " outside [0, " + std::to_string(num_states_ - 1) + "]");
        }
    }
}

Eigen::VectorXcd PolyphaseSequence::values() const {
    Eigen::VectorXcd out(size());
    for (Index i = 0; i < size(); ++i) out(i) = unit_root((*this)[i], num_states_);
    return out;
}

PolyphaseSequence PolyphaseSequence::rotated(int shift) const {
    std::vector<int> out(indices_);
    const int s = ((shift % num_states_) + num_states_) % num_states_;
    for (int& q : out) q = (q + s) % num_states_;
    return {std::move(out), num_states_};
}

PolyphaseSequence PolyphaseSequence::canonical() const { return rotated(-indices_.front()); }

MismatchedPair::MismatchedPair(BinarySequence emitted, std::vector<int> filter, Index prefix_len, Index suffix_len)
        : emitted_(std::move(emitted)),
          filter_(Eigen::Map<const Eigen::VectorXi>(filter.data(), static_cast<Index>(filter.size()))),
          prefix_len_(prefix_len),
          suffix_len_(suffix_len) {
    if (prefix_len_ < 0 || suffix_len_ < 0) {
        throw DomainError("prefix and suffix lengths must be nonnegative");
    }
    if (filter_.size() != prefix_len_ + emitted_.size() + suffix_len_) {
        throw DomainError("filter length " + std::to_string(filter_.size()) + " != L_A + N + L_B = " +
                          std::to_string(prefix_len_ + emitted_.size() + suffix_len_));
    }
    if (((filter_.array() != 1) && (filter_.array() != -1)).any()) {
        throw DomainError("filter elements must be -1 or +1");
    }
}

std::complex<double> unit_root(int q, int num_states) {
    // Exact values on the axes keep Q in {2, 4} integral.
    const int r = ((q % num_states) + num_states) % num_states;
    if (4 * r == 0) return {1.0, 0.0};
    if (4 * r == num_states) return {0.0, 1.0};
    if (2 * r == num_states) return {-1.0, 0.0};
    if (4 * r == 3 * num_states) return {0.0, -1.0};
    return std::polar(1.0, 2.0 * std::numbers::pi * r / num_states);
}

std::int64_t autocorrelation(const BinarySequence& s, Index k) {
    return aperiodic_correlation(s.spins(), k);
}

std::int64_t islr_binary(const BinarySequence& s) {
    std::int64_t total = 0;
    for (Index k = 1; k < s.size(); ++k) {
        const std::int64_t c = autocorrelation(s, k);
        total += c * c;
    }
    return total;
}

std::int64_t cross_correlation(const MismatchedPair& p, Index k) {
    const Index n = p.emitted().size();
    const Index m = p.filter_len();
    if (k < -n + 1 || k > m - 1) {
        throw DomainError("delay " + std::to_string(k) + " outside [" + std::to_string(-n + 1) + ", " +
                          std::to_string(m - 1) + "]");
    }
    // 0-based form of sum_{i=max(1,1-k)}^{min(N,M-k)} s_i s'_{i+k}
    const Index lo = std::max<Index>(0, -k);
    const Index hi = std::min<Index>(n, m - k);
    std::int64_t total = 0;
    for (Index i = lo; i < hi; ++i) total += p.emitted()[i] * p.filter()(i + k);
    return total;
}

std::int64_t islr_mismatched(const MismatchedPair& p) {
    std::int64_t total = 0;
    for (Index k = -p.emitted().size() + 1; k < p.filter_len(); ++k) {
        if (k == p.main_lobe_delay()) continue;
        const std::int64_t c = cross_correlation(p, k);
        total += c * c;
    }
    return total;
}

std::complex<double> complex_autocorrelation(const PolyphaseSequence& r, Index k) {
    return aperiodic_correlation(r.values(), k);
}

double islr_polyphase(const PolyphaseSequence& r) { return sidelobe_energy(r.values()); }

std::int64_t max_islr(Index n) {
    check_length(n);
    return static_cast<std::int64_t>(n) * (n - 1) * (2 * n - 1) / 6;
}

}  // namespace islr
