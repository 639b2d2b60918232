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

// Reference computations for the test suites. Plain loops over std::vector,
// deliberately sharing no code with the library.

#include <cmath>
#include <complex>
#include <cstdint>
#include <numbers>
#include <random>
#include <vector>

namespace oracle {

inline std::int64_t islr(const std::vector<int>& s) {
    const auto n = static_cast<int>(s.size());
    std::int64_t total = 0;
    for (int k = 1; k < n; ++k) {
        std::int64_t c = 0;
        for (int i = 0; i + k < n; ++i) c += s[i] * s[i + k];
        total += c * c;
    }
    return total;
}

inline std::complex<double> phasor(int q, int num_states) {
    return std::exp(std::complex<double>(0.0, 2.0 * std::numbers::pi * q / num_states));
}

inline double polyphase_islr(const std::vector<int>& idx, int num_states) {
    const auto n = static_cast<int>(idx.size());
    double total = 0.0;
    for (int k = 1; k < n; ++k) {
        std::complex<double> c = 0.0;
        for (int i = 0; i + k < n; ++i) c += phasor(idx[i], num_states) * std::conj(phasor(idx[i + k], num_states));
        total += std::norm(c);
    }
    return total;
}

/// Every +-1 sequence of length n with s_0 = +1.
inline std::vector<std::vector<int>> canonical_sequences(int n) {
    std::vector<std::vector<int>> out;
    for (std::uint64_t mask = 0; mask < (std::uint64_t{1} << (n - 1)); ++mask) {
        std::vector<int> s(n, 1);
        for (int b = 0; b < n - 1; ++b) s[b + 1] = ((mask >> b) & 1U) ? 1 : -1;
        out.push_back(s);
    }
    return out;
}

inline std::int64_t min_islr(int n) {
    std::int64_t best = -1;
    for (const auto& s : canonical_sequences(n)) {
        const auto e = islr(s);
        if (best < 0 || e < best) best = e;
    }
    return best;
}

inline double min_polyphase_islr(int n, int q) {
    double best = -1.0;
    std::vector<int> idx(n, 0);
    while (true) {
        const double e = polyphase_islr(idx, q);
        if (best < 0 || e < best) best = e;
        int pos = n - 1;
        while (pos >= 0 && ++idx[pos] == q) idx[pos--] = 0;
        if (pos < 0) break;
    }
    return best;
}

/// H3 gadget for one triplet written out term by term.
inline int gadget(int zij, int zik, int zjk, int a) {
    int quad = zij * zik - zij * zjk - zik * zjk - 2 * zij * a - 2 * zik * a + 2 * zjk * a;
    int lin = zij + zik - zjk - 2 * a;
    return 4 + quad + lin;
}

inline std::vector<int> random_spins(std::mt19937_64& rng, int n) {
    std::vector<int> s(n);
    for (auto& v : s) v = (rng() & 1U) ? 1 : -1;
    return s;
}

inline std::vector<int> random_phases(std::mt19937_64& rng, int n, int q) {
    std::vector<int> s(n);
    for (auto& v : s) v = static_cast<int>(rng() % static_cast<std::uint64_t>(q));
    return s;
}

}  // namespace oracle
