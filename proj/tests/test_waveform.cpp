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

#include <random>

#include "catch_amalgamated.hpp"
#include "islr/waveform.hpp"
#include "oracles.hpp"

using namespace islr;
using Catch::Matchers::WithinAbs;

TEST_CASE("autocorrelation of short binary codes") {
    const BinarySequence s({1, 1, -1});
    CHECK(autocorrelation(s, 1) == 0);
    CHECK(autocorrelation(s, 2) == -1);

    const BinarySequence ones(std::vector<int>(6, 1));
    for (Index k = 1; k < 6; ++k) CHECK(autocorrelation(ones, k) == 6 - k);

    CHECK_THROWS_AS(autocorrelation(s, 0), DomainError);
    CHECK_THROWS_AS(autocorrelation(s, 3), DomainError);
    CHECK_THROWS_AS(autocorrelation(s, -1), DomainError);
}

TEST_CASE("binary ISLR") {
    CHECK(islr_binary(BinarySequence({1, 1, -1})) == 1);
    CHECK(islr_binary(BinarySequence(std::vector<int>(4, 1))) == 14);
    CHECK(islr_binary(BinarySequence({1, 1})) == 1);
    CHECK(islr_binary(BinarySequence({1, -1})) == 1);
    CHECK(islr_binary(BinarySequence::from_string("+++++--++-+-+")) == 6);
}

TEST_CASE("sequence construction validates eagerly") {
    CHECK_THROWS_AS(BinarySequence(std::vector<int>{1}), DomainError);
    CHECK_THROWS_AS(BinarySequence(std::vector<int>{1, 0, 1}), DomainError);
    CHECK_THROWS_AS(BinarySequence::from_string("+-x"), DomainError);
    CHECK(BinarySequence::from_string("+-+").to_vector() == std::vector<int>{1, -1, 1});
    CHECK(BinarySequence::from_string("-+-").canonical().to_string() == "+-+");

    CHECK_THROWS_AS(PolyphaseSequence({0}, 3), DomainError);
    CHECK_THROWS_AS(PolyphaseSequence({0, 1}, 1), DomainError);
    CHECK_THROWS_AS(PolyphaseSequence({0, 3}, 3), DomainError);
    CHECK(PolyphaseSequence({2, 0, 1}, 3).canonical() == PolyphaseSequence({0, 1, 2}, 3));
}

TEST_CASE("cross-correlation against a mismatched filter") {
    const MismatchedPair same2(BinarySequence({1, 1}), {1, 1}, 0, 0);
    CHECK(cross_correlation(same2, 1) == 1);
    CHECK(islr_mismatched(same2) == 2);

    const MismatchedPair alt(BinarySequence({1, -1}), {1, -1}, 0, 0);
    CHECK(cross_correlation(alt, -1) == -1);

    const MismatchedPair m3(BinarySequence({1, 1, -1}), {1, 1, -1}, 0, 0);
    CHECK(cross_correlation(m3, 0) == 3);
    CHECK(islr_mismatched(m3) == 2);

    // main lobe sits at k = L_A once a prefix is present
    const MismatchedPair padded(BinarySequence({1, 1, -1}), {-1, 1, 1, -1, 1}, 1, 1);
    CHECK(padded.main_lobe_delay() == 1);
    CHECK(cross_correlation(padded, 1) == 3);
    CHECK_THROWS_AS(cross_correlation(padded, -3), DomainError);
    CHECK_THROWS_AS(cross_correlation(padded, 5), DomainError);

    CHECK_THROWS_AS(MismatchedPair(BinarySequence({1, 1}), {1, 1, 1}, 0, 0), DomainError);
    CHECK_THROWS_AS(MismatchedPair(BinarySequence({1, 1}), {1, 2}, 0, 0), DomainError);
    CHECK_THROWS_AS(MismatchedPair(BinarySequence(std::vector<int>{1}), {1}, 0, 0), DomainError);
}

TEST_CASE("mismatched ISLR matches a direct double loop") {
    std::mt19937_64 rng(7);
    for (int trial = 0; trial < 50; ++trial) {
        const int n = 2 + static_cast<int>(rng() % 6);
        const int la = static_cast<int>(rng() % 3), lb = static_cast<int>(rng() % 3);
        const auto s = oracle::random_spins(rng, n);
        const auto f = oracle::random_spins(rng, la + n + lb);
        const MismatchedPair p(BinarySequence(s), f, la, lb);
        std::int64_t expect = 0;
        for (int k = -n + 1; k <= la + n + lb - 1; ++k) {
            if (k == la) continue;
            std::int64_t c = 0;
            for (int i = 0; i < n; ++i) {
                if (i + k >= 0 && i + k < la + n + lb) c += s[i] * f[i + k];
            }
            expect += c * c;
        }
        CHECK(islr_mismatched(p) == expect);
    }
}

TEST_CASE("complex autocorrelation") {
    const PolyphaseSequence zeros({0, 0, 0, 0}, 5);
    for (Index k = 1; k < 4; ++k) {
        const auto c = complex_autocorrelation(zeros, k);
        CHECK_THAT(c.real(), WithinAbs(4.0 - k, 1e-12));
        CHECK_THAT(c.imag(), WithinAbs(0.0, 1e-12));
    }
    const auto c = complex_autocorrelation(PolyphaseSequence({0, 1}, 4), 1);
    CHECK_THAT(c.real(), WithinAbs(0.0, 1e-15));
    CHECK_THAT(c.imag(), WithinAbs(-1.0, 1e-15));

    const PolyphaseSequence two({0, 1, 1, 0, 1}, 2);
    const BinarySequence pm({1, -1, -1, 1, -1});
    for (Index k = 1; k < 5; ++k) CHECK(complex_autocorrelation(two, k).real() == autocorrelation(pm, k));
    CHECK_THROWS_AS(complex_autocorrelation(two, 5), DomainError);
}

TEST_CASE("poly-phase ISLR") {
    CHECK_THAT(islr_polyphase(PolyphaseSequence({2, 2, 2}, 3)), WithinAbs(5.0, 1e-9));
    CHECK_THAT(islr_polyphase(PolyphaseSequence({1, 1, 1}, 7)), WithinAbs(5.0, 1e-9));
}

TEST_CASE("max ISLR") {
    CHECK(max_islr(2) == 1);
    CHECK(max_islr(4) == 14);
    CHECK(max_islr(5) == 30);
    CHECK_THROWS_AS(max_islr(1), DomainError);
}

TEST_CASE("evaluator properties on random codes") {
    std::mt19937_64 rng(2024);
    for (int trial = 0; trial < 300; ++trial) {
        const int n = 2 + static_cast<int>(rng() % 19);
        const auto spins = oracle::random_spins(rng, n);
        const BinarySequence s(spins);
        const auto e = islr_binary(s);

        CHECK(e == oracle::islr(spins));
        CHECK(islr_binary(s.negated()) == e);
        CHECK(islr_binary(s.reversed()) == e);
        CHECK(e >= 0);
        CHECK(e <= max_islr(n));
        CHECK(islr_mismatched(MismatchedPair(s, spins, 0, 0)) == 2 * e);

        std::vector<int> idx(spins.size());
        for (std::size_t i = 0; i < spins.size(); ++i) idx[i] = spins[i] > 0 ? 0 : 1;
        CHECK(islr_polyphase(PolyphaseSequence(idx, 2)) == static_cast<double>(e));
    }
    for (int n = 2; n < 12; ++n) CHECK(islr_binary(BinarySequence(std::vector<int>(n, 1))) == max_islr(n));
}

TEST_CASE("poly-phase ISLR is invariant under global rotation") {
    std::mt19937_64 rng(99);
    for (int trial = 0; trial < 200; ++trial) {
        const int n = 2 + static_cast<int>(rng() % 10);
        const int q = 2 + static_cast<int>(rng() % 6);
        const auto idx = oracle::random_phases(rng, n, q);
        const PolyphaseSequence r(idx, q);
        const double e = islr_polyphase(r);
        CHECK_THAT(e, WithinAbs(oracle::polyphase_islr(idx, q), 1e-9));
        for (int shift = 1; shift < q; ++shift) CHECK_THAT(islr_polyphase(r.rotated(shift)), WithinAbs(e, 1e-9));
    }
}

TEST_CASE("Q in {2, 4} gives exact integer ISLR") {
    std::mt19937_64 rng(5);
    for (int trial = 0; trial < 100; ++trial) {
        const int q = (trial % 2) ? 4 : 2;
        const PolyphaseSequence r(oracle::random_phases(rng, 2 + static_cast<int>(rng() % 12), q), q);
        const double e = islr_polyphase(r);
        CHECK(e == std::round(e));
    }
}
