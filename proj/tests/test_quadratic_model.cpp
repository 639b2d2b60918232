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
#include <tuple>
#include <vector>

#include "catch_amalgamated.hpp"
#include "islr/quadratic_model.hpp"

using namespace islr;
using Catch::Matchers::WithinAbs;
using Catch::Matchers::WithinRel;

namespace {

// The raw term list a random model was built from, evaluated directly.
struct RawModel {
    Domain domain;
    int n;
    double offset = 0.0;
    std::vector<std::pair<int, double>> linear;
    std::vector<std::tuple<int, int, double>> quadratic;

    double eval(const std::vector<int>& x) const {
        double e = offset;
        for (auto [i, c] : linear) e += c * x[i];
        for (auto [u, v, c] : quadratic) e += c * x[u] * x[v];
        return e;
    }

    QuadraticModel build() const {
        ModelBuilder b(domain, n);
        b.add_offset(offset);
        for (auto [i, c] : linear) b.add_linear(i, c);
        for (auto [u, v, c] : quadratic) b.add_quadratic(u, v, c);
        return b.build();
    }
};

RawModel random_raw(std::mt19937_64& rng, Domain d, int n) {
    std::uniform_real_distribution<double> coef(-3.0, 3.0);
    RawModel r{d, n};
    r.offset = coef(rng);
    for (int t = 0; t < 2 * n; ++t) r.linear.emplace_back(static_cast<int>(rng() % n), coef(rng));
    for (int t = 0; t < 3 * n; ++t) {
        // includes u == v and repeated pairs on purpose
        r.quadratic.emplace_back(static_cast<int>(rng() % n), static_cast<int>(rng() % n), coef(rng));
    }
    return r;
}

std::vector<int> values_of(Domain d, int n, std::uint64_t mask) {
    std::vector<int> x(n);
    for (int i = 0; i < n; ++i) {
        const bool on = (mask >> i) & 1U;
        x[i] = d == Domain::spin ? (on ? 1 : -1) : (on ? 1 : 0);
    }
    return x;
}

Assignment assignment_of(Domain d, const std::vector<int>& x) {
    std::vector<std::int8_t> v(x.begin(), x.end());
    return Assignment(d, v);
}

}  // namespace

TEST_CASE("empty and trivial models") {
    const auto empty = ModelBuilder(Domain::spin, 0).add_offset(2.5).build();
    CHECK(energy(empty, Assignment(Domain::spin, {})) == 2.5);

    const auto one = ModelBuilder(Domain::spin, 1).add_linear(0, 1.0).build();
    CHECK(energy(one, Assignment(Domain::spin, {1})) == 1.0);
    CHECK(energy(one, Assignment(Domain::spin, {-1})) == -1.0);
}

TEST_CASE("builder merges and canonicalizes pair terms") {
    ModelBuilder b(Domain::spin, 3);
    b.add_quadratic(2, 0, 1.5).add_quadratic(0, 2, 0.5).add_quadratic(1, 0, 1.0).add_quadratic(1, 2, 3.0).add_quadratic(2, 1, -3.0);
    const auto m = b.build();
    REQUIRE(m.num_interactions() == 2);
    CHECK(m.quadratic()[0].u == 0);
    CHECK(m.quadratic()[0].v == 1);
    CHECK(m.quadratic(2, 0) == 2.0);
    CHECK(m.quadratic(0, 2) == 2.0);
    CHECK(m.quadratic(1, 2) == 0.0);
    for (const auto& t : m.quadratic()) CHECK(t.u < t.v);
}

TEST_CASE("self-products fold by domain") {
    const auto s = ModelBuilder(Domain::spin, 2).add_quadratic(1, 1, 4.0).build();
    CHECK(s.offset() == 4.0);
    CHECK(s.num_interactions() == 0);
    const auto b = ModelBuilder(Domain::binary, 2).add_quadratic(1, 1, 4.0).build();
    CHECK(b.offset() == 0.0);
    CHECK(b.linear(1) == 4.0);
}

TEST_CASE("builder rejects bad input") {
    ModelBuilder b(Domain::spin, 2);
    CHECK_THROWS_AS(b.add_linear(2, 1.0), ContractError);
    CHECK_THROWS_AS(b.add_quadratic(-1, 0, 1.0), ContractError);
    CHECK_THROWS_AS(ModelBuilder(Domain::spin, -1), ContractError);
    CHECK_THROWS_AS(Assignment(Domain::spin, {0}), ContractError);
    CHECK_THROWS_AS(Assignment(Domain::binary, {-1}), ContractError);
}

TEST_CASE("energy checks domain and size") {
    const auto m = ModelBuilder(Domain::spin, 2).add_quadratic(0, 1, 1.0).build();
    CHECK_THROWS_AS(energy(m, Assignment(Domain::spin, {1})), ContractError);
    CHECK_THROWS_AS(energy(m, Assignment(Domain::binary, {1, 0})), ContractError);
}

TEST_CASE("spin to binary on a single product") {
    const auto m = ModelBuilder(Domain::spin, 2).add_quadratic(0, 1, 1.0).build();
    const auto b = to_binary_domain(m);
    CHECK(b.domain() == Domain::binary);
    for (std::uint64_t mask = 0; mask < 4; ++mask) {
        const auto s = Assignment::from_bits(Domain::spin, 2, mask);
        CHECK(energy(b, to_binary_domain(s)) == energy(m, s));
    }
    const auto offset_only = ModelBuilder(Domain::spin, 3).add_offset(-1.25).build();
    CHECK(to_binary_domain(offset_only).offset() == -1.25);
    CHECK(to_binary_domain(offset_only).num_interactions() == 0);
}

TEST_CASE("built model agrees with its raw term list") {
    std::mt19937_64 rng(11);
    for (int trial = 0; trial < 40; ++trial) {
        const Domain d = trial % 2 ? Domain::spin : Domain::binary;
        const int n = 1 + static_cast<int>(rng() % 9);
        const auto raw = random_raw(rng, d, n);
        const auto m = raw.build();
        for (std::uint64_t mask = 0; mask < (std::uint64_t{1} << n); ++mask) {
            const auto x = values_of(d, n, mask);
            CHECK_THAT(energy(m, assignment_of(d, x)), WithinAbs(raw.eval(x), 1e-9));
        }
    }
}

TEST_CASE("domain conversion preserves every energy") {
    std::mt19937_64 rng(12);
    for (int trial = 0; trial < 30; ++trial) {
        const int n = 1 + static_cast<int>(rng() % 12);
        const auto raw = random_raw(rng, Domain::spin, n);
        const auto m = raw.build();
        const auto b = to_binary_domain(m);
        const auto back = to_spin_domain(b);
        for (std::uint64_t mask = 0; mask < (std::uint64_t{1} << n); ++mask) {
            const auto s = Assignment::from_bits(Domain::spin, n, mask);
            const double e = energy(m, s);
            CHECK_THAT(energy(b, to_binary_domain(s)), WithinAbs(e, 1e-9));
            CHECK(to_spin_domain(to_binary_domain(s)) == s);
        }
        CHECK_THAT(back.offset(), WithinAbs(m.offset(), 1e-12 * (1 + std::abs(m.offset()))));
        for (int i = 0; i < n; ++i) CHECK_THAT(back.linear(i), WithinAbs(m.linear(i), 1e-12 * (1 + std::abs(m.linear(i)))));
        for (const auto& t : m.quadratic()) CHECK_THAT(back.quadratic(t.u, t.v), WithinAbs(t.coeff, 1e-12 * (1 + std::abs(t.coeff))));
    }
}

TEST_CASE("add_scaled is linear") {
    std::mt19937_64 rng(13);
    for (int trial = 0; trial < 20; ++trial) {
        const int n = 2 + static_cast<int>(rng() % 10);
        const auto a = random_raw(rng, Domain::spin, n).build();
        const auto b = random_raw(rng, Domain::spin, n).build();
        const auto c = random_raw(rng, Domain::spin, n).build();
        const double w = std::uniform_real_distribution<double>(-2, 2)(rng);
        const auto sum = add_scaled(a, b, w);
        const auto ab_c = add_scaled(add_scaled(a, b, 1.0), c, 1.0);
        const auto a_bc = add_scaled(a, add_scaled(b, c, 1.0), 1.0);
        const auto ba = add_scaled(b, a, 1.0);
        const auto ab = add_scaled(a, b, 1.0);
        const auto same = add_scaled(a, b, 0.0);
        for (int t = 0; t < 100; ++t) {
            const auto s = Assignment::from_bits(Domain::spin, n, rng());
            CHECK_THAT(energy(sum, s), WithinAbs(energy(a, s) + w * energy(b, s), 1e-9));
            CHECK_THAT(energy(ab_c, s), WithinAbs(energy(a_bc, s), 1e-9));
            CHECK_THAT(energy(ab, s), WithinAbs(energy(ba, s), 1e-9));
            CHECK(energy(same, s) == energy(a, s));
        }
    }
    const auto a = ModelBuilder(Domain::spin, 2).add_quadratic(0, 1, 1.0).build();
    const auto z = ModelBuilder(Domain::spin, 2).build();
    const auto other = add_scaled(z, a, 1.0);
    CHECK(other.quadratic(0, 1) == 1.0);
    CHECK_THROWS_AS(add_scaled(a, ModelBuilder(Domain::binary, 2).build(), 1.0), ContractError);
    CHECK_THROWS_AS(add_scaled(a, ModelBuilder(Domain::spin, 3).build(), 1.0), ContractError);
}

TEST_CASE("add_squared matches the squared linear form") {
    std::mt19937_64 rng(14);
    std::uniform_real_distribution<double> coef(-2, 2);
    for (int trial = 0; trial < 30; ++trial) {
        const Domain d = trial % 2 ? Domain::spin : Domain::binary;
        const int n = 1 + static_cast<int>(rng() % 8);
        std::vector<std::pair<int, double>> terms;
        for (int t = 0; t < n + 2; ++t) terms.emplace_back(static_cast<int>(rng() % n), coef(rng));
        const double constant = coef(rng), weight = coef(rng);
        const auto m = ModelBuilder(d, n).add_squared(terms, constant, weight).build();
        for (std::uint64_t mask = 0; mask < (std::uint64_t{1} << n); ++mask) {
            const auto x = values_of(d, n, mask);
            double lin = constant;
            for (auto [i, c] : terms) lin += c * x[i];
            CHECK_THAT(energy(m, assignment_of(d, x)), WithinAbs(weight * lin * lin, 1e-9));
        }
    }
}

TEST_CASE("metadata and domain names") {
    const auto m = ModelBuilder(Domain::binary, 1).set_meta("case", "x").build();
    CHECK(m.meta("case") == "x");
    CHECK(m.meta("absent").empty());
    CHECK(m.with_metadata({{"n", "3"}}).meta("n") == "3");
    CHECK(domain_from_string(to_string(Domain::spin)) == Domain::spin);
    CHECK(domain_from_string("binary") == Domain::binary);
    CHECK_THROWS_AS(domain_from_string("ising"), DomainError);
}

TEST_CASE("format_real round-trips") {
    std::mt19937_64 rng(15);
    for (int t = 0; t < 1000; ++t) {
        const double x = std::uniform_real_distribution<double>(-1e6, 1e6)(rng);
        CHECK(std::stod(format_real(x)) == x);
    }
    CHECK(format_real(10.0) == "10");
    CHECK(format_real(-0.5) == "-0.5");
}
