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
#include <string>

#include "catch_amalgamated.hpp"
#include "islr/quadratic_model.hpp"

using namespace islr;

namespace {

QuadraticModel random_model(std::mt19937_64& rng, Domain d, int n) {
    std::uniform_real_distribution<double> coef(-100.0, 100.0);
    ModelBuilder b(d, n);
    b.add_offset(coef(rng));
    for (int i = 0; i < n; ++i) {
        if (rng() % 3) b.add_linear(i, coef(rng));
    }
    for (int t = 0; t < 3 * n; ++t) {
        const int u = static_cast<int>(rng() % n), v = static_cast<int>(rng() % n);
        if (u != v) b.add_quadratic(u, v, coef(rng));
    }
    b.set_meta("case", "random test model");
    return b.build();
}

void check_same(const QuadraticModel& a, const QuadraticModel& b) {
    REQUIRE(a.domain() == b.domain());
    REQUIRE(a.num_vars() == b.num_vars());
    CHECK(a.offset() == b.offset());
    CHECK(a.linear() == b.linear());
    REQUIRE(a.num_interactions() == b.num_interactions());
    for (std::size_t t = 0; t < a.num_interactions(); ++t) {
        CHECK(a.quadratic()[t].u == b.quadratic()[t].u);
        CHECK(a.quadratic()[t].v == b.quadratic()[t].v);
        CHECK(a.quadratic()[t].coeff == b.quadratic()[t].coeff);
    }
    CHECK(a.metadata() == b.metadata());
}

int parse_error_line(const std::string& text) {
    try {
        import_model(text);
    } catch (const ParseError& e) {
        return static_cast<int>(e.line());
    }
    return -1;
}

}  // namespace

TEST_CASE("text export round-trips bit for bit") {
    std::mt19937_64 rng(21);
    for (int trial = 0; trial < 50; ++trial) {
        const auto m = random_model(rng, trial % 2 ? Domain::spin : Domain::binary, 1 + static_cast<int>(rng() % 30));
        const auto text = export_model(m);
        check_same(m, import_model(text));
        CHECK(export_model(import_model(text)) == text);
    }
}

TEST_CASE("JSON export round-trips bit for bit") {
    std::mt19937_64 rng(22);
    for (int trial = 0; trial < 20; ++trial) {
        const auto m = random_model(rng, Domain::spin, 1 + static_cast<int>(rng() % 20));
        check_same(m, import_model_json(export_model_json(m)));
    }
}

TEST_CASE("empty model has no term lines") {
    const auto m = ModelBuilder(Domain::spin, 0).build();
    const auto text = export_model(m);
    CHECK(text == "# islr-qubo model\np qubo spin 0 0 0\nc offset 0\n");
    check_same(m, import_model(text));
}

TEST_CASE("example text parses") {
    const std::string text =
            "# a hand-written model\n"
            "# meta n 2\n"
            "p qubo binary 3 1 2\n"
            "c offset 1.5\n"
            "1 1 -2\n"
            "0 2 4   # trailing comment\n"
            "\n"
            "1 2 0.25\n";
    const auto m = import_model(text);
    CHECK(m.domain() == Domain::binary);
    CHECK(m.num_vars() == 3);
    CHECK(m.offset() == 1.5);
    CHECK(m.linear(1) == -2.0);
    CHECK(m.quadratic(0, 2) == 4.0);
    CHECK(m.quadratic(1, 2) == 0.25);
    CHECK(m.meta("n") == "2");
    CHECK(energy(m, Assignment(Domain::binary, {1, 1, 1})) == 1.5 - 2 + 4 + 0.25);
}

TEST_CASE("offset line is optional on input") {
    const auto m = import_model("p qubo spin 2 0 1\n0 1 1\n");
    CHECK(m.offset() == 0.0);
    CHECK(m.quadratic(0, 1) == 1.0);
}

TEST_CASE("metadata values keep inner spaces") {
    const auto m = ModelBuilder(Domain::spin, 1).set_meta("warning", "meta words a b").build();
    CHECK(import_model(export_model(m)).meta("warning") == "meta words a b");
}

TEST_CASE("malformed text reports the offending line") {
    CHECK(parse_error_line("p qubo spin 2 0 2\n0 1 1\n1 0 1\n") == 3);
    CHECK(parse_error_line("p qubo spin 2 0 2\n0 1 1\n0 1 2\n") == 3);
    CHECK(parse_error_line("p qubo spin 2 0 1\n0 2 1\n") == 2);
    CHECK(parse_error_line("p qubo spin 2 0 1\n0 -1 1\n") == 2);
    CHECK(parse_error_line("p qubo ising 2 0 0\n") == 1);
    CHECK(parse_error_line("# only comments\n0 1 1\n") == 2);
    CHECK(parse_error_line("p qubo spin 2 0 0\nc offset 1\nc offset 2\n") == 3);
    CHECK(parse_error_line("p qubo spin 2 0 1\n0 1 abc\n") == 2);
    CHECK(parse_error_line("p qubo spin 2 0 1\n0 1 nan\n") == 2);
    CHECK(parse_error_line("p qubo spin 2 0 1\n0 1 1 7\n") == 2);
    CHECK(parse_error_line("p qubo spin 2 0 1\n0 1 1\np qubo spin 2 0 0\n") == 3);
    CHECK(parse_error_line("p qubo spin -2 0 0\n") == 1);
    // counts are checked after the last line
    CHECK(parse_error_line("p qubo spin 2 1 0\n") == 1);
    CHECK(parse_error_line("p qubo spin 3 0 2\n0 1 1\n") == 2);
    CHECK(parse_error_line("") == 0);
}

TEST_CASE("malformed JSON is rejected") {
    CHECK_THROWS_AS(import_model_json("{"), ParseError);
    CHECK_THROWS_AS(import_model_json("{\"format\": \"something-else\"}"), ParseError);
    const auto good = export_model_json(ModelBuilder(Domain::spin, 2).add_quadratic(0, 1, 1.0).build());
    CHECK_NOTHROW(import_model_json(good));
}
