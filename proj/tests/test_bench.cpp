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

#include <algorithm>
#include <map>

#include "catch_amalgamated.hpp"
#include "islr/bench.hpp"
#include "oracles.hpp"

using namespace islr;
using namespace islr::bench;

namespace {

ExperimentConfig config(Case c, Index n, int q = 2) {
    ExperimentConfig e;
    e.problem = c;
    e.n = n;
    e.q = q;
    return e;
}

nlohmann::json as_plain(const Json& j) { return nlohmann::json::parse(j.dump()); }

}  // namespace

TEST_CASE("build counts") {
    CHECK(build_model(config(Case::binary_matched, 21)).num_vars() == 1771);
    CHECK(build_model(config(Case::polyphase_matched, 21, 2)).num_vars() == 1764);
    const auto relaxed = build_model(config(Case::polyphase_relaxation, 3, 2));
    const auto s = build_summary(relaxed);
    CHECK(s["warning"].get<std::string>().find("no main-lobe guarantee") != std::string::npos);
    CHECK(build_summary(build_model(config(Case::binary_matched, 5)))["lambda_lower_bounds"]["lambda1"] == 15.0);
    CHECK_THROWS_AS(build_model(config(Case::binary_matched, 1)), DomainError);
    CHECK_THROWS_AS(build_model(config(Case::polyphase_matched, 3, 1)), DomainError);
}

TEST_CASE("model metadata carries the experiment") {
    for (const auto& e : {config(Case::binary_matched, 4), config(Case::polyphase_matched, 3, 3),
                          config(Case::polyphase_relaxation, 2, 4)}) {
        const auto m = import_model(export_model(build_model(e)));
        const auto back = config_from_model(m);
        CHECK(back.problem == e.problem);
        CHECK(back.n == e.n);
        if (is_polyphase(e.problem)) CHECK(back.q == e.q);
    }
    CHECK_THROWS_AS(config_from_model(ModelBuilder(Domain::spin, 3).build()), ContractError);
    const auto wrong = ModelBuilder(Domain::spin, 3).set_meta("case", "binary-matched").set_meta("n", "3").build();
    CHECK_THROWS_AS(config_from_model(wrong), ContractError);
}

TEST_CASE("solve, verify round trip") {
    const auto m3 = build_model(config(Case::binary_matched, 3));
    const auto exact = solve(m3, Backend::exact, {});
    CHECK(exact.result["best_energy"] == 2.0);

    const auto m4 = build_model(config(Case::binary_matched, 4));
    const auto r4 = verify(m4, as_plain(solve(m4, Backend::exact, {}).result));
    REQUIRE(r4.decoded.feasible);
    CHECK(*r4.decoded.islr == static_cast<double>(::oracle::min_islr(4)));
    CHECK(*r4.islr_from_energy == *r4.decoded.islr);
    CHECK(r4.energy_consistent);
    CHECK(std::abs(r4.recomputed_energy - r4.reported_energy) <= 1e-9);

    const auto mp = build_model(config(Case::polyphase_matched, 2, 2));
    const auto rp = verify(mp, as_plain(solve(mp, Backend::exact, {}).result));
    REQUIRE(rp.decoded.feasible);
    CHECK(*rp.decoded.islr == 1.0);
}

TEST_CASE("annealing results are reproducible") {
    const auto m = build_model(config(Case::binary_matched, 5));
    AnnealSchedule s;
    s.num_sweeps = 200;
    s.rng_seed = 77;
    const auto a = solve(m, Backend::sa, s);
    const auto b = solve(m, Backend::sa, s, 3);
    CHECK(a.result.dump() == b.result.dump());
    CHECK(a.result["seed"] == 77);
    CHECK(a.result["per_restart_energies"].size() == 20);
}

TEST_CASE("verify flags tampering and mismatches") {
    const auto m = build_model(config(Case::binary_matched, 4));
    auto result = as_plain(solve(m, Backend::exact, {}).result);
    auto tampered = result;
    auto& bit = tampered["best_assignment"][0];
    bit = -bit.get<int>();
    const auto r = verify(m, tampered);
    CHECK_FALSE(r.decoded.feasible);
    CHECK_FALSE(r.decoded.violations.empty());
    CHECK_FALSE(r.energy_consistent);
    CHECK(to_text(r).find("diagonal") != std::string::npos);

    const auto other = build_model(config(Case::binary_matched, 5));
    CHECK_THROWS_AS(verify(other, result), ContractError);
    auto wrong_domain = result;
    wrong_domain["domain"] = "binary";
    CHECK_THROWS_AS(verify(m, wrong_domain), ContractError);
}

TEST_CASE("sweep variable counts cross over at N = 21") {
    SweepConfig bin;
    bin.backend = Backend::none;
    bin.ns = {20, 21, 22};
    SweepConfig poly = bin;
    poly.problem = Case::polyphase_matched;
    poly.qs = {2};
    const auto b = run_sweep(bin), p = run_sweep(poly);
    REQUIRE(b.size() == 3);
    REQUIRE(p.size() == 3);
    CHECK(b[0].num_vars < p[0].num_vars);
    CHECK(b[1].num_vars == 1771);
    CHECK(p[1].num_vars == 1764);
    CHECK(b[2].num_vars > p[2].num_vars);
    for (const auto& r : b) CHECK(r.num_vars == r.n * r.n + r.n * (r.n - 1) * (r.n - 2) / 6);
    for (const auto& r : p) CHECK(r.num_vars == 4 * r.n * r.n);
}

TEST_CASE("sweep oracle columns") {
    SweepConfig bin;
    bin.backend = Backend::none;
    for (Index n = 2; n <= 10; ++n) bin.ns.push_back(n);
    SweepConfig poly = bin;
    poly.problem = Case::polyphase_matched;
    poly.qs = {2, 3, 4};
    const auto b = run_sweep(bin), p = run_sweep(poly);
    std::map<std::pair<Index, int>, double> table;
    for (const auto& r : p) {
        REQUIRE(r.oracle_islr.has_value());
        table[{r.n, *r.q}] = *r.oracle_islr;
    }
    for (const auto& r : b) CHECK(table.at({r.n, 2}) == *r.oracle_islr);
    // Q=4 contains the Q=2 alphabet, so its optimum can only be lower
    for (Index n = 2; n <= 10; ++n) CHECK(table.at({n, 4}) <= table.at({n, 2}) + 1e-9);
    // Q=3 does not contain it and is not monotone with respect to Q=2
    CHECK(table.at({3, 3}) > table.at({3, 2}));
}

TEST_CASE("sweep output is deterministic") {
    SweepConfig c;
    c.ns = {3, 4, 5};
    c.schedule.num_sweeps = 200;
    c.schedule.num_restarts = 6;
    c.schedule.rng_seed = 5;
    const auto a = sweep_csv(run_sweep(c), false);
    c.workers = 3;
    const auto records = run_sweep(c);
    CHECK(sweep_csv(records, false) == a);
    CHECK(sweep_json(records, false).dump() == sweep_json(run_sweep(c), false).dump());
    for (const auto& r : records) {
        REQUIRE(r.feasible_fraction.has_value());
        CHECK(*r.feasible_fraction >= 0.0);
        CHECK(*r.feasible_fraction <= 1.0);
        REQUIRE(r.success_fraction.has_value());
        CHECK(*r.success_fraction >= 0.0);
        CHECK(*r.success_fraction <= 1.0);
        CHECK_FALSE(r.wall_time_s.has_value());
    }
    CHECK(a.find("wall_time") == std::string::npos);
    c.timing = true;
    CHECK(sweep_csv(run_sweep(c), true).find("wall_time") != std::string::npos);
}

TEST_CASE("sweep skips the oracle beyond its budget") {
    SweepConfig c;
    c.backend = Backend::none;
    c.ns = {12};
    c.oracle_budget = 1024;
    const auto r = run_sweep(c);
    CHECK_FALSE(r[0].oracle_islr.has_value());
    CHECK_FALSE(r[0].success_fraction.has_value());
}

TEST_CASE("oracle reports") {
    const auto b13 = bench::oracle(13, std::nullopt);
    CHECK(b13["min_islr"] == 6);
    bool barker = false;
    for (const auto& o : b13["optimizers"]) {
        CHECK(o["peak_sidelobe"] == 1);
        barker |= o["sequence"] == "+++++--++-+-+";
    }
    CHECK(barker);
    CHECK(bench::oracle(7, std::nullopt)["min_islr"] == ::oracle::islr({1, 1, 1, -1, -1, 1, -1}));
    const auto p = bench::oracle(3, 3);
    CHECK(std::abs(p["min_islr"].get<double>() - ::oracle::min_polyphase_islr(3, 3)) < 1e-9);
    CHECK_THROWS_AS(bench::oracle(40, std::nullopt), BudgetError);
}

TEST_CASE("index lists") {
    CHECK(parse_index_list("5") == std::vector<Index>{5});
    CHECK(parse_index_list("3,4,7") == std::vector<Index>{3, 4, 7});
    CHECK(parse_index_list("3..6") == std::vector<Index>{3, 4, 5, 6});
    CHECK(parse_index_list("2,5..6") == std::vector<Index>{2, 5, 6});
    CHECK_THROWS_AS(parse_index_list(""), DomainError);
    CHECK_THROWS_AS(parse_index_list("3..x"), DomainError);
    CHECK_THROWS_AS(parse_index_list("6..3"), DomainError);
    CHECK_THROWS_AS(parse_index_list("a"), DomainError);
}

TEST_CASE("case names") {
    for (auto c : {Case::binary_matched, Case::polyphase_matched, Case::polyphase_relaxation}) {
        CHECK(case_from_string(to_string(c)) == c);
    }
    CHECK_THROWS_AS(case_from_string("ternary"), DomainError);
    CHECK(backend_from_string("exact") == Backend::exact);
    CHECK_THROWS_AS(backend_from_string("qpu"), DomainError);
}
