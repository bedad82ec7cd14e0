// Copyright 2026 The pilotpart Authors
//
// Licensed under the Apache License, Version 2.0 (the "License");
// you may not use this file except in compliance with the License.
// You may obtain a copy of the License at
//
//     http://www.apache.org/licenses/LICENSE-2.0
//
// Unless required by applicable law or agreed to in writing, software
// distributed under the License is distributed on an "AS IS" BASIS,
// WITHOUT WARRANTIES OR CONDITIONS OF ANY KIND, either express or implied.
// See the License for the specific language governing permissions and
// limitations under the License.

#include <doctest.h>

#include <cmath>
#include <random>

#include "fixtures.hpp"
#include "oracles.hpp"
#include "pilotpart/objective.hpp"
#include "pilotpart/reductions.hpp"
#include "pilotpart/solvers.hpp"

using namespace pilotpart;

namespace {

WeightedGraph unit_graph(int n, int k, const std::vector<std::pair<int, int>>& edges) {
    return coloring_to_mkp(SimpleGraph{n, edges}, k);
}

const std::vector<std::pair<int, int>> kTriangle{{0, 1}, {1, 2}, {0, 2}};

WeightedGraph random_rational_graph(std::mt19937_64& rng, int n, int k) {
    WeightedGraph g(n, k);
    for (int i = 0; i < n; ++i)
        for (int j = i + 1; j < n; ++j)
            if (rng() % 4 != 0) g.set_weight(i, j, Rational(static_cast<long>(rng() % 50), static_cast<long>(1 + rng() % 12)));
    return g;
}

PilotAssignment random_assignment(std::mt19937_64& rng, int k, int tau) {
    PilotAssignment a{std::vector<int>(k), tau};
    do {
        for (auto& p : a.pilot_of) p = static_cast<int>(rng() % tau);
    } while (!is_surjective(a.pilot_of, tau));
    return a;
}

} // namespace

TEST_CASE("WeightedGraph storage") {
    WeightedGraph g(4, 2);
    g.set_weight(2, 0, Rational(3, 2));
    CHECK(g.weight(0, 2) == Rational(3, 2));
    CHECK(g.weight(2, 0) == Rational(3, 2));
    CHECK(g.weight(1, 3) == 0);
    CHECK(g.edges() == std::vector<std::pair<int, int>>{{0, 2}});
    CHECK_THROWS_AS(g.set_weight(1, 1, Rational(1)), std::invalid_argument);
    CHECK_THROWS_AS(g.set_weight(0, 1, Rational(-1)), std::invalid_argument);
    CHECK_THROWS_AS(g.weight(0, 4), std::out_of_range);
    CHECK_THROWS_AS(WeightedGraph(3, 4), std::invalid_argument);
}

TEST_CASE("mkp_objective examples") {
    CHECK(mkp_objective(unit_graph(3, 3, kTriangle), {{0, 1, 2}, 3}) == 0);
    CHECK(mkp_objective(unit_graph(3, 2, kTriangle), {{0, 0, 1}, 2}) == 1);
    std::vector<std::pair<int, int>> k4;
    for (int i = 0; i < 4; ++i)
        for (int j = i + 1; j < 4; ++j) k4.emplace_back(i, j);
    CHECK(brute_force_partition(unit_graph(4, 2, k4)).value == 2);
    CHECK_THROWS_AS(mkp_objective(unit_graph(3, 2, kTriangle), {{0, 1, 2}, 3}), std::invalid_argument);
    CHECK_THROWS_AS(mkp_objective(unit_graph(3, 2, kTriangle), {{0, 0, 0}, 2}), std::invalid_argument);
}

TEST_CASE("pa_to_mkp") {
    SUBCASE("unit pair gives one edge of weight 2") {
        auto g = pa_to_mkp(fixtures::diagonal_system({{1, 1}, {1, 1}}, 2));
        CHECK(g.n_vertices() == 2);
        CHECK(g.k_parts() == 2);
        CHECK(g.weight(0, 1) == 2);
    }
    SUBCASE("zero cross gains give zero weights on every pair") {
        auto g = pa_to_mkp(fixtures::diagonal_system({{1, 0, 0}, {0, 1, 0}, {0, 0, 1}}, 2));
        for (int i = 0; i < 3; ++i)
            for (int j = i + 1; j < 3; ++j) CHECK(g.weight(i, j) == 0);
    }
    SUBCASE("weights equal pairwise interference, symmetric and nonnegative") {
        std::mt19937_64 rng(8);
        for (int t = 0; t < 30; ++t) {
            auto s = fixtures::random_system(rng, 2, 8, 16);
            auto exact = pa_to_mkp(s, Arithmetic::Exact);
            auto flt = pa_to_mkp(s, Arithmetic::Float);
            CHECK(exact.k_parts() == s.tau_pilots);
            for (int i = 0; i < s.k_users; ++i)
                for (int j = 0; j < s.k_users; ++j) {
                    if (i == j) continue;
                    CHECK(exact.weight(i, j) >= 0);
                    CHECK(exact.weight(i, j) == exact.weight(j, i));
                    CHECK(to_double(flt.weight(i, j)) == pairwise_interference(s, i, j));
                    const double e = to_double(exact.weight(i, j));
                    CHECK(std::abs(e - pairwise_interference(s, i, j)) <= 1e-12 * e);
                }
        }
    }
    SUBCASE("invalid systems are rejected") {
        auto s = fixtures::diagonal_system({{1, 1}, {1, 1}}, 2);
        s.beta(0, 0) = 0.0;
        CHECK_THROWS_AS(pa_to_mkp(s), InvalidSystem);
    }
}

TEST_CASE("solution mappings are identity on labels") {
    CHECK(mkp_solution_to_pa({{0, 0, 1}, 2}) == PilotAssignment{{0, 0, 1}, 2});
    CHECK(pa_solution_to_mkp({{0, 1, 0}, 2}) == Partition{{0, 1, 0}, 2});
    CHECK_THROWS_AS(mkp_solution_to_pa({{0, 0, 0}, 2}), InfeasibleAssignment);
    CHECK_THROWS_AS(pa_solution_to_mkp({{0, 0, 0}, 2}), InfeasibleAssignment);
    Partition p{{2, 0, 1, 1}, 3};
    CHECK(pa_solution_to_mkp(mkp_solution_to_pa(p)) == p);
}

TEST_CASE("mkp_to_pa") {
    SUBCASE("two vertices, w = 8, gives beta = [[1,2],[2,1]]") {
        WeightedGraph g(2, 2);
        g.set_weight(0, 1, Rational(8));
        auto s = mkp_to_pa(g);
        CHECK(s.beta(0, 0) == 1.0);
        CHECK(s.beta(0, 1) == 2.0);
        CHECK(s.beta(1, 0) == 2.0);
        CHECK(s.beta(1, 1) == 1.0);
        CHECK(s.serving_sets == std::vector<std::vector<int>>{{0}, {1}});
        CHECK(validate_system(s).ok());
    }
    SUBCASE("unit triangle gives sqrt(1/2) off the diagonal") {
        auto s = mkp_to_pa(unit_graph(3, 2, kTriangle));
        for (int i = 0; i < 3; ++i)
            for (int m = 0; m < 3; ++m) {
                if (i == m) continue;
                CHECK(s.beta(i, m) == std::sqrt(0.5));
                CHECK((*s.beta_sq_exact)(i, m) == Rational(1, 2));
            }
        CHECK(s.tau_pilots == 2);
    }
    SUBCASE("padding adds all-zero AP columns and changes nothing measurable") {
        std::mt19937_64 rng(4);
        auto g = random_rational_graph(rng, 5, 2);
        auto plain = mkp_to_pa(g);
        auto padded = mkp_to_pa(g, 7);
        CHECK(padded.m_aps == 12);
        CHECK(validate_system(padded).ok());
        for (int k = 0; k < 5; ++k)
            for (int m = 5; m < 12; ++m) CHECK(padded.beta(k, m) == 0.0);
        PilotAssignment a{{0, 1, 0, 1, 1}, 2};
        CHECK(contamination_objective_exact(padded, a) == contamination_objective_exact(plain, a));
    }
    SUBCASE("round trip reproduces the weights exactly") {
        std::mt19937_64 rng(12);
        for (int t = 0; t < 50; ++t) {
            const int n = 2 + static_cast<int>(rng() % 7);
            auto g = random_rational_graph(rng, n, 1 + static_cast<int>(rng() % std::min(n, 3)));
            CHECK(pa_to_mkp(mkp_to_pa(g), Arithmetic::Exact) == g);
            CHECK(pa_to_mkp(mkp_to_pa(g, 3), Arithmetic::Exact) == g);
        }
    }
}

TEST_CASE("coloring_to_mkp keeps the edge set with unit weights") {
    auto g = coloring_to_mkp(SimpleGraph{3, kTriangle}, 3);
    CHECK(g.k_parts() == 3);
    CHECK(g.edges().size() == 3);
    for (auto [i, j] : g.edges()) CHECK(g.weight(i, j) == 1);
    CHECK_THROWS_AS(coloring_to_mkp(SimpleGraph{3, {{1, 1}}}, 2), std::invalid_argument);
}

TEST_CASE("colouring criterion on small named graphs") {
    CHECK(brute_force_partition(unit_graph(3, 3, kTriangle)).value == 0);
    CHECK(brute_force_partition(unit_graph(3, 2, kTriangle)).value == 1);
    std::vector<std::pair<int, int>> c5;
    for (int i = 0; i < 5; ++i) c5.emplace_back(i, (i + 1) % 5);
    CHECK(brute_force_partition(unit_graph(5, 2, c5)).value == 1);
    CHECK(brute_force_partition(unit_graph(5, 3, c5)).value == 0);
    CHECK_FALSE(oracle::colourable(5, c5, 2));
    CHECK(oracle::colourable(5, c5, 3));
}

TEST_CASE("colouring criterion agrees with brute-force colouring on random graphs") {
    std::mt19937_64 rng(77);
    for (int t = 0; t < 60; ++t) {
        const int n = 2 + static_cast<int>(rng() % 6);
        std::vector<std::pair<int, int>> edges;
        for (int i = 0; i < n; ++i)
            for (int j = i + 1; j < n; ++j)
                if (rng() % 2) edges.emplace_back(i, j);
        for (int k = 2; k <= std::min(n, 4); ++k) {
            const bool zero = brute_force_partition(unit_graph(n, k, edges)).value == 0;
            CHECK(zero == oracle::colourable(n, edges, k));
        }
    }
}

TEST_CASE("verify_measure_equality") {
    SUBCASE("unit pair sharing a pilot") {
        auto s = fixtures::diagonal_system({{1, 1}, {1, 1}}, 1);
        auto r = verify_measure_equality(s, {{0, 0}, 1});
        CHECK(r.m_pa == 2.0);
        CHECK(r.m_mkp == 2.0);
        CHECK(r.pass());
    }
    SUBCASE("random systems and assignments pass") {
        std::mt19937_64 rng(2025);
        for (int t = 0; t < 200; ++t) {
            auto s = fixtures::random_system(rng, 2, 8, 20);
            auto r = verify_measure_equality(s, random_assignment(rng, s.k_users, s.tau_pilots));
            CHECK(r.float_pass);
            CHECK(r.exact_pass);
            CHECK(r.rel_diff <= kMeasureRelTol);
        }
    }
    SUBCASE("a corrupted weight is caught") {
        std::mt19937_64 rng(3);
        auto s = fixtures::random_system(rng, 4, 6, 12);
        auto a = random_assignment(rng, s.k_users, s.tau_pilots);
        // K > tau, so some pair shares a pilot.
        std::pair<int, int> shared{-1, -1};
        for (int i = 0; i < s.k_users && shared.first < 0; ++i)
            for (int j = i + 1; j < s.k_users; ++j)
                if (a.pilot_of[i] == a.pilot_of[j]) {
                    shared = {i, j};
                    break;
                }
        REQUIRE(shared.first >= 0);
        auto g = pa_to_mkp(s);
        g.set_weight(shared.first, shared.second, g.weight(shared.first, shared.second) * 3 + 1);
        auto check = verify_against_graph(s, g, a);
        CHECK_FALSE(check.pass());
        CHECK_FALSE(check.measure.exact_pass);
        CHECK(check.mismatched_edges == std::vector<std::pair<int, int>>{shared});
        CHECK(verify_against_graph(s, pa_to_mkp(s), a).pass());
    }
}

TEST_CASE("Graph to system direction: graph objective equals the PA objective of the built system exactly") {
    std::mt19937_64 rng(91);
    for (int t = 0; t < 100; ++t) {
        const int n = 2 + static_cast<int>(rng() % 7);
        const int k = 1 + static_cast<int>(rng() % std::min(n, 3));
        auto g = random_rational_graph(rng, n, k);
        auto s = mkp_to_pa(g);
        auto a = random_assignment(rng, n, k);
        Partition p = pa_solution_to_mkp(a);
        CHECK(mkp_objective(g, p) == contamination_objective_exact(s, mkp_solution_to_pa(p)));
    }
}
