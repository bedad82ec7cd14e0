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

#pragma once

#include <cstdint>
#include <stdexcept>
#include <string>

#include "pilotpart/rational.hpp"
#include "pilotpart/reductions.hpp"
#include "pilotpart/system_model.hpp"

namespace pilotpart {

enum class Certificate { Exact, Heuristic };

std::string to_string(Certificate c);

struct SolveReport {
    PilotAssignment assignment;
    double objective = 0.0;
    double throughput = 0.0;
    std::vector<double> rates;
    std::string solver_name;
    std::uint64_t iterations = 0;
    double elapsed_seconds = 0.0;
    Certificate certificate = Certificate::Heuristic;
};

/// Thrown instead of starting an enumeration that would exceed its budget.
class BudgetExceeded : public std::runtime_error {
public:
    BudgetExceeded(double required, std::uint64_t budget);
    double required() const { return required_; }
    std::uint64_t budget() const { return budget_; }

private:
    double required_;
    std::uint64_t budget_;
};

inline constexpr std::uint64_t kDefaultOracleBudget = 2'000'000;

/// Number of surjections from n items onto k labels, k! * S2(n, k).
/// Returned as a double so that oversize counts stay comparable to budgets.
double surjection_count(int n, int k);

/// Exhaustive minimiser of the contamination objective. Visits every
/// feasible assignment in lexicographic order and keeps the lexicographically
/// smallest optimum. `iterations` is the number of assignments visited.
SolveReport brute_force_exact(const CfMmimoSystem& s, std::uint64_t budget = kDefaultOracleBudget);

struct ExactOptimum {
    std::vector<int> labels;
    Rational value;
    std::uint64_t visited = 0;
};

/// Exact-arithmetic variant of brute_force_exact.
ExactOptimum brute_force_exact_rational(const CfMmimoSystem& s, std::uint64_t budget = kDefaultOracleBudget);

/// Exhaustive Min-k-Partition over the graph, in exact arithmetic.
ExactOptimum brute_force_partition(const WeightedGraph& g, std::uint64_t budget = kDefaultOracleBudget);

/// True iff some feasible assignment has objective at most q. Exact.
/// Throws std::invalid_argument for q < 0.
bool decide(const CfMmimoSystem& s, const Rational& q, std::uint64_t budget = kDefaultOracleBudget);

/// Users 0..tau-2 take pilots 0..tau-2, everybody else takes the last pilot.
PilotAssignment greedy_feasible(const CfMmimoSystem& s);

/// Randomised form: tau-1 distinct users drawn at random take the first
/// tau-1 pilots, the rest share the last one.
PilotAssignment greedy_feasible(const CfMmimoSystem& s, std::uint64_t seed);

/// Uniform over feasible assignments, by rejection from uniform maps.
PilotAssignment random_feasible(const CfMmimoSystem& s, std::uint64_t seed);

/// Repeatedly moves the worst-rate user to the pilot that maximises its own
/// rate, accepting only moves that keep every pilot in use and strictly raise
/// the minimum user rate.
SolveReport greedy_worst_user(const CfMmimoSystem& s, const PilotAssignment& init, int max_rounds = 1000);

/// Steepest-descent single-user moves on the contamination objective, over
/// the interference graph of the system.
SolveReport local_search_move(const CfMmimoSystem& s, const PilotAssignment& init, int max_iters = 100000);

/// Fills objective, throughput and rates for an assignment.
SolveReport evaluate(const CfMmimoSystem& s, const PilotAssignment& a, std::string solver_name);

} // namespace pilotpart
