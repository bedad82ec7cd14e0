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

#include "pilotpart/solvers.hpp"

#include <algorithm>
#include <chrono>
#include <cmath>
#include <limits>
#include <numeric>
#include <random>

#include "pilotpart/objective.hpp"

namespace pilotpart {

std::string to_string(Certificate c) { return c == Certificate::Exact ? "exact" : "heuristic"; }

BudgetExceeded::BudgetExceeded(double required, std::uint64_t budget)
    : std::runtime_error("enumeration needs " + std::to_string(static_cast<long double>(required)) +
                         " assignments, budget is " + std::to_string(budget)),
      required_(required),
      budget_(budget) {}

double surjection_count(int n, int k) {
    if (n < 0 || k < 0) throw std::invalid_argument("counts must be nonnegative");
    if (k > n) return 0.0;
    using boost::multiprecision::mpz_int;
    // sum_j (-1)^j C(k, j) (k - j)^n
    mpz_int total = 0;
    mpz_int binom = 1;
    for (int j = 0; j <= k; ++j) {
        mpz_int term = boost::multiprecision::pow(mpz_int(k - j), static_cast<unsigned>(n)) * binom;
        total += (j % 2 == 0) ? term : mpz_int(-term);
        binom = binom * (k - j) / (j + 1);
    }
    return total.convert_to<double>();
}

namespace {

using Clock = std::chrono::steady_clock;

double seconds_since(Clock::time_point start) {
    return std::chrono::duration<double>(Clock::now() - start).count();
}

template <typename T>
bool improves(const T& candidate, const T& best) {
    if constexpr (std::is_floating_point_v<T>) {
        return candidate < best - 1e-12 * std::abs(best);
    } else {
        return candidate < best;
    }
}

/// Depth-first walk over all surjections {0..n-1} -> {0..k-1} in
/// lexicographic order, pruning prefixes that cannot cover every label.
/// Cost is accumulated incrementally from a symmetric pair-weight matrix.
template <typename T>
class SurjectionSearch {
public:
    SurjectionSearch(const Matrix<T>& w, int k) : w_(w), n_(static_cast<int>(w.rows())), k_(k) {
        labels_.assign(n_, 0);
        used_.assign(k_, 0);
    }

    void run() { descend(0, 0, T(0)); }

    const std::vector<int>& best() const { return best_labels_; }
    const T& best_value() const { return best_value_; }
    std::uint64_t visited() const { return visited_; }

private:
    void descend(int pos, int distinct, T cost) {
        if (pos == n_) {
            ++visited_;
            if (best_labels_.empty() || improves(cost, best_value_)) {
                best_value_ = cost;
                best_labels_ = labels_;
            }
            return;
        }
        const int remaining = n_ - pos;
        for (int label = 0; label < k_; ++label) {
            const bool fresh = used_[label] == 0;
            if (k_ - (distinct + (fresh ? 1 : 0)) > remaining - 1) continue;
            T added = T(0);
            for (int j = 0; j < pos; ++j)
                if (labels_[j] == label) added += w_(pos, j);
            labels_[pos] = label;
            ++used_[label];
            descend(pos + 1, distinct + (fresh ? 1 : 0), cost + added);
            --used_[label];
        }
    }

    const Matrix<T>& w_;
    int n_;
    int k_;
    std::vector<int> labels_;
    std::vector<int> used_;
    std::vector<int> best_labels_;
    T best_value_{};
    std::uint64_t visited_ = 0;
};

void check_budget(int n, int k, std::uint64_t budget) {
    const double required = surjection_count(n, k);
    if (required > static_cast<double>(budget)) throw BudgetExceeded(required, budget);
}

} // namespace

SolveReport evaluate(const CfMmimoSystem& s, const PilotAssignment& a, std::string solver_name) {
    SolveReport r;
    r.assignment = a;
    r.objective = contamination_objective(s, a);
    r.rates = uplink_rates(s, a);
    r.throughput = std::accumulate(r.rates.begin(), r.rates.end(), 0.0);
    r.solver_name = std::move(solver_name);
    return r;
}

SolveReport brute_force_exact(const CfMmimoSystem& s, std::uint64_t budget) {
    require_valid(s);
    check_budget(s.k_users, s.tau_pilots, budget);
    const auto start = Clock::now();
    const auto w = interference_matrix(s);
    SurjectionSearch<double> search(w, s.tau_pilots);
    search.run();
    SolveReport r = evaluate(s, PilotAssignment{search.best(), s.tau_pilots}, "brute");
    r.iterations = search.visited();
    r.certificate = Certificate::Exact;
    r.elapsed_seconds = seconds_since(start);
    return r;
}

ExactOptimum brute_force_exact_rational(const CfMmimoSystem& s, std::uint64_t budget) {
    require_valid(s);
    check_budget(s.k_users, s.tau_pilots, budget);
    const auto w = interference_matrix_exact(s);
    SurjectionSearch<Rational> search(w, s.tau_pilots);
    search.run();
    return {search.best(), search.best_value(), search.visited()};
}

ExactOptimum brute_force_partition(const WeightedGraph& g, std::uint64_t budget) {
    check_budget(g.n_vertices(), g.k_parts(), budget);
    const auto w = g.dense_weights_exact();
    SurjectionSearch<Rational> search(w, g.k_parts());
    search.run();
    return {search.best(), search.best_value(), search.visited()};
}

bool decide(const CfMmimoSystem& s, const Rational& q, std::uint64_t budget) {
    if (q < 0) throw std::invalid_argument("decision threshold must be nonnegative");
    return brute_force_exact_rational(s, budget).value <= q;
}

PilotAssignment greedy_feasible(const CfMmimoSystem& s) {
    if (s.tau_pilots < 1 || s.tau_pilots > s.k_users) throw std::invalid_argument("tau exceeds K: no feasible assignment");
    PilotAssignment a{std::vector<int>(s.k_users, s.tau_pilots - 1), s.tau_pilots};
    for (int k = 0; k < s.tau_pilots - 1; ++k) a.pilot_of[k] = k;
    return a;
}

PilotAssignment greedy_feasible(const CfMmimoSystem& s, std::uint64_t seed) {
    if (s.tau_pilots < 1 || s.tau_pilots > s.k_users) throw std::invalid_argument("tau exceeds K: no feasible assignment");
    std::mt19937_64 rng(seed);
    std::vector<int> users(s.k_users);
    std::iota(users.begin(), users.end(), 0);
    // Partial Fisher-Yates: the first tau-1 slots end up a uniform sample.
    for (int i = 0; i < s.tau_pilots - 1; ++i) {
        std::uniform_int_distribution<int> pick(i, s.k_users - 1);
        std::swap(users[i], users[pick(rng)]);
    }
    PilotAssignment a{std::vector<int>(s.k_users, s.tau_pilots - 1), s.tau_pilots};
    for (int i = 0; i < s.tau_pilots - 1; ++i) a.pilot_of[users[i]] = i;
    return a;
}

PilotAssignment random_feasible(const CfMmimoSystem& s, std::uint64_t seed) {
    if (s.tau_pilots < 1 || s.tau_pilots > s.k_users) throw std::invalid_argument("tau exceeds K: no feasible assignment");
    std::mt19937_64 rng(seed);
    std::uniform_int_distribution<int> pilot(0, s.tau_pilots - 1);
    PilotAssignment a{std::vector<int>(s.k_users), s.tau_pilots};
    do {
        for (auto& p : a.pilot_of) p = pilot(rng);
    } while (!is_surjective(a.pilot_of, a.num_pilots));
    return a;
}

SolveReport greedy_worst_user(const CfMmimoSystem& s, const PilotAssignment& init, int max_rounds) {
    require_valid(s);
    require_feasible(s, init);
    const auto start = Clock::now();

    PilotAssignment a = init;
    std::vector<int> group_size(s.tau_pilots, 0);
    for (int p : a.pilot_of) ++group_size[p];

    auto rates = uplink_rates(s, a);
    std::uint64_t accepted = 0;
    for (int round = 0; round < max_rounds; ++round) {
        const int worst = static_cast<int>(std::min_element(rates.begin(), rates.end()) - rates.begin());
        const double worst_rate = rates[worst];
        const int current = a.pilot_of[worst];
        if (group_size[current] == 1) break;  // moving it would empty its pilot

        int best_pilot = current;
        double best_rate = worst_rate;
        for (int p = 0; p < s.tau_pilots; ++p) {
            if (p == current) continue;
            a.pilot_of[worst] = p;
            const double r = uplink_rate(s, a, worst);
            if (r > best_rate) {
                best_rate = r;
                best_pilot = p;
            }
        }
        a.pilot_of[worst] = current;
        if (best_pilot == current) break;

        PilotAssignment candidate = a;
        candidate.pilot_of[worst] = best_pilot;
        auto candidate_rates = uplink_rates(s, candidate);
        const double new_min = *std::min_element(candidate_rates.begin(), candidate_rates.end());
        if (!(new_min > worst_rate)) break;

        --group_size[current];
        ++group_size[best_pilot];
        a = std::move(candidate);
        rates = std::move(candidate_rates);
        ++accepted;
    }

    SolveReport r = evaluate(s, a, "worst-user");
    r.iterations = accepted;
    r.elapsed_seconds = seconds_since(start);
    return r;
}

SolveReport local_search_move(const CfMmimoSystem& s, const PilotAssignment& init, int max_iters) {
    require_valid(s);
    require_feasible(s, init);
    const auto start = Clock::now();

    const auto w = interference_matrix(s);
    const int n = s.k_users;
    const int tau = s.tau_pilots;
    PilotAssignment a = init;

    // load(u, p): interference u would see on pilot p from everyone else there.
    Matrix<double> load(n, tau, 0.0);
    std::vector<int> group_size(tau, 0);
    for (int u = 0; u < n; ++u) {
        ++group_size[a.pilot_of[u]];
        for (int v = 0; v < n; ++v)
            if (v != u) load(u, a.pilot_of[v]) += w(u, v);
    }

    std::uint64_t moves = 0;
    for (int iter = 0; iter < max_iters; ++iter) {
        double best_delta = 0.0;
        int best_user = -1;
        int best_pilot = -1;
        for (int u = 0; u < n; ++u) {
            const int cur = a.pilot_of[u];
            if (group_size[cur] == 1) continue;
            const double here = load(u, cur);
            for (int p = 0; p < tau; ++p) {
                if (p == cur) continue;
                const double delta = load(u, p) - here;
                if (delta < best_delta) {
                    best_delta = delta;
                    best_user = u;
                    best_pilot = p;
                }
            }
        }
        // Deltas within rounding noise of zero are not improvements.
        if (best_user < 0 || best_delta >= -1e-12 * std::max(load(best_user, a.pilot_of[best_user]), 1e-300)) break;

        const int from = a.pilot_of[best_user];
        for (int v = 0; v < n; ++v) {
            if (v == best_user) continue;
            load(v, from) -= w(v, best_user);
            load(v, best_pilot) += w(v, best_user);
        }
        --group_size[from];
        ++group_size[best_pilot];
        a.pilot_of[best_user] = best_pilot;
        ++moves;
    }

    SolveReport r = evaluate(s, a, "local-search");
    r.iterations = moves;
    r.elapsed_seconds = seconds_since(start);
    return r;
}

} // namespace pilotpart
