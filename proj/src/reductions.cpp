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

#include "pilotpart/reductions.hpp"

#include <algorithm>
#include <cmath>
#include <stdexcept>

#include "pilotpart/objective.hpp"

namespace pilotpart {

WeightedGraph::WeightedGraph(int n_vertices, int k_parts) : n_(n_vertices), k_(k_parts) {
    if (n_vertices < 1) throw std::invalid_argument("graph needs at least one vertex");
    if (k_parts < 1 || k_parts > n_vertices) throw std::invalid_argument("k_parts must lie in [1, n]");
    upper_.assign(static_cast<std::size_t>(n_) * (n_ - 1) / 2, Rational(0));
}

std::size_t WeightedGraph::slot(int i, int j) const {
    if (i < 0 || j < 0 || i >= n_ || j >= n_) throw std::out_of_range("vertex index out of range");
    if (i == j) throw std::invalid_argument("self-loops carry no weight");
    if (i > j) std::swap(i, j);
    // Row i of the strict upper triangle starts after i*(2n-i-1)/2 entries.
    return static_cast<std::size_t>(i) * (2 * n_ - i - 1) / 2 + (j - i - 1);
}

const Rational& WeightedGraph::weight(int i, int j) const { return upper_[slot(i, j)]; }

void WeightedGraph::set_weight(int i, int j, Rational w) {
    if (w < 0) throw std::invalid_argument("edge weights must be nonnegative");
    upper_[slot(i, j)] = std::move(w);
}

std::vector<std::pair<int, int>> WeightedGraph::edges() const {
    std::vector<std::pair<int, int>> out;
    for (int i = 0; i < n_; ++i)
        for (int j = i + 1; j < n_; ++j)
            if (weight(i, j) != 0) out.emplace_back(i, j);
    return out;
}

Matrix<double> WeightedGraph::dense_weights() const {
    Matrix<double> w(n_, n_, 0.0);
    for (int i = 0; i < n_; ++i)
        for (int j = i + 1; j < n_; ++j) w(i, j) = w(j, i) = to_double(weight(i, j));
    return w;
}

Matrix<Rational> WeightedGraph::dense_weights_exact() const {
    Matrix<Rational> w(n_, n_, Rational(0));
    for (int i = 0; i < n_; ++i)
        for (int j = i + 1; j < n_; ++j) w(i, j) = w(j, i) = weight(i, j);
    return w;
}

void require_valid_partition(const WeightedGraph& g, const Partition& p) {
    if (p.num_blocks != g.k_parts())
        throw std::invalid_argument("partition has " + std::to_string(p.num_blocks) + " blocks, graph asks for " +
                                    std::to_string(g.k_parts()));
    if (p.block_of.size() != static_cast<std::size_t>(g.n_vertices()))
        throw std::invalid_argument("partition does not cover every vertex");
    if (!is_surjective(p.block_of, p.num_blocks)) throw std::invalid_argument("partition has an empty block");
}

Rational mkp_objective(const WeightedGraph& g, const Partition& p) {
    require_valid_partition(g, p);
    Rational total = 0;
    for (int i = 0; i < g.n_vertices(); ++i)
        for (int j = i + 1; j < g.n_vertices(); ++j)
            if (p.block_of[i] == p.block_of[j]) total += g.weight(i, j);
    return total;
}

double mkp_objective_float(const WeightedGraph& g, const Partition& p) {
    require_valid_partition(g, p);
    double total = 0.0;
    for (int i = 0; i < g.n_vertices(); ++i)
        for (int j = i + 1; j < g.n_vertices(); ++j)
            if (p.block_of[i] == p.block_of[j]) total += to_double(g.weight(i, j));
    return total;
}

WeightedGraph pa_to_mkp(const CfMmimoSystem& s, Arithmetic mode) {
    require_valid(s);
    WeightedGraph g(s.k_users, s.tau_pilots);
    if (mode == Arithmetic::Exact) {
        const auto w = interference_matrix_exact(s);
        for (int i = 0; i < s.k_users; ++i)
            for (int j = i + 1; j < s.k_users; ++j) g.set_weight(i, j, w(i, j));
    } else {
        const auto w = interference_matrix(s);
        for (int i = 0; i < s.k_users; ++i)
            for (int j = i + 1; j < s.k_users; ++j) g.set_weight(i, j, shortest_decimal(w(i, j)));
    }
    return g;
}

PilotAssignment mkp_solution_to_pa(const Partition& p) {
    if (!is_surjective(p.block_of, p.num_blocks))
        throw InfeasibleAssignment("partition has an empty block; no surjective pilot assignment follows");
    return PilotAssignment{p.block_of, p.num_blocks};
}

Partition pa_solution_to_mkp(const PilotAssignment& a) {
    if (!is_surjective(a.pilot_of, a.num_pilots)) throw InfeasibleAssignment("assignment leaves a pilot unused");
    return Partition{a.pilot_of, a.num_pilots};
}

CfMmimoSystem mkp_to_pa(const WeightedGraph& g, int pad) {
    if (pad < 0) throw std::invalid_argument("pad must be nonnegative");
    const int n = g.n_vertices();
    CfMmimoSystem s;
    s.k_users = n;
    s.m_aps = n + pad;
    s.tau_pilots = g.k_parts();
    s.beta = Matrix<double>(n, s.m_aps, 0.0);
    Matrix<Rational> sq(n, s.m_aps, Rational(0));
    for (int i = 0; i < n; ++i) {
        s.beta(i, i) = 1.0;
        sq(i, i) = 1;
        for (int m = 0; m < n; ++m) {
            if (m == i) continue;
            Rational half = g.weight(i, m) / 2;
            s.beta(i, m) = std::sqrt(to_double(half));
            sq(i, m) = std::move(half);
        }
    }
    s.beta_sq_exact = std::move(sq);
    s.serving_sets.resize(n);
    for (int i = 0; i < n; ++i) s.serving_sets[i] = {i};

    // Radio parameters do not enter the contamination objective; these keep
    // the rate formula well defined.
    s.eta.assign(n, 1.0);
    s.rho_u = 1.0;
    s.tau_c = 2 * s.tau_pilots;
    s.gamma = compute_gamma_default(s, 1.0, s.tau_pilots);
    return s;
}

WeightedGraph coloring_to_mkp(const SimpleGraph& g, int k) {
    WeightedGraph out(g.n_vertices, k);
    for (auto [i, j] : g.edges) {
        if (i == j) throw std::invalid_argument("simple graphs have no self-loops");
        out.set_weight(i, j, Rational(1));
    }
    return out;
}

namespace {

MeasureReport compare(const CfMmimoSystem& s, const PilotAssignment& a, const WeightedGraph& g) {
    const Partition p = pa_solution_to_mkp(a);
    MeasureReport r;
    r.m_pa = contamination_objective(s, a);
    r.m_mkp = mkp_objective_float(g, p);
    r.abs_diff = std::abs(r.m_pa - r.m_mkp);
    const double scale = std::max(std::abs(r.m_pa), std::abs(r.m_mkp));
    r.rel_diff = scale > 0.0 ? r.abs_diff / scale : 0.0;
    r.float_pass = std::isfinite(r.m_pa) && std::isfinite(r.m_mkp) && r.rel_diff <= kMeasureRelTol;
    r.m_pa_exact = contamination_objective_exact(s, a);
    r.m_mkp_exact = mkp_objective(g, p);
    r.exact_pass = r.m_pa_exact == r.m_mkp_exact;
    return r;
}

} // namespace

MeasureReport verify_measure_equality(const CfMmimoSystem& s, const PilotAssignment& a) {
    require_feasible(s, a);
    return compare(s, a, pa_to_mkp(s, Arithmetic::Exact));
}

GraphCheck verify_against_graph(const CfMmimoSystem& s, const WeightedGraph& g, const PilotAssignment& a) {
    require_feasible(s, a);
    if (g.n_vertices() != s.k_users) throw std::invalid_argument("graph and system disagree on the number of users");
    GraphCheck out;
    out.k_parts_match = g.k_parts() == s.tau_pilots;
    const auto reference = pa_to_mkp(s, Arithmetic::Exact);
    for (int i = 0; i < s.k_users; ++i) {
        for (int j = i + 1; j < s.k_users; ++j) {
            const double want = to_double(reference.weight(i, j));
            const double got = to_double(g.weight(i, j));
            if (std::abs(want - got) > kMeasureRelTol * std::max(std::abs(want), std::abs(got)))
                out.mismatched_edges.emplace_back(i, j);
        }
    }
    if (out.k_parts_match) out.measure = compare(s, a, g);
    return out;
}

} // namespace pilotpart
