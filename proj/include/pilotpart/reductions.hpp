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

#include <string>
#include <utility>
#include <vector>

#include "pilotpart/rational.hpp"
#include "pilotpart/system_model.hpp"

namespace pilotpart {

/// Undirected graph with nonnegative rational edge weights and a target
/// number of parts. Pairs without an explicit weight weigh zero.
class WeightedGraph {
public:
    WeightedGraph() = default;
    WeightedGraph(int n_vertices, int k_parts);

    int n_vertices() const { return n_; }
    int k_parts() const { return k_; }

    const Rational& weight(int i, int j) const;
    void set_weight(int i, int j, Rational w);

    /// Pairs (i < j) carrying a nonzero weight.
    std::vector<std::pair<int, int>> edges() const;

    Matrix<double> dense_weights() const;
    Matrix<Rational> dense_weights_exact() const;

    friend bool operator==(const WeightedGraph&, const WeightedGraph&) = default;

private:
    std::size_t slot(int i, int j) const;

    int n_ = 0;
    int k_ = 0;
    std::vector<Rational> upper_;  // packed strict upper triangle
};

/// A split of vertices into k nonempty blocks.
struct Partition {
    std::vector<int> block_of;
    int num_blocks = 0;

    friend bool operator==(const Partition&, const Partition&) = default;
};

/// Simple undirected graph, input to the colouring reduction.
struct SimpleGraph {
    int n_vertices = 0;
    std::vector<std::pair<int, int>> edges;
};

/// Throws std::invalid_argument for a malformed or block-deficient partition.
void require_valid_partition(const WeightedGraph& g, const Partition& p);

/// Total weight of pairs that land in the same block.
Rational mkp_objective(const WeightedGraph& g, const Partition& p);
double mkp_objective_float(const WeightedGraph& g, const Partition& p);

/// Complete graph on the users, edge weight = pairwise interference,
/// k_parts = tau. Float mode stores each double weight as its shortest
/// round-tripping decimal; exact mode computes weights from exact beta squares.
WeightedGraph pa_to_mkp(const CfMmimoSystem& s, Arithmetic mode = Arithmetic::Exact);

/// Block labels become pilot labels.
PilotAssignment mkp_solution_to_pa(const Partition& p);

/// One user per vertex, each served by its own AP, beta_ii = 1 and
/// beta_im = sqrt(w(i,m)/2) for other users' APs; `pad` extra APs with
/// all-zero columns. beta^2 is carried exactly in beta_sq_exact.
CfMmimoSystem mkp_to_pa(const WeightedGraph& g, int pad = 0);

/// Pilot labels become block labels.
Partition pa_solution_to_mkp(const PilotAssignment& a);

/// Same vertices and edges with unit weights and k_parts = k.
WeightedGraph coloring_to_mkp(const SimpleGraph& g, int k);

struct MeasureReport {
    double m_pa = 0.0;
    double m_mkp = 0.0;
    double abs_diff = 0.0;
    double rel_diff = 0.0;
    bool float_pass = false;

    Rational m_pa_exact;
    Rational m_mkp_exact;
    bool exact_pass = false;

    bool pass() const { return float_pass && exact_pass; }
};

inline constexpr double kMeasureRelTol = 1e-9;

/// Evaluates the PA objective of (s, a) and the Min-k-Partition objective of
/// (pa_to_mkp(s), pa_solution_to_mkp(a)) in float and exact arithmetic.
MeasureReport verify_measure_equality(const CfMmimoSystem& s, const PilotAssignment& a);

/// Same comparison against a caller-supplied graph (e.g. one read from
/// disk). `mismatched_edges` lists pairs whose weight differs from the
/// recomputed reduction.
struct GraphCheck {
    MeasureReport measure;
    std::vector<std::pair<int, int>> mismatched_edges;
    bool k_parts_match = true;
    /// Exact agreement is reported in `measure` but only required when the
    /// supplied graph was written in exact mode.
    bool pass() const { return measure.float_pass && mismatched_edges.empty() && k_parts_match; }
};
GraphCheck verify_against_graph(const CfMmimoSystem& s, const WeightedGraph& g, const PilotAssignment& a);

} // namespace pilotpart
