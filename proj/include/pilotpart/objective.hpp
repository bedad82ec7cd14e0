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

#include <vector>

#include "pilotpart/matrix.hpp"
#include "pilotpart/rational.hpp"
#include "pilotpart/system_model.hpp"

namespace pilotpart {

struct PairWeight {
    int i = 0;
    int j = 0;  // i < j
    double weight = 0.0;
};

/// Breakdown of the pilot-contamination objective for one assignment.
struct ContaminationReport {
    double total = 0.0;
    std::vector<PairWeight> per_pair;  // co-pilot pairs only, sorted by (i, j)
    std::vector<double> per_user;      // one-sided contamination seen by each user
};

/// One-sided term: sum over m in A(k) of (beta_{other,m} / beta_{k,m})^2.
/// Systems carrying exact beta^2 values are evaluated from those.
double one_sided_interference(const CfMmimoSystem& s, int k, int other);

/// Symmetric interference weight between two distinct users.
/// Throws std::invalid_argument when k == other or an index is out of range.
double pairwise_interference(const CfMmimoSystem& s, int k, int other);

Rational pairwise_interference_exact(const CfMmimoSystem& s, int k, int other);

/// K x K matrix of pairwise_interference with a zero diagonal.
Matrix<double> interference_matrix(const CfMmimoSystem& s);
Matrix<Rational> interference_matrix_exact(const CfMmimoSystem& s);

/// Sum of pairwise_interference over unordered co-pilot pairs.
double contamination_objective(const CfMmimoSystem& s, const PilotAssignment& a);

Rational contamination_objective_exact(const CfMmimoSystem& s, const PilotAssignment& a);

/// The same objective written as an ordered sum: for each user k, each
/// co-pilot k', and each serving AP m of k, add (beta_{k'm}/beta_{km})^2.
double contamination_ordered_sum(const CfMmimoSystem& s, const PilotAssignment& a);

ContaminationReport contamination_report(const CfMmimoSystem& s, const PilotAssignment& a);

} // namespace pilotpart
