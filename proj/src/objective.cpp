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

#include "pilotpart/objective.hpp"

#include <stdexcept>

namespace pilotpart {

namespace {

void check_pair(const CfMmimoSystem& s, int k, int other) {
    if (k < 0 || k >= s.k_users || other < 0 || other >= s.k_users)
        throw std::out_of_range("user index out of range");
    if (k == other) throw std::invalid_argument("pairwise interference needs two distinct users");
}

Rational one_sided_exact(const CfMmimoSystem& s, const Matrix<Rational>& sq, int k, int other) {
    Rational acc = 0;
    for (int m : s.serving_sets[k]) acc += sq(other, m) / sq(k, m);
    return acc;
}

} // namespace

double one_sided_interference(const CfMmimoSystem& s, int k, int other) {
    double acc = 0.0;
    if (s.beta_sq_exact) {
        const auto& sq = *s.beta_sq_exact;
        for (int m : s.serving_sets.at(k)) acc += to_double(sq(other, m)) / to_double(sq(k, m));
        return acc;
    }
    for (int m : s.serving_sets.at(k)) {
        const double ratio = s.beta(other, m) / s.beta(k, m);
        acc += ratio * ratio;
    }
    return acc;
}

double pairwise_interference(const CfMmimoSystem& s, int k, int other) {
    check_pair(s, k, other);
    return one_sided_interference(s, k, other) + one_sided_interference(s, other, k);
}

Rational pairwise_interference_exact(const CfMmimoSystem& s, int k, int other) {
    check_pair(s, k, other);
    const auto sq = exact_beta_squares(s);
    return one_sided_exact(s, sq, k, other) + one_sided_exact(s, sq, other, k);
}

Matrix<double> interference_matrix(const CfMmimoSystem& s) {
    Matrix<double> w(s.k_users, s.k_users, 0.0);
    for (int i = 0; i < s.k_users; ++i) {
        for (int j = i + 1; j < s.k_users; ++j) {
            const double v = one_sided_interference(s, i, j) + one_sided_interference(s, j, i);
            w(i, j) = v;
            w(j, i) = v;
        }
    }
    return w;
}

Matrix<Rational> interference_matrix_exact(const CfMmimoSystem& s) {
    const auto sq = exact_beta_squares(s);
    Matrix<Rational> w(s.k_users, s.k_users, Rational(0));
    for (int i = 0; i < s.k_users; ++i) {
        for (int j = i + 1; j < s.k_users; ++j) {
            Rational v = one_sided_exact(s, sq, i, j) + one_sided_exact(s, sq, j, i);
            w(i, j) = v;
            w(j, i) = v;
        }
    }
    return w;
}

double contamination_objective(const CfMmimoSystem& s, const PilotAssignment& a) {
    require_feasible(s, a);
    double total = 0.0;
    for (int i = 0; i < s.k_users; ++i)
        for (int j = i + 1; j < s.k_users; ++j)
            if (a.pilot_of[i] == a.pilot_of[j]) total += one_sided_interference(s, i, j) + one_sided_interference(s, j, i);
    return total;
}

Rational contamination_objective_exact(const CfMmimoSystem& s, const PilotAssignment& a) {
    require_feasible(s, a);
    const auto sq = exact_beta_squares(s);
    Rational total = 0;
    for (int i = 0; i < s.k_users; ++i)
        for (int j = i + 1; j < s.k_users; ++j)
            if (a.pilot_of[i] == a.pilot_of[j]) total += one_sided_exact(s, sq, i, j) + one_sided_exact(s, sq, j, i);
    return total;
}

double contamination_ordered_sum(const CfMmimoSystem& s, const PilotAssignment& a) {
    require_feasible(s, a);
    double total = 0.0;
    for (int k = 0; k < s.k_users; ++k) {
        for (int other : co_pilot_set(a, k)) {
            for (int m : s.serving_sets[k]) {
                if (s.beta_sq_exact) {
                    total += to_double((*s.beta_sq_exact)(other, m)) / to_double((*s.beta_sq_exact)(k, m));
                } else {
                    const double ratio = s.beta(other, m) / s.beta(k, m);
                    total += ratio * ratio;
                }
            }
        }
    }
    return total;
}

ContaminationReport contamination_report(const CfMmimoSystem& s, const PilotAssignment& a) {
    require_feasible(s, a);
    ContaminationReport r;
    r.per_user.assign(s.k_users, 0.0);
    for (int i = 0; i < s.k_users; ++i) {
        for (int j = i + 1; j < s.k_users; ++j) {
            if (a.pilot_of[i] != a.pilot_of[j]) continue;
            const double ij = one_sided_interference(s, i, j);
            const double ji = one_sided_interference(s, j, i);
            r.per_user[i] += ij;
            r.per_user[j] += ji;
            r.per_pair.push_back({i, j, ij + ji});
            r.total += ij + ji;
        }
    }
    return r;
}

} // namespace pilotpart
