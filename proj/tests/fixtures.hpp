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

#include <random>
#include <vector>

#include "oracles.hpp"
#include "pilotpart/system_model.hpp"

namespace fixtures {

/// K users, K APs, A(k) = {k}, explicit beta, gamma from the default formula
/// with tau*rho_p = 1, eta = 1, rho_u = 1, tau_c = 10.
inline pilotpart::CfMmimoSystem diagonal_system(const std::vector<std::vector<double>>& beta, int tau) {
    pilotpart::CfMmimoSystem s;
    const int k = static_cast<int>(beta.size());
    s.k_users = k;
    s.m_aps = static_cast<int>(beta[0].size());
    s.tau_pilots = tau;
    s.beta = pilotpart::Matrix<double>(k, s.m_aps);
    for (int i = 0; i < k; ++i)
        for (int m = 0; m < s.m_aps; ++m) s.beta(i, m) = beta[i][m];
    s.serving_sets.resize(k);
    for (int i = 0; i < k; ++i) s.serving_sets[i] = {i};
    s.eta.assign(k, 1.0);
    s.rho_u = 1.0;
    s.tau_c = 10;
    s.gamma = pilotpart::compute_gamma_default(s, 1.0 / tau, tau);
    return s;
}

inline oracle::RadioSystem as_radio(const pilotpart::CfMmimoSystem& s) {
    oracle::RadioSystem r;
    r.beta.assign(s.k_users, std::vector<double>(s.m_aps));
    r.gamma = r.beta;
    for (int k = 0; k < s.k_users; ++k)
        for (int m = 0; m < s.m_aps; ++m) {
            r.beta[k][m] = s.beta(k, m);
            r.gamma[k][m] = s.gamma(k, m);
        }
    r.serving = s.serving_sets;
    r.eta = s.eta;
    r.rho_u = s.rho_u;
    r.tau = s.tau_pilots;
    r.tau_c = s.tau_c;
    return r;
}

inline std::vector<std::vector<double>> beta_rows(const pilotpart::CfMmimoSystem& s) { return as_radio(s).beta; }

/// Seeded random generated system with K in [kmin, kmax], tau in {2,3}, M in [1, mmax].
inline pilotpart::CfMmimoSystem random_system(std::mt19937_64& rng, int kmin, int kmax, int mmax) {
    const int k = std::uniform_int_distribution<int>(kmin, kmax)(rng);
    const int tau = std::min(k, std::uniform_int_distribution<int>(2, 3)(rng));
    const int m = std::uniform_int_distribution<int>(1, mmax)(rng);
    pilotpart::GenerationConfig cfg;
    cfg.seed = rng();
    if (rng() % 2) cfg.ap_selection_rule = pilotpart::TopN{static_cast<int>(1 + rng() % 4)};
    return pilotpart::generate_system(cfg, m, k, tau);
}

} // namespace fixtures
