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

// Independent reference computations for the tests. Nothing here calls into
// the library's objective, reduction, or solver code.

#include <cmath>
#include <cstdint>
#include <functional>
#include <limits>
#include <utility>
#include <vector>

namespace oracle {

/// Calls f(labels) for every map {0..n-1} -> {0..k-1}, surjective or not,
/// in lexicographic order.
inline void for_each_map(int n, int k, const std::function<void(const std::vector<int>&)>& f) {
    std::vector<int> labels(n, 0);
    for (;;) {
        f(labels);
        int pos = n - 1;
        while (pos >= 0 && labels[pos] == k - 1) labels[pos--] = 0;
        if (pos < 0) return;
        ++labels[pos];
    }
}

inline bool surjective(const std::vector<int>& labels, int k) {
    std::vector<bool> seen(k, false);
    for (int l : labels) seen[l] = true;
    for (bool b : seen)
        if (!b) return false;
    return true;
}

/// Stirling numbers of the second kind by the standard recurrence.
inline double stirling2(int n, int k) {
    std::vector<std::vector<double>> s(n + 1, std::vector<double>(k + 1, 0.0));
    s[0][0] = 1.0;
    for (int i = 1; i <= n; ++i)
        for (int j = 1; j <= std::min(i, k); ++j) s[i][j] = j * s[i - 1][j] + s[i - 1][j - 1];
    return s[n][k];
}

inline double factorial(int n) {
    double f = 1.0;
    for (int i = 2; i <= n; ++i) f *= i;
    return f;
}

/// Ordered-sum contamination straight from the definition: for each user k,
/// each other user on the same pilot, each AP serving k.
inline double ordered_contamination(const std::vector<std::vector<double>>& beta,
                                    const std::vector<std::vector<int>>& serving, const std::vector<int>& pilot) {
    double total = 0.0;
    const int n = static_cast<int>(beta.size());
    for (int k = 0; k < n; ++k)
        for (int j = 0; j < n; ++j)
            if (j != k && pilot[j] == pilot[k])
                for (int m : serving[k]) total += (beta[j][m] / beta[k][m]) * (beta[j][m] / beta[k][m]);
    return total;
}

/// Minimum of the ordered-sum contamination over all surjective maps.
inline double min_contamination(const std::vector<std::vector<double>>& beta, const std::vector<std::vector<int>>& serving,
                                int tau) {
    double best = std::numeric_limits<double>::infinity();
    for_each_map(static_cast<int>(beta.size()), tau, [&](const std::vector<int>& l) {
        if (surjective(l, tau)) best = std::min(best, ordered_contamination(beta, serving, l));
    });
    return best;
}

/// Does the graph admit a proper colouring with k colours? Plain enumeration.
inline bool colourable(int n, const std::vector<std::pair<int, int>>& edges, int k) {
    bool found = false;
    for_each_map(n, k, [&](const std::vector<int>& c) {
        if (found) return;
        for (auto [i, j] : edges)
            if (c[i] == c[j]) return;
        found = true;
    });
    return found;
}

/// Uplink rate computed term by term for a system given as plain arrays.
struct RadioSystem {
    std::vector<std::vector<double>> beta, gamma;
    std::vector<std::vector<int>> serving;
    std::vector<double> eta;
    double rho_u = 1.0;
    int tau = 1;
    int tau_c = 2;
};

inline double rate(const RadioSystem& s, const std::vector<int>& pilot, int k) {
    double gsum = 0.0;
    for (int m : s.serving[k]) gsum += s.gamma[k][m];
    const double num = s.rho_u * s.eta[k] * gsum * gsum;
    double coh = 0.0, noncoh = 0.0;
    const int n = static_cast<int>(s.beta.size());
    for (int j = 0; j < n; ++j) {
        if (j != k && pilot[j] == pilot[k]) {
            double in = 0.0;
            for (int m : s.serving[k]) in += s.gamma[k][m] * s.beta[j][m] / s.beta[k][m];
            coh += s.rho_u * s.eta[j] * in * in;
        }
        double in2 = 0.0;
        for (int m : s.serving[k]) in2 += s.gamma[k][m] * s.beta[j][m];
        noncoh += s.rho_u * s.eta[j] * in2;
    }
    return (1.0 - static_cast<double>(s.tau) / s.tau_c) / 2.0 * std::log2(1.0 + num / (coh + noncoh + gsum));
}

} // namespace oracle
