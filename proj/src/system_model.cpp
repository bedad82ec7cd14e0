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

#include "pilotpart/system_model.hpp"

#include <algorithm>
#include <cmath>
#include <numeric>
#include <random>
#include <sstream>

namespace pilotpart {

bool ValidationResult::has(ViolationKind kind) const {
    return std::any_of(violations.begin(), violations.end(), [&](const Violation& v) { return v.kind == kind; });
}

std::string ValidationResult::summary() const {
    if (ok()) return "ok";
    std::ostringstream os;
    for (std::size_t i = 0; i < violations.size(); ++i) {
        if (i) os << "; ";
        os << violations[i].message;
    }
    return os.str();
}

namespace {

std::string at(int k, int m) {
    return "(user " + std::to_string(k + 1) + ", AP " + std::to_string(m + 1) + ")";
}

void check_matrix(ValidationResult& r, const Matrix<double>& mat, const char* name, int k_users, int m_aps) {
    if (mat.rows() != static_cast<std::size_t>(k_users) || mat.cols() != static_cast<std::size_t>(m_aps)) {
        r.violations.push_back({ViolationKind::DimensionMismatch,
                                std::string(name) + " is " + std::to_string(mat.rows()) + "x" +
                                    std::to_string(mat.cols()) + ", expected " + std::to_string(k_users) + "x" +
                                    std::to_string(m_aps)});
        return;
    }
    for (int k = 0; k < k_users; ++k) {
        for (int m = 0; m < m_aps; ++m) {
            double v = mat(k, m);
            if (!std::isfinite(v)) {
                r.violations.push_back({ViolationKind::NonFiniteValue, std::string(name) + " not finite at " + at(k, m), k, m});
            } else if (v < 0.0) {
                r.violations.push_back({ViolationKind::NegativeCoefficient, std::string(name) + " negative at " + at(k, m), k, m});
            }
        }
    }
}

} // namespace

ValidationResult validate_system(const CfMmimoSystem& s) {
    ValidationResult r;
    if (s.m_aps <= 0 || s.k_users <= 0 || s.tau_pilots <= 0) {
        r.violations.push_back({ViolationKind::DimensionMismatch, "M, K and tau must be positive"});
        return r;
    }
    if (s.tau_pilots > s.k_users)
        r.violations.push_back({ViolationKind::TooManyPilots, "no surjective assignment possible: tau exceeds K"});
    if (s.tau_c <= s.tau_pilots)
        r.violations.push_back({ViolationKind::CoherenceTooShort, "coherence interval tau_c must exceed tau"});
    if (!(s.rho_u > 0.0) || !std::isfinite(s.rho_u))
        r.violations.push_back({ViolationKind::BadRadioParameter, "rho_u must be positive and finite"});

    if (s.eta.size() != static_cast<std::size_t>(s.k_users)) {
        r.violations.push_back({ViolationKind::DimensionMismatch, "eta has wrong length"});
    } else {
        for (int k = 0; k < s.k_users; ++k) {
            if (!(s.eta[k] >= 0.0 && s.eta[k] <= 1.0))
                r.violations.push_back({ViolationKind::BadRadioParameter,
                                        "eta outside [0,1] for user " + std::to_string(k + 1), k});
        }
    }

    const std::size_t before_beta = r.violations.size();
    check_matrix(r, s.beta, "beta", s.k_users, s.m_aps);
    const bool beta_shape_ok = !std::any_of(r.violations.begin() + before_beta, r.violations.end(), [](const Violation& v) {
        return v.kind == ViolationKind::DimensionMismatch;
    });
    check_matrix(r, s.gamma, "gamma", s.k_users, s.m_aps);

    if (s.serving_sets.size() != static_cast<std::size_t>(s.k_users)) {
        r.violations.push_back({ViolationKind::DimensionMismatch, "serving sets do not match K"});
    } else {
        for (int k = 0; k < s.k_users; ++k) {
            const auto& set = s.serving_sets[k];
            if (set.empty()) {
                r.violations.push_back({ViolationKind::EmptyServingSet,
                                        "empty serving set for user " + std::to_string(k + 1), k});
                continue;
            }
            std::vector<int> sorted(set);
            std::sort(sorted.begin(), sorted.end());
            if (std::adjacent_find(sorted.begin(), sorted.end()) != sorted.end())
                r.violations.push_back({ViolationKind::DuplicateServingIndex,
                                        "duplicate AP in serving set of user " + std::to_string(k + 1), k});
            for (int m : set) {
                if (m < 0 || m >= s.m_aps) {
                    r.violations.push_back({ViolationKind::IndexOutOfRange,
                                            "serving AP out of range for user " + std::to_string(k + 1), k, m});
                } else if (beta_shape_ok && !(s.beta(k, m) > 0.0)) {
                    r.violations.push_back({ViolationKind::ZeroServingCoefficient,
                                            "zero coefficient on serving link " + at(k, m), k, m});
                }
            }
        }
    }

    if (s.beta_sq_exact && beta_shape_ok) {
        const auto& sq = *s.beta_sq_exact;
        if (sq.rows() != s.beta.rows() || sq.cols() != s.beta.cols()) {
            r.violations.push_back({ViolationKind::DimensionMismatch, "beta_sq payload has wrong shape"});
        } else {
            for (int k = 0; k < s.k_users; ++k) {
                for (int m = 0; m < s.m_aps; ++m) {
                    if (sq(k, m) < 0) {
                        r.violations.push_back({ViolationKind::ExactPayloadMismatch, "beta_sq negative at " + at(k, m), k, m});
                        continue;
                    }
                    const double b = s.beta(k, m);
                    if (!std::isfinite(b)) continue;
                    const double expected = std::sqrt(to_double(sq(k, m)));
                    if (std::abs(expected - b) > 1e-12 * std::max(1.0, std::abs(expected)))
                        r.violations.push_back({ViolationKind::ExactPayloadMismatch,
                                                "beta disagrees with exact beta_sq at " + at(k, m), k, m});
                }
            }
        }
    }
    return r;
}

void require_valid(const CfMmimoSystem& s) {
    auto r = validate_system(s);
    if (!r.ok()) throw InvalidSystem("invalid system: " + r.summary());
}

bool is_surjective(const std::vector<int>& labels, int num_labels) {
    if (num_labels <= 0 || labels.size() < static_cast<std::size_t>(num_labels)) return false;
    std::vector<char> used(num_labels, 0);
    int distinct = 0;
    for (int l : labels) {
        if (l < 0 || l >= num_labels) return false;
        if (!used[l]) {
            used[l] = 1;
            ++distinct;
        }
    }
    return distinct == num_labels;
}

bool is_feasible(const CfMmimoSystem& s, const PilotAssignment& a) {
    return a.num_pilots == s.tau_pilots && a.size() == s.k_users && is_surjective(a.pilot_of, a.num_pilots);
}

void require_feasible(const CfMmimoSystem& s, const PilotAssignment& a) {
    if (a.num_pilots != s.tau_pilots)
        throw InfeasibleAssignment("assignment uses " + std::to_string(a.num_pilots) + " pilots, system has " +
                                   std::to_string(s.tau_pilots));
    if (a.size() != s.k_users)
        throw InfeasibleAssignment("assignment covers " + std::to_string(a.size()) + " users, system has " +
                                   std::to_string(s.k_users));
    for (int k = 0; k < a.size(); ++k)
        if (a.pilot_of[k] < 0 || a.pilot_of[k] >= a.num_pilots)
            throw InfeasibleAssignment("pilot label out of range for user " + std::to_string(k + 1));
    if (!is_surjective(a.pilot_of, a.num_pilots)) throw InfeasibleAssignment("assignment leaves a pilot unused");
}

void validate_config(const GenerationConfig& cfg) {
    if (!(cfg.area_side_m > 0.0)) throw std::invalid_argument("area side must be positive");
    if (!(cfg.shadowing_sigma_db >= 0.0)) throw std::invalid_argument("shadowing sigma must be nonnegative");
    if (!std::isfinite(cfg.pathloss_exponent) || cfg.pathloss_exponent < 0.0)
        throw std::invalid_argument("path-loss exponent must be nonnegative");
    if (!(cfg.rho_u > 0.0) || !(cfg.rho_p > 0.0)) throw std::invalid_argument("SNRs must be positive");
    if (const auto* top = std::get_if<TopN>(&cfg.ap_selection_rule); top && top->n < 1)
        throw std::invalid_argument("top_n requires n >= 1");
    if (const auto* ef = std::get_if<EnergyFraction>(&cfg.ap_selection_rule);
        ef && !(ef->theta > 0.0 && ef->theta <= 1.0))
        throw std::invalid_argument("energy fraction must lie in (0, 1]");
}

namespace {

std::vector<int> select_aps(std::span<const double> gains, const ApSelectionRule& rule) {
    std::vector<int> order(gains.size());
    std::iota(order.begin(), order.end(), 0);
    std::stable_sort(order.begin(), order.end(), [&](int a, int b) { return gains[a] > gains[b]; });

    std::size_t take = 0;
    if (const auto* top = std::get_if<TopN>(&rule)) {
        take = std::min<std::size_t>(static_cast<std::size_t>(top->n), order.size());
    } else {
        const double theta = std::get<EnergyFraction>(rule).theta;
        const double total = std::accumulate(gains.begin(), gains.end(), 0.0);
        double acc = 0.0;
        while (take < order.size()) {
            acc += gains[order[take]];
            ++take;
            if (acc >= theta * total) break;
        }
    }
    std::vector<int> chosen(order.begin(), order.begin() + static_cast<std::ptrdiff_t>(std::max<std::size_t>(take, 1)));
    std::sort(chosen.begin(), chosen.end());
    return chosen;
}

} // namespace

CfMmimoSystem generate_system(const GenerationConfig& cfg, int m_aps, int k_users, int tau_pilots) {
    validate_config(cfg);
    if (m_aps < 1 || k_users < 1 || tau_pilots < 1) throw std::invalid_argument("M, K and tau must be positive");
    if (tau_pilots > k_users) throw std::invalid_argument("tau exceeds K: no feasible pilot assignment");
    if (cfg.tau_c <= tau_pilots) throw std::invalid_argument("tau_c must exceed tau");

    std::mt19937_64 rng(cfg.seed);
    std::uniform_real_distribution<double> coord(0.0, cfg.area_side_m);
    std::normal_distribution<double> shadow(0.0, cfg.shadowing_sigma_db);

    struct Point {
        double x, y;
    };
    std::vector<Point> aps(m_aps), users(k_users);
    for (auto& p : aps) p = {coord(rng), coord(rng)};
    for (auto& p : users) p = {coord(rng), coord(rng)};

    CfMmimoSystem s;
    s.m_aps = m_aps;
    s.k_users = k_users;
    s.tau_pilots = tau_pilots;
    s.rho_u = cfg.rho_u;
    s.tau_c = cfg.tau_c;
    s.beta = Matrix<double>(k_users, m_aps);

    constexpr double d0 = 1.0;
    for (int k = 0; k < k_users; ++k) {
        for (int m = 0; m < m_aps; ++m) {
            const double d = std::max(std::hypot(users[k].x - aps[m].x, users[k].y - aps[m].y), d0);
            const double x_sigma = cfg.shadowing_sigma_db > 0.0 ? shadow(rng) : 0.0;
            const double db = -cfg.reference_loss_db - 10.0 * cfg.pathloss_exponent * std::log10(d / d0) + x_sigma;
            s.beta(k, m) = std::pow(10.0, db / 10.0);
        }
    }

    s.serving_sets.resize(k_users);
    for (int k = 0; k < k_users; ++k) s.serving_sets[k] = select_aps(s.beta.row(k), cfg.ap_selection_rule);

    s.eta.assign(k_users, 1.0);
    if (cfg.eta_policy == EtaPolicy::Uniform) {
        // (0, 1]: a zero power coefficient would silence the user entirely.
        std::uniform_real_distribution<double> u(0.0, 1.0);
        for (auto& e : s.eta) e = 1.0 - u(rng);
    }

    s.gamma = compute_gamma_default(s, cfg.rho_p, tau_pilots);
    return s;
}

Matrix<double> compute_gamma_default(const CfMmimoSystem& s, double rho_p, int tau) {
    Matrix<double> g(s.beta.rows(), s.beta.cols());
    const double scale = static_cast<double>(tau) * rho_p;
    for (std::size_t k = 0; k < g.rows(); ++k) {
        for (std::size_t m = 0; m < g.cols(); ++m) {
            const double b = s.beta(k, m);
            g(k, m) = b > 0.0 ? scale * b * b / (scale * b + 1.0) : 0.0;
        }
    }
    return g;
}

std::vector<int> co_pilot_set(const PilotAssignment& a, int k) {
    if (k < 0 || k >= a.size()) throw std::out_of_range("user index out of range");
    std::vector<int> out;
    for (int j = 0; j < a.size(); ++j)
        if (j != k && a.pilot_of[j] == a.pilot_of[k]) out.push_back(j);
    return out;
}

namespace {

double rate_unchecked(const CfMmimoSystem& s, std::span<const int> pilot_of, int k) {
    const auto& serving = s.serving_sets[k];
    double gamma_sum = 0.0;
    for (int m : serving) gamma_sum += s.gamma(k, m);

    const double signal = s.rho_u * s.eta[k] * gamma_sum * gamma_sum;

    double coherent = 0.0;
    for (int j = 0; j < s.k_users; ++j) {
        if (j == k || pilot_of[j] != pilot_of[k]) continue;
        double inner = 0.0;
        for (int m : serving) inner += s.gamma(k, m) * s.beta(j, m) / s.beta(k, m);
        coherent += s.eta[j] * inner * inner;
    }
    coherent *= s.rho_u;

    // Non-coherent interference runs over every user, k included.
    double non_coherent = 0.0;
    for (int j = 0; j < s.k_users; ++j) {
        double inner = 0.0;
        for (int m : serving) inner += s.gamma(k, m) * s.beta(j, m);
        non_coherent += s.eta[j] * inner;
    }
    non_coherent *= s.rho_u;

    const double denominator = coherent + non_coherent + gamma_sum;
    const double sinr = denominator > 0.0 ? signal / denominator : 0.0;
    const double prelog = (1.0 - static_cast<double>(s.tau_pilots) / s.tau_c) / 2.0;
    return prelog * std::log2(1.0 + sinr);
}

} // namespace

double uplink_rate(const CfMmimoSystem& s, const PilotAssignment& a, int k) {
    require_feasible(s, a);
    if (k < 0 || k >= s.k_users) throw std::out_of_range("user index out of range");
    return rate_unchecked(s, a.pilot_of, k);
}

double uplink_rate_for_map(const CfMmimoSystem& s, std::span<const int> pilot_of, int k) {
    if (pilot_of.size() != static_cast<std::size_t>(s.k_users)) throw std::invalid_argument("pilot map has wrong length");
    for (int p : pilot_of)
        if (p < 0 || p >= s.tau_pilots) throw std::invalid_argument("pilot label out of range");
    if (k < 0 || k >= s.k_users) throw std::out_of_range("user index out of range");
    return rate_unchecked(s, pilot_of, k);
}

std::vector<double> uplink_rates(const CfMmimoSystem& s, const PilotAssignment& a) {
    require_feasible(s, a);
    std::vector<double> out(s.k_users);
    for (int k = 0; k < s.k_users; ++k) out[k] = rate_unchecked(s, a.pilot_of, k);
    return out;
}

double system_throughput(const CfMmimoSystem& s, const PilotAssignment& a) {
    auto rates = uplink_rates(s, a);
    return std::accumulate(rates.begin(), rates.end(), 0.0);
}

Matrix<Rational> exact_beta_squares(const CfMmimoSystem& s) {
    if (s.beta_sq_exact) return *s.beta_sq_exact;
    Matrix<Rational> out(s.beta.rows(), s.beta.cols());
    for (std::size_t k = 0; k < out.rows(); ++k) {
        for (std::size_t m = 0; m < out.cols(); ++m) {
            Rational b = exact_from_double(s.beta(k, m));
            out(k, m) = b * b;
        }
    }
    return out;
}

PilotAssignment relabel(const PilotAssignment& a, const std::vector<int>& perm) {
    if (perm.size() != static_cast<std::size_t>(a.num_pilots) || !is_surjective(perm, a.num_pilots))
        throw std::invalid_argument("relabelling must be a permutation of the pilots");
    PilotAssignment out = a;
    for (auto& p : out.pilot_of) p = perm.at(p);
    return out;
}

} // namespace pilotpart
