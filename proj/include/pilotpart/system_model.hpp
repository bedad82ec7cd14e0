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
#include <optional>
#include <span>
#include <stdexcept>
#include <string>
#include <variant>
#include <vector>

#include "pilotpart/matrix.hpp"
#include "pilotpart/rational.hpp"

namespace pilotpart {

// Indices are zero-based in memory. File formats and CLI output are one-based.

/// A cell-free massive MIMO system: M single-antenna APs, K users, tau pilots,
/// the large-scale fading matrix, the per-user serving sets, and the radio
/// parameters that enter the uplink rate.
struct CfMmimoSystem {
    int m_aps = 0;
    int k_users = 0;
    int tau_pilots = 0;

    Matrix<double> beta;                   // K x M
    std::vector<std::vector<int>> serving_sets;  // A(k), AP indices
    Matrix<double> gamma;                  // K x M
    std::vector<double> eta;               // length K, in [0,1]
    double rho_u = 1.0;
    int tau_c = 2;

    /// Exact beta^2 values, when the system came out of a reduction that
    /// knows them symbolically (beta = sqrt(w/2)). Absent for measured or
    /// generated systems, where the exact square of each double is used.
    std::optional<Matrix<Rational>> beta_sq_exact;

    friend bool operator==(const CfMmimoSystem&, const CfMmimoSystem&) = default;
};

/// A map from users onto pilots. Feasible iff every pilot is used.
struct PilotAssignment {
    std::vector<int> pilot_of;
    int num_pilots = 0;

    int size() const { return static_cast<int>(pilot_of.size()); }
    friend bool operator==(const PilotAssignment&, const PilotAssignment&) = default;
};

class InfeasibleAssignment : public std::invalid_argument {
public:
    using std::invalid_argument::invalid_argument;
};

class InvalidSystem : public std::invalid_argument {
public:
    using std::invalid_argument::invalid_argument;
};

enum class ViolationKind {
    DimensionMismatch,
    IndexOutOfRange,
    EmptyServingSet,
    DuplicateServingIndex,
    ZeroServingCoefficient,
    NegativeCoefficient,
    NonFiniteValue,
    TooManyPilots,
    CoherenceTooShort,
    BadRadioParameter,
    ExactPayloadMismatch,
};

struct Violation {
    ViolationKind kind;
    std::string message;
    int user = -1;
    int ap = -1;
};

struct ValidationResult {
    std::vector<Violation> violations;

    bool ok() const { return violations.empty(); }
    bool has(ViolationKind kind) const;
    std::string summary() const;
};

/// Checks the system tuple for well-formedness. Never throws.
ValidationResult validate_system(const CfMmimoSystem& s);

/// Throws InvalidSystem carrying the summary when validation fails.
void require_valid(const CfMmimoSystem& s);

/// Returns true iff `a` has one pilot per user, labels within range, and
/// every pilot is used.
bool is_feasible(const CfMmimoSystem& s, const PilotAssignment& a);

/// Throws InfeasibleAssignment describing the first defect.
void require_feasible(const CfMmimoSystem& s, const PilotAssignment& a);

/// Label-independent feasibility: length n, labels in [0, num_pilots), surjective.
bool is_surjective(const std::vector<int>& labels, int num_labels);

struct TopN {
    int n = 1;
};
struct EnergyFraction {
    double theta = 0.95;
};
using ApSelectionRule = std::variant<TopN, EnergyFraction>;

enum class EtaPolicy { FullPower, Uniform };

struct GenerationConfig {
    double area_side_m = 1000.0;
    std::uint64_t seed = 0;
    double pathloss_exponent = 3.5;
    double shadowing_sigma_db = 8.0;
    double reference_loss_db = 30.0;  // PL0 at 1 m
    ApSelectionRule ap_selection_rule = EnergyFraction{0.95};
    double rho_u = 1e11;
    double rho_p = 1e11;
    int tau_c = 200;
    EtaPolicy eta_policy = EtaPolicy::FullPower;
};

/// Throws std::invalid_argument when the configuration is unusable.
void validate_config(const GenerationConfig& cfg);

/// Draws APs and users uniformly in the square, derives beta from a
/// single-slope log-distance path loss with log-normal shadowing, selects
/// serving APs, and fills gamma with compute_gamma_default. Pure in
/// (cfg, M, K, tau).
CfMmimoSystem generate_system(const GenerationConfig& cfg, int m_aps, int k_users, int tau_pilots);

/// gamma_km = tau*rho_p*beta^2 / (tau*rho_p*beta + 1).
Matrix<double> compute_gamma_default(const CfMmimoSystem& s, double rho_p, int tau);

/// Users other than k that share k's pilot, in increasing order.
std::vector<int> co_pilot_set(const PilotAssignment& a, int k);

/// Uplink achievable rate of user k in bits/s/Hz.
double uplink_rate(const CfMmimoSystem& s, const PilotAssignment& a, int k);

/// Rate of user k for any map of users to pilot labels in [0, tau), used or
/// not. uplink_rate is this plus the feasibility check.
double uplink_rate_for_map(const CfMmimoSystem& s, std::span<const int> pilot_of, int k);

/// Rates of all users; same values as calling uplink_rate for each k.
std::vector<double> uplink_rates(const CfMmimoSystem& s, const PilotAssignment& a);

double system_throughput(const CfMmimoSystem& s, const PilotAssignment& a);

/// beta^2 for every (k, m) as an exact rational: the symbolic payload when
/// present, otherwise the exact square of the stored double.
Matrix<Rational> exact_beta_squares(const CfMmimoSystem& s);

/// Applies a bijection on pilot labels: new label of pilot p is perm[p].
PilotAssignment relabel(const PilotAssignment& a, const std::vector<int>& perm);

} // namespace pilotpart
