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

#include <filesystem>
#include <iosfwd>
#include <stdexcept>
#include <string>
#include <string_view>

#include "pilotpart/objective.hpp"
#include "pilotpart/reductions.hpp"
#include "pilotpart/solvers.hpp"
#include "pilotpart/system_model.hpp"

namespace pilotpart {

inline constexpr std::string_view kInstanceSchema = "pa-instance/1";
inline constexpr std::string_view kGraphSchema = "mkp-graph/1";
inline constexpr std::string_view kSimpleGraphSchema = "simple-graph/1";
inline constexpr std::string_view kAssignmentSchema = "pa-assignment/1";
inline constexpr std::string_view kPartitionSchema = "mkp-partition/1";

inline constexpr std::string_view kReportHeader = "instance,solver,objective,throughput,elapsed_s,certificate";

class FormatError : public std::runtime_error {
public:
    FormatError(const std::string& message, int line = 0);
    int line() const { return line_; }

private:
    int line_;
};

/// Shortest decimal literal that parses back to the same double.
std::string format_double(double v);
/// Strict decimal parse; the whole token must be consumed.
double parse_double(std::string_view text);

// pa-instance/1
//   dims M K tau
//   rho_u <real>
//   tau_c <int>
//   eta <K reals>
//   serving <k> <m...>         one line per user, one-based
//   beta                       then K rows of M reals
//   gamma                      then K rows of M reals
//   beta_sq                    optional, K rows of M rationals
//   end
void write_instance(std::ostream& out, const CfMmimoSystem& s);
CfMmimoSystem read_instance(std::istream& in);

// mkp-graph/1
//   <n> <k>
//   <i> <j> <w>                one-based, w decimal or p/q; zero pairs omitted
void write_graph(std::ostream& out, const WeightedGraph& g);
WeightedGraph read_graph(std::istream& in);

// simple-graph/1
//   <n>
//   <i> <j>
void write_simple_graph(std::ostream& out, const SimpleGraph& g);
SimpleGraph read_simple_graph(std::istream& in);

// pa-assignment/1 and mkp-partition/1
//   <num labels>
//   <label_1> ... <label_n>    one-based
void write_assignment(std::ostream& out, const PilotAssignment& a);
PilotAssignment read_assignment(std::istream& in);
void write_partition(std::ostream& out, const Partition& p);
Partition read_partition(std::istream& in);

/// First schema line of a file, or empty when unreadable.
std::string peek_schema(const std::filesystem::path& path);

CfMmimoSystem load_instance(const std::filesystem::path& path);
WeightedGraph load_graph(const std::filesystem::path& path);
SimpleGraph load_simple_graph(const std::filesystem::path& path);
PilotAssignment load_assignment(const std::filesystem::path& path);
Partition load_partition(const std::filesystem::path& path);

void save_instance(const std::filesystem::path& path, const CfMmimoSystem& s);
void save_graph(const std::filesystem::path& path, const WeightedGraph& g);
void save_simple_graph(const std::filesystem::path& path, const SimpleGraph& g);
void save_assignment(const std::filesystem::path& path, const PilotAssignment& a);
void save_partition(const std::filesystem::path& path, const Partition& p);

// CSV reports.
void write_report_header(std::ostream& out);
void write_report_row(std::ostream& out, std::string_view instance, const SolveReport& r);
/// user,pilot,rate (one-based user and pilot)
void write_rates_csv(std::ostream& out, const SolveReport& r);
/// pair_i,pair_j,weight with a trailing `total,,<value>` row
void write_contamination_csv(std::ostream& out, const ContaminationReport& c);

} // namespace pilotpart
