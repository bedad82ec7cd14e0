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

#include "pilotpart/cli.hpp"

#include <algorithm>
#include <chrono>
#include <cmath>
#include <fstream>
#include <limits>
#include <mutex>
#include <numeric>
#include <ostream>
#include <random>
#include <sstream>
#include <thread>

#include <CLI11.hpp>
#include <json.hpp>

#include "pilotpart/formats.hpp"
#include "pilotpart/objective.hpp"
#include "pilotpart/reductions.hpp"
#include "pilotpart/solvers.hpp"

namespace pilotpart::cli {

using nlohmann::json;
namespace fs = std::filesystem;

ApSelectionRule parse_ap_rule(const std::string& text) {
    const auto colon = text.find(':');
    const std::string kind = text.substr(0, colon);
    const std::string value = colon == std::string::npos ? "" : text.substr(colon + 1);
    try {
        if (kind == "top") {
            std::size_t used = 0;
            const int n = value.empty() ? 1 : std::stoi(value, &used);
            if (!value.empty() && used != value.size()) throw std::invalid_argument(text);
            if (n < 1) throw std::invalid_argument("top:n needs n >= 1");
            return TopN{n};
        }
        if (kind == "energy") {
            std::size_t used = 0;
            const double theta = value.empty() ? 0.95 : std::stod(value, &used);
            if (!value.empty() && used != value.size()) throw std::invalid_argument(text);
            if (!(theta > 0.0 && theta <= 1.0)) throw std::invalid_argument("energy:theta needs 0 < theta <= 1");
            return EnergyFraction{theta};
        }
    } catch (const std::logic_error&) {
        throw std::invalid_argument("bad AP rule '" + text + "' (use top:<n> or energy:<theta>)");
    }
    throw std::invalid_argument("bad AP rule '" + text + "' (use top:<n> or energy:<theta>)");
}

ExperimentConfig load_experiment_config(const fs::path& path) {
    std::ifstream in(path);
    if (!in) throw std::invalid_argument("cannot open config '" + path.string() + "'");
    const json j = json::parse(in);
    ExperimentConfig c;
    if (j.contains("instance_file")) c.instance_file = j.at("instance_file").get<std::string>();
    c.instances = j.value("instances", c.instances);
    c.users_min = j.value("users_min", c.users_min);
    c.users_max = j.value("users_max", c.users_max);
    c.pilots = j.value("pilots", c.pilots);
    c.aps = j.value("aps", c.aps);
    c.solvers = j.value("solvers", c.solvers);
    c.seed = j.value("seed", c.seed);
    c.budget = j.value("budget", c.budget);
    if (j.contains("output_dir")) c.output_dir = j.at("output_dir").get<std::string>();
    c.report_format = j.value("report_format", c.report_format);
    if (j.contains("generator")) {
        const json& g = j.at("generator");
        c.generator.area_side_m = g.value("area_side_m", c.generator.area_side_m);
        c.generator.pathloss_exponent = g.value("pathloss_exponent", c.generator.pathloss_exponent);
        c.generator.shadowing_sigma_db = g.value("shadowing_sigma_db", c.generator.shadowing_sigma_db);
        c.generator.rho_u = g.value("rho_u", c.generator.rho_u);
        c.generator.rho_p = g.value("rho_p", c.generator.rho_p);
        c.generator.tau_c = g.value("tau_c", c.generator.tau_c);
        if (g.contains("ap_rule")) c.generator.ap_selection_rule = parse_ap_rule(g.at("ap_rule").get<std::string>());
        if (g.contains("eta")) {
            const auto eta = g.at("eta").get<std::string>();
            if (eta != "full" && eta != "uniform") throw std::invalid_argument("eta must be full or uniform");
            c.generator.eta_policy = eta == "full" ? EtaPolicy::FullPower : EtaPolicy::Uniform;
        }
    }
    return c;
}

namespace {

const std::vector<std::string> kSolverNames{"brute", "greedy", "random", "worst-user", "local-search"};

bool known_solver(const std::string& name) {
    return std::find(kSolverNames.begin(), kSolverNames.end(), name) != kSolverNames.end();
}

} // namespace

void validate_experiment_config(const ExperimentConfig& c) {
    if (c.solvers.empty()) throw std::invalid_argument("at least one solver is required");
    for (const auto& s : c.solvers)
        if (!known_solver(s)) throw std::invalid_argument("unknown solver '" + s + "'");
    if (c.report_format != "csv") throw std::invalid_argument("only the csv report format is supported");
    if (c.instance_file.empty()) {
        if (c.instances < 1) throw std::invalid_argument("instances must be positive");
        if (c.users_min < 1 || c.users_max < c.users_min) throw std::invalid_argument("need 1 <= users_min <= users_max");
        if (c.pilots.empty()) throw std::invalid_argument("at least one pilot count is required");
        for (int p : c.pilots)
            if (p < 1 || p > c.users_max) throw std::invalid_argument("pilot counts must lie in [1, users_max]");
        if (c.aps < 1) throw std::invalid_argument("aps must be positive");
        validate_config(c.generator);
    }
}

namespace {

struct SolverOptions {
    std::uint64_t seed = 1;
    std::uint64_t budget = kDefaultOracleBudget;
    int max_rounds = 1000;
    int max_iters = 100000;
    std::string init = "random";
};

SolveReport run_solver(const std::string& name, const CfMmimoSystem& s, const SolverOptions& o) {
    using Clock = std::chrono::steady_clock;
    auto initial = [&] { return o.init == "greedy" ? greedy_feasible(s) : random_feasible(s, o.seed); };
    if (name == "brute") return brute_force_exact(s, o.budget);
    if (name == "worst-user") return greedy_worst_user(s, initial(), o.max_rounds);
    if (name == "local-search") return local_search_move(s, initial(), o.max_iters);
    const auto start = Clock::now();
    PilotAssignment a = name == "greedy" ? greedy_feasible(s) : random_feasible(s, o.seed);
    SolveReport r = evaluate(s, a, name);
    r.elapsed_seconds = std::chrono::duration<double>(Clock::now() - start).count();
    return r;
}

CfMmimoSystem load_any_instance(const fs::path& path) {
    const auto schema = peek_schema(path);
    if (schema == kInstanceSchema) return load_instance(path);
    if (schema == kGraphSchema) return mkp_to_pa(load_graph(path));
    if (schema.empty()) throw FormatError("cannot read '" + path.string() + "'");
    throw FormatError("'" + path.string() + "' has schema '" + schema + "', expected an instance or graph");
}

std::vector<std::string> split_list(const std::vector<std::string>& raw) {
    std::vector<std::string> out;
    for (const auto& item : raw) {
        std::stringstream ss(item);
        for (std::string part; std::getline(ss, part, ',');)
            if (!part.empty()) out.push_back(part);
    }
    return out;
}

json measure_json(const MeasureReport& m) {
    return json{{"m_pa", m.m_pa},
                {"m_mkp", m.m_mkp},
                {"abs_diff", m.abs_diff},
                {"rel_diff", m.rel_diff},
                {"float_pass", m.float_pass},
                {"m_pa_exact", format_rational(m.m_pa_exact)},
                {"m_mkp_exact", format_rational(m.m_mkp_exact)},
                {"exact_equal", m.exact_pass}};
}

json violations_json(const ValidationResult& v) {
    json arr = json::array();
    for (const auto& x : v.violations) {
        json e{{"message", x.message}};
        if (x.user >= 0) e["user"] = x.user + 1;
        if (x.ap >= 0) e["ap"] = x.ap + 1;
        arr.push_back(std::move(e));
    }
    return arr;
}

// ---------------------------------------------------------------- gen

struct GenArgs {
    int aps = 16, users = 4, pilots = 2;
    std::uint64_t seed = 0;
    double area = 1000.0, pathloss = 3.5, shadowing = 8.0, rho_u = 1e11, rho_p = 1e11;
    int tau_c = 200;
    std::string ap_rule = "energy:0.95", eta = "full";
    std::string out;
};

int cmd_gen(const GenArgs& a, std::ostream& out) {
    GenerationConfig cfg;
    cfg.seed = a.seed;
    cfg.area_side_m = a.area;
    cfg.pathloss_exponent = a.pathloss;
    cfg.shadowing_sigma_db = a.shadowing;
    cfg.rho_u = a.rho_u;
    cfg.rho_p = a.rho_p;
    cfg.tau_c = a.tau_c;
    cfg.ap_selection_rule = parse_ap_rule(a.ap_rule);
    cfg.eta_policy = a.eta == "uniform" ? EtaPolicy::Uniform : EtaPolicy::FullPower;
    if (a.pilots > a.users) throw std::invalid_argument("tau exceeds K: " + std::to_string(a.pilots) + " pilots for " +
                                                         std::to_string(a.users) + " users");
    const auto s = generate_system(cfg, a.aps, a.users, a.pilots);
    save_instance(a.out, s);
    double mean_serving = 0.0;
    for (const auto& set : s.serving_sets) mean_serving += static_cast<double>(set.size());
    mean_serving /= s.k_users;
    out << "M=" << s.m_aps << " K=" << s.k_users << " tau=" << s.tau_pilots << " mean_|A(k)|=" << format_double(mean_serving)
        << " -> " << a.out << '\n';
    if (a.users > a.aps) out << "warning: more users than APs\n";
    return kSuccess;
}

// ---------------------------------------------------------------- reduce

struct ReduceArgs {
    std::string direction, in, out;
    int k = 2;
    int pad = 0;
    bool exact = false;
};

int cmd_reduce(const ReduceArgs& a, std::ostream& out) {
    if (a.direction == "pa-to-mkp") {
        const auto s = load_instance(a.in);
        require_valid(s);
        const auto g = pa_to_mkp(s, a.exact ? Arithmetic::Exact : Arithmetic::Float);
        save_graph(a.out, g);
        const auto h = greedy_feasible(s);
        const auto m = verify_measure_equality(s, h);
        out << "pa-to-mkp: K=" << s.k_users << " -> n=" << g.n_vertices() << " k=" << g.k_parts() << " edges="
            << g.edges().size() << " (" << (a.exact ? "exact" : "float") << ")\n";
        out << "measure check on greedy assignment: m_PA=" << format_double(m.m_pa) << " m_MkP=" << format_double(m.m_mkp)
            << (m.pass() ? " equal" : " DIFFER") << '\n';
        return m.pass() ? kSuccess : kValidationFailure;
    }
    if (a.direction == "mkp-to-pa") {
        const auto g = load_graph(a.in);
        const auto s = mkp_to_pa(g, a.pad);
        save_instance(a.out, s);
        const auto back = pa_to_mkp(s, Arithmetic::Exact);
        const bool identical = back == g;
        out << "mkp-to-pa: n=" << g.n_vertices() << " -> M=" << s.m_aps << " K=" << s.k_users << " tau=" << s.tau_pilots
            << '\n';
        out << "round trip weights " << (identical ? "identical" : "DIFFER") << " (exact)\n";
        return identical ? kSuccess : kValidationFailure;
    }
    if (a.direction == "color-to-mkp") {
        const auto g = coloring_to_mkp(load_simple_graph(a.in), a.k);
        save_graph(a.out, g);
        out << "color-to-mkp: n=" << g.n_vertices() << " k=" << g.k_parts() << " unit edges=" << g.edges().size()
            << "; k-colourable iff the Min-k-Partition optimum is 0\n";
        return kSuccess;
    }
    throw CLI::ValidationError("direction", "unknown direction '" + a.direction + "'");
}

// ---------------------------------------------------------------- solve

struct SolveArgs {
    std::string in, out_dir = ".", name;
    std::vector<std::string> solvers;
    SolverOptions options;
};

int cmd_solve(const SolveArgs& a, std::ostream& out) {
    const auto solvers = split_list(a.solvers);
    if (solvers.empty()) throw CLI::ValidationError("--solver", "at least one solver is required");
    for (const auto& s : solvers)
        if (!known_solver(s)) throw CLI::ValidationError("--solver", "unknown solver '" + s + "'");

    const auto s = load_any_instance(a.in);
    require_valid(s);
    const std::string name = a.name.empty() ? fs::path(a.in).stem().string() : a.name;
    fs::create_directories(a.out_dir);

    std::ofstream report(fs::path(a.out_dir) / "report.csv");
    if (!report) throw FormatError("cannot write report in '" + a.out_dir + "'");
    write_report_header(report);
    write_report_header(out);
    for (const auto& solver : solvers) {
        const auto r = run_solver(solver, s, a.options);
        write_report_row(report, name, r);
        write_report_row(out, name, r);
        const fs::path stem = fs::path(a.out_dir) / (name + "_" + solver);
        std::ofstream rates(stem.string() + "_rates.csv");
        write_rates_csv(rates, r);
        std::ofstream pairs(stem.string() + "_pairs.csv");
        write_contamination_csv(pairs, contamination_report(s, r.assignment));
        save_assignment(stem.string() + ".assignment", r.assignment);
    }
    return kSuccess;
}

// ---------------------------------------------------------------- verify

struct VerifyArgs {
    std::string in, assignment, graph, partition;
    int sweep = 0;
    std::uint64_t seed = 1;
    int users_max = 10;
    int aps_max = 32;
};

int verify_instance(const VerifyArgs& a, std::ostream& out) {
    const auto s = load_instance(a.in);
    json j{{"mode", a.graph.empty() ? "instance" : "instance+graph"}};
    const auto v = validate_system(s);
    j["violations"] = violations_json(v);
    if (!v.ok()) {
        j["pass"] = false;
        out << j.dump() << '\n';
        return kValidationFailure;
    }
    const auto h = load_assignment(a.assignment);
    if (!is_feasible(s, h)) {
        j["pass"] = false;
        j["error"] = "infeasible assignment";
        out << j.dump() << '\n';
        return kValidationFailure;
    }
    bool pass = false;
    if (a.graph.empty()) {
        const auto m = verify_measure_equality(s, h);
        j["measure"] = measure_json(m);
        pass = m.pass();
    } else {
        const auto check = verify_against_graph(s, load_graph(a.graph), h);
        j["measure"] = measure_json(check.measure);
        j["k_parts_match"] = check.k_parts_match;
        json edges = json::array();
        for (auto [i, k] : check.mismatched_edges) edges.push_back({i + 1, k + 1});
        j["mismatched_edges"] = edges;
        pass = check.pass();
    }
    j["pass"] = pass;
    out << j.dump() << '\n';
    return pass ? kSuccess : kValidationFailure;
}

int verify_graph(const VerifyArgs& a, std::ostream& out) {
    const auto g = load_graph(a.graph);
    const auto p = load_partition(a.partition);
    json j{{"mode", "graph"}};
    try {
        require_valid_partition(g, p);
    } catch (const std::invalid_argument& e) {
        j["pass"] = false;
        j["error"] = e.what();
        out << j.dump() << '\n';
        return kValidationFailure;
    }
    const auto s = mkp_to_pa(g);
    const auto h = mkp_solution_to_pa(p);
    const Rational m_mkp = mkp_objective(g, p);
    const Rational m_pa = contamination_objective_exact(s, h);
    const bool exact_equal = m_mkp == m_pa;
    const double f_mkp = mkp_objective_float(g, p);
    const double f_pa = contamination_objective(s, h);
    const double scale = std::max(std::abs(f_mkp), std::abs(f_pa));
    const double rel = scale > 0.0 ? std::abs(f_mkp - f_pa) / scale : 0.0;
    j["m_mkp_exact"] = format_rational(m_mkp);
    j["m_pa_exact"] = format_rational(m_pa);
    j["exact_equal"] = exact_equal;
    j["m_mkp"] = f_mkp;
    j["m_pa"] = f_pa;
    j["rel_diff"] = rel;
    const bool pass = exact_equal && rel <= kMeasureRelTol;
    j["pass"] = pass;
    out << j.dump() << '\n';
    return pass ? kSuccess : kValidationFailure;
}

int verify_sweep(const VerifyArgs& a, std::ostream& out) {
    if (a.users_max < 2 || a.aps_max < 1) throw CLI::ValidationError("--users-max", "sweep needs users_max >= 2");
    std::mt19937_64 rng(a.seed);
    int passed = 0;
    json failures = json::array();
    for (int t = 0; t < a.sweep; ++t) {
        const int k = std::uniform_int_distribution<int>(2, a.users_max)(rng);
        const int tau = std::min(k, std::uniform_int_distribution<int>(2, 3)(rng));
        const int m = std::uniform_int_distribution<int>(1, a.aps_max)(rng);
        GenerationConfig cfg;
        cfg.seed = rng();
        cfg.ap_selection_rule = EnergyFraction{0.95};
        const auto s = generate_system(cfg, m, k, tau);
        const auto h = random_feasible(s, rng());
        const auto r = verify_measure_equality(s, h);
        if (r.pass()) {
            ++passed;
        } else {
            failures.push_back({{"trial", t}, {"measure", measure_json(r)}});
        }
    }
    json j{{"mode", "sweep"}, {"trials", a.sweep}, {"passed", passed}, {"failed", a.sweep - passed}, {"failures", failures}};
    j["pass"] = passed == a.sweep;
    out << j.dump() << '\n';
    return passed == a.sweep ? kSuccess : kValidationFailure;
}

int cmd_verify(const VerifyArgs& a, std::ostream& out) {
    if (a.sweep > 0) return verify_sweep(a, out);
    if (!a.in.empty()) {
        if (a.assignment.empty()) throw CLI::ValidationError("--assignment", "required with --in");
        return verify_instance(a, out);
    }
    if (!a.graph.empty() && !a.partition.empty()) return verify_graph(a, out);
    throw CLI::ValidationError("verify", "give --in with --assignment, --graph with --partition, or --sweep");
}

// ---------------------------------------------------------------- bench

struct BenchRow {
    std::string id;
    int m = 0, k = 0, tau = 0;
    std::optional<double> optimum;
    std::vector<double> objective;
    std::vector<double> ratio;  // NaN when no oracle
    bool dominance_violated = false;
};

double ratio_to_optimum(double value, double optimum) {
    if (optimum > 0.0) return value / optimum;
    return value <= 0.0 ? 1.0 : std::numeric_limits<double>::infinity();
}

BenchRow bench_instance(const ExperimentConfig& c, const std::vector<std::string>& heuristics, int index,
                        const CfMmimoSystem& s, std::uint64_t solver_seed) {
    BenchRow row;
    row.id = c.instance_file.empty() ? "gen" + std::to_string(index) : fs::path(c.instance_file).stem().string();
    row.m = s.m_aps;
    row.k = s.k_users;
    row.tau = s.tau_pilots;
    try {
        row.optimum = brute_force_exact(s, c.budget).objective;
    } catch (const BudgetExceeded&) {
    }
    SolverOptions o;
    o.seed = solver_seed;
    o.budget = c.budget;
    for (const auto& name : heuristics) {
        const auto r = run_solver(name, s, o);
        row.objective.push_back(r.objective);
        if (row.optimum) {
            row.ratio.push_back(ratio_to_optimum(r.objective, *row.optimum));
            if (r.objective < *row.optimum - 1e-9 * std::abs(*row.optimum)) row.dominance_violated = true;
        } else {
            row.ratio.push_back(std::numeric_limits<double>::quiet_NaN());
        }
    }
    return row;
}

std::string cell(double v) { return std::isnan(v) ? "" : (std::isinf(v) ? "inf" : format_double(v)); }

int cmd_bench(ExperimentConfig c, int jobs, std::ostream& out) {
    validate_experiment_config(c);
    std::vector<std::string> heuristics;
    for (const auto& s : c.solvers)
        if (s != "brute") heuristics.push_back(s);
    if (heuristics.empty()) throw std::invalid_argument("bench needs at least one heuristic solver");

    // Draw every instance specification up front so results do not depend on scheduling.
    struct Spec {
        int m, k, tau;
        std::uint64_t gen_seed, solver_seed;
    };
    std::vector<Spec> specs;
    std::optional<CfMmimoSystem> file_instance;
    if (!c.instance_file.empty()) {
        file_instance = load_any_instance(c.instance_file);
        require_valid(*file_instance);
        specs.push_back({0, 0, 0, 0, c.seed});
    } else {
        std::mt19937_64 rng(c.seed);
        for (int i = 0; i < c.instances; ++i) {
            Spec sp{};
            sp.m = c.aps;
            sp.k = std::uniform_int_distribution<int>(c.users_min, c.users_max)(rng);
            std::vector<int> allowed;
            for (int p : c.pilots)
                if (p <= sp.k) allowed.push_back(p);
            if (allowed.empty()) allowed.push_back(1);
            sp.tau = allowed[std::uniform_int_distribution<std::size_t>(0, allowed.size() - 1)(rng)];
            sp.gen_seed = rng();
            sp.solver_seed = rng();
            specs.push_back(sp);
        }
    }

    std::vector<BenchRow> rows(specs.size());
    auto work = [&](std::size_t i) {
        const auto& sp = specs[i];
        if (file_instance) {
            rows[i] = bench_instance(c, heuristics, static_cast<int>(i), *file_instance, sp.solver_seed);
        } else {
            GenerationConfig g = c.generator;
            g.seed = sp.gen_seed;
            rows[i] = bench_instance(c, heuristics, static_cast<int>(i), generate_system(g, sp.m, sp.k, sp.tau), sp.solver_seed);
        }
    };
    jobs = std::max(1, jobs);
    if (jobs == 1) {
        for (std::size_t i = 0; i < specs.size(); ++i) work(i);
    } else {
        std::vector<std::thread> pool;
        std::mutex mu;
        std::exception_ptr error;
        std::size_t next = 0;
        for (int t = 0; t < jobs; ++t) {
            pool.emplace_back([&] {
                for (;;) {
                    std::size_t i;
                    {
                        std::lock_guard lock(mu);
                        if (next >= specs.size() || error) return;
                        i = next++;
                    }
                    try {
                        work(i);
                    } catch (...) {
                        std::lock_guard lock(mu);
                        error = std::current_exception();
                    }
                }
            });
        }
        for (auto& th : pool) th.join();
        if (error) std::rethrow_exception(error);
    }

    fs::create_directories(c.output_dir);
    std::ofstream csv(c.output_dir / "bench.csv");
    if (!csv) throw FormatError("cannot write bench.csv in '" + c.output_dir.string() + "'");
    csv << "instance,M,K,tau,optimum";
    for (const auto& h : heuristics) csv << ',' << h << "_objective," << h << "_ratio";
    csv << '\n';

    const std::size_t n_h = heuristics.size();
    std::vector<double> sum_obj(n_h, 0.0), sum_ratio(n_h, 0.0), max_ratio(n_h, 0.0);
    std::vector<int> with_oracle(n_h, 0), optimal(n_h, 0);
    bool violated = false;
    for (const auto& r : rows) {
        csv << r.id << ',' << r.m << ',' << r.k << ',' << r.tau << ',' << (r.optimum ? format_double(*r.optimum) : "");
        for (std::size_t h = 0; h < n_h; ++h) {
            csv << ',' << format_double(r.objective[h]) << ',' << cell(r.ratio[h]);
            sum_obj[h] += r.objective[h];
            if (!std::isnan(r.ratio[h])) {
                ++with_oracle[h];
                sum_ratio[h] += r.ratio[h];
                max_ratio[h] = std::max(max_ratio[h], r.ratio[h]);
                if (r.ratio[h] <= 1.0 + 1e-9) ++optimal[h];
            }
        }
        csv << '\n';
        violated = violated || r.dominance_violated;
    }
    csv << "aggregate,,,,";
    for (std::size_t h = 0; h < n_h; ++h) {
        csv << ',' << format_double(sum_obj[h] / static_cast<double>(rows.size())) << ','
            << (with_oracle[h] ? cell(sum_ratio[h] / with_oracle[h]) : "");
    }
    csv << '\n';

    std::ofstream summary(c.output_dir / "bench_summary.csv");
    summary << "solver,instances_with_oracle,mean_ratio,max_ratio,optimal_fraction\n";
    out << "solver,instances_with_oracle,mean_ratio,max_ratio,optimal_fraction\n";
    for (std::size_t h = 0; h < n_h; ++h) {
        std::ostringstream line;
        line << heuristics[h] << ',' << with_oracle[h] << ','
             << (with_oracle[h] ? cell(sum_ratio[h] / with_oracle[h]) : "") << ','
             << (with_oracle[h] ? cell(max_ratio[h]) : "") << ','
             << (with_oracle[h] ? format_double(static_cast<double>(optimal[h]) / with_oracle[h]) : "") << '\n';
        summary << line.str();
        out << line.str();
    }
    if (violated) {
        out << "oracle dominance violated: a heuristic beat the exact optimum\n";
        return kValidationFailure;
    }
    return kSuccess;
}

} // namespace

int run(const std::vector<std::string>& args, std::ostream& out, std::ostream& err) {
    CLI::App app{"Pilot assignment toolkit for cell-free massive MIMO", "pilotpart"};
    app.require_subcommand(1);

    GenArgs gen;
    auto* g = app.add_subcommand("gen", "generate a synthetic pa-instance/1 file");
    g->add_option("--aps", gen.aps, "number of access points M")->required()->check(CLI::PositiveNumber);
    g->add_option("--users", gen.users, "number of users K")->required()->check(CLI::PositiveNumber);
    g->add_option("--pilots", gen.pilots, "number of pilots tau")->required()->check(CLI::PositiveNumber);
    g->add_option("--seed", gen.seed, "RNG seed")->required();
    g->add_option("--area", gen.area, "side of the square deployment area in metres")->check(CLI::PositiveNumber);
    g->add_option("--ap-rule", gen.ap_rule, "top:<n> or energy:<theta>");
    g->add_option("--pathloss-exp", gen.pathloss, "path-loss exponent");
    g->add_option("--shadowing-db", gen.shadowing, "log-normal shadowing sigma in dB");
    g->add_option("--rho-u", gen.rho_u, "normalised uplink SNR");
    g->add_option("--rho-p", gen.rho_p, "normalised pilot SNR used for gamma");
    g->add_option("--tau-c", gen.tau_c, "coherence interval length in symbols");
    g->add_option("--eta", gen.eta, "power control: full or uniform")->check(CLI::IsMember({"full", "uniform"}));
    g->add_option("--out,-o", gen.out, "output file")->required();

    ReduceArgs red;
    auto* r = app.add_subcommand("reduce", "transform between PA, Min-k-Partition and colouring instances");
    r->add_option("direction", red.direction, "pa-to-mkp | mkp-to-pa | color-to-mkp")
        ->required()
        ->check(CLI::IsMember({"pa-to-mkp", "mkp-to-pa", "color-to-mkp"}));
    r->add_option("--in,-i", red.in, "input file")->required();
    r->add_option("--out,-o", red.out, "output file")->required();
    r->add_option("--k", red.k, "number of colours (color-to-mkp)")->check(CLI::PositiveNumber);
    r->add_option("--pad", red.pad, "extra all-zero APs (mkp-to-pa)")->check(CLI::NonNegativeNumber);
    r->add_flag("--exact", red.exact, "exact rational edge weights (pa-to-mkp)");

    SolveArgs sol;
    auto* s = app.add_subcommand("solve", "run pilot-assignment solvers and write CSV reports");
    s->add_option("--in,-i", sol.in, "pa-instance/1 or mkp-graph/1 file")->required();
    s->add_option("--solver", sol.solvers, "brute|greedy|random|worst-user|local-search (repeatable or comma list)")
        ->required();
    s->add_option("--seed", sol.options.seed, "seed for random solvers");
    s->add_option("--budget", sol.options.budget, "maximum enumerations for brute");
    s->add_option("--max-rounds", sol.options.max_rounds, "round limit for worst-user");
    s->add_option("--max-iters", sol.options.max_iters, "move limit for local-search");
    s->add_option("--init", sol.options.init, "initial assignment for worst-user and local-search")
        ->check(CLI::IsMember({"greedy", "random"}));
    s->add_option("--out-dir", sol.out_dir, "directory for reports");
    s->add_option("--name", sol.name, "instance name in reports (default: file stem)");

    VerifyArgs ver;
    auto* v = app.add_subcommand("verify", "check feasibility and measure equality across the reduction");
    v->add_option("--in,-i", ver.in, "pa-instance/1 file");
    v->add_option("--assignment,-a", ver.assignment, "pa-assignment/1 file");
    v->add_option("--graph,-g", ver.graph, "mkp-graph/1 file");
    v->add_option("--partition,-p", ver.partition, "mkp-partition/1 file");
    v->add_option("--sweep", ver.sweep, "run N seeded random trials instead")->check(CLI::NonNegativeNumber);
    v->add_option("--seed", ver.seed, "seed for --sweep");
    v->add_option("--users-max", ver.users_max, "largest K in --sweep");
    v->add_option("--aps-max", ver.aps_max, "largest M in --sweep");

    ExperimentConfig bench;
    std::string bench_config, bench_instance_file, bench_ap_rule;
    std::vector<std::string> bench_solvers;
    int jobs = 1;
    auto* b = app.add_subcommand("bench", "compare heuristics against the exact optimum");
    b->add_option("--config", bench_config, "JSON experiment config (flags override it)");
    b->add_option("--in", bench_instance_file, "benchmark a single instance file instead of generating");
    b->add_option("--instances", bench.instances, "number of generated instances");
    b->add_option("--users-min", bench.users_min, "smallest K");
    b->add_option("--users-max", bench.users_max, "largest K");
    b->add_option("--pilots", bench.pilots, "pilot counts to draw from")->delimiter(',');
    b->add_option("--aps", bench.aps, "number of APs");
    b->add_option("--ap-rule", bench_ap_rule, "top:<n> or energy:<theta>");
    b->add_option("--solvers", bench_solvers, "heuristics to compare (comma list)");
    b->add_option("--seed", bench.seed, "master seed");
    b->add_option("--budget", bench.budget, "oracle enumeration budget");
    b->add_option("--out-dir", bench.output_dir, "directory for bench.csv and bench_summary.csv");
    b->add_option("--jobs", jobs, "worker threads")->check(CLI::PositiveNumber);

    try {
        std::vector<std::string> reversed(args.rbegin(), args.rend());
        app.parse(reversed);
    } catch (const CLI::CallForHelp&) {
        out << app.help();
        return kSuccess;
    } catch (const CLI::ParseError& e) {
        err << "error: " << e.what() << '\n';
        return kUsageError;
    }

    try {
        if (g->parsed()) return cmd_gen(gen, out);
        if (r->parsed()) return cmd_reduce(red, out);
        if (s->parsed()) return cmd_solve(sol, out);
        if (v->parsed()) return cmd_verify(ver, out);
        if (b->parsed()) {
            ExperimentConfig c = bench_config.empty() ? ExperimentConfig{} : load_experiment_config(bench_config);
            // Flags given on the command line override the file.
            if (b->count("--instances")) c.instances = bench.instances;
            if (b->count("--users-min")) c.users_min = bench.users_min;
            if (b->count("--users-max")) c.users_max = bench.users_max;
            if (b->count("--pilots")) c.pilots = bench.pilots;
            if (b->count("--aps")) c.aps = bench.aps;
            if (b->count("--seed")) c.seed = bench.seed;
            if (b->count("--budget")) c.budget = bench.budget;
            if (b->count("--out-dir")) c.output_dir = bench.output_dir;
            if (!bench_instance_file.empty()) c.instance_file = bench_instance_file;
            if (!bench_ap_rule.empty()) c.generator.ap_selection_rule = parse_ap_rule(bench_ap_rule);
            if (!bench_solvers.empty()) c.solvers = split_list(bench_solvers);
            return cmd_bench(c, jobs, out);
        }
    } catch (const CLI::ValidationError& e) {
        err << "error: " << e.what() << '\n';
        return kUsageError;
    } catch (const BudgetExceeded& e) {
        err << "refused: " << e.what() << '\n';
        return kBudgetRefusal;
    } catch (const InvalidSystem& e) {
        err << "error: " << e.what() << '\n';
        return kValidationFailure;
    } catch (const InfeasibleAssignment& e) {
        err << "error: " << e.what() << '\n';
        return kValidationFailure;
    } catch (const FormatError& e) {
        err << "error: " << e.what() << '\n';
        return kValidationFailure;
    } catch (const json::exception& e) {
        err << "error: bad config: " << e.what() << '\n';
        return kUsageError;
    } catch (const std::invalid_argument& e) {
        err << "error: " << e.what() << '\n';
        return kUsageError;
    } catch (const std::exception& e) {
        err << "error: " << e.what() << '\n';
        return kValidationFailure;
    }
    return kUsageError;
}

} // namespace pilotpart::cli
