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

#include <doctest.h>

#include <filesystem>
#include <fstream>
#include <sstream>

#include <json.hpp>

#include "pilotpart/cli.hpp"
#include "pilotpart/formats.hpp"
#include "pilotpart/objective.hpp"

using namespace pilotpart;
namespace fs = std::filesystem;

namespace {

struct Run {
    int code;
    std::string out, err;
};

Run run(std::vector<std::string> args) {
    std::ostringstream out, err;
    int code = cli::run(args, out, err);
    return {code, out.str(), err.str()};
}

struct TempDir {
    fs::path path;
    explicit TempDir(const std::string& name) : path(fs::temp_directory_path() / ("pilotpart_cli_" + name)) {
        fs::remove_all(path);
        fs::create_directories(path);
    }
    ~TempDir() { fs::remove_all(path); }
    std::string operator/(const std::string& f) const { return (path / f).string(); }
};

std::string slurp(const std::string& p) {
    std::ifstream in(p);
    std::stringstream ss;
    ss << in.rdbuf();
    return ss.str();
}

void write(const std::string& p, const std::string& text) { std::ofstream(p) << text; }

const char* kTriangle = "simple-graph/1\n3\n1 2\n2 3\n1 3\n";

} // namespace

TEST_CASE("gen writes a valid, deterministic instance") {
    TempDir d("gen");
    auto r = run({"gen", "--aps", "16", "--users", "4", "--pilots", "2", "--seed", "42", "-o", d / "a.inst"});
    REQUIRE(r.code == cli::kSuccess);
    CHECK(r.out.find("M=16 K=4 tau=2") != std::string::npos);
    CHECK(validate_system(load_instance(d / "a.inst")).ok());
    run({"gen", "--aps", "16", "--users", "4", "--pilots", "2", "--seed", "42", "-o", d / "b.inst"});
    CHECK(slurp(d / "a.inst") == slurp(d / "b.inst"));

    auto top = run({"gen", "--aps", "8", "--users", "3", "--pilots", "2", "--seed", "1", "--ap-rule", "top:1", "-o", d / "t.inst"});
    REQUIRE(top.code == 0);
    for (const auto& set : load_instance(d / "t.inst").serving_sets) CHECK(set.size() == 1);
}

TEST_CASE("gen rejects tau > K and bad flags") {
    TempDir d("genbad");
    auto r = run({"gen", "--aps", "16", "--users", "4", "--pilots", "5", "--seed", "1", "-o", d / "x"});
    CHECK(r.code == cli::kUsageError);
    CHECK(r.err.find("tau exceeds K") != std::string::npos);
    CHECK(run({"gen", "--aps", "16"}).code == cli::kUsageError);
    CHECK(run({"gen", "--aps", "4", "--users", "2", "--pilots", "1", "--seed", "1", "--ap-rule", "energy:2", "-o", d / "y"}).code ==
          cli::kUsageError);
    CHECK(run({"frobnicate"}).code == cli::kUsageError);
    CHECK(run({"gen", "--aps", "4", "--users", "2", "--pilots", "1", "--seed", "1", "-o", "/nonexistent/dir/f"}).code != 0);
}

TEST_CASE("reduce mkp-to-pa then pa-to-mkp reproduces the weights exactly") {
    TempDir d("reduce");
    write(d / "g.graph", "mkp-graph/1\n2 2\n1 2 8\n");
    auto r = run({"reduce", "mkp-to-pa", "-i", d / "g.graph", "-o", d / "g.inst"});
    REQUIRE(r.code == 0);
    auto s = load_instance(d / "g.inst");
    CHECK(s.beta(0, 1) == 2.0);
    CHECK(s.beta(1, 0) == 2.0);

    write(d / "r.graph", "mkp-graph/1\n4 3\n1 2 1/3\n1 3 0.7\n2 4 5/11\n3 4 12\n");
    REQUIRE(run({"reduce", "mkp-to-pa", "-i", d / "r.graph", "-o", d / "r.inst", "--pad", "2"}).code == 0);
    REQUIRE(run({"reduce", "pa-to-mkp", "-i", d / "r.inst", "-o", d / "back.graph", "--exact"}).code == 0);
    CHECK(load_graph(d / "back.graph") == load_graph(d / "r.graph"));
    CHECK(slurp(d / "back.graph") == "mkp-graph/1\n4 3\n1 2 1/3\n1 3 0.7\n2 4 5/11\n3 4 12\n");
}

TEST_CASE("reduce color-to-mkp then solve") {
    TempDir d("color");
    write(d / "tri.sg", kTriangle);
    REQUIRE(run({"reduce", "color-to-mkp", "-i", d / "tri.sg", "-o", d / "tri3.graph", "--k", "3"}).code == 0);
    auto r = run({"solve", "-i", d / "tri3.graph", "--solver", "brute", "--out-dir", d / "out"});
    REQUIRE(r.code == 0);
    CHECK(r.out.find("tri3,brute,0,") != std::string::npos);

    REQUIRE(run({"reduce", "color-to-mkp", "-i", d / "tri.sg", "-o", d / "tri2.graph", "--k", "2"}).code == 0);
    r = run({"solve", "-i", d / "tri2.graph", "--solver", "brute", "--out-dir", d / "out2"});
    CHECK(r.out.find("tri2,brute,1,") != std::string::npos);
    CHECK(slurp(d / "out2/tri2_brute_pairs.csv") == "pair_i,pair_j,weight\n1,2,1\ntotal,,1\n");
}

TEST_CASE("solve writes reports whose objective matches a recomputation") {
    TempDir d("solve");
    REQUIRE(run({"gen", "--aps", "12", "--users", "6", "--pilots", "3", "--seed", "9", "-o", d / "i.inst"}).code == 0);
    auto r = run({"solve", "-i", d / "i.inst", "--solver", "brute,greedy,random", "--solver", "worst-user",
                  "--solver", "local-search", "--seed", "5", "--out-dir", d / "rep"});
    REQUIRE(r.code == 0);
    const auto s = load_instance(d / "i.inst");
    std::istringstream csv(slurp(d / "rep/report.csv"));
    std::string line;
    std::getline(csv, line);
    CHECK(line == "instance,solver,objective,throughput,elapsed_s,certificate");
    int rows = 0;
    double brute = 0.0;
    while (std::getline(csv, line)) {
        std::vector<std::string> cols;
        std::stringstream ls(line);
        for (std::string c; std::getline(ls, c, ',');) cols.push_back(c);
        REQUIRE(cols.size() == 6);
        const auto a = load_assignment(d / ("rep/i_" + cols[1] + ".assignment"));
        CHECK(parse_double(cols[2]) == contamination_objective(s, a));
        if (cols[1] == "brute") {
            brute = parse_double(cols[2]);
            CHECK(cols[5] == "exact");
        } else {
            CHECK(parse_double(cols[2]) >= brute * (1 - 1e-9));
            CHECK(cols[5] == "heuristic");
        }
        ++rows;
    }
    CHECK(rows == 5);
    CHECK(fs::exists(d / "rep/i_greedy_rates.csv"));
}

TEST_CASE("solve refuses an oversize brute force with exit 4") {
    TempDir d("budget");
    REQUIRE(run({"gen", "--aps", "8", "--users", "22", "--pilots", "2", "--seed", "3", "-o", d / "big.inst"}).code == 0);
    auto r = run({"solve", "-i", d / "big.inst", "--solver", "brute", "--out-dir", d / "o"});
    CHECK(r.code == cli::kBudgetRefusal);
    CHECK(r.err.find("4194302") != std::string::npos);
    CHECK(run({"solve", "-i", d / "big.inst", "--solver", "greedy", "--out-dir", d / "o"}).code == 0);
    CHECK(run({"solve", "-i", d / "big.inst", "--solver", "simplex", "--out-dir", d / "o"}).code == cli::kUsageError);
}

TEST_CASE("verify passes on greedy assignments and locates tampering") {
    TempDir d("verify");
    REQUIRE(run({"gen", "--aps", "10", "--users", "5", "--pilots", "2", "--seed", "7", "-o", d / "i.inst"}).code == 0);
    auto s = load_instance(d / "i.inst");
    save_assignment(d / "g.assign", PilotAssignment{{0, 1, 1, 1, 1}, 2});
    auto ok = run({"verify", "-i", d / "i.inst", "-a", d / "g.assign"});
    CHECK(ok.code == 0);
    CHECK(nlohmann::json::parse(ok.out)["pass"] == true);

    // Reference graph from the untouched file, then tamper with one beta entry.
    REQUIRE(run({"reduce", "pa-to-mkp", "-i", d / "i.inst", "-o", d / "i.graph"}).code == 0);
    const int k = 1, m = s.serving_sets[k][0];
    s.beta(k, m) *= 0.5;
    save_instance(d / "t.inst", s);
    auto bad = run({"verify", "-i", d / "t.inst", "-a", d / "g.assign", "-g", d / "i.graph"});
    CHECK(bad.code == cli::kValidationFailure);
    auto j = nlohmann::json::parse(bad.out);
    CHECK(j["pass"] == false);
    REQUIRE(!j["mismatched_edges"].empty());
    for (const auto& e : j["mismatched_edges"]) CHECK((e[0] == k + 1 || e[1] == k + 1));

    auto clean = run({"verify", "-i", d / "i.inst", "-a", d / "g.assign", "-g", d / "i.graph"});
    CHECK(clean.code == 0);
}

TEST_CASE("verify flags a tampered beta against its exact payload") {
    TempDir d("payload");
    write(d / "g.graph", "mkp-graph/1\n3 2\n1 2 2\n2 3 1/2\n");
    REQUIRE(run({"reduce", "mkp-to-pa", "-i", d / "g.graph", "-o", d / "g.inst"}).code == 0);
    auto s = load_instance(d / "g.inst");
    s.beta(0, 1) = 3.0;
    save_instance(d / "t.inst", s);
    save_assignment(d / "a", PilotAssignment{{0, 0, 1}, 2});
    auto r = run({"verify", "-i", d / "t.inst", "-a", d / "a"});
    CHECK(r.code == cli::kValidationFailure);
    auto j = nlohmann::json::parse(r.out);
    REQUIRE(j["violations"].size() == 1);
    CHECK(j["violations"][0]["user"] == 1);
    CHECK(j["violations"][0]["ap"] == 2);
}

TEST_CASE("verify graph + partition and infeasible inputs") {
    TempDir d("vgraph");
    write(d / "g.graph", "mkp-graph/1\n3 2\n1 2 2\n2 3 1/2\n1 3 7/3\n");
    save_partition(d / "p", Partition{{0, 1, 1}, 2});
    auto r = run({"verify", "-g", d / "g.graph", "-p", d / "p"});
    CHECK(r.code == 0);
    auto j = nlohmann::json::parse(r.out);
    CHECK(j["m_mkp_exact"] == "1/2");
    CHECK(j["exact_equal"] == true);

    save_partition(d / "bad", Partition{{0, 0, 0}, 2});
    CHECK(run({"verify", "-g", d / "g.graph", "-p", d / "bad"}).code == cli::kValidationFailure);
    CHECK(run({"verify"}).code == cli::kUsageError);
}

TEST_CASE("verify sweep") {
    auto r = run({"verify", "--sweep", "100", "--seed", "11"});
    CHECK(r.code == 0);
    auto j = nlohmann::json::parse(r.out);
    CHECK(j["passed"] == 100);
}

TEST_CASE("bench emits one row per instance plus an aggregate, deterministically") {
    TempDir d("bench");
    auto r = run({"bench", "--instances", "50", "--users-max", "8", "--seed", "3", "--out-dir", d / "a"});
    REQUIRE(r.code == 0);
    auto text = slurp(d / "a/bench.csv");
    int lines = 0;
    for (char c : text) lines += c == '\n';
    CHECK(lines == 52);  // header + 50 + aggregate
    CHECK(text.find("\naggregate,") != std::string::npos);

    // Every ratio is at least 1 - 1e-9.
    std::istringstream is(text);
    std::string line;
    std::getline(is, line);
    while (std::getline(is, line)) {
        if (line.rfind("aggregate", 0) == 0) continue;
        std::vector<std::string> cols;
        std::stringstream ls(line);
        for (std::string c; std::getline(ls, c, ',');) cols.push_back(c);
        for (std::size_t c = 6; c < cols.size(); c += 2)
            if (!cols[c].empty() && cols[c] != "inf") CHECK(parse_double(cols[c]) >= 1 - 1e-9);
    }

    REQUIRE(run({"bench", "--instances", "50", "--users-max", "8", "--seed", "3", "--jobs", "4", "--out-dir", d / "b"}).code == 0);
    CHECK(slurp(d / "b/bench.csv") == text);
    CHECK(fs::exists(d / "a/bench_summary.csv"));
}

TEST_CASE("bench reads a JSON config") {
    TempDir d("benchcfg");
    write(d / "cfg.json", R"({"instances": 5, "users_min": 3, "users_max": 5, "pilots": [2], "aps": 8,
                              "solvers": ["local-search"], "seed": 9, "generator": {"ap_rule": "top:2"}})");
    auto r = run({"bench", "--config", d / "cfg.json", "--out-dir", d / "o"});
    REQUIRE(r.code == 0);
    CHECK(slurp(d / "o/bench.csv").rfind("instance,M,K,tau,optimum,local-search_objective,local-search_ratio\n", 0) == 0);
    write(d / "bad.json", R"({"solvers": []})");
    CHECK(run({"bench", "--config", d / "bad.json", "--out-dir", d / "o"}).code == cli::kUsageError);
    CHECK(cli::parse_ap_rule("top:3").index() == 0);
    CHECK_THROWS(cli::parse_ap_rule("nearest"));
}
