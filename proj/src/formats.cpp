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

#include "pilotpart/formats.hpp"

#include <charconv>
#include <fstream>
#include <istream>
#include <ostream>
#include <sstream>

namespace pilotpart {

FormatError::FormatError(const std::string& message, int line)
    : std::runtime_error(line > 0 ? "line " + std::to_string(line) + ": " + message : message), line_(line) {}

std::string format_double(double v) {
    char buf[64];
    auto [end, ec] = std::to_chars(buf, buf + sizeof buf, v);
    if (ec != std::errc{}) throw FormatError("cannot format value");
    return std::string(buf, end);
}

double parse_double(std::string_view text) {
    double v = 0.0;
    const char* first = text.data();
    const char* last = first + text.size();
    if (first != last && *first == '+') ++first;
    auto [ptr, ec] = std::from_chars(first, last, v);
    if (ec != std::errc{} || ptr != last) throw FormatError("malformed number '" + std::string(text) + "'");
    return v;
}

namespace {

/// Line reader that skips blank lines and `#` comments and splits on whitespace.
class TokenLines {
public:
    explicit TokenLines(std::istream& in) : in_(in) {}

    bool next(std::vector<std::string>& tokens) {
        std::string line;
        while (std::getline(in_, line)) {
            ++line_no_;
            if (auto hash = line.find('#'); hash != std::string::npos) line.erase(hash);
            std::istringstream ls(line);
            tokens.clear();
            for (std::string t; ls >> t;) tokens.push_back(std::move(t));
            if (!tokens.empty()) return true;
        }
        return false;
    }

    std::vector<std::string> expect(const char* what) {
        std::vector<std::string> t;
        if (!next(t)) fail(std::string("unexpected end of file, expected ") + what);
        return t;
    }

    [[noreturn]] void fail(const std::string& msg) const { throw FormatError(msg, line_no_); }

    int line() const { return line_no_; }

    int to_int(const std::string& s) const {
        int v = 0;
        auto [ptr, ec] = std::from_chars(s.data(), s.data() + s.size(), v);
        if (ec != std::errc{} || ptr != s.data() + s.size()) fail("malformed integer '" + s + "'");
        return v;
    }

    double to_real(const std::string& s) const {
        try {
            return parse_double(s);
        } catch (const FormatError& e) {
            fail(e.what());
        }
    }

    Rational to_rational(const std::string& s) const {
        try {
            return parse_rational(s);
        } catch (const std::invalid_argument& e) {
            fail(e.what());
        }
    }

    void expect_schema(std::string_view schema) {
        auto t = expect("schema line");
        if (t.size() != 1 || t[0] != schema) fail("expected schema '" + std::string(schema) + "'");
    }

private:
    std::istream& in_;
    int line_no_ = 0;
};

void expect_keyword(const TokenLines& r, const std::vector<std::string>& t, const char* kw, std::size_t arity) {
    if (t.empty() || t[0] != kw) r.fail(std::string("expected '") + kw + "'");
    if (arity != 0 && t.size() != arity + 1) r.fail(std::string("'") + kw + "' takes " + std::to_string(arity) + " values");
}

template <typename T, typename Conv>
Matrix<T> read_rows(TokenLines& r, int rows, int cols, Conv conv) {
    Matrix<T> m(rows, cols);
    for (int k = 0; k < rows; ++k) {
        auto t = r.expect("matrix row");
        if (t.size() != static_cast<std::size_t>(cols)) r.fail("matrix row has " + std::to_string(t.size()) + " entries, expected " + std::to_string(cols));
        for (int c = 0; c < cols; ++c) m(k, c) = conv(t[c]);
    }
    return m;
}

std::string format_weight(const Rational& w) {
    if (auto dec = exact_decimal(w)) return *dec;
    return format_rational(w);
}

void write_labels(std::ostream& out, std::string_view schema, const std::vector<int>& labels, int count) {
    out << schema << '\n' << count << '\n';
    for (std::size_t i = 0; i < labels.size(); ++i) out << (i ? " " : "") << labels[i] + 1;
    out << '\n';
}

std::pair<std::vector<int>, int> read_labels(std::istream& in, std::string_view schema) {
    TokenLines r(in);
    r.expect_schema(schema);
    auto head = r.expect("label count");
    if (head.size() != 1) r.fail("expected a single label count");
    const int count = r.to_int(head[0]);
    std::vector<int> labels;
    std::vector<std::string> t;
    while (r.next(t))
        for (const auto& tok : t) labels.push_back(r.to_int(tok) - 1);
    return {labels, count};
}

template <typename F>
auto with_input(const std::filesystem::path& path, F f) {
    std::ifstream in(path);
    if (!in) throw FormatError("cannot open '" + path.string() + "'");
    return f(in);
}

template <typename F>
void with_output(const std::filesystem::path& path, F f) {
    std::ofstream out(path);
    if (!out) throw FormatError("cannot write '" + path.string() + "'");
    f(out);
    out.flush();
    if (!out) throw FormatError("write failed for '" + path.string() + "'");
}

} // namespace

void write_instance(std::ostream& out, const CfMmimoSystem& s) {
    out << kInstanceSchema << '\n';
    out << "dims " << s.m_aps << ' ' << s.k_users << ' ' << s.tau_pilots << '\n';
    out << "rho_u " << format_double(s.rho_u) << '\n';
    out << "tau_c " << s.tau_c << '\n';
    out << "eta";
    for (double e : s.eta) out << ' ' << format_double(e);
    out << '\n';
    for (std::size_t k = 0; k < s.serving_sets.size(); ++k) {
        out << "serving " << k + 1;
        for (int m : s.serving_sets[k]) out << ' ' << m + 1;
        out << '\n';
    }
    auto dump = [&](const char* name, const auto& mat, auto fmt) {
        out << name << '\n';
        for (std::size_t k = 0; k < mat.rows(); ++k) {
            for (std::size_t m = 0; m < mat.cols(); ++m) out << (m ? " " : "") << fmt(mat(k, m));
            out << '\n';
        }
    };
    dump("beta", s.beta, format_double);
    dump("gamma", s.gamma, format_double);
    if (s.beta_sq_exact) dump("beta_sq", *s.beta_sq_exact, format_weight);
    out << "end\n";
}

CfMmimoSystem read_instance(std::istream& in) {
    TokenLines r(in);
    r.expect_schema(kInstanceSchema);
    CfMmimoSystem s;

    auto t = r.expect("dims");
    expect_keyword(r, t, "dims", 3);
    s.m_aps = r.to_int(t[1]);
    s.k_users = r.to_int(t[2]);
    s.tau_pilots = r.to_int(t[3]);
    if (s.m_aps < 1 || s.k_users < 1 || s.tau_pilots < 1) r.fail("dimensions must be positive");

    t = r.expect("rho_u");
    expect_keyword(r, t, "rho_u", 1);
    s.rho_u = r.to_real(t[1]);

    t = r.expect("tau_c");
    expect_keyword(r, t, "tau_c", 1);
    s.tau_c = r.to_int(t[1]);

    t = r.expect("eta");
    expect_keyword(r, t, "eta", static_cast<std::size_t>(s.k_users));
    for (int k = 0; k < s.k_users; ++k) s.eta.push_back(r.to_real(t[k + 1]));

    s.serving_sets.resize(s.k_users);
    for (int k = 0; k < s.k_users; ++k) {
        t = r.expect("serving");
        expect_keyword(r, t, "serving", 0);
        if (t.size() < 2 || r.to_int(t[1]) != k + 1) r.fail("serving lines must list users 1..K in order");
        for (std::size_t i = 2; i < t.size(); ++i) s.serving_sets[k].push_back(r.to_int(t[i]) - 1);
    }

    auto real = [&](const std::string& x) { return r.to_real(x); };
    t = r.expect("beta");
    expect_keyword(r, t, "beta", 0);
    s.beta = read_rows<double>(r, s.k_users, s.m_aps, real);
    t = r.expect("gamma");
    expect_keyword(r, t, "gamma", 0);
    s.gamma = read_rows<double>(r, s.k_users, s.m_aps, real);

    t = r.expect("end");
    if (t.size() == 1 && t[0] == "beta_sq") {
        s.beta_sq_exact = read_rows<Rational>(r, s.k_users, s.m_aps, [&](const std::string& x) { return r.to_rational(x); });
        t = r.expect("end");
    }
    expect_keyword(r, t, "end", 0);
    if (t.size() != 1) r.fail("'end' takes no values");
    if (r.next(t)) r.fail("content after 'end'");
    return s;
}

void write_graph(std::ostream& out, const WeightedGraph& g) {
    out << kGraphSchema << '\n' << g.n_vertices() << ' ' << g.k_parts() << '\n';
    for (auto [i, j] : g.edges()) out << i + 1 << ' ' << j + 1 << ' ' << format_weight(g.weight(i, j)) << '\n';
}

WeightedGraph read_graph(std::istream& in) {
    TokenLines r(in);
    r.expect_schema(kGraphSchema);
    auto head = r.expect("n k");
    if (head.size() != 2) r.fail("header must be 'n k'");
    const int n = r.to_int(head[0]);
    const int k = r.to_int(head[1]);
    if (n < 1 || k < 1 || k > n) r.fail("need 1 <= k <= n");
    WeightedGraph g(n, k);
    std::vector<std::string> t;
    while (r.next(t)) {
        if (t.size() != 3) r.fail("edge lines are 'i j w'");
        const int i = r.to_int(t[0]) - 1;
        const int j = r.to_int(t[1]) - 1;
        if (i < 0 || j < 0 || i >= n || j >= n) r.fail("vertex index out of range");
        if (i == j) r.fail("self-loop");
        Rational w = r.to_rational(t[2]);
        if (w < 0) r.fail("negative weight");
        if (g.weight(i, j) != 0) r.fail("duplicate edge");
        g.set_weight(i, j, std::move(w));
    }
    return g;
}

void write_simple_graph(std::ostream& out, const SimpleGraph& g) {
    out << kSimpleGraphSchema << '\n' << g.n_vertices << '\n';
    for (auto [i, j] : g.edges) out << i + 1 << ' ' << j + 1 << '\n';
}

SimpleGraph read_simple_graph(std::istream& in) {
    TokenLines r(in);
    r.expect_schema(kSimpleGraphSchema);
    auto head = r.expect("n");
    if (head.size() != 1) r.fail("header must be 'n'");
    SimpleGraph g;
    g.n_vertices = r.to_int(head[0]);
    if (g.n_vertices < 1) r.fail("need at least one vertex");
    std::vector<std::string> t;
    while (r.next(t)) {
        if (t.size() != 2) r.fail("edge lines are 'i j'");
        const int i = r.to_int(t[0]) - 1;
        const int j = r.to_int(t[1]) - 1;
        if (i < 0 || j < 0 || i >= g.n_vertices || j >= g.n_vertices) r.fail("vertex index out of range");
        if (i == j) r.fail("self-loop");
        g.edges.emplace_back(i, j);
    }
    return g;
}

void write_assignment(std::ostream& out, const PilotAssignment& a) {
    write_labels(out, kAssignmentSchema, a.pilot_of, a.num_pilots);
}

PilotAssignment read_assignment(std::istream& in) {
    auto [labels, count] = read_labels(in, kAssignmentSchema);
    return PilotAssignment{std::move(labels), count};
}

void write_partition(std::ostream& out, const Partition& p) { write_labels(out, kPartitionSchema, p.block_of, p.num_blocks); }

Partition read_partition(std::istream& in) {
    auto [labels, count] = read_labels(in, kPartitionSchema);
    return Partition{std::move(labels), count};
}

std::string peek_schema(const std::filesystem::path& path) {
    std::ifstream in(path);
    if (!in) return {};
    TokenLines r(in);
    std::vector<std::string> t;
    if (!r.next(t) || t.size() != 1) return {};
    return t[0];
}

CfMmimoSystem load_instance(const std::filesystem::path& p) { return with_input(p, [](std::istream& in) { return read_instance(in); }); }
WeightedGraph load_graph(const std::filesystem::path& p) { return with_input(p, [](std::istream& in) { return read_graph(in); }); }
SimpleGraph load_simple_graph(const std::filesystem::path& p) { return with_input(p, [](std::istream& in) { return read_simple_graph(in); }); }
PilotAssignment load_assignment(const std::filesystem::path& p) { return with_input(p, [](std::istream& in) { return read_assignment(in); }); }
Partition load_partition(const std::filesystem::path& p) { return with_input(p, [](std::istream& in) { return read_partition(in); }); }

void save_instance(const std::filesystem::path& p, const CfMmimoSystem& s) { with_output(p, [&](std::ostream& o) { write_instance(o, s); }); }
void save_graph(const std::filesystem::path& p, const WeightedGraph& g) { with_output(p, [&](std::ostream& o) { write_graph(o, g); }); }
void save_simple_graph(const std::filesystem::path& p, const SimpleGraph& g) { with_output(p, [&](std::ostream& o) { write_simple_graph(o, g); }); }
void save_assignment(const std::filesystem::path& p, const PilotAssignment& a) { with_output(p, [&](std::ostream& o) { write_assignment(o, a); }); }
void save_partition(const std::filesystem::path& p, const Partition& q) { with_output(p, [&](std::ostream& o) { write_partition(o, q); }); }

void write_report_header(std::ostream& out) { out << kReportHeader << '\n'; }

void write_report_row(std::ostream& out, std::string_view instance, const SolveReport& r) {
    out << instance << ',' << r.solver_name << ',' << format_double(r.objective) << ',' << format_double(r.throughput)
        << ',' << format_double(r.elapsed_seconds) << ',' << to_string(r.certificate) << '\n';
}

void write_rates_csv(std::ostream& out, const SolveReport& r) {
    out << "user,pilot,rate\n";
    for (std::size_t k = 0; k < r.rates.size(); ++k)
        out << k + 1 << ',' << r.assignment.pilot_of[k] + 1 << ',' << format_double(r.rates[k]) << '\n';
}

void write_contamination_csv(std::ostream& out, const ContaminationReport& c) {
    out << "pair_i,pair_j,weight\n";
    for (const auto& p : c.per_pair) out << p.i + 1 << ',' << p.j + 1 << ',' << format_double(p.weight) << '\n';
    out << "total,," << format_double(c.total) << '\n';
}

} // namespace pilotpart
