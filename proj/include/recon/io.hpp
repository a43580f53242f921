#pragma once

#include <charconv>
#include <fstream>
#include <istream>
#include <ostream>
#include <sstream>
#include <string>
#include <string_view>
#include <utility>
#include <vector>

#include "recon/dp.hpp"
#include "recon/errors.hpp"
#include "recon/graph.hpp"
#include "recon/oracle.hpp"

namespace recon {

namespace detail {

inline std::string_view trim(std::string_view s) {
    const auto b = s.find_first_not_of(" \t\r\n");
    if (b == std::string_view::npos) return {};
    const auto e = s.find_last_not_of(" \t\r\n");
    return s.substr(b, e - b + 1);
}

inline std::string_view strip_comment(std::string_view s) {
    const auto hash = s.find('#');
    return trim(hash == std::string_view::npos ? s : s.substr(0, hash));
}

inline bool parse_int(std::string_view tok, long long& out) {
    const char* first = tok.data();
    const char* last = first + tok.size();
    auto [p, ec] = std::from_chars(first, last, out);
    return ec == std::errc{} && p == last;
}

inline std::vector<std::string_view> split_ws(std::string_view s) {
    std::vector<std::string_view> out;
    std::size_t i = 0;
    while (i < s.size()) {
        while (i < s.size() && (s[i] == ' ' || s[i] == '\t')) ++i;
        std::size_t j = i;
        while (j < s.size() && s[j] != ' ' && s[j] != '\t') ++j;
        if (j > i) out.push_back(s.substr(i, j - i));
        i = j;
    }
    return out;
}

}  // namespace detail

/// Reads `n m` followed by m lines `u v`. Blank lines and `#` comments are
/// skipped. Duplicate edges are dropped with a warning; everything else
/// malformed raises InputError with the line number.
inline Graph read_graph(std::istream& in, const std::string& name = "<graph>",
                        std::vector<std::string>* warnings = nullptr) {
    std::string line;
    int lineno = 0;
    auto fail = [&](const std::string& msg) -> InputError {
        return InputError(name + ":" + std::to_string(lineno) + ": " + msg);
    };
    auto next_tokens = [&](std::vector<std::string_view>& toks) {
        while (std::getline(in, line)) {
            ++lineno;
            toks = detail::split_ws(detail::strip_comment(line));
            if (!toks.empty()) return true;
        }
        return false;
    };
    auto number = [&](std::string_view tok) {
        long long v = 0;
        if (!detail::parse_int(tok, v)) throw fail("expected an integer, got '" + std::string(tok) + "'");
        return v;
    };

    std::vector<std::string_view> toks;
    if (!next_tokens(toks)) throw InputError(name + ": empty graph file (expected header 'n m')");
    if (toks.size() != 2) throw fail("header must be 'n m'");
    const long long n = number(toks[0]);
    const long long m = number(toks[1]);
    if (n < 0 || n > 1'000'000) throw fail("vertex count out of range");
    if (m < 0) throw fail("negative edge count");
    GraphBuilder b(static_cast<int>(n));
    long long seen = 0;
    while (next_tokens(toks)) {
        if (toks.size() != 2) throw fail("edge line must be 'u v'");
        const long long u = number(toks[0]);
        const long long v = number(toks[1]);
        if (u < 0 || v < 0 || u >= n || v >= n)
            throw fail("vertex id " + std::to_string(u < 0 || u >= n ? u : v) + " out of range (n=" + std::to_string(n) + ")");
        if (u == v) throw fail("self-loop on vertex " + std::to_string(u));
        ++seen;
        if (!b.add_edge(static_cast<Vertex>(u), static_cast<Vertex>(v)) && warnings)
            warnings->push_back(name + ":" + std::to_string(lineno) + ": duplicate edge " + std::to_string(u) + " " +
                                std::to_string(v) + " ignored");
    }
    if (seen != m)
        throw InputError(name + ": header announces " + std::to_string(m) + " edges, file has " + std::to_string(seen));
    return std::move(b).build();
}

inline Graph load_graph(const std::string& path, std::vector<std::string>* warnings = nullptr) {
    std::ifstream in(path);
    if (!in) throw InputError("cannot open graph file '" + path + "'");
    return read_graph(in, path, warnings);
}

inline void write_graph(std::ostream& out, const Graph& g) {
    const auto edges = g.edges();
    out << g.size() << ' ' << edges.size() << '\n';
    for (auto [u, v] : edges) out << u << ' ' << v << '\n';
}

/// Set spec: comma-separated ids ("0,2,5"; "" or "{}" for the empty set),
/// or "@path" naming a file with one id per line. Ids must lie in 0..n-1
/// and appear once.
inline VertexSet parse_set(const std::string& spec, int n, const std::string& name = "set") {
    std::vector<std::pair<std::string, std::string>> tokens;  // token, location
    if (!spec.empty() && spec.front() == '@') {
        const std::string path = spec.substr(1);
        std::ifstream in(path);
        if (!in) throw InputError(name + ": cannot open set file '" + path + "'");
        std::string line;
        int lineno = 0;
        while (std::getline(in, line)) {
            ++lineno;
            const auto t = detail::strip_comment(line);
            if (!t.empty()) tokens.emplace_back(std::string(t), path + ":" + std::to_string(lineno));
        }
    } else {
        std::string_view body = detail::trim(spec);
        if (body.size() >= 2 && body.front() == '{' && body.back() == '}') body = body.substr(1, body.size() - 2);
        if (!detail::trim(body).empty()) {
            std::size_t start = 0;
            while (true) {
                const auto comma = body.find(',', start);
                tokens.emplace_back(std::string(detail::trim(body.substr(start, comma - start))), name);
                if (comma == std::string_view::npos) break;
                start = comma + 1;
            }
        }
    }
    std::vector<Vertex> ids;
    std::vector<char> seen(static_cast<std::size_t>(n), 0);
    for (const auto& [tok, where] : tokens) {
        long long v = 0;
        if (!detail::parse_int(tok, v)) throw InputError(where + ": '" + tok + "' is not a vertex id");
        if (v < 0 || v >= n)
            throw InputError(where + ": vertex id " + tok + " out of range (n=" + std::to_string(n) + ")");
        if (seen[static_cast<std::size_t>(v)]++) throw InputError(where + ": duplicate vertex id " + tok);
        ids.push_back(static_cast<Vertex>(v));
    }
    return VertexSet(std::move(ids));
}

/// Throws InputError naming an adjacent pair inside s.
inline void require_independent_set(const Graph& g, const VertexSet& s, const std::string& name) {
    for (std::size_t i = 0; i < s.size(); ++i)
        for (std::size_t j = i + 1; j < s.size(); ++j)
            if (g.adjacent(s[i], s[j]))
                throw InputError(name + " is not independent: " + std::to_string(s[i]) + " and " +
                                 std::to_string(s[j]) + " are adjacent");
}

struct Instance {
    Graph graph;
    VertexSet a;
    VertexSet b;
    int k = 0;
    Model model = Model::TAR;
};

/// For TJ, |A| must equal |B|; the k argument is ignored and k records
/// the token count |A|.
inline Instance parse_instance(const std::string& graph_path, const std::string& a_spec, const std::string& b_spec,
                               int k, Model model, std::vector<std::string>* warnings = nullptr) {
    Instance inst;
    inst.graph = load_graph(graph_path, warnings);
    inst.model = model;
    inst.a = parse_set(a_spec, inst.graph.size(), "A");
    inst.b = parse_set(b_spec, inst.graph.size(), "B");
    require_independent_set(inst.graph, inst.a, "A");
    require_independent_set(inst.graph, inst.b, "B");
    if (model == Model::TJ) {
        if (inst.a.size() != inst.b.size()) throw InputError("token jumping needs |A| = |B|");
        inst.k = static_cast<int>(inst.a.size());
    } else {
        if (k < 0) throw InputError("threshold k must be nonnegative");
        inst.k = k;
    }
    return inst;
}

}  // namespace recon
