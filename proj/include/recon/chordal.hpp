#pragma once

#include <algorithm>
#include <string>
#include <utility>
#include <vector>

#include "recon/errors.hpp"
#include "recon/graph.hpp"

namespace recon {

struct EliminationOrdering {
    /// Elimination order: order[0] is eliminated first.
    std::vector<Vertex> order;
    /// Every vertex's later neighbours form a clique.
    bool is_perfect = false;
};

/// Lexicographic BFS by partition refinement; O(n^2) adjacency probes.
/// Returns the visit order.
inline std::vector<Vertex> lex_bfs(const Graph& g) {
    const int n = g.size();
    std::vector<std::vector<Vertex>> classes;
    if (n > 0) {
        classes.emplace_back();
        for (Vertex v = 0; v < n; ++v) classes.back().push_back(v);
    }
    std::vector<Vertex> visit;
    visit.reserve(static_cast<std::size_t>(n));
    while (!classes.empty()) {
        const Vertex pivot = classes.front().front();
        classes.front().erase(classes.front().begin());
        if (classes.front().empty()) classes.erase(classes.begin());
        visit.push_back(pivot);
        std::vector<std::vector<Vertex>> refined;
        refined.reserve(classes.size() * 2);
        for (auto& cls : classes) {
            std::vector<Vertex> in, out;
            for (Vertex x : cls) (g.adjacent(pivot, x) ? in : out).push_back(x);
            if (!in.empty()) refined.push_back(std::move(in));
            if (!out.empty()) refined.push_back(std::move(out));
        }
        classes = std::move(refined);
    }
    return visit;
}

/// Reverse Lex-BFS order plus the perfect-elimination check; the flag is
/// true exactly when g is chordal.
inline EliminationOrdering chordality(const Graph& g) {
    EliminationOrdering peo;
    peo.order = lex_bfs(g);
    std::reverse(peo.order.begin(), peo.order.end());
    const auto n = static_cast<std::size_t>(g.size());
    std::vector<int> index(n);
    for (std::size_t i = 0; i < n; ++i) index[static_cast<std::size_t>(peo.order[i])] = static_cast<int>(i);

    // For each v, let p be its earliest later neighbour; every other later
    // neighbour of v must be adjacent to p.
    peo.is_perfect = true;
    for (std::size_t i = 0; i < n && peo.is_perfect; ++i) {
        const Vertex v = peo.order[i];
        Vertex p = -1;
        std::vector<Vertex> later;
        for (Vertex x : g.neighbors(v)) {
            if (index[static_cast<std::size_t>(x)] <= static_cast<int>(i)) continue;
            later.push_back(x);
            if (p < 0 || index[static_cast<std::size_t>(x)] < index[static_cast<std::size_t>(p)]) p = x;
        }
        for (Vertex x : later)
            if (x != p && !g.adjacent(x, p)) {
                peo.is_perfect = false;
                break;
            }
    }
    return peo;
}

inline bool is_chordal(const Graph& g) { return chordality(g).is_perfect; }

struct AlphaResult {
    int alpha = 0;
    VertexSet witness;
};

/// Maximum independent set of a chordal graph: walk the elimination order
/// and keep every vertex none of whose neighbours was kept.
inline AlphaResult alpha_chordal(const Graph& g, const EliminationOrdering& peo) {
    if (!peo.is_perfect) throw ContractError("alpha_chordal needs a perfect elimination ordering");
    if (static_cast<int>(peo.order.size()) != g.size()) throw ContractError("ordering does not match graph");
    std::vector<char> blocked(static_cast<std::size_t>(g.size()), 0);
    std::vector<Vertex> chosen;
    for (Vertex v : peo.order) {
        if (blocked[static_cast<std::size_t>(v)]) continue;
        chosen.push_back(v);
        for (Vertex x : g.neighbors(v)) blocked[static_cast<std::size_t>(x)] = 1;
    }
    AlphaResult r;
    r.alpha = static_cast<int>(chosen.size());
    r.witness = VertexSet(std::move(chosen));
    return r;
}

inline bool is_dominating(const Graph& g, const VertexSet& s) {
    s.check_range(g.size());
    std::vector<char> covered = s.mask(g.size());
    for (Vertex v : s)
        for (Vertex x : g.neighbors(v)) covered[static_cast<std::size_t>(x)] = 1;
    for (char c : covered)
        if (!c) return false;
    return true;
}

namespace detail {

inline EliminationOrdering require_chordal(const Graph& g) {
    auto peo = chordality(g);
    if (!peo.is_perfect) throw UnsupportedGraphClass("leaf graph is not chordal");
    return peo;
}

inline void require_leaf_set(const Graph& g, const VertexSet& s, const char* name) {
    s.check_range(g.size());
    if (!is_independent(g, s)) throw InputError(std::string(name) + " is not an independent set of the leaf graph");
}

}  // namespace detail

/// TAR reachability inside an even-hole-free (here: chordal) graph: two
/// distinct sets are connected at threshold ell iff neither is a
/// dominating set of size exactly ell.
inline bool leaf_reachable(const Graph& g, const VertexSet& a, const VertexSet& b, int ell) {
    detail::require_chordal(g);
    detail::require_leaf_set(g, a, "first set");
    detail::require_leaf_set(g, b, "second set");
    if (ell < 0 || static_cast<int>(a.size()) < ell || static_cast<int>(b.size()) < ell)
        throw InputError("threshold exceeds set size");
    if (a == b || ell == 0) return true;
    auto stuck = [&](const VertexSet& s) { return static_cast<int>(s.size()) == ell && is_dominating(g, s); };
    return !stuck(a) && !stuck(b);
}

/// RIS row of a chordal leaf for start set i: alpha everywhere, except
/// |i| at ell = |i| when i dominates.
inline std::vector<int> leaf_ris_values(const Graph& g, const VertexSet& i) {
    const auto peo = detail::require_chordal(g);
    detail::require_leaf_set(g, i, "start set");
    const int alpha = alpha_chordal(g, peo).alpha;
    const int base = static_cast<int>(i.size());
    std::vector<int> values(static_cast<std::size_t>(base) + 1, alpha);
    if (is_dominating(g, i)) values[static_cast<std::size_t>(base)] = base;
    return values;
}

}  // namespace recon
