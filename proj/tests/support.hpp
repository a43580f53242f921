#pragma once

// Small brute-force helpers shared by the unit tests. They deliberately
// avoid the library's own algorithms so they can serve as references.

#include <bit>
#include <cstdint>
#include <utility>
#include <vector>

#include "recon/recon.hpp"

namespace testing_support {

using recon::Graph;
using recon::Vertex;
using recon::VertexSet;

inline Graph path(int n) {
    recon::GraphBuilder b(n);
    for (int v = 0; v + 1 < n; ++v) b.add_edge(v, v + 1);
    return std::move(b).build();
}

inline Graph cycle(int n) {
    recon::GraphBuilder b(n);
    for (int v = 0; v < n; ++v) b.add_edge(v, (v + 1) % n);
    return std::move(b).build();
}

inline Graph complete(int n) {
    recon::GraphBuilder b(n);
    for (int u = 0; u < n; ++u)
        for (int v = u + 1; v < n; ++v) b.add_edge(u, v);
    return std::move(b).build();
}

inline bool subset_independent(const Graph& g, std::uint32_t s) {
    for (int u = 0; u < g.size(); ++u)
        for (int v = u + 1; v < g.size(); ++v)
            if ((s >> u & 1U) && (s >> v & 1U) && g.adjacent(u, v)) return false;
    return true;
}

inline int brute_alpha(const Graph& g) {
    int best = 0;
    for (std::uint32_t s = 0; s < (1U << g.size()); ++s)
        if (subset_independent(g, s)) best = std::max(best, std::popcount(s));
    return best;
}

/// Some vertex subset of size >= 4 induces a cycle.
inline bool has_chordless_cycle(const Graph& g) {
    const int n = g.size();
    for (std::uint32_t s = 0; s < (1U << n); ++s) {
        if (std::popcount(s) < 4) continue;
        bool all_two = true;
        for (int v = 0; v < n && all_two; ++v) {
            if (!(s >> v & 1U)) continue;
            int d = 0;
            for (int x = 0; x < n; ++x)
                if ((s >> x & 1U) && g.adjacent(v, x)) ++d;
            all_two = d == 2;
        }
        if (!all_two) continue;
        // 2-regular: a single cycle iff connected.
        const int first = std::countr_zero(s);
        std::uint32_t seen = 1U << first;
        std::vector<int> stack{first};
        while (!stack.empty()) {
            const int v = stack.back();
            stack.pop_back();
            for (int x = 0; x < n; ++x)
                if ((s >> x & 1U) && !(seen >> x & 1U) && g.adjacent(v, x)) {
                    seen |= 1U << x;
                    stack.push_back(x);
                }
        }
        if (seen == s) return true;
    }
    return false;
}

inline bool brute_module(const Graph& g, std::uint32_t m) {
    for (int x = 0; x < g.size(); ++x) {
        if (m >> x & 1U) continue;
        int seen = -1;
        for (int y = 0; y < g.size(); ++y) {
            if (!(m >> y & 1U)) continue;
            const int a = g.adjacent(x, y) ? 1 : 0;
            if (seen >= 0 && seen != a) return false;
            seen = a;
        }
    }
    return true;
}

/// Every (x, y) with x = max(0, ell - w[y]) and y = max(0, ell - v[x]).
inline std::vector<std::pair<int, int>> stable_tuples(const recon::RisTable& v, const recon::RisTable& w, int ell) {
    std::vector<std::pair<int, int>> out;
    for (int x = 0; x <= v.base_size; ++x)
        for (int y = 0; y <= w.base_size; ++y)
            if (x == std::max(0, ell - w.at(y)) && y == std::max(0, ell - v.at(x))) out.emplace_back(x, y);
    return out;
}

inline VertexSet local_restriction(const recon::Cotree& t, recon::NodeId u, const VertexSet& s) {
    std::vector<Vertex> out;
    auto vs = t.vertices(u);
    for (std::size_t j = 0; j < vs.size(); ++j)
        if (s.contains(vs[j])) out.push_back(static_cast<Vertex>(j));
    return VertexSet(std::move(out));
}

inline Graph node_graph(const Graph& g, const recon::Cotree& t, recon::NodeId u) {
    auto vs = t.vertices(u);
    return recon::induced_subgraph(g, std::span<const Vertex>(vs.data(), vs.size()));
}

}  // namespace testing_support
