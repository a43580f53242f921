#pragma once

#include <algorithm>
#include <bit>
#include <cstdint>
#include <initializer_list>
#include <span>
#include <string>
#include <utility>
#include <vector>

#include "recon/errors.hpp"

namespace recon {

using Vertex = int;

/// Sorted set of vertex ids without duplicates.
class VertexSet {
public:
    VertexSet() = default;
    VertexSet(std::initializer_list<Vertex> ids) : VertexSet(std::vector<Vertex>(ids)) {}

    /// Throws InputError on duplicate or negative ids.
    explicit VertexSet(std::vector<Vertex> ids) : ids_(std::move(ids)) {
        std::sort(ids_.begin(), ids_.end());
        for (std::size_t i = 0; i < ids_.size(); ++i) {
            if (ids_[i] < 0) throw InputError("negative vertex id " + std::to_string(ids_[i]));
            if (i > 0 && ids_[i] == ids_[i - 1])
                throw InputError("duplicate vertex id " + std::to_string(ids_[i]));
        }
    }

    static VertexSet from_mask(const std::vector<char>& mask) {
        VertexSet s;
        for (std::size_t v = 0; v < mask.size(); ++v)
            if (mask[v]) s.ids_.push_back(static_cast<Vertex>(v));
        return s;
    }

    std::size_t size() const { return ids_.size(); }
    bool empty() const { return ids_.empty(); }
    bool contains(Vertex v) const { return std::binary_search(ids_.begin(), ids_.end(), v); }
    auto begin() const { return ids_.begin(); }
    auto end() const { return ids_.end(); }
    Vertex operator[](std::size_t i) const { return ids_[i]; }
    const std::vector<Vertex>& ids() const { return ids_; }

    /// Throws InputError naming the first id that is out of range for n vertices.
    void check_range(int n) const {
        for (Vertex v : ids_)
            if (v >= n)
                throw InputError("vertex id " + std::to_string(v) + " out of range (n=" +
                                 std::to_string(n) + ")");
    }

    std::vector<char> mask(int n) const {
        std::vector<char> m(static_cast<std::size_t>(n), 0);
        for (Vertex v : ids_) m[static_cast<std::size_t>(v)] = 1;
        return m;
    }

    std::string to_string() const {
        std::string out = "{";
        for (std::size_t i = 0; i < ids_.size(); ++i) {
            if (i) out += ',';
            out += std::to_string(ids_[i]);
        }
        return out + "}";
    }

    friend bool operator==(const VertexSet&, const VertexSet&) = default;
    friend auto operator<=>(const VertexSet&, const VertexSet&) = default;

private:
    std::vector<Vertex> ids_;
};

class GraphBuilder;

/// Simple undirected graph over dense ids 0..n-1, stored as a bit matrix.
/// Immutable once built. Every graph remembers, per vertex, the id that
/// vertex had in the graph it was ultimately extracted from.
class Graph {
public:
    Graph() = default;

    /// Edgeless graph on n vertices.
    explicit Graph(int n)
        : n_(n), words_((n + 63) / 64), bits_(static_cast<std::size_t>(n) * static_cast<std::size_t>((n + 63) / 64), 0),
          origin_(static_cast<std::size_t>(n)) {
        if (n < 0) throw InputError("negative vertex count");
        for (int v = 0; v < n; ++v) origin_[static_cast<std::size_t>(v)] = v;
    }

    int size() const { return n_; }
    std::size_t edge_count() const { return edges_; }

    bool adjacent(Vertex u, Vertex v) const {
        return (row(u)[v >> 6] >> (v & 63)) & 1U;
    }

    std::span<const std::uint64_t> row(Vertex v) const {
        return {bits_.data() + static_cast<std::size_t>(v) * static_cast<std::size_t>(words_),
                static_cast<std::size_t>(words_)};
    }

    std::vector<Vertex> neighbors(Vertex v) const {
        std::vector<Vertex> out;
        auto r = row(v);
        for (int w = 0; w < words_; ++w) {
            std::uint64_t word = r[static_cast<std::size_t>(w)];
            while (word) {
                out.push_back(w * 64 + std::countr_zero(word));
                word &= word - 1;
            }
        }
        return out;
    }

    int degree(Vertex v) const {
        int d = 0;
        for (std::uint64_t word : row(v)) d += std::popcount(word);
        return d;
    }

    /// Id of v in the root graph this one was extracted from (identity for roots).
    Vertex origin(Vertex v) const { return origin_[static_cast<std::size_t>(v)]; }
    const std::vector<Vertex>& origins() const { return origin_; }

    std::vector<std::pair<Vertex, Vertex>> edges() const {
        std::vector<std::pair<Vertex, Vertex>> out;
        out.reserve(edges_);
        for (Vertex u = 0; u < n_; ++u)
            for (Vertex v : neighbors(u))
                if (u < v) out.emplace_back(u, v);
        return out;
    }

    friend bool operator==(const Graph& a, const Graph& b) {
        return a.n_ == b.n_ && a.bits_ == b.bits_;
    }

private:
    friend class GraphBuilder;

    std::uint64_t* mutable_row(Vertex v) {
        return bits_.data() + static_cast<std::size_t>(v) * static_cast<std::size_t>(words_);
    }

    int n_ = 0;
    int words_ = 0;
    std::size_t edges_ = 0;
    std::vector<std::uint64_t> bits_;
    std::vector<Vertex> origin_;
};

/// Accumulates edges, then hands out an immutable Graph.
class GraphBuilder {
public:
    explicit GraphBuilder(int n) : g_(n) {}

    int size() const { return g_.n_; }

    /// Returns false if the edge was already present. Throws on self-loops and bad ids.
    bool add_edge(Vertex u, Vertex v) {
        if (u < 0 || v < 0 || u >= g_.n_ || v >= g_.n_)
            throw InputError("edge " + std::to_string(u) + " " + std::to_string(v) +
                             " out of range (n=" + std::to_string(g_.n_) + ")");
        if (u == v) throw InputError("self-loop on vertex " + std::to_string(u));
        if (g_.adjacent(u, v)) return false;
        g_.mutable_row(u)[v >> 6] |= std::uint64_t{1} << (v & 63);
        g_.mutable_row(v)[u >> 6] |= std::uint64_t{1} << (u & 63);
        ++g_.edges_;
        return true;
    }

    /// Adds every edge between the two disjoint vertex lists.
    void join(std::span<const Vertex> left, std::span<const Vertex> right) {
        for (Vertex u : left)
            for (Vertex v : right) add_edge(u, v);
    }

    void set_origins(std::vector<Vertex> origin) {
        if (origin.size() != static_cast<std::size_t>(g_.n_)) throw InternalError("origin map size mismatch");
        g_.origin_ = std::move(origin);
    }

    Graph build() && { return std::move(g_); }
    Graph build() const& { return g_; }

private:
    Graph g_;
};

inline Graph make_graph(int n, std::initializer_list<std::pair<Vertex, Vertex>> edges) {
    GraphBuilder b(n);
    for (auto [u, v] : edges) b.add_edge(u, v);
    return std::move(b).build();
}

/// True iff no two members of s are adjacent.
inline bool is_independent(const Graph& g, const VertexSet& s) {
    s.check_range(g.size());
    std::vector<std::uint64_t> bits(static_cast<std::size_t>((g.size() + 63) / 64), 0);
    for (Vertex v : s) bits[static_cast<std::size_t>(v >> 6)] |= std::uint64_t{1} << (v & 63);
    for (Vertex v : s) {
        auto r = g.row(v);
        for (std::size_t w = 0; w < bits.size(); ++w)
            if (r[w] & bits[w]) return false;
    }
    return true;
}

/// True iff every vertex outside m sees all of m or none of m.
inline bool is_module(const Graph& g, const VertexSet& m) {
    if (m.empty()) throw InputError("module test on an empty set");
    m.check_range(g.size());
    const auto inside = m.mask(g.size());
    for (Vertex x = 0; x < g.size(); ++x) {
        if (inside[static_cast<std::size_t>(x)]) continue;
        const bool first = g.adjacent(x, m[0]);
        for (Vertex y : m)
            if (g.adjacent(x, y) != first) return false;
    }
    return true;
}

/// Subgraph on s; vertex i of the result is s[i] of g.
inline Graph induced_subgraph(const Graph& g, std::span<const Vertex> s) {
    GraphBuilder b(static_cast<int>(s.size()));
    std::vector<Vertex> origin(s.size());
    for (std::size_t i = 0; i < s.size(); ++i) {
        if (s[i] < 0 || s[i] >= g.size()) throw InputError("vertex id " + std::to_string(s[i]) + " out of range");
        origin[i] = g.origin(s[i]);
        for (std::size_t j = i + 1; j < s.size(); ++j)
            if (g.adjacent(s[i], s[j])) b.add_edge(static_cast<Vertex>(i), static_cast<Vertex>(j));
    }
    b.set_origins(std::move(origin));
    return std::move(b).build();
}

inline Graph induced_subgraph(const Graph& g, const VertexSet& s) {
    return induced_subgraph(g, std::span<const Vertex>(s.ids()));
}

inline Graph complement(const Graph& g) {
    GraphBuilder b(g.size());
    for (Vertex u = 0; u < g.size(); ++u)
        for (Vertex v = u + 1; v < g.size(); ++v)
            if (!g.adjacent(u, v)) b.add_edge(u, v);
    b.set_origins(g.origins());
    return std::move(b).build();
}

/// Connected components of g[vertices] (or of its complement), each sorted,
/// ordered by smallest member. O(|vertices|^2) adjacency probes; the
/// complement is never materialized.
inline std::vector<std::vector<Vertex>> components(const Graph& g, std::span<const Vertex> vertices,
                                                   bool in_complement = false) {
    std::vector<Vertex> unvisited(vertices.begin(), vertices.end());
    std::sort(unvisited.begin(), unvisited.end());
    std::vector<std::vector<Vertex>> out;
    std::vector<Vertex> queue;
    std::vector<Vertex> keep;
    while (!unvisited.empty()) {
        // Take the smallest remaining vertex as the next seed.
        std::vector<Vertex> comp{unvisited.front()};
        unvisited.erase(unvisited.begin());
        queue.assign(1, comp.front());
        while (!queue.empty() && !unvisited.empty()) {
            const Vertex v = queue.back();
            queue.pop_back();
            keep.clear();
            for (Vertex x : unvisited) {
                if (g.adjacent(v, x) != in_complement) {
                    comp.push_back(x);
                    queue.push_back(x);
                } else {
                    keep.push_back(x);
                }
            }
            unvisited.swap(keep);
        }
        std::sort(comp.begin(), comp.end());
        out.push_back(std::move(comp));
    }
    return out;
}

inline bool is_connected(const Graph& g) {
    std::vector<Vertex> all(static_cast<std::size_t>(g.size()));
    for (Vertex v = 0; v < g.size(); ++v) all[static_cast<std::size_t>(v)] = v;
    return components(g, all).size() <= 1;
}

}  // namespace recon
