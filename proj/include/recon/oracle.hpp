#pragma once

#include <algorithm>
#include <bit>
#include <cstdint>
#include <cstdlib>
#include <numeric>
#include <optional>
#include <random>
#include <string>
#include <utility>
#include <vector>

#include "recon/cotree.hpp"
#include "recon/errors.hpp"
#include "recon/graph.hpp"

namespace recon {

enum class Model { TAR, TJ };

inline const char* to_string(Model m) { return m == Model::TAR ? "tar" : "tj"; }

using Mask = std::uint64_t;

/// Largest graph the brute-force routines accept; RECON_ORACLE_CAP overrides
/// the default of 20 (clamped to 1..24; states are indexed by a 2^n table).
inline int oracle_cap() {
    if (const char* env = std::getenv("RECON_ORACLE_CAP")) {
        char* end = nullptr;
        const long v = std::strtol(env, &end, 10);
        if (end != env && *end == '\0' && v >= 1) return static_cast<int>(std::min(v, 24L));
    }
    return 20;
}

inline void require_capacity(const Graph& g) {
    if (g.size() > oracle_cap())
        throw CapacityError("brute force limited to " + std::to_string(oracle_cap()) + " vertices, got " +
                            std::to_string(g.size()));
}

inline Mask to_mask(const VertexSet& s) {
    Mask m = 0;
    for (Vertex v : s) m |= Mask{1} << v;
    return m;
}

inline VertexSet from_mask(Mask m) {
    std::vector<Vertex> ids;
    while (m) {
        ids.push_back(std::countr_zero(m));
        m &= m - 1;
    }
    return VertexSet(std::move(ids));
}

inline std::vector<Mask> neighbor_masks(const Graph& g) {
    std::vector<Mask> out(static_cast<std::size_t>(g.size()), 0);
    for (Vertex v = 0; v < g.size(); ++v)
        for (Vertex x : g.neighbors(v)) out[static_cast<std::size_t>(v)] |= Mask{1} << x;
    return out;
}

/// All independent sets with min_size <= |S| <= max_size, in increasing
/// mask order. Branches only on vertices outside the closed neighbourhood
/// of what was already chosen.
inline std::vector<Mask> independent_sets(const Graph& g, int min_size = 0, int max_size = 64) {
    require_capacity(g);
    const int n = g.size();
    const auto nb = neighbor_masks(g);
    std::vector<Mask> out;
    struct Frame {
        Vertex next;
        Mask chosen;
        Mask forbidden;
    };
    std::vector<Frame> stack{{0, 0, 0}};
    while (!stack.empty()) {
        const Frame f = stack.back();
        stack.pop_back();
        const int size = std::popcount(f.chosen);
        if (size >= min_size) out.push_back(f.chosen);
        if (size == max_size) continue;
        for (Vertex v = f.next; v < n; ++v)
            if (!((f.forbidden >> v) & 1U))
                stack.push_back({v + 1, f.chosen | (Mask{1} << v), f.forbidden | nb[static_cast<std::size_t>(v)]});
    }
    std::sort(out.begin(), out.end());
    return out;
}

/// TAR_k(g) or TJ_k(g), with states indexed densely. Edges are generated on
/// demand from the state masks.
class SolutionGraph {
public:
    SolutionGraph(const Graph& g, int k, Model model)
        : n_(g.size()), k_(k), model_(model), nb_((require_capacity(g), neighbor_masks(g))) {
        if (k < 0) throw InputError("threshold k must be nonnegative");
        states_ = model == Model::TAR ? independent_sets(g, k) : independent_sets(g, k, k);
        index_.assign(std::size_t{1} << n_, -1);
        for (std::size_t i = 0; i < states_.size(); ++i) index_[static_cast<std::size_t>(states_[i])] = static_cast<int>(i);
    }

    int size() const { return static_cast<int>(states_.size()); }
    int k() const { return k_; }
    Model model() const { return model_; }
    Mask state(int i) const { return states_[static_cast<std::size_t>(i)]; }
    const std::vector<Mask>& states() const { return states_; }

    /// -1 when m does not qualify.
    int index_of(Mask m) const {
        if (n_ < 64 && (m >> n_) != 0) return -1;
        return index_[static_cast<std::size_t>(m)];
    }

    template <class F>
    void for_each_neighbor(int i, F&& f) const {
        const Mask s = state(i);
        const Mask all = n_ == 64 ? ~Mask{0} : (Mask{1} << n_) - 1;
        if (model_ == Model::TAR) {
            for (Vertex v = 0; v < n_; ++v) {
                const Mask bit = Mask{1} << v;
                const int j = index_of(s ^ bit);
                if (j >= 0) f(j);
            }
            return;
        }
        for (Mask out = s; out; out &= out - 1) {
            const Mask rest = s & ~(out & (~out + 1));
            Mask free = all & ~s;
            for (; free; free &= free - 1) {
                const Vertex v = std::countr_zero(free);
                if (rest & nb_[static_cast<std::size_t>(v)]) continue;
                f(index_of(rest | (Mask{1} << v)));
            }
        }
    }

    /// BFS distances from i; -1 for unreachable states.
    std::vector<int> distances(int src) const {
        std::vector<int> dist(states_.size(), -1);
        std::vector<int> queue{src};
        dist[static_cast<std::size_t>(src)] = 0;
        for (std::size_t head = 0; head < queue.size(); ++head) {
            const int u = queue[head];
            const int du = dist[static_cast<std::size_t>(u)];
            for_each_neighbor(u, [&](int j) {
                if (dist[static_cast<std::size_t>(j)] < 0) {
                    dist[static_cast<std::size_t>(j)] = du + 1;
                    queue.push_back(j);
                }
            });
        }
        return dist;
    }

    /// Component label per state, labels 0.. in order of first state.
    std::vector<int> components() const {
        std::vector<int> label(states_.size(), -1);
        int next = 0;
        std::vector<int> queue;
        for (int s = 0; s < size(); ++s) {
            if (label[static_cast<std::size_t>(s)] >= 0) continue;
            queue.assign(1, s);
            label[static_cast<std::size_t>(s)] = next;
            for (std::size_t head = 0; head < queue.size(); ++head)
                for_each_neighbor(queue[head], [&](int j) {
                    if (label[static_cast<std::size_t>(j)] < 0) {
                        label[static_cast<std::size_t>(j)] = next;
                        queue.push_back(j);
                    }
                });
            ++next;
        }
        return label;
    }

private:
    int n_;
    int k_;
    Model model_;
    std::vector<Mask> nb_;
    std::vector<Mask> states_;
    std::vector<int> index_;
};

struct ReachResult {
    bool reachable = false;
    std::optional<int> distance;
};

namespace detail {

inline int require_state(const SolutionGraph& sg, const VertexSet& s, const char* name) {
    const int i = sg.index_of(to_mask(s));
    if (i < 0) throw InputError(std::string(name) + " does not qualify for the model");
    return i;
}

}  // namespace detail

inline ReachResult oracle_reach(const Graph& g, const VertexSet& a, const VertexSet& b, int k, Model model) {
    require_capacity(g);
    a.check_range(g.size());
    b.check_range(g.size());
    const SolutionGraph sg(g, k, model);
    const int src = detail::require_state(sg, a, "A");
    const int dst = detail::require_state(sg, b, "B");
    const int d = sg.distances(src)[static_cast<std::size_t>(dst)];
    if (d < 0) return {false, std::nullopt};
    return {true, d};
}

/// Every state reachable from a in TAR_k(g), as masks.
inline std::vector<Mask> reachable_family(const Graph& g, const VertexSet& a, int k, Model model = Model::TAR) {
    a.check_range(g.size());
    const SolutionGraph sg(g, k, model);
    const auto dist = sg.distances(detail::require_state(sg, a, "start set"));
    std::vector<Mask> out;
    for (int i = 0; i < sg.size(); ++i)
        if (dist[static_cast<std::size_t>(i)] >= 0) out.push_back(sg.state(i));
    return out;
}

/// min |J ∩ V_u| over sets J reachable from a at threshold k.
inline int oracle_freedom(const Graph& g, const Cotree& t, const VertexSet& a, int k, NodeId node) {
    Mask vu = 0;
    for (Vertex v : t.vertices(node)) vu |= Mask{1} << v;
    int best = 64;
    for (Mask j : reachable_family(g, a, k)) best = std::min(best, std::popcount(j & vu));
    return best;
}

/// Largest independent set of g_u reachable from i at threshold ell.
inline int oracle_ris(const Graph& g_u, const VertexSet& i, int ell) {
    int best = 0;
    for (Mask j : reachable_family(g_u, i, ell)) best = std::max(best, std::popcount(j));
    return best;
}

/// Union of all sets reachable from a at threshold k.
inline VertexSet oracle_accessible(const Graph& g, const VertexSet& a, int k) {
    Mask all = 0;
    for (Mask j : reachable_family(g, a, k)) all |= j;
    return from_mask(all);
}

/// Largest distance between two states of one component (0 when there are
/// no edges or no states).
inline int oracle_diameter(const Graph& g, int k, Model model) {
    const SolutionGraph sg(g, k, model);
    int best = 0;
    for (int s = 0; s < sg.size(); ++s)
        for (int d : sg.distances(s)) best = std::max(best, d);
    return best;
}

// ---------------------------------------------------------------------------
// Random instances. All generators are deterministic in their seed.

namespace detail {

inline std::vector<Vertex> random_permutation(int n, std::mt19937_64& rng) {
    std::vector<Vertex> p(static_cast<std::size_t>(n));
    std::iota(p.begin(), p.end(), 0);
    std::shuffle(p.begin(), p.end(), rng);
    return p;
}

inline int uniform(std::mt19937_64& rng, int lo, int hi) {
    return std::uniform_int_distribution<int>(lo, hi)(rng);
}

}  // namespace detail

struct GeneratedCograph {
    Graph graph;
    Cotree tree;
};

/// Random binary cotree on n leaves: each internal node splits its leaves at
/// a uniform point and takes a fair-coin union/join label. Leaf ids are a
/// random permutation of 0..n-1.
inline GeneratedCograph gen_cograph(int n, std::uint64_t seed) {
    if (n < 1) throw InputError("gen_cograph needs n >= 1");
    std::mt19937_64 rng(seed);
    const auto label = detail::random_permutation(n, rng);
    CotreeBuilder b;
    // Frames cover leaf ranges [lo, hi); the combine step runs after both halves.
    struct Frame {
        int lo, hi, mid;
        bool combine;
        bool join;
    };
    std::vector<Frame> stack{{0, n, 0, false, false}};
    std::vector<NodeId> built;
    while (!stack.empty()) {
        Frame f = stack.back();
        stack.pop_back();
        if (f.combine) {
            const NodeId r = built.back();
            built.pop_back();
            const NodeId l = built.back();
            built.pop_back();
            built.push_back(f.join ? b.join(l, r) : b.unite(l, r));
            continue;
        }
        if (f.hi - f.lo == 1) {
            built.push_back(b.leaf(label[static_cast<std::size_t>(f.lo)]));
            continue;
        }
        const int mid = detail::uniform(rng, f.lo + 1, f.hi - 1);
        const bool join = detail::uniform(rng, 0, 1) == 1;
        stack.push_back({f.lo, f.hi, mid, true, join});
        stack.push_back({mid, f.hi, 0, false, false});
        stack.push_back({f.lo, mid, 0, false, false});
    }
    Cotree t = std::move(b).build(built.back());
    Graph g = realize(t);
    return {std::move(g), std::move(t)};
}

/// Random chordal graph grown along a perfect elimination ordering: each new
/// vertex attaches to a clique of earlier vertices, grown from a random
/// seed vertex by keeping each common neighbour with probability `density`.
/// Vertex ids are shuffled afterwards.
inline Graph gen_chordal(int n, double density, std::uint64_t seed) {
    if (n < 1) throw InputError("gen_chordal needs n >= 1");
    std::mt19937_64 rng(seed);
    std::bernoulli_distribution keep(std::clamp(density, 0.0, 1.0));
    std::bernoulli_distribution isolated(0.1);
    const auto label = detail::random_permutation(n, rng);
    std::vector<std::vector<char>> adj(static_cast<std::size_t>(n), std::vector<char>(static_cast<std::size_t>(n), 0));
    GraphBuilder b(n);
    for (int v = 1; v < n; ++v) {
        if (isolated(rng)) continue;
        std::vector<int> clique{detail::uniform(rng, 0, v - 1)};
        std::vector<int> candidates;
        for (int y = 0; y < v; ++y)
            if (adj[static_cast<std::size_t>(clique[0])][static_cast<std::size_t>(y)]) candidates.push_back(y);
        std::shuffle(candidates.begin(), candidates.end(), rng);
        for (int y : candidates) {
            bool all = true;
            for (int c : clique) all = all && adj[static_cast<std::size_t>(c)][static_cast<std::size_t>(y)];
            if (all && keep(rng)) clique.push_back(y);
        }
        for (int c : clique) {
            adj[static_cast<std::size_t>(c)][static_cast<std::size_t>(v)] = adj[static_cast<std::size_t>(v)][static_cast<std::size_t>(c)] = 1;
            b.add_edge(label[static_cast<std::size_t>(c)], label[static_cast<std::size_t>(v)]);
        }
    }
    return std::move(b).build();
}

struct ComposedSpec {
    int n = 12;
    int min_part = 1;
    int max_part = 5;
    double density = 0.5;
};

/// Random chordal parts combined by a random binary union/join tree.
inline Graph gen_composed(const ComposedSpec& spec, std::uint64_t seed) {
    if (spec.n < 1 || spec.min_part < 1 || spec.max_part < spec.min_part)
        throw InputError("gen_composed: bad part sizes");
    std::mt19937_64 rng(seed);
    const auto label = detail::random_permutation(spec.n, rng);
    GraphBuilder b(spec.n);
    std::vector<std::vector<Vertex>> groups;
    int placed = 0;
    while (placed < spec.n) {
        const int size = std::min(spec.n - placed, detail::uniform(rng, spec.min_part, spec.max_part));
        const Graph part = gen_chordal(size, spec.density, rng());
        std::vector<Vertex> ids;
        for (int j = 0; j < size; ++j) ids.push_back(label[static_cast<std::size_t>(placed + j)]);
        for (auto [u, v] : part.edges()) b.add_edge(ids[static_cast<std::size_t>(u)], ids[static_cast<std::size_t>(v)]);
        groups.push_back(std::move(ids));
        placed += size;
    }
    while (groups.size() > 1) {
        const auto i = static_cast<std::size_t>(detail::uniform(rng, 0, static_cast<int>(groups.size()) - 1));
        auto first = std::move(groups[i]);
        groups.erase(groups.begin() + static_cast<std::ptrdiff_t>(i));
        const auto j = static_cast<std::size_t>(detail::uniform(rng, 0, static_cast<int>(groups.size()) - 1));
        if (detail::uniform(rng, 0, 1)) b.join(first, groups[j]);
        groups[j].insert(groups[j].end(), first.begin(), first.end());
    }
    return std::move(b).build();
}

/// Independent set built greedily over a random vertex order, keeping each
/// admissible vertex with probability p.
inline VertexSet random_independent_set(const Graph& g, std::mt19937_64& rng, double p = 0.7) {
    std::bernoulli_distribution take(p);
    std::vector<char> banned(static_cast<std::size_t>(g.size()), 0);
    std::vector<Vertex> out;
    for (Vertex v : detail::random_permutation(g.size(), rng)) {
        if (banned[static_cast<std::size_t>(v)] || !take(rng)) continue;
        out.push_back(v);
        for (Vertex x : g.neighbors(v)) banned[static_cast<std::size_t>(x)] = 1;
    }
    return VertexSet(std::move(out));
}

struct Triple {
    VertexSet a;
    VertexSet b;
    int k = 0;
};

/// Random (A, B, k) with |A|, |B| >= k. Half the time B is drawn from the
/// sets reachable from A, so both answers show up often.
inline Triple sample_triple(const Graph& g, std::mt19937_64& rng) {
    Triple t;
    t.a = random_independent_set(g, rng);
    t.k = detail::uniform(rng, 0, static_cast<int>(t.a.size()));
    if (detail::uniform(rng, 0, 1) && g.size() <= oracle_cap()) {
        const auto family = reachable_family(g, t.a, t.k);
        t.b = from_mask(family[static_cast<std::size_t>(detail::uniform(rng, 0, static_cast<int>(family.size()) - 1))]);
        return t;
    }
    for (int attempt = 0; attempt < 20; ++attempt) {
        VertexSet b = random_independent_set(g, rng);
        if (static_cast<int>(b.size()) >= t.k) {
            t.b = std::move(b);
            return t;
        }
    }
    t.b = t.a;
    return t;
}

}  // namespace recon
