#pragma once

#include <algorithm>
#include <cstddef>
#include <optional>
#include <string>
#include <utility>
#include <vector>

#include "recon/chordal.hpp"
#include "recon/cotree.hpp"
#include "recon/errors.hpp"
#include "recon/graph.hpp"

namespace recon {

struct StableTuple {
    int x = 0;
    int y = 0;
    friend bool operator==(const StableTuple&, const StableTuple&) = default;
};

/// RIS_ell(u) for ell = 0..base_size, where base_size = |I ∩ V_u|. Union
/// nodes also carry the maximum ell-stable tuple for every ell.
struct RisTable {
    NodeId node = kNoNode;
    int base_size = 0;
    std::vector<int> values;
    std::vector<StableTuple> tuples;

    /// Negative thresholds read as threshold 0.
    int at(int ell) const {
        if (ell < 0) ell = 0;
        if (ell > base_size) throw InternalError("RIS lookup above base size");
        return values[static_cast<std::size_t>(ell)];
    }
    int alpha() const { return values.front(); }
    bool has_tuples() const { return !tuples.empty(); }
};

/// Trivial leaf: RIS_ell = 1 for every ell.
inline RisTable ris_trivial_leaf(bool occupied) {
    RisTable t;
    t.base_size = occupied ? 1 : 0;
    t.values.assign(static_cast<std::size_t>(t.base_size) + 1, 1);
    return t;
}

/// Chordal leaf table (see leaf_ris_values).
inline RisTable leaf_ris_table(const Graph& g, const VertexSet& i) {
    RisTable t;
    t.base_size = static_cast<int>(i.size());
    t.values = leaf_ris_values(g, i);
    return t;
}

/// Join node: tokens can only sit on one side, so above threshold 0 the
/// occupied child alone decides; at threshold 0 the answer is alpha(G_u).
inline RisTable ris_join(const RisTable& v, const RisTable& w) {
    if (v.base_size > 0 && w.base_size > 0)
        throw InternalError("independent set occupies both sides of a join");
    const RisTable& occupied = w.base_size > 0 ? w : v;
    RisTable u;
    u.base_size = occupied.base_size;
    u.values = occupied.values;
    u.values[0] = std::max(v.alpha(), w.alpha());
    return u;
}

/// Union node. For ell from |I ∩ V_u| down to 0, iterate
///   a := max(0, ell - RIS_b(w)),  b := max(0, ell - RIS_a(v))
/// to its fixpoint; the fixpoint is the maximum ell-stable tuple (a, b) and
/// RIS_ell(u) = RIS_a(v) + RIS_b(w). Since (a, b) only ever decreases, the
/// total number of reassignments is O(|I ∩ V_u|); it is reported through
/// `reassignments` when given.
inline RisTable ris_union(const RisTable& v, const RisTable& w, std::size_t* reassignments = nullptr) {
    RisTable u;
    u.base_size = v.base_size + w.base_size;
    u.values.assign(static_cast<std::size_t>(u.base_size) + 1, 0);
    u.tuples.assign(static_cast<std::size_t>(u.base_size) + 1, {});
    int a = v.base_size;
    int b = w.base_size;
    std::size_t steps = 0;
    for (int ell = u.base_size; ell >= 0; --ell) {
        while (true) {
            const int prev_a = a;
            const int prev_b = b;
            a = std::max(0, ell - w.at(prev_b));
            b = std::max(0, ell - v.at(prev_a));
            ++steps;
            RECON_DEBUG_ASSERT(a <= prev_a && b <= prev_b, "stable-tuple iteration must not increase");
            RECON_DEBUG_ASSERT(a >= ell - w.at(b) && b >= ell - v.at(a), "pre-stable invariant");
            if (a == prev_a && b == prev_b) break;
        }
        u.tuples[static_cast<std::size_t>(ell)] = {a, b};
        u.values[static_cast<std::size_t>(ell)] = v.at(a) + w.at(b);
    }
    if (reassignments) *reassignments += steps;
    return u;
}

namespace detail {

inline std::vector<char> membership(const Cotree& t, const VertexSet& i) {
    i.check_range(t.vertex_count());
    return i.mask(t.vertex_count());
}

/// I ∩ V_u in the leaf graph's local ids.
inline VertexSet local_set(const Cotree& t, NodeId u, const std::vector<char>& in) {
    std::vector<Vertex> local;
    auto vs = t.vertices(u);
    for (std::size_t j = 0; j < vs.size(); ++j)
        if (in[static_cast<std::size_t>(vs[j])]) local.push_back(static_cast<Vertex>(j));
    return VertexSet(std::move(local));
}

}  // namespace detail

/// Bottom-up pass over the whole tree. Indexed by node id.
inline std::vector<RisTable> compute_ris_tables(const Cotree& t, const VertexSet& i,
                                                std::size_t* reassignments = nullptr) {
    const auto in = detail::membership(t, i);
    std::vector<RisTable> tables(static_cast<std::size_t>(t.node_count()));
    for (NodeId u : t.postorder()) {
        RisTable table;
        if (t.is_trivial_leaf(u)) {
            table = ris_trivial_leaf(in[static_cast<std::size_t>(t.vertices(u)[0])] != 0);
        } else if (t.is_leaf(u)) {
            table = leaf_ris_table(t.leaf_graph(u), detail::local_set(t, u, in));
        } else {
            const RisTable& lv = tables[static_cast<std::size_t>(t.left(u))];
            const RisTable& rw = tables[static_cast<std::size_t>(t.right(u))];
            if (t.kind(u) == NodeKind::Join) {
                if (lv.base_size > 0 && rw.base_size > 0)
                    throw InputError("set is not independent: it has vertices on both sides of a join");
                table = ris_join(lv, rw);
            } else {
                table = ris_union(lv, rw, reassignments);
            }
        }
        table.node = u;
        tables[static_cast<std::size_t>(u)] = std::move(table);
    }
    return tables;
}

/// Top-down values for one start set and threshold k.
struct NodeValues {
    std::vector<int> freedom;
    /// Largest token count V_u can hold over reachable configurations; 0 when blocked.
    std::vector<int> cap;
    /// V_u can never receive a token (an ancestor join keeps the other side occupied).
    std::vector<char> blocked;
};

/// Joins pass freedom to the occupied child (left when neither is occupied)
/// and 0 to the other; unions look up the maximum stable tuple at
/// ell = freedom(u).
inline NodeValues compute_freedom(const Cotree& t, const VertexSet& i, int k, const std::vector<RisTable>& ris) {
    if (k < 0 || k > static_cast<int>(i.size())) throw InputError("threshold k must lie in 0..|I|");
    if (static_cast<int>(ris.size()) != t.node_count()) throw InternalError("RIS tables do not match tree");
    const auto count = static_cast<std::size_t>(t.node_count());
    NodeValues out{std::vector<int>(count, 0), std::vector<int>(count, 0), std::vector<char>(count, 0)};
    const auto at = [](auto& vec, NodeId u) -> auto& { return vec[static_cast<std::size_t>(u)]; };
    at(out.freedom, t.root()) = k;
    for (NodeId u : t.preorder()) {
        const int f = at(out.freedom, u);
        const RisTable& table = at(ris, u);
        RECON_DEBUG_ASSERT(f >= 0 && f <= table.base_size, "freedom outside 0..|I ∩ V_u|");
        at(out.cap, u) = at(out.blocked, u) ? 0 : table.at(f);
        if (t.is_leaf(u)) continue;
        const NodeId l = t.left(u);
        const NodeId r = t.right(u);
        at(out.blocked, l) = at(out.blocked, r) = at(out.blocked, u);
        if (t.kind(u) == NodeKind::Join) {
            const bool right_occupied = at(ris, r).base_size > 0;
            const NodeId occupied = right_occupied ? r : l;
            const NodeId empty = right_occupied ? l : r;
            at(out.freedom, occupied) = f;
            at(out.freedom, empty) = 0;
            if (f >= 1) at(out.blocked, empty) = 1;
        } else {
            const StableTuple st = table.tuples[static_cast<std::size_t>(f)];
            at(out.freedom, l) = st.x;
            at(out.freedom, r) = st.y;
        }
    }
    return out;
}

enum class FailureKind { FreedomMismatch, LeafUnreachable, BelowThreshold };

inline const char* to_string(FailureKind k) {
    switch (k) {
        case FailureKind::FreedomMismatch: return "freedom-mismatch";
        case FailureKind::LeafUnreachable: return "leaf-unreachable";
        case FailureKind::BelowThreshold: return "below-threshold";
    }
    return "?";
}

struct Failure {
    NodeId node = kNoNode;
    FailureKind kind = FailureKind::FreedomMismatch;
    int freedom_a = 0;
    int freedom_b = 0;
};

struct Decision {
    bool reachable = false;
    std::optional<Failure> failure;
};

/// Everything the two DP passes produce for one start set.
struct Analysis {
    std::vector<RisTable> ris;
    NodeValues values;
};

inline Analysis analyze(const Cotree& t, const VertexSet& i, int k) {
    Analysis a;
    a.ris = compute_ris_tables(t, i);
    a.values = compute_freedom(t, i, k, a.ris);
    return a;
}

/// Decision on a prebuilt (generalized) cotree. Sets must already be
/// validated and of size >= k.
inline Decision decide_on(const Cotree& t, const VertexSet& a, const VertexSet& b, int k) {
    const Analysis fa = analyze(t, a, k);
    const Analysis fb = analyze(t, b, k);
    const auto in_a = detail::membership(t, a);
    const auto in_b = detail::membership(t, b);
    for (NodeId u : t.preorder()) {
        const int xa = fa.values.freedom[static_cast<std::size_t>(u)];
        const int xb = fb.values.freedom[static_cast<std::size_t>(u)];
        if (xa != xb) return {false, Failure{u, FailureKind::FreedomMismatch, xa, xb}};
        if (t.is_leaf(u) && !t.is_trivial_leaf(u) &&
            !leaf_reachable(t.leaf_graph(u), detail::local_set(t, u, in_a), detail::local_set(t, u, in_b), xa))
            return {false, Failure{u, FailureKind::LeafUnreachable, xa, xb}};
    }
    return {true, std::nullopt};
}

namespace detail {

inline void require_independent(const Graph& g, const VertexSet& s, const char* name) {
    s.check_range(g.size());
    if (!is_independent(g, s)) throw InputError(std::string(name) + " is not an independent set");
}

}  // namespace detail

/// Is b reachable from a in TAR_k(g)? Works for every graph whose maximal
/// cotree decomposition has chordal leaves; other leaves raise
/// UnsupportedGraphClass.
inline Decision decide(const Graph& g, const VertexSet& a, const VertexSet& b, int k) {
    detail::require_independent(g, a, "A");
    detail::require_independent(g, b, "B");
    if (k < 0) throw InputError("threshold k must be nonnegative");
    if (static_cast<int>(a.size()) < k || static_cast<int>(b.size()) < k)
        return {false, Failure{kNoNode, FailureKind::BelowThreshold, static_cast<int>(a.size()), static_cast<int>(b.size())}};
    if (k == 0 || a == b) return {true, std::nullopt};
    return decide_on(build_maximal_cotree(g), a, b, k);
}

/// Token jumping between equal-size sets, via TAR at threshold |a| - 1.
inline bool tj_decide(const Graph& g, const VertexSet& a, const VertexSet& b) {
    if (a.size() != b.size()) throw InputError("token jumping needs |A| = |B|");
    detail::require_independent(g, a, "A");
    detail::require_independent(g, b, "B");
    if (a.empty()) return true;
    return decide(g, a, b, static_cast<int>(a.size()) - 1).reachable;
}

}  // namespace recon
