#pragma once

#include <algorithm>
#include <optional>
#include <string>
#include <unordered_map>
#include <utility>
#include <vector>

#include "recon/cotree.hpp"
#include "recon/dp.hpp"
#include "recon/errors.hpp"
#include "recon/graph.hpp"

namespace recon {

struct Move {
    enum class Op { Add, Remove };
    Op op = Op::Add;
    Vertex v = 0;
    friend bool operator==(const Move&, const Move&) = default;
};

/// A k-TAR-sequence stored as its first set plus one add/remove per step.
struct TarSequence {
    VertexSet start;
    std::vector<Move> moves;
    int k = 0;

    std::size_t length() const { return moves.size(); }

    /// Every set of the sequence, start first. O(length * n); meant for
    /// small instances and printing.
    std::vector<VertexSet> sets() const {
        std::vector<VertexSet> out{start};
        std::vector<Vertex> cur = start.ids();
        for (const Move& m : moves) {
            if (m.op == Move::Op::Add) {
                cur.insert(std::upper_bound(cur.begin(), cur.end(), m.v), m.v);
            } else {
                cur.erase(std::lower_bound(cur.begin(), cur.end(), m.v));
            }
            out.push_back(VertexSet(cur));
        }
        return out;
    }

    VertexSet finish() const {
        std::vector<char> in;
        Vertex hi = 0;
        for (Vertex v : start) hi = std::max(hi, v);
        for (const Move& m : moves) hi = std::max(hi, m.v);
        in.assign(static_cast<std::size_t>(hi) + 1, 0);
        for (Vertex v : start) in[static_cast<std::size_t>(v)] = 1;
        for (const Move& m : moves) in[static_cast<std::size_t>(m.v)] = m.op == Move::Op::Add;
        return VertexSet::from_mask(in);
    }
};

/// Checks that seq is a k-TAR-sequence in g from `from` to `to`: every set
/// independent and of size >= k, each step a single add or remove of a
/// vertex (never a no-op). Returns a description of the first violation.
inline std::optional<std::string> check_sequence(const Graph& g, const TarSequence& seq, const VertexSet& from,
                                                 const VertexSet& to) {
    const int n = g.size();
    if (seq.start != from) return "sequence does not start at " + from.to_string();
    for (Vertex v : seq.start)
        if (v >= n) return "start set has out-of-range vertex " + std::to_string(v);
    if (!is_independent(g, seq.start)) return "start set is not independent";
    if (static_cast<int>(seq.start.size()) < seq.k) return "start set below threshold";
    std::vector<char> in = seq.start.mask(n);
    std::size_t size = seq.start.size();
    std::size_t step = 0;
    for (const Move& m : seq.moves) {
        ++step;
        const std::string where = " at step " + std::to_string(step);
        if (m.v < 0 || m.v >= n) return "vertex out of range" + where;
        auto& slot = in[static_cast<std::size_t>(m.v)];
        if (m.op == Move::Op::Add) {
            if (slot) return "adding a vertex already present" + where;
            for (Vertex x : g.neighbors(m.v))
                if (in[static_cast<std::size_t>(x)]) return "addition breaks independence" + where;
            slot = 1;
            ++size;
        } else {
            if (!slot) return "removing an absent vertex" + where;
            slot = 0;
            --size;
            if (static_cast<int>(size) < seq.k) return "size drops below k" + where;
        }
    }
    if (VertexSet::from_mask(in) != to) return "sequence does not end at " + to.to_string();
    return std::nullopt;
}

/// One C_i -> C_{i+1} transition: drop `removed`, then place `added`.
struct SuStep {
    std::vector<Vertex> removed;
    std::vector<Vertex> added;
};

/// Short universal sequence C_0, ..., C_p for one node, kept as C_0 plus
/// the transitions between consecutive sets.
struct SuSequence {
    NodeId node = kNoNode;
    VertexSet start;
    std::vector<SuStep> steps;

    std::size_t p() const { return steps.size(); }

    std::vector<VertexSet> sets() const {
        std::vector<VertexSet> out{start};
        std::vector<Vertex> cur = start.ids();
        for (const SuStep& s : steps) {
            for (Vertex v : s.removed) cur.erase(std::find(cur.begin(), cur.end(), v));
            cur.insert(cur.end(), s.added.begin(), s.added.end());
            out.push_back(VertexSet(cur));
        }
        return out;
    }

    std::vector<Vertex> last() const {
        std::vector<Vertex> cur = start.ids();
        for (const SuStep& s : steps) {
            for (Vertex v : s.removed) cur.erase(std::find(cur.begin(), cur.end(), v));
            cur.insert(cur.end(), s.added.begin(), s.added.end());
        }
        std::sort(cur.begin(), cur.end());
        return cur;
    }

    /// Removals before additions within each transition.
    std::vector<Move> expand() const {
        std::vector<Move> out;
        for (const SuStep& s : steps) {
            for (Vertex v : s.removed) out.push_back({Move::Op::Remove, v});
            for (Vertex v : s.added) out.push_back({Move::Op::Add, v});
        }
        return out;
    }
};

namespace detail {

inline void require_cotree(const Cotree& t) {
    if (t.has_nontrivial_leaf()) throw UnsupportedGraphClass("witnesses need a cograph (cotree with trivial leaves)");
}

/// A maximum independent set of G_u in a cotree: everything at unions, the
/// child with the larger alpha at joins (left on ties).
inline std::vector<Vertex> max_independent_set(const Cotree& t, NodeId u, const std::vector<RisTable>& ris) {
    std::vector<Vertex> out;
    std::vector<NodeId> stack{u};
    while (!stack.empty()) {
        const NodeId x = stack.back();
        stack.pop_back();
        if (t.is_leaf(x)) {
            out.push_back(t.vertices(x)[0]);
        } else if (t.kind(x) == NodeKind::Union) {
            stack.push_back(t.right(x));
            stack.push_back(t.left(x));
        } else {
            const NodeId l = t.left(x);
            const NodeId r = t.right(x);
            stack.push_back(ris[static_cast<std::size_t>(r)].alpha() > ris[static_cast<std::size_t>(l)].alpha() ? r : l);
        }
    }
    std::sort(out.begin(), out.end());
    return out;
}

inline SuSequence su_leaf(const Cotree& t, NodeId u, const std::vector<char>& in) {
    const Vertex x = t.vertices(u)[0];
    SuSequence s;
    s.node = u;
    if (in[static_cast<std::size_t>(x)]) {
        s.start = VertexSet{x};
    } else {
        s.steps.push_back({{}, {x}});
    }
    return s;
}

inline SuSequence su_join(const Cotree& t, NodeId u, const std::vector<RisTable>& ris, SuSequence&& sv,
                          SuSequence&& sw) {
    const RisTable& here = ris[static_cast<std::size_t>(u)];
    if (here.base_size == 0) {
        SuSequence s;
        s.node = u;
        s.steps.push_back({{}, max_independent_set(t, u, ris)});
        return s;
    }
    const bool right_occupied = ris[static_cast<std::size_t>(t.right(u))].base_size > 0;
    SuSequence s = right_occupied ? std::move(sw) : std::move(sv);
    s.node = u;
    auto final_set = s.last();
    if (static_cast<int>(final_set.size()) < here.alpha()) {
        // A maximum independent set of G_u lies entirely on the other side;
        // every token on this side has to go first.
        s.steps.push_back({std::move(final_set), max_independent_set(t, u, ris)});
    }
    return s;
}

/// Interleaves the children's sequences: at each point pick the largest
/// ell for which one side can still improve while the other side stays
/// put, and advance that side (left on ties).
inline SuSequence su_union(const Cotree& t, NodeId u, const std::vector<RisTable>& ris, SuSequence&& sv,
                           SuSequence&& sw) {
    const RisTable& tv = ris[static_cast<std::size_t>(t.left(u))];
    const RisTable& tw = ris[static_cast<std::size_t>(t.right(u))];
    const int base = ris[static_cast<std::size_t>(u)].base_size;
    SuSequence s;
    s.node = u;
    std::vector<Vertex> start(sv.start.begin(), sv.start.end());
    start.insert(start.end(), sw.start.begin(), sw.start.end());
    s.start = VertexSet(std::move(start));
    int q = static_cast<int>(sv.start.size());
    int r = static_cast<int>(sw.start.size());
    std::size_t b = 0;
    std::size_t c = 0;
    while (q != tv.alpha() || r != tw.alpha()) {
        bool advance_left = false;
        bool found = false;
        for (int ell = base; ell >= 0 && !found; --ell) {
            if (tv.at(ell - r) > q) {
                advance_left = found = true;
            } else if (tw.at(ell - q) > r) {
                found = true;
            }
        }
        if (!found) throw InternalError("SU-sequence union step found no improving threshold");
        auto& seq = advance_left ? sv : sw;
        auto& idx = advance_left ? b : c;
        if (idx >= seq.steps.size()) throw InternalError("SU-sequence child exhausted early");
        SuStep step = std::move(seq.steps[idx++]);
        const int delta = static_cast<int>(step.added.size()) - static_cast<int>(step.removed.size());
        (advance_left ? q : r) += delta;
        s.steps.push_back(std::move(step));
    }
    return s;
}

inline SuSequence build_su_sequence_impl(const Cotree& t, NodeId target, const VertexSet& i,
                                         const std::vector<RisTable>& ris) {
    require_cotree(t);
    const auto in = membership(t, i);
    std::unordered_map<NodeId, SuSequence> done;
    // Post-order restricted to target's subtree.
    std::vector<std::pair<NodeId, bool>> stack{{target, false}};
    while (!stack.empty()) {
        auto [u, expanded] = stack.back();
        stack.pop_back();
        if (t.is_leaf(u)) {
            done.emplace(u, su_leaf(t, u, in));
            continue;
        }
        if (!expanded) {
            stack.emplace_back(u, true);
            stack.emplace_back(t.right(u), false);
            stack.emplace_back(t.left(u), false);
            continue;
        }
        auto lv = done.extract(t.left(u));
        auto rw = done.extract(t.right(u));
        done.emplace(u, t.kind(u) == NodeKind::Join ? su_join(t, u, ris, std::move(lv.mapped()), std::move(rw.mapped()))
                                                    : su_union(t, u, ris, std::move(lv.mapped()), std::move(rw.mapped())));
    }
    return std::move(done.at(target));
}

}  // namespace detail

/// SU-sequence for node u based on i (t must be a cotree: trivial leaves only).
inline SuSequence build_su_sequence(const Cotree& t, NodeId u, const VertexSet& i) {
    detail::require_cotree(t);
    return detail::build_su_sequence_impl(t, u, i, compute_ris_tables(t, i));
}

inline SuSequence build_su_sequence(const Cotree& t, NodeId u, const VertexSet& i, const std::vector<RisTable>& ris) {
    return detail::build_su_sequence_impl(t, u, i, ris);
}

/// 2|C_0 ∪ ... ∪ C_p| - |C_0| - |C_p|.
inline std::size_t su_length_formula(const SuSequence& s) {
    std::vector<Vertex> all(s.start.begin(), s.start.end());
    for (const SuStep& st : s.steps) all.insert(all.end(), st.added.begin(), st.added.end());
    std::sort(all.begin(), all.end());
    all.erase(std::unique(all.begin(), all.end()), all.end());
    return 2 * all.size() - s.start.size() - s.last().size();
}

/// Vertices that some configuration reachable at threshold k can hold:
/// those not cut off by an ancestor join whose other side must stay occupied.
inline VertexSet accessible_subgraph(const Cotree& t, const NodeValues& values, int /*k*/) {
    detail::require_cotree(t);
    std::vector<Vertex> out;
    for (Vertex v = 0; v < t.vertex_count(); ++v)
        if (!values.blocked[static_cast<std::size_t>(t.leaf_of(v))]) out.push_back(v);
    return VertexSet(std::move(out));
}

/// k-TAR-sequence from i to a maximum independent set of the cograph, of
/// length at most 2n - |i| - alpha. Needs RIS_k(root) = alpha.
inline TarSequence sequence_to_max(const Cotree& t, const VertexSet& i, int k) {
    detail::require_cotree(t);
    const auto ris = compute_ris_tables(t, i);
    const RisTable& top = ris[static_cast<std::size_t>(t.root())];
    if (k < 0 || k > top.base_size) throw InputError("threshold k must lie in 0..|I|");
    if (top.at(k) != top.alpha())
        throw InternalError("no maximum independent set is reachable at this threshold");
    const SuSequence su = detail::build_su_sequence_impl(t, t.root(), i, ris);
    return TarSequence{i, su.expand(), k};
}

namespace detail {

inline int cotree_alpha(const Cotree& t, std::vector<int>* per_node = nullptr) {
    std::vector<int> alpha(static_cast<std::size_t>(t.node_count()), 0);
    for (NodeId u : t.postorder()) {
        auto& a = alpha[static_cast<std::size_t>(u)];
        if (t.is_leaf(u)) {
            a = 1;
            continue;
        }
        const int l = alpha[static_cast<std::size_t>(t.left(u))];
        const int r = alpha[static_cast<std::size_t>(t.right(u))];
        a = t.kind(u) == NodeKind::Union ? l + r : std::max(l, r);
    }
    if (per_node) *per_node = alpha;
    return alpha[static_cast<std::size_t>(t.root())];
}

inline bool independent_in_cotree(const Cotree& t, const std::vector<char>& in) {
    std::vector<int> count(static_cast<std::size_t>(t.node_count()), 0);
    for (NodeId u : t.postorder()) {
        if (t.is_leaf(u)) {
            count[static_cast<std::size_t>(u)] = in[static_cast<std::size_t>(t.vertices(u)[0])];
            continue;
        }
        const int l = count[static_cast<std::size_t>(t.left(u))];
        const int r = count[static_cast<std::size_t>(t.right(u))];
        if (t.kind(u) == NodeKind::Join && l > 0 && r > 0) return false;
        count[static_cast<std::size_t>(u)] = l + r;
    }
    return true;
}

}  // namespace detail

/// Sequence of length exactly |a_max Δ b_max| between two maximum
/// independent sets of a cograph that reach each other at threshold k:
/// repeatedly pick a join node holding tokens of both sets whose two
/// children each hold tokens of only one, and swap that node's contents.
inline TarSequence bridge_max_sets(const Cotree& t, const VertexSet& a_max, const VertexSet& b_max, int k) {
    detail::require_cotree(t);
    const int alpha = detail::cotree_alpha(t);
    auto in_a = detail::membership(t, a_max);
    const auto in_b = detail::membership(t, b_max);
    for (const std::vector<char>* s : {&std::as_const(in_a), &in_b})
        if (!detail::independent_in_cotree(t, *s)) throw InputError("bridge endpoint is not independent");
    if (static_cast<int>(a_max.size()) != alpha || static_cast<int>(b_max.size()) != alpha)
        throw InputError("bridge endpoints must be maximum independent sets");

    TarSequence seq{a_max, {}, k};
    const auto count = static_cast<std::size_t>(t.node_count());
    std::vector<int> ca(count), cb(count);
    const auto preorder = t.preorder();
    const auto postorder = t.postorder();
    while (in_a != in_b) {
        for (NodeId u : postorder) {
            auto& x = ca[static_cast<std::size_t>(u)];
            auto& y = cb[static_cast<std::size_t>(u)];
            if (t.is_leaf(u)) {
                const Vertex v = t.vertices(u)[0];
                x = in_a[static_cast<std::size_t>(v)];
                y = in_b[static_cast<std::size_t>(v)];
            } else {
                x = ca[static_cast<std::size_t>(t.left(u))] + ca[static_cast<std::size_t>(t.right(u))];
                y = cb[static_cast<std::size_t>(t.left(u))] + cb[static_cast<std::size_t>(t.right(u))];
            }
        }
        auto differs = [&](NodeId u) {
            return (ca[static_cast<std::size_t>(u)] == 0) != (cb[static_cast<std::size_t>(u)] == 0);
        };
        NodeId pick = kNoNode;
        for (NodeId u : preorder) {
            if (t.kind(u) == NodeKind::Join && !differs(u) && differs(t.left(u)) && differs(t.right(u))) {
                pick = u;
                break;
            }
        }
        if (pick == kNoNode) throw InternalError("no swappable join node between maximum independent sets");
        std::vector<Vertex> members(t.vertices(pick).begin(), t.vertices(pick).end());
        std::sort(members.begin(), members.end());
        for (Vertex v : members)
            if (in_a[static_cast<std::size_t>(v)]) seq.moves.push_back({Move::Op::Remove, v});
        for (Vertex v : members)
            if (in_b[static_cast<std::size_t>(v)]) seq.moves.push_back({Move::Op::Add, v});
        for (Vertex v : members) in_a[static_cast<std::size_t>(v)] = in_b[static_cast<std::size_t>(v)];
    }
    return seq;
}

struct WitnessReport {
    TarSequence sequence;
    int accessible_vertices = 0;
    int alpha_accessible = 0;
};

/// Reconfiguration sequence from a to b at threshold k in a cograph, of
/// length at most 4n - |a| - |b|: restrict to the accessible vertices,
/// climb from both ends to maximum independent sets, and bridge them.
inline WitnessReport build_witness_report(const Graph& g, const VertexSet& a, const VertexSet& b, int k) {
    detail::require_independent(g, a, "A");
    detail::require_independent(g, b, "B");
    if (k < 0) throw InputError("threshold k must be nonnegative");
    if (static_cast<int>(a.size()) < k || static_cast<int>(b.size()) < k)
        throw ContractError("no witness: a set is below the threshold");
    WitnessReport report;
    report.sequence = TarSequence{a, {}, k};
    if (a == b) {
        report.accessible_vertices = g.size();
        return report;
    }
    const Cotree t = build_maximal_cotree(g);
    detail::require_cotree(t);
    if (k > 0 && !decide_on(t, a, b, k).reachable) throw ContractError("no witness: B is not reachable from A");

    const NodeValues values = analyze(t, a, k).values;
    const VertexSet accessible = accessible_subgraph(t, values, k);
    std::vector<Vertex> local_of(static_cast<std::size_t>(g.size()), -1);
    for (std::size_t j = 0; j < accessible.size(); ++j) local_of[static_cast<std::size_t>(accessible[j])] = static_cast<Vertex>(j);
    auto to_local = [&](const VertexSet& s) {
        std::vector<Vertex> out;
        for (Vertex v : s) {
            if (local_of[static_cast<std::size_t>(v)] < 0) throw InternalError("endpoint vertex judged inaccessible");
            out.push_back(local_of[static_cast<std::size_t>(v)]);
        }
        return VertexSet(std::move(out));
    };
    const Graph sub = induced_subgraph(g, accessible);
    const Cotree st = build_maximal_cotree(sub);
    const TarSequence up_a = sequence_to_max(st, to_local(a), k);
    const TarSequence up_b = sequence_to_max(st, to_local(b), k);
    const TarSequence bridge = bridge_max_sets(st, up_a.finish(), up_b.finish(), k);

    std::vector<Move>& moves = report.sequence.moves;
    auto append = [&](const Move& m) { moves.push_back({m.op, accessible[static_cast<std::size_t>(m.v)]}); };
    for (const Move& m : up_a.moves) append(m);
    for (const Move& m : bridge.moves) append(m);
    for (auto it = up_b.moves.rbegin(); it != up_b.moves.rend(); ++it)
        append({it->op == Move::Op::Add ? Move::Op::Remove : Move::Op::Add, it->v});

    if (auto err = check_sequence(g, report.sequence, a, b)) throw InternalError("witness failed validation: " + *err);
    const long bound = 4L * g.size() - static_cast<long>(a.size()) - static_cast<long>(b.size());
    if (static_cast<long>(moves.size()) > bound) throw InternalError("witness exceeds the 4n - |A| - |B| bound");
    report.accessible_vertices = static_cast<int>(accessible.size());
    report.alpha_accessible = detail::cotree_alpha(st);
    return report;
}

inline TarSequence build_witness(const Graph& g, const VertexSet& a, const VertexSet& b, int k) {
    return build_witness_report(g, a, b, k).sequence;
}

}  // namespace recon
