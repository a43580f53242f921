#pragma once

#include <functional>
#include <optional>
#include <ostream>
#include <span>
#include <sstream>
#include <string>
#include <utility>
#include <vector>

#include "recon/errors.hpp"
#include "recon/graph.hpp"

namespace recon {

using NodeId = int;
inline constexpr NodeId kNoNode = -1;

enum class NodeKind { Union, Join, Leaf };

inline const char* to_string(NodeKind k) {
    switch (k) {
        case NodeKind::Union: return "union";
        case NodeKind::Join: return "join";
        case NodeKind::Leaf: return "leaf";
    }
    return "?";
}

struct CotreeNode {
    NodeKind kind = NodeKind::Leaf;
    NodeId left = kNoNode;
    NodeId right = kNoNode;
    NodeId parent = kNoNode;
    // V_u is the slice [begin, end) of the tree's leaf order.
    int begin = 0;
    int end = 0;
    // Index into the leaf-graph table for nontrivial leaves, -1 otherwise.
    int leaf_graph = -1;
};

class CotreeBuilder;

/// Binary (generalized) cotree. Leaves are laid out left to right in one
/// vertex array, so each node's vertex set V_u is a contiguous slice of it.
/// Vertex ids are those of the graph the tree describes (0..n-1).
class Cotree {
public:
    NodeId root() const { return root_; }
    int node_count() const { return static_cast<int>(nodes_.size()); }
    int vertex_count() const { return static_cast<int>(order_.size()); }

    const CotreeNode& node(NodeId u) const { return nodes_[static_cast<std::size_t>(u)]; }
    NodeKind kind(NodeId u) const { return node(u).kind; }
    NodeId left(NodeId u) const { return node(u).left; }
    NodeId right(NodeId u) const { return node(u).right; }
    NodeId parent(NodeId u) const { return node(u).parent; }
    bool is_leaf(NodeId u) const { return kind(u) == NodeKind::Leaf; }
    bool is_trivial_leaf(NodeId u) const { return is_leaf(u) && size(u) == 1; }
    int size(NodeId u) const { return node(u).end - node(u).begin; }

    /// V_u, in leaf order (not sorted).
    std::span<const Vertex> vertices(NodeId u) const {
        return std::span<const Vertex>(order_).subspan(static_cast<std::size_t>(node(u).begin),
                                                       static_cast<std::size_t>(size(u)));
    }
    VertexSet vertex_set(NodeId u) const {
        auto vs = vertices(u);
        return VertexSet(std::vector<Vertex>(vs.begin(), vs.end()));
    }

    /// G_u for a leaf; local vertex i corresponds to vertices(u)[i].
    const Graph& leaf_graph(NodeId u) const {
        if (!is_leaf(u)) throw InternalError("leaf_graph on internal node");
        if (node(u).leaf_graph < 0) return single_vertex();
        return leaf_graphs_[static_cast<std::size_t>(node(u).leaf_graph)];
    }

    /// Position of v in the leaf order.
    int position(Vertex v) const { return position_[static_cast<std::size_t>(v)]; }

    /// The leaf whose vertex set contains v.
    NodeId leaf_of(Vertex v) const { return leaf_of_[static_cast<std::size_t>(v)]; }

    bool contains(NodeId u, Vertex v) const {
        const int p = position(v);
        return p >= node(u).begin && p < node(u).end;
    }

    bool has_nontrivial_leaf() const {
        for (const auto& n : nodes_)
            if (n.kind == NodeKind::Leaf && n.end - n.begin > 1) return true;
        return false;
    }

    std::vector<NodeId> preorder() const {
        std::vector<NodeId> out;
        out.reserve(nodes_.size());
        std::vector<NodeId> stack{root_};
        while (!stack.empty()) {
            NodeId u = stack.back();
            stack.pop_back();
            out.push_back(u);
            if (!is_leaf(u)) {
                stack.push_back(right(u));
                stack.push_back(left(u));
            }
        }
        return out;
    }

    /// Children before parents, left subtree before right subtree.
    std::vector<NodeId> postorder() const {
        std::vector<NodeId> out;
        out.reserve(nodes_.size());
        std::vector<std::pair<NodeId, bool>> stack{{root_, false}};
        while (!stack.empty()) {
            auto [u, expanded] = stack.back();
            stack.pop_back();
            if (expanded || is_leaf(u)) {
                out.push_back(u);
                continue;
            }
            stack.emplace_back(u, true);
            stack.emplace_back(right(u), false);
            stack.emplace_back(left(u), false);
        }
        return out;
    }

    /// Indented text dump: kind, |V_u| and the vertex list of every node.
    void dump(std::ostream& os) const {
        std::vector<std::pair<NodeId, int>> stack{{root_, 0}};
        while (!stack.empty()) {
            auto [u, depth] = stack.back();
            stack.pop_back();
            os << std::string(static_cast<std::size_t>(2 * depth), ' ') << "#" << u << ' ' << to_string(kind(u));
            if (is_leaf(u) && !is_trivial_leaf(u)) os << "(nontrivial)";
            os << " |V|=" << size(u) << " [";
            bool first = true;
            for (Vertex v : vertex_set(u)) {
                os << (first ? "" : " ") << v;
                first = false;
            }
            os << "]\n";
            if (!is_leaf(u)) {
                stack.emplace_back(right(u), depth + 1);
                stack.emplace_back(left(u), depth + 1);
            }
        }
    }

    std::string dump() const {
        std::ostringstream os;
        dump(os);
        return os.str();
    }

private:
    friend class CotreeBuilder;
    friend Cotree build_maximal_cotree(const Graph& g);

    static const Graph& single_vertex() {
        static const Graph k1(1);
        return k1;
    }

    void index_vertices() {
        const auto n = order_.size();
        position_.assign(n, -1);
        leaf_of_.assign(n, kNoNode);
        for (std::size_t p = 0; p < n; ++p) position_[static_cast<std::size_t>(order_[p])] = static_cast<int>(p);
        for (NodeId u = 0; u < node_count(); ++u)
            if (is_leaf(u))
                for (Vertex v : vertices(u)) leaf_of_[static_cast<std::size_t>(v)] = u;
    }

    NodeId root_ = kNoNode;
    std::vector<CotreeNode> nodes_;
    std::vector<Vertex> order_;
    std::vector<int> position_;
    std::vector<NodeId> leaf_of_;
    std::vector<Graph> leaf_graphs_;
};

/// Assembles a cotree by hand (tests, generators). Node ids handed out by
/// the builder are the node ids of the finished tree.
class CotreeBuilder {
public:
    NodeId leaf(Vertex v) {
        pending_.push_back({NodeKind::Leaf, kNoNode, kNoNode, {v}, std::nullopt});
        return static_cast<NodeId>(pending_.size() - 1);
    }

    /// Nontrivial leaf: vertex i of g gets id ids[i].
    NodeId leaf(Graph g, std::vector<Vertex> ids) {
        if (static_cast<int>(ids.size()) != g.size()) throw InputError("malformed cotree: leaf id list size mismatch");
        if (ids.empty()) throw InputError("malformed cotree: empty leaf");
        if (ids.size() == 1) return leaf(ids.front());
        pending_.push_back({NodeKind::Leaf, kNoNode, kNoNode, std::move(ids), std::move(g)});
        return static_cast<NodeId>(pending_.size() - 1);
    }

    NodeId join(NodeId l, NodeId r) { return internal(NodeKind::Join, l, r); }
    NodeId unite(NodeId l, NodeId r) { return internal(NodeKind::Union, l, r); }

    /// Throws InputError if the nodes do not form one binary tree rooted at
    /// root whose leaves partition 0..n-1.
    Cotree build(NodeId root) && {
        const int count = static_cast<int>(pending_.size());
        if (root < 0 || root >= count) throw InputError("malformed cotree: bad root id");
        Cotree t;
        t.nodes_.resize(static_cast<std::size_t>(count));
        std::vector<int> seen(static_cast<std::size_t>(count), 0);
        int total = 0;
        for (const auto& p : pending_) total += p.kind == NodeKind::Leaf ? static_cast<int>(p.ids.size()) : 0;
        std::vector<char> used(static_cast<std::size_t>(total), 0);

        // Iterative DFS that assigns leaf-order ranges.
        std::vector<std::pair<NodeId, bool>> stack{{root, false}};
        while (!stack.empty()) {
            auto [u, done] = stack.back();
            stack.pop_back();
            if (u < 0 || u >= count) throw InputError("malformed cotree: dangling child id");
            auto& out = t.nodes_[static_cast<std::size_t>(u)];
            const auto& p = pending_[static_cast<std::size_t>(u)];
            if (done) {
                out.end = static_cast<int>(t.order_.size());
                continue;
            }
            if (seen[static_cast<std::size_t>(u)]++) throw InputError("malformed cotree: node reused");
            out.kind = p.kind;
            out.begin = static_cast<int>(t.order_.size());
            if (p.kind == NodeKind::Leaf) {
                for (Vertex v : p.ids) {
                    if (v < 0 || v >= total || used[static_cast<std::size_t>(v)])
                        throw InputError("malformed cotree: leaf vertices are not a partition of 0..n-1");
                    used[static_cast<std::size_t>(v)] = 1;
                    t.order_.push_back(v);
                }
                out.end = static_cast<int>(t.order_.size());
                if (p.graph) {
                    out.leaf_graph = static_cast<int>(t.leaf_graphs_.size());
                    t.leaf_graphs_.push_back(*p.graph);
                }
                continue;
            }
            out.left = p.left;
            out.right = p.right;
            if (p.left < 0 || p.left >= count || p.right < 0 || p.right >= count)
                throw InputError("malformed cotree: dangling child id");
            t.nodes_[static_cast<std::size_t>(p.left)].parent = u;
            t.nodes_[static_cast<std::size_t>(p.right)].parent = u;
            stack.emplace_back(u, true);
            stack.emplace_back(p.right, false);
            stack.emplace_back(p.left, false);
        }
        for (int u = 0; u < count; ++u)
            if (!seen[static_cast<std::size_t>(u)]) throw InputError("malformed cotree: node unreachable from root");
        t.root_ = root;
        t.nodes_[static_cast<std::size_t>(root)].parent = kNoNode;
        t.index_vertices();
        return t;
    }

private:
    struct Pending {
        NodeKind kind;
        NodeId left;
        NodeId right;
        std::vector<Vertex> ids;
        std::optional<Graph> graph;
    };

    NodeId internal(NodeKind k, NodeId l, NodeId r) {
        pending_.push_back({k, l, r, {}, std::nullopt});
        return static_cast<NodeId>(pending_.size() - 1);
    }

    std::vector<Pending> pending_;
};

/// Maximal cotree decomposition: recursively split G_u into its connected
/// components (union) or its co-components (join), left-deep, until every
/// leaf is a single vertex or indecomposable (G_u and its complement both
/// connected). Requires g to have at least one vertex.
inline Cotree build_maximal_cotree(const Graph& g) {
    const int n = g.size();
    if (n < 1) throw InputError("cannot decompose the empty graph");
    Cotree t;
    t.order_.resize(static_cast<std::size_t>(n));
    for (int v = 0; v < n; ++v) t.order_[static_cast<std::size_t>(v)] = v;
    t.nodes_.push_back({NodeKind::Leaf, kNoNode, kNoNode, kNoNode, 0, n, -1});
    t.root_ = 0;

    auto add_node = [&](NodeId parent, int b, int e) {
        t.nodes_.push_back({NodeKind::Leaf, kNoNode, kNoNode, parent, b, e, -1});
        return static_cast<NodeId>(t.nodes_.size() - 1);
    };

    std::vector<NodeId> work{0};
    while (!work.empty()) {
        const NodeId u = work.back();
        work.pop_back();
        const int b = t.node(u).begin;
        const int e = t.node(u).end;
        if (e - b == 1) continue;
        std::span<const Vertex> range(t.order_.data() + b, static_cast<std::size_t>(e - b));

        NodeKind kind = NodeKind::Union;
        auto parts = components(g, range, false);
        if (parts.size() == 1) {
            kind = NodeKind::Join;
            parts = components(g, range, true);
        }
        if (parts.size() == 1) {
            std::sort(t.order_.begin() + b, t.order_.begin() + e);
            t.nodes_[static_cast<std::size_t>(u)].leaf_graph = static_cast<int>(t.leaf_graphs_.size());
            t.leaf_graphs_.push_back(induced_subgraph(g, std::span<const Vertex>(t.order_.data() + b, static_cast<std::size_t>(e - b))));
            continue;
        }

        std::vector<int> starts;
        int pos = b;
        for (const auto& part : parts) {
            starts.push_back(pos);
            for (Vertex v : part) t.order_[static_cast<std::size_t>(pos++)] = v;
        }
        starts.push_back(e);

        // Left-deep chain: cur covers parts[0..j], right child is parts[j].
        NodeId cur = u;
        for (std::size_t j = parts.size() - 1; j >= 1; --j) {
            t.nodes_[static_cast<std::size_t>(cur)].kind = kind;
            const NodeId right = add_node(cur, starts[j], starts[j + 1]);
            work.push_back(right);
            const NodeId left = add_node(cur, b, starts[j]);
            t.nodes_[static_cast<std::size_t>(cur)].left = left;
            t.nodes_[static_cast<std::size_t>(cur)].right = right;
            if (j == 1) {
                work.push_back(left);
                break;
            }
            cur = left;
        }
    }
    t.index_vertices();
    return t;
}

/// True iff every leaf of the maximal decomposition is a single vertex.
inline bool is_cograph(const Graph& g) {
    if (g.size() == 0) return true;
    return !build_maximal_cotree(g).has_nontrivial_leaf();
}

/// Rebuilds G_root from the tree.
inline Graph realize(const Cotree& t) {
    const int n = t.vertex_count();
    GraphBuilder b(n);
    for (NodeId u = 0; u < t.node_count(); ++u) {
        if (t.is_leaf(u)) {
            const Graph& h = t.leaf_graph(u);
            auto vs = t.vertices(u);
            if (h.size() != static_cast<int>(vs.size())) throw InputError("malformed cotree: leaf graph size");
            for (auto [x, y] : h.edges()) b.add_edge(vs[static_cast<std::size_t>(x)], vs[static_cast<std::size_t>(y)]);
            continue;
        }
        const NodeId l = t.left(u);
        const NodeId r = t.right(u);
        if (l == kNoNode || r == kNoNode) throw InputError("malformed cotree: internal node without two children");
        if (t.node(l).begin != t.node(u).begin || t.node(l).end != t.node(r).begin || t.node(r).end != t.node(u).end)
            throw InputError("malformed cotree: children do not partition their parent");
        if (t.kind(u) == NodeKind::Join) b.join(t.vertices(l), t.vertices(r));
    }
    return std::move(b).build();
}

/// True iff every nontrivial leaf graph satisfies class_test.
inline bool classify_leaves(const Cotree& t, const std::function<bool(const Graph&)>& class_test) {
    for (NodeId u = 0; u < t.node_count(); ++u)
        if (t.is_leaf(u) && !t.is_trivial_leaf(u) && !class_test(t.leaf_graph(u))) return false;
    return true;
}

/// Both H and its complement connected.
inline bool is_indecomposable(const Graph& h) {
    std::vector<Vertex> all(static_cast<std::size_t>(h.size()));
    for (Vertex v = 0; v < h.size(); ++v) all[static_cast<std::size_t>(v)] = v;
    return components(h, all, false).size() <= 1 && components(h, all, true).size() <= 1;
}

}  // namespace recon
