#pragma once

#include <CLI11.hpp>
#include <json.hpp>

#include <functional>
#include <optional>
#include <ostream>
#include <random>
#include <sstream>
#include <string>
#include <vector>

#include "recon/cotree.hpp"
#include "recon/dp.hpp"
#include "recon/errors.hpp"
#include "recon/graph.hpp"
#include "recon/io.hpp"
#include "recon/oracle.hpp"
#include "recon/witness.hpp"

namespace recon::cli {

enum Exit : int {
    kReachable = 0,
    kUnreachable = 1,
    kInputError = 2,
    kUnsupported = 3,
    kInternal = 4,
};

struct Options {
    std::string graph;
    std::string a;
    std::string b;
    std::optional<int> k;
    Model model = Model::TAR;
    std::string format = "plain";
    int count = 100;
    int size = 10;
    std::uint64_t seed = 0;
};

namespace detail {

inline Instance load(const Options& o, std::ostream& err) {
    if (o.model == Model::TAR && !o.k) throw InputError("-k is required for the tar model");
    std::vector<std::string> warnings;
    Instance inst = parse_instance(o.graph, o.a, o.b, o.k.value_or(0), o.model, &warnings);
    for (const auto& w : warnings) err << "warning: " << w << '\n';
    return inst;
}

/// TAR threshold that answers the instance's question.
inline int tar_threshold(const Instance& inst) {
    return inst.model == Model::TJ ? inst.k - 1 : inst.k;
}

inline std::string describe_node(const Cotree& t, NodeId u) {
    std::ostringstream os;
    os << "#" << u << ' ' << to_string(t.kind(u));
    if (t.is_leaf(u) && !t.is_trivial_leaf(u)) os << "(nontrivial)";
    os << " vertices " << t.vertex_set(u).to_string();
    return os.str();
}

inline void print_failure(std::ostream& out, const Graph& g, const Instance& inst, const Failure& f) {
    if (f.kind == FailureKind::BelowThreshold) {
        out << "failing check: " << to_string(f.kind) << " (|A|=" << f.freedom_a << ", |B|=" << f.freedom_b
            << ", k=" << tar_threshold(inst) << ")\n";
        return;
    }
    const Cotree t = build_maximal_cotree(g);
    out << "failing node: " << describe_node(t, f.node) << '\n';
    out << "reason: " << to_string(f.kind) << " (freedom A=" << f.freedom_a << ", B=" << f.freedom_b << ")\n";
}

inline Decision decide_instance(const Instance& inst) {
    if (inst.model == Model::TJ && inst.a.empty()) return {true, std::nullopt};
    return decide(inst.graph, inst.a, inst.b, tar_threshold(inst));
}

inline nlohmann::json to_json(const VertexSet& s) { return nlohmann::json(s.ids()); }

}  // namespace detail

inline int cmd_decide(const Options& o, std::ostream& out, std::ostream& err) {
    const Instance inst = detail::load(o, err);
    const Decision d = detail::decide_instance(inst);
    out << (d.reachable ? "REACHABLE" : "UNREACHABLE") << '\n';
    if (d.failure) detail::print_failure(out, inst.graph, inst, *d.failure);
    return d.reachable ? kReachable : kUnreachable;
}

inline int cmd_witness(const Options& o, std::ostream& out, std::ostream& err) {
    if (o.model != Model::TAR) throw InputError("witness construction supports the tar model only");
    if (o.format != "plain" && o.format != "diff" && o.format != "json")
        throw InputError("unknown format '" + o.format + "' (plain, diff, json)");
    const Instance inst = detail::load(o, err);
    const bool json = o.format == "json";
    const Decision d = detail::decide_instance(inst);
    if (!d.reachable) {
        if (json) {
            nlohmann::json j{{"reachable", false}, {"length", nullptr}, {"steps", nlohmann::json::array()},
                             {"stats", {{"n", inst.graph.size()}, {"k", inst.k}, {"alpha_accessible", nullptr}}}};
            out << j.dump(2) << '\n';
        } else {
            out << "UNREACHABLE\n";
            if (d.failure) detail::print_failure(out, inst.graph, inst, *d.failure);
        }
        return kUnreachable;
    }
    if (inst.a != inst.b && !is_cograph(inst.graph)) {
        // Reachable, but sequences are only built over cotrees with trivial leaves.
        if (!json) {
            out << "REACHABLE\n";
            out << "length bound " << 4L * inst.graph.size() - static_cast<long>(inst.a.size() + inst.b.size()) << '\n';
        }
        throw UnsupportedGraphClass("witness sequences need a cograph; this graph has nontrivial leaves");
    }
    const WitnessReport report = build_witness_report(inst.graph, inst.a, inst.b, inst.k);
    const TarSequence& seq = report.sequence;
    if (auto problem = check_sequence(inst.graph, seq, inst.a, inst.b))
        throw InternalError("witness failed validation: " + *problem);

    if (json) {
        nlohmann::json steps = nlohmann::json::array();
        for (const Move& m : seq.moves) steps.push_back({{"op", m.op == Move::Op::Add ? "add" : "remove"}, {"v", m.v}});
        nlohmann::json sets = nlohmann::json::array();
        for (const VertexSet& s : seq.sets()) sets.push_back(detail::to_json(s));
        nlohmann::json j{{"reachable", true},
                         {"length", seq.length()},
                         {"start", detail::to_json(seq.start)},
                         {"steps", steps},
                         {"sets", sets},
                         {"stats", {{"n", inst.graph.size()}, {"k", inst.k}, {"alpha_accessible", report.alpha_accessible}}}};
        out << j.dump(2) << '\n';
        return kReachable;
    }
    out << "REACHABLE\n";
    out << "length " << seq.length() << '\n';
    if (o.format == "diff") {
        out << "start " << seq.start.to_string() << '\n';
        for (const Move& m : seq.moves) out << (m.op == Move::Op::Add ? '+' : '-') << m.v << '\n';
    } else {
        for (const VertexSet& s : seq.sets()) out << s.to_string() << '\n';
    }
    return kReachable;
}

/// Per-node dump of both passes for set A at threshold k.
inline int cmd_tables(const Options& o, std::ostream& out, std::ostream& err) {
    if (!o.k) throw InputError("-k is required");
    std::vector<std::string> warnings;
    const Graph g = load_graph(o.graph, &warnings);
    for (const auto& w : warnings) err << "warning: " << w << '\n';
    const VertexSet a = parse_set(o.a, g.size(), "A");
    require_independent_set(g, a, "A");
    if (g.size() == 0) throw InputError("graph has no vertices");
    const Cotree t = build_maximal_cotree(g);
    const Analysis an = analyze(t, a, *o.k);
    std::vector<int> depth(static_cast<std::size_t>(t.node_count()), 0);
    for (NodeId u : t.preorder()) {
        const auto idx = static_cast<std::size_t>(u);
        if (t.parent(u) != kNoNode) depth[idx] = depth[static_cast<std::size_t>(t.parent(u))] + 1;
        const RisTable& r = an.ris[idx];
        out << std::string(static_cast<std::size_t>(2 * depth[idx]), ' ') << detail::describe_node(t, u)
            << " base=" << r.base_size << " freedom=" << an.values.freedom[idx] << " cap=" << an.values.cap[idx]
            << " blocked=" << int(an.values.blocked[idx]) << " ris=[";
        for (std::size_t j = 0; j < r.values.size(); ++j) out << (j ? "," : "") << r.values[j];
        out << ']';
        if (r.has_tuples()) {
            out << " tuples=[";
            for (std::size_t j = 0; j < r.tuples.size(); ++j)
                out << (j ? "," : "") << '(' << r.tuples[j].x << ',' << r.tuples[j].y << ')';
            out << ']';
        }
        out << '\n';
    }
    return kReachable;
}

/// Engine answer against brute force; for reachable cograph TAR instances
/// the witness is checked as well.
inline int cmd_oracle(const Options& o, std::ostream& out, std::ostream& err) {
    const Instance inst = detail::load(o, err);
    const Decision d = detail::decide_instance(inst);
    const ReachResult truth = oracle_reach(inst.graph, inst.a, inst.b, inst.k, inst.model);
    out << "engine: " << (d.reachable ? "REACHABLE" : "UNREACHABLE") << '\n';
    out << "oracle: " << (truth.reachable ? "REACHABLE" : "UNREACHABLE");
    if (truth.distance) out << " (distance " << *truth.distance << ')';
    out << '\n';
    if (d.reachable != truth.reachable) {
        out << "MISMATCH\n";
        return kInternal;
    }
    if (inst.model == Model::TAR && d.reachable && inst.a != inst.b && is_cograph(inst.graph)) {
        const TarSequence seq = build_witness(inst.graph, inst.a, inst.b, inst.k);
        out << "witness length: " << seq.length() << '\n';
    }
    out << "AGREE\n";
    return kReachable;
}

namespace detail {

struct FuzzCase {
    Graph graph;
    Triple triple;
};

/// Empty when engine and oracle agree, otherwise a description.
inline std::optional<std::string> fuzz_check(const FuzzCase& c) {
    const Graph& g = c.graph;
    const Triple& t = c.triple;
    try {
        const bool engine = decide(g, t.a, t.b, t.k).reachable;
        const bool truth = oracle_reach(g, t.a, t.b, t.k, Model::TAR).reachable;
        if (engine != truth)
            return std::string("TAR decision: engine ") + (engine ? "reachable" : "unreachable") + ", oracle " +
                   (truth ? "reachable" : "unreachable");
        if (t.a.size() == t.b.size()) {
            const bool tj = tj_decide(g, t.a, t.b);
            const bool tj_truth = oracle_reach(g, t.a, t.b, static_cast<int>(t.a.size()), Model::TJ).reachable;
            if (tj != tj_truth) return std::string("TJ decision: engine ") + (tj ? "reachable" : "unreachable");
        }
        if (engine && is_cograph(g)) {
            const TarSequence seq = build_witness(g, t.a, t.b, t.k);
            if (auto problem = check_sequence(g, seq, t.a, t.b)) return "witness: " + *problem;
        }
    } catch (const InternalError& e) {
        return std::string("internal error: ") + e.what();
    }
    return std::nullopt;
}

/// Greedy vertex deletion while the failure persists.
inline FuzzCase shrink(FuzzCase c) {
    bool progress = true;
    while (progress && c.graph.size() > 1) {
        progress = false;
        for (Vertex drop = 0; drop < c.graph.size(); ++drop) {
            std::vector<Vertex> keep;
            for (Vertex v = 0; v < c.graph.size(); ++v)
                if (v != drop) keep.push_back(v);
            auto remap = [&](const VertexSet& s) {
                std::vector<Vertex> out;
                for (Vertex v : s)
                    if (v != drop) out.push_back(v > drop ? v - 1 : v);
                return VertexSet(std::move(out));
            };
            FuzzCase smaller{induced_subgraph(c.graph, std::span<const Vertex>(keep)), {remap(c.triple.a), remap(c.triple.b), 0}};
            smaller.triple.k = std::min({c.triple.k, static_cast<int>(smaller.triple.a.size()),
                                         static_cast<int>(smaller.triple.b.size())});
            if (fuzz_check(smaller)) {
                c = std::move(smaller);
                progress = true;
                break;
            }
        }
    }
    return c;
}

}  // namespace detail

/// Random cographs and union/join compositions of chordal graphs with up
/// to `size` vertices; engine against oracle on one sampled triple each.
inline int cmd_fuzz(const Options& o, std::ostream& out, std::ostream& /*err*/) {
    if (o.count < 0) throw InputError("--count must be nonnegative");
    if (o.size < 1 || o.size > oracle_cap())
        throw InputError("--size must lie in 1.." + std::to_string(oracle_cap()));
    for (int i = 0; i < o.count; ++i) {
        std::seed_seq seq{static_cast<std::uint32_t>(o.seed), static_cast<std::uint32_t>(o.seed >> 32),
                          static_cast<std::uint32_t>(i)};
        std::mt19937_64 rng(seq);
        const int n = std::uniform_int_distribution<int>(1, o.size)(rng);
        detail::FuzzCase c;
        c.graph = i % 2 == 0 ? gen_cograph(n, rng()).graph : gen_composed({n, 1, 5, 0.5}, rng());
        c.triple = sample_triple(c.graph, rng);
        if (auto problem = detail::fuzz_check(c)) {
            const detail::FuzzCase small = detail::shrink(c);
            out << "FAIL at instance " << i << ": " << *problem << '\n';
            out << "minimal counterexample: " << detail::fuzz_check(small).value_or(*problem) << '\n';
            write_graph(out, small.graph);
            out << "A " << small.triple.a.to_string() << "\nB " << small.triple.b.to_string() << "\nk "
                << small.triple.k << '\n';
            out << i << '/' << o.count << " OK\n";
            return kInternal;
        }
    }
    out << o.count << '/' << o.count << " OK\n";
    return kReachable;
}

/// Parses argv and dispatches; returns the process exit code.
inline int run(const std::vector<std::string>& args, std::ostream& out, std::ostream& err) {
    CLI::App app{"Independent set reconfiguration (token addition/removal and token jumping)"};
    app.require_subcommand(1);
    Options o;
    std::string model = "tar";
    auto add_instance = [&](CLI::App* sub, bool with_b) {
        sub->add_option("graph", o.graph, "graph file: 'n m' then m lines 'u v'")->required();
        sub->add_option("A", o.a, "start set: ids like 0,2,5 or @file")->required();
        if (with_b) sub->add_option("B", o.b, "target set")->required();
        sub->add_option("-k,--threshold", o.k, "token lower bound (tar model)");
    };
    auto add_model = [&](CLI::App* sub) {
        sub->add_option("--model", model, "tar or tj")->check(CLI::IsMember({"tar", "tj"}));
    };
    CLI::App* decide_cmd = app.add_subcommand("decide", "decide reachability");
    add_instance(decide_cmd, true);
    add_model(decide_cmd);
    CLI::App* witness_cmd = app.add_subcommand("witness", "decide and print a reconfiguration sequence");
    add_instance(witness_cmd, true);
    witness_cmd->add_option("--format", o.format, "plain, diff or json");
    CLI::App* tables_cmd = app.add_subcommand("tables", "dump per-node tables for one set");
    add_instance(tables_cmd, false);
    CLI::App* oracle_cmd = app.add_subcommand("oracle", "compare against brute force");
    add_instance(oracle_cmd, true);
    add_model(oracle_cmd);
    CLI::App* fuzz_cmd = app.add_subcommand("fuzz", "random engine-vs-oracle comparison");
    fuzz_cmd->add_option("--count", o.count, "number of instances");
    fuzz_cmd->add_option("--size", o.size, "largest vertex count");
    fuzz_cmd->add_option("--seed", o.seed, "base seed");

    std::vector<std::string> reversed(args.rbegin(), args.rend());
    try {
        app.parse(reversed);
    } catch (const CLI::ParseError& e) {
        const int code = app.exit(e, out, err);
        return code == 0 ? 0 : kInputError;
    }
    o.model = model == "tj" ? Model::TJ : Model::TAR;

    try {
        if (decide_cmd->parsed()) return cmd_decide(o, out, err);
        if (witness_cmd->parsed()) return cmd_witness(o, out, err);
        if (tables_cmd->parsed()) return cmd_tables(o, out, err);
        if (oracle_cmd->parsed()) return cmd_oracle(o, out, err);
        return cmd_fuzz(o, out, err);
    } catch (const UnsupportedGraphClass& e) {
        err << "unsupported graph class: " << e.what() << '\n';
        return kUnsupported;
    } catch (const InternalError& e) {
        err << "internal error: " << e.what() << '\n';
        return kInternal;
    } catch (const Error& e) {
        err << "error: " << e.what() << '\n';
        return kInputError;
    }
}

}  // namespace recon::cli
