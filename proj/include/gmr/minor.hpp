#pragma once

#include <gmr/graph.hpp>
#include <gmr/text_io.hpp>

#include <optional>
#include <sstream>
#include <string>
#include <string_view>
#include <variant>
#include <vector>

namespace gmr {

struct VertexDelete
{
    Label v;
    friend auto operator==(const VertexDelete &, const VertexDelete &) -> bool = default;
};

struct EdgeDelete
{
    Label u, v;
    friend auto operator==(const EdgeDelete &, const EdgeDelete &) -> bool = default;
};

/// Contracts edge {u, v} into one vertex named `merged`. `merged` may reuse u or v;
/// otherwise it must be fresh.
struct Contract
{
    Label u, v, merged;
    friend auto operator==(const Contract &, const Contract &) -> bool = default;
};

/// Renames a vertex. Not a minor operation in the graph-theoretic sense, but needed to make
/// label-exact replay possible when a target vertex is realised by a single host vertex.
struct Relabel
{
    Label from, to;
    friend auto operator==(const Relabel &, const Relabel &) -> bool = default;
};

using MinorOp = std::variant<VertexDelete, EdgeDelete, Contract, Relabel>;

struct MinorSequence
{
    std::string source_fingerprint;
    std::vector<MinorOp> ops;

    friend auto operator==(const MinorSequence &, const MinorSequence &) -> bool = default;
};

inline auto format_op(const MinorOp & op) -> std::string
{
    struct
    {
        auto operator()(const VertexDelete & o) const -> std::string { return "DV " + o.v; }
        auto operator()(const EdgeDelete & o) const -> std::string { return "DE " + o.u + " " + o.v; }
        auto operator()(const Contract & o) const -> std::string { return "CT " + o.u + " " + o.v + " " + o.merged; }
        auto operator()(const Relabel & o) const -> std::string { return "RN " + o.from + " " + o.to; }
    } visitor;
    return std::visit(visitor, op);
}

namespace detail {

    inline void apply_in_place(LabeledGraph & g, const MinorOp & op)
    {
        if (auto dv = std::get_if<VertexDelete>(&op)) {
            g.remove_vertex(dv->v);
        }
        else if (auto de = std::get_if<EdgeDelete>(&op)) {
            if (! g.has_vertex(de->u) || ! g.has_vertex(de->v))
                throw Error(ErrorKind::MissingVertex, "edge delete on absent vertex in " + format_op(op));
            g.remove_edge(de->u, de->v);
        }
        else if (auto ct = std::get_if<Contract>(&op)) {
            if (! g.has_vertex(ct->u))
                throw Error(ErrorKind::MissingVertex, "no vertex '" + ct->u + "'");
            if (! g.has_vertex(ct->v))
                throw Error(ErrorKind::MissingVertex, "no vertex '" + ct->v + "'");
            if (! g.has_edge(ct->u, ct->v))
                throw Error(ErrorKind::MissingEdge, "cannot contract non-edge {" + ct->u + ", " + ct->v + "}");
            if (ct->merged != ct->u && ct->merged != ct->v && g.has_vertex(ct->merged))
                throw Error(ErrorKind::LabelCollision, "contracted label '" + ct->merged + "' already in use");
            require_valid_label(ct->merged);
            LabelSet joined;
            for (auto & w : g.neighbors(ct->u))
                joined.insert(w);
            for (auto & w : g.neighbors(ct->v))
                joined.insert(w);
            joined.erase(ct->u);
            joined.erase(ct->v);
            g.remove_vertex(ct->u);
            g.remove_vertex(ct->v);
            g.add_vertex(ct->merged);
            for (auto & w : joined)
                g.add_edge(ct->merged, w);
        }
        else {
            auto & rn = std::get<Relabel>(op);
            if (! g.has_vertex(rn.from))
                throw Error(ErrorKind::MissingVertex, "no vertex '" + rn.from + "'");
            if (rn.from == rn.to)
                return;
            if (g.has_vertex(rn.to))
                throw Error(ErrorKind::LabelCollision, "relabel target '" + rn.to + "' already in use");
            require_valid_label(rn.to);
            auto nbrs = g.neighbors(rn.from);
            g.remove_vertex(rn.from);
            g.add_vertex(rn.to);
            for (auto & w : nbrs)
                g.add_edge(rn.to, w);
        }
    }

} // namespace detail

/// Returns the minor of `g` produced by one operation; `g` is untouched.
inline auto apply_minor_op(const LabeledGraph & g, const MinorOp & op) -> LabeledGraph
{
    LabeledGraph result = g;
    detail::apply_in_place(result, op);
    return result;
}

inline auto apply_minor_sequence(const LabeledGraph & g, const MinorSequence & seq) -> LabeledGraph
{
    if (auto fp = g.fingerprint(); fp != seq.source_fingerprint)
        throw Error(ErrorKind::FingerprintMismatch, "sequence expects source " + seq.source_fingerprint + ", graph is " + fp);
    LabeledGraph result = g;
    for (std::size_t i = 0; i < seq.ops.size(); ++i) {
        try {
            detail::apply_in_place(result, seq.ops[i]);
        }
        catch (const Error & e) {
            throw SequenceError(e.kind(), i, format_op(seq.ops[i]) + ": " + e.what());
        }
    }
    return result;
}

/// `first` followed by `second`; `second` must start where `first` ends.
inline auto concat(const MinorSequence & first, const MinorSequence & second) -> MinorSequence
{
    MinorSequence result = first;
    result.ops.insert(result.ops.end(), second.ops.begin(), second.ops.end());
    return result;
}

struct ValidationReport
{
    bool valid = false;
    std::string diagnostic;

    explicit operator bool() const { return valid; }
};

/// Replays `seq` on `src` and compares the result with `target` label-exactly.
/// Never throws; the diagnostic names the first divergence.
inline auto check_minor_sequence(const LabeledGraph & src, const MinorSequence & seq, const LabeledGraph & target)
    -> ValidationReport
{
    LabeledGraph result;
    try {
        result = apply_minor_sequence(src, seq);
    }
    catch (const Error & e) {
        return {false, e.what()};
    }
    if (result == target)
        return {true, {}};

    for (auto & v : result.vertices())
        if (! target.has_vertex(v))
            return {false, "replay leaves vertex '" + v + "' absent from target"};
    for (auto & v : target.vertices())
        if (! result.has_vertex(v))
            return {false, "target vertex '" + v + "' missing after replay"};
    for (auto & [u, v] : result.edges())
        if (! target.has_edge(u, v))
            return {false, "replay leaves edge {" + u + ", " + v + "} absent from target"};
    for (auto & [u, v] : target.edges())
        if (! result.has_edge(u, v))
            return {false, "target edge {" + u + ", " + v + "} missing after replay"};
    return {false, "graphs differ"};
}

inline auto validate_minor_sequence(const LabeledGraph & src, const MinorSequence & seq, const LabeledGraph & target) -> bool
{
    return check_minor_sequence(src, seq, target).valid;
}

// .mseq files: `fingerprint <hex>` then one op per line.

inline auto format_minor_sequence(const MinorSequence & seq) -> std::string
{
    std::string out = "fingerprint " + seq.source_fingerprint + "\n";
    for (auto & op : seq.ops)
        out += format_op(op) + "\n";
    return out;
}

inline auto parse_minor_sequence(std::string_view text) -> MinorSequence
{
    auto lines = text::significant_lines(text);
    if (lines.empty() || lines[0].tokens.size() != 2 || lines[0].tokens[0] != "fingerprint")
        throw Error(ErrorKind::Malformed, "minor sequence must start with `fingerprint <hex>`");
    MinorSequence seq;
    seq.source_fingerprint = lines[0].tokens[1];
    for (std::size_t i = 1; i < lines.size(); ++i) {
        auto & t = lines[i].tokens;
        auto bad = [&]() { return Error(ErrorKind::Malformed, "line " + std::to_string(lines[i].number) + ": bad op"); };
        if (t[0] == "DV" && t.size() == 2)
            seq.ops.emplace_back(VertexDelete{t[1]});
        else if (t[0] == "DE" && t.size() == 3)
            seq.ops.emplace_back(EdgeDelete{t[1], t[2]});
        else if (t[0] == "CT" && t.size() == 4)
            seq.ops.emplace_back(Contract{t[1], t[2], t[3]});
        else if (t[0] == "RN" && t.size() == 3)
            seq.ops.emplace_back(Relabel{t[1], t[2]});
        else
            throw bad();
    }
    return seq;
}

inline auto read_minor_sequence(const std::string & path) -> MinorSequence
{
    return parse_minor_sequence(text::read_file(path));
}

inline void write_minor_sequence(const std::string & path, const MinorSequence & seq)
{
    text::write_file(path, format_minor_sequence(seq));
}

} // namespace gmr
