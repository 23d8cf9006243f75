#pragma once

#include <gmr/minor.hpp>
#include <gmr/model.hpp>

#include <map>
#include <vector>

namespace gmr {

namespace detail {

    struct PotentialTables
    {
        int q;
        std::map<Label, VertexTable, LabelLess> vertex;
        std::map<Edge, EdgeTable, EdgeLess> edge;

        explicit PotentialTables(const Model & m) :
            q(m.cardinality()), vertex(m.vertex_tables()), edge(m.edge_tables())
        {
        }

        /// Removes the table on {u, w} and returns it with rows indexing u.
        auto take_edge(const Label & u, const Label & w) -> EdgeTable
        {
            auto it = edge.find(make_edge(u, w));
            if (it == edge.end())
                throw Error(ErrorKind::SequenceInvalid, "model has no table on {" + u + ", " + w + "}");
            auto table = natural_compare(u, w) < 0 ? std::move(it->second) : transpose(it->second, q);
            edge.erase(it);
            return table;
        }

        auto take_vertex(const Label & v) -> VertexTable
        {
            auto it = vertex.find(v);
            if (it == vertex.end())
                throw Error(ErrorKind::SequenceInvalid, "model has no table on '" + v + "'");
            auto table = std::move(it->second);
            vertex.erase(it);
            return table;
        }

        /// `table` rows index u.
        void put_edge(const Label & u, const Label & w, EdgeTable table)
        {
            edge[make_edge(u, w)] = natural_compare(u, w) < 0 ? std::move(table) : transpose(table, q);
        }
    };

    /// What undoing an op needs to know about the graph before it was applied:
    /// the deleted vertex's neighbourhood, or the two contracted endpoints' neighbourhoods.
    struct UndoContext
    {
        LabelSet first, second;
    };

    inline auto undo_context(const LabeledGraph & before, const MinorOp & op) -> UndoContext
    {
        if (auto dv = std::get_if<VertexDelete>(&op))
            return {before.has_vertex(dv->v) ? before.neighbors(dv->v) : LabelSet{}, {}};
        if (auto ct = std::get_if<Contract>(&op))
            return {before.has_vertex(ct->u) ? before.neighbors(ct->u) : LabelSet{},
                before.has_vertex(ct->v) ? before.neighbors(ct->v) : LabelSet{}};
        return {};
    }

    inline void undo(PotentialTables & t, const MinorOp & op, const UndoContext & context)
    {
        int q = t.q;
        if (auto dv = std::get_if<VertexDelete>(&op)) {
            // restored vertex carries 1/q per state, restored edges carry 1: the extra sum over x_v is q * (1/q)
            t.vertex[dv->v] = VertexTable(q, ExactNumber::fraction(1, q));
            for (auto & w : context.first)
                t.put_edge(dv->v, w, ones_edge_table(q));
        }
        else if (auto de = std::get_if<EdgeDelete>(&op)) {
            t.put_edge(de->u, de->v, ones_edge_table(q));
        }
        else if (auto ct = std::get_if<Contract>(&op)) {
            auto & nu = context.first;
            auto & nv = context.second;
            LabelSet outside;
            for (auto & w : nu)
                if (w != ct->v)
                    outside.insert(w);
            for (auto & w : nv)
                if (w != ct->u)
                    outside.insert(w);

            auto merged_table = t.take_vertex(ct->merged);
            std::map<Label, EdgeTable, LabelLess> merged_edges;
            for (auto & w : outside)
                merged_edges.emplace(w, t.take_edge(ct->merged, w));

            t.vertex[ct->u] = std::move(merged_table);
            t.vertex[ct->v] = ones_vertex_table(q);
            t.put_edge(ct->u, ct->v, delta_edge_table(q));
            for (auto & [w, table] : merged_edges) {
                bool to_u = nu.count(w) != 0, to_v = nv.count(w) != 0;
                if (to_u) {
                    t.put_edge(ct->u, w, std::move(table));
                    if (to_v)
                        t.put_edge(ct->v, w, ones_edge_table(q));
                }
                else
                    t.put_edge(ct->v, w, std::move(table));
            }
        }
        else {
            auto & rn = std::get<Relabel>(op);
            if (rn.from == rn.to)
                return;
            auto table = t.take_vertex(rn.to);
            std::vector<std::pair<Label, EdgeTable>> moved;
            for (auto it = t.edge.begin(); it != t.edge.end();) {
                if (it->first.first == rn.to || it->first.second == rn.to) {
                    auto w = it->first.first == rn.to ? it->first.second : it->first.first;
                    auto oriented = it->first.first == rn.to ? it->second : transpose(it->second, q);
                    moved.emplace_back(w, std::move(oriented));
                    it = t.edge.erase(it);
                }
                else
                    ++it;
            }
            t.vertex[rn.from] = std::move(table);
            for (auto & [w, tab] : moved)
                t.put_edge(rn.from, w, std::move(tab));
        }
    }

} // namespace detail

/// Inverts one minor operation on potentials: `after` lives on apply_minor_op(before, op),
/// the result lives on `before` and has the same partition function.
inline auto lift_step(const LabeledGraph & before, const MinorOp & op, const Model & after) -> Model
{
    LabeledGraph expected;
    try {
        expected = apply_minor_op(before, op);
    }
    catch (const Error & e) {
        throw Error(ErrorKind::SequenceInvalid, format_op(op) + " does not apply: " + e.what());
    }
    if (! (expected == after.graph()))
        throw Error(ErrorKind::SequenceInvalid, format_op(op) + " does not produce the model's graph");
    detail::PotentialTables tables(after);
    detail::undo(tables, op, detail::undo_context(before, op));
    return Model(before, after.cardinality(), std::move(tables.vertex), std::move(tables.edge));
}

/// Lifts a model on the minor reached by `seq` back onto `host`, preserving Z exactly.
/// The sequence is replayed once forwards to record neighbourhoods, then undone in reverse;
/// total work is linear in the sequence length plus the table sizes touched.
inline auto lift_model(const LabeledGraph & host, const MinorSequence & seq, const Model & m) -> Model
{
    if (auto fp = host.fingerprint(); fp != seq.source_fingerprint)
        throw Error(ErrorKind::SequenceInvalid, "sequence fingerprint " + seq.source_fingerprint + " does not match host " + fp);
    std::vector<detail::UndoContext> contexts;
    contexts.reserve(seq.ops.size());
    LabeledGraph current = host;
    for (std::size_t i = 0; i < seq.ops.size(); ++i) {
        contexts.push_back(detail::undo_context(current, seq.ops[i]));
        try {
            detail::apply_in_place(current, seq.ops[i]);
        }
        catch (const Error & e) {
            throw SequenceError(ErrorKind::SequenceInvalid, i, format_op(seq.ops[i]) + ": " + e.what());
        }
    }
    if (! (current == m.graph()))
        throw Error(ErrorKind::SequenceInvalid, "sequence does not end at the model's graph");

    detail::PotentialTables tables(m);
    for (std::size_t i = seq.ops.size(); i-- > 0;)
        detail::undo(tables, seq.ops[i], contexts[i]);
    return Model(host, m.cardinality(), std::move(tables.vertex), std::move(tables.edge));
}

} // namespace gmr
