#pragma once

#include <gmr/exact.hpp>
#include <gmr/graph.hpp>

#include <map>
#include <sstream>
#include <string>
#include <vector>

namespace gmr {

/// Length-q table for a vertex potential.
using VertexTable = std::vector<ExactNumber>;

/// q x q row-major table for an edge potential; rows index the first endpoint's state.
using EdgeTable = std::vector<ExactNumber>;

inline auto ones_vertex_table(int q) -> VertexTable { return VertexTable(q, ExactNumber(1)); }
inline auto ones_edge_table(int q) -> EdgeTable { return EdgeTable(q * q, ExactNumber(1)); }

inline auto delta_edge_table(int q) -> EdgeTable
{
    EdgeTable t(q * q, ExactNumber(0));
    for (int a = 0; a < q; ++a)
        t[a * q + a] = ExactNumber(1);
    return t;
}

inline auto transpose(const EdgeTable & t, int q) -> EdgeTable
{
    EdgeTable result(t.size());
    for (int a = 0; a < q; ++a)
        for (int b = 0; b < q; ++b)
            result[b * q + a] = t[a * q + b];
    return result;
}

/// Pairwise Markov random field: one non-negative table per vertex and per edge of the graph,
/// every variable taking values in {0, ..., q-1}.
///
/// Edge tables are stored keyed by the canonical (label-ordered) edge; the accessors accept
/// endpoints in either order and transpose as needed.
class Model
{
  public:
    /// All-ones potentials on `graph`.
    Model(LabeledGraph graph, int q) : _graph(std::move(graph)), _q(q)
    {
        if (q < 2)
            throw Error(ErrorKind::InvalidModel, "cardinality must be at least 2");
        for (auto & v : _graph.vertices())
            _vertex.emplace(v, ones_vertex_table(q));
        for (auto & e : _graph.edges())
            _edge.emplace(e, ones_edge_table(q));
    }

    /// Tables keyed by canonical edges (see `make_edge`). Every vertex and edge needs exactly one table.
    Model(LabeledGraph graph, int q, std::map<Label, VertexTable, LabelLess> vertex_tables,
        std::map<Edge, EdgeTable, EdgeLess> edge_tables) :
        _graph(std::move(graph)),
        _q(q),
        _vertex(std::move(vertex_tables)),
        _edge(std::move(edge_tables))
    {
        if (q < 2)
            throw Error(ErrorKind::InvalidModel, "cardinality must be at least 2");
        if (_vertex.size() != _graph.vertex_count())
            throw Error(ErrorKind::InvalidModel, "vertex table count does not match the graph");
        if (_edge.size() != _graph.edge_count())
            throw Error(ErrorKind::InvalidModel, "edge table count does not match the graph");
        for (auto & [v, t] : _vertex) {
            if (! _graph.has_vertex(v))
                throw Error(ErrorKind::InvalidModel, "table for absent vertex '" + v + "'");
            if (t.size() != static_cast<std::size_t>(q))
                throw Error(ErrorKind::InvalidModel, "vertex table for '" + v + "' has wrong size");
        }
        for (auto & [e, t] : _edge) {
            if (natural_compare(e.first, e.second) >= 0 || ! _graph.has_edge(e.first, e.second))
                throw Error(ErrorKind::InvalidModel, "table for absent or non-canonical edge {" + e.first + ", " + e.second + "}");
            if (t.size() != static_cast<std::size_t>(q * q))
                throw Error(ErrorKind::InvalidModel, "edge table for {" + e.first + ", " + e.second + "} has wrong size");
        }
    }

    auto graph() const -> const LabeledGraph & { return _graph; }
    auto cardinality() const -> int { return _q; }

    auto vertex_potential(std::string_view v) const -> const VertexTable &
    {
        auto it = _vertex.find(v);
        if (it == _vertex.end())
            throw Error(ErrorKind::MissingVertex, "no vertex '" + std::string(v) + "'");
        return it->second;
    }

    /// Table oriented so that rows index `u`'s state.
    auto edge_potential(const Label & u, const Label & v) const -> EdgeTable
    {
        auto it = _edge.find(make_edge(u, v));
        if (it == _edge.end())
            throw Error(ErrorKind::MissingEdge, "no edge {" + u + ", " + v + "}");
        return natural_compare(u, v) < 0 ? it->second : transpose(it->second, _q);
    }

    auto edge_value(const Label & u, const Label & v, int xu, int xv) const -> const ExactNumber &
    {
        auto it = _edge.find(make_edge(u, v));
        if (it == _edge.end())
            throw Error(ErrorKind::MissingEdge, "no edge {" + u + ", " + v + "}");
        return natural_compare(u, v) < 0 ? it->second[xu * _q + xv] : it->second[xv * _q + xu];
    }

    void set_vertex_potential(const Label & v, VertexTable table)
    {
        if (table.size() != static_cast<std::size_t>(_q))
            throw Error(ErrorKind::InvalidModel, "vertex table has wrong size");
        auto it = _vertex.find(v);
        if (it == _vertex.end())
            throw Error(ErrorKind::MissingVertex, "no vertex '" + v + "'");
        it->second = std::move(table);
    }

    /// `table` rows index `u`'s state.
    void set_edge_potential(const Label & u, const Label & v, EdgeTable table)
    {
        if (table.size() != static_cast<std::size_t>(_q * _q))
            throw Error(ErrorKind::InvalidModel, "edge table has wrong size");
        auto it = _edge.find(make_edge(u, v));
        if (it == _edge.end())
            throw Error(ErrorKind::MissingEdge, "no edge {" + u + ", " + v + "}");
        it->second = natural_compare(u, v) < 0 ? std::move(table) : transpose(table, _q);
    }

    auto vertex_tables() const -> const std::map<Label, VertexTable, LabelLess> & { return _vertex; }
    auto edge_tables() const -> const std::map<Edge, EdgeTable, EdgeLess> & { return _edge; }

    auto canonical_text() const -> std::string
    {
        std::ostringstream out;
        out << "q " << _q << '\n' << _graph.canonical_text();
        for (auto & [v, t] : _vertex) {
            out << "v " << v;
            for (auto & x : t)
                out << ' ' << x;
            out << '\n';
        }
        for (auto & [e, t] : _edge) {
            out << "e " << e.first << ' ' << e.second;
            for (auto & x : t)
                out << ' ' << x;
            out << '\n';
        }
        return out.str();
    }

    auto fingerprint() const -> std::string { return fingerprint_of(canonical_text()); }

    friend auto operator==(const Model & a, const Model & b) -> bool
    {
        return a._q == b._q && a._graph == b._graph && a._vertex == b._vertex && a._edge == b._edge;
    }

  private:
    LabeledGraph _graph;
    int _q;
    std::map<Label, VertexTable, LabelLess> _vertex;
    std::map<Edge, EdgeTable, EdgeLess> _edge;
};

/// Copy of `m` whose potential at `v` is zero for every state except `value`.
inline auto clamp(const Model & m, const Label & v, int value) -> Model
{
    if (value < 0 || value >= m.cardinality())
        throw Error(ErrorKind::BadState, "state " + std::to_string(value) + " outside [0, " + std::to_string(m.cardinality()) + ")");
    auto table = m.vertex_potential(v);
    for (int a = 0; a < m.cardinality(); ++a)
        if (a != value)
            table[a] = ExactNumber(0);
    Model result = m;
    result.set_vertex_potential(v, std::move(table));
    return result;
}

} // namespace gmr
