#pragma once

#include <gmr/error.hpp>
#include <gmr/labels.hpp>

#include <algorithm>
#include <cstddef>
#include <map>
#include <set>
#include <sstream>
#include <string>
#include <utility>
#include <vector>

namespace gmr {

using LabelSet = std::set<Label, LabelLess>;

/// Simple undirected graph over string labels. Iteration order is always natural label order,
/// so every derived artifact (fingerprints, files, elimination tie-breaks) is deterministic.
class LabeledGraph
{
  public:
    LabeledGraph() = default;

    LabeledGraph(const std::vector<Label> & vertices, const std::vector<std::pair<Label, Label>> & edges)
    {
        for (auto & v : vertices) {
            if (has_vertex(v))
                throw Error(ErrorKind::InvalidGraph, "duplicate vertex '" + v + "'");
            add_vertex(v);
        }
        for (auto & [u, v] : edges) {
            if (has_edge(u, v))
                throw Error(ErrorKind::InvalidGraph, "duplicate edge {" + u + ", " + v + "}");
            add_edge(u, v);
        }
    }

    auto vertex_count() const -> std::size_t { return _adjacency.size(); }
    auto edge_count() const -> std::size_t { return _edge_count; }
    auto empty() const -> bool { return _adjacency.empty(); }

    auto has_vertex(std::string_view v) const -> bool { return _adjacency.find(v) != _adjacency.end(); }

    auto has_edge(std::string_view u, std::string_view v) const -> bool
    {
        auto it = _adjacency.find(u);
        return it != _adjacency.end() && it->second.count(v) != 0;
    }

    auto neighbors(std::string_view v) const -> const LabelSet &
    {
        auto it = _adjacency.find(v);
        if (it == _adjacency.end())
            throw Error(ErrorKind::MissingVertex, "no vertex '" + std::string(v) + "'");
        return it->second;
    }

    auto degree(std::string_view v) const -> std::size_t { return neighbors(v).size(); }

    auto vertices() const -> std::vector<Label>
    {
        std::vector<Label> result;
        result.reserve(_adjacency.size());
        for (auto & [v, _] : _adjacency)
            result.push_back(v);
        return result;
    }

    /// Edges as (smaller, larger) label pairs, sorted.
    auto edges() const -> std::vector<Edge>
    {
        std::vector<Edge> result;
        result.reserve(_edge_count);
        for (auto & [u, nbrs] : _adjacency)
            for (auto & v : nbrs)
                if (natural_compare(u, v) < 0)
                    result.emplace_back(u, v);
        return result;
    }

    void add_vertex(const Label & v)
    {
        require_valid_label(v);
        if (has_vertex(v))
            throw Error(ErrorKind::LabelCollision, "vertex '" + v + "' already present");
        _adjacency.emplace(v, LabelSet{});
    }

    void add_edge(const Label & u, const Label & v)
    {
        if (u == v)
            throw Error(ErrorKind::InvalidGraph, "self-loop at '" + u + "'");
        auto iu = _adjacency.find(u), iv = _adjacency.find(v);
        if (iu == _adjacency.end())
            throw Error(ErrorKind::MissingVertex, "edge endpoint '" + u + "' not present");
        if (iv == _adjacency.end())
            throw Error(ErrorKind::MissingVertex, "edge endpoint '" + v + "' not present");
        if (iu->second.insert(v).second) {
            iv->second.insert(u);
            ++_edge_count;
        }
    }

    void remove_edge(const Label & u, const Label & v)
    {
        if (! has_edge(u, v))
            throw Error(ErrorKind::MissingEdge, "no edge {" + u + ", " + v + "}");
        _adjacency.find(u)->second.erase(v);
        _adjacency.find(v)->second.erase(u);
        --_edge_count;
    }

    void remove_vertex(const Label & v)
    {
        auto it = _adjacency.find(v);
        if (it == _adjacency.end())
            throw Error(ErrorKind::MissingVertex, "no vertex '" + v + "'");
        for (auto & w : it->second)
            _adjacency.find(w)->second.erase(v);
        _edge_count -= it->second.size();
        _adjacency.erase(it);
    }

    /// Canonical text: the edge-list file rendering without comments.
    auto canonical_text() const -> std::string
    {
        std::ostringstream out;
        out << vertex_count() << ' ' << edge_count() << '\n';
        for (auto & [v, _] : _adjacency)
            out << v << '\n';
        for (auto & [u, v] : edges())
            out << u << ' ' << v << '\n';
        return out.str();
    }

    auto fingerprint() const -> std::string { return fingerprint_of(canonical_text()); }

    friend auto operator==(const LabeledGraph & a, const LabeledGraph & b) -> bool
    {
        return a._edge_count == b._edge_count && a._adjacency == b._adjacency;
    }

  private:
    std::map<Label, LabelSet, LabelLess> _adjacency;
    std::size_t _edge_count = 0;
};

inline auto grid_label(std::size_t row, std::size_t col) -> Label { return std::to_string(row) + "," + std::to_string(col); }

/// g x g grid; vertex `r,c` is adjacent to its horizontal and vertical neighbours.
inline auto grid_graph(std::size_t g) -> LabeledGraph
{
    if (g < 1)
        throw Error(ErrorKind::InvalidArgument, "grid side must be at least 1");
    LabeledGraph result;
    for (std::size_t r = 0; r < g; ++r)
        for (std::size_t c = 0; c < g; ++c)
            result.add_vertex(grid_label(r, c));
    for (std::size_t r = 0; r < g; ++r)
        for (std::size_t c = 0; c < g; ++c) {
            if (c + 1 < g)
                result.add_edge(grid_label(r, c), grid_label(r, c + 1));
            if (r + 1 < g)
                result.add_edge(grid_label(r, c), grid_label(r + 1, c));
        }
    return result;
}

inline auto path_graph(std::size_t n, const std::string & prefix = "p") -> LabeledGraph
{
    LabeledGraph result;
    for (std::size_t i = 0; i < n; ++i) {
        result.add_vertex(prefix + std::to_string(i));
        if (i > 0)
            result.add_edge(prefix + std::to_string(i - 1), prefix + std::to_string(i));
    }
    return result;
}

inline auto cycle_graph(std::size_t n, const std::string & prefix = "c") -> LabeledGraph
{
    auto result = path_graph(n, prefix);
    if (n >= 3)
        result.add_edge(prefix + "0", prefix + std::to_string(n - 1));
    return result;
}

inline auto complete_graph(std::size_t n, const std::string & prefix = "k") -> LabeledGraph
{
    LabeledGraph result;
    for (std::size_t i = 0; i < n; ++i)
        result.add_vertex(prefix + std::to_string(i));
    for (std::size_t i = 0; i < n; ++i)
        for (std::size_t j = i + 1; j < n; ++j)
            result.add_edge(prefix + std::to_string(i), prefix + std::to_string(j));
    return result;
}

/// Number of connected components.
inline auto component_count(const LabeledGraph & g) -> std::size_t
{
    LabelSet seen;
    std::size_t components = 0;
    for (auto & start : g.vertices()) {
        if (seen.count(start))
            continue;
        ++components;
        std::vector<Label> stack{start};
        seen.insert(start);
        while (! stack.empty()) {
            auto v = stack.back();
            stack.pop_back();
            for (auto & w : g.neighbors(v))
                if (seen.insert(w).second)
                    stack.push_back(w);
        }
    }
    return components;
}

/// Dense integer view of a graph: vertex i is the i-th label in natural order.
struct IndexedGraph
{
    std::vector<Label> labels;
    std::vector<std::vector<int>> adjacency;

    explicit IndexedGraph(const LabeledGraph & g) : labels(g.vertices()), adjacency(labels.size())
    {
        std::map<Label, int, LabelLess> index;
        for (std::size_t i = 0; i < labels.size(); ++i)
            index.emplace(labels[i], static_cast<int>(i));
        for (std::size_t i = 0; i < labels.size(); ++i)
            for (auto & w : g.neighbors(labels[i]))
                adjacency[i].push_back(index.at(w));
    }

    auto size() const -> int { return static_cast<int>(labels.size()); }
};

} // namespace gmr
