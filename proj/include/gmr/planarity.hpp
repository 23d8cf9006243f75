#pragma once

#include <gmr/graph.hpp>

#include <boost/graph/adjacency_list.hpp>
#include <boost/graph/boyer_myrvold_planar_test.hpp>
#include <boost/graph/graph_traits.hpp>

#include <optional>
#include <utility>
#include <vector>

namespace gmr {

/// Cyclic neighbour order around each vertex of a planar drawing, all in the same rotational sense.
using RotationSystem = std::vector<std::vector<int>>;

namespace detail {

    using PlanarGraph = boost::adjacency_list<boost::vecS, boost::vecS, boost::undirectedS,
        boost::property<boost::vertex_index_t, int>, boost::property<boost::edge_index_t, int>>;

    inline auto to_boost(const std::vector<std::vector<int>> & adjacency) -> PlanarGraph
    {
        PlanarGraph g(adjacency.size());
        int index = 0;
        for (std::size_t u = 0; u < adjacency.size(); ++u)
            for (int v : adjacency[u])
                if (static_cast<int>(u) < v) {
                    auto [e, added] = boost::add_edge(u, v, g);
                    boost::put(boost::edge_index, g, e, index++);
                }
        return g;
    }

} // namespace detail

/// Planarity test on an adjacency list (vertices 0..n-1, symmetric lists).
inline auto is_planar(const std::vector<std::vector<int>> & adjacency) -> bool
{
    auto g = detail::to_boost(adjacency);
    return boost::boyer_myrvold_planarity_test(g);
}

inline auto is_planar(const LabeledGraph & g) -> bool { return is_planar(IndexedGraph(g).adjacency); }

/// A combinatorial planar embedding, or nothing when the graph is not planar.
inline auto planar_rotation_system(const std::vector<std::vector<int>> & adjacency) -> std::optional<RotationSystem>
{
    using namespace boost;
    auto g = detail::to_boost(adjacency);
    using EdgeDesc = graph_traits<detail::PlanarGraph>::edge_descriptor;
    std::vector<std::vector<EdgeDesc>> embedding(num_vertices(g));
    bool planar = boyer_myrvold_planarity_test(boyer_myrvold_params::graph = g,
        boyer_myrvold_params::embedding = make_iterator_property_map(embedding.begin(), get(vertex_index, g)));
    if (! planar)
        return std::nullopt;
    RotationSystem rotation(num_vertices(g));
    for (std::size_t v = 0; v < rotation.size(); ++v)
        for (auto & e : embedding[v]) {
            auto a = static_cast<int>(source(e, g)), b = static_cast<int>(target(e, g));
            rotation[v].push_back(a == static_cast<int>(v) ? b : a);
        }
    return rotation;
}

} // namespace gmr
