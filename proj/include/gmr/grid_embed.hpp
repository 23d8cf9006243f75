#pragma once

#include <gmr/embed.hpp>
#include <gmr/minor_search.hpp>
#include <gmr/planarity.hpp>

#include <algorithm>
#include <cmath>
#include <list>
#include <map>
#include <optional>
#include <queue>
#include <vector>

namespace gmr {

/// Documented linear bound on the drawing side: side <= grid_side_slope * |V| + grid_side_offset.
inline constexpr std::size_t grid_side_slope = 2;
inline constexpr std::size_t grid_side_offset = 1;

struct PlanarGridOptions
{
    /// After drawing, look for smaller grids that still contain the graph as a minor.
    bool compact = true;
    /// Chain placements spent per candidate side while compacting.
    std::uint64_t compact_budget = 400;
    std::uint64_t seed = 0;
};

struct PlanarGridResult
{
    /// Side of the grid the sequence starts from.
    std::size_t side = 0;
    /// Side of the visibility drawing before compaction.
    std::size_t drawing_side = 0;
    ChainEmbedding embedding;
    MinorSequence seq;
};

namespace detail {

    /// Adds non-edges while the graph stays planar, until it is maximal planar (connected, and
    /// triangulated once it has at least three vertices).
    inline void make_maximal_planar(std::vector<std::vector<int>> & adjacency)
    {
        int n = static_cast<int>(adjacency.size());
        for (int u = 0; u < n; ++u)
            for (int v = u + 1; v < n; ++v) {
                if (std::find(adjacency[u].begin(), adjacency[u].end(), v) != adjacency[u].end())
                    continue;
                adjacency[u].push_back(v);
                adjacency[v].push_back(u);
                if (! is_planar(adjacency)) {
                    adjacency[u].pop_back();
                    adjacency[v].pop_back();
                }
            }
    }

    /// st-numbering of a biconnected graph with edge {s, t}: every other vertex has both a lower
    /// and a higher numbered neighbour. DFS with low points, then ordered list insertion.
    inline auto st_numbering(const std::vector<std::vector<int>> & adjacency, int s, int t) -> std::vector<int>
    {
        int n = static_cast<int>(adjacency.size());
        std::vector<int> pre(n, -1), parent(n, -1), low(n, -1), preorder;
        // iterative DFS; t is the first child of s
        {
            struct Frame
            {
                int v;
                std::size_t next;
            };
            std::vector<Frame> stack;
            pre[s] = 0;
            preorder.push_back(s);
            low[s] = s;
            pre[t] = 1;
            preorder.push_back(t);
            parent[t] = s;
            low[t] = t;
            stack.push_back({s, adjacency[s].size()}); // s has no other children: t reaches everything
            stack.push_back({t, 0});
            while (stack.size() > 1) {
                auto & frame = stack.back();
                int v = frame.v;
                if (frame.next < adjacency[v].size()) {
                    int w = adjacency[v][frame.next++];
                    if (pre[w] < 0) {
                        pre[w] = static_cast<int>(preorder.size());
                        preorder.push_back(w);
                        parent[w] = v;
                        low[w] = w;
                        stack.push_back({w, 0});
                    }
                    else if (w != parent[v] && pre[w] < pre[low[v]])
                        low[v] = w;
                }
                else {
                    stack.pop_back();
                    int p = parent[v];
                    if (p >= 0 && pre[low[v]] < pre[low[p]])
                        low[p] = low[v];
                }
            }
        }
        if (static_cast<int>(preorder.size()) != n)
            throw Error(ErrorKind::BadState, "st-numbering needs a connected graph");

        std::list<int> order{s, t};
        std::vector<std::list<int>::iterator> where(n);
        where[s] = order.begin();
        where[t] = std::next(order.begin());
        std::vector<char> minus(n, 0);
        minus[s] = 1;
        for (std::size_t i = 2; i < preorder.size(); ++i) {
            int v = preorder[i], p = parent[v];
            if (minus[low[v]]) {
                where[v] = order.insert(where[p], v);
                minus[p] = 0;
            }
            else {
                where[v] = order.insert(std::next(where[p]), v);
                minus[p] = 1;
            }
        }
        std::vector<int> number(n);
        int k = 0;
        for (int v : order)
            number[v] = k++;

        for (int v = 0; v < n; ++v) {
            if (v == s || v == t)
                continue;
            bool lower = false, higher = false;
            for (int w : adjacency[v])
                (number[w] < number[v] ? lower : higher) = true;
            if (! lower || ! higher)
                throw Error(ErrorKind::BadState, "st-numbering failed; graph is not biconnected");
        }
        return number;
    }

    /// Visibility representation of a triangulated planar graph: vertex v is the horizontal
    /// segment at row number[v], edge {u, v} the vertical segment at column column[edge].
    struct Visibility
    {
        std::vector<int> row;
        std::map<std::pair<int, int>, int> column; // key (lower, higher) by row
    };

    inline auto visibility(const std::vector<std::vector<int>> & adjacency, const RotationSystem & rotation) -> Visibility
    {
        int n = static_cast<int>(adjacency.size());
        int s = 0, t = rotation[0].front();
        auto number = st_numbering(adjacency, s, t);

        // faces: dart u->v continues with v->w, w the successor of u in v's rotation
        std::map<std::pair<int, int>, int> face_of;
        int faces = 0;
        for (int u = 0; u < n; ++u)
            for (int v : rotation[u]) {
                if (face_of.count({u, v}))
                    continue;
                int a = u, b = v;
                while (! face_of.count({a, b})) {
                    face_of[{a, b}] = faces;
                    auto & rot = rotation[b];
                    auto pos = std::find(rot.begin(), rot.end(), a) - rot.begin();
                    int c = rot[(pos + 1) % rot.size()];
                    a = b;
                    b = c;
                }
                ++faces;
            }
        std::size_t edges = 0;
        for (auto & r : rotation)
            edges += r.size();
        edges /= 2;
        if (static_cast<std::size_t>(faces) != edges - n + 2)
            throw Error(ErrorKind::BadState, "rotation system is not a planar embedding");

        // the face of dart s->t plays the outer face, split into source and sink of the dual
        int outer = face_of.at({s, t});
        int source = faces, sink = faces + 1;
        std::vector<std::vector<int>> dual(faces + 2);
        std::vector<int> indegree(faces + 2, 0);
        std::map<std::pair<int, int>, int> left_face;
        for (int u = 0; u < n; ++u)
            for (int v : rotation[u]) {
                if (number[u] > number[v])
                    continue;
                int left = face_of.at({u, v}), right = face_of.at({v, u});
                if (left == outer)
                    left = source;
                if (right == outer)
                    right = sink;
                dual[left].push_back(right);
                ++indegree[right];
                left_face[{u, v}] = left;
            }

        std::vector<int> depth(faces + 2, 0);
        std::queue<int> ready;
        for (int f = 0; f < faces + 2; ++f)
            if (indegree[f] == 0)
                ready.push(f);
        int processed = 0;
        while (! ready.empty()) {
            int f = ready.front();
            ready.pop();
            ++processed;
            for (int g : dual[f]) {
                depth[g] = std::max(depth[g], depth[f] + 1);
                if (--indegree[g] == 0)
                    ready.push(g);
            }
        }
        if (processed != faces + 2)
            throw Error(ErrorKind::BadState, "dual of the st-orientation has a cycle");

        Visibility vis;
        vis.row = number;
        for (auto & [dart, left] : left_face)
            vis.column[{dart.first, dart.second}] = depth[left];
        return vis;
    }

    /// Chains of `g` in the grid drawn from a visibility representation of a maximal planar supergraph.
    inline auto draw_on_grid(const LabeledGraph & g) -> ChainEmbedding
    {
        IndexedGraph ig(g);
        int n = ig.size();
        auto full = ig.adjacency;
        make_maximal_planar(full);

        std::vector<std::vector<std::pair<int, int>>> points(n);
        std::size_t side = 1;
        if (n <= 2) {
            for (int v = 0; v < n; ++v)
                points[v].push_back({0, v});
            side = std::max(n, 1);
        }
        else {
            auto rotation = planar_rotation_system(full);
            auto vis = visibility(full, *rotation);
            auto column_of = [&](int u, int v) {
                return vis.row[u] < vis.row[v] ? vis.column.at({u, v}) : vis.column.at({v, u});
            };
            int max_column = 0;
            for (int v = 0; v < n; ++v) {
                // span the columns of original edges; an isolated vertex keeps one of its drawing edges
                int lo = std::numeric_limits<int>::max(), hi = -1;
                auto & incident = ig.adjacency[v].empty() ? full[v] : ig.adjacency[v];
                for (int w : incident) {
                    int c = column_of(v, w);
                    lo = std::min(lo, c);
                    hi = std::max(hi, c);
                }
                for (int c = lo; c <= hi; ++c)
                    points[v].push_back({vis.row[v], c});
                max_column = std::max(max_column, hi);
            }
            for (int u = 0; u < n; ++u)
                for (int w : ig.adjacency[u])
                    if (vis.row[u] < vis.row[w]) {
                        int c = column_of(u, w);
                        for (int r = vis.row[u] + 1; r < vis.row[w]; ++r)
                            points[u].push_back({r, c});
                    }
            side = std::max<std::size_t>(n, max_column + 1);
        }

        ChainEmbedding e{g, grid_graph(side), {}};
        for (int v = 0; v < n; ++v) {
            LabelSet chain;
            for (auto [r, c] : points[v])
                chain.insert(grid_label(r, c));
            e.chains.emplace(ig.labels[v], std::move(chain));
        }
        return e;
    }

} // namespace detail

/// A grid side and a sequence of minor operations taking grid_graph(side) to `g`.
/// The construction draws `g` as a visibility representation (vertices horizontal segments,
/// edges vertical segments) whose side is at most 2|V| + 1; with `compact` set, smaller grids
/// are then searched for a chain embedding and the smallest one found is used.
inline auto planar_to_grid_minor(const LabeledGraph & g, const PlanarGridOptions & options = {}) -> PlanarGridResult
{
    if (! is_planar(g))
        throw Error(ErrorKind::NotPlanar, "graph with " + std::to_string(g.vertex_count()) + " vertices and "
                + std::to_string(g.edge_count()) + " edges is not planar");
    PlanarGridResult result;
    result.embedding = detail::draw_on_grid(g);
    result.embedding.verify();
    result.drawing_side = result.side = static_cast<std::size_t>(std::lround(std::sqrt(result.embedding.host.vertex_count())));

    if (options.compact) {
        auto smallest = static_cast<std::size_t>(std::ceil(std::sqrt(static_cast<double>(g.vertex_count()))));
        for (std::size_t k = std::max<std::size_t>(smallest, 1); k < result.side; ++k)
            if (auto found = find_minor(grid_graph(k), g, MinorSearchOptions{options.compact_budget, options.seed + k})) {
                result.embedding = std::move(*found);
                result.side = k;
                break;
            }
    }
    result.seq = chains_to_minor_sequence(result.embedding);
    return result;
}

} // namespace gmr
