#pragma once

#include <gmr/graph.hpp>

#include <algorithm>
#include <bit>
#include <cstdint>
#include <map>
#include <numeric>
#include <unordered_map>
#include <vector>

namespace gmr {

struct TreewidthResult
{
    int width = 0;
    std::vector<Label> elimination_order;
    bool exact = false;
    std::uint64_t expansions = 0;
};

inline constexpr std::uint64_t default_treewidth_budget = 10'000'000;

/// Eliminates vertices in `order`, adding fill edges, and returns the largest
/// neighbourhood seen at elimination time (the width of the induced triangulation).
inline auto elimination_width(const LabeledGraph & g, const std::vector<Label> & order) -> int
{
    if (order.size() != g.vertex_count())
        throw Error(ErrorKind::InvalidArgument, "elimination order must list every vertex once");
    std::map<Label, LabelSet, LabelLess> adj;
    for (auto & v : g.vertices())
        adj.emplace(v, g.neighbors(v));
    int width = 0;
    for (auto & v : order) {
        auto it = adj.find(v);
        if (it == adj.end())
            throw Error(ErrorKind::InvalidArgument, "elimination order repeats or invents '" + v + "'");
        auto nbrs = it->second;
        width = std::max(width, static_cast<int>(nbrs.size()));
        for (auto & a : nbrs) {
            auto & na = adj.at(a);
            na.erase(v);
            for (auto & b : nbrs)
                if (a != b)
                    na.insert(b);
        }
        adj.erase(it);
    }
    return width;
}

namespace detail {

    /// Min-fill elimination on an index graph; ties go to the lowest index (lowest label).
    inline auto min_fill_order(const IndexedGraph & ig) -> std::pair<std::vector<int>, int>
    {
        int n = ig.size();
        std::vector<std::vector<char>> matrix(n, std::vector<char>(n, 0));
        std::vector<std::vector<int>> nbrs(n);
        for (int v = 0; v < n; ++v)
            for (int w : ig.adjacency[v])
                matrix[v][w] = 1;
        for (int v = 0; v < n; ++v)
            nbrs[v] = ig.adjacency[v];

        std::vector<char> gone(n, 0);
        std::vector<int> order;
        int width = 0;
        for (int step = 0; step < n; ++step) {
            int best = -1;
            long best_fill = 0;
            for (int v = 0; v < n; ++v) {
                if (gone[v])
                    continue;
                long fill = 0;
                auto & nv = nbrs[v];
                for (std::size_t a = 0; a < nv.size(); ++a)
                    for (std::size_t b = a + 1; b < nv.size(); ++b)
                        if (! matrix[nv[a]][nv[b]])
                            ++fill;
                if (best == -1 || fill < best_fill) {
                    best = v;
                    best_fill = fill;
                }
            }
            auto nv = nbrs[best];
            width = std::max(width, static_cast<int>(nv.size()));
            for (std::size_t a = 0; a < nv.size(); ++a)
                for (std::size_t b = a + 1; b < nv.size(); ++b)
                    if (! matrix[nv[a]][nv[b]]) {
                        matrix[nv[a]][nv[b]] = matrix[nv[b]][nv[a]] = 1;
                        nbrs[nv[a]].push_back(nv[b]);
                        nbrs[nv[b]].push_back(nv[a]);
                    }
            for (int w : nv) {
                matrix[w][best] = 0;
                std::erase(nbrs[w], best);
            }
            gone[best] = 1;
            order.push_back(best);
        }
        return {order, width};
    }

    class ExactTreewidthSearch
    {
      public:
        ExactTreewidthSearch(const IndexedGraph & ig, std::uint64_t budget) :
            _n(ig.size()), _adj(_n, 0), _budget(budget)
        {
            for (int v = 0; v < _n; ++v)
                for (int w : ig.adjacency[v])
                    _adj[v] |= bit(w);
            _all = _n == 64 ? ~0ULL : (bit(_n) - 1);
        }

        void run(int upper_bound, std::vector<int> order)
        {
            _upper = upper_bound;
            _best_order = std::move(order);
            search(0, 0);
        }

        auto width() const -> int { return _upper; }
        auto order() const -> const std::vector<int> & { return _best_order; }
        auto exhausted() const -> bool { return _exhausted; }
        auto expansions() const -> std::uint64_t { return _expansions; }

      private:
        static auto bit(int v) -> std::uint64_t { return 1ULL << v; }

        /// Vertices outside S + {v} reachable from v through eliminated vertices: v's
        /// neighbourhood once S has been eliminated, independent of the order within S.
        auto eliminated_neighbourhood(std::uint64_t eliminated, int v) const -> std::uint64_t
        {
            std::uint64_t visited = bit(v), frontier = bit(v), result = 0;
            while (frontier) {
                int x = std::countr_zero(frontier);
                frontier &= frontier - 1;
                auto fresh = _adj[x] & ~visited;
                visited |= fresh;
                result |= fresh & ~eliminated;
                frontier |= fresh & eliminated;
            }
            return result;
        }

        // minor-min-width lower bound on the remaining graph
        static auto minor_min_width(std::vector<std::uint64_t> h, std::uint64_t alive) -> int
        {
            int bound = 0;
            while (std::popcount(alive) > 1) {
                int v = -1, v_degree = 0;
                for (auto rest = alive; rest; rest &= rest - 1) {
                    int x = std::countr_zero(rest);
                    int d = std::popcount(h[x]);
                    if (v == -1 || d < v_degree) {
                        v = x;
                        v_degree = d;
                    }
                }
                bound = std::max(bound, v_degree);
                if (v_degree == 0) {
                    alive &= ~bit(v);
                    continue;
                }
                int u = -1, u_degree = 0;
                for (auto rest = h[v]; rest; rest &= rest - 1) {
                    int x = std::countr_zero(rest);
                    int d = std::popcount(h[x]);
                    if (u == -1 || d < u_degree) {
                        u = x;
                        u_degree = d;
                    }
                }
                for (auto rest = h[v]; rest; rest &= rest - 1) {
                    int w = std::countr_zero(rest);
                    h[w] &= ~bit(v);
                    if (w != u) {
                        h[w] |= bit(u);
                        h[u] |= bit(w);
                    }
                }
                h[u] &= ~bit(u);
                h[v] = 0;
                alive &= ~bit(v);
            }
            return bound;
        }

        void search(std::uint64_t eliminated, int width)
        {
            if (_exhausted || width >= _upper)
                return;
            if (++_expansions > _budget) {
                _exhausted = true;
                return;
            }
            auto remaining = _all & ~eliminated;
            int left = std::popcount(remaining);
            if (left <= width + 1) {
                _upper = width;
                _best_order = _path;
                for (auto rest = remaining; rest; rest &= rest - 1)
                    _best_order.push_back(std::countr_zero(rest));
                return;
            }
            if (auto it = _memo.find(eliminated); it != _memo.end() && it->second <= width)
                return;
            _memo[eliminated] = width;

            std::vector<std::uint64_t> h(_n, 0);
            for (auto rest = remaining; rest; rest &= rest - 1) {
                int v = std::countr_zero(rest);
                h[v] = eliminated_neighbourhood(eliminated, v);
            }

            for (auto rest = remaining; rest; rest &= rest - 1) {
                int v = std::countr_zero(rest);
                bool simplicial = true;
                for (auto nb = h[v]; nb && simplicial; nb &= nb - 1) {
                    int x = std::countr_zero(nb);
                    if ((h[v] & ~bit(x) & ~h[x]) != 0)
                        simplicial = false;
                }
                if (simplicial) {
                    _path.push_back(v);
                    search(eliminated | bit(v), std::max(width, std::popcount(h[v])));
                    _path.pop_back();
                    return;
                }
            }

            if (std::max(width, minor_min_width(h, remaining)) >= _upper)
                return;

            std::vector<int> candidates;
            for (auto rest = remaining; rest; rest &= rest - 1)
                candidates.push_back(std::countr_zero(rest));
            std::stable_sort(candidates.begin(), candidates.end(),
                [&](int a, int b) { return std::popcount(h[a]) < std::popcount(h[b]); });
            for (int v : candidates) {
                int next = std::max(width, std::popcount(h[v]));
                if (next >= _upper)
                    continue;
                _path.push_back(v);
                search(eliminated | bit(v), next);
                _path.pop_back();
                if (_exhausted)
                    return;
            }
        }

        int _n;
        std::vector<std::uint64_t> _adj;
        std::uint64_t _all = 0;
        std::uint64_t _budget;
        std::uint64_t _expansions = 0;
        bool _exhausted = false;
        int _upper = 0;
        std::vector<int> _best_order, _path;
        std::unordered_map<std::uint64_t, int> _memo;
    };

    inline auto to_labels(const IndexedGraph & ig, const std::vector<int> & order) -> std::vector<Label>
    {
        std::vector<Label> result;
        result.reserve(order.size());
        for (int v : order)
            result.push_back(ig.labels[v]);
        return result;
    }

} // namespace detail

/// Min-fill heuristic; an upper bound on treewidth with its certifying order.
inline auto treewidth_upper(const LabeledGraph & g) -> TreewidthResult
{
    if (g.empty())
        throw Error(ErrorKind::InvalidArgument, "treewidth of the empty graph is undefined");
    IndexedGraph ig(g);
    auto [order, width] = detail::min_fill_order(ig);
    return {width, detail::to_labels(ig, order), false, 0};
}

/// Branch and bound over elimination orders, memoised on the eliminated set, pruned by
/// minor-min-width and seeded with the min-fill bound. If the node budget runs out the
/// best order found so far is returned with `exact == false`.
inline auto treewidth_exact(const LabeledGraph & g, std::uint64_t budget = default_treewidth_budget) -> TreewidthResult
{
    if (g.empty())
        throw Error(ErrorKind::InvalidArgument, "treewidth of the empty graph is undefined");
    if (g.vertex_count() > 64)
        throw Error(ErrorKind::InvalidArgument, "exact treewidth supports at most 64 vertices");
    IndexedGraph ig(g);
    auto [order, width] = detail::min_fill_order(ig);
    detail::ExactTreewidthSearch search(ig, budget);
    search.run(width, order);
    return {search.width(), detail::to_labels(ig, search.order()), ! search.exhausted(), search.expansions()};
}

} // namespace gmr
