#pragma once

#include <gmr/embed.hpp>
#include <gmr/graph.hpp>

#include <algorithm>
#include <cmath>
#include <cstdint>
#include <limits>
#include <numeric>
#include <optional>
#include <queue>
#include <random>
#include <vector>

namespace gmr {

struct MinorSearchOptions
{
    /// Number of chain placements (one shortest-path chain extension per placement) before giving up.
    std::uint64_t budget = 100'000;
    std::uint64_t seed = 0;
};

namespace detail {

    inline auto cyclomatic_number(const LabeledGraph & g) -> std::size_t
    {
        return g.edge_count() + component_count(g) - g.vertex_count();
    }

    /// Chain search in the style of overlap-penalised shortest-path embedding: chains may share
    /// host vertices while the search runs, sharing gets more expensive every round, and a round
    /// without sharing is a candidate answer.
    class ChainSearch
    {
      public:
        ChainSearch(const IndexedGraph & host, const IndexedGraph & target, const MinorSearchOptions & options) :
            _host(host), _target(target), _budget(options.budget), _rng(options.seed)
        {
        }

        auto run() -> std::optional<std::vector<std::vector<int>>>
        {
            int n = _target.size();
            while (_spent < _budget) {
                _chains.assign(n, {});
                _usage.assign(_host.size(), 0);
                _alpha = 2.0;
                auto order = placement_order();
                for (int t : order)
                    if (! place(t))
                        return std::nullopt;
                std::size_t best_overlap = overlap();
                int stale = 0;
                while (_spent < _budget) {
                    if (best_overlap == 0)
                        return _chains;
                    _alpha = std::min(_alpha * 1.5, 1e6);
                    std::shuffle(order.begin(), order.end(), _rng);
                    for (int t : order) {
                        tear_out(t);
                        if (! place(t))
                            return std::nullopt;
                    }
                    auto now = overlap();
                    if (now < best_overlap) {
                        best_overlap = now;
                        stale = 0;
                    }
                    else if (++stale >= 8)
                        break; // restart
                }
            }
            return std::nullopt;
        }

      private:
        auto placement_order() -> std::vector<int>
        {
            int n = _target.size();
            std::vector<int> order, start(n);
            std::iota(start.begin(), start.end(), 0);
            std::shuffle(start.begin(), start.end(), _rng);
            std::vector<char> seen(n, 0);
            for (int s : start) {
                if (seen[s])
                    continue;
                seen[s] = 1;
                std::queue<int> queue;
                queue.push(s);
                while (! queue.empty()) {
                    int v = queue.front();
                    queue.pop();
                    order.push_back(v);
                    auto nbrs = _target.adjacency[v];
                    std::shuffle(nbrs.begin(), nbrs.end(), _rng);
                    for (int w : nbrs)
                        if (! seen[w]) {
                            seen[w] = 1;
                            queue.push(w);
                        }
                }
            }
            return order;
        }

        auto weight(int h) const -> double { return std::pow(_alpha, _usage[h]); }

        auto overlap() const -> std::size_t
        {
            std::size_t total = 0;
            for (int u : _usage)
                if (u > 1)
                    total += u - 1;
            return total;
        }

        void tear_out(int t)
        {
            for (int h : _chains[t])
                --_usage[h];
            _chains[t].clear();
        }

        /// Distances from a chain where entering host vertex h costs weight(h); chain vertices cost 0.
        void dijkstra(const std::vector<int> & sources, std::vector<double> & dist, std::vector<int> & parent) const
        {
            int n = _host.size();
            dist.assign(n, std::numeric_limits<double>::infinity());
            parent.assign(n, -1);
            using Item = std::pair<double, int>;
            std::priority_queue<Item, std::vector<Item>, std::greater<>> heap;
            for (int s : sources) {
                dist[s] = 0.0;
                heap.emplace(0.0, s);
            }
            while (! heap.empty()) {
                auto [d, v] = heap.top();
                heap.pop();
                if (d > dist[v])
                    continue;
                for (int w : _host.adjacency[v]) {
                    double nd = d + weight(w);
                    if (nd < dist[w]) {
                        dist[w] = nd;
                        parent[w] = v;
                        heap.emplace(nd, w);
                    }
                }
            }
        }

        auto place(int t) -> bool
        {
            ++_spent;
            int hn = _host.size();
            std::vector<int> placed;
            for (int u : _target.adjacency[t])
                if (! _chains[u].empty())
                    placed.push_back(u);

            std::vector<int> chain;
            if (placed.empty()) {
                int least = *std::min_element(_usage.begin(), _usage.end());
                std::vector<int> candidates;
                for (int h = 0; h < hn; ++h)
                    if (_usage[h] == least)
                        candidates.push_back(h);
                chain.push_back(candidates[std::uniform_int_distribution<std::size_t>(0, candidates.size() - 1)(_rng)]);
            }
            else {
                std::vector<std::vector<double>> dist(placed.size());
                std::vector<std::vector<int>> parent(placed.size());
                for (std::size_t i = 0; i < placed.size(); ++i)
                    dijkstra(_chains[placed[i]], dist[i], parent[i]);
                double best = std::numeric_limits<double>::infinity();
                std::vector<int> roots;
                for (int h = 0; h < hn; ++h) {
                    double cost = weight(h);
                    for (std::size_t i = 0; i < placed.size(); ++i)
                        cost += dist[i][h] == 0.0 ? 0.0 : dist[i][h] - weight(h);
                    // a root inside a neighbour's chain would always overlap it
                    for (std::size_t i = 0; i < placed.size(); ++i)
                        if (dist[i][h] == 0.0)
                            cost += weight(h) * _alpha;
                    if (cost < best - 1e-12) {
                        best = cost;
                        roots.assign(1, h);
                    }
                    else if (std::abs(cost - best) <= 1e-12)
                        roots.push_back(h);
                }
                if (roots.empty())
                    return false; // some neighbour chain is unreachable: the host lacks a component
                int root = roots[std::uniform_int_distribution<std::size_t>(0, roots.size() - 1)(_rng)];
                std::vector<char> in_chain(hn, 0);
                chain.push_back(root);
                in_chain[root] = 1;
                for (std::size_t i = 0; i < placed.size(); ++i) {
                    if (dist[i][root] == 0.0)
                        continue;
                    for (int v = parent[i][root]; v != -1 && dist[i][v] != 0.0; v = parent[i][v])
                        if (! in_chain[v]) {
                            in_chain[v] = 1;
                            chain.push_back(v);
                        }
                }
            }
            for (int h : chain)
                ++_usage[h];
            _chains[t] = std::move(chain);
            return true;
        }

        const IndexedGraph & _host;
        const IndexedGraph & _target;
        std::uint64_t _budget;
        std::uint64_t _spent = 0;
        std::mt19937_64 _rng;
        double _alpha = 2.0;
        std::vector<std::vector<int>> _chains;
        std::vector<int> _usage;
    };

} // namespace detail

/// Heuristic search for `target` as a minor of `host`. Nothing means the budget ran out, which is
/// not a proof that no embedding exists. Any returned embedding has been verified. The result
/// depends only on the inputs and the seed.
inline auto find_minor(const LabeledGraph & host, const LabeledGraph & target, const MinorSearchOptions & options = {})
    -> std::optional<ChainEmbedding>
{
    if (target.vertex_count() > host.vertex_count() || target.edge_count() > host.edge_count()
        || detail::cyclomatic_number(target) > detail::cyclomatic_number(host))
        return std::nullopt;

    // labelled subgraph: the identity embedding
    bool identity = true;
    for (auto & v : target.vertices())
        identity = identity && host.has_vertex(v);
    if (identity)
        for (auto & [a, b] : target.edges())
            identity = identity && host.has_edge(a, b);
    if (identity) {
        ChainEmbedding e{target, host, {}};
        for (auto & v : target.vertices())
            e.chains[v] = LabelSet{v};
        e.verify();
        return e;
    }
    if (target.vertex_count() == 0)
        return ChainEmbedding{target, host, {}};

    IndexedGraph ih(host), it(target);
    detail::ChainSearch search(ih, it, options);
    auto found = search.run();
    if (! found)
        return std::nullopt;
    ChainEmbedding e{target, host, {}};
    for (int t = 0; t < it.size(); ++t) {
        LabelSet chain;
        for (int h : (*found)[t])
            chain.insert(ih.labels[h]);
        e.chains.emplace(it.labels[t], std::move(chain));
    }
    if (e.check())
        return std::nullopt;
    return e;
}

/// The g x g grid (labels `r,c`) as a minor of `host`.
inline auto find_grid_minor(const LabeledGraph & host, std::size_t g, std::uint64_t budget = 100'000, std::uint64_t seed = 0)
    -> std::optional<ChainEmbedding>
{
    return find_minor(host, grid_graph(g), MinorSearchOptions{budget, seed});
}

} // namespace gmr
