#pragma once

#include <gmr/inference.hpp>
#include <gmr/model.hpp>
#include <gmr/treewidth.hpp>

#include <algorithm>
#include <chrono>
#include <cstdint>
#include <random>
#include <sstream>
#include <string>
#include <vector>

namespace gmr {

struct BenchOptions
{
    std::uint64_t seed = 0;
    /// Each timing repeats the solve until at least this much time has passed, then divides.
    std::chrono::nanoseconds min_duration = std::chrono::milliseconds(20);
    JunctionTreeOptions junction{};
};

struct BenchRow
{
    std::size_t g = 0;
    /// Width of the min-fill elimination order the junction tree uses.
    int treewidth_proxy = 0;
    double median_seconds = 0.0;
    int peak_clique_size = 0;
    int reps = 0;
};

/// q = 2 model on the g x g grid with every potential entry drawn from {1/4, 2/4, ..., 16/4}.
inline auto random_grid_model(std::size_t g, std::mt19937_64 & rng) -> Model
{
    auto graph = grid_graph(g);
    Model m(graph, 2);
    std::uniform_int_distribution<int> quarter(1, 16);
    for (auto & v : graph.vertices())
        m.set_vertex_potential(v, {ExactNumber::fraction(quarter(rng), 4), ExactNumber::fraction(quarter(rng), 4)});
    for (auto & [u, v] : graph.edges()) {
        EdgeTable t;
        for (int i = 0; i < 4; ++i)
            t.push_back(ExactNumber::fraction(quarter(rng), 4));
        m.set_edge_potential(u, v, std::move(t));
    }
    return m;
}

/// Median junction-tree solve time on random grid models for each g in [g_min, g_max].
inline auto bench_scaling(std::size_t g_min, std::size_t g_max, int reps, const BenchOptions & options = {})
    -> std::vector<BenchRow>
{
    if (g_min < 1 || g_max < g_min || reps < 1)
        throw Error(ErrorKind::InvalidArgument, "need 1 <= gMin <= gMax and reps >= 1");
    std::mt19937_64 rng(options.seed);
    std::vector<BenchRow> rows;
    for (std::size_t g = g_min; g <= g_max; ++g) {
        BenchRow row;
        row.g = g;
        row.reps = reps;
        row.treewidth_proxy = treewidth_upper(grid_graph(g)).width;
        std::vector<double> times;
        for (int r = 0; r < reps; ++r) {
            auto m = random_grid_model(g, rng);
            std::uint64_t runs = 0;
            auto start = std::chrono::steady_clock::now();
            auto elapsed = std::chrono::steady_clock::duration::zero();
            do {
                auto report = partition_junction_tree(m, options.junction);
                row.peak_clique_size = report.peak_clique_size;
                ++runs;
                elapsed = std::chrono::steady_clock::now() - start;
            } while (elapsed < options.min_duration);
            times.push_back(std::chrono::duration<double>(elapsed).count() / static_cast<double>(runs));
        }
        std::sort(times.begin(), times.end());
        row.median_seconds = times.size() % 2 ? times[times.size() / 2] : (times[times.size() / 2 - 1] + times[times.size() / 2]) / 2;
        rows.push_back(row);
    }
    return rows;
}

inline auto format_bench_table(const std::vector<BenchRow> & rows) -> std::string
{
    std::ostringstream out;
    out << "g\ttreewidth_proxy\tjt_median_seconds\tpeak_clique_size\treps\n";
    out.precision(9);
    for (auto & r : rows)
        out << r.g << '\t' << r.treewidth_proxy << '\t' << std::scientific << r.median_seconds << std::defaultfloat << '\t'
            << r.peak_clique_size << '\t' << r.reps << '\n';
    return out.str();
}

} // namespace gmr
