#pragma once

#include <gmr/model.hpp>
#include <gmr/treewidth.hpp>

#include <algorithm>
#include <chrono>
#include <cmath>
#include <cstdint>
#include <limits>
#include <numeric>
#include <optional>
#include <queue>
#include <string>
#include <type_traits>
#include <vector>

namespace gmr {

struct BruteOptions
{
    /// Largest q^|V| the enumerator accepts; the default admits 24 binary variables.
    std::uint64_t max_assignments = 1ULL << 24;
};

/// q^n, or nullopt if it exceeds `limit`.
inline auto bounded_power(std::uint64_t q, std::size_t n, std::uint64_t limit) -> std::optional<std::uint64_t>
{
    std::uint64_t result = 1;
    for (std::size_t i = 0; i < n; ++i) {
        if (result > limit / q)
            return std::nullopt;
        result *= q;
    }
    if (result > limit)
        return std::nullopt;
    return result;
}

namespace detail {

    /// Table scaled to integers by the lcm of its denominators.
    struct IntegerTable
    {
        std::vector<BigInt> values;
        BigInt scale;
    };

    inline auto to_integer_table(const std::vector<ExactNumber> & table) -> IntegerTable
    {
        BigInt scale = 1;
        for (auto & x : table) {
            auto den = x.denominator();
            mpz_lcm(scale.get_mpz_t(), scale.get_mpz_t(), den.get_mpz_t());
        }
        IntegerTable result{{}, scale};
        result.values.reserve(table.size());
        for (auto & x : table)
            result.values.push_back(BigInt(x.numerator() * (scale / x.denominator())));
        return result;
    }

    class BruteEnumerator
    {
      public:
        explicit BruteEnumerator(const Model & m) : _q(m.cardinality()), _graph(m.graph())
        {
            int n = _graph.size();
            _vertex.reserve(n);
            _back.resize(n);
            for (int i = 0; i < n; ++i) {
                auto t = to_integer_table(m.vertex_potential(_graph.labels[i]));
                _denominator *= t.scale;
                _vertex.push_back(std::move(t.values));
                for (int j : _graph.adjacency[i]) {
                    if (j >= i)
                        continue;
                    // rows index the earlier variable j, columns the current variable i
                    auto table = m.edge_potential(_graph.labels[j], _graph.labels[i]);
                    auto t2 = to_integer_table(table);
                    _denominator *= t2.scale;
                    _back[i].push_back({j, std::move(t2.values)});
                }
            }
            _prefix.assign(n + 1, BigInt(0));
            _state.assign(n, 0);
        }

        auto run() -> ExactNumber
        {
            _prefix[0] = 1;
            _total = 0;
            descend(0);
            return ExactNumber::fraction(_total, _denominator);
        }

      private:
        struct BackEdge
        {
            int earlier;
            std::vector<BigInt> table;
        };

        void descend(int i)
        {
            int n = _graph.size();
            if (i == n) {
                _total += _prefix[n];
                return;
            }
            for (int a = 0; a < _q; ++a) {
                auto & next = _prefix[i + 1];
                mpz_mul(next.get_mpz_t(), _prefix[i].get_mpz_t(), _vertex[i][a].get_mpz_t());
                if (next == 0)
                    continue;
                bool zero = false;
                for (auto & e : _back[i]) {
                    mpz_mul(next.get_mpz_t(), next.get_mpz_t(), e.table[_state[e.earlier] * _q + a].get_mpz_t());
                    if (next == 0) {
                        zero = true;
                        break;
                    }
                }
                if (zero)
                    continue;
                _state[i] = a;
                descend(i + 1);
            }
        }

        int _q;
        IndexedGraph _graph;
        std::vector<std::vector<BigInt>> _vertex;
        std::vector<std::vector<BackEdge>> _back;
        std::vector<BigInt> _prefix;
        std::vector<int> _state;
        BigInt _denominator = 1;
        BigInt _total = 0;
    };

} // namespace detail

/// Exact partition function by enumerating all q^|V| assignments.
/// Tables are rescaled to integers once so the inner loop multiplies integers only;
/// branches whose partial product is already zero are skipped.
inline auto partition_brute(const Model & m, const BruteOptions & options = {}) -> ExactNumber
{
    auto n = m.graph().vertex_count();
    if (! bounded_power(m.cardinality(), n, options.max_assignments))
        throw Error(ErrorKind::CapExceeded, std::to_string(m.cardinality()) + "^" + std::to_string(n)
                + " assignments exceed the brute-force cap of " + std::to_string(options.max_assignments));
    return detail::BruteEnumerator(m).run();
}

/// Marginal distribution at `v`, computed from clamped partition functions.
inline auto marginal(const Model & m, const Label & v, const BruteOptions & options = {}) -> std::vector<ExactNumber>
{
    if (! m.graph().has_vertex(v))
        throw Error(ErrorKind::MissingVertex, "no vertex '" + v + "'");
    auto z = partition_brute(m, options);
    if (z.is_zero())
        throw Error(ErrorKind::ZeroPartition, "partition function is zero");
    std::vector<ExactNumber> result;
    for (int a = 0; a < m.cardinality(); ++a)
        result.push_back(partition_brute(clamp(m, v, a), options) / z);
    return result;
}

enum class NumericPath
{
    exact,
    floating,
};

struct InferenceReport
{
    /// Present whenever the computation was exact (brute force, or the rational junction-tree path).
    std::optional<ExactNumber> exact_z;
    double z = 0.0;
    /// Natural log of z; finite even when z itself would overflow a double.
    double log_z = 0.0;
    /// Estimated relative error of `z` on the floating path, zero on exact paths.
    double relative_error_bound = 0.0;
    std::string method;
    int peak_clique_size = 0;
    std::chrono::nanoseconds elapsed{0};
};

/// Natural log of a rational, finite even when its value overflows a double.
inline auto log_of(const ExactNumber & x) -> double
{
    if (x.is_zero())
        return -std::numeric_limits<double>::infinity();
    long exp_num = 0, exp_den = 0;
    double mant_num = mpz_get_d_2exp(&exp_num, x.numerator().get_mpz_t());
    double mant_den = mpz_get_d_2exp(&exp_den, x.denominator().get_mpz_t());
    return std::log(mant_num) - std::log(mant_den) + static_cast<double>(exp_num - exp_den) * std::log(2.0);
}

inline auto solve_brute(const Model & m, const BruteOptions & options = {}) -> InferenceReport
{
    auto start = std::chrono::steady_clock::now();
    auto z = partition_brute(m, options);
    InferenceReport report;
    report.elapsed = std::chrono::steady_clock::now() - start;
    report.z = z.to_double();
    report.log_z = log_of(z);
    report.exact_z = std::move(z);
    report.method = "brute";
    report.peak_clique_size = static_cast<int>(m.graph().vertex_count());
    return report;
}

/// Clique tree of a min-fill triangulation. Cliques are sorted variable-index lists over
/// `labels`; `tree_edges` join clique indices and span every clique.
struct JunctionTree
{
    std::vector<Label> labels;
    std::vector<std::vector<int>> cliques;
    std::vector<std::pair<int, int>> tree_edges;

    auto peak_clique_size() const -> int
    {
        int peak = 0;
        for (auto & c : cliques)
            peak = std::max(peak, static_cast<int>(c.size()));
        return peak;
    }
};

inline auto build_junction_tree(const LabeledGraph & g) -> JunctionTree
{
    JunctionTree jt;
    IndexedGraph ig(g);
    jt.labels = ig.labels;
    int n = ig.size();
    if (n == 0)
        return jt;

    auto [order, width] = detail::min_fill_order(ig);
    std::vector<std::vector<char>> matrix(n, std::vector<char>(n, 0));
    std::vector<std::vector<int>> nbrs = ig.adjacency;
    for (int v = 0; v < n; ++v)
        for (int w : nbrs[v])
            matrix[v][w] = 1;
    std::vector<std::vector<int>> candidates;
    for (int v : order) {
        auto clique = nbrs[v];
        clique.push_back(v);
        std::sort(clique.begin(), clique.end());
        candidates.push_back(clique);
        auto & nv = nbrs[v];
        for (std::size_t a = 0; a < nv.size(); ++a)
            for (std::size_t b = a + 1; b < nv.size(); ++b)
                if (! matrix[nv[a]][nv[b]]) {
                    matrix[nv[a]][nv[b]] = matrix[nv[b]][nv[a]] = 1;
                    nbrs[nv[a]].push_back(nv[b]);
                    nbrs[nv[b]].push_back(nv[a]);
                }
        for (int w : nv) {
            matrix[w][v] = 0;
            std::erase(nbrs[w], v);
        }
        nbrs[v].clear();
    }

    for (std::size_t i = 0; i < candidates.size(); ++i) {
        bool contained = false;
        for (std::size_t j = 0; j < candidates.size() && ! contained; ++j)
            if (i != j && candidates[j].size() > candidates[i].size()
                && std::includes(candidates[j].begin(), candidates[j].end(), candidates[i].begin(), candidates[i].end()))
                contained = true;
        if (! contained)
            jt.cliques.push_back(candidates[i]);
    }

    // maximum-weight spanning tree on sepset sizes (Kruskal); zero-weight links join components
    struct Link
    {
        int weight, a, b;
    };
    std::vector<Link> links;
    for (int a = 0; a < static_cast<int>(jt.cliques.size()); ++a)
        for (int b = a + 1; b < static_cast<int>(jt.cliques.size()); ++b) {
            std::vector<int> common;
            std::set_intersection(jt.cliques[a].begin(), jt.cliques[a].end(), jt.cliques[b].begin(), jt.cliques[b].end(),
                std::back_inserter(common));
            links.push_back({static_cast<int>(common.size()), a, b});
        }
    std::stable_sort(links.begin(), links.end(), [](const Link & x, const Link & y) { return x.weight > y.weight; });
    std::vector<int> parent(jt.cliques.size());
    std::iota(parent.begin(), parent.end(), 0);
    auto find = [&](int x) {
        while (parent[x] != x)
            x = parent[x] = parent[parent[x]];
        return x;
    };
    for (auto & link : links) {
        int ra = find(link.a), rb = find(link.b);
        if (ra != rb) {
            parent[ra] = rb;
            jt.tree_edges.emplace_back(link.a, link.b);
        }
    }
    return jt;
}

/// Every variable's cliques form a connected subtree.
inline auto satisfies_running_intersection(const JunctionTree & jt) -> bool
{
    int k = static_cast<int>(jt.cliques.size());
    std::vector<std::vector<int>> adj(k);
    for (auto [a, b] : jt.tree_edges) {
        adj[a].push_back(b);
        adj[b].push_back(a);
    }
    for (int v = 0; v < static_cast<int>(jt.labels.size()); ++v) {
        std::vector<char> holds(k, 0);
        int first = -1, count = 0;
        for (int c = 0; c < k; ++c)
            if (std::binary_search(jt.cliques[c].begin(), jt.cliques[c].end(), v)) {
                holds[c] = 1;
                ++count;
                if (first == -1)
                    first = c;
            }
        if (count == 0)
            return false;
        std::vector<char> seen(k, 0);
        std::vector<int> stack{first};
        seen[first] = 1;
        int reached = 0;
        while (! stack.empty()) {
            int c = stack.back();
            stack.pop_back();
            ++reached;
            for (int d : adj[c])
                if (holds[d] && ! seen[d]) {
                    seen[d] = 1;
                    stack.push_back(d);
                }
        }
        if (reached != count)
            return false;
    }
    return true;
}

namespace detail {

    template <typename T>
    struct Factor
    {
        std::vector<int> vars;
        std::vector<T> values;
    };

    template <typename T>
    auto convert(const ExactNumber & x) -> T
    {
        if constexpr (std::is_same_v<T, double>)
            return x.to_double();
        else
            return x;
    }

    /// For each position of `outer.vars`, the stride that position contributes to an index
    /// into a table over `inner` (zero where the variable is absent from `inner`).
    inline auto strides_into(const std::vector<int> & outer, const std::vector<int> & inner, int q) -> std::vector<std::size_t>
    {
        std::vector<std::size_t> result(outer.size(), 0);
        for (std::size_t p = 0; p < outer.size(); ++p) {
            auto it = std::lower_bound(inner.begin(), inner.end(), outer[p]);
            if (it == inner.end() || *it != outer[p])
                continue;
            std::size_t stride = 1;
            for (auto rest = it + 1; rest != inner.end(); ++rest)
                stride *= q;
            result[p] = stride;
        }
        return result;
    }

    /// Calls f(outer_index, inner_index) over every assignment of `outer`.
    template <typename F>
    void for_each_projection(const std::vector<int> & outer, const std::vector<std::size_t> & strides, int q, F && f)
    {
        std::size_t k = outer.size();
        std::size_t total = 1;
        for (std::size_t i = 0; i < k; ++i)
            total *= q;
        std::vector<int> digits(k, 0);
        std::size_t inner = 0;
        for (std::size_t idx = 0; idx < total; ++idx) {
            f(idx, inner);
            for (std::size_t p = k; p-- > 0;) {
                if (++digits[p] < q) {
                    inner += strides[p];
                    break;
                }
                inner -= strides[p] * (q - 1);
                digits[p] = 0;
            }
        }
    }

    template <typename T>
    void multiply_into(Factor<T> & target, const Factor<T> & factor, int q)
    {
        auto strides = strides_into(target.vars, factor.vars, q);
        for_each_projection(target.vars, strides, q,
            [&](std::size_t outer, std::size_t inner) { target.values[outer] *= factor.values[inner]; });
    }

    template <typename T>
    auto marginalize(const Factor<T> & source, const std::vector<int> & keep, int q) -> Factor<T>
    {
        std::size_t size = 1;
        for (std::size_t i = 0; i < keep.size(); ++i)
            size *= q;
        Factor<T> result{keep, std::vector<T>(size, T(0))};
        auto strides = strides_into(source.vars, keep, q);
        for_each_projection(source.vars, strides, q,
            [&](std::size_t outer, std::size_t inner) { result.values[inner] += source.values[outer]; });
        return result;
    }

    template <typename T>
    auto total(const Factor<T> & f) -> T
    {
        T sum(0);
        for (auto & x : f.values)
            sum += x;
        return sum;
    }

    template <typename T>
    struct Calibration
    {
        std::vector<Factor<T>> beliefs;
        T scaled_z;
        /// log of the normalisers pulled out of messages (floating path only)
        double log_scale = 0.0;
        std::size_t table_operations = 0;
    };

    template <typename T>
    auto calibrate(const Model & m, const JunctionTree & jt) -> Calibration<T>
    {
        int q = m.cardinality();
        int k = static_cast<int>(jt.cliques.size());
        Calibration<T> out{{}, T(1), 0.0, 0};
        if (k == 0)
            return out;

        std::vector<Factor<T>> potentials;
        for (auto & c : jt.cliques) {
            std::size_t size = 1;
            for (std::size_t i = 0; i < c.size(); ++i)
                size *= q;
            potentials.push_back({c, std::vector<T>(size, T(1))});
        }
        auto home = [&](std::vector<int> scope) {
            for (int c = 0; c < k; ++c)
                if (std::includes(jt.cliques[c].begin(), jt.cliques[c].end(), scope.begin(), scope.end()))
                    return c;
            throw std::logic_error("factor scope not covered by any clique");
        };
        std::map<Label, int, LabelLess> index;
        for (int i = 0; i < static_cast<int>(jt.labels.size()); ++i)
            index.emplace(jt.labels[i], i);
        for (auto & [v, table] : m.vertex_tables()) {
            int i = index.at(v);
            Factor<T> f{{i}, {}};
            for (auto & x : table)
                f.values.push_back(convert<T>(x));
            multiply_into(potentials[home({i})], f, q);
            out.table_operations += potentials[home({i})].values.size();
        }
        for (auto & [e, table] : m.edge_tables()) {
            int a = index.at(e.first), b = index.at(e.second);
            // canonical edge order equals index order, so the table is already row-major over (a, b)
            Factor<T> f{{a, b}, {}};
            for (auto & x : table)
                f.values.push_back(convert<T>(x));
            int c = home({std::min(a, b), std::max(a, b)});
            multiply_into(potentials[c], f, q);
            out.table_operations += potentials[c].values.size();
        }

        std::vector<std::vector<int>> adj(k);
        for (auto [a, b] : jt.tree_edges) {
            adj[a].push_back(b);
            adj[b].push_back(a);
        }
        std::vector<int> parent(k, -1), order;
        std::vector<char> seen(k, 0);
        std::queue<int> bfs;
        bfs.push(0);
        seen[0] = 1;
        while (! bfs.empty()) {
            int c = bfs.front();
            bfs.pop();
            order.push_back(c);
            for (int d : adj[c])
                if (! seen[d]) {
                    seen[d] = 1;
                    parent[d] = c;
                    bfs.push(d);
                }
        }
        if (static_cast<int>(order.size()) != k)
            throw std::logic_error("junction tree is not connected");

        auto sepset = [&](int a, int b) {
            std::vector<int> common;
            std::set_intersection(jt.cliques[a].begin(), jt.cliques[a].end(), jt.cliques[b].begin(), jt.cliques[b].end(),
                std::back_inserter(common));
            return common;
        };

        // collect: up[c] is the message from c to its parent
        std::vector<Factor<T>> up(k);
        for (auto it = order.rbegin(); it != order.rend(); ++it) {
            int c = *it;
            if (parent[c] == -1)
                continue;
            Factor<T> work = potentials[c];
            for (int d : adj[c])
                if (parent[d] == c)
                    multiply_into(work, up[d], q);
            up[c] = marginalize(work, sepset(c, parent[c]), q);
            out.table_operations += work.values.size() * (adj[c].size() + 1);
            if constexpr (std::is_same_v<T, double>) {
                double s = total(up[c]);
                if (s > 0.0) {
                    for (auto & x : up[c].values)
                        x /= s;
                    out.log_scale += std::log(s);
                }
            }
        }

        // distribute: down[c] is the message from c's parent to c
        std::vector<Factor<T>> down(k);
        out.beliefs.resize(k);
        for (int c : order) {
            Factor<T> belief = potentials[c];
            if (parent[c] != -1)
                multiply_into(belief, down[c], q);
            for (int d : adj[c])
                if (parent[d] == c)
                    multiply_into(belief, up[d], q);
            for (int d : adj[c]) {
                if (parent[d] != c)
                    continue;
                Factor<T> work = potentials[c];
                if (parent[c] != -1)
                    multiply_into(work, down[c], q);
                for (int e : adj[c])
                    if (parent[e] == c && e != d)
                        multiply_into(work, up[e], q);
                down[d] = marginalize(work, sepset(c, d), q);
                if constexpr (std::is_same_v<T, double>) {
                    double s = total(down[d]);
                    if (s > 0.0)
                        for (auto & x : down[d].values)
                            x /= s;
                }
            }
            out.beliefs[c] = std::move(belief);
        }
        out.scaled_z = total(out.beliefs[0]);
        return out;
    }

} // namespace detail

struct JunctionTreeOptions
{
    NumericPath path = NumericPath::floating;
    /// Largest clique table (q^|C| entries) the algorithm may allocate.
    std::uint64_t max_table_entries = 1ULL << 22;
};

/// Junction-tree inference: min-fill triangulation, maximum-weight spanning clique tree,
/// two-pass sum-product calibration. The floating path rescales messages and accumulates
/// the log normaliser; the exact path runs the same passes over rationals.
inline auto partition_junction_tree(const Model & m, const JunctionTreeOptions & options = {}) -> InferenceReport
{
    auto start = std::chrono::steady_clock::now();
    auto jt = build_junction_tree(m.graph());
    int peak = jt.peak_clique_size();
    if (! bounded_power(m.cardinality(), peak, options.max_table_entries))
        throw Error(ErrorKind::MemoryBudgetExceeded, "clique of size " + std::to_string(peak) + " needs "
                + std::to_string(m.cardinality()) + "^" + std::to_string(peak) + " entries");

    InferenceReport report;
    report.method = "junction";
    report.peak_clique_size = peak;
    if (options.path == NumericPath::exact) {
        auto cal = detail::calibrate<ExactNumber>(m, jt);
        report.z = cal.scaled_z.to_double();
        report.log_z = log_of(cal.scaled_z);
        report.exact_z = cal.scaled_z;
    }
    else {
        auto cal = detail::calibrate<double>(m, jt);
        report.log_z = cal.scaled_z > 0.0 ? cal.log_scale + std::log(cal.scaled_z) : -std::numeric_limits<double>::infinity();
        report.z = std::exp(report.log_z);
        report.relative_error_bound = static_cast<double>(cal.table_operations + 8) * std::numeric_limits<double>::epsilon();
    }
    report.elapsed = std::chrono::steady_clock::now() - start;
    return report;
}

/// Calibrated clique beliefs on the exact path; every belief sums to Z. Exposed for checking calibration.
inline auto calibrated_clique_totals(const Model & m) -> std::vector<ExactNumber>
{
    auto jt = build_junction_tree(m.graph());
    auto cal = detail::calibrate<ExactNumber>(m, jt);
    std::vector<ExactNumber> totals;
    for (auto & b : cal.beliefs)
        totals.push_back(detail::total(b));
    return totals;
}

} // namespace gmr
