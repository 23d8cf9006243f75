#pragma once

// Independent reference computations and random generators shared by the unit and acceptance
// suites. Oracles only touch the library's data types, never its algorithms.

#include <gmr/gmr.hpp>

#include <gmpxx.h>

#include <algorithm>
#include <cstdint>
#include <map>
#include <numeric>
#include <random>
#include <set>
#include <string>
#include <vector>

namespace oracle {

using namespace gmr;

/// Adjacency matrix indexed in the graph's vertex order.
inline auto adjacency_matrix(const LabeledGraph & g) -> std::vector<std::vector<char>>
{
    auto vs = g.vertices();
    std::map<Label, int> index;
    for (std::size_t i = 0; i < vs.size(); ++i)
        index[vs[i]] = static_cast<int>(i);
    std::vector<std::vector<char>> adj(vs.size(), std::vector<char>(vs.size(), 0));
    for (auto & [u, v] : g.edges())
        adj[index[u]][index[v]] = adj[index[v]][index[u]] = 1;
    return adj;
}

/// Width of eliminating vertices in `order` (indices), by direct simulation on a matrix.
inline auto width_of_order(std::vector<std::vector<char>> adj, const std::vector<int> & order) -> int
{
    int n = static_cast<int>(adj.size()), width = 0;
    std::vector<char> gone(n, 0);
    for (int v : order) {
        std::vector<int> nb;
        for (int w = 0; w < n; ++w)
            if (! gone[w] && w != v && adj[v][w])
                nb.push_back(w);
        width = std::max(width, static_cast<int>(nb.size()));
        for (int a : nb)
            for (int b : nb)
                if (a != b)
                    adj[a][b] = 1;
        gone[v] = 1;
    }
    return width;
}

/// Treewidth by trying every elimination order. Feasible up to about 9 vertices.
inline auto treewidth_by_permutations(const LabeledGraph & g) -> int
{
    auto adj = adjacency_matrix(g);
    std::vector<int> order(adj.size());
    std::iota(order.begin(), order.end(), 0);
    int best = static_cast<int>(adj.size());
    do
        best = std::min(best, width_of_order(adj, order));
    while (std::next_permutation(order.begin(), order.end()));
    return best;
}

/// Treewidth by dynamic programming over vertex subsets:
/// TW(S) = min over v in S of max(TW(S - v), |Q(S - v, v)|), where Q(S, v) are the vertices
/// outside S + v reachable from v through S. Feasible up to about 16 vertices.
inline auto treewidth_by_subsets(const LabeledGraph & g) -> int
{
    auto adj = adjacency_matrix(g);
    int n = static_cast<int>(adj.size());
    if (n == 0)
        return -1;
    auto q_size = [&](std::uint32_t s, int v) {
        std::vector<char> seen(n, 0);
        std::vector<int> stack{v};
        seen[v] = 1;
        int count = 0;
        while (! stack.empty()) {
            int x = stack.back();
            stack.pop_back();
            for (int w = 0; w < n; ++w)
                if (adj[x][w] && ! seen[w]) {
                    seen[w] = 1;
                    if (s >> w & 1U)
                        stack.push_back(w);
                    else
                        ++count;
                }
        }
        return count;
    };
    std::vector<int> tw(std::size_t{1} << n, n);
    tw[0] = -1;
    for (std::uint32_t s = 1; s < (1U << n); ++s)
        for (int v = 0; v < n; ++v)
            if (s >> v & 1U) {
                auto rest = s & ~(1U << v);
                tw[s] = std::min(tw[s], std::max(tw[rest], q_size(rest, v)));
            }
    return tw[(1U << n) - 1];
}

/// Z by plain enumeration over mpq values with no scaling or pruning.
inline auto partition(const Model & m) -> mpq_class
{
    auto vs = m.graph().vertices();
    auto es = m.graph().edges();
    int n = static_cast<int>(vs.size()), q = m.cardinality();
    std::map<Label, int> index;
    for (int i = 0; i < n; ++i)
        index[vs[i]] = i;
    std::vector<int> x(n, 0);
    mpq_class z = 0;
    while (true) {
        mpq_class w = 1;
        for (int i = 0; i < n && w != 0; ++i)
            w *= m.vertex_potential(vs[i])[x[i]].raw();
        for (auto & [u, v] : es) {
            if (w == 0)
                break;
            w *= m.edge_potential(u, v)[x[index[u]] * q + x[index[v]]].raw();
        }
        z += w;
        int p = n - 1;
        while (p >= 0 && ++x[p] == q)
            x[p--] = 0;
        if (p < 0)
            break;
    }
    return z;
}

inline auto partition_exact(const Model & m) -> ExactNumber
{
    auto z = partition(m);
    return ExactNumber::fraction(z.get_num(), z.get_den());
}

/// Maximum number of simultaneously satisfied constraints, by enumeration.
inline auto max_satisfied(const CspInstance & inst) -> std::size_t
{
    std::size_t best = 0;
    std::vector<int> x(inst.n, 0);
    while (true) {
        std::size_t sat = 0;
        for (auto & u : inst.unary)
            sat += std::find(u.allowed.begin(), u.allowed.end(), x[u.var]) != u.allowed.end();
        for (auto & p : inst.pairwise)
            for (auto & pair : p.allowed)
                if (pair.first == x[p.first] && pair.second == x[p.second])
                    ++sat;
        best = std::max(best, sat);
        int k = inst.n - 1;
        while (k >= 0 && ++x[k] == inst.q)
            x[k--] = 0;
        if (k < 0)
            break;
    }
    return best;
}

/// Number of assignments satisfying every constraint, by enumeration.
inline auto count_solutions(const CspInstance & inst) -> std::uint64_t
{
    std::uint64_t count = 0;
    std::vector<int> x(inst.n, 0);
    while (true) {
        bool ok = true;
        for (auto & u : inst.unary)
            ok = ok && u.allowed.count(x[u.var]);
        for (auto & p : inst.pairwise)
            ok = ok && p.allowed.count({x[p.first], x[p.second]});
        count += ok;
        int k = inst.n - 1;
        while (k >= 0 && ++x[k] == inst.q)
            x[k--] = 0;
        if (k < 0)
            break;
    }
    return count;
}

/// A 2-CNF as literal lists, evaluated directly on truth assignments.
struct Cnf
{
    int n = 0;
    std::vector<std::vector<int>> clauses;

    auto dimacs() const -> std::string
    {
        std::string s = "p cnf " + std::to_string(n) + " " + std::to_string(clauses.size()) + "\n";
        for (auto & c : clauses) {
            for (int l : c)
                s += std::to_string(l) + " ";
            s += "0\n";
        }
        return s;
    }

    auto max_satisfied() const -> std::size_t
    {
        std::size_t best = 0;
        for (std::uint32_t bits = 0; bits < (1U << n); ++bits) {
            std::size_t sat = 0;
            for (auto & c : clauses) {
                bool any = false;
                for (int l : c)
                    any = any || ((bits >> (std::abs(l) - 1) & 1U) == (l > 0 ? 1U : 0U));
                sat += any;
            }
            best = std::max(best, sat);
        }
        return best;
    }

    auto count() const -> std::uint64_t
    {
        std::uint64_t total = 0;
        for (std::uint32_t bits = 0; bits < (1U << n); ++bits) {
            bool all = true;
            for (auto & c : clauses) {
                bool any = false;
                for (int l : c)
                    any = any || ((bits >> (std::abs(l) - 1) & 1U) == (l > 0 ? 1U : 0U));
                all = all && any;
            }
            total += all;
        }
        return total;
    }
};

// ---- generators --------------------------------------------------------------------------

using Rng = std::mt19937_64;

inline auto pick(Rng & rng, std::size_t n) -> std::size_t { return std::uniform_int_distribution<std::size_t>(0, n - 1)(rng); }

inline auto random_graph(Rng & rng, int n, double p, const std::string & prefix = "v") -> LabeledGraph
{
    LabeledGraph g;
    for (int i = 0; i < n; ++i)
        g.add_vertex(prefix + std::to_string(i));
    std::bernoulli_distribution coin(p);
    for (int i = 0; i < n; ++i)
        for (int j = i + 1; j < n; ++j)
            if (coin(rng))
                g.add_edge(prefix + std::to_string(i), prefix + std::to_string(j));
    return g;
}

/// Random tree on n vertices (random attachment).
inline auto random_tree(Rng & rng, int n, const std::string & prefix = "t") -> LabeledGraph
{
    LabeledGraph g;
    for (int i = 0; i < n; ++i) {
        g.add_vertex(prefix + std::to_string(i));
        if (i > 0)
            g.add_edge(prefix + std::to_string(i), prefix + std::to_string(pick(rng, i)));
    }
    return g;
}

/// Random planar graph: edges inserted in random order, kept when the graph stays planar.
inline auto random_planar_graph(Rng & rng, int n, double density = 0.6, const std::string & prefix = "v") -> LabeledGraph
{
    std::vector<std::pair<int, int>> pairs;
    for (int i = 0; i < n; ++i)
        for (int j = i + 1; j < n; ++j)
            pairs.emplace_back(i, j);
    std::shuffle(pairs.begin(), pairs.end(), rng);
    LabeledGraph g;
    for (int i = 0; i < n; ++i)
        g.add_vertex(prefix + std::to_string(i));
    std::bernoulli_distribution keep(density);
    for (auto [i, j] : pairs) {
        if (! keep(rng))
            continue;
        auto a = prefix + std::to_string(i), b = prefix + std::to_string(j);
        g.add_edge(a, b);
        if (! is_planar(g))
            g.remove_edge(a, b);
    }
    return g;
}

/// Same graph under a random bijection onto labels `prefix0..`.
inline auto relabel(Rng & rng, const LabeledGraph & g, const std::string & prefix = "h") -> LabeledGraph
{
    auto vs = g.vertices();
    std::vector<int> perm(vs.size());
    std::iota(perm.begin(), perm.end(), 0);
    std::shuffle(perm.begin(), perm.end(), rng);
    std::map<Label, Label> name;
    for (std::size_t i = 0; i < vs.size(); ++i)
        name[vs[i]] = prefix + std::to_string(perm[i]);
    LabeledGraph r;
    for (auto & v : vs)
        r.add_vertex(name[v]);
    for (auto & [u, v] : g.edges())
        r.add_edge(name[u], name[v]);
    return r;
}

/// A random sequence of `length` applicable minor operations starting at `g` (stops early if
/// the graph runs out of vertices). Returns the sequence and the graph it ends at.
inline auto random_sequence(Rng & rng, const LabeledGraph & g, int length, bool with_relabel = true)
    -> std::pair<MinorSequence, LabeledGraph>
{
    MinorSequence seq{g.fingerprint(), {}};
    LabeledGraph current = g;
    int fresh = 0;
    for (int step = 0; step < length && current.vertex_count() > 1; ++step) {
        auto vs = current.vertices();
        auto es = current.edges();
        int kind = static_cast<int>(pick(rng, with_relabel ? 4 : 3));
        MinorOp op;
        if (kind == 0 || (es.empty() && kind != 3))
            op = VertexDelete{vs[pick(rng, vs.size())]};
        else if (kind == 1) {
            auto e = es[pick(rng, es.size())];
            op = EdgeDelete{e.first, e.second};
        }
        else if (kind == 2) {
            auto [u, v] = es[pick(rng, es.size())];
            if (pick(rng, 2))
                std::swap(u, v);
            auto which = pick(rng, 3);
            op = Contract{u, v, which == 0 ? u : which == 1 ? v : "m" + std::to_string(fresh++)};
        }
        else
            op = Relabel{vs[pick(rng, vs.size())], "r" + std::to_string(fresh++)};
        current = apply_minor_op(current, op);
        seq.ops.push_back(op);
    }
    return {seq, current};
}

/// Random rational in {0} + {a/b : 1 <= a <= 9, 1 <= b <= 4}; zero with probability `zero`.
inline auto random_rational(Rng & rng, double zero = 0.05) -> ExactNumber
{
    if (std::bernoulli_distribution(zero)(rng))
        return ExactNumber(0);
    return ExactNumber::fraction(static_cast<long>(1 + pick(rng, 9)), static_cast<long>(1 + pick(rng, 4)));
}

inline auto random_model(Rng & rng, const LabeledGraph & g, int q, double zero = 0.05) -> Model
{
    Model m(g, q);
    for (auto & v : g.vertices()) {
        VertexTable t;
        for (int a = 0; a < q; ++a)
            t.push_back(random_rational(rng, zero));
        m.set_vertex_potential(v, t);
    }
    for (auto & [u, v] : g.edges()) {
        EdgeTable t;
        for (int a = 0; a < q * q; ++a)
            t.push_back(random_rational(rng, zero));
        m.set_edge_potential(u, v, t);
    }
    return m;
}

/// Random binary-constraint instance with unary and pairwise relations (pairs may repeat).
inline auto random_csp(Rng & rng, int n, int q, int constraints) -> CspInstance
{
    CspInstance inst;
    inst.n = n;
    inst.q = q;
    for (int c = 0; c < constraints; ++c) {
        if (n < 2 || pick(rng, 4) == 0) {
            UnaryConstraint u{static_cast<int>(pick(rng, n)), {}};
            for (int a = 0; a < q; ++a)
                if (pick(rng, 2))
                    u.allowed.insert(a);
            inst.unary.push_back(u);
        }
        else {
            int a = static_cast<int>(pick(rng, n)), b = static_cast<int>(pick(rng, n - 1));
            if (b >= a)
                ++b;
            PairConstraint p{a, b, {}};
            for (int x = 0; x < q; ++x)
                for (int y = 0; y < q; ++y)
                    if (pick(rng, 3) != 0)
                        p.allowed.insert({x, y});
            inst.pairwise.push_back(p);
        }
    }
    return inst;
}

/// Random 2-CNF whose constraint graph is planar (non-planar draws are rejected).
inline auto random_planar_cnf(Rng & rng, int n, int clauses) -> Cnf
{
    while (true) {
        Cnf f;
        f.n = n;
        for (int c = 0; c < clauses; ++c) {
            int width = n >= 2 && pick(rng, 5) != 0 ? 2 : 1;
            std::vector<int> lits;
            int a = 1 + static_cast<int>(pick(rng, n));
            lits.push_back(pick(rng, 2) ? a : -a);
            if (width == 2) {
                int b = 1 + static_cast<int>(pick(rng, n - 1));
                if (b >= a)
                    ++b;
                lits.push_back(pick(rng, 2) ? b : -b);
            }
            f.clauses.push_back(lits);
        }
        if (is_planar(parse_dimacs_2cnf(f.dimacs()).constraint_graph()))
            return f;
    }
}

/// The 3 x 3 grid labelled 1..9 row by row.
inline auto example_graph() -> LabeledGraph
{
    LabeledGraph g;
    for (int i = 1; i <= 9; ++i)
        g.add_vertex(std::to_string(i));
    for (auto [a, b] : std::vector<std::pair<int, int>>{{1, 2}, {2, 3}, {4, 5}, {5, 6}, {7, 8}, {8, 9}, {1, 4}, {4, 7}, {2, 5}, {5, 8}, {3, 6}, {6, 9}})
        g.add_edge(std::to_string(a), std::to_string(b));
    return g;
}

/// Three-step example sequence: delete edge {5,6}, delete vertex 7, contract {5,8} into 8'.
inline auto example_sequence() -> MinorSequence
{
    return MinorSequence{example_graph().fingerprint(), {EdgeDelete{"5", "6"}, VertexDelete{"7"}, Contract{"5", "8", "8'"}}};
}

inline auto example_minor() -> LabeledGraph
{
    LabeledGraph h;
    for (auto v : {"1", "2", "3", "4", "6", "8'", "9"})
        h.add_vertex(v);
    for (auto [a, b] : std::vector<std::pair<const char *, const char *>>{
             {"1", "2"}, {"2", "3"}, {"1", "4"}, {"3", "6"}, {"6", "9"}, {"8'", "2"}, {"8'", "4"}, {"8'", "9"}})
        h.add_edge(a, b);
    return h;
}

} // namespace oracle
