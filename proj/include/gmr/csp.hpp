#pragma once

#include <gmr/inference.hpp>
#include <gmr/model.hpp>
#include <gmr/text_io.hpp>

#include <algorithm>
#include <cstdint>
#include <cstdlib>
#include <optional>
#include <set>
#include <sstream>
#include <string>
#include <utility>
#include <vector>

namespace gmr {

struct UnaryConstraint
{
    int var;
    std::set<int> allowed;
};

struct PairConstraint
{
    int first, second;
    std::set<std::pair<int, int>> allowed;
};

/// Binary-scope constraint system over variables 0..n-1 with states 0..q-1.
/// Variable i is the vertex `x{i+1}` in every model built from the instance.
struct CspInstance
{
    int n = 0;
    int q = 2;
    std::vector<UnaryConstraint> unary;
    std::vector<PairConstraint> pairwise;

    auto constraint_count() const -> std::size_t { return unary.size() + pairwise.size(); }

    static auto variable_label(int i) -> Label { return "x" + std::to_string(i + 1); }

    void validate() const
    {
        if (n < 0 || q < 2)
            throw Error(ErrorKind::InvalidArgument, "need n >= 0 and q >= 2");
        auto in_range = [&](int v) { return v >= 0 && v < n; };
        auto state_ok = [&](int s) { return s >= 0 && s < q; };
        for (auto & u : unary) {
            if (! in_range(u.var))
                throw Error(ErrorKind::InvalidArgument, "unary constraint on unknown variable");
            for (int s : u.allowed)
                if (! state_ok(s))
                    throw Error(ErrorKind::InvalidArgument, "unary constraint allows an out-of-range state");
        }
        for (auto & p : pairwise) {
            if (! in_range(p.first) || ! in_range(p.second))
                throw Error(ErrorKind::InvalidArgument, "pairwise constraint on unknown variable");
            if (p.first == p.second)
                throw Error(ErrorKind::InvalidArgument, "pairwise constraint needs two distinct variables");
            for (auto [a, b] : p.allowed)
                if (! state_ok(a) || ! state_ok(b))
                    throw Error(ErrorKind::InvalidArgument, "pairwise constraint allows an out-of-range state");
        }
    }

    /// One vertex per variable, one edge per distinct constrained pair.
    auto constraint_graph() const -> LabeledGraph
    {
        LabeledGraph g;
        for (int i = 0; i < n; ++i)
            g.add_vertex(variable_label(i));
        for (auto & p : pairwise)
            g.add_edge(variable_label(p.first), variable_label(p.second));
        return g;
    }

    auto satisfied_count(const std::vector<int> & assignment) const -> std::size_t
    {
        std::size_t count = 0;
        for (auto & u : unary)
            count += u.allowed.count(assignment[u.var]);
        for (auto & p : pairwise)
            count += p.allowed.count({assignment[p.first], assignment[p.second]});
        return count;
    }

    auto canonical_text() const -> std::string
    {
        std::ostringstream out;
        out << "csp " << n << ' ' << q << '\n';
        for (auto & u : unary) {
            out << "u " << u.var;
            for (int s : u.allowed)
                out << ' ' << s;
            out << '\n';
        }
        for (auto & p : pairwise) {
            out << "p " << p.first << ' ' << p.second;
            for (auto [a, b] : p.allowed)
                out << ' ' << a << ':' << b;
            out << '\n';
        }
        return out.str();
    }

    auto fingerprint() const -> std::string { return fingerprint_of(canonical_text()); }
};

/// Weighted model for the MAX 2-CSP decision question, with its threshold function.
struct Encoding
{
    Model model;
    ExactNumber epsilon;
    std::size_t m = 0;

    /// h(d) = epsilon^(m - d)
    auto h(std::size_t d) const -> ExactNumber
    {
        if (d > m)
            throw Error(ErrorKind::DOutOfRange, "d = " + std::to_string(d) + " exceeds m = " + std::to_string(m));
        return epsilon.pow(m - d);
    }
};

/// 1/(2 q^n): the midpoint of the admissible interval (0, 1/q^n).
inline auto default_epsilon(int n, int q) -> ExactNumber
{
    BigInt qn;
    mpz_ui_pow_ui(qn.get_mpz_t(), static_cast<unsigned long>(q), static_cast<unsigned long>(n));
    return ExactNumber::fraction(1, BigInt(2 * qn));
}

namespace detail {

    inline auto build_csp_model(const CspInstance & inst, const ExactNumber & epsilon) -> Model
    {
        inst.validate();
        int q = inst.q;
        Model model(inst.constraint_graph(), q);
        for (auto & u : inst.unary) {
            auto label = CspInstance::variable_label(u.var);
            auto table = model.vertex_potential(label);
            for (int a = 0; a < q; ++a)
                if (! u.allowed.count(a))
                    table[a] *= epsilon;
            model.set_vertex_potential(label, std::move(table));
        }
        // constraints sharing a pair multiply, so an assignment weighs epsilon^(#violated)
        for (auto & p : inst.pairwise) {
            auto a_label = CspInstance::variable_label(p.first), b_label = CspInstance::variable_label(p.second);
            auto table = model.edge_potential(a_label, b_label);
            for (int a = 0; a < q; ++a)
                for (int b = 0; b < q; ++b)
                    if (! p.allowed.count({a, b}))
                        table[a * q + b] *= epsilon;
            model.set_edge_potential(a_label, b_label, std::move(table));
        }
        return model;
    }

} // namespace detail

/// Satisfied constraints contribute factor 1, violated ones epsilon. At least d constraints are
/// simultaneously satisfiable iff Z >= epsilon^(m - d), given 0 < epsilon < 1/q^n.
inline auto encode_max2csp(const CspInstance & inst, std::optional<ExactNumber> epsilon = std::nullopt) -> Encoding
{
    auto bound = default_epsilon(inst.n, inst.q) * ExactNumber(2);
    auto eps = epsilon.value_or(default_epsilon(inst.n, inst.q));
    if (eps.is_zero() || ! (eps < bound))
        throw Error(ErrorKind::BadEpsilon, "epsilon " + eps.to_string() + " outside (0, " + bound.to_string() + ")");
    return Encoding{detail::build_csp_model(inst, eps), eps, inst.constraint_count()};
}

/// Decides "at least d constraints satisfiable" from an already computed partition function.
inline auto decide_at_least(const Encoding & enc, std::size_t d, const ExactNumber & z) -> bool
{
    return z >= enc.h(d);
}

inline auto decide_at_least(const Encoding & enc, std::size_t d, const BruteOptions & options = {}) -> bool
{
    auto threshold = enc.h(d);
    return partition_brute(enc.model, options) >= threshold;
}

/// Same construction with the default epsilon; floor(Z) is the number of fully satisfying
/// assignments because the rest contribute less than q^n * epsilon < 1 in total.
inline auto encode_count(const CspInstance & inst) -> Model
{
    return detail::build_csp_model(inst, default_epsilon(inst.n, inst.q));
}

namespace detail {

    template <typename F>
    void for_each_assignment(const CspInstance & inst, std::uint64_t cap, F && f)
    {
        if (! bounded_power(inst.q, inst.n, cap))
            throw Error(ErrorKind::CapExceeded, "q^n exceeds the enumeration cap");
        std::vector<int> x(inst.n, 0);
        while (true) {
            f(x);
            int p = inst.n - 1;
            while (p >= 0 && ++x[p] == inst.q)
                x[p--] = 0;
            if (p < 0)
                break;
        }
    }

} // namespace detail

/// Largest number of simultaneously satisfiable constraints, by enumeration.
inline auto brute_maxsat(const CspInstance & inst, std::uint64_t cap = 1ULL << 24) -> std::size_t
{
    inst.validate();
    std::size_t best = 0;
    detail::for_each_assignment(inst, cap, [&](const std::vector<int> & x) { best = std::max(best, inst.satisfied_count(x)); });
    return best;
}

/// Number of assignments satisfying every constraint, by enumeration.
inline auto brute_count(const CspInstance & inst, std::uint64_t cap = 1ULL << 24) -> std::uint64_t
{
    inst.validate();
    std::uint64_t count = 0;
    auto m = inst.constraint_count();
    detail::for_each_assignment(inst, cap, [&](const std::vector<int> & x) { count += inst.satisfied_count(x) == m; });
    return count;
}

/// DIMACS CNF restricted to clauses of width <= 2. Width-2 clauses become pairwise relations
/// (three of four state pairs allowed), width-1 clauses unary ones. A repeated literal counts
/// once; a clause containing both polarities of one variable becomes an always-true unary constraint.
inline auto parse_dimacs_2cnf(std::string_view text) -> CspInstance
{
    CspInstance inst;
    inst.q = 2;
    bool header = false;
    std::size_t declared = 0, clauses = 0;
    std::vector<long> current;

    auto finish_clause = [&](std::size_t line) {
        std::vector<long> lits;
        for (long l : current)
            if (std::find(lits.begin(), lits.end(), l) == lits.end())
                lits.push_back(l);
        current.clear();
        if (lits.empty())
            throw Error(ErrorKind::Malformed, "line " + std::to_string(line) + ": empty clause");
        if (lits.size() > 2)
            throw Error(ErrorKind::WideClause, "line " + std::to_string(line) + ": clause of width " + std::to_string(lits.size()));
        auto var = [](long l) { return static_cast<int>(std::labs(l)) - 1; };
        auto sat = [](long l, int state) { return l > 0 ? state == 1 : state == 0; };
        if (lits.size() == 1) {
            UnaryConstraint u{var(lits[0]), {}};
            for (int s = 0; s < 2; ++s)
                if (sat(lits[0], s))
                    u.allowed.insert(s);
            inst.unary.push_back(std::move(u));
        }
        else if (var(lits[0]) == var(lits[1])) {
            inst.unary.push_back({var(lits[0]), {0, 1}});
        }
        else {
            PairConstraint p{var(lits[0]), var(lits[1]), {}};
            for (int a = 0; a < 2; ++a)
                for (int b = 0; b < 2; ++b)
                    if (sat(lits[0], a) || sat(lits[1], b))
                        p.allowed.insert({a, b});
            inst.pairwise.push_back(std::move(p));
        }
        ++clauses;
    };

    std::size_t number = 0;
    std::istringstream in{std::string(text)};
    for (std::string line; std::getline(in, line);) {
        ++number;
        std::istringstream tokens(line);
        std::string first;
        if (! (tokens >> first) || first == "c")
            continue;
        if (first == "%")
            break;
        if (first == "p") {
            std::string format;
            long n = -1, m = -1;
            if (header || ! (tokens >> format >> n >> m) || format != "cnf" || n < 0 || m < 0)
                throw Error(ErrorKind::Malformed, "line " + std::to_string(number) + ": bad problem line");
            header = true;
            inst.n = static_cast<int>(n);
            declared = static_cast<std::size_t>(m);
            continue;
        }
        if (! header)
            throw Error(ErrorKind::Malformed, "line " + std::to_string(number) + ": clause before `p cnf` line");
        std::istringstream all(line);
        for (std::string token; all >> token;) {
            char * end = nullptr;
            long lit = std::strtol(token.c_str(), &end, 10);
            if (*end != '\0')
                throw Error(ErrorKind::Malformed, "line " + std::to_string(number) + ": bad literal '" + token + "'");
            if (lit == 0)
                finish_clause(number);
            else {
                if (std::labs(lit) > inst.n)
                    throw Error(ErrorKind::Malformed, "line " + std::to_string(number) + ": variable " + token + " out of range");
                current.push_back(lit);
            }
        }
    }
    if (! header)
        throw Error(ErrorKind::Malformed, "missing `p cnf` line");
    if (! current.empty())
        throw Error(ErrorKind::Malformed, "last clause is not terminated by 0");
    if (clauses != declared)
        throw Error(ErrorKind::Malformed, "header declares " + std::to_string(declared) + " clauses, found " + std::to_string(clauses));
    return inst;
}

} // namespace gmr
