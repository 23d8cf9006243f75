// Acceptance suite: one PASS/FAIL line per criterion, nonzero exit if any criterion fails.

#include "oracles.hpp"

#include <chrono>
#include <cmath>
#include <functional>
#include <iostream>
#include <sstream>

using namespace gmr;

namespace {

struct Outcome
{
    std::size_t cases = 0;
    std::size_t failures = 0;
    std::string first_failure;

    void expect(bool ok, const std::string & what)
    {
        ++cases;
        if (ok)
            return;
        if (failures++ == 0)
            first_failure = what;
    }
};

auto criterion_1_lift_preserves_z() -> Outcome
{
    Outcome out;
    oracle::Rng rng(1001);
    for (int trial = 0; trial < 300; ++trial) {
        int q = 2 + static_cast<int>(oracle::pick(rng, 2));
        int n = 2 + static_cast<int>(oracle::pick(rng, 9));
        auto host = oracle::random_graph(rng, n, 0.2 + 0.1 * static_cast<double>(oracle::pick(rng, 6)));
        auto [seq, minor] = oracle::random_sequence(rng, host, 1 + static_cast<int>(oracle::pick(rng, 8)));
        if (! validate_minor_sequence(host, seq, minor)) {
            out.expect(false, "generated sequence does not validate");
            continue;
        }
        auto m = oracle::random_model(rng, minor, q);
        auto lifted = lift_model(host, seq, m);
        out.expect(lifted.graph() == host && oracle::partition(lifted) == oracle::partition(m),
            "trial " + std::to_string(trial) + ": Z changed on " + format_graph(host));
    }
    return out;
}

auto decision_corpus() -> std::vector<CspInstance>
{
    oracle::Rng rng(2002);
    std::vector<CspInstance> corpus;
    corpus.push_back(parse_dimacs_2cnf("p cnf 2 1\n1 2 0\n"));
    for (int i = 0; i < 200; ++i) {
        int q = oracle::pick(rng, 4) == 0 ? 3 : 2;
        int n = 1 + static_cast<int>(oracle::pick(rng, q == 2 ? 10 : 7));
        corpus.push_back(oracle::random_csp(rng, n, q, static_cast<int>(oracle::pick(rng, 13))));
    }
    return corpus;
}

auto criterion_2_threshold_decision() -> Outcome
{
    Outcome out;
    auto worked = encode_max2csp(parse_dimacs_2cnf("p cnf 2 1\n1 2 0\n"), ExactNumber::fraction(1, 8));
    out.expect(oracle::partition_exact(worked.model) == ExactNumber::fraction(25, 8), "worked example Z != 25/8");
    out.expect(worked.h(1) == ExactNumber(1) && decide_at_least(worked, 1), "worked example threshold");
    for (auto & inst : decision_corpus()) {
        auto enc = encode_max2csp(inst);
        auto z = partition_brute(enc.model);
        out.expect(z == oracle::partition_exact(enc.model), "library Z disagrees with enumeration");
        auto best = oracle::max_satisfied(inst);
        for (std::size_t d = 0; d <= enc.m; ++d)
            out.expect((best >= d) == (z >= enc.h(d)) && (best >= d) == decide_at_least(enc, d, z),
                "decision mismatch at d = " + std::to_string(d) + " for n = " + std::to_string(inst.n));
    }
    return out;
}

auto criterion_3_counting() -> Outcome
{
    Outcome out;
    for (auto & inst : decision_corpus()) {
        auto z = oracle::partition_exact(encode_count(inst));
        out.expect(z.floor() == BigInt(static_cast<unsigned long>(oracle::count_solutions(inst))),
            "floor(Z) != count for n = " + std::to_string(inst.n));
    }
    return out;
}

auto criterion_4_example_treewidth() -> Outcome
{
    Outcome out;
    auto g = oracle::example_graph();
    auto r = treewidth_exact(g);
    out.expect(r.exact && r.width == 3, "treewidth " + std::to_string(r.width));
    out.expect(oracle::treewidth_by_permutations(g) == 3, "permutation oracle disagrees");
    out.expect(elimination_width(g, r.elimination_order) == 3, "certificate order");
    return out;
}

auto criterion_5_example_sequence() -> Outcome
{
    Outcome out;
    auto g = oracle::example_graph();
    auto seq = oracle::example_sequence();
    out.expect(apply_minor_sequence(g, seq) == oracle::example_minor(), "replay does not reach the example minor");
    out.expect(validate_minor_sequence(g, seq, oracle::example_minor()), "sequence does not validate");
    return out;
}

auto criterion_6_embedding() -> Outcome
{
    Outcome out;
    oracle::Rng rng(6006);
    for (int trial = 0; trial < 100; ++trial) {
        auto g = oracle::random_planar_graph(rng, 1 + static_cast<int>(oracle::pick(rng, 12)), 0.3 + 0.1 * (trial % 7));
        if (trial % 3 == 0)
            g = oracle::relabel(rng, g, "u");
        auto r = planar_to_grid_minor(g, PlanarGridOptions{true, 400, static_cast<std::uint64_t>(trial)});
        auto bound = grid_side_slope * g.vertex_count() + grid_side_offset;
        out.expect(validate_minor_sequence(grid_graph(r.side), r.seq, g), "sequence invalid on " + format_graph(g));
        out.expect(r.drawing_side <= bound && r.side <= r.drawing_side, "side over bound on " + format_graph(g));
    }
    for (std::uint64_t seed = 0; seed < 5; ++seed) {
        auto host = seed == 0 ? grid_graph(6) : oracle::relabel(rng, grid_graph(6));
        for (std::size_t g = 1; g <= 3; ++g) {
            auto found = find_grid_minor(host, g, MinorSearchOptions{}.budget, seed);
            out.expect(found && ! found->check()
                    && validate_minor_sequence(host, chains_to_minor_sequence(*found), grid_graph(g)),
                "no " + std::to_string(g) + "-grid in a 6x6 host, seed " + std::to_string(seed));
        }
    }
    for (int trial = 0; trial < 50; ++trial) {
        auto tree = trial == 0 ? path_graph(36) : oracle::random_tree(rng, 2 + static_cast<int>(oracle::pick(rng, 30)));
        out.expect(! find_grid_minor(tree, 2, MinorSearchOptions{}.budget, static_cast<std::uint64_t>(trial)),
            "2-grid reported in a tree");
    }
    return out;
}

auto random_grid_host(oracle::Rng & rng) -> LabeledGraph
{
    auto host = grid_graph(6);
    auto vs = host.vertices();
    for (int extra = 0; extra < 6; ++extra) {
        auto a = vs[oracle::pick(rng, vs.size())], b = vs[oracle::pick(rng, vs.size())];
        if (a != b && ! host.has_edge(a, b))
            host.add_edge(a, b);
    }
    return oracle::relabel(rng, host);
}

auto criterion_7_end_to_end() -> Outcome
{
    Outcome out;
    oracle::Rng rng(7007);
    auto check_trace = [&](const PipelineTrace & t, const std::string & what) {
        bool lifts = t.z_checks.size() == 2;
        for (auto & c : t.z_checks)
            lifts = lifts && c.holds() && (c.vertices_after > 20 || c.method == "brute");
        out.expect(lifts, what + ": stage-local Z check");
        out.expect(t.fingerprints_chain(), what + ": fingerprint chain");
        out.expect(t.consistent(), what + ": pipeline disagrees with oracle");
    };
    for (int trial = 0; trial < 50; ++trial) {
        auto f = oracle::random_planar_cnf(rng, 1 + static_cast<int>(oracle::pick(rng, 8)), 1 + static_cast<int>(oracle::pick(rng, 8)));
        auto host = trial % 2 ? random_grid_host(rng) : grid_graph(6);
        if (trial % 2 && ! find_grid_minor(host, 3)) {
            out.expect(false, "random host lacks a verified grid minor");
            continue;
        }
        auto cnf = f.dimacs();
        auto name = "instance " + std::to_string(trial);
        PipelineOptions options{100'000, static_cast<std::uint64_t>(trial)};
        try {
            auto best = f.max_satisfied();
            auto m = parse_dimacs_2cnf(cnf).constraint_count();
            for (std::size_t d = 0; d <= m; ++d) {
                auto t = run_pipeline(cnf, host, d, options);
                check_trace(t, name + " d=" + std::to_string(d));
                out.expect(t.final_decision == (best >= d), name + ": decision differs from the clause oracle");
            }
            auto t = run_count_pipeline(cnf, host, options);
            check_trace(t, name + " count");
            out.expect(t.final_count == BigInt(static_cast<unsigned long>(f.count())), name + ": count differs from the clause oracle");
        }
        catch (const Error & e) {
            out.expect(false, name + ": " + e.what());
        }
    }
    return out;
}

auto criterion_8_junction_tree() -> Outcome
{
    Outcome out;
    oracle::Rng rng(8008);
    for (int trial = 0; trial < 100; ++trial) {
        int q = 2 + static_cast<int>(oracle::pick(rng, 2));
        int n = 1 + static_cast<int>(oracle::pick(rng, q == 2 ? 12 : 9));
        auto m = oracle::random_model(rng, oracle::random_graph(rng, n, 0.25 + 0.05 * (trial % 8)), q, 0.1);
        auto report = partition_junction_tree(m, JunctionTreeOptions{NumericPath::exact});
        out.expect(report.exact_z && *report.exact_z == oracle::partition_exact(m), "exact path mismatch");
    }
    for (std::size_t g : {3, 4})
        for (int trial = 0; trial < 10; ++trial) {
            auto m = random_grid_model(g, rng);
            auto z = oracle::partition(m).get_d();
            auto report = partition_junction_tree(m);
            out.expect(std::abs(report.z - z) <= 1e-9 * std::abs(z), "float path error on the " + std::to_string(g) + "-grid");
        }
    return out;
}

auto criterion_9_scaling() -> Outcome
{
    Outcome out;
    auto rows = bench_scaling(2, 6, 5, BenchOptions{9009});
    std::cout << format_bench_table(rows);
    bool doubled = false;
    for (std::size_t i = 0; i < rows.size(); ++i) {
        out.expect(rows[i].peak_clique_size >= static_cast<int>(rows[i].g) + 1, "peak clique below g+1");
        if (i == 0)
            continue;
        out.expect(rows[i].peak_clique_size >= rows[i - 1].peak_clique_size, "peak clique decreased");
        out.expect(rows[i].median_seconds >= rows[i - 1].median_seconds, "median time decreased at g = " + std::to_string(rows[i].g));
        doubled = doubled || rows[i].median_seconds >= 2 * rows[i - 1].median_seconds;
    }
    out.expect(doubled, "no step doubled the median time");
    return out;
}

} // namespace

int main()
{
    const std::vector<std::pair<std::string, std::function<Outcome()>>> criteria{
        {"1 lift preserves Z exactly (300 random triples)", criterion_1_lift_preserves_z},
        {"2 threshold decision matches max-sat (200 instances)", criterion_2_threshold_decision},
        {"3 floor(Z) equals the solution count", criterion_3_counting},
        {"4 example graph has treewidth 3", criterion_4_example_treewidth},
        {"5 example minor sequence replays exactly", criterion_5_example_sequence},
        {"6 embedding soundness and grid search", criterion_6_embedding},
        {"7 end-to-end pipelines match the oracles", criterion_7_end_to_end},
        {"8 junction tree exact and float agreement", criterion_8_junction_tree},
        {"9 junction-tree scaling trend over g = 2..6", criterion_9_scaling},
    };
    int failed = 0;
    for (auto & [name, run] : criteria) {
        auto start = std::chrono::steady_clock::now();
        Outcome out;
        try {
            out = run();
        }
        catch (const std::exception & e) {
            out.expect(false, std::string("exception: ") + e.what());
        }
        double seconds = std::chrono::duration<double>(std::chrono::steady_clock::now() - start).count();
        std::ostringstream line;
        line.precision(3);
        line << (out.failures ? "FAIL" : "PASS") << " criterion " << name << " [" << out.cases - out.failures << "/" << out.cases
             << " checks, " << seconds << " s]";
        if (out.failures)
            line << " first failure: " << out.first_failure;
        std::cout << line.str() << std::endl;
        failed += out.failures != 0;
    }
    return failed == 0 ? 0 : 1;
}
