// gmreduce: command-line front end for the reduction library.
//
// Exit status: 0 on success, 2 when a stage fails (stage name on stderr), CLI11's codes for
// argument errors.

#include <gmr/gmr.hpp>

#include <CLI11.hpp>

#include <filesystem>
#include <iostream>
#include <regex>

using namespace gmr;

namespace {

/// Runs one command body, converting library errors into a staged failure.
template <typename F>
auto staged(const std::string & stage, F && body) -> int
{
    try {
        body();
        return 0;
    }
    catch (const StageError & e) {
        std::cerr << "gmreduce: stage " << e.stage() << " failed: " << to_string(e.kind()) << '\n' << e.what() << '\n';
    }
    catch (const Error & e) {
        std::cerr << "gmreduce: stage " << stage << " failed: " << to_string(e.kind()) << '\n' << e.what() << '\n';
    }
    return 2;
}

void print_trace(const PipelineTrace & t)
{
    for (auto & s : t.stages) {
        std::cout << "stage " << s.name << " in=" << s.input_fingerprint << " out=" << s.output_fingerprint << " ms="
                  << std::chrono::duration<double, std::milli>(s.elapsed).count();
        for (auto & [k, v] : s.size_metrics)
            std::cout << ' ' << k << '=' << v;
        std::cout << '\n';
    }
    for (auto & c : t.z_checks)
        std::cout << "zcheck " << c.stage << ' ' << c.vertices_before << "->" << c.vertices_after << " method=" << c.method
                  << (c.holds() ? " equal" : " DIFFERENT") << '\n';
    std::cout << "grid_side " << t.grid_side << '\n';
    std::cout << "z " << t.z.to_string() << '\n';
    std::cout << "partition_method " << t.partition_method << '\n';
    if (t.counting) {
        std::cout << "count " << t.final_count->get_str() << '\n';
        if (t.oracle_count)
            std::cout << "oracle_count " << t.oracle_count->get_str() << '\n';
    }
    else {
        std::cout << "d " << t.d << " m " << t.m << '\n';
        std::cout << "decision " << (*t.final_decision ? "true" : "false") << '\n';
        if (t.oracle_decision)
            std::cout << "oracle_decision " << (*t.oracle_decision ? "true" : "false") << '\n';
    }
    std::cout << "consistent " << (t.consistent() ? "true" : "false") << '\n';
}

} // namespace

int main(int argc, char ** argv)
{
    CLI::App app{"Graph-minor reductions for exact inference on pairwise models"};
    app.require_subcommand(1);
    int status = 0;

    // encode
    std::string cnf_path, mode = "max", epsilon_text, out_path;
    auto * encode = app.add_subcommand("encode", "Encode a 2-CNF as a pairwise model (UAI plus sidecars)");
    encode->add_option("--cnf", cnf_path, "DIMACS 2-CNF file")->required();
    encode->add_option("--mode", mode, "max or count")->check(CLI::IsMember({"max", "count"}));
    encode->add_option("--epsilon", epsilon_text, "Rational epsilon, e.g. 1/8 (max mode)");
    encode->add_option("--out", out_path, "Output .uai path")->required();
    encode->callback([&] {
        status = staged("encode", [&] {
            auto inst = parse_dimacs_2cnf(text::read_file(cnf_path));
            if (mode == "count" && ! epsilon_text.empty())
                throw Error(ErrorKind::InvalidArgument, "--epsilon applies to max mode only");
            ThresholdSidecar t{mode, default_epsilon(inst.n, inst.q), inst.constraint_count()};
            auto m = [&] {
                if (mode == "count")
                    return encode_count(inst);
                auto enc = encode_max2csp(inst, epsilon_text.empty() ? std::nullopt : std::optional(ExactNumber::parse(epsilon_text)));
                t.epsilon = enc.epsilon;
                return std::move(enc.model);
            }();
            write_uai(out_path, m);
            text::write_file(threshold_sidecar_path(out_path), format_threshold(t));
            std::cout << "vertices " << m.graph().vertex_count() << " edges " << m.graph().edge_count() << " m " << t.m
                      << " epsilon " << t.epsilon.to_string() << '\n';
        });
    });

    // lift
    std::string model_path, host_path, seq_path;
    auto * lift = app.add_subcommand("lift", "Lift a model on a minor back to the host graph");
    lift->add_option("--model", model_path, "Model on the minor (.uai)")->required();
    lift->add_option("--host", host_path, "Host graph")->required();
    lift->add_option("--seq", seq_path, "Minor sequence from host to the model's graph")->required();
    lift->add_option("--out", out_path, "Output .uai path")->required();
    lift->callback([&] {
        status = staged("lift", [&] {
            auto lifted = lift_model(read_graph(host_path), read_minor_sequence(seq_path), read_uai(model_path));
            write_uai(out_path, lifted);
            // Z is unchanged, so any decision threshold carries over
            if (std::filesystem::exists(threshold_sidecar_path(model_path)))
                std::filesystem::copy_file(threshold_sidecar_path(model_path), threshold_sidecar_path(out_path),
                    std::filesystem::copy_options::overwrite_existing);
            std::cout << "vertices " << lifted.graph().vertex_count() << " edges " << lifted.graph().edge_count() << '\n';
        });
    });

    // embed-grid
    std::string graph_path, chains_path;
    std::uint64_t seed = 0;
    auto * embed = app.add_subcommand("embed-grid", "Minor sequence from a grid onto a planar graph");
    embed->add_option("--graph", graph_path, "Planar graph")->required();
    embed->add_option("--out", out_path, "Output .mseq path")->required();
    embed->add_option("--chains", chains_path, "Also write the chain embedding");
    embed->add_option("--seed", seed, "Seed for grid compaction");
    embed->callback([&] {
        status = staged("embed_grid", [&] {
            auto r = planar_to_grid_minor(read_graph(graph_path), PlanarGridOptions{true, 400, seed});
            write_minor_sequence(out_path, r.seq);
            if (! chains_path.empty())
                write_chains(chains_path, r.embedding.chains);
            std::cout << "grid_side " << r.side << " drawing_side " << r.drawing_side << " ops " << r.seq.ops.size() << '\n';
        });
    });

    // find-grid
    std::size_t g = 0;
    std::uint64_t budget = MinorSearchOptions{}.budget;
    auto * find = app.add_subcommand("find-grid", "Search a host graph for a g x g grid minor");
    find->add_option("--host", host_path, "Host graph")->required();
    find->add_option("--g", g, "Grid side")->required()->check(CLI::PositiveNumber);
    find->add_option("--budget", budget, "Chain placements before giving up");
    find->add_option("--seed", seed, "Search seed");
    find->add_option("--out", out_path, "Output .chains path")->required();
    find->add_option("--seq", seq_path, "Also write the host-to-grid minor sequence");
    find->callback([&] {
        status = staged("find_grid", [&] {
            auto host = read_graph(host_path);
            auto found = find_grid_minor(host, g, budget, seed);
            if (! found)
                throw Error(ErrorKind::GridEmbedNotFound,
                    "no " + std::to_string(g) + "x" + std::to_string(g) + " grid minor found within budget " + std::to_string(budget));
            write_chains(out_path, found->chains);
            if (! seq_path.empty())
                write_minor_sequence(seq_path, chains_to_minor_sequence(*found));
            std::size_t used = 0;
            for (auto & [t, chain] : found->chains)
                used += chain.size();
            std::cout << "found " << g << "x" << g << " chain_vertices " << used << '\n';
        });
    });

    // solve
    std::string method = "jt";
    bool exact = false;
    std::optional<std::size_t> d;
    auto * solve = app.add_subcommand("solve", "Partition function of a model");
    solve->add_option("--model", model_path, "Model (.uai)")->required();
    solve->add_option("--method", method, "brute or jt")->check(CLI::IsMember({"brute", "jt"}));
    solve->add_flag("--exact", exact, "Use the rational junction-tree path");
    solve->add_option("--d", d, "Decide 'at least d satisfied' from the model's threshold sidecar");
    solve->callback([&] {
        status = staged("solve", [&] {
            auto m = read_uai(model_path);
            auto report = method == "brute" ? solve_brute(m)
                                            : partition_junction_tree(m, JunctionTreeOptions{exact ? NumericPath::exact : NumericPath::floating});
            std::cout << "method " << report.method << '\n';
            if (report.exact_z)
                std::cout << "z " << report.exact_z->to_string() << '\n';
            std::cout.precision(17);
            std::cout << "z_float " << report.z << "\nlog_z " << report.log_z << '\n';
            std::cout << "peak_clique_size " << report.peak_clique_size << '\n';
            if (! d)
                return;
            if (! report.exact_z)
                throw Error(ErrorKind::InvalidArgument, "--d needs an exact Z: use --method brute or --exact");
            auto t = parse_threshold(text::read_file(threshold_sidecar_path(model_path)));
            if (t.mode == "count")
                throw Error(ErrorKind::InvalidArgument, "the model was encoded for counting; its count is floor(Z)");
            std::cout << "decision " << (decide_at_least(Encoding{m, t.epsilon, t.m}, *d, *report.exact_z) ? "true" : "false") << '\n';
        });
    });

    // pipeline
    std::size_t target_d = 0;
    bool count = false, no_oracle = false;
    auto * pipe = app.add_subcommand("pipeline", "Run the full reduction from a 2-CNF to a host graph");
    pipe->add_option("--cnf", cnf_path, "DIMACS 2-CNF file")->required();
    pipe->add_option("--host", host_path, "Host graph")->required();
    auto * d_option = pipe->add_option("--d", target_d, "Decide whether at least d clauses can be satisfied");
    pipe->add_flag("--count", count, "Count satisfying assignments instead")->excludes(d_option);
    pipe->add_option("--budget", budget, "Chain placements for the host search");
    pipe->add_option("--seed", seed, "Seed");
    pipe->add_flag("--no-oracle", no_oracle, "Skip the enumeration oracle");
    pipe->callback([&] {
        if (! count && d_option->count() == 0)
            throw CLI::RequiredError("--d or --count");
        status = staged("pipeline", [&] {
            PipelineOptions options;
            options.budget = budget;
            options.seed = seed;
            options.run_oracle = ! no_oracle;
            auto cnf = text::read_file(cnf_path);
            auto host = read_graph(host_path);
            print_trace(count ? run_count_pipeline(cnf, host, options) : run_pipeline(cnf, host, target_d, options));
        });
    });

    // bench
    std::string grids = "2..6";
    int reps = 3;
    auto * bench = app.add_subcommand("bench", "Junction-tree timings on random grid models");
    bench->add_option("--grids", grids, "Range of grid sides, A..B");
    bench->add_option("--reps", reps, "Models per grid side")->check(CLI::PositiveNumber);
    bench->add_option("--seed", seed, "Seed");
    bench->add_option("--out", out_path, "Output .tsv path (stdout if omitted)");
    bench->callback([&] {
        status = staged("bench", [&] {
            std::smatch match;
            static const std::regex range(R"((\d+)\.\.(\d+))");
            if (! std::regex_match(grids, match, range))
                throw Error(ErrorKind::InvalidArgument, "--grids expects A..B, got '" + grids + "'");
            auto rows = bench_scaling(std::stoul(match[1]), std::stoul(match[2]), reps, BenchOptions{seed});
            auto table = format_bench_table(rows);
            if (out_path.empty())
                std::cout << table;
            else
                text::write_file(out_path, table);
        });
    });

    CLI11_PARSE(app, argc, argv);
    return status;
}
