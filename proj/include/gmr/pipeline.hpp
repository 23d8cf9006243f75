#pragma once

#include <gmr/csp.hpp>
#include <gmr/embed.hpp>
#include <gmr/grid_embed.hpp>
#include <gmr/inference.hpp>
#include <gmr/lift.hpp>
#include <gmr/minor_search.hpp>

#include <chrono>
#include <cstdint>
#include <map>
#include <optional>
#include <string>
#include <vector>

namespace gmr {

struct StageRecord
{
    std::string name;
    std::string input_fingerprint;
    std::string output_fingerprint;
    std::chrono::nanoseconds elapsed{0};
    std::map<std::string, std::int64_t> size_metrics;
};

/// Partition function compared across one lift: `before` on the smaller graph, `after` on the lifted one.
struct ZCheck
{
    std::string stage;
    std::size_t vertices_before = 0, vertices_after = 0;
    std::string method;
    ExactNumber before, after;

    auto holds() const -> bool { return before == after; }
};

struct PipelineOptions
{
    /// Chain placements for the host search.
    std::uint64_t budget = 100'000;
    std::uint64_t seed = 0;
    /// Graphs up to this many vertices are solved by enumeration, larger ones by the exact junction tree.
    std::size_t brute_vertex_limit = 20;
    /// Recompute Z after every lift and compare exactly.
    bool verify_lifts = true;
    /// Run the enumeration oracle on the CSP.
    bool run_oracle = true;
};

struct PipelineTrace
{
    std::vector<StageRecord> stages;
    bool counting = false;
    std::size_t d = 0;
    /// Constraint count and epsilon of the encoding; decisions for other d follow from `z`.
    std::size_t m = 0;
    ExactNumber epsilon;
    ExactNumber z;
    std::size_t grid_side = 0;
    std::string partition_method;
    std::optional<bool> final_decision, oracle_decision;
    std::optional<BigInt> final_count, oracle_count;
    std::vector<ZCheck> z_checks;

    /// Decision and oracle agree (when the oracle ran) and every recorded lift kept Z.
    auto consistent() const -> bool
    {
        for (auto & c : z_checks)
            if (! c.holds())
                return false;
        if (oracle_decision && final_decision != oracle_decision)
            return false;
        if (oracle_count && final_count != oracle_count)
            return false;
        return true;
    }

    /// Each stage consumes what its predecessor produced.
    auto fingerprints_chain() const -> bool
    {
        for (std::size_t i = 1; i < stages.size(); ++i)
            if (stages[i].input_fingerprint != stages[i - 1].output_fingerprint)
                return false;
        return true;
    }
};

namespace detail {

    class StageRunner
    {
      public:
        StageRunner(PipelineTrace & trace, std::string input_fingerprint) :
            _trace(trace), _fingerprint(std::move(input_fingerprint))
        {
        }

        /// Runs `body`, which returns the fingerprint of its artifact, and records the stage.
        /// Library errors are rethrown tagged with the stage name.
        template <typename F>
        void run(const std::string & name, F && body, std::map<std::string, std::int64_t> metrics = {})
        {
            auto start = std::chrono::steady_clock::now();
            std::string artifact;
            try {
                artifact = body(metrics);
            }
            catch (const StageError &) {
                throw;
            }
            catch (const Error & e) {
                std::string message = e.what();
                auto prefix = std::string(to_string(e.kind())) + ": ";
                if (message.rfind(prefix, 0) == 0)
                    message.erase(0, prefix.size());
                throw StageError(e.kind(), name, message);
            }
            StageRecord record{name, _fingerprint, fingerprint_of(_fingerprint + artifact),
                std::chrono::steady_clock::now() - start, std::move(metrics)};
            _fingerprint = record.output_fingerprint;
            _trace.stages.push_back(std::move(record));
        }

      private:
        PipelineTrace & _trace;
        std::string _fingerprint;
    };

    inline auto exact_partition(const Model & m, std::size_t brute_limit, std::string * method = nullptr) -> ExactNumber
    {
        auto n = m.graph().vertex_count();
        if (n <= brute_limit && bounded_power(m.cardinality(), n, BruteOptions{}.max_assignments)) {
            if (method)
                *method = "brute";
            return partition_brute(m);
        }
        if (method)
            *method = "junction-exact";
        return *partition_junction_tree(m, JunctionTreeOptions{NumericPath::exact}).exact_z;
    }

    inline auto sequence_fingerprint(const MinorSequence & seq) -> std::string
    {
        return fingerprint_of(format_minor_sequence(seq));
    }

    inline auto run_reduction(std::string_view cnf, const LabeledGraph & host, std::optional<std::size_t> d,
        const PipelineOptions & options) -> PipelineTrace
    {
        PipelineTrace trace;
        trace.counting = ! d.has_value();
        trace.d = d.value_or(0);
        StageRunner stages(trace, fingerprint_of(cnf));

        CspInstance csp;
        stages.run("parse", [&](auto & metrics) {
            csp = parse_dimacs_2cnf(cnf);
            metrics["variables"] = csp.n;
            metrics["constraints"] = static_cast<std::int64_t>(csp.constraint_count());
            return csp.fingerprint();
        });

        std::optional<Model> model;
        stages.run("encode", [&](auto & metrics) {
            if (trace.counting) {
                model = encode_count(csp);
                trace.epsilon = default_epsilon(csp.n, csp.q);
            }
            else {
                auto enc = encode_max2csp(csp);
                trace.epsilon = enc.epsilon;
                model = std::move(enc.model);
            }
            trace.m = csp.constraint_count();
            metrics["vertices"] = static_cast<std::int64_t>(model->graph().vertex_count());
            metrics["edges"] = static_cast<std::int64_t>(model->graph().edge_count());
            return model->fingerprint();
        });

        PlanarGridResult grid;
        stages.run("embed_grid", [&](auto & metrics) {
            if (! is_planar(model->graph()))
                throw Error(ErrorKind::NotPlanar, "the constraint graph is not planar; planarise the formula first");
            grid = planar_to_grid_minor(model->graph(), PlanarGridOptions{true, 400, options.seed});
            trace.grid_side = grid.side;
            metrics["grid_side"] = static_cast<std::int64_t>(grid.side);
            metrics["drawing_side"] = static_cast<std::int64_t>(grid.drawing_side);
            metrics["ops"] = static_cast<std::int64_t>(grid.seq.ops.size());
            return sequence_fingerprint(grid.seq);
        });

        std::optional<ExactNumber> z_original;
        auto check_lift = [&](const std::string & stage, const Model & before, const Model & after) {
            if (! options.verify_lifts)
                return;
            if (! z_original)
                z_original = exact_partition(before, options.brute_vertex_limit);
            std::string method;
            auto z_after = exact_partition(after, options.brute_vertex_limit, &method);
            ZCheck check{stage, before.graph().vertex_count(), after.graph().vertex_count(), method, *z_original, z_after};
            if (! check.holds())
                throw Error(ErrorKind::BadState, "lift changed Z from " + check.before.to_string() + " to " + check.after.to_string());
            trace.z_checks.push_back(std::move(check));
        };

        std::optional<Model> on_grid;
        stages.run("lift_to_grid", [&](auto & metrics) {
            on_grid = lift_model(grid.embedding.host, grid.seq, *model);
            check_lift("lift_to_grid", *model, *on_grid);
            metrics["vertices"] = static_cast<std::int64_t>(on_grid->graph().vertex_count());
            return on_grid->fingerprint();
        });

        std::optional<ChainEmbedding> in_host;
        stages.run("find_grid", [&](auto & metrics) {
            in_host = find_grid_minor(host, grid.side, options.budget, options.seed);
            if (! in_host)
                throw Error(ErrorKind::GridEmbedNotFound, "no " + std::to_string(grid.side) + "x" + std::to_string(grid.side)
                        + " grid minor found in the host within budget " + std::to_string(options.budget));
            std::size_t used = 0;
            for (auto & [t, chain] : in_host->chains)
                used += chain.size();
            metrics["host_vertices"] = static_cast<std::int64_t>(host.vertex_count());
            metrics["chain_vertices"] = static_cast<std::int64_t>(used);
            return fingerprint_of(host.fingerprint() + format_chains(in_host->chains));
        });

        MinorSequence host_seq;
        stages.run("chains_to_seq", [&](auto & metrics) {
            host_seq = chains_to_minor_sequence(*in_host);
            metrics["ops"] = static_cast<std::int64_t>(host_seq.ops.size());
            return sequence_fingerprint(host_seq);
        });

        std::optional<Model> on_host;
        stages.run("lift_to_host", [&](auto & metrics) {
            on_host = lift_model(host, host_seq, *on_grid);
            metrics["vertices"] = static_cast<std::int64_t>(on_host->graph().vertex_count());
            return on_host->fingerprint();
        });

        stages.run("partition", [&](auto & metrics) {
            trace.z = exact_partition(*on_host, options.brute_vertex_limit, &trace.partition_method);
            if (options.verify_lifts) {
                if (! z_original)
                    z_original = exact_partition(*model, options.brute_vertex_limit);
                ZCheck check{"lift_to_host", on_grid->graph().vertex_count(), on_host->graph().vertex_count(),
                    trace.partition_method, *z_original, trace.z};
                if (! check.holds())
                    throw Error(ErrorKind::BadState, "lift changed Z from " + check.before.to_string() + " to " + check.after.to_string());
                trace.z_checks.push_back(std::move(check));
            }
            metrics["peak_clique_size"] = build_junction_tree(on_host->graph()).peak_clique_size();
            return fingerprint_of(trace.z.to_string());
        });

        stages.run("decide", [&](auto &) {
            if (trace.counting) {
                trace.final_count = trace.z.floor();
                return fingerprint_of(trace.final_count->get_str());
            }
            Encoding enc{*model, trace.epsilon, trace.m};
            trace.final_decision = decide_at_least(enc, trace.d, trace.z);
            return fingerprint_of(*trace.final_decision ? "true" : "false");
        });

        if (options.run_oracle)
            stages.run("oracle", [&](auto &) {
                if (trace.counting) {
                    trace.oracle_count = BigInt(static_cast<unsigned long>(brute_count(csp)));
                    return fingerprint_of(trace.oracle_count->get_str());
                }
                trace.oracle_decision = brute_maxsat(csp) >= trace.d;
                return fingerprint_of(*trace.oracle_decision ? "true" : "false");
            });
        return trace;
    }

} // namespace detail

/// The decision reduction end to end: 2-CNF -> MAX 2-CSP model -> grid -> host, then
/// "at least d clauses satisfiable" decided from the host model's exact partition function.
inline auto run_pipeline(std::string_view cnf, const LabeledGraph & host, std::size_t d, const PipelineOptions & options = {})
    -> PipelineTrace
{
    return detail::run_reduction(cnf, host, d, options);
}

/// The counting reduction: floor(Z) on the host model is the number of satisfying assignments.
inline auto run_count_pipeline(std::string_view cnf, const LabeledGraph & host, const PipelineOptions & options = {})
    -> PipelineTrace
{
    return detail::run_reduction(cnf, host, std::nullopt, options);
}

} // namespace gmr
