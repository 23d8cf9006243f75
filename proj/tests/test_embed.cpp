#include <catch_amalgamated.hpp>

#include "oracles.hpp"

using namespace gmr;

namespace {

auto kind_of(auto && f) -> ErrorKind
{
    try {
        f();
    }
    catch (const Error & e) {
        return e.kind();
    }
    FAIL("expected an Error");
    return ErrorKind::BadState;
}

void check_sequence_reaches_target(const ChainEmbedding & e)
{
    auto seq = chains_to_minor_sequence(e);
    CHECK(seq.source_fingerprint == e.host.fingerprint());
    CHECK(apply_minor_sequence(e.host, seq) == e.target);
}

} // namespace

TEST_CASE("chains to minor sequences", "[embed]")
{
    SECTION("identity chains need no operations when the graphs coincide")
    {
        auto g = grid_graph(3);
        ChainEmbedding e{g, g, {}};
        for (auto & v : g.vertices())
            e.chains[v] = LabelSet{v};
        CHECK_FALSE(e.check());
        CHECK(chains_to_minor_sequence(e).ops.empty());
    }
    SECTION("a 4-cycle on the border of the 3 x 3 grid")
    {
        auto host = grid_graph(3);
        auto c4 = cycle_graph(4, "q");
        ChainEmbedding e{c4, host, {{"q0", {"0,0", "0,1"}}, {"q1", {"0,2", "1,2"}}, {"q2", {"2,2", "2,1"}}, {"q3", {"2,0", "1,0"}}}};
        CHECK_FALSE(e.check());
        check_sequence_reaches_target(e);
    }
    SECTION("labels shared between host and target survive the renaming")
    {
        auto host = path_graph(3, "p"); // p0 - p1 - p2
        LabeledGraph target;
        target.add_vertex("p1");
        target.add_vertex("p0");
        target.add_edge("p0", "p1");
        ChainEmbedding e{target, host, {{"p1", {"p0"}}, {"p0", {"p1", "p2"}}}};
        check_sequence_reaches_target(e);
    }
    SECTION("invalid chains")
    {
        auto host = grid_graph(3);
        auto edge = path_graph(2, "e");
        std::vector<Chains> bad{
            {{"e0", {"0,0"}}},                                 // missing chain
            {{"e0", {"0,0"}}, {"e1", {}}},                     // empty chain
            {{"e0", {"0,0", "0,1"}}, {"e1", {"0,1"}}},         // overlap
            {{"e0", {"0,0", "2,2"}}, {"e1", {"0,1"}}},         // disconnected
            {{"e0", {"0,0"}}, {"e1", {"2,2"}}},                // edge not realised
            {{"e0", {"0,0"}}, {"e1", {"9,9"}}},                // not a host vertex
            {{"e0", {"0,0"}}, {"e1", {"0,1"}}, {"zz", {"1,1"}}} // not a target vertex
        };
        for (auto & chains : bad) {
            ChainEmbedding e{edge, host, chains};
            CHECK(e.check());
            CHECK(kind_of([&] { e.verify(); }) == ErrorKind::InvalidChains);
            CHECK(kind_of([&] { chains_to_minor_sequence(e); }) == ErrorKind::InvalidChains);
        }
    }
}

TEST_CASE("chain files", "[embed]")
{
    Chains chains{{"a", {"0,0", "0,1"}}, {"b", {"1,1"}}};
    CHECK(parse_chains(format_chains(chains)) == chains);
    CHECK(parse_chains("# header\n\na: x y\nb: z # trailing\n") == Chains{{"a", {"x", "y"}}, {"b", {"z"}}});
    for (auto bad : {"a x y\n", "a: x\na: y\n", ": x\n", "a: x x\n"})
        CHECK_THROWS_AS(parse_chains(bad), Error);
}

TEST_CASE("minor search", "[embed]")
{
    SECTION("examples")
    {
        auto k4 = complete_graph(4, "k");
        auto found = find_minor(grid_graph(3), k4);
        REQUIRE(found);
        CHECK_FALSE(found->check());
        check_sequence_reaches_target(*found);

        CHECK_FALSE(find_minor(grid_graph(3), complete_graph(5)));
        CHECK_FALSE(find_grid_minor(path_graph(30), 2));
        CHECK_FALSE(find_minor(path_graph(3), path_graph(4)));
        CHECK(find_minor(grid_graph(3), LabeledGraph{}));

        auto grid = find_grid_minor(grid_graph(4), 4);
        REQUIRE(grid);
        CHECK(chains_to_minor_sequence(*grid).ops.empty());
    }
    SECTION("the same seed gives the same chains")
    {
        oracle::Rng rng(79);
        auto host = oracle::relabel(rng, grid_graph(6));
        auto a = find_grid_minor(host, 3, 100'000, 5);
        auto b = find_grid_minor(host, 3, 100'000, 5);
        REQUIRE(a);
        REQUIRE(b);
        CHECK(a->chains == b->chains);
    }
    SECTION("relabelled hosts with extra edges")
    {
        oracle::Rng rng(83);
        for (int trial = 0; trial < 10; ++trial) {
            auto host = grid_graph(5);
            auto vs = host.vertices();
            for (int extra = 0; extra < 4; ++extra) {
                auto a = vs[oracle::pick(rng, vs.size())], b = vs[oracle::pick(rng, vs.size())];
                if (a != b && ! host.has_edge(a, b))
                    host.add_edge(a, b);
            }
            host = oracle::relabel(rng, host);
            auto found = find_grid_minor(host, 3, 100'000, trial);
            REQUIRE(found);
            check_sequence_reaches_target(*found);
        }
    }
    SECTION("a grid minor certifies a treewidth lower bound")
    {
        oracle::Rng rng(89);
        for (int trial = 0; trial < 10; ++trial) {
            auto host = oracle::random_graph(rng, 12, 0.45);
            for (std::size_t g = 3; g >= 2; --g)
                if (find_grid_minor(host, g, 20'000, trial)) {
                    CHECK(treewidth_exact(host).width >= static_cast<int>(g));
                    break;
                }
        }
    }
}

TEST_CASE("planar graphs into grids", "[embed]")
{
    SECTION("examples")
    {
        auto edge = planar_to_grid_minor(path_graph(2));
        CHECK(edge.side >= 2);
        CHECK(planar_to_grid_minor(cycle_graph(4)).side == 2);
        CHECK(planar_to_grid_minor(complete_graph(4)).side <= 8);
        CHECK(planar_to_grid_minor(grid_graph(3)).side == 3);
        CHECK(planar_to_grid_minor(grid_graph(3)).seq.ops.empty());
        CHECK(kind_of([] { planar_to_grid_minor(complete_graph(5)); }) == ErrorKind::NotPlanar);
        LabeledGraph k33;
        for (auto v : {"a0", "a1", "a2", "b0", "b1", "b2"})
            k33.add_vertex(v);
        for (auto a : {"a0", "a1", "a2"})
            for (auto b : {"b0", "b1", "b2"})
                k33.add_edge(a, b);
        CHECK(kind_of([&] { planar_to_grid_minor(k33); }) == ErrorKind::NotPlanar);
    }
    SECTION("random planar graphs land within the documented bound")
    {
        oracle::Rng rng(97);
        for (int trial = 0; trial < 40; ++trial) {
            auto g = oracle::random_planar_graph(rng, 1 + static_cast<int>(oracle::pick(rng, 14)), 0.3 + 0.1 * (trial % 6));
            for (bool compact : {false, true}) {
                auto r = planar_to_grid_minor(g, PlanarGridOptions{compact, 400, static_cast<std::uint64_t>(trial)});
                INFO(format_graph(g));
                CHECK(r.drawing_side <= grid_side_slope * g.vertex_count() + grid_side_offset);
                CHECK(r.side <= r.drawing_side);
                CHECK_FALSE(r.embedding.check());
                CHECK(r.seq.source_fingerprint == grid_graph(r.side).fingerprint());
                CHECK(apply_minor_sequence(grid_graph(r.side), r.seq) == g);
            }
        }
    }
}
