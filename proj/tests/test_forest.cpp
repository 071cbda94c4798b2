#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include <set>

#include "linkedbars/forest.hpp"
#include "linkedbars/oracle.hpp"

using namespace linkedbars;

namespace {

struct Chart {
    WeightedGraph graph;
    Sequences seqs;
    LinkTable table;
};

Chart chart(const WeightedGraph& g) {
    Chart c;
    c.graph = g;
    c.seqs = build_sequences(c.graph);
    c.table = classify_links(c.graph, c.seqs, HeightIndex::from_sequences(c.seqs));
    return c;
}

Chart chart(const std::vector<double>& weights, const std::vector<RawEdge>& edges) {
    return chart(validate_instance(weights, edges));
}

// Two tall bars with a low bar between them, plus helper links so the {2,4}
// blocks have slack on both sides: {2,3} and {3,4} are adjacent dependent,
// {2,4} is distant dependent, and together they close a cycle.
Chart dl_cycle() {
    return chart({0, 0, 0, 0, 0}, {{1, 2, 1}, {2, 3, 2}, {2, 4, 4}, {3, 4, 2}, {4, 5, 1}});
}

}  // namespace

TEST_CASE("dl_forest roots each tree at its lowest bar") {
    Chart c = chart({1, 1, 1, 1}, {{1, 2, 2}, {2, 3, 2}, {3, 4, 2}});
    ForestCheck check = dl_forest(c.graph, c.table);
    REQUIRE(check.acyclic);
    CHECK(check.forest.roots == std::vector<int>{1});
    CHECK(check.forest.parent_bar[2] == 1);
    CHECK(check.forest.parent_edge[2] == 1);
    CHECK(check.forest.child_edges[1] == std::vector<int>{1});
    CHECK(check.forest.parent_bar[1] == -1);
}

TEST_CASE("dl_forest reports a dependent cycle as a witness") {
    Chart c = dl_cycle();
    REQUIRE(c.table.links[1].kind == LinkKind::adjacent_dependent);
    REQUIRE(c.table.links[2].kind == LinkKind::distant_dependent);
    REQUIRE(c.table.links[3].kind == LinkKind::adjacent_dependent);

    ForestCheck check = dl_forest(c.graph, c.table);
    REQUIRE(!check.acyclic);
    CHECK(std::set<int>(check.cycle.begin(), check.cycle.end()) == std::set<int>{1, 2, 3});

    CHECK_THROWS_AS(solve_forest(c.graph, c.seqs, c.table), PreconditionError);
}

TEST_CASE("forest solver finds the four-bar chain optimum") {
    Chart c = chart({1, 1, 1, 1}, {{1, 2, 2}, {2, 3, 2}, {3, 4, 2}});
    SolveResult res = solve_forest(c.graph, c.seqs, c.table);
    CHECK(res.cost == 0.0);
    CHECK(validate_layout(c.graph, c.seqs, res.layout).empty());
    CHECK(evaluate_layout(c.graph, c.seqs, c.table, res.layout).total == 0.0);
}

TEST_CASE("forest solver handles a chain of adjacent dependent links") {
    Chart c = chart({1, 1, 1, 1, 1, 1},
                    {{1, 2, 2}, {2, 3, 2}, {3, 4, 2}, {4, 5, 2}, {5, 6, 2}});
    SolveResult fast = solve_forest(c.graph, c.seqs, c.table);
    SolveResult slow = brute_force(c.graph, c.seqs, c.table);
    CHECK(fast.cost == slow.cost);
    CHECK(validate_layout(c.graph, c.seqs, fast.layout).empty());
    CHECK(evaluate_layout(c.graph, c.seqs, c.table, fast.layout).total == fast.cost);
}

TEST_CASE("forest solver matches brute force on dependent-forest instances") {
    for (std::uint64_t seed = 0; seed < 120; ++seed) {
        GeneratorParams p;
        p.n = 6;
        p.edges = 7;
        p.shape = Shape::forest_dl;
        p.seed = seed;
        Chart c = chart(generate_instance(p));
        CAPTURE(seed);

        SolveResult fast = solve_forest(c.graph, c.seqs, c.table);
        SolveResult slow = brute_force(c.graph, c.seqs, c.table);
        REQUIRE(fast.cost == slow.cost);
        REQUIRE(validate_layout(c.graph, c.seqs, fast.layout).empty());
        REQUIRE(evaluate_layout(c.graph, c.seqs, c.table, fast.layout).total == fast.cost);
    }
}

TEST_CASE("forest solver matches brute force on unimodal instances") {
    // Rising-then-falling heights leave no room for distant dependent links,
    // so the dependent links always form a forest there.
    for (std::uint64_t seed = 0; seed < 80; ++seed) {
        GeneratorParams p;
        p.n = 6;
        p.edges = 7;
        p.shape = Shape::unimodal;
        p.seed = seed;
        Chart c = chart(generate_instance(p));
        CAPTURE(seed);
        for (const auto& rec : c.table.links) {
            REQUIRE(rec.kind != LinkKind::distant_dependent);
        }

        SolveResult fast = solve_forest(c.graph, c.seqs, c.table);
        SolveResult slow = brute_force(c.graph, c.seqs, c.table);
        REQUIRE(fast.cost == slow.cost);
        REQUIRE(validate_layout(c.graph, c.seqs, fast.layout).empty());
    }
}

TEST_CASE("forest solver is deterministic") {
    GeneratorParams p;
    p.n = 7;
    p.edges = 8;
    p.shape = Shape::forest_dl;
    p.seed = 4242;
    Chart c = chart(generate_instance(p));
    SolveResult a = solve_forest(c.graph, c.seqs, c.table);
    SolveResult b = solve_forest(c.graph, c.seqs, c.table);
    CHECK(a.cost == b.cost);
    CHECK(a.layout.stacks == b.layout.stacks);
}
