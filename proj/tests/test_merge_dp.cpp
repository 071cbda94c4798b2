#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include <cmath>
#include <limits>
#include <random>

#include "linkedbars/merge_dp.hpp"
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

}  // namespace

TEST_CASE("merging one left and one right block picks the cheaper order") {
    // base 1, left block h=2 pulled to 10, right block h=4 pulled to 0:
    //   L first: |10-2| + |0-5| = 13,  R first: |0-3| + |10-6| = 7.
    auto left = [](int, int k) { return std::abs(10.0 - (k == 0 ? 2.0 : 6.0)); };
    auto right = [](int, int p) { return std::abs(0.0 - (p == 0 ? 3.0 : 5.0)); };
    MergeResult res = solve_bar(1, 1, left, right);
    CHECK(res.cost == 7.0);
    CHECK(res.order == std::vector<Side>{Side::R, Side::L});
    CHECK(res.cells == 4);
}

TEST_CASE("ties put left blocks at the bottom") {
    auto zero = [](int, int) { return 0.0; };
    MergeResult res = solve_bar(2, 2, zero, zero);
    CHECK(res.cost == 0.0);
    CHECK(res.order == std::vector<Side>{Side::L, Side::L, Side::R, Side::R});
}

TEST_CASE("merge DP matches exhaustive enumeration of one bar") {
    // Random per-block cost tables, compared against all C(nl+nr, nl) merges.
    std::mt19937 rng(99);
    for (int trial = 0; trial < 200; ++trial) {
        const int nl = static_cast<int>(rng() % 4);
        const int nr = static_cast<int>(rng() % 4);
        std::vector<std::vector<double>> lc(nl, std::vector<double>(nr + 1));
        std::vector<std::vector<double>> rc(nr, std::vector<double>(nl + 1));
        for (auto& row : lc) {
            for (double& x : row) x = static_cast<double>(rng() % 50);
        }
        for (auto& row : rc) {
            for (double& x : row) x = static_cast<double>(rng() % 50);
        }
        auto left = [&](int idx, int k) { return lc[idx][k]; };
        auto right = [&](int idx, int p) { return rc[idx][p]; };

        double expect = std::numeric_limits<double>::infinity();
        for (const auto& pattern : all_merges(nl, nr)) {
            double total = 0.0;
            int l = 0, r = 0;
            for (Side s : pattern) {
                if (s == Side::L) {
                    total += lc[l][r];
                    ++l;
                } else {
                    total += rc[r][l];
                    ++r;
                }
            }
            expect = std::min(expect, total);
        }

        MergeResult res = solve_bar(nl, nr, left, right);
        REQUIRE(res.cost == expect);
        REQUIRE(res.cells == (nl + 1) * (nr + 1));

        // the reported order must actually realize the reported cost
        double realized = 0.0;
        int l = 0, r = 0;
        for (Side s : res.order) {
            realized += s == Side::L ? lc[l++][r] : rc[r++][l];
        }
        REQUIRE(realized == res.cost);
    }
}

TEST_CASE("independent solver equals brute force when all links are independent") {
    int compared = 0;
    for (std::uint64_t seed = 0; seed < 200 && compared < 60; ++seed) {
        GeneratorParams p;
        p.n = 6;
        p.edges = 7;
        p.seed = seed;
        Chart c = chart(generate_instance(p));
        bool any_dl = false;
        for (const auto& rec : c.table.links) any_dl = any_dl || rec.dependent();
        if (any_dl) continue;
        ++compared;

        IndependentResult fast = solve_independent(c.graph, c.seqs, c.table);
        SolveResult slow = brute_force(c.graph, c.seqs, c.table);
        REQUIRE(fast.cost == slow.cost);
        REQUIRE(validate_layout(c.graph, c.seqs, fast.layout).empty());
        REQUIRE(evaluate_layout(c.graph, c.seqs, c.table, fast.layout).total == fast.cost);

        long long cells = 0;
        for (const auto& bar : c.seqs.bars) {
            cells += static_cast<long long>(bar.left.size() + 1) * (bar.right.size() + 1);
        }
        REQUIRE(fast.cells == cells);
    }
    CHECK(compared >= 30);  // the sweep must actually exercise the solver
}

TEST_CASE("independent solver refuses charts with dependent links") {
    Chart c = chart(validate_instance({1, 1, 1, 1}, {{1, 2, 2}, {2, 3, 2}, {3, 4, 2}}));
    CHECK_THROWS_AS(solve_independent(c.graph, c.seqs, c.table), PreconditionError);
}
