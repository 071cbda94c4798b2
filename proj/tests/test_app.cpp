#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include <json.hpp>

#include <set>
#include <string>

#include "linkedbars/driver.hpp"
#include "linkedbars/oracle.hpp"
#include "linkedbars/svg.hpp"
#include "svg_audit.hpp"

using namespace linkedbars;

namespace {

const char* kThreeBars =
    R"({"vertices":[{"id":"a","weight":1},{"id":"b","weight":5},{"id":"c","weight":1}],)"
    R"("edges":[{"u":"a","v":"c","weight":2}]})";

struct Loaded {
    Instance inst;
    Sequences seqs;
    LinkTable table;
};

Loaded load(const Instance& inst) {
    Loaded l;
    l.inst = inst;
    l.seqs = build_sequences(l.inst.graph);
    l.table = classify_links(l.inst.graph, l.seqs, HeightIndex::from_sequences(l.seqs));
    return l;
}

Loaded load(const std::string& text) { return load(parse_instance(text)); }

Instance numbered(WeightedGraph g) {
    Instance inst;
    inst.graph = std::move(g);
    for (int i = 0; i < inst.graph.n(); ++i) inst.ids.push_back("v" + std::to_string(i + 1));
    return inst;
}

Loaded loaded_chart(const std::vector<double>& weights, const std::vector<RawEdge>& edges) {
    return load(numbered(validate_instance(weights, edges)));
}

}  // namespace

TEST_CASE("the instance format parses into bar order and normalized edges") {
    Instance inst = parse_instance(kThreeBars);
    REQUIRE(inst.ids == std::vector<std::string>{"a", "b", "c"});
    REQUIRE(inst.graph.bar_weights == std::vector<double>{1, 5, 1});
    REQUIRE(inst.graph.m() == 1);
    CHECK(inst.graph.edges[0].u == 0);
    CHECK(inst.graph.edges[0].v == 2);
    CHECK(inst.graph.edges[0].weight == 2.0);
    CHECK(edge_name(inst, 0) == "a~c");

    // Endpoints listed right-to-left normalize to the bar order.
    Instance flipped = parse_instance(
        R"({"vertices":[{"id":"a","weight":1},{"id":"b","weight":5},{"id":"c","weight":1}],)"
        R"("edges":[{"u":"c","v":"a","weight":2}]})");
    CHECK(flipped == inst);
}

TEST_CASE("edge names stay unique when ids contain the separator") {
    Instance inst = parse_instance(
        R"({"vertices":[{"id":"a","weight":0},{"id":"b~c","weight":0},)"
        R"({"id":"a~b","weight":0},{"id":"c","weight":1}],)"
        R"("edges":[{"u":"a","v":"b~c","weight":1},{"u":"a~b","v":"c","weight":1}]})");
    CHECK(edge_name(inst, 0) == "a~b~c");
    CHECK(edge_name(inst, 1) == "a~b~c#2");
}

TEST_CASE("malformed instances are rejected with a field diagnostic") {
    const auto message_of = [](const std::string& text) {
        try {
            parse_instance(text);
        } catch (const ValidationError& e) {
            return std::string(e.what());
        }
        return std::string("(accepted)");
    };

    CHECK(message_of("[1,2]").find("top level") != std::string::npos);
    CHECK(message_of("{nope").find("not valid JSON") != std::string::npos);
    CHECK(message_of(R"({"vertices":[{"id":"a"}],"edges":[]})").find("vertex 1") !=
          std::string::npos);
    CHECK(message_of(R"({"vertices":[{"id":"a","weight":"large"}],"edges":[]})")
              .find("must be a number") != std::string::npos);
    CHECK(message_of(R"({"vertices":[{"id":"a","weight":1}]})").find("\"edges\"") !=
          std::string::npos);
    CHECK(message_of(
              R"({"vertices":[{"id":"a","weight":1},{"id":"a","weight":2}],"edges":[]})")
              .find("duplicate vertex id \"a\"") != std::string::npos);

    const std::string two =
        R"({"vertices":[{"id":"a","weight":1},{"id":"b","weight":1}],"edges":)";
    CHECK(message_of(two + R"([{"u":"a","v":"z","weight":1}]})")
              .find("unknown vertex id \"z\"") != std::string::npos);
    CHECK(message_of(two + R"([{"u":"a","v":"b","weight":-2}]})").find("edge") !=
          std::string::npos);
    CHECK(message_of(two + R"([{"u":"a","v":"a","weight":1}]})").find("self") !=
          std::string::npos);
}

TEST_CASE("instances round-trip through emit and parse") {
    Instance inst = parse_instance(kThreeBars);
    CHECK(parse_instance(emit_instance(inst)) == inst);

    GeneratorParams params;
    params.edges = 7;
    for (unsigned long long seed = 1; seed <= 20; ++seed) {
        params.seed = seed;
        Instance gen = numbered(generate_instance(params));
        CHECK(parse_instance(emit_instance(gen)) == gen);
    }
}

TEST_CASE("numbers render in shortest round-trip form") {
    CHECK(format_number(6.0) == "6");
    CHECK(format_number(2.5) == "2.5");
    CHECK(format_number(0.1) == "0.1");
    CHECK(format_number(-3.25) == "-3.25");
    CHECK(format_number(1e7) == "1e+07");
}

TEST_CASE("analysis drives the dispatch order") {
    Loaded il = load(kThreeBars);
    Diagnostics d = analyze(il.inst.graph, il.seqs, il.table);
    CHECK(d.independent == 1);
    CHECK(d.layouts == 1.0);
    CHECK(choose_algorithm(d) == Algorithm::no_dl);

    // One adjacent dependent link: the plain forest DP applies.
    Loaded chain = loaded_chart({0, 0, 0, 0}, {{1, 2, 2}, {2, 3, 1}, {3, 4, 2}});
    d = analyze(chain.inst.graph, chain.seqs, chain.table);
    CHECK(d.adjacent_dependent == 1);
    CHECK(d.dependent_forest);
    CHECK(choose_algorithm(d) == Algorithm::forest);

    // A dependent triangle is no forest, but its distant link extension is
    // still acyclic.
    Loaded tri = loaded_chart({0, 0, 0, 0, 0},
                              {{1, 2, 1}, {2, 3, 2}, {2, 4, 4}, {3, 4, 2}, {4, 5, 1}});
    d = analyze(tri.inst.graph, tri.seqs, tri.table);
    CHECK(!d.dependent_forest);
    CHECK(d.extended_forest);
    CHECK(choose_algorithm(d) == Algorithm::nadl_forest);

    // A cycle of distant links leaves only the general solver.
    Loaded cyc = loaded_chart({0, 0, 0, 0, 0, 0, 0},
                              {{1, 2, 1},
                               {2, 3, 1},
                               {3, 4, 1},
                               {4, 5, 1},
                               {5, 6, 1},
                               {6, 7, 1},
                               {2, 4, 2},
                               {4, 6, 2},
                               {2, 6, 8}});
    d = analyze(cyc.inst.graph, cyc.seqs, cyc.table);
    CHECK(!d.extended_forest);
    CHECK(choose_algorithm(d) == Algorithm::fpt);
}

TEST_CASE("auto solve reports its algorithm and passes the oracle check") {
    Loaded chain = loaded_chart({0, 0, 0, 0}, {{1, 2, 2}, {2, 3, 1}, {3, 4, 2}});
    RunConfig config;
    config.oracle_check = true;
    RunOutcome outcome = run_solve(chain.inst.graph, chain.seqs, chain.table, config);
    CHECK(outcome.used == Algorithm::forest);
    CHECK(outcome.oracle_checked);
    CHECK(outcome.costs.total == outcome.result.cost);

    SolveResult want = brute_force(chain.inst.graph, chain.seqs, chain.table, 1e6);
    CHECK(outcome.result.cost == want.cost);
}

TEST_CASE("forcing an algorithm outside its domain is a precondition error") {
    Loaded chain = loaded_chart({0, 0, 0, 0}, {{1, 2, 2}, {2, 3, 1}, {3, 4, 2}});
    RunConfig config;
    config.algorithm = Algorithm::no_dl;
    CHECK_THROWS_AS(run_solve(chain.inst.graph, chain.seqs, chain.table, config),
                    PreconditionError);
}

TEST_CASE("budgets refuse oversized runs") {
    Loaded chain = loaded_chart({0, 0, 0, 0}, {{1, 2, 2}, {2, 3, 1}, {3, 4, 2}});
    RunConfig config;
    config.algorithm = Algorithm::brute;
    config.oracle_budget = 1;
    CHECK_THROWS_AS(run_solve(chain.inst.graph, chain.seqs, chain.table, config),
                    BudgetExceeded);

    config.algorithm = Algorithm::fpt;
    config.oracle_budget = 1e7;
    config.state_budget = 1;
    CHECK_THROWS_AS(run_solve(chain.inst.graph, chain.seqs, chain.table, config),
                    BudgetExceeded);
}

TEST_CASE("algorithm names round-trip and reject unknowns") {
    for (Algorithm a : {Algorithm::automatic, Algorithm::no_dl, Algorithm::forest,
                        Algorithm::nadl_forest, Algorithm::fpt, Algorithm::brute}) {
        CHECK(algorithm_from_name(algorithm_name(a)) == a);
    }
    CHECK_THROWS_AS(algorithm_from_name("newton"), ValidationError);
}

TEST_CASE("layout reports are byte-identical across runs and machine-readable") {
    GeneratorParams params;
    params.edges = 7;
    params.seed = 99;
    Instance inst = numbered(generate_instance(params));
    const auto report = [&] {
        Loaded l = load(inst);
        RunOutcome outcome = run_solve(l.inst.graph, l.seqs, l.table, RunConfig{});
        return layout_report_json(l.inst, l.seqs, l.table, outcome);
    };
    const std::string once = report();
    CHECK(once == report());

    const nlohmann::json doc = nlohmann::json::parse(once);
    CHECK(doc.at("algorithm").is_string());
    CHECK(doc.at("bars").size() == 6);
    CHECK(doc.at("links").size() == 7);
    double per_link = 0.0;
    for (const auto& link : doc.at("links")) per_link += link.at("cost").get<double>();
    CHECK(per_link == doctest::Approx(doc.at("total_cost").get<double>()).epsilon(1e-12));
}

TEST_CASE("the human table lists every bar and link") {
    Loaded l = load(kThreeBars);
    RunOutcome outcome = run_solve(l.inst.graph, l.seqs, l.table, RunConfig{});
    const std::string table = human_table(l.inst, l.seqs, l.table, outcome);
    CHECK(table.find("algorithm: no-dl") != std::string::npos);
    CHECK(table.find("total vertical link length: 6") != std::string::npos);
    CHECK(table.find("a~c") != std::string::npos);
    CHECK(table.find("(no linked blocks)") != std::string::npos);
    CHECK(table.find("independent") != std::string::npos);
}

TEST_CASE("the three-bar chart renders as three bars, two blocks, one climb") {
    Loaded l = load(kThreeBars);
    RunOutcome outcome = run_solve(l.inst.graph, l.seqs, l.table, RunConfig{});
    const std::string svg = render_svg(l.inst.graph, l.seqs, l.table, outcome.result.layout);

    svg_audit::Audit audit = svg_audit::audit_svg(svg);
    REQUIRE(audit.well_formed);
    CHECK(audit.bar_rects == 3);
    CHECK(audit.block_rects == 2);
    REQUIRE(audit.links.size() == 1);
    CHECK(svg_audit::bends(audit.links[0]) == 4);
    CHECK(svg_audit::vertical_extent(audit.links[0]) ==
          doctest::Approx(6.0 * 40.0).epsilon(1e-12));
}

TEST_CASE("edgeless charts render bars only") {
    Loaded l = load(R"({"vertices":[{"id":"a","weight":2},{"id":"b","weight":1}],"edges":[]})");
    RunOutcome outcome = run_solve(l.inst.graph, l.seqs, l.table, RunConfig{});
    svg_audit::Audit audit =
        svg_audit::audit_svg(render_svg(l.inst.graph, l.seqs, l.table, outcome.result.layout));
    REQUIRE(audit.well_formed);
    CHECK(audit.bar_rects == 2);
    CHECK(audit.block_rects == 0);
    CHECK(audit.links.empty());
}

TEST_CASE("rendered vertical ink equals the reported cost") {
    GeneratorParams params;
    params.edges = 7;
    const SvgStyle style;
    for (const Shape shape : {Shape::arbitrary, Shape::valley, Shape::unimodal}) {
        params.shape = shape;
        for (unsigned long long seed = 1; seed <= 15; ++seed) {
            params.seed = seed;
            Loaded l = load(numbered(generate_instance(params)));
            RunOutcome outcome = run_solve(l.inst.graph, l.seqs, l.table, RunConfig{});
            svg_audit::Audit audit = svg_audit::audit_svg(
                render_svg(l.inst.graph, l.seqs, l.table, outcome.result.layout, style));
            REQUIRE(audit.well_formed);
            REQUIRE(audit.links.size() == l.inst.graph.edges.size());
            double ink = 0.0;
            for (const svg_audit::Polyline& p : audit.links) {
                const int b = svg_audit::bends(p);
                CHECK((b == 0 || b == 2 || b == 4));
                ink += svg_audit::vertical_extent(p);
            }
            CHECK(ink / style.scale ==
                  doctest::Approx(outcome.result.cost).epsilon(1e-9));
        }
    }
}
