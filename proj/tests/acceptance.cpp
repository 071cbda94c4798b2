// Acceptance gate for the whole artifact. Each numbered criterion prints one
// PASS/FAIL line; the exit code is the number of failures. Thresholds and
// tolerances are pinned here, not configurable.

#include <chrono>
#include <cmath>
#include <cstdio>
#include <numeric>
#include <string>
#include <vector>

#include "linkedbars/driver.hpp"
#include "linkedbars/forest.hpp"
#include "linkedbars/fpt.hpp"
#include "linkedbars/nadl_forest.hpp"
#include "linkedbars/oracle.hpp"
#include "linkedbars/svg.hpp"
#include "svg_audit.hpp"

using namespace linkedbars;

namespace {

constexpr int kOracleInstances = 500;    // criterion 1
constexpr double kLayoutCap = 1e5;       // criterion 1: brute-force ceiling per instance
constexpr double kOracleTimeLimit = 60;  // criterion 1: seconds for the whole sweep
constexpr int kAgreementInstances = 200; // criterion 2, per family
constexpr int kDecompositionInstances = 200;  // criteria 3, 4, 6
constexpr int kObservationInstances = 100;    // criterion 5, per shape
constexpr int kNodeFactor = 32;          // criterion 6: decomposition nodes <= 32 n
constexpr double kIndependentLimit = 2;  // criterion 7 time limits, seconds
constexpr double kForestLimit = 5;
constexpr double kGeneralLimit = 10;
constexpr int kRenderInstances = 50;     // criterion 8
constexpr double kRenderTol = 1e-6;      // criterion 8: chart units after descaling
constexpr int kDeterminismInstances = 20;  // criterion 9

struct Loaded {
    WeightedGraph graph;
    Sequences seqs;
    LinkTable table;
};

Loaded load(WeightedGraph g) {
    Loaded l;
    l.graph = std::move(g);
    l.seqs = build_sequences(l.graph);
    l.table = classify_links(l.graph, l.seqs, HeightIndex::from_sequences(l.seqs));
    return l;
}

double seconds_since(std::chrono::steady_clock::time_point start) {
    return std::chrono::duration<double>(std::chrono::steady_clock::now() - start).count();
}

std::string show_seconds(double secs) {
    return format_number(std::round(secs * 1000) / 1000) + " s";
}

int dependent_count(const LinkTable& table) {
    int dl = 0;
    for (const LinkRecord& l : table.links) dl += l.dependent() ? 1 : 0;
    return dl;
}

struct Dsu {
    std::vector<int> parent;
    explicit Dsu(int n) : parent(n) { std::iota(parent.begin(), parent.end(), 0); }
    int find(int x) { return parent[x] == x ? x : parent[x] = find(parent[x]); }
    bool unite(int a, int b) {  // false when a and b were already connected
        a = find(a);
        b = find(b);
        if (a == b) return false;
        parent[a] = b;
        return true;
    }
};

bool verdict(int number, const char* name, bool pass, const std::string& detail) {
    std::printf("criterion %d (%s): %s — %s\n", number, name, pass ? "PASS" : "FAIL",
                detail.c_str());
    return pass;
}

// ---------------------------------------------------------------------------
// 1. Every structurally applicable solver reproduces the brute-force optimum
//    exactly on 500+ small seeded instances.

bool criterion_oracle_equivalence() {
    const auto start = std::chrono::steady_clock::now();
    GeneratorParams params;
    params.max_degree = 4;
    int checked = 0, skipped = 0;
    std::string failure;
    for (unsigned long long seed = 1; checked < kOracleInstances && seed <= 700; ++seed) {
        params.seed = seed;
        params.n = 4 + static_cast<int>(seed % 3);
        const int cap = params.n == 4 ? 6 : params.n == 5 ? 10 : 12;
        params.edges = params.n - 1 + static_cast<int>(seed % (cap - params.n + 2));
        WeightedGraph g;
        try {
            g = generate_instance(params);
        } catch (const ValidationError&) {
            ++skipped;  // the degree cap can strand edge capacity near the maximum
            continue;
        }
        Loaded l = load(std::move(g));
        if (layout_count(l.seqs) > kLayoutCap) {
            ++skipped;
            continue;
        }
        const SolveResult want = brute_force(l.graph, l.seqs, l.table, kLayoutCap);

        std::vector<std::pair<const char*, SolveResult>> got;
        if (dependent_count(l.table) == 0) {
            IndependentResult res = solve_independent(l.graph, l.seqs, l.table);
            got.emplace_back("per-bar merges", SolveResult{res.cost, std::move(res.layout)});
        }
        if (dl_forest(l.graph, l.table).acyclic) {
            got.emplace_back("forest DP", solve_forest(l.graph, l.seqs, l.table));
        }
        if (extend_forest(l.graph, l.table).acyclic) {
            got.emplace_back("extended forest DP", solve_nadl_forest(l.graph, l.seqs, l.table));
        }
        got.emplace_back("general solver", solve_fpt(l.graph, l.seqs, l.table));

        for (const auto& [solver, res] : got) {
            if (res.cost != want.cost) {
                failure = "seed " + std::to_string(seed) + ": " + solver + " returned " +
                          format_number(res.cost) + ", optimum is " + format_number(want.cost);
                break;
            }
            if (!validate_layout(l.graph, l.seqs, res.layout).empty()) {
                failure = "seed " + std::to_string(seed) + ": " + solver +
                          " produced an invalid stacking";
                break;
            }
        }
        if (!failure.empty()) break;
        ++checked;
    }
    const double elapsed = seconds_since(start);
    bool pass = failure.empty() && checked >= kOracleInstances && elapsed < kOracleTimeLimit;
    std::string detail = failure.empty()
                             ? std::to_string(checked) + " instances (" +
                                   std::to_string(skipped) + " over the layout cap) in " +
                                   show_seconds(elapsed)
                             : failure;
    return verdict(1, "oracle equivalence", pass, detail);
}

// ---------------------------------------------------------------------------
// 2. The specialized solvers, the general solver and brute force agree on
//    their shared domains.

bool criterion_cross_solver_agreement() {
    GeneratorParams params;
    params.edges = 7;
    std::string failure;

    params.shape = Shape::forest_dl;
    int forest_checked = 0;
    for (unsigned long long seed = 1; forest_checked < kAgreementInstances && seed <= 300;
         ++seed) {
        params.seed = seed;
        Loaded l = load(generate_instance(params));
        if (layout_count(l.seqs) > kLayoutCap) continue;
        const double want = brute_force(l.graph, l.seqs, l.table, kLayoutCap).cost;
        const double a = solve_forest(l.graph, l.seqs, l.table).cost;
        const double b = solve_nadl_forest(l.graph, l.seqs, l.table).cost;
        const double c = solve_fpt(l.graph, l.seqs, l.table).cost;
        if (a != want || b != want || c != want) {
            failure = "forest-shaped seed " + std::to_string(seed) + ": got " +
                      format_number(a) + "/" + format_number(b) + "/" + format_number(c) +
                      " vs " + format_number(want);
            break;
        }
        ++forest_checked;
    }

    params.shape = Shape::valley;
    int valley_checked = 0;
    for (unsigned long long seed = 1;
         failure.empty() && valley_checked < kAgreementInstances && seed <= 300; ++seed) {
        params.seed = seed;
        Loaded l = load(generate_instance(params));
        if (!extend_forest(l.graph, l.table).acyclic) continue;
        if (layout_count(l.seqs) > kLayoutCap) continue;
        const double want = brute_force(l.graph, l.seqs, l.table, kLayoutCap).cost;
        const double b = solve_nadl_forest(l.graph, l.seqs, l.table).cost;
        const double c = solve_fpt(l.graph, l.seqs, l.table).cost;
        if (b != want || c != want) {
            failure = "valley seed " + std::to_string(seed) + ": got " + format_number(b) +
                      "/" + format_number(c) + " vs " + format_number(want);
            break;
        }
        ++valley_checked;
    }

    const bool pass = failure.empty() && forest_checked >= kAgreementInstances &&
                      valley_checked >= kAgreementInstances;
    std::string detail = failure.empty()
                             ? std::to_string(forest_checked) + " forest and " +
                                   std::to_string(valley_checked) + " extended-forest instances"
                             : failure;
    return verdict(2, "cross-solver agreement", pass, detail);
}

// ---------------------------------------------------------------------------
// 3. Independent-link costs split exactly into two distances to the link's
//    target height, for every feasible placement pair.

bool criterion_independent_decomposition() {
    GeneratorParams params;
    std::string failure;
    int checked = 0;
    long long pairs = 0;
    for (unsigned long long seed = 1; checked < kDecompositionInstances; ++seed) {
        params.seed = seed;
        params.n = 6 + static_cast<int>(seed % 2);
        params.edges = 7 + static_cast<int>(seed % 5);
        params.weight_max = seed % 3 == 0 ? 2 : 8;
        Loaded l = load(generate_instance(params));
        for (int e = 0; e < l.graph.m() && failure.empty(); ++e) {
            const LinkRecord& link = l.table.links[e];
            if (link.dependent()) continue;
            const Edge& edge = l.graph.edges[e];
            const int imax = static_cast<int>(l.seqs.bars[edge.u].left.size());
            const int jmax = static_cast<int>(l.seqs.bars[edge.v].right.size());
            for (int i = 0; i <= imax; ++i) {
                for (int j = 0; j <= jmax; ++j) {
                    const double yu = block_center(l.graph, l.seqs.bars[edge.u], Side::R,
                                                   l.table.rank_at_u[e], i);
                    const double yv = block_center(l.graph, l.seqs.bars[edge.v], Side::L,
                                                   l.table.rank_at_v[e], j);
                    const double split =
                        std::abs(link.target - yu) + std::abs(link.target - yv);
                    if (split != link_cost(l.graph, l.seqs, l.table, e, i, j)) {
                        failure = "seed " + std::to_string(seed) + " edge " +
                                  std::to_string(e) + " at (" + std::to_string(i) + "," +
                                  std::to_string(j) + ")";
                    }
                    ++pairs;
                }
            }
        }
        if (!failure.empty()) break;
        ++checked;
    }
    const bool pass = failure.empty() && checked >= kDecompositionInstances;
    std::string detail = failure.empty() ? std::to_string(checked) + " instances, " +
                                               std::to_string(pairs) + " placement pairs"
                                         : failure;
    return verdict(3, "independent link cost split", pass, detail);
}

// ---------------------------------------------------------------------------
// 4. Dependent link spans never cross: any two are disjoint, nested, or share
//    an endpoint.

bool criterion_no_dependent_crossing() {
    GeneratorParams params;
    std::string failure;
    int checked = 0;
    for (unsigned long long seed = 1; checked < kDecompositionInstances; ++seed) {
        params.seed = seed;
        params.n = 6 + static_cast<int>(seed % 3);
        params.edges = 7 + static_cast<int>(seed % 7);
        params.weight_max = seed % 2 == 0 ? 2 : 8;
        Loaded l = load(generate_instance(params));
        std::vector<std::pair<int, int>> spans;
        for (int e = 0; e < l.graph.m(); ++e) {
            if (l.table.links[e].dependent()) {
                spans.emplace_back(l.graph.edges[e].u, l.graph.edges[e].v);
            }
        }
        for (size_t a = 0; a < spans.size() && failure.empty(); ++a) {
            for (size_t b = a + 1; b < spans.size(); ++b) {
                auto [u1, v1] = spans[a];
                auto [u2, v2] = spans[b];
                if (u2 < u1) {
                    std::swap(u1, u2);
                    std::swap(v1, v2);
                }
                if (u1 < u2 && u2 < v1 && v1 < v2) {
                    failure = "seed " + std::to_string(seed) + ": spans (" +
                              std::to_string(u1 + 1) + "," + std::to_string(v1 + 1) +
                              ") and (" + std::to_string(u2 + 1) + "," +
                              std::to_string(v2 + 1) + ") cross";
                    break;
                }
            }
        }
        if (!failure.empty()) break;
        ++checked;
    }
    const bool pass = failure.empty() && checked >= kDecompositionInstances;
    return verdict(4, "dependent spans laminar", pass,
                   failure.empty() ? std::to_string(checked) + " instances, zero crossings"
                                   : failure);
}

// ---------------------------------------------------------------------------
// 5. Height-profile observations: unimodal charts keep dependent links in
//    disjoint paths, valley charts keep distant dependent links acyclic.

bool criterion_shape_observations() {
    GeneratorParams params;
    params.n = 7;
    params.edges = 8;
    std::string failure;

    params.shape = Shape::unimodal;
    for (unsigned long long seed = 1; seed <= kObservationInstances && failure.empty();
         ++seed) {
        params.seed = seed;
        Loaded l = load(generate_instance(params));
        for (int b = 0; b < l.graph.n(); ++b) {
            if (l.table.dl_degree[b] > 2) {
                failure = "unimodal seed " + std::to_string(seed) + ": bar " +
                          std::to_string(b + 1) + " carries " +
                          std::to_string(l.table.dl_degree[b]) + " dependent blocks";
            }
        }
        Dsu dsu(l.graph.n());
        for (int e = 0; e < l.graph.m(); ++e) {
            if (!l.table.links[e].dependent()) continue;
            if (!dsu.unite(l.graph.edges[e].u, l.graph.edges[e].v)) {
                failure = "unimodal seed " + std::to_string(seed) + ": dependent links cycle";
            }
        }
    }

    params.shape = Shape::valley;
    for (unsigned long long seed = 1; seed <= kObservationInstances && failure.empty();
         ++seed) {
        params.seed = seed;
        Loaded l = load(generate_instance(params));
        Dsu dsu(l.graph.n());
        for (int e = 0; e < l.graph.m(); ++e) {
            if (l.table.links[e].kind != LinkKind::distant_dependent) continue;
            if (!dsu.unite(l.graph.edges[e].u, l.graph.edges[e].v)) {
                failure = "valley seed " + std::to_string(seed) + ": distant links cycle";
            }
        }
    }

    return verdict(5, "height-profile observations", failure.empty(),
                   failure.empty() ? std::to_string(kObservationInstances) +
                                         " unimodal and as many valley instances clean"
                                   : failure);
}

// ---------------------------------------------------------------------------
// 6. Tree decompositions are structurally valid and linear in chart size.

bool criterion_decomposition_validity() {
    GeneratorParams params;
    std::string failure;
    int checked = 0;
    const Shape shapes[] = {Shape::arbitrary, Shape::valley, Shape::unimodal,
                            Shape::forest_dl};
    for (unsigned long long seed = 1; checked < kDecompositionInstances; ++seed) {
        params.seed = seed;
        params.shape = shapes[seed % 4];
        params.n = 6 + static_cast<int>(seed % 3);
        params.edges = 7 + static_cast<int>(seed % 4);
        Loaded l = load(generate_instance(params));
        TreeDecomposition dec = build_tree_decomposition(l.graph, l.table);
        const auto problems = validate_tree_decomposition(dec, l.graph, l.table);
        if (!problems.empty()) {
            failure = "seed " + std::to_string(seed) + ": " + problems.front();
            break;
        }
        if (static_cast<int>(dec.nodes.size()) > kNodeFactor * l.graph.n()) {
            failure = "seed " + std::to_string(seed) + ": " +
                      std::to_string(dec.nodes.size()) + " nodes for " +
                      std::to_string(l.graph.n()) + " bars";
            break;
        }
        ++checked;
    }
    const bool pass = failure.empty() && checked >= kDecompositionInstances;
    return verdict(6, "decomposition validity", pass,
                   failure.empty() ? std::to_string(checked) + " instances within " +
                                         std::to_string(kNodeFactor) + "n nodes"
                                   : failure);
}

// ---------------------------------------------------------------------------
// 7. Complexity smoke tests on constructed large instances.

// Hubs at even offsets, tall walls at odd offsets; hub-to-hub links always
// climb over a wall taller than any reachable block center, so every link is
// independent. k_extra appends a few wider spans to hit an exact link count.
void hub_wall(int base, int bars, int k_extra, std::vector<double>& w,
              std::vector<RawEdge>& e) {
    for (int i = 0; i < bars; ++i) w.push_back(i % 2 == 0 ? 0.0 : 10.0);
    const int last_hub = base + bars - (bars % 2 == 0 ? 1 : 0);
    for (int hub = base + 1; hub <= last_hub; hub += 2) {
        for (int k = 1; k <= 4; ++k) {
            if (hub + 2 * k <= last_hub) e.push_back({hub, hub + 2 * k, 1});
        }
    }
    for (int j = 0; j < k_extra; ++j) e.push_back({base + 1 + 2 * j, base + 11 + 2 * j, 1});
}

// Five-edge path: the three interior links are adjacent dependent, a chain
// sharing endpoints; the outer two see a one-block bar and stay independent.
void motif_chain(int base, std::vector<double>& w, std::vector<RawEdge>& e) {
    for (int i = 0; i < 6; ++i) w.push_back(0);
    for (int i = 1; i < 6; ++i) e.push_back({base + i, base + i + 1, 1});
}

// Distant triangle u-mid-v with the outer span nesting the two inner ones.
// Stub links give every span endpoint blocks on both sides without adding
// dependent blocks, so no bar holds more than two.
void motif_nest(int base, std::vector<double>& w, std::vector<RawEdge>& e) {
    const double weights[9] = {0, 0, 0, 1, 0, 1, 0, 0, 0};
    for (double x : weights) w.push_back(x);
    e.push_back({base + 1, base + 3, 1});
    e.push_back({base + 2, base + 3, 1});
    e.push_back({base + 3, base + 5, 2});
    e.push_back({base + 5, base + 7, 2});
    e.push_back({base + 3, base + 7, 8});
    e.push_back({base + 7, base + 8, 1});
    e.push_back({base + 7, base + 9, 1});
}

// Lone span over a tall wall: independent filler.
void motif_filler(int base, std::vector<double>& w, std::vector<RawEdge>& e) {
    w.push_back(0);
    w.push_back(4);
    w.push_back(0);
    e.push_back({base + 1, base + 3, 2});
}

bool criterion_complexity_smoke() {
    std::string failure;
    std::string timings;

    {  // independent-only chart, 10^4 bars and 2*10^4 links, under 2 s
        std::vector<double> w;
        std::vector<RawEdge> e;
        hub_wall(0, 10000, 10, w, e);
        Loaded l = load(validate_instance(w, e));
        if (l.graph.n() != 10000 || l.graph.m() != 20000 || dependent_count(l.table) != 0) {
            failure = "independent-only construction went wrong";
        } else {
            const auto start = std::chrono::steady_clock::now();
            solve_independent(l.graph, l.seqs, l.table);
            const double secs = seconds_since(start);
            timings += "per-bar merges " + show_seconds(secs);
            if (secs >= kIndependentLimit) failure = "per-bar merges took too long";
        }
    }

    if (failure.empty()) {  // forest chart, 5*10^3 bars and 8*10^3 links, under 5 s
        std::vector<double> w;
        std::vector<RawEdge> e;
        for (int i = 0; i < 2000; ++i) w.push_back(0);
        for (int i = 1; i < 2000; ++i) e.push_back({i, i + 1, 1});
        hub_wall(2000, 3000, 8000 - static_cast<int>(e.size()) - 5990, w, e);
        Loaded l = load(validate_instance(w, e));
        if (l.graph.n() != 5000 || l.graph.m() != 8000 ||
            !dl_forest(l.graph, l.table).acyclic || dependent_count(l.table) < 1900) {
            failure = "forest construction went wrong";
        } else {
            const auto start = std::chrono::steady_clock::now();
            solve_forest(l.graph, l.seqs, l.table);
            const double secs = seconds_since(start);
            timings += ", forest DP " + show_seconds(secs);
            if (secs >= kForestLimit) failure = "forest DP took too long";
        }
    }

    if (failure.empty()) {  // mixed dependent chart, 10^3 bars, under 10 s
        std::vector<double> w;
        std::vector<RawEdge> e;
        for (int p = 0; p < 55; ++p) {
            motif_chain(static_cast<int>(w.size()), w, e);
            motif_nest(static_cast<int>(w.size()), w, e);
            motif_filler(static_cast<int>(w.size()), w, e);
        }
        motif_chain(static_cast<int>(w.size()), w, e);
        while (w.size() < 1000) w.push_back(0);
        Loaded l = load(validate_instance(w, e));
        const bool cyclic_somewhere = !extend_forest(l.graph, l.table).acyclic;
        if (l.graph.n() != 1000 || l.table.max_dl_degree != 2 || l.table.max_degree > 8 ||
            !cyclic_somewhere || dependent_count(l.table) < 300) {
            failure = "mixed dependent construction went wrong";
        } else {
            const auto start = std::chrono::steady_clock::now();
            solve_fpt(l.graph, l.seqs, l.table);
            const double secs = seconds_since(start);
            timings += ", general solver " + show_seconds(secs);
            if (secs >= kGeneralLimit) failure = "general solver took too long";
        }
    }

    return verdict(7, "complexity smoke", failure.empty(),
                   failure.empty() ? timings : failure);
}

// ---------------------------------------------------------------------------
// 8. Rendering audit: well-formed SVG, orthogonal routes with 0/2/4 bends,
//    and vertical ink matching the reported cost.

bool criterion_rendering_audit() {
    GeneratorParams params;
    params.edges = 7;
    const Shape shapes[] = {Shape::arbitrary, Shape::valley, Shape::unimodal,
                            Shape::forest_dl};
    const SvgStyle style;
    std::string failure;
    for (int i = 0; i < kRenderInstances && failure.empty(); ++i) {
        params.seed = 100 + i;
        params.shape = shapes[i % 4];
        Loaded l = load(generate_instance(params));
        RunOutcome outcome = run_solve(l.graph, l.seqs, l.table, RunConfig{});
        svg_audit::Audit audit = svg_audit::audit_svg(
            render_svg(l.graph, l.seqs, l.table, outcome.result.layout, style));
        if (!audit.well_formed) {
            failure = "seed " + std::to_string(params.seed) + ": " + audit.problem;
            break;
        }
        if (static_cast<int>(audit.links.size()) != l.graph.m() ||
            audit.bar_rects != l.graph.n()) {
            failure = "seed " + std::to_string(params.seed) + ": element counts off";
            break;
        }
        double ink = 0.0;
        for (const svg_audit::Polyline& p : audit.links) {
            const int b = svg_audit::bends(p);
            if (b != 0 && b != 2 && b != 4) {
                failure = "seed " + std::to_string(params.seed) + ": a route has " +
                          std::to_string(b) + " bends";
                break;
            }
            ink += svg_audit::vertical_extent(p);
        }
        if (failure.empty() && std::abs(ink / style.scale - outcome.result.cost) > kRenderTol) {
            failure = "seed " + std::to_string(params.seed) + ": vertical ink " +
                      format_number(ink / style.scale) + " vs cost " +
                      format_number(outcome.result.cost);
        }
    }
    return verdict(8, "rendering audit", failure.empty(),
                   failure.empty() ? std::to_string(kRenderInstances) + " charts audited"
                                   : failure);
}

// ---------------------------------------------------------------------------
// 9. Reports are byte-identical across independent runs of the same input.

bool criterion_determinism() {
    GeneratorParams params;
    params.edges = 8;
    const Shape shapes[] = {Shape::arbitrary, Shape::valley, Shape::unimodal,
                            Shape::forest_dl};
    std::string failure;
    for (int i = 0; i < kDeterminismInstances && failure.empty(); ++i) {
        params.seed = 4000 + i;
        params.n = 6 + i % 3;
        params.shape = shapes[i % 4];
        Instance generated;
        generated.graph = generate_instance(params);
        for (int b = 0; b < generated.graph.n(); ++b) {
            generated.ids.push_back("v" + std::to_string(b + 1));
        }
        const std::string text = emit_instance(generated);

        RunConfig config;
        if (i % 5 == 4) config.algorithm = Algorithm::fpt;  // exercise the general path too
        const auto report = [&] {
            Instance inst = parse_instance(text);
            Sequences seqs = build_sequences(inst.graph);
            LinkTable table =
                classify_links(inst.graph, seqs, HeightIndex::from_sequences(seqs));
            RunOutcome outcome = run_solve(inst.graph, seqs, table, config);
            return layout_report_json(inst, seqs, table, outcome);
        };
        if (report() != report()) {
            failure = "seed " + std::to_string(params.seed) + ": reports differ between runs";
        }
    }
    return verdict(9, "report determinism", failure.empty(),
                   failure.empty()
                       ? std::to_string(kDeterminismInstances) + " instances, two runs each"
                       : failure);
}

}  // namespace

int main() {
    int failures = 0;
    failures += criterion_oracle_equivalence() ? 0 : 1;
    failures += criterion_cross_solver_agreement() ? 0 : 1;
    failures += criterion_independent_decomposition() ? 0 : 1;
    failures += criterion_no_dependent_crossing() ? 0 : 1;
    failures += criterion_shape_observations() ? 0 : 1;
    failures += criterion_decomposition_validity() ? 0 : 1;
    failures += criterion_complexity_smoke() ? 0 : 1;
    failures += criterion_rendering_audit() ? 0 : 1;
    failures += criterion_determinism() ? 0 : 1;
    if (failures == 0) {
        std::printf("all acceptance criteria hold\n");
    } else {
        std::printf("%d criterion(s) failed\n", failures);
    }
    return failures;
}
