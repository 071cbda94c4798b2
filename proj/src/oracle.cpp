#include "linkedbars/oracle.hpp"

#include <algorithm>
#include <cassert>
#include <cmath>
#include <limits>
#include <numeric>
#include <random>

namespace linkedbars {

double layout_count(const Sequences& seqs) {
    double count = 1.0;
    for (const BarSequences& bar : seqs.bars) {
        const int nl = static_cast<int>(bar.left.size());
        const int nr = static_cast<int>(bar.right.size());
        // C(nl + nr, nl) accumulated multiplicatively to stay exact.
        for (int i = 1; i <= nl; ++i) {
            count = count * (nr + i) / i;
            if (count > 1e18) return count;  // saturate, any budget is long gone
        }
    }
    return count;
}

std::vector<std::vector<Side>> all_merges(int nl, int nr) {
    std::vector<int> pattern(nl, 0);
    pattern.resize(nl + nr, 1);
    std::vector<std::vector<Side>> out;
    do {
        std::vector<Side> sides(pattern.size());
        for (size_t i = 0; i < pattern.size(); ++i) {
            sides[i] = pattern[i] == 0 ? Side::L : Side::R;
        }
        out.push_back(std::move(sides));
    } while (std::next_permutation(pattern.begin(), pattern.end()));
    return out;
}

LayoutEnumerator::LayoutEnumerator(const Sequences& seqs) : seqs_(&seqs) {
    patterns_.resize(seqs.bars.size());
    layout_.stacks.resize(seqs.bars.size());
    for (size_t b = 0; b < seqs.bars.size(); ++b) {
        const BarSequences& bar = seqs.bars[b];
        patterns_[b].assign(bar.left.size(), Side::L);
        patterns_[b].resize(bar.degree(), Side::R);
        rebuild_stack(static_cast<int>(b));
    }
}

void LayoutEnumerator::rebuild_stack(int bar) {
    std::vector<StackEntry>& stack = layout_.stacks[bar];
    stack.clear();
    int next_l = 0;
    int next_r = 0;
    for (Side s : patterns_[bar]) {
        stack.push_back({s, s == Side::L ? next_l++ : next_r++});
    }
}

bool LayoutEnumerator::advance() {
    // Least significant digit last: advance the rightmost bar whose pattern
    // still has a successor, reset everything after it.
    for (int b = static_cast<int>(patterns_.size()) - 1; b >= 0; --b) {
        std::vector<Side>& pattern = patterns_[b];
        if (std::next_permutation(pattern.begin(), pattern.end(),
                                  [](Side a, Side c) { return a == Side::L && c == Side::R; })) {
            rebuild_stack(b);
            return true;
        }
        // wrapped back to the lexicographically first pattern
        rebuild_stack(b);
    }
    return false;
}

SolveResult brute_force(const WeightedGraph& graph, const Sequences& seqs, const LinkTable& table,
                        double max_layouts) {
    const double count = layout_count(seqs);
    if (count > max_layouts) {
        throw BudgetExceeded("brute force refused: " + std::to_string(count) +
                                 " layouts exceed the budget of " + std::to_string(max_layouts),
                             count);
    }

    LayoutEnumerator en(seqs);
    SolveResult best;
    best.cost = std::numeric_limits<double>::infinity();
    do {
        const LayoutCosts costs = evaluate_layout(graph, seqs, table, en.current());
        if (costs.total < best.cost) {
            best.cost = costs.total;
            best.layout = en.current();
        }
    } while (en.advance());
    assert(std::isfinite(best.cost));
    return best;
}

namespace {

// mt19937_64 output mapped onto a bounded range. The standard distributions
// are not pinned across implementations; this keeps generated instances
// byte-for-byte reproducible from the seed alone.
class Rng {
public:
    explicit Rng(std::uint64_t seed) : engine_(seed) {}

    std::uint64_t below(std::uint64_t n) {
        assert(n > 0);
        return engine_() % n;
    }

    int between(int lo, int hi) {  // inclusive
        return lo + static_cast<int>(below(static_cast<std::uint64_t>(hi - lo + 1)));
    }

private:
    std::mt19937_64 engine_;
};

std::vector<RawEdge> sample_edges(Rng& rng, const GeneratorParams& params) {
    const int n = params.n;
    std::vector<std::pair<int, int>> pairs;
    for (int u = 1; u <= n; ++u) {
        for (int v = u + 1; v <= n; ++v) pairs.push_back({u, v});
    }
    if (params.edges > static_cast<int>(pairs.size())) {
        throw ValidationError("generator: requested " + std::to_string(params.edges) +
                              " edges but only " + std::to_string(pairs.size()) +
                              " distinct pairs exist");
    }
    for (size_t i = pairs.size(); i > 1; --i) {
        std::swap(pairs[i - 1], pairs[rng.below(i)]);
    }

    std::vector<int> degree(n + 1, 0);
    std::vector<RawEdge> edges;
    for (const auto& [u, v] : pairs) {
        if (static_cast<int>(edges.size()) == params.edges) break;
        if (params.max_degree > 0 &&
            (degree[u] >= params.max_degree || degree[v] >= params.max_degree)) {
            continue;
        }
        ++degree[u];
        ++degree[v];
        edges.push_back({u, v, static_cast<double>(rng.between(params.weight_min, params.weight_max))});
    }
    if (static_cast<int>(edges.size()) < params.edges) {
        throw ValidationError("generator: degree cap " + std::to_string(params.max_degree) +
                              " leaves room for only " + std::to_string(edges.size()) + " of " +
                              std::to_string(params.edges) + " edges");
    }
    return edges;
}

std::vector<double> incident_sums(int n, const std::vector<RawEdge>& edges) {
    std::vector<double> sums(n, 0.0);
    for (const RawEdge& e : edges) {
        sums[e.u - 1] += e.weight;
        sums[e.v - 1] += e.weight;
    }
    return sums;
}

// Bar weights realizing a height profile that rises to a single peak and
// falls afterwards (weakly). Links landing on a bar force a minimum height;
// the profile is the pointwise-smallest unimodal envelope of those minimums.
std::vector<double> unimodal_weights(int n, const std::vector<RawEdge>& edges) {
    const std::vector<double> sums = incident_sums(n, edges);
    const int peak =
        static_cast<int>(std::max_element(sums.begin(), sums.end()) - sums.begin());
    std::vector<double> target(n, 0.0);
    target[peak] = sums[peak];
    for (int j = peak - 1; j >= 0; --j) target[j] = sums[j];
    for (int j = 1; j < peak; ++j) target[j] = std::max(target[j], target[j - 1]);
    for (int j = peak + 1; j < n; ++j) target[j] = sums[j];
    for (int j = n - 2; j > peak; --j) target[j] = std::max(target[j], target[j + 1]);
    std::vector<double> weights(n);
    for (int j = 0; j < n; ++j) weights[j] = target[j] - sums[j];
    return weights;
}

// Mirror image: heights fall to a single valley and rise afterwards.
std::vector<double> valley_weights(int n, const std::vector<RawEdge>& edges) {
    const std::vector<double> sums = incident_sums(n, edges);
    const int valley =
        static_cast<int>(std::min_element(sums.begin(), sums.end()) - sums.begin());
    std::vector<double> target(n, 0.0);
    target[valley] = sums[valley];
    for (int j = valley - 1; j >= 0; --j) target[j] = std::max(sums[j], target[j + 1]);
    for (int j = valley + 1; j < n; ++j) target[j] = std::max(sums[j], target[j - 1]);
    std::vector<double> weights(n);
    for (int j = 0; j < n; ++j) weights[j] = target[j] - sums[j];
    return weights;
}

bool dependent_links_form_forest(const WeightedGraph& graph) {
    const Sequences seqs = build_sequences(graph);
    const HeightIndex heights = HeightIndex::from_sequences(seqs);
    const LinkTable table = classify_links(graph, seqs, heights);
    std::vector<int> root(graph.n());
    std::iota(root.begin(), root.end(), 0);
    auto find = [&](int x) {
        while (root[x] != x) x = root[x] = root[root[x]];
        return x;
    };
    for (int e = 0; e < graph.m(); ++e) {
        if (!table.links[e].dependent()) continue;
        const int a = find(graph.edges[e].u);
        const int b = find(graph.edges[e].v);
        if (a == b) return false;
        root[a] = b;
    }
    return true;
}

}  // namespace

WeightedGraph generate_instance(const GeneratorParams& params) {
    if (params.n < 1) throw ValidationError("generator: n must be >= 1");
    if (params.edges < 0) throw ValidationError("generator: edge count must be >= 0");
    if (params.weight_min < 1 || params.weight_max < params.weight_min) {
        throw ValidationError("generator: weight range must satisfy 1 <= min <= max");
    }

    if (params.shape == Shape::forest_dl) {
        GeneratorParams attempt = params;
        attempt.shape = Shape::arbitrary;
        constexpr int kMaxAttempts = 1000;
        for (int i = 0; i < kMaxAttempts; ++i) {
            attempt.seed = params.seed + 0x9e3779b97f4a7c15ull * static_cast<std::uint64_t>(i);
            WeightedGraph g = generate_instance(attempt);
            if (dependent_links_form_forest(g)) return g;
        }
        throw ValidationError("generator: no dependent-link forest found in " +
                              std::to_string(kMaxAttempts) + " attempts");
    }

    Rng rng(params.seed);
    const std::vector<RawEdge> edges = sample_edges(rng, params);

    std::vector<double> weights(params.n);
    switch (params.shape) {
        case Shape::arbitrary:
            for (double& w : weights) {
                w = static_cast<double>(rng.between(params.weight_min, params.weight_max));
            }
            break;
        case Shape::unimodal:
            weights = unimodal_weights(params.n, edges);
            break;
        case Shape::valley:
            weights = valley_weights(params.n, edges);
            break;
        case Shape::forest_dl:
            break;  // handled above
    }
    return validate_instance(weights, edges);
}

}  // namespace linkedbars
