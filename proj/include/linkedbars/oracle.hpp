#pragma once

#include <cstdint>
#include <vector>

#include "linkedbars/cost.hpp"
#include "linkedbars/model.hpp"

// Exhaustive reference solver and instance generators. The oracle only uses
// the cost engine (enumerate + evaluate), never the optimizing solvers, so it
// can certify them independently.

namespace linkedbars {

// Number of layouts: product over bars of C(|L|+|R|, |L|). Exact until it
// exceeds 2^53, far beyond any enumerable budget.
double layout_count(const Sequences& seqs);

// All merge patterns of nl left and nr right blocks, bottom to top, in
// lexicographic order with L < R.
std::vector<std::vector<Side>> all_merges(int nl, int nr);

// Iterates every layout of an instance. Per-bar patterns advance like an
// odometer with bar 0 most significant, each digit running through its merge
// patterns lexicographically, so layouts appear in a stable total order.
class LayoutEnumerator {
public:
    explicit LayoutEnumerator(const Sequences& seqs);

    const ChartLayout& current() const { return layout_; }
    bool advance();  // false once all layouts have been visited

private:
    void rebuild_stack(int bar);

    const Sequences* seqs_;
    std::vector<std::vector<Side>> patterns_;  // current pattern per bar
    ChartLayout layout_;
};

// Minimum over all layouts; ties resolved towards the lexicographically
// smallest combination of merge patterns (the first optimum in enumeration
// order). Throws BudgetExceeded when the layout count is above max_layouts.
SolveResult brute_force(const WeightedGraph& graph, const Sequences& seqs, const LinkTable& table,
                        double max_layouts = 1e7);

enum class Shape {
    arbitrary,  // free height profile
    unimodal,   // heights rise then fall: no distant dependent links
    valley,     // heights fall then rise: distant dependent links form a forest
    forest_dl,  // rejection-sampled until all dependent links form a forest
};

struct GeneratorParams {
    int n = 6;
    int edges = 6;
    int weight_min = 1;  // integer weights keep all height comparisons exact
    int weight_max = 8;
    int max_degree = 0;  // 0 = unbounded
    Shape shape = Shape::arbitrary;
    std::uint64_t seed = 0;
};

// Deterministic: identical params produce identical instances. Edges are
// sampled first; for the shaped profiles the bar weights are then set to
// realize the target height profile on top of the incident link sums.
WeightedGraph generate_instance(const GeneratorParams& params);

}  // namespace linkedbars
