#pragma once

#include <functional>

#include "linkedbars/cost.hpp"
#include "linkedbars/model.hpp"

namespace linkedbars {

class PreconditionError : public std::runtime_error {
public:
    explicit PreconditionError(const std::string& what) : std::runtime_error(what) {}
};

// Cost of placing the side block with 0-based rank idx so that k opposite-side
// blocks lie below it. Solvers inject plain independent-block costs here, or
// child-subtree costs when a block carries a dependent link.
using BlockCost = std::function<double(int idx, int k)>;

struct MergeResult {
    double cost = 0.0;
    std::vector<Side> order;  // merged stacking bottom to top
    long long cells = 0;      // DP cells touched, (nl+1) * (nr+1)
};

// Optimal merge of nl left and nr right blocks with independent per-block
// costs: D(p,q) = min(D(p-1,q) + left(p-1,q), D(p,q-1) + right(q-1,p)).
// Ties put left blocks lower in the stacking.
MergeResult solve_bar(int nl, int nr, const BlockCost& left_cost, const BlockCost& right_cost);

struct IndependentResult {
    double cost = 0.0;
    ChartLayout layout;
    long long cells = 0;
};

// Optimizes every bar separately; requires a chart with independent links
// only. Total work is proportional to the sum over bars of
// (|L|+1) * (|R|+1) cells.
IndependentResult solve_independent(const WeightedGraph& graph, const Sequences& seqs,
                                    const LinkTable& table);

}  // namespace linkedbars
