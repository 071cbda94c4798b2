#pragma once

#include <string>
#include <vector>

#include "linkedbars/model.hpp"

// Cost engine: block center geometry, the per-link cost lambda, and whole
// layouts (one merged stacking per bar) with evaluation, validation and
// orthogonal link routing.
//
// The position of a linked block inside its bar is always expressed as the
// number of opposite-side blocks stacked below it; the number of own-side
// blocks below is fixed by the side order, so the pair (side rank, position)
// pins the block's center exactly.

namespace linkedbars {

// Center height of the block with 0-based rank `idx` on side `side` of `bar`
// when `k` opposite-side blocks lie below it.
double block_center(const WeightedGraph& graph, const BarSequences& bar, Side side, int idx, int k);

// lambda(e, i, j): vertical length contributed by edge e when its block at
// the left endpoint sits at position i and the one at the right endpoint at
// position j. If both centers are strictly below the intermediate maximum H
// the link must climb over: |H - y| + |H - y'|; otherwise it runs from one
// center to the other: |y - y'|.
double link_cost(const WeightedGraph& graph, const Sequences& seqs, const LinkTable& table,
                 int edge, int i, int j);

// Cost of an independent block when placed at position k: distance from its
// center to the link's shared target height.
double independent_block_cost(const WeightedGraph& graph, const Sequences& seqs,
                              const LinkTable& table, int bar, Side side, int idx, int k);

struct StackEntry {
    Side side = Side::L;
    int idx = 0;  // 0-based rank within the side sequence

    bool operator==(const StackEntry&) const = default;
};

// One stacking per bar, bottom to top, covering every linked block exactly
// once. The unlinked block is implicit (always at the baseline).
struct ChartLayout {
    std::vector<std::vector<StackEntry>> stacks;
};

// positions[e] = (i, j): position of edge e's block at its left endpoint and
// at its right endpoint under a given layout.
struct LayoutPositions {
    std::vector<std::pair<int, int>> at;
};

LayoutPositions layout_positions(const WeightedGraph& graph, const Sequences& seqs,
                                 const ChartLayout& layout);

struct LayoutCosts {
    double total = 0.0;
    std::vector<double> per_link;
};

LayoutCosts evaluate_layout(const WeightedGraph& graph, const Sequences& seqs,
                            const LinkTable& table, const ChartLayout& layout);

struct LayoutViolation {
    int bar = 0;
    std::string message;
};

// Structural check: each bar's stack must contain exactly its incident linked
// blocks, and the L and R subsequences must appear in side order.
std::vector<LayoutViolation> validate_layout(const WeightedGraph& graph, const Sequences& seqs,
                                             const ChartLayout& layout);

struct SolveResult {
    double cost = 0.0;
    ChartLayout layout;
};

// Orthogonal polyline for one link, in chart units: bar b occupies
// x in [2b, 2b+1], so consecutive bars are separated by a unit gap. Vertical
// segments run inside gaps; their exact x offset within the gap is cosmetic
// and left to the renderer.
struct RoutePoint {
    double x = 0.0;
    double y = 0.0;
};

struct LinkRoute {
    int bends = 0;  // 0, 2, or 4
    std::vector<RoutePoint> points;
};

// Route for edge e when its blocks sit at positions (i, j). Both centers
// strictly below H: climb over (4 bends). Centers differ with at least one at
// or above H: one vertical jog (2 bends). Equal centers at or above H:
// straight (0 bends). The summed vertical extent always equals link_cost.
LinkRoute link_route(const WeightedGraph& graph, const Sequences& seqs, const LinkTable& table,
                     int edge, int i, int j);

}  // namespace linkedbars
