#pragma once

#include "linkedbars/merge_dp.hpp"

// Solver for charts whose dependent links form a forest. Each tree is rooted
// at its lowest bar and solved bottom-up: a bar's table P maps the position
// of its parent-link block to the optimal cost of the whole subtree hanging
// off that block. The link cost of a dependent edge is paid at the parent
// end, where both endpoint positions are known.

namespace linkedbars {

struct DependencyForest {
    std::vector<int> parent_bar;               // -1 for roots and bars without dependent links
    std::vector<int> parent_edge;              // edge to the parent bar, -1 likewise
    std::vector<std::vector<int>> child_edges; // dependent edges to children, per bar
    std::vector<int> roots;                    // lowest bar of every dependent-link tree
    std::vector<int> order;                    // tree bars, parents before children
};

struct ForestCheck {
    bool acyclic = false;
    std::vector<int> cycle;  // edge indices of a dependent-link cycle when not
    DependencyForest forest; // populated when acyclic
};

// Union-find over the dependent links; on failure the returned cycle is the
// tree path between the offending edge's endpoints plus that edge.
ForestCheck dl_forest(const WeightedGraph& graph, const LinkTable& table);

// Requires dl_forest to be acyclic, otherwise throws PreconditionError.
// Runs in O(n + sum over bars of (|L|+1)(|R|+1) + sum over tree edges of
// d * d') time.
SolveResult solve_forest(const WeightedGraph& graph, const Sequences& seqs,
                         const LinkTable& table);

}  // namespace linkedbars
