#pragma once

#include "linkedbars/forest.hpp"

// Solver for charts whose *distant* dependent links form a forest, while
// adjacent dependent links may close cycles. A spanning structure F is built
// from all distant links plus greedily added adjacent ones; the leftover
// adjacent links (residuals) connect bars inside one tree of F. Each subtree
// then has at most three links crossing its boundary: the parent link and one
// residual at each end of its bar interval. The per-bar tables track the
// positions of those boundary blocks as extra parameters, and every residual
// link's cost is paid at the single join where its second endpoint's position
// becomes known.

namespace linkedbars {

struct ExtendedForest {
    DependencyForest forest;   // over the links kept in F
    std::vector<char> in_f;    // per edge: dependent link kept in F
    std::vector<int> residual; // dependent links left out; always adjacent ones
};

struct NadlForestCheck {
    bool acyclic = false;      // the distant dependent links alone are a forest
    std::vector<int> cycle;    // witness cycle of distant links otherwise
    ExtendedForest ext;
};

// F = all distant dependent links, plus adjacent dependent links scanned in
// ascending left-endpoint order, each kept unless it would close a cycle.
// Any maximal choice works; the scan order pins one deterministically.
NadlForestCheck extend_forest(const WeightedGraph& graph, const LinkTable& table);

// Throws PreconditionError when the distant dependent links contain a cycle.
SolveResult solve_nadl_forest(const WeightedGraph& graph, const Sequences& seqs,
                              const LinkTable& table);

}  // namespace linkedbars
