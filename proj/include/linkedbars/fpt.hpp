#pragma once

#include "linkedbars/merge_dp.hpp"

// General-case solver. Dependent-link spans never cross, so the dependent
// subgraph decomposes into a laminar family of intervals; from it we build a
// nice tree decomposition of width <= 2 whose bags contain only bars with
// dependent blocks. A dynamic program over the decomposition assigns every
// such bar a state -- the stacking indices of its dependent blocks -- and
// pays, when a bar is forgotten, its independent blocks (optimally merged
// around the pinned dependent blocks) plus the dependent links into the
// remaining bag. Works on every instance, including dependent-link cycles
// that the structural solvers refuse.

namespace linkedbars {

enum class NodeType { leaf, introduce, forget, join };

struct DecompositionNode {
    NodeType type = NodeType::leaf;
    int bar = -1;              // the bar introduced or forgotten, -1 otherwise
    std::vector<int> bag;      // ascending bar indices, at most 3
    int left = -1;             // child node indices; right only for joins
    int right = -1;
};

// Children always precede their parent, and a node's subtree occupies the
// contiguous index range ending at the node.
struct TreeDecomposition {
    std::vector<DecompositionNode> nodes;
    int root = -1;
};

// Builds the decomposition from the dependent-link spans: a span's bag chain
// walks its nested child spans left to right, joining each child's subtree in
// and forgetting the child's left endpoint, so every bag keeps at most three
// bars. Throws std::logic_error if dependent spans cross, which would signal
// a classification bug upstream.
TreeDecomposition build_tree_decomposition(const WeightedGraph& graph, const LinkTable& table);

// Returns human-readable problems, empty when the decomposition is valid:
// every dependent edge shares a bag, per-bar bags form a connected subtree,
// bags hold at most 3 bars and only bars with dependent blocks, node typing
// is consistent, and the root bag is empty.
std::vector<std::string> validate_tree_decomposition(const TreeDecomposition& dec,
                                                     const WeightedGraph& graph,
                                                     const LinkTable& table);

// One dependent block of a bar: the edge it belongs to and its fixed place
// in the side sequence.
struct DependentBlock {
    int edge = -1;
    Side side = Side::L;
    int rank = 0;

    bool operator==(const DependentBlock&) const = default;
};

// A bar's dependent blocks in canonical order: left blocks by rank, then
// right blocks by rank.
std::vector<DependentBlock> dependent_blocks(const Sequences& seqs, const LinkTable& table,
                                             int bar);

// Placement of a bar's dependent blocks. index[i] is the total stacking index
// of the i-th canonical dependent block: the number of blocks of either side
// stacked below it. The number of own-side blocks below a block equals its
// rank, so index[i] - rank pins the opposite-side count that link costs need.
struct BarState {
    std::vector<int> index;

    bool operator==(const BarState&) const = default;
};

// All placements that extend to a full merge of the bar's two sides: indices
// are distinct and compatible with the fixed order within each side. Bars
// without dependent blocks yield exactly one empty state. Deterministic
// order (lexicographic in the opposite-side counts).
std::vector<BarState> enumerate_states(const Sequences& seqs, const LinkTable& table, int bar);

// Precomputed merge costs of dependent-free block ranges of one bar. The
// dependent blocks split each side into runs of independent blocks; for every
// run start on one side and every base offset on the other, a small merge
// table gives the optimal cost of stacking any prefix of the run against any
// opposite range.
class SegmentCosts {
public:
    SegmentCosts(const WeightedGraph& graph, const Sequences& seqs, const LinkTable& table,
                 int bar);

    // Minimum cost of merging left blocks [i, p) with right blocks [j, q) on
    // top of a fixed lower part of i left and j right blocks. The ranges must
    // be free of dependent blocks, and i or j must sit just above a dependent
    // block or at the bottom of its side.
    double range(int i, int j, int p, int q) const;

private:
    struct Grid {
        int amax = 0;
        int bmax = 0;
        std::vector<double> v;

        double at(int a, int b) const { return v[static_cast<size_t>(a) * (bmax + 1) + b]; }
    };

    // family[s]: per run start on side s, one grid per base offset on the
    // opposite side.
    std::vector<std::vector<Grid>> family_[2];
    std::vector<int> start_of_[2];  // side rank -> index into family_, -1 if not a run start
};

// Minimum total cost of the bar's independent blocks over all merges that
// place its dependent blocks as the state prescribes. Assembled from
// SegmentCosts, one lookup per gap between consecutive dependent blocks.
double placed_independent_cost(const WeightedGraph& graph, const Sequences& seqs,
                               const LinkTable& table, int bar, const BarState& state);

// The merge realizing placed_independent_cost: dependent blocks are fixed at
// their prescribed indices, independent blocks are ordered optimally. Cost
// covers the independent blocks only.
MergeResult solve_bar_placed(const WeightedGraph& graph, const Sequences& seqs,
                             const LinkTable& table, int bar, const BarState& state);

struct FptConfig {
    // Ceiling on the summed cell count of all DP tables.
    long long state_budget = 50'000'000;
    // Keep per-forget argmin tables for reconstruction. When off, memory
    // stays proportional to the largest tables alive at once and the chosen
    // states are recovered by recomputing subtree tables on demand.
    bool keep_tables = true;
};

// Exact solver for arbitrary dependent-link structure. Runs the decomposition
// DP, adds the bars without dependent blocks via plain merges, and rebuilds
// the full layout from the chosen states. Throws BudgetExceeded when the
// tables would outgrow the configured budget.
SolveResult solve_fpt(const WeightedGraph& graph, const Sequences& seqs, const LinkTable& table,
                      const FptConfig& config);
SolveResult solve_fpt(const WeightedGraph& graph, const Sequences& seqs, const LinkTable& table);

}  // namespace linkedbars
