#pragma once

#include <optional>
#include <stdexcept>
#include <string>
#include <utility>
#include <vector>

// Core model of a linked bar chart: an ordered sequence of weighted bars
// (vertices) connected by weighted links (edges). Each bar is a stack of
// blocks: one unlinked block of height w(v) at the baseline plus one linked
// block of height w(e) per incident edge e. Blocks for leftward links (L) and
// rightward links (R) keep a fixed relative order inside each side; the free
// choice per bar is how the two sides are merged.

namespace linkedbars {

class ValidationError : public std::runtime_error {
public:
    explicit ValidationError(const std::string& what) : std::runtime_error(what) {}
};

// Thrown when a computation would outgrow its configured work ceiling; count
// carries the offending size (layouts to enumerate, DP entries to fill, ...).
class BudgetExceeded : public std::runtime_error {
public:
    BudgetExceeded(const std::string& what, double count)
        : std::runtime_error(what), count(count) {}
    double count = 0.0;
};

struct Edge {
    int u = 0;  // 0-based bar indices, u < v after validation
    int v = 0;
    double weight = 0.0;
};

struct WeightedGraph {
    std::vector<double> bar_weights;  // index = position in the bar order
    std::vector<Edge> edges;

    int n() const { return static_cast<int>(bar_weights.size()); }
    int m() const { return static_cast<int>(edges.size()); }
};

// Raw input edge with 1-based bar indices, as they appear in user input.
struct RawEdge {
    int u = 0;
    int v = 0;
    double weight = 0.0;
};

// Checks bar weights (finite, >= 0) and edges (indices in range, no
// self-loops, no duplicates, weight finite and > 0), normalizes u < v and
// converts to 0-based indices. Throws ValidationError naming the offender.
WeightedGraph validate_instance(const std::vector<double>& bar_weights,
                                const std::vector<RawEdge>& edges);

enum class Side { L, R };

inline Side opposite(Side s) { return s == Side::L ? Side::R : Side::L; }

// One side of a bar's linked blocks. Entries are edge indices into
// WeightedGraph::edges. Leftward blocks are ordered by decreasing other
// endpoint, rightward blocks by increasing other endpoint, so on both sides
// the block for the nearest bar comes first (lowest legal position).
struct BarSequences {
    std::vector<int> left;
    std::vector<int> right;
    std::vector<double> pref_left;   // pref_left[i] = total height of the first i left blocks
    std::vector<double> pref_right;
    double base = 0.0;          // unlinked block height = bar weight
    double total_height = 0.0;  // base + all linked block heights

    const std::vector<int>& side(Side s) const { return s == Side::L ? left : right; }
    const std::vector<double>& pref(Side s) const { return s == Side::L ? pref_left : pref_right; }
    int degree() const { return static_cast<int>(left.size() + right.size()); }
};

struct Sequences {
    std::vector<BarSequences> bars;
};

// O(n + m): one sweep over bars in order appends each edge to the R-list of
// its left endpoint in increasing-far-endpoint order and prepends it to the
// L-list of its right endpoint (implemented as append + reverse).
Sequences build_sequences(const WeightedGraph& graph);

// Sparse-table range maximum over total bar heights, O(1) per query.
class HeightIndex {
public:
    explicit HeightIndex(const std::vector<double>& heights);

    // Maximum total height of the bars strictly between i and j (0-based).
    // Adjacent bars have no intermediate bars; their maximum is 0.
    double max_between(int i, int j) const;

    static HeightIndex from_sequences(const Sequences& seqs);

private:
    std::vector<std::vector<double>> table_;  // table_[k][i] = max over [i, i + 2^k)
    int n_ = 0;
};

enum class LinkKind {
    independent,            // IL: a shared target height exists
    adjacent_dependent,     // ADL: dependent, endpoints are neighbouring bars
    distant_dependent,      // NADL: dependent with at least one intermediate bar
};

struct LinkRecord {
    LinkKind kind = LinkKind::independent;
    double target = 0.0;       // IL only: shared height t both endpoints pull towards
    double over_height = 0.0;  // H, max total height of the intermediate bars
    double lo_u = 0.0;         // lowest/highest reachable centers of the block at u ...
    double hi_u = 0.0;
    double lo_v = 0.0;         // ... and of the block at v
    double hi_v = 0.0;

    bool dependent() const { return kind != LinkKind::independent; }
};

struct LinkTable {
    std::vector<LinkRecord> links;  // aligned with WeightedGraph::edges
    std::vector<int> rank_at_u;     // rank of each edge's block within R of its left bar
    std::vector<int> rank_at_v;     // rank within L of its right bar
    std::vector<int> dl_degree;     // per bar: number of dependent blocks
    int max_degree = 0;             // Delta: max blocks per bar
    int max_dl_degree = 0;          // delta: max dependent blocks per bar
};

// Classifies every link, trying the independent cases in order:
//   1. some endpoint's whole interval lies at or below H  -> t = H
//   2. the intervals' interiors are disjoint              -> t = lowest center of the higher block
//   3. one interval is a single point (empty opposite side at that bar)
// Links failing all three are dependent; dependent links between neighbouring
// bars are adjacent (ADL), the rest are distant (NADL).
LinkTable classify_links(const WeightedGraph& graph, const Sequences& seqs,
                         const HeightIndex& heights);

// Dependent links never cross: their spans are pairwise disjoint, nested, or
// share an endpoint. Returns a crossing pair of edge indices if violated.
std::optional<std::pair<int, int>> find_crossing_dependent_pair(const WeightedGraph& graph,
                                                                const LinkTable& table);

}  // namespace linkedbars
