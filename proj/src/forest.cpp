#include "linkedbars/forest.hpp"

#include <algorithm>
#include <cassert>
#include <deque>
#include <limits>
#include <numeric>

namespace linkedbars {

namespace {

constexpr double kInf = std::numeric_limits<double>::infinity();

// Tree path between the endpoints of the edge that closed a cycle, found by
// BFS over the dependent links accepted so far.
std::vector<int> witness_cycle(const std::vector<std::vector<std::pair<int, int>>>& adj,
                               int from, int to, int closing_edge) {
    std::vector<int> via_edge(adj.size(), -1);
    std::vector<int> via_bar(adj.size(), -1);
    std::deque<int> queue{from};
    via_bar[from] = from;
    while (!queue.empty()) {
        const int b = queue.front();
        queue.pop_front();
        if (b == to) break;
        for (const auto& [nb, e] : adj[b]) {
            if (via_bar[nb] >= 0) continue;
            via_bar[nb] = b;
            via_edge[nb] = e;
            queue.push_back(nb);
        }
    }
    assert(via_bar[to] >= 0);
    std::vector<int> cycle{closing_edge};
    for (int b = to; b != from; b = via_bar[b]) cycle.push_back(via_edge[b]);
    std::reverse(cycle.begin(), cycle.end());
    return cycle;
}

}  // namespace

ForestCheck dl_forest(const WeightedGraph& graph, const LinkTable& table) {
    const int n = graph.n();
    ForestCheck check;

    std::vector<int> root(n);
    std::iota(root.begin(), root.end(), 0);
    auto find = [&](int x) {
        while (root[x] != x) x = root[x] = root[root[x]];
        return x;
    };

    std::vector<std::vector<std::pair<int, int>>> adj(n);  // (bar, edge) over accepted links
    for (int e = 0; e < graph.m(); ++e) {
        if (!table.links[e].dependent()) continue;
        const Edge& ed = graph.edges[e];
        const int a = find(ed.u);
        const int b = find(ed.v);
        if (a == b) {
            check.cycle = witness_cycle(adj, ed.u, ed.v, e);
            return check;
        }
        root[a] = b;
        adj[ed.u].push_back({ed.v, e});
        adj[ed.v].push_back({ed.u, e});
    }

    check.acyclic = true;
    DependencyForest& forest = check.forest;
    forest.parent_bar.assign(n, -1);
    forest.parent_edge.assign(n, -1);
    forest.child_edges.resize(n);

    std::vector<char> visited(n, 0);
    for (int b = 0; b < n; ++b) {
        if (visited[b] || adj[b].empty()) continue;
        // b is the lowest unvisited bar of its component, hence the root.
        forest.roots.push_back(b);
        std::deque<int> queue{b};
        visited[b] = 1;
        while (!queue.empty()) {
            const int cur = queue.front();
            queue.pop_front();
            forest.order.push_back(cur);
            for (const auto& [nb, e] : adj[cur]) {
                if (visited[nb]) continue;
                visited[nb] = 1;
                forest.parent_bar[nb] = cur;
                forest.parent_edge[nb] = e;
                forest.child_edges[cur].push_back(e);
                queue.push_back(nb);
            }
        }
    }
    return check;
}

namespace {

// Per-bar solve state. The parent-side blocks below the parent block and all
// opposite blocks form the lower table; the parent-side blocks above it and
// the opposite blocks again form the upper table, indexed from the top so
// that each step adds the lowest block of the remaining part.
struct BarTables {
    bool is_root = false;
    Side ps = Side::L;  // side holding the parent block
    int parent_rank = 0;
    int nps = 0;  // block counts: parent side / opposite side
    int no = 0;
    int np = 0;  // parent-side blocks below the parent block
    int na = 0;  // ... and above it

    std::vector<std::vector<double>> lower;
    std::vector<std::vector<unsigned char>> lower_from;  // 1 = opposite-side branch
    std::vector<std::vector<double>> upper;
    std::vector<std::vector<unsigned char>> upper_from;
    std::vector<double> p;  // optimal subtree cost per parent-block position

    std::vector<std::vector<double>> child_cost;  // per child edge slot, per position
    std::vector<std::vector<int>> child_arg;
};

struct ForestSolver {
    const WeightedGraph& graph;
    const Sequences& seqs;
    const LinkTable& table;
    const DependencyForest& forest;
    std::vector<BarTables> bars;
    ChartLayout layout;

    int child_slot(int b, int e) const {
        const auto& ces = forest.child_edges[b];
        const auto it = std::find(ces.begin(), ces.end(), e);
        assert(it != ces.end());
        return static_cast<int>(it - ces.begin());
    }

    double block_cost(int b, Side side, int idx, int k) const {
        const int e = seqs.bars[b].side(side)[idx];
        if (table.links[e].dependent() && e != forest.parent_edge[b]) {
            return bars[b].child_cost[child_slot(b, e)][k];
        }
        return independent_block_cost(graph, seqs, table, b, side, idx, k);
    }

    // Link cost of a child edge with the child-bar block at position j and
    // this bar's block at position i.
    double child_link_cost(int b, int e, int i, int j) const {
        return graph.edges[e].u == b ? link_cost(graph, seqs, table, e, i, j)
                                     : link_cost(graph, seqs, table, e, j, i);
    }

    void solve_tree_bar(int b) {
        BarTables& t = bars[b];
        const BarSequences& bar = seqs.bars[b];
        const int pe = forest.parent_edge[b];
        t.is_root = pe < 0;
        if (t.is_root) {
            t.ps = Side::L;
            t.parent_rank = static_cast<int>(bar.left.size());  // virtual block above all
        } else {
            t.ps = forest.parent_bar[b] < b ? Side::L : Side::R;
            t.parent_rank = t.ps == Side::L ? table.rank_at_v[pe] : table.rank_at_u[pe];
        }
        t.nps = static_cast<int>(bar.side(t.ps).size());
        t.no = static_cast<int>(bar.side(opposite(t.ps)).size());
        t.np = t.parent_rank;
        t.na = t.is_root ? 0 : t.nps - 1 - t.parent_rank;

        // Subtree costs of the children, folded into per-position block costs.
        const auto& ces = forest.child_edges[b];
        t.child_cost.resize(ces.size());
        t.child_arg.resize(ces.size());
        for (size_t s = 0; s < ces.size(); ++s) {
            const int e = ces[s];
            const Edge& ed = graph.edges[e];
            const int child = ed.u == b ? ed.v : ed.u;
            const Side cside = child < b ? Side::L : Side::R;
            const int positions = static_cast<int>(bar.side(opposite(cside)).size());
            const std::vector<double>& pc = bars[child].p;
            t.child_cost[s].assign(positions + 1, kInf);
            t.child_arg[s].assign(positions + 1, -1);
            for (int i = 0; i <= positions; ++i) {
                for (int j = 0; j < static_cast<int>(pc.size()); ++j) {
                    const double cand = child_link_cost(b, e, i, j) + pc[j];
                    if (cand < t.child_cost[s][i]) {
                        t.child_cost[s][i] = cand;
                        t.child_arg[s][i] = j;
                    }
                }
            }
        }

#ifndef NDEBUG
        // A child block never sits above the parent block on the parent's
        // side: its span would have to cross one on the path to the root.
        for (int e : ces) {
            const Edge& ed = graph.edges[e];
            const int child = ed.u == b ? ed.v : ed.u;
            if ((child < b) == (t.ps == Side::L)) {
                const int rank = t.ps == Side::L ? table.rank_at_v[e] : table.rank_at_u[e];
                assert(t.is_root || rank < t.parent_rank);
            }
        }
#endif

        const Side os = opposite(t.ps);
        t.lower.assign(t.np + 1, std::vector<double>(t.no + 1, 0.0));
        t.lower_from.assign(t.np + 1, std::vector<unsigned char>(t.no + 1, 0));
        for (int x = 0; x <= t.np; ++x) {
            for (int y = 0; y <= t.no; ++y) {
                if (x == 0 && y == 0) continue;
                double best = kInf;
                unsigned char from = 0;
                if (x > 0) best = t.lower[x - 1][y] + block_cost(b, t.ps, x - 1, y);
                if (y > 0) {
                    const double cand = t.lower[x][y - 1] + block_cost(b, os, y - 1, x);
                    if (cand <= best) {
                        best = cand;
                        from = 1;
                    }
                }
                t.lower[x][y] = best;
                t.lower_from[x][y] = from;
            }
        }

        t.upper.assign(t.na + 1, std::vector<double>(t.no + 1, 0.0));
        t.upper_from.assign(t.na + 1, std::vector<unsigned char>(t.no + 1, 0));
        for (int a = 0; a <= t.na; ++a) {
            for (int c = 0; c <= t.no; ++c) {
                if (a == 0 && c == 0) continue;
                double best = kInf;
                unsigned char from = 0;
                if (a > 0) best = t.upper[a - 1][c] + block_cost(b, t.ps, t.nps - a, t.no - c);
                if (c > 0) {
                    const double cand =
                        t.upper[a][c - 1] + block_cost(b, os, t.no - c, t.nps - a);
                    if (cand <= best) {
                        best = cand;
                        from = 1;
                    }
                }
                t.upper[a][c] = best;
                t.upper_from[a][c] = from;
            }
        }

        if (!t.is_root) {
            t.p.resize(t.no + 1);
            for (int k = 0; k <= t.no; ++k) {
                t.p[k] = t.lower[t.np][k] + t.upper[t.na][t.no - k];
            }
        }
    }

    // Emits the stack of bar b bottom to top, with the parent block at
    // position k, and recurses into the children at their matched positions.
    void emit(int b, int k) {
        const BarTables& t = bars[b];
        const Side os = opposite(t.ps);
        std::vector<StackEntry>& stack = layout.stacks[b];

        std::vector<StackEntry> lower_part;
        int x = t.np;
        int y = t.is_root ? t.no : k;
        while (x > 0 || y > 0) {
            if (t.lower_from[x][y]) {
                lower_part.push_back({os, y - 1});
                place_child(b, os, y - 1, x);
                --y;
            } else {
                lower_part.push_back({t.ps, x - 1});
                place_child(b, t.ps, x - 1, y);
                --x;
            }
        }
        stack.insert(stack.end(), lower_part.rbegin(), lower_part.rend());

        if (t.is_root) return;
        stack.push_back({t.ps, t.parent_rank});

        int a = t.na;
        int c = t.no - k;
        while (a > 0 || c > 0) {
            if (t.upper_from[a][c]) {
                stack.push_back({os, t.no - c});
                place_child(b, os, t.no - c, t.nps - a);
                --c;
            } else {
                stack.push_back({t.ps, t.nps - a});
                place_child(b, t.ps, t.nps - a, t.no - c);
                --a;
            }
        }
    }

    // If the block (side, idx) of bar b carries a child link, fix the child
    // subtree's layout for this bar's block sitting at position pos.
    void place_child(int b, Side side, int idx, int pos) {
        const int e = seqs.bars[b].side(side)[idx];
        if (!table.links[e].dependent() || e == forest.parent_edge[b]) return;
        const int slot = child_slot(b, e);
        const Edge& ed = graph.edges[e];
        emit(ed.u == b ? ed.v : ed.u, bars[b].child_arg[slot][pos]);
    }
};

}  // namespace

SolveResult solve_forest(const WeightedGraph& graph, const Sequences& seqs,
                         const LinkTable& table) {
    ForestCheck check = dl_forest(graph, table);
    if (!check.acyclic) {
        throw PreconditionError("forest solver: dependent links contain a cycle through " +
                                std::to_string(check.cycle.size()) + " links");
    }

    ForestSolver solver{graph, seqs, table, check.forest, {}, {}};
    solver.bars.resize(graph.n());
    solver.layout.stacks.resize(graph.n());

    SolveResult res;

    // Children first: the BFS order lists parents before children.
    for (auto it = check.forest.order.rbegin(); it != check.forest.order.rend(); ++it) {
        solver.solve_tree_bar(*it);
    }
    for (int r : check.forest.roots) {
        res.cost += solver.bars[r].lower[solver.bars[r].np][solver.bars[r].no];
        solver.emit(r, 0);
    }

    // Bars untouched by dependent links are plain independent merges.
    for (int b = 0; b < graph.n(); ++b) {
        if (table.dl_degree[b] > 0) continue;
        const BarSequences& bar = seqs.bars[b];
        const auto cost = [&](Side s) {
            return [&, s](int idx, int k) {
                return independent_block_cost(graph, seqs, table, b, s, idx, k);
            };
        };
        MergeResult merged = solve_bar(static_cast<int>(bar.left.size()),
                                       static_cast<int>(bar.right.size()),
                                       cost(Side::L), cost(Side::R));
        res.cost += merged.cost;
        int l = 0, r = 0;
        for (Side s : merged.order) {
            solver.layout.stacks[b].push_back({s, s == Side::L ? l++ : r++});
        }
    }

    res.layout = std::move(solver.layout);
    return res;
}

}  // namespace linkedbars
