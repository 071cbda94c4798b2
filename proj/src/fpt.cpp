#include "linkedbars/fpt.hpp"

#include <algorithm>
#include <limits>
#include <numeric>
#include <stdexcept>
#include <string>
#include <utility>

namespace linkedbars {

namespace {

constexpr double kInf = std::numeric_limits<double>::infinity();

void ensure(bool condition, const char* what) {
    if (!condition) {
        throw std::logic_error(std::string("general-case solver invariant violated: ") + what);
    }
}

}  // namespace

// --- dependent blocks and bar states ------------------------------------

std::vector<DependentBlock> dependent_blocks(const Sequences& seqs, const LinkTable& table,
                                             int bar) {
    std::vector<DependentBlock> blocks;
    const BarSequences& bs = seqs.bars[bar];
    for (Side s : {Side::L, Side::R}) {
        const std::vector<int>& seq = bs.side(s);
        for (int rank = 0; rank < static_cast<int>(seq.size()); ++rank) {
            if (table.links[seq[rank]].dependent()) blocks.push_back({seq[rank], s, rank});
        }
    }
    return blocks;
}

namespace {

// A placement extends to a full merge exactly when, walking the dependent
// blocks bottom to top, the below-counts of both sides never decrease and
// step over the block itself on its own side. kpos[i] = opposite-side count.
bool valid_state(const std::vector<DependentBlock>& blocks, const std::vector<int>& kpos) {
    const int t = static_cast<int>(blocks.size());
    std::vector<int> order(t);
    std::iota(order.begin(), order.end(), 0);
    std::sort(order.begin(), order.end(), [&](int a, int b) {
        return blocks[a].rank + kpos[a] < blocks[b].rank + kpos[b];
    });
    for (int i = 0; i + 1 < t; ++i) {
        const DependentBlock& d1 = blocks[order[i]];
        const DependentBlock& d2 = blocks[order[i + 1]];
        const int k1 = kpos[order[i]];
        const int k2 = kpos[order[i + 1]];
        if (d1.rank + k1 == d2.rank + k2) return false;  // same stacking index
        const int l1 = d1.side == Side::L ? d1.rank : k1;
        const int r1 = d1.side == Side::L ? k1 : d1.rank;
        const int l2 = d2.side == Side::L ? d2.rank : k2;
        const int r2 = d2.side == Side::L ? k2 : d2.rank;
        if (l2 < l1 + (d1.side == Side::L ? 1 : 0)) return false;
        if (r2 < r1 + (d1.side == Side::R ? 1 : 0)) return false;
    }
    return true;
}

}  // namespace

std::vector<BarState> enumerate_states(const Sequences& seqs, const LinkTable& table, int bar) {
    const std::vector<DependentBlock> blocks = dependent_blocks(seqs, table, bar);
    const int t = static_cast<int>(blocks.size());
    std::vector<BarState> states;
    if (t == 0) {
        states.emplace_back();
        return states;
    }
    const BarSequences& bs = seqs.bars[bar];
    std::vector<int> kmax(t), kpos(t, 0);
    for (int i = 0; i < t; ++i) {
        kmax[i] = static_cast<int>(bs.side(opposite(blocks[i].side)).size());
    }
    for (;;) {
        if (valid_state(blocks, kpos)) {
            BarState s;
            s.index.resize(t);
            for (int i = 0; i < t; ++i) s.index[i] = blocks[i].rank + kpos[i];
            states.push_back(std::move(s));
        }
        int d = t - 1;
        while (d >= 0 && kpos[d] == kmax[d]) kpos[d--] = 0;
        if (d < 0) break;
        ++kpos[d];
    }
    return states;
}

// --- segment tables ------------------------------------------------------

SegmentCosts::SegmentCosts(const WeightedGraph& graph, const Sequences& seqs,
                           const LinkTable& table, int bar) {
    const BarSequences& bs = seqs.bars[bar];
    // next_dep[s][i] = first rank >= i holding a dependent block on side s
    std::vector<int> next_dep[2];
    for (Side s : {Side::L, Side::R}) {
        const std::vector<int>& seq = bs.side(s);
        const int n = static_cast<int>(seq.size());
        std::vector<int>& nd = next_dep[s == Side::L ? 0 : 1];
        nd.assign(n + 1, n);
        for (int i = n - 1; i >= 0; --i) {
            nd[i] = table.links[seq[i]].dependent() ? i : nd[i + 1];
        }
    }
    for (Side s : {Side::L, Side::R}) {
        const int si = s == Side::L ? 0 : 1;
        const std::vector<int>& own = bs.side(s);
        const std::vector<int>& opp = bs.side(opposite(s));
        const int n_own = static_cast<int>(own.size());
        const int n_opp = static_cast<int>(opp.size());
        const std::vector<int>& nd_own = next_dep[si];
        const std::vector<int>& nd_opp = next_dep[1 - si];
        start_of_[si].assign(n_own + 1, -1);
        for (int i = 0; i <= n_own; ++i) {
            if (i > 0 && !table.links[own[i - 1]].dependent()) continue;
            start_of_[si][i] = static_cast<int>(family_[si].size());
            std::vector<Grid> grids(n_opp + 1);
            for (int j = 0; j <= n_opp; ++j) {
                Grid& g = grids[j];
                g.amax = nd_own[i] - i;
                g.bmax = nd_opp[j] - j;
                g.v.assign(static_cast<size_t>(g.amax + 1) * (g.bmax + 1), 0.0);
                for (int a = 0; a <= g.amax; ++a) {
                    for (int b = 0; b <= g.bmax; ++b) {
                        if (a == 0 && b == 0) continue;
                        double best = kInf;
                        if (a > 0) {
                            best = g.at(a - 1, b) +
                                   independent_block_cost(graph, seqs, table, bar, s, i + a - 1,
                                                          j + b);
                        }
                        if (b > 0) {
                            best = std::min(
                                best, g.at(a, b - 1) + independent_block_cost(graph, seqs, table,
                                                                              bar, opposite(s),
                                                                              j + b - 1, i + a));
                        }
                        g.v[static_cast<size_t>(a) * (g.bmax + 1) + b] = best;
                    }
                }
            }
            family_[si].push_back(std::move(grids));
        }
    }
}

double SegmentCosts::range(int i, int j, int p, int q) const {
    if (p == i && q == j) return 0.0;
    if (i < static_cast<int>(start_of_[0].size()) && start_of_[0][i] >= 0) {
        const Grid& g = family_[0][start_of_[0][i]][j];
        ensure(p - i <= g.amax && q - j <= g.bmax, "segment lookup beyond its dependent-free run");
        return g.at(p - i, q - j);
    }
    ensure(j < static_cast<int>(start_of_[1].size()) && start_of_[1][j] >= 0,
           "segment base not at a run start");
    const Grid& g = family_[1][start_of_[1][j]][i];
    ensure(q - j <= g.amax && p - i <= g.bmax, "segment lookup beyond its dependent-free run");
    return g.at(q - j, p - i);
}

// --- merges around pinned dependent blocks -------------------------------

namespace {

double assemble_placed(const SegmentCosts& seg, const std::vector<DependentBlock>& blocks,
                       const BarState& state, int nl, int nr) {
    const int t = static_cast<int>(blocks.size());
    std::vector<int> order(t);
    std::iota(order.begin(), order.end(), 0);
    std::sort(order.begin(), order.end(),
              [&](int a, int b) { return state.index[a] < state.index[b]; });
    double total = 0.0;
    int i = 0, j = 0;
    for (int id : order) {
        const DependentBlock& d = blocks[id];
        const int k = state.index[id] - d.rank;
        const int l = d.side == Side::L ? d.rank : k;
        const int r = d.side == Side::L ? k : d.rank;
        ensure(l >= i && r >= j, "state places dependent blocks out of order");
        total += seg.range(i, j, l, r);
        i = l + (d.side == Side::L ? 1 : 0);
        j = r + (d.side == Side::R ? 1 : 0);
    }
    total += seg.range(i, j, nl, nr);
    return total;
}

}  // namespace

double placed_independent_cost(const WeightedGraph& graph, const Sequences& seqs,
                               const LinkTable& table, int bar, const BarState& state) {
    const std::vector<DependentBlock> blocks = dependent_blocks(seqs, table, bar);
    ensure(blocks.size() == state.index.size(), "state does not match the bar's dependent blocks");
    const SegmentCosts seg(graph, seqs, table, bar);
    const BarSequences& bs = seqs.bars[bar];
    return assemble_placed(seg, blocks, state, static_cast<int>(bs.left.size()),
                           static_cast<int>(bs.right.size()));
}

MergeResult solve_bar_placed(const WeightedGraph& graph, const Sequences& seqs,
                             const LinkTable& table, int bar, const BarState& state) {
    const BarSequences& bs = seqs.bars[bar];
    const std::vector<DependentBlock> blocks = dependent_blocks(seqs, table, bar);
    ensure(blocks.size() == state.index.size(), "state does not match the bar's dependent blocks");
    const int nl = static_cast<int>(bs.left.size());
    const int nr = static_cast<int>(bs.right.size());
    // pin[side][rank] = required opposite-side count, -1 for independent blocks
    std::vector<int> pin[2] = {std::vector<int>(nl, -1), std::vector<int>(nr, -1)};
    for (size_t b = 0; b < blocks.size(); ++b) {
        pin[blocks[b].side == Side::L ? 0 : 1][blocks[b].rank] =
            state.index[b] - blocks[b].rank;
    }
    const int w = nr + 1;
    std::vector<double> dp(static_cast<size_t>(nl + 1) * w, kInf);
    std::vector<unsigned char> from(dp.size(), 0);
    dp[0] = 0.0;
    for (int p = 0; p <= nl; ++p) {
        for (int q = 0; q <= nr; ++q) {
            if (p == 0 && q == 0) continue;
            double best = kInf;
            unsigned char src = 0;
            if (p > 0 && dp[(p - 1) * w + q] < kInf) {
                const int need = pin[0][p - 1];
                if (need < 0) {
                    best = dp[(p - 1) * w + q] +
                           independent_block_cost(graph, seqs, table, bar, Side::L, p - 1, q);
                } else if (q == need) {
                    best = dp[(p - 1) * w + q];
                }
            }
            if (q > 0 && dp[p * w + q - 1] < kInf) {
                const int need = pin[1][q - 1];
                double c = kInf;
                if (need < 0) {
                    c = dp[p * w + q - 1] +
                        independent_block_cost(graph, seqs, table, bar, Side::R, q - 1, p);
                } else if (p == need) {
                    c = dp[p * w + q - 1];
                }
                if (c <= best) {  // right wins ties so left blocks end up lower
                    best = c;
                    src = 1;
                }
            }
            dp[p * w + q] = best;
            from[p * w + q] = src;
        }
    }
    ensure(dp[nl * w + nr] < kInf, "pinned merge is infeasible for a valid state");
    MergeResult res;
    res.cost = dp[nl * w + nr];
    res.cells = static_cast<long long>(nl + 1) * (nr + 1);
    res.order.resize(nl + nr);
    int p = nl, q = nr;
    for (int at = nl + nr - 1; at >= 0; --at) {
        if (from[p * w + q] == 0) {
            res.order[at] = Side::L;
            --p;
        } else {
            res.order[at] = Side::R;
            --q;
        }
    }
    return res;
}

// --- tree decomposition ---------------------------------------------------

namespace {

struct SpanNode {
    int u = 0;
    int v = 0;
    int edge = -1;
    std::vector<int> children;  // nested spans, left to right
};

struct DecompositionBuilder {
    TreeDecomposition dec;

    int leaf() {
        dec.nodes.push_back({NodeType::leaf, -1, {}, -1, -1});
        return last();
    }
    int introduce(int child, int bar) {
        DecompositionNode n{NodeType::introduce, bar, dec.nodes[child].bag, child, -1};
        n.bag.insert(std::upper_bound(n.bag.begin(), n.bag.end(), bar), bar);
        dec.nodes.push_back(std::move(n));
        return last();
    }
    int forget(int child, int bar) {
        DecompositionNode n{NodeType::forget, bar, dec.nodes[child].bag, child, -1};
        const auto it = std::find(n.bag.begin(), n.bag.end(), bar);
        ensure(it != n.bag.end(), "forgetting a bar that is not in the bag");
        n.bag.erase(it);
        dec.nodes.push_back(std::move(n));
        return last();
    }
    int join(int a, int b) {
        ensure(dec.nodes[a].bag == dec.nodes[b].bag, "join children bags differ");
        dec.nodes.push_back({NodeType::join, -1, dec.nodes[a].bag, a, b});
        return last();
    }
    int last() const { return static_cast<int>(dec.nodes.size()) - 1; }

    // Subtree for one span, returning a node with bag {u, v}. Child spans are
    // walked left to right: the chain carries {u, previous right endpoint},
    // meets each child's subtree in a join over {u, child u, child v}, and
    // forgets the child's left endpoint before moving on.
    int build_span(const std::vector<SpanNode>& spans, int s) {
        const SpanNode& sp = spans[s];
        if (sp.children.empty()) {
            return introduce(introduce(leaf(), sp.u), sp.v);
        }
        int cur = build_span(spans, sp.children[0]);
        int prev_b = spans[sp.children[0]].v;
        if (spans[sp.children[0]].u != sp.u) {
            cur = introduce(cur, sp.u);
            cur = forget(cur, spans[sp.children[0]].u);
        }
        for (size_t i = 1; i < sp.children.size(); ++i) {
            const SpanNode& c = spans[sp.children[i]];
            ensure(c.u >= prev_b, "child spans out of order");
            if (c.u == prev_b) {
                cur = introduce(cur, c.v);
            } else {
                cur = forget(cur, prev_b);
                cur = introduce(cur, c.u);
                cur = introduce(cur, c.v);
            }
            const int side = introduce(build_span(spans, sp.children[i]), sp.u);
            cur = join(cur, side);
            cur = forget(cur, c.u);
            prev_b = c.v;
        }
        if (prev_b != sp.v) {
            cur = forget(cur, prev_b);
            cur = introduce(cur, sp.v);
        }
        return cur;
    }
};

}  // namespace

TreeDecomposition build_tree_decomposition(const WeightedGraph& graph, const LinkTable& table) {
    ensure(!find_crossing_dependent_pair(graph, table).has_value(),
           "dependent spans cross; classification is inconsistent");
    std::vector<SpanNode> spans;
    for (int e = 0; e < graph.m(); ++e) {
        if (table.links[e].dependent()) {
            spans.push_back({graph.edges[e].u, graph.edges[e].v, e, {}});
        }
    }
    // Sorted by left endpoint, wider spans first, a stack sweep recovers the
    // nesting forest of the (non-crossing) spans.
    std::sort(spans.begin(), spans.end(), [](const SpanNode& a, const SpanNode& b) {
        if (a.u != b.u) return a.u < b.u;
        if (a.v != b.v) return a.v > b.v;
        return a.edge < b.edge;
    });
    std::vector<int> open, top;
    for (int i = 0; i < static_cast<int>(spans.size()); ++i) {
        while (!open.empty() &&
               !(spans[open.back()].u <= spans[i].u && spans[i].v <= spans[open.back()].v)) {
            open.pop_back();
        }
        if (open.empty()) {
            top.push_back(i);
        } else {
            spans[open.back()].children.push_back(i);
        }
        open.push_back(i);
    }
    DecompositionBuilder b;
    if (spans.empty()) {
        b.leaf();
        b.dec.root = 0;
        return std::move(b.dec);
    }
    int cur = b.build_span(spans, top[0]);
    cur = b.forget(cur, spans[top[0]].u);
    int prev_b = spans[top[0]].v;
    for (size_t i = 1; i < top.size(); ++i) {
        const SpanNode& m = spans[top[i]];
        ensure(m.u >= prev_b, "top-level spans out of order");
        if (m.u == prev_b) {
            cur = b.introduce(cur, m.v);
        } else {
            cur = b.forget(cur, prev_b);
            cur = b.introduce(cur, m.u);
            cur = b.introduce(cur, m.v);
        }
        const int side = b.build_span(spans, top[i]);
        cur = b.join(cur, side);
        cur = b.forget(cur, m.u);
        prev_b = m.v;
    }
    cur = b.forget(cur, prev_b);
    b.dec.root = cur;
    ensure(b.dec.nodes[cur].bag.empty(), "root bag not empty");
    return std::move(b.dec);
}

// --- decomposition validation ----------------------------------------------

std::vector<std::string> validate_tree_decomposition(const TreeDecomposition& dec,
                                                     const WeightedGraph& graph,
                                                     const LinkTable& table) {
    std::vector<std::string> problems;
    const int N = static_cast<int>(dec.nodes.size());
    if (N == 0 || dec.root < 0 || dec.root >= N) {
        problems.push_back("decomposition is empty or its root is out of range");
        return problems;
    }
    std::vector<int> parent(N, -1);
    for (int u = 0; u < N; ++u) {
        for (int c : {dec.nodes[u].left, dec.nodes[u].right}) {
            if (c < 0) continue;
            if (c >= u) {
                problems.push_back("node " + std::to_string(u) + " has child " +
                                   std::to_string(c) + " that does not precede it");
                continue;
            }
            if (parent[c] != -1) {
                problems.push_back("node " + std::to_string(c) + " has two parents");
            }
            parent[c] = u;
        }
    }
    if (parent[dec.root] != -1) problems.push_back("root node has a parent");
    for (int u = 0; u < N; ++u) {
        if (u != dec.root && parent[u] == -1) {
            problems.push_back("node " + std::to_string(u) + " is not reachable from the root");
        }
    }

    for (int u = 0; u < N; ++u) {
        const std::vector<int>& bag = dec.nodes[u].bag;
        if (!std::is_sorted(bag.begin(), bag.end()) ||
            std::adjacent_find(bag.begin(), bag.end()) != bag.end()) {
            problems.push_back("bag of node " + std::to_string(u) + " is not strictly ascending");
        }
        if (bag.size() > 3) {
            problems.push_back("bag of node " + std::to_string(u) + " holds more than 3 bars");
        }
        for (int bar : bag) {
            if (bar < 0 || bar >= graph.n()) {
                problems.push_back("bag of node " + std::to_string(u) + " names bar " +
                                   std::to_string(bar + 1) + ", outside the chart");
            } else if (table.dl_degree[bar] == 0) {
                problems.push_back("bar " + std::to_string(bar + 1) +
                                   " has no dependent blocks but appears in a bag");
            }
        }
    }

    const auto has = [](const std::vector<int>& bag, int bar) {
        return std::binary_search(bag.begin(), bag.end(), bar);
    };
    for (int u = 0; u < N; ++u) {
        const DecompositionNode& n = dec.nodes[u];
        const std::string name = "node " + std::to_string(u);
        switch (n.type) {
            case NodeType::leaf:
                if (n.left >= 0 || n.right >= 0) problems.push_back(name + ": leaf with children");
                if (!n.bag.empty()) problems.push_back(name + ": leaf with a nonempty bag");
                break;
            case NodeType::introduce:
            case NodeType::forget: {
                const bool intro = n.type == NodeType::introduce;
                if (n.left < 0 || n.right >= 0) {
                    problems.push_back(name + ": needs exactly one child");
                    break;
                }
                const std::vector<int>& big = intro ? n.bag : dec.nodes[n.left].bag;
                const std::vector<int>& small = intro ? dec.nodes[n.left].bag : n.bag;
                std::vector<int> expect = big;
                auto it = std::find(expect.begin(), expect.end(), n.bar);
                if (it == expect.end()) {
                    problems.push_back(name + ": bar " + std::to_string(n.bar + 1) +
                                       (intro ? " missing from the bag" : " missing from the child bag"));
                    break;
                }
                expect.erase(it);
                if (expect != small) {
                    problems.push_back(name + ": bags do not differ by exactly bar " +
                                       std::to_string(n.bar + 1));
                }
                break;
            }
            case NodeType::join:
                if (n.left < 0 || n.right < 0) {
                    problems.push_back(name + ": join needs two children");
                    break;
                }
                if (dec.nodes[n.left].bag != n.bag || dec.nodes[n.right].bag != n.bag) {
                    problems.push_back(name + ": join bags differ from the children");
                }
                break;
        }
    }

    if (!dec.nodes[dec.root].bag.empty()) problems.push_back("root bag is not empty");

    for (int e = 0; e < graph.m(); ++e) {
        if (!table.links[e].dependent()) continue;
        bool covered = false;
        for (int u = 0; u < N && !covered; ++u) {
            covered = has(dec.nodes[u].bag, graph.edges[e].u) &&
                      has(dec.nodes[u].bag, graph.edges[e].v);
        }
        if (!covered) {
            problems.push_back("dependent link " + std::to_string(graph.edges[e].u + 1) + "-" +
                               std::to_string(graph.edges[e].v + 1) + " shares no bag");
        }
    }

    // Per bar, the nodes whose bag holds it must form one connected subtree:
    // exactly one of them may lack it in the parent.
    std::vector<int> tops(graph.n(), 0), appears(graph.n(), 0);
    for (int u = 0; u < N; ++u) {
        for (int bar : dec.nodes[u].bag) {
            if (bar < 0 || bar >= graph.n()) continue;
            appears[bar] = 1;
            if (parent[u] < 0 || !has(dec.nodes[parent[u]].bag, bar)) ++tops[bar];
        }
    }
    for (int bar = 0; bar < graph.n(); ++bar) {
        if (appears[bar] && tops[bar] != 1) {
            problems.push_back("bags containing bar " + std::to_string(bar + 1) +
                               " do not form a connected subtree");
        }
    }
    return problems;
}

// --- state-indexed dynamic program -----------------------------------------

namespace {

struct NodeTable {
    std::vector<int> dims;           // per bag bar: number of states
    std::vector<long long> stride;   // last bar varies fastest
    std::vector<double> cost;
    long long cells = 1;
};

struct BarInfo {
    bool ready = false;
    std::vector<DependentBlock> blocks;
    std::vector<BarState> states;
    std::vector<std::vector<int>> kpos;  // per state, per block: opposite-side count
    std::vector<double> il;              // optimal independent cost per state
    bool il_ready = false;
};

class Engine {
public:
    Engine(const WeightedGraph& g, const Sequences& seqs, const LinkTable& table,
           const FptConfig& config)
        : g_(g), seqs_(seqs), table_(table), config_(config),
          dec_(build_tree_decomposition(g, table)), info_(g.n()), adj_dl_(g.n()) {
        for (int e = 0; e < g.m(); ++e) {
            if (table.links[e].dependent()) {
                adj_dl_[g.edges[e].u].push_back(e);
                adj_dl_[g.edges[e].v].push_back(e);
                ++dl_edges_;
            }
        }
        const int N = static_cast<int>(dec_.nodes.size());
        lo_.assign(N, 0);
        for (int u = 0; u < N; ++u) {
            const DecompositionNode& n = dec_.nodes[u];
            lo_[u] = n.left >= 0 ? lo_[n.left] : u;
            // Reconstruction recomputes subtrees as contiguous node ranges.
            if (n.right >= 0) {
                ensure(n.right == u - 1 && lo_[n.right] == n.left + 1,
                       "join children are not contiguous");
            } else if (n.left >= 0) {
                ensure(n.left == u - 1, "chain child is not the previous node");
            }
        }
    }

    SolveResult run();

private:
    struct Partner {
        int slot = 0;  // bag slot of the other endpoint
        int sx = 0;    // its state count
        std::vector<double> lam;  // lam[sigma_f * sx + sigma_x]
    };
    struct ForgetContext {
        int sf = 0;
        long long fstride = 0;
        const std::vector<double>* il = nullptr;
        std::vector<Partner> partners;
    };

    BarInfo& info(int bar) {
        BarInfo& bi = info_[bar];
        if (!bi.ready) {
            bi.blocks = dependent_blocks(seqs_, table_, bar);
            bi.states = enumerate_states(seqs_, table_, bar);
            ensure(!bi.states.empty(), "a bar admits no state");
            bi.kpos.resize(bi.states.size());
            for (size_t s = 0; s < bi.states.size(); ++s) {
                bi.kpos[s].resize(bi.blocks.size());
                for (size_t i = 0; i < bi.blocks.size(); ++i) {
                    bi.kpos[s][i] = bi.states[s].index[i] - bi.blocks[i].rank;
                }
            }
            bi.ready = true;
        }
        return bi;
    }

    const std::vector<double>& independent_costs(int bar) {
        BarInfo& bi = info(bar);
        if (!bi.il_ready) {
            const SegmentCosts seg(g_, seqs_, table_, bar);
            const BarSequences& bs = seqs_.bars[bar];
            const int nl = static_cast<int>(bs.left.size());
            const int nr = static_cast<int>(bs.right.size());
            bi.il.reserve(bi.states.size());
            for (const BarState& s : bi.states) {
                bi.il.push_back(assemble_placed(seg, bi.blocks, s, nl, nr));
            }
            bi.il_ready = true;
        }
        return bi.il;
    }

    // Opposite-side count of edge's block at bar under the given state.
    int position(int bar, int state, int edge) {
        const BarInfo& bi = info(bar);
        for (size_t i = 0; i < bi.blocks.size(); ++i) {
            if (bi.blocks[i].edge == edge) return bi.kpos[state][i];
        }
        ensure(false, "edge has no dependent block at this bar");
        return -1;
    }

    ForgetContext make_forget_context(const DecompositionNode& n, const NodeTable& child,
                                      int fpos) {
        ForgetContext ctx;
        ctx.sf = static_cast<int>(info(n.bar).states.size());
        ctx.fstride = child.stride[fpos];
        ctx.il = &independent_costs(n.bar);
        for (int e : adj_dl_[n.bar]) {
            const Edge& edge = g_.edges[e];
            const int x = edge.u == n.bar ? edge.v : edge.u;
            const auto it = std::lower_bound(n.bag.begin(), n.bag.end(), x);
            if (it == n.bag.end() || *it != x) continue;
            Partner p;
            p.slot = static_cast<int>(it - n.bag.begin());
            p.sx = static_cast<int>(info(x).states.size());
            p.lam.resize(static_cast<size_t>(ctx.sf) * p.sx);
            for (int sf = 0; sf < ctx.sf; ++sf) {
                for (int sx = 0; sx < p.sx; ++sx) {
                    const int pf = position(n.bar, sf, e);
                    const int px = position(x, sx, e);
                    const int i = edge.u == n.bar ? pf : px;
                    const int j = edge.u == n.bar ? px : pf;
                    p.lam[static_cast<size_t>(sf) * p.sx + sx] =
                        link_cost(g_, seqs_, table_, e, i, j);
                }
            }
            ctx.partners.push_back(std::move(p));
        }
        return ctx;
    }

    static double scan_forgotten(const ForgetContext& ctx, const NodeTable& child, long long cf,
                                 const std::vector<int>& asg, int& arg) {
        double best = kInf;
        arg = -1;
        for (int sf = 0; sf < ctx.sf; ++sf) {
            double v = child.cost[cf + sf * ctx.fstride] + (*ctx.il)[sf];
            for (const Partner& p : ctx.partners) {
                v += p.lam[static_cast<size_t>(sf) * p.sx + asg[p.slot]];
            }
            if (v < best) {
                best = v;
                arg = sf;
            }
        }
        return best;
    }

    void process_node(int u, std::vector<NodeTable>& tabs, int base, long long* used,
                      bool record) {
        const DecompositionNode& n = dec_.nodes[u];
        NodeTable t;
        t.dims.reserve(n.bag.size());
        for (int bar : n.bag) t.dims.push_back(static_cast<int>(info(bar).states.size()));
        t.stride.assign(t.dims.size(), 1);
        for (int i = static_cast<int>(t.dims.size()) - 2; i >= 0; --i) {
            t.stride[i] = t.stride[i + 1] * t.dims[i + 1];
        }
        t.cells = t.dims.empty() ? 1 : t.stride[0] * t.dims[0];
        if (used) {
            *used += t.cells;
            if (*used > config_.state_budget) {
                throw BudgetExceeded("state tables need " + std::to_string(*used) +
                                         " entries, over the budget of " +
                                         std::to_string(config_.state_budget),
                                     static_cast<double>(*used));
            }
        }
        t.cost.resize(t.cells);

        switch (n.type) {
            case NodeType::leaf:
                t.cost[0] = 0.0;
                break;
            case NodeType::introduce: {
                const NodeTable& ct = tabs[n.left - base];
                const int bpos = static_cast<int>(
                    std::lower_bound(n.bag.begin(), n.bag.end(), n.bar) - n.bag.begin());
                std::vector<long long> cs(t.dims.size(), 0);  // child stride per slot
                for (size_t i = 0; i < t.dims.size(); ++i) {
                    if (static_cast<int>(i) == bpos) continue;
                    cs[i] = ct.stride[i < static_cast<size_t>(bpos) ? i : i - 1];
                }
                std::vector<int> asg(t.dims.size(), 0);
                long long cf = 0;
                for (long long flat = 0; flat < t.cells; ++flat) {
                    t.cost[flat] = ct.cost[cf];
                    int d = static_cast<int>(t.dims.size()) - 1;
                    while (d >= 0) {
                        ++asg[d];
                        cf += cs[d];
                        if (asg[d] < t.dims[d]) break;
                        cf -= static_cast<long long>(asg[d]) * cs[d];
                        asg[d] = 0;
                        --d;
                    }
                }
                break;
            }
            case NodeType::forget: {
                const NodeTable& ct = tabs[n.left - base];
                const std::vector<int>& cbag = dec_.nodes[n.left].bag;
                const int fpos = static_cast<int>(
                    std::lower_bound(cbag.begin(), cbag.end(), n.bar) - cbag.begin());
                const ForgetContext ctx = make_forget_context(n, ct, fpos);
                if (used) charged_ += static_cast<int>(ctx.partners.size());
                if (record) argmin_[u].assign(t.cells, -1);
                std::vector<long long> cs(t.dims.size(), 0);
                for (size_t i = 0; i < t.dims.size(); ++i) {
                    cs[i] = ct.stride[i < static_cast<size_t>(fpos) ? i : i + 1];
                }
                std::vector<int> asg(t.dims.size(), 0);
                long long cf = 0;
                for (long long flat = 0; flat < t.cells; ++flat) {
                    int arg = -1;
                    t.cost[flat] = scan_forgotten(ctx, ct, cf, asg, arg);
                    if (record) argmin_[u][flat] = arg;
                    int d = static_cast<int>(t.dims.size()) - 1;
                    while (d >= 0) {
                        ++asg[d];
                        cf += cs[d];
                        if (asg[d] < t.dims[d]) break;
                        cf -= static_cast<long long>(asg[d]) * cs[d];
                        asg[d] = 0;
                        --d;
                    }
                }
                break;
            }
            case NodeType::join: {
                const NodeTable& a = tabs[n.left - base];
                const NodeTable& b = tabs[n.right - base];
                ensure(a.dims == t.dims && b.dims == t.dims, "join tables disagree on dimensions");
                for (long long i = 0; i < t.cells; ++i) t.cost[i] = a.cost[i] + b.cost[i];
                break;
            }
        }
        for (int c : {n.left, n.right}) {
            if (c >= 0) tabs[c - base] = NodeTable{};
        }
        tabs[u - base] = std::move(t);
    }

    NodeTable recompute(int target) {
        const int base = lo_[target];
        std::vector<NodeTable> scratch(target - base + 1);
        for (int w = base; w <= target; ++w) process_node(w, scratch, base, nullptr, false);
        return std::move(scratch[target - base]);
    }

    const WeightedGraph& g_;
    const Sequences& seqs_;
    const LinkTable& table_;
    FptConfig config_;
    TreeDecomposition dec_;
    std::vector<BarInfo> info_;
    std::vector<std::vector<int>> adj_dl_;
    std::vector<int> lo_;
    std::vector<std::vector<int>> argmin_;
    int dl_edges_ = 0;
    int charged_ = 0;
};

SolveResult Engine::run() {
    const int N = static_cast<int>(dec_.nodes.size());
    argmin_.assign(N, {});
    std::vector<NodeTable> tabs(N);
    long long used = 0;
    for (int u = 0; u < N; ++u) process_node(u, tabs, 0, &used, config_.keep_tables);
    ensure(charged_ == dl_edges_, "dependent links charged more or less than once");
    const double dl_total = tabs[dec_.root].cost.at(0);
    tabs.clear();

    // Re-descend, pinning every bag bar's state on the way down; each bar's
    // state is fixed at its unique forget node.
    std::vector<int> chosen(g_.n(), -1);
    struct Frame {
        int node;
        std::vector<int> asg;
    };
    std::vector<Frame> work;
    work.push_back({dec_.root, {}});
    while (!work.empty()) {
        Frame f = std::move(work.back());
        work.pop_back();
        const DecompositionNode& n = dec_.nodes[f.node];
        switch (n.type) {
            case NodeType::leaf:
                break;
            case NodeType::introduce: {
                const int bpos = static_cast<int>(
                    std::lower_bound(n.bag.begin(), n.bag.end(), n.bar) - n.bag.begin());
                std::vector<int> asg = f.asg;
                asg.erase(asg.begin() + bpos);
                work.push_back({n.left, std::move(asg)});
                break;
            }
            case NodeType::join:
                work.push_back({n.left, f.asg});
                work.push_back({n.right, std::move(f.asg)});
                break;
            case NodeType::forget: {
                const std::vector<int>& cbag = dec_.nodes[n.left].bag;
                const int fpos = static_cast<int>(
                    std::lower_bound(cbag.begin(), cbag.end(), n.bar) - cbag.begin());
                int arg = -1;
                if (config_.keep_tables) {
                    long long stride = 1, flat = 0;
                    for (int i = static_cast<int>(f.asg.size()) - 1; i >= 0; --i) {
                        flat += f.asg[i] * stride;
                        stride *= static_cast<long long>(info(n.bag[i]).states.size());
                    }
                    arg = argmin_[f.node][flat];
                } else {
                    const NodeTable ct = recompute(n.left);
                    const ForgetContext ctx = make_forget_context(n, ct, fpos);
                    long long cf = 0;
                    for (size_t i = 0; i < f.asg.size(); ++i) {
                        cf += f.asg[i] * ct.stride[i < static_cast<size_t>(fpos) ? i : i + 1];
                    }
                    scan_forgotten(ctx, ct, cf, f.asg, arg);
                }
                ensure(arg >= 0, "no state chosen at a forget node");
                ensure(chosen[n.bar] == -1, "bar forgotten twice");
                chosen[n.bar] = arg;
                std::vector<int> asg = std::move(f.asg);
                asg.insert(asg.begin() + fpos, arg);
                work.push_back({n.left, std::move(asg)});
                break;
            }
        }
    }
    argmin_.clear();

    SolveResult res;
    res.cost = dl_total;
    res.layout.stacks.resize(g_.n());
    for (int b = 0; b < g_.n(); ++b) {
        const BarSequences& bs = seqs_.bars[b];
        MergeResult merged;
        if (table_.dl_degree[b] == 0) {
            const auto cost = [&](Side s) {
                return [&, s](int idx, int k) {
                    return independent_block_cost(g_, seqs_, table_, b, s, idx, k);
                };
            };
            merged = solve_bar(static_cast<int>(bs.left.size()),
                               static_cast<int>(bs.right.size()), cost(Side::L), cost(Side::R));
            res.cost += merged.cost;
        } else {
            ensure(chosen[b] >= 0, "bar with dependent blocks was never forgotten");
            merged = solve_bar_placed(g_, seqs_, table_, b, info(b).states[chosen[b]]);
        }
        int l = 0, r = 0;
        for (Side s : merged.order) {
            res.layout.stacks[b].push_back({s, s == Side::L ? l++ : r++});
        }
    }
    return res;
}

}  // namespace

SolveResult solve_fpt(const WeightedGraph& graph, const Sequences& seqs, const LinkTable& table,
                      const FptConfig& config) {
    Engine engine(graph, seqs, table, config);
    return engine.run();
}

SolveResult solve_fpt(const WeightedGraph& graph, const Sequences& seqs, const LinkTable& table) {
    return solve_fpt(graph, seqs, table, FptConfig{});
}

}  // namespace linkedbars
