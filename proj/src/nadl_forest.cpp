#include "linkedbars/nadl_forest.hpp"

#include "linkedbars/merge_dp.hpp"

#include <algorithm>
#include <array>
#include <deque>
#include <limits>
#include <numeric>
#include <stdexcept>
#include <string>
#include <utility>

namespace linkedbars {

namespace {

constexpr double kInf = std::numeric_limits<double>::infinity();

// Structural invariants of the parameterized tables. A failure means the
// boundary bookkeeping disagrees with the shape of the chart, so raising is
// preferable to silently producing a wrong optimum.
void ensure(bool ok, const char* what) {
    if (!ok) {
        throw std::logic_error(std::string("distant-link solver invariant violated: ") + what);
    }
}

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
    std::vector<int> cycle{closing_edge};
    for (int b = to; b != from; b = via_bar[b]) cycle.push_back(via_edge[b]);
    std::reverse(cycle.begin(), cycle.end());
    return cycle;
}

}  // namespace

NadlForestCheck extend_forest(const WeightedGraph& graph, const LinkTable& table) {
    const int n = graph.n();
    NadlForestCheck check;

    std::vector<int> root(n);
    std::iota(root.begin(), root.end(), 0);
    auto find = [&](int x) {
        while (root[x] != x) x = root[x] = root[root[x]];
        return x;
    };

    std::vector<std::vector<std::pair<int, int>>> adj(n);  // (bar, edge) over links in F
    auto accept = [&](int e) {
        const Edge& ed = graph.edges[e];
        root[find(ed.u)] = find(ed.v);
        adj[ed.u].push_back({ed.v, e});
        adj[ed.v].push_back({ed.u, e});
    };

    // Distant links are all mandatory; a cycle among them defeats the solver.
    for (int e = 0; e < graph.m(); ++e) {
        if (table.links[e].kind != LinkKind::distant_dependent) continue;
        const Edge& ed = graph.edges[e];
        if (find(ed.u) == find(ed.v)) {
            check.cycle = witness_cycle(adj, ed.u, ed.v, e);
            return check;
        }
        accept(e);
    }
    check.acyclic = true;

    // Adjacent dependent links joined greedily in left-endpoint order; the
    // ones that would close a cycle stay out of F as residual links. Any
    // maximal choice works, the fixed order just pins one deterministically.
    check.ext.in_f.assign(graph.m(), 0);
    std::vector<int> adls;
    for (int e = 0; e < graph.m(); ++e) {
        if (table.links[e].kind == LinkKind::adjacent_dependent) adls.push_back(e);
        if (table.links[e].kind == LinkKind::distant_dependent) check.ext.in_f[e] = 1;
    }
    std::sort(adls.begin(), adls.end(),
              [&](int a, int b) { return graph.edges[a].u < graph.edges[b].u; });
    for (int e : adls) {
        const Edge& ed = graph.edges[e];
        if (find(ed.u) == find(ed.v)) {
            check.ext.residual.push_back(e);
        } else {
            accept(e);
            check.ext.in_f[e] = 1;
        }
    }

    // Root every tree of F at its leftmost bar.
    DependencyForest& forest = check.ext.forest;
    forest.parent_bar.assign(n, -1);
    forest.parent_edge.assign(n, -1);
    forest.child_edges.resize(n);
    std::vector<char> visited(n, 0);
    for (int b = 0; b < n; ++b) {
        if (visited[b] || adj[b].empty()) continue;
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

enum class Kind { il, parent, child, resid };

// The inside endpoint of a residual link crossing the current part's
// boundary. Table axes range over its possible positions; an absent slot
// collapses the axis to a single column.
struct Slot {
    int edge = -1;
    int bar = -1;
    int size = 1;
    bool present() const { return edge >= 0; }
};

bool same_slot(const Slot& a, const Slot& b) { return a.edge == b.edge; }

struct Mat {
    int nx = 1, ny = 1;
    std::vector<double> v;
    std::vector<unsigned char> from;  // chosen branch per cell, DP tables only
    Mat() : v(1, 0.0) {}
    Mat(int x, int y, double init) : nx(x), ny(y), v(std::size_t(x) * y, init) {}
    double& at(int x, int y) { return v[std::size_t(x) * ny + y]; }
    double at(int x, int y) const { return v[std::size_t(x) * ny + y]; }
    unsigned char branch(int x, int y) const { return from[std::size_t(x) * ny + y]; }
};

// Inner argmins recovered by re-evaluating the chosen branch of a cell
// while walking a table backwards.
struct Step {
    int xprev = 0, yprev = 0;  // parameters to continue the walk with
    int chi = 0;               // coupled facing-slot position at a child join
    int kchild = -1;           // position of the joined child's own link block
};

struct TreeBar {
    int pe = -1, pb = -1;
    Side ps = Side::L;  // side holding the parent block (roots: L, virtual rank)
    int p_rank = 0;
    std::array<std::vector<Kind>, 2> kind;                  // [side][rank]
    std::array<std::vector<std::pair<int, int>>, 2> child;  // (rank, child bar), ascending
    int lm = 0, rm = 0;                                     // bar range of the subtree
    Slot lslot, rslot;                                      // boundary residual slots
    std::vector<std::vector<Mat>> lower;  // [#left][#right], axes absolute
    std::vector<std::vector<Mat>> upper;  // [top parent-side][top opposite-side]
    std::vector<Mat> p;                   // [parent-block position]
    bool is_root() const { return pe < 0; }
};

struct Choice {
    bool direct = false;  // lower part holds the subtree's opposite boundary slot
    int a2 = 0, b2 = 0;   // otherwise: positions pairing the two parts' mid slot
};

struct Solver {
    const WeightedGraph& graph;
    const Sequences& seqs;
    const LinkTable& table;
    const ExtendedForest& ext;
    std::vector<int> adj_edge;  // edge index of {b, b+1}, -1 if absent
    std::vector<TreeBar> bars;
    ChartLayout layout;

    Solver(const WeightedGraph& g, const Sequences& s, const LinkTable& t,
           const ExtendedForest& e)
        : graph(g), seqs(s), table(t), ext(e), adj_edge(g.n(), -1), bars(g.n()) {
        for (int i = 0; i < g.m(); ++i) {
            if (g.edges[i].v == g.edges[i].u + 1) adj_edge[g.edges[i].u] = i;
        }
        layout.stacks.resize(g.n());
    }

    int count(int b, Side s) const { return static_cast<int>(seqs.bars[b].side(s).size()); }

    int other_end(int e, int b) const {
        return graph.edges[e].u == b ? graph.edges[e].v : graph.edges[e].u;
    }

    bool residual_edge(int e) const {
        return e >= 0 && table.links[e].dependent() && !ext.in_f[e];
    }

    // Residual link at {b-1, b} or {b, b+1} seen from bar b's own rank-0
    // block on `side`; positions count opposite-side blocks below it.
    Slot own_resid(int b, Side s) const {
        const int e = s == Side::L ? (b > 0 ? adj_edge[b - 1] : -1) : adj_edge[b];
        if (!residual_edge(e)) return {};
        return {e, b, count(b, opposite(s)) + 1};
    }

    // A child subtree's boundary slot pointing away from / toward this bar.
    Slot away_slot(int cb, int b) const { return cb < b ? bars[cb].lslot : bars[cb].rslot; }
    Slot toward_slot(int cb, int b) const { return cb < b ? bars[cb].rslot : bars[cb].lslot; }

    // Boundary identity carried by the lowest `cnt` blocks on `side`: the
    // outward slot of the outermost child subtree joined so far, else the
    // bar's own residual block once it has been placed.
    Slot low_id(int b, Side s, int cnt) const {
        const TreeBar& t = bars[b];
        const int si = s == Side::L ? 0 : 1;
        Slot found;
        bool have = false;
        for (const auto& [rank, cb] : t.child[si]) {
            if (rank >= cnt) break;
            found = away_slot(cb, b);
            have = true;
        }
        if (have) return found;
        if (cnt >= 1 && !t.kind[si].empty() && t.kind[si][0] == Kind::resid) {
            return own_resid(b, s);
        }
        return {};
    }

    // Identities of the upper part (top `cnt` opposite-side blocks plus some
    // parent-side ones): inner faces the parent block, outer faces outward.
    Slot up_inner(int b, int cnt) const {
        const TreeBar& t = bars[b];
        const Side os = opposite(t.ps);
        const int si = os == Side::L ? 0 : 1;
        const int nos = count(b, os);
        // The bar's own residual block closes the innermost boundary link
        // the moment it enters the part.
        if (cnt == nos && !t.kind[si].empty() && t.kind[si][0] == Kind::resid) return {};
        for (const auto& [rank, cb] : t.child[si]) {
            if (rank >= nos - cnt) return toward_slot(cb, b);
        }
        return {};
    }

    Slot up_outer(int b, int cnt) const {
        const TreeBar& t = bars[b];
        const Side os = opposite(t.ps);
        const int si = os == Side::L ? 0 : 1;
        const int nos = count(b, os);
        for (auto it = t.child[si].rbegin(); it != t.child[si].rend(); ++it) {
            if (it->first >= nos - cnt) return away_slot(it->second, b);
        }
        if (cnt == nos && !t.kind[si].empty() && t.kind[si][0] == Kind::resid) {
            return own_resid(b, os);
        }
        return {};
    }

    double il(int b, Side s, int rank, int pos) const {
        return independent_block_cost(graph, seqs, table, b, s, rank, pos);
    }

    // Residual link cost with `pos_a` at bar `bar_a` and `pos_b` at the
    // other endpoint, in whichever order the edge stores them.
    double slot_lambda(int e, int bar_a, int pos_a, int pos_b) const {
        if (graph.edges[e].u == bar_a) return link_cost(graph, seqs, table, e, pos_a, pos_b);
        return link_cost(graph, seqs, table, e, pos_b, pos_a);
    }

    // Tree-link cost to child bar `cb` plus the child's folded table,
    // minimized over the child's link-block position; (cl, cr) pin the child
    // subtree's boundary slots.
    double child_best(int e, int cb, int b, int pos, int cl, int cr, Step* step) const {
        const std::vector<Mat>& pc = bars[cb].p;
        double best = kInf;
        for (int k = 0; k < static_cast<int>(pc.size()); ++k) {
            const double inner = pc[k].at(cl, cr);
            if (inner == kInf) continue;
            const double lam = cb < b ? link_cost(graph, seqs, table, e, k, pos)
                                      : link_cost(graph, seqs, table, e, pos, k);
            if (lam + inner < best) {
                best = lam + inner;
                if (step) step->kchild = k;
            }
        }
        return best;
    }

    // ---- lower table ----
    // Cell (p, q) covers the lowest p left and q right blocks; the x axis
    // ranges over low_id(L, p) positions, the y axis over low_id(R, q).

    double lower_branch(int b, int p, int q, Side s, int x, int y, Step* step) const {
        const TreeBar& t = bars[b];
        const int si = s == Side::L ? 0 : 1;
        const int rank = (s == Side::L ? p : q) - 1;
        const int pos = s == Side::L ? q : p;
        const Mat& prev = s == Side::L ? t.lower[p - 1][q] : t.lower[p][q - 1];
        const int own = s == Side::L ? x : y;
        const int carry = s == Side::L ? y : x;
        const auto prev_at = [&](int moving, int other) {
            return s == Side::L ? prev.at(moving, other) : prev.at(other, moving);
        };
        if (step) {
            step->xprev = x;
            step->yprev = y;
        }
        switch (t.kind[si][rank]) {
            case Kind::il:
                return prev_at(own, carry) + il(b, s, rank, pos);
            case Kind::resid: {
                // The block whose position this axis prescribes.
                if (own != pos) return kInf;
                if (step) (s == Side::L ? step->xprev : step->yprev) = 0;
                return prev_at(0, carry);
            }
            case Kind::child: {
                const int e = seqs.bars[b].side(s)[rank];
                const int cb = other_end(e, b);
                const Slot old_id = low_id(b, s, rank);
                const Slot tow = toward_slot(cb, b);
                ensure(same_slot(old_id, tow), "facing slots differ at a lower-table join");
                double best = kInf;
                for (int chi = 0; chi < tow.size; ++chi) {
                    Step sub;
                    const double fold =
                        child_best(e, cb, b, pos, s == Side::L ? own : chi,
                                   s == Side::L ? chi : own, &sub);
                    if (fold == kInf) continue;
                    for (int xp = 0; xp < old_id.size; ++xp) {
                        const double base = prev_at(xp, carry);
                        if (base == kInf) continue;
                        const double lam =
                            old_id.present() ? slot_lambda(old_id.edge, tow.bar, chi, xp) : 0.0;
                        if (base + lam + fold < best) {
                            best = base + lam + fold;
                            if (step) {
                                step->chi = chi;
                                step->kchild = sub.kchild;
                                (s == Side::L ? step->xprev : step->yprev) = xp;
                            }
                        }
                    }
                }
                return best;
            }
            case Kind::parent:
                ensure(false, "parent block inside the lower table");
        }
        return kInf;
    }

    void fill_lower(int b) {
        TreeBar& t = bars[b];
        const int nl = count(b, Side::L), nr = count(b, Side::R);
        const int cap_l = t.is_root() || t.ps == Side::R ? nl : t.p_rank;
        const int cap_r = t.is_root() || t.ps == Side::L ? nr : t.p_rank;
        t.lower.assign(cap_l + 1, std::vector<Mat>(cap_r + 1));
        for (int p = 0; p <= cap_l; ++p) {
            for (int q = 0; q <= cap_r; ++q) {
                if (p == 0 && q == 0) continue;  // default Mat is the 0-cost seed
                const int nx = low_id(b, Side::L, p).size;
                const int ny = low_id(b, Side::R, q).size;
                Mat cell(nx, ny, kInf);
                cell.from.assign(std::size_t(nx) * ny, 0);
                for (int x = 0; x < nx; ++x) {
                    for (int y = 0; y < ny; ++y) {
                        const double vl =
                            p > 0 ? lower_branch(b, p, q, Side::L, x, y, nullptr) : kInf;
                        const double vr =
                            q > 0 ? lower_branch(b, p, q, Side::R, x, y, nullptr) : kInf;
                        const bool right = q > 0 && (p == 0 || vr <= vl);
                        cell.at(x, y) = right ? vr : vl;
                        cell.from[std::size_t(x) * ny + y] = right ? 1 : 0;
                    }
                }
                t.lower[p][q] = std::move(cell);
            }
        }
    }

    // ---- upper table ----
    // Cell (a, c) covers the top a parent-side and top c opposite-side
    // blocks; each step adds the lowest block remaining in the part. The x
    // axis ranges over up_inner(c), the y axis over up_outer(c).

    double upper_branch(int b, int a, int c, int which, int x, int y, Step* step) const {
        const TreeBar& t = bars[b];
        const Side os = opposite(t.ps);
        const int nps = count(b, t.ps), nos = count(b, os);
        if (step) {
            step->xprev = x;
            step->yprev = y;
        }
        if (which == 0) {  // parent-side block; nothing dependent lives up here
            const int rank = nps - a;
            ensure(t.kind[t.ps == Side::L ? 0 : 1][rank] == Kind::il,
                   "dependent parent-side block above the parent block");
            return t.upper[a - 1][c].at(x, y) + il(b, t.ps, rank, nos - c);
        }
        const int si = os == Side::L ? 0 : 1;
        const int rank = nos - c;
        const int pos = nps - a;
        const Mat& prev = t.upper[a][c - 1];
        switch (t.kind[si][rank]) {
            case Kind::il:
                return prev.at(x, y) + il(b, os, rank, pos);
            case Kind::resid: {
                const Slot inner = up_inner(b, c - 1);
                if (inner.present()) {
                    // Both endpoints known now: close the boundary link.
                    ensure(inner.edge == own_resid(b, os).edge,
                           "open inner slot is not this bar's own residual link");
                    double best = kInf;
                    for (int xp = 0; xp < inner.size; ++xp) {
                        const double base = prev.at(xp, y);
                        if (base == kInf) continue;
                        const double v = base + slot_lambda(inner.edge, b, pos, xp);
                        if (v < best) {
                            best = v;
                            if (step) step->xprev = xp;
                        }
                    }
                    return best;
                }
                // No children on this side: the block's position feeds the
                // subtree-level outer parameter directly.
                if (y != pos) return kInf;
                if (step) step->yprev = 0;
                return prev.at(x, 0);
            }
            case Kind::child: {
                const int e = seqs.bars[b].side(os)[rank];
                const int cb = other_end(e, b);
                const Slot away = away_slot(cb, b);
                bool first = true;  // no farther child already in the part
                for (const auto& [r2, cb2] : t.child[si]) {
                    if (r2 > rank) first = false;
                }
                if (first) {
                    // Farthest child: its outward slot becomes the part's
                    // outer parameter, nothing to couple with yet.
                    ensure(prev.nx == 1 && prev.ny == 1,
                           "upper part carries parameters before its first join");
                    Step sub;
                    const double fold =
                        child_best(e, cb, b, pos, os == Side::L ? y : x,
                                   os == Side::L ? x : y, &sub);
                    if (fold == kInf) return kInf;
                    if (step) {
                        step->xprev = 0;
                        step->yprev = 0;
                        step->kchild = sub.kchild;
                    }
                    return prev.at(0, 0) + fold;
                }
                const Slot inner = up_inner(b, c - 1);
                ensure(same_slot(inner, away), "facing slots differ at an upper-table join");
                double best = kInf;
                for (int chi = 0; chi < away.size; ++chi) {
                    Step sub;
                    const double fold =
                        child_best(e, cb, b, pos, os == Side::L ? chi : x,
                                   os == Side::L ? x : chi, &sub);
                    if (fold == kInf) continue;
                    for (int xp = 0; xp < inner.size; ++xp) {
                        const double base = prev.at(xp, y);
                        if (base == kInf) continue;
                        const double lam =
                            inner.present() ? slot_lambda(inner.edge, away.bar, chi, xp) : 0.0;
                        if (base + lam + fold < best) {
                            best = base + lam + fold;
                            if (step) {
                                step->chi = chi;
                                step->kchild = sub.kchild;
                                step->xprev = xp;
                            }
                        }
                    }
                }
                return best;
            }
            case Kind::parent:
                ensure(false, "parent block inside the upper table");
        }
        return kInf;
    }

    void fill_upper(int b) {
        TreeBar& t = bars[b];
        const Side os = opposite(t.ps);
        const int na = count(b, t.ps) - 1 - t.p_rank;
        const int nos = count(b, os);
        t.upper.assign(na + 1, std::vector<Mat>(nos + 1));
        for (int a = 0; a <= na; ++a) {
            for (int c = 0; c <= nos; ++c) {
                if (a == 0 && c == 0) continue;
                const int nx = up_inner(b, c).size;
                const int ny = up_outer(b, c).size;
                Mat cell(nx, ny, kInf);
                cell.from.assign(std::size_t(nx) * ny, 0);
                for (int x = 0; x < nx; ++x) {
                    for (int y = 0; y < ny; ++y) {
                        const double vp = a > 0 ? upper_branch(b, a, c, 0, x, y, nullptr) : kInf;
                        const double vo = c > 0 ? upper_branch(b, a, c, 1, x, y, nullptr) : kInf;
                        const bool opp = c > 0 && (a == 0 || vo <= vp);
                        cell.at(x, y) = opp ? vo : vp;
                        cell.from[std::size_t(x) * ny + y] = opp ? 1 : 0;
                    }
                }
                t.upper[a][c] = std::move(cell);
            }
        }
    }

    // ---- combining both parts around the parent block ----
    // The subtree table P(k, l, r): parent block at position k, boundary
    // slots pinned at l (left) and r (right). The lower part always holds
    // the parent-side boundary; the opposite boundary sits in whichever part
    // got that side's outermost blocks, and when the parts split a residual
    // link between them, the leftover slot pair is paid off right here.

    double combine_cell(int b, int k, int l, int r, Choice* choice) const {
        const TreeBar& t = bars[b];
        const Side os = opposite(t.ps);
        const int nos = count(b, os);
        const int na = count(b, t.ps) - 1 - t.p_rank;
        const Mat& low = t.ps == Side::L ? t.lower[t.p_rank][k] : t.lower[k][t.p_rank];
        const Mat& up = t.upper[na][nos - k];
        const Slot slot_a = low_id(b, os, k);
        const Slot slot_in = up_inner(b, nos - k);
        const Slot os_slot = t.ps == Side::L ? t.rslot : t.lslot;
        if (os_slot.present() && slot_a.present() && os_slot.edge == slot_a.edge) {
            ensure(!slot_in.present() && up.nx == 1 && up.ny == 1,
                   "upper part still parameterized while the lower part owns the boundary");
            if (choice) choice->direct = true;
            return low.at(l, r) + up.at(0, 0);
        }
        ensure(same_slot(slot_a, slot_in), "parts disagree on the split residual link");
        ensure(same_slot(os_slot, up_outer(b, nos - k)),
               "upper part's outer slot is not the subtree boundary");
        double best = kInf;
        for (int a2 = 0; a2 < slot_a.size; ++a2) {
            const double lo = t.ps == Side::L ? low.at(l, a2) : low.at(a2, r);
            if (lo == kInf) continue;
            for (int b2 = 0; b2 < slot_in.size; ++b2) {
                const double hi = up.at(b2, t.ps == Side::L ? r : l);
                if (hi == kInf) continue;
                const double lam =
                    slot_a.present() ? slot_lambda(slot_a.edge, slot_a.bar, a2, b2) : 0.0;
                if (lo + hi + lam < best) {
                    best = lo + hi + lam;
                    if (choice) {
                        choice->direct = false;
                        choice->a2 = a2;
                        choice->b2 = b2;
                    }
                }
            }
        }
        return best;
    }

    void fill_p(int b) {
        TreeBar& t = bars[b];
        const Side os = opposite(t.ps);
        const int nos = count(b, os);
        ensure(same_slot(low_id(b, t.ps, t.p_rank), t.ps == Side::L ? t.lslot : t.rslot),
               "lower part's parent-side slot is not the subtree boundary");
        t.p.assign(nos + 1, Mat(t.lslot.size, t.rslot.size, kInf));
        for (int k = 0; k <= nos; ++k) {
            for (int l = 0; l < t.lslot.size; ++l) {
                for (int r = 0; r < t.rslot.size; ++r) {
                    t.p[k].at(l, r) = combine_cell(b, k, l, r, nullptr);
                }
            }
        }
    }

    // ---- reconstruction ----

    std::vector<StackEntry> walk_lower(int b, int p, int q, int x, int y) {
        const TreeBar& t = bars[b];
        std::vector<StackEntry> top_down;
        while (p > 0 || q > 0) {
            const bool right = t.lower[p][q].branch(x, y) != 0;
            const Side s = right ? Side::R : Side::L;
            Step step;
            lower_branch(b, p, q, s, x, y, &step);
            const int rank = (right ? q : p) - 1;
            top_down.push_back({s, rank});
            if (t.kind[right ? 1 : 0][rank] == Kind::child) {
                const int e = seqs.bars[b].side(s)[rank];
                emit(other_end(e, b), step.kchild, right ? step.chi : x, right ? y : step.chi);
            }
            x = step.xprev;
            y = step.yprev;
            if (right) {
                --q;
            } else {
                --p;
            }
        }
        return top_down;
    }

    void walk_upper(int b, int a, int c, int x, int y) {
        const TreeBar& t = bars[b];
        const Side os = opposite(t.ps);
        const int nps = count(b, t.ps), nos = count(b, os);
        std::vector<StackEntry>& stack = layout.stacks[b];
        while (a > 0 || c > 0) {
            const bool opp = t.upper[a][c].branch(x, y) != 0;
            Step step;
            upper_branch(b, a, c, opp ? 1 : 0, x, y, &step);
            if (!opp) {
                stack.push_back({t.ps, nps - a});
                --a;
            } else {
                const int rank = nos - c;
                stack.push_back({os, rank});
                const int si = os == Side::L ? 0 : 1;
                if (t.kind[si][rank] == Kind::child) {
                    const int e = seqs.bars[b].side(os)[rank];
                    bool first = true;
                    for (const auto& [r2, cb2] : t.child[si]) {
                        if (r2 > rank) first = false;
                    }
                    const int out_pos = first ? y : step.chi;  // away-slot position
                    const int cl = os == Side::L ? out_pos : x;
                    const int cr = os == Side::L ? x : out_pos;
                    emit(other_end(e, b), step.kchild, cl, cr);
                }
                --c;
            }
            x = step.xprev;
            y = step.yprev;
        }
    }

    // Write bar b's stacking (and recursively its whole subtree's) for the
    // parent block at position k and boundary slots pinned at (l, r).
    void emit(int b, int k, int l, int r) {
        const TreeBar& t = bars[b];
        const Side os = opposite(t.ps);
        const int nos = count(b, os);
        Choice choice;
        combine_cell(b, k, l, r, &choice);
        int lx, ly;
        if (choice.direct) {
            lx = l;
            ly = r;
        } else if (t.ps == Side::L) {
            lx = l;
            ly = choice.a2;
        } else {
            lx = choice.a2;
            ly = r;
        }
        std::vector<StackEntry> below = walk_lower(
            b, t.ps == Side::L ? t.p_rank : k, t.ps == Side::L ? k : t.p_rank, lx, ly);
        std::reverse(below.begin(), below.end());
        std::vector<StackEntry>& stack = layout.stacks[b];
        stack.insert(stack.end(), below.begin(), below.end());
        stack.push_back({t.ps, t.p_rank});
        const int na = count(b, t.ps) - 1 - t.p_rank;
        if (choice.direct) {
            walk_upper(b, na, nos - k, 0, 0);
        } else {
            walk_upper(b, na, nos - k, choice.b2, t.ps == Side::L ? r : l);
        }
    }

    void emit_root(int b) {
        std::vector<StackEntry> all =
            walk_lower(b, count(b, Side::L), count(b, Side::R), 0, 0);
        std::reverse(all.begin(), all.end());
        layout.stacks[b] = std::move(all);
    }

    // ---- driving ----

    void classify(int b) {
        TreeBar& t = bars[b];
        t.pe = ext.forest.parent_edge[b];
        t.pb = ext.forest.parent_bar[b];
        for (int si = 0; si < 2; ++si) {
            const Side s = si == 0 ? Side::L : Side::R;
            const std::vector<int>& seq = seqs.bars[b].side(s);
            t.kind[si].assign(seq.size(), Kind::il);
            for (int rank = 0; rank < static_cast<int>(seq.size()); ++rank) {
                const int e = seq[rank];
                if (e == t.pe) {
                    t.kind[si][rank] = Kind::parent;
                    t.ps = s;
                    t.p_rank = rank;
                } else if (table.links[e].dependent() && ext.in_f[e]) {
                    t.kind[si][rank] = Kind::child;
                    t.child[si].push_back({rank, other_end(e, b)});
                } else if (table.links[e].dependent()) {
                    ensure(rank == 0 && table.links[e].kind == LinkKind::adjacent_dependent,
                           "residual link away from the innermost rank");
                    t.kind[si][rank] = Kind::resid;
                }
            }
        }
        if (t.is_root()) {
            t.ps = Side::L;
            t.p_rank = count(b, Side::L);  // virtual: the lower table covers everything
        }
    }

    double solve_trees() {
        for (int b : ext.forest.order) classify(b);
        for (auto it = ext.forest.order.rbegin(); it != ext.forest.order.rend(); ++it) {
            const int b = *it;
            TreeBar& t = bars[b];
            t.lm = t.rm = b;
            for (int si = 0; si < 2; ++si) {
                for (const auto& [rank, cb] : t.child[si]) {
                    t.lm = std::min(t.lm, bars[cb].lm);
                    t.rm = std::max(t.rm, bars[cb].rm);
                }
            }
            if (t.lm > 0 && residual_edge(adj_edge[t.lm - 1])) {
                t.lslot = Slot{adj_edge[t.lm - 1], t.lm, count(t.lm, Side::R) + 1};
            }
            if (residual_edge(adj_edge[t.rm])) {
                t.rslot = Slot{adj_edge[t.rm], t.rm, count(t.rm, Side::L) + 1};
            }
            fill_lower(b);
            if (!t.is_root()) {
                fill_upper(b);
                fill_p(b);
            }
        }
        double total = 0.0;
        for (int r : ext.forest.roots) {
            const Mat& fin = bars[r].lower[count(r, Side::L)][count(r, Side::R)];
            ensure(fin.nx == 1 && fin.ny == 1, "root table still carries boundary parameters");
            total += fin.at(0, 0);
            emit_root(r);
        }
        return total;
    }
};

}  // namespace

SolveResult solve_nadl_forest(const WeightedGraph& graph, const Sequences& seqs,
                              const LinkTable& table) {
    NadlForestCheck check = extend_forest(graph, table);
    if (!check.acyclic) {
        throw PreconditionError("distant-link solver: distant dependent links contain a cycle through " +
                                std::to_string(check.cycle.size()) + " links");
    }

    Solver solver(graph, seqs, table, check.ext);
    SolveResult res;
    res.cost = solver.solve_trees();

    // Bars outside every tree carry independent blocks only.
    std::vector<char> in_tree(graph.n(), 0);
    for (int b : check.ext.forest.order) in_tree[b] = 1;
    for (int b = 0; b < graph.n(); ++b) {
        if (in_tree[b]) continue;
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
