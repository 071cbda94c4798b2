#include "linkedbars/model.hpp"

#include <algorithm>
#include <cassert>
#include <cmath>
#include <set>
#include <sstream>

namespace linkedbars {

namespace {

bool finite(double x) { return std::isfinite(x); }

std::string edge_name(int u, int v) {
    std::ostringstream os;
    os << "(" << u << "," << v << ")";
    return os.str();
}

}  // namespace

WeightedGraph validate_instance(const std::vector<double>& bar_weights,
                                const std::vector<RawEdge>& edges) {
    WeightedGraph g;
    const int n = static_cast<int>(bar_weights.size());
    for (int i = 0; i < n; ++i) {
        const double w = bar_weights[i];
        if (!finite(w) || w < 0.0) {
            throw ValidationError("bar " + std::to_string(i + 1) +
                                  ": weight must be finite and >= 0");
        }
    }
    g.bar_weights = bar_weights;

    std::set<std::pair<int, int>> seen;
    g.edges.reserve(edges.size());
    for (const RawEdge& e : edges) {
        if (e.u < 1 || e.u > n || e.v < 1 || e.v > n) {
            throw ValidationError("edge " + edge_name(e.u, e.v) + ": bar index out of range 1.." +
                                  std::to_string(n));
        }
        if (e.u == e.v) {
            throw ValidationError("edge " + edge_name(e.u, e.v) + ": self-loops are not allowed");
        }
        if (!finite(e.weight) || e.weight <= 0.0) {
            throw ValidationError("edge " + edge_name(e.u, e.v) +
                                  ": weight must be finite and > 0");
        }
        Edge norm;
        norm.u = std::min(e.u, e.v) - 1;
        norm.v = std::max(e.u, e.v) - 1;
        norm.weight = e.weight;
        if (!seen.insert({norm.u, norm.v}).second) {
            throw ValidationError("edge " + edge_name(e.u, e.v) +
                                  ": duplicate of an earlier edge (multigraphs are not supported)");
        }
        g.edges.push_back(norm);
    }
    return g;
}

Sequences build_sequences(const WeightedGraph& graph) {
    const int n = graph.n();
    Sequences seqs;
    seqs.bars.resize(n);

    std::vector<std::vector<int>> incident(n);
    for (int e = 0; e < graph.m(); ++e) {
        incident[graph.edges[e].u].push_back(e);
        incident[graph.edges[e].v].push_back(e);
    }

    // Sweeping bars left to right appends each edge to the R-list of its left
    // endpoint in increasing far-endpoint order; L-lists collect in increasing
    // sweep order and are reversed to get the decreasing far-endpoint order.
    for (int i = 0; i < n; ++i) {
        for (int e : incident[i]) {
            const Edge& ed = graph.edges[e];
            const int j = ed.u == i ? ed.v : ed.u;
            if (j < i) {
                seqs.bars[j].right.push_back(e);
            } else {
                seqs.bars[j].left.push_back(e);
            }
        }
    }

    for (int i = 0; i < n; ++i) {
        BarSequences& bar = seqs.bars[i];
        std::reverse(bar.left.begin(), bar.left.end());
        bar.base = graph.bar_weights[i];
        bar.pref_left.assign(bar.left.size() + 1, 0.0);
        bar.pref_right.assign(bar.right.size() + 1, 0.0);
        for (size_t k = 0; k < bar.left.size(); ++k) {
            bar.pref_left[k + 1] = bar.pref_left[k] + graph.edges[bar.left[k]].weight;
        }
        for (size_t k = 0; k < bar.right.size(); ++k) {
            bar.pref_right[k + 1] = bar.pref_right[k] + graph.edges[bar.right[k]].weight;
        }
        bar.total_height = bar.base + bar.pref_left.back() + bar.pref_right.back();
    }
    return seqs;
}

HeightIndex::HeightIndex(const std::vector<double>& heights) : n_(static_cast<int>(heights.size())) {
    table_.push_back(heights);
    for (int len = 2; len <= n_; len *= 2) {
        const std::vector<double>& prev = table_.back();
        std::vector<double> next(n_ - len + 1);
        for (int i = 0; i + len <= n_; ++i) {
            next[i] = std::max(prev[i], prev[i + len / 2]);
        }
        table_.push_back(std::move(next));
    }
}

HeightIndex HeightIndex::from_sequences(const Sequences& seqs) {
    std::vector<double> heights;
    heights.reserve(seqs.bars.size());
    for (const BarSequences& bar : seqs.bars) heights.push_back(bar.total_height);
    return HeightIndex(heights);
}

double HeightIndex::max_between(int i, int j) const {
    if (i >= j) {
        throw std::invalid_argument("max_between: bar indices must satisfy i < j");
    }
    const int lo = i + 1;
    const int hi = j - 1;  // inclusive
    if (lo > hi) return 0.0;
    const int len = hi - lo + 1;
    int level = 0;
    while ((2 << level) <= len) ++level;
    return std::max(table_[level][lo], table_[level][hi - (1 << level) + 1]);
}

LinkTable classify_links(const WeightedGraph& graph, const Sequences& seqs,
                         const HeightIndex& heights) {
    const int n = graph.n();
    const int m = graph.m();
    LinkTable table;
    table.links.resize(m);
    table.dl_degree.assign(n, 0);

    // Rank of each edge's block within its two side sequences.
    table.rank_at_u.assign(m, -1);
    table.rank_at_v.assign(m, -1);
    std::vector<int>& rank_at_u = table.rank_at_u;
    std::vector<int>& rank_at_v = table.rank_at_v;
    for (int b = 0; b < n; ++b) {
        const BarSequences& bar = seqs.bars[b];
        for (size_t k = 0; k < bar.right.size(); ++k) rank_at_u[bar.right[k]] = static_cast<int>(k);
        for (size_t k = 0; k < bar.left.size(); ++k) rank_at_v[bar.left[k]] = static_cast<int>(k);
        table.max_degree = std::max(table.max_degree, bar.degree());
    }

    for (int e = 0; e < m; ++e) {
        const Edge& ed = graph.edges[e];
        const BarSequences& bu = seqs.bars[ed.u];
        const BarSequences& bv = seqs.bars[ed.v];
        LinkRecord& rec = table.links[e];

        const double half = ed.weight / 2.0;
        rec.lo_u = half + bu.base + bu.pref_right[rank_at_u[e]];
        rec.hi_u = rec.lo_u + bu.pref_left.back();
        rec.lo_v = half + bv.base + bv.pref_left[rank_at_v[e]];
        rec.hi_v = rec.lo_v + bv.pref_right.back();
        rec.over_height = heights.max_between(ed.u, ed.v);
        const double H = rec.over_height;

        // Comparisons are exact by design: all quantities are sums of input
        // weights, so equal values compare equal when weights are integers.
        if (H >= rec.hi_u || H >= rec.hi_v) {
            rec.kind = LinkKind::independent;
            rec.target = H;
        } else if (rec.lo_u >= rec.hi_v) {
            rec.kind = LinkKind::independent;
            rec.target = rec.lo_u;
        } else if (rec.hi_u <= rec.lo_v) {
            rec.kind = LinkKind::independent;
            rec.target = rec.lo_v;
        } else if (rec.hi_u == rec.lo_u) {
            rec.kind = LinkKind::independent;
            rec.target = rec.hi_u;
        } else if (rec.hi_v == rec.lo_v) {
            rec.kind = LinkKind::independent;
            rec.target = rec.hi_v;
        } else {
            rec.kind = ed.v == ed.u + 1 ? LinkKind::adjacent_dependent : LinkKind::distant_dependent;
            ++table.dl_degree[ed.u];
            ++table.dl_degree[ed.v];
        }
    }

    for (int b = 0; b < n; ++b) {
        table.max_dl_degree = std::max(table.max_dl_degree, table.dl_degree[b]);
    }
    return table;
}

std::optional<std::pair<int, int>> find_crossing_dependent_pair(const WeightedGraph& graph,
                                                                const LinkTable& table) {
    std::vector<int> dls;
    for (int e = 0; e < graph.m(); ++e) {
        if (table.links[e].dependent()) dls.push_back(e);
    }
    for (size_t a = 0; a < dls.size(); ++a) {
        const Edge& ea = graph.edges[dls[a]];
        for (size_t b = a + 1; b < dls.size(); ++b) {
            const Edge& eb = graph.edges[dls[b]];
            const bool cross = (ea.u < eb.u && eb.u < ea.v && ea.v < eb.v) ||
                               (eb.u < ea.u && ea.u < eb.v && eb.v < ea.v);
            if (cross) return std::make_pair(dls[a], dls[b]);
        }
    }
    return std::nullopt;
}

}  // namespace linkedbars
