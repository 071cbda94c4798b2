#include "linkedbars/cost.hpp"

#include <algorithm>
#include <cassert>
#include <cmath>
#include <sstream>

namespace linkedbars {

double block_center(const WeightedGraph& graph, const BarSequences& bar, Side side, int idx,
                    int k) {
    const std::vector<int>& own = bar.side(side);
    assert(idx >= 0 && idx < static_cast<int>(own.size()));
    assert(k >= 0 && k <= static_cast<int>(bar.side(opposite(side)).size()));
    const double h = graph.edges[own[idx]].weight;
    return h / 2.0 + bar.base + bar.pref(side)[idx] + bar.pref(opposite(side))[k];
}

double link_cost(const WeightedGraph& graph, const Sequences& seqs, const LinkTable& table,
                 int edge, int i, int j) {
    const Edge& ed = graph.edges[edge];
    const double y_u =
        block_center(graph, seqs.bars[ed.u], Side::R, table.rank_at_u[edge], i);
    const double y_v =
        block_center(graph, seqs.bars[ed.v], Side::L, table.rank_at_v[edge], j);
    const double H = table.links[edge].over_height;
    if (H > y_u && H > y_v) {
        return (H - y_u) + (H - y_v);
    }
    return std::abs(y_u - y_v);
}

double independent_block_cost(const WeightedGraph& graph, const Sequences& seqs,
                              const LinkTable& table, int bar, Side side, int idx, int k) {
    const int edge = seqs.bars[bar].side(side)[idx];
    const LinkRecord& rec = table.links[edge];
    assert(!rec.dependent());
    const double y = block_center(graph, seqs.bars[bar], side, idx, k);
    return std::abs(rec.target - y);
}

LayoutPositions layout_positions(const WeightedGraph& graph, const Sequences& seqs,
                                 const ChartLayout& layout) {
    LayoutPositions pos;
    pos.at.assign(graph.m(), {0, 0});
    for (int b = 0; b < graph.n(); ++b) {
        const BarSequences& bar = seqs.bars[b];
        int seen_l = 0;
        int seen_r = 0;
        for (const StackEntry& entry : layout.stacks[b]) {
            const int k = entry.side == Side::L ? seen_r : seen_l;
            const int edge = bar.side(entry.side)[entry.idx];
            if (entry.side == Side::L) {
                pos.at[edge].second = k;  // this bar is the edge's right endpoint
                ++seen_l;
            } else {
                pos.at[edge].first = k;
                ++seen_r;
            }
        }
    }
    return pos;
}

LayoutCosts evaluate_layout(const WeightedGraph& graph, const Sequences& seqs,
                            const LinkTable& table, const ChartLayout& layout) {
    const LayoutPositions pos = layout_positions(graph, seqs, layout);
    LayoutCosts costs;
    costs.per_link.resize(graph.m());
    for (int e = 0; e < graph.m(); ++e) {
        costs.per_link[e] = link_cost(graph, seqs, table, e, pos.at[e].first, pos.at[e].second);
        costs.total += costs.per_link[e];
    }
    return costs;
}

std::vector<LayoutViolation> validate_layout(const WeightedGraph& graph, const Sequences& seqs,
                                             const ChartLayout& layout) {
    std::vector<LayoutViolation> out;
    if (layout.stacks.size() != static_cast<size_t>(graph.n())) {
        out.push_back({0, "layout has " + std::to_string(layout.stacks.size()) +
                              " stacks for " + std::to_string(graph.n()) + " bars"});
        return out;
    }
    auto edge_label = [&](int e) {
        std::ostringstream os;
        os << "(" << graph.edges[e].u + 1 << "," << graph.edges[e].v + 1 << ")";
        return os.str();
    };
    for (int b = 0; b < graph.n(); ++b) {
        const BarSequences& bar = seqs.bars[b];
        std::vector<int> seen_l(bar.left.size(), 0), seen_r(bar.right.size(), 0);
        int last_l = -1;
        int last_r = -1;
        for (const StackEntry& entry : layout.stacks[b]) {
            const std::vector<int>& own = bar.side(entry.side);
            if (entry.idx < 0 || entry.idx >= static_cast<int>(own.size())) {
                out.push_back({b, "bar " + std::to_string(b + 1) + ": block rank " +
                                      std::to_string(entry.idx) + " out of range"});
                continue;
            }
            std::vector<int>& seen = entry.side == Side::L ? seen_l : seen_r;
            int& last = entry.side == Side::L ? last_l : last_r;
            if (++seen[entry.idx] > 1) {
                out.push_back({b, "bar " + std::to_string(b + 1) + ": block for edge " +
                                      edge_label(own[entry.idx]) + " stacked twice"});
            }
            if (entry.idx < last) {
                out.push_back({b, "bar " + std::to_string(b + 1) + ": blocks for edges " +
                                      edge_label(own[entry.idx]) + " and " +
                                      edge_label(own[last]) + " appear out of side order"});
            }
            last = std::max(last, entry.idx);
        }
        for (size_t i = 0; i < seen_l.size(); ++i) {
            if (seen_l[i] == 0) {
                out.push_back({b, "bar " + std::to_string(b + 1) + ": block for edge " +
                                      edge_label(bar.left[i]) + " missing from stack"});
            }
        }
        for (size_t i = 0; i < seen_r.size(); ++i) {
            if (seen_r[i] == 0) {
                out.push_back({b, "bar " + std::to_string(b + 1) + ": block for edge " +
                                      edge_label(bar.right[i]) + " missing from stack"});
            }
        }
    }
    return out;
}

LinkRoute link_route(const WeightedGraph& graph, const Sequences& seqs, const LinkTable& table,
                     int edge, int i, int j) {
    const Edge& ed = graph.edges[edge];
    const double y_u = block_center(graph, seqs.bars[ed.u], Side::R, table.rank_at_u[edge], i);
    const double y_v = block_center(graph, seqs.bars[ed.v], Side::L, table.rank_at_v[edge], j);
    const double H = table.links[edge].over_height;

    const double xu = 2.0 * ed.u + 0.5;
    const double xv = 2.0 * ed.v + 0.5;
    const double right_gap = 2.0 * ed.u + 1.5;  // gap just right of bar u
    const double left_gap = 2.0 * ed.v - 0.5;   // gap just left of bar v

    LinkRoute route;
    if (y_u < H && y_v < H) {
        route.bends = 4;
        route.points = {{xu, y_u},      {right_gap, y_u}, {right_gap, H},
                        {left_gap, H},  {left_gap, y_v},  {xv, y_v}};
    } else if (y_u != y_v) {
        route.bends = 2;
        const double jog = y_u < y_v ? right_gap : left_gap;
        route.points = {{xu, y_u}, {jog, y_u}, {jog, y_v}, {xv, y_v}};
    } else {
        route.bends = 0;
        route.points = {{xu, y_u}, {xv, y_v}};
    }

#ifndef NDEBUG
    double vertical = 0.0;
    for (size_t p = 1; p < route.points.size(); ++p) {
        vertical += std::abs(route.points[p].y - route.points[p - 1].y);
    }
    assert(vertical == link_cost(graph, seqs, table, edge, i, j));
#endif
    return route;
}

}  // namespace linkedbars
