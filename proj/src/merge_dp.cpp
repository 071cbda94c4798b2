#include "linkedbars/merge_dp.hpp"

#include <algorithm>
#include <cassert>
#include <limits>

namespace linkedbars {

MergeResult solve_bar(int nl, int nr, const BlockCost& left_cost, const BlockCost& right_cost) {
    assert(nl >= 0 && nr >= 0);
    const int w = nr + 1;
    std::vector<double> d(static_cast<size_t>(nl + 1) * w, 0.0);
    // choice[p*w+q]: whether the top block of the (p,q) prefix comes from L or R.
    std::vector<unsigned char> from_right(d.size(), 0);

    for (int p = 0; p <= nl; ++p) {
        for (int q = 0; q <= nr; ++q) {
            if (p == 0 && q == 0) continue;
            double best = std::numeric_limits<double>::infinity();
            unsigned char right = 0;
            if (p > 0) best = d[(p - 1) * w + q] + left_cost(p - 1, q);
            if (q > 0) {
                const double rv = d[p * w + (q - 1)] + right_cost(q - 1, p);
                // On ties strip the right block first when backtracking, which
                // leaves left blocks at the bottom of the stacking.
                if (rv <= best) {
                    best = rv;
                    right = 1;
                }
            }
            d[p * w + q] = best;
            from_right[p * w + q] = right;
        }
    }

    MergeResult res;
    res.cost = d[nl * w + nr];
    res.cells = static_cast<long long>(nl + 1) * (nr + 1);
    res.order.reserve(nl + nr);
    int p = nl, q = nr;
    while (p > 0 || q > 0) {
        if (from_right[p * w + q]) {
            res.order.push_back(Side::R);
            --q;
        } else {
            res.order.push_back(Side::L);
            --p;
        }
    }
    std::reverse(res.order.begin(), res.order.end());
    return res;
}

IndependentResult solve_independent(const WeightedGraph& graph, const Sequences& seqs,
                                    const LinkTable& table) {
    for (const LinkRecord& rec : table.links) {
        if (rec.dependent()) {
            throw PreconditionError(
                "independent-links solver called on a chart with dependent links");
        }
    }

    IndependentResult res;
    res.layout.stacks.resize(graph.n());
    for (int b = 0; b < graph.n(); ++b) {
        const BarSequences& bar = seqs.bars[b];
        const auto cost = [&](Side s) {
            return [&, s](int idx, int k) { return independent_block_cost(graph, seqs, table, b, s, idx, k); };
        };
        MergeResult merged = solve_bar(static_cast<int>(bar.left.size()),
                                       static_cast<int>(bar.right.size()),
                                       cost(Side::L), cost(Side::R));
        res.cells += merged.cells;
        res.cost += merged.cost;
        auto& stack = res.layout.stacks[b];
        int l = 0, r = 0;
        for (Side s : merged.order) {
            stack.push_back(StackEntry{s, s == Side::L ? l++ : r++});
        }
    }
    return res;
}

}  // namespace linkedbars
