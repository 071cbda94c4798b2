#include "linkedbars/svg.hpp"

#include <algorithm>
#include <array>

#include "linkedbars/io.hpp"

namespace linkedbars {

namespace {

// Emitted geometry uses shortest round-trip decimals, so coordinates are
// exact and byte-stable.
std::string fmt(double x) { return format_number(x); }

constexpr std::array<const char*, 10> kPalette = {
    "#4e79a7", "#f28e2b", "#e15759", "#76b7b2", "#59a14f",
    "#edc949", "#af7aa1", "#ff9da7", "#9c755f", "#bab0ab",
};

const char* link_color(int edge) { return kPalette[edge % kPalette.size()]; }

void rect(std::string& out, const char* cls, const char* fill, double x, double y,
          double w, double h) {
    out += "  <rect class=\"" + std::string(cls) + "\" x=\"" + fmt(x) + "\" y=\"" + fmt(y) +
           "\" width=\"" + fmt(w) + "\" height=\"" + fmt(h) + "\" fill=\"" + fill +
           "\" stroke=\"#333333\" stroke-width=\"1\"/>\n";
}

}  // namespace

std::string render_svg(const WeightedGraph& graph, const Sequences& seqs,
                       const LinkTable& table, const ChartLayout& layout,
                       const SvgStyle& style) {
    const int n = graph.n();
    double max_height = 0.0;
    for (const BarSequences& bar : seqs.bars) {
        max_height = std::max(max_height, bar.total_height);
    }
    const double chart_width = n > 0 ? 2.0 * n - 1.0 : 0.0;
    const double width = 2.0 * style.margin + chart_width * style.scale;
    const double height = 2.0 * style.margin + max_height * style.scale;
    const auto px = [&](double x) { return style.margin + x * style.scale; };
    const auto py = [&](double y) { return style.margin + (max_height - y) * style.scale; };

    std::string out;
    out += "<?xml version=\"1.0\" encoding=\"UTF-8\"?>\n";
    out += "<svg xmlns=\"http://www.w3.org/2000/svg\" version=\"1.1\" width=\"" + fmt(width) +
           "\" height=\"" + fmt(height) + "\" viewBox=\"0 0 " + fmt(width) + " " + fmt(height) +
           "\">\n";
    out += "  <line class=\"baseline\" x1=\"" + fmt(px(0.0)) + "\" y1=\"" + fmt(py(0.0)) +
           "\" x2=\"" + fmt(px(chart_width)) + "\" y2=\"" + fmt(py(0.0)) +
           "\" stroke=\"#888888\" stroke-width=\"1\"/>\n";

    // Bars: the unlinked block on the baseline, then the stacked linked
    // blocks in layout order.
    for (int b = 0; b < n; ++b) {
        const BarSequences& bar = seqs.bars[b];
        rect(out, "bar", "#d9d9d9", px(2.0 * b), py(bar.base), style.scale,
             bar.base * style.scale);
        double lift = bar.base;
        for (const StackEntry& entry : layout.stacks[b]) {
            const int edge = bar.side(entry.side)[entry.idx];
            const double h = graph.edges[edge].weight;
            rect(out, "block", link_color(edge), px(2.0 * b), py(lift + h), style.scale,
                 h * style.scale);
            lift += h;
        }
    }

    const LayoutPositions positions = layout_positions(graph, seqs, layout);
    for (int e = 0; e < graph.m(); ++e) {
        const auto [i, j] = positions.at[e];
        const LinkRoute route = link_route(graph, seqs, table, e, i, j);
        out += "  <polyline class=\"link\" fill=\"none\" stroke=\"" +
               std::string(link_color(e)) + "\" stroke-width=\"2\" points=\"";
        for (size_t p = 0; p < route.points.size(); ++p) {
            if (p > 0) out += " ";
            out += fmt(px(route.points[p].x)) + "," + fmt(py(route.points[p].y));
        }
        out += "\"/>\n";
    }

    out += "</svg>\n";
    return out;
}

}  // namespace linkedbars
