#pragma once

#include <string>

#include "linkedbars/cost.hpp"

// SVG rendering of a solved chart. Bars are unit-wide with unit gaps (bar b
// covers chart x in [2b, 2b+1]); the unlinked block sits on the baseline and
// linked blocks stack above it in layout order. Each link is one orthogonal
// polyline whose two blocks share the link's color. Styling only scales and
// paints; all geometry comes from the layout.

namespace linkedbars {

struct SvgStyle {
    double scale = 40.0;   // pixels per chart unit
    double margin = 20.0;  // canvas border, pixels
};

std::string render_svg(const WeightedGraph& graph, const Sequences& seqs,
                       const LinkTable& table, const ChartLayout& layout,
                       const SvgStyle& style = {});

}  // namespace linkedbars
