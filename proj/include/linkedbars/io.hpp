#pragma once

#include <string>
#include <vector>

#include "linkedbars/model.hpp"

// Instance (de)serialization. The on-disk format is JSON:
//
//   {"vertices": [{"id": "a", "weight": 1}, ...],
//    "edges":    [{"u": "a", "v": "c", "weight": 2}, ...]}
//
// Vertex array order defines the bar order; ids are arbitrary non-empty
// strings and edges reference them. Everything else (ranges, duplicates,
// self-loops) is enforced by validate_instance.

namespace linkedbars {

struct Instance {
    WeightedGraph graph;
    std::vector<std::string> ids;  // per bar, in input order

    bool operator==(const Instance&) const;
};

// Throws ValidationError with a field diagnostic on malformed input.
Instance parse_instance(const std::string& text);

// Pretty-printed JSON; parse_instance(emit_instance(x)) == x.
std::string emit_instance(const Instance& inst);

// Stable name for an edge in reports: "<id(u)>~<id(v)>", plus "#2", "#3", ...
// when ids containing '~' make the joined string ambiguous.
std::string edge_name(const Instance& inst, int edge);

// Shortest decimal that parses back to exactly x ("6", "2.5", "0.1").
std::string format_number(double x);

}  // namespace linkedbars
