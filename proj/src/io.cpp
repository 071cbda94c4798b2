#include "linkedbars/io.hpp"

#include <json.hpp>

#include <array>
#include <charconv>
#include <unordered_map>
#include <utility>

namespace linkedbars {

using nlohmann::ordered_json;

bool Instance::operator==(const Instance& o) const {
    if (ids != o.ids || graph.bar_weights != o.graph.bar_weights ||
        graph.edges.size() != o.graph.edges.size()) {
        return false;
    }
    for (size_t e = 0; e < graph.edges.size(); ++e) {
        if (graph.edges[e].u != o.graph.edges[e].u || graph.edges[e].v != o.graph.edges[e].v ||
            graph.edges[e].weight != o.graph.edges[e].weight) {
            return false;
        }
    }
    return true;
}

namespace {

std::string where(const char* kind, size_t i) {
    return std::string(kind) + " " + std::to_string(i + 1);
}

double number_field(const ordered_json& obj, const char* field, const std::string& at) {
    if (!obj.contains(field)) throw ValidationError(at + ": missing \"" + field + "\"");
    const ordered_json& v = obj.at(field);
    if (!v.is_number()) throw ValidationError(at + ": \"" + field + "\" must be a number");
    return v.get<double>();
}

std::string string_field(const ordered_json& obj, const char* field, const std::string& at) {
    if (!obj.contains(field)) throw ValidationError(at + ": missing \"" + field + "\"");
    const ordered_json& v = obj.at(field);
    if (!v.is_string()) throw ValidationError(at + ": \"" + field + "\" must be a string");
    return v.get<std::string>();
}

const ordered_json& array_field(const ordered_json& root, const char* field) {
    if (!root.contains(field)) {
        throw ValidationError(std::string("instance: missing \"") + field + "\" array");
    }
    const ordered_json& v = root.at(field);
    if (!v.is_array()) {
        throw ValidationError(std::string("instance: \"") + field + "\" must be an array");
    }
    return v;
}

}  // namespace

Instance parse_instance(const std::string& text) {
    ordered_json root;
    try {
        root = ordered_json::parse(text);
    } catch (const nlohmann::json::parse_error& e) {
        throw ValidationError(std::string("instance is not valid JSON: ") + e.what());
    }
    if (!root.is_object()) throw ValidationError("instance: top level must be an object");

    Instance inst;
    std::vector<double> weights;
    std::unordered_map<std::string, int> index_of;
    const ordered_json& vertices = array_field(root, "vertices");
    for (size_t i = 0; i < vertices.size(); ++i) {
        const std::string at = where("vertex", i);
        if (!vertices[i].is_object()) throw ValidationError(at + ": must be an object");
        std::string id = string_field(vertices[i], "id", at);
        if (id.empty()) throw ValidationError(at + ": id must be non-empty");
        if (!index_of.emplace(id, static_cast<int>(i)).second) {
            throw ValidationError(at + ": duplicate vertex id \"" + id + "\"");
        }
        weights.push_back(number_field(vertices[i], "weight", at));
        inst.ids.push_back(std::move(id));
    }

    std::vector<RawEdge> edges;
    const ordered_json& raw_edges = array_field(root, "edges");
    for (size_t e = 0; e < raw_edges.size(); ++e) {
        const std::string at = where("edge", e);
        if (!raw_edges[e].is_object()) throw ValidationError(at + ": must be an object");
        RawEdge edge;
        for (const char* endpoint : {"u", "v"}) {
            const std::string id = string_field(raw_edges[e], endpoint, at);
            auto it = index_of.find(id);
            if (it == index_of.end()) {
                throw ValidationError(at + ": unknown vertex id \"" + id + "\"");
            }
            (endpoint[0] == 'u' ? edge.u : edge.v) = it->second + 1;
        }
        edge.weight = number_field(raw_edges[e], "weight", at);
        edges.push_back(edge);
    }

    inst.graph = validate_instance(weights, edges);
    return inst;
}

std::string emit_instance(const Instance& inst) {
    ordered_json root;
    root["vertices"] = ordered_json::array();
    for (int i = 0; i < inst.graph.n(); ++i) {
        root["vertices"].push_back(
            {{"id", inst.ids[i]}, {"weight", inst.graph.bar_weights[i]}});
    }
    root["edges"] = ordered_json::array();
    for (const Edge& e : inst.graph.edges) {
        root["edges"].push_back(
            {{"u", inst.ids[e.u]}, {"v", inst.ids[e.v]}, {"weight", e.weight}});
    }
    return root.dump(2) + "\n";
}

std::string edge_name(const Instance& inst, int edge) {
    const auto base = [&inst](const Edge& e) { return inst.ids[e.u] + "~" + inst.ids[e.v]; };
    std::string name = base(inst.graph.edges[edge]);
    // Ids may themselves contain '~', so distinct edges can collide on the
    // joined string; later occurrences get a positional suffix.
    int occurrence = 1;
    for (int e = 0; e < edge; ++e) {
        if (base(inst.graph.edges[e]) == name) ++occurrence;
    }
    if (occurrence > 1) name += "#" + std::to_string(occurrence);
    return name;
}

std::string format_number(double x) {
    std::array<char, 32> buf;
    auto [end, ec] = std::to_chars(buf.data(), buf.data() + buf.size(), x);
    (void)ec;
    return std::string(buf.data(), end);
}

}  // namespace linkedbars
