#include "linkedbars/driver.hpp"

#include <json.hpp>

#include <chrono>
#include <cmath>
#include <stdexcept>

#include "linkedbars/forest.hpp"
#include "linkedbars/fpt.hpp"
#include "linkedbars/nadl_forest.hpp"
#include "linkedbars/oracle.hpp"

namespace linkedbars {

using nlohmann::ordered_json;

const char* algorithm_name(Algorithm a) {
    switch (a) {
        case Algorithm::automatic: return "auto";
        case Algorithm::no_dl: return "no-dl";
        case Algorithm::forest: return "forest";
        case Algorithm::nadl_forest: return "nadl-forest";
        case Algorithm::fpt: return "fpt";
        case Algorithm::brute: return "brute";
    }
    return "?";
}

Algorithm algorithm_from_name(const std::string& name) {
    for (Algorithm a : {Algorithm::automatic, Algorithm::no_dl, Algorithm::forest,
                        Algorithm::nadl_forest, Algorithm::fpt, Algorithm::brute}) {
        if (name == algorithm_name(a)) return a;
    }
    throw ValidationError("unknown algorithm \"" + name +
                          "\" (expected auto, no-dl, forest, nadl-forest, fpt or brute)");
}

Diagnostics analyze(const WeightedGraph& graph, const Sequences& seqs, const LinkTable& table) {
    Diagnostics d;
    for (const LinkRecord& l : table.links) {
        switch (l.kind) {
            case LinkKind::independent: ++d.independent; break;
            case LinkKind::adjacent_dependent: ++d.adjacent_dependent; break;
            case LinkKind::distant_dependent: ++d.distant_dependent; break;
        }
    }
    d.dependent_forest = dl_forest(graph, table).acyclic;
    d.extended_forest = extend_forest(graph, table).acyclic;
    d.max_degree = table.max_degree;
    d.max_dependent_degree = table.max_dl_degree;
    d.layouts = layout_count(seqs);
    return d;
}

Algorithm choose_algorithm(const Diagnostics& diag) {
    if (diag.adjacent_dependent + diag.distant_dependent == 0) return Algorithm::no_dl;
    if (diag.dependent_forest) return Algorithm::forest;
    if (diag.extended_forest) return Algorithm::nadl_forest;
    return Algorithm::fpt;
}

namespace {

const char* kind_name(LinkKind kind) {
    switch (kind) {
        case LinkKind::independent: return "independent";
        case LinkKind::adjacent_dependent: return "adjacent-dependent";
        case LinkKind::distant_dependent: return "distant-dependent";
    }
    return "?";
}

bool close(double a, double b) {
    return std::abs(a - b) <= 1e-9 * std::max({1.0, std::abs(a), std::abs(b)});
}

}  // namespace

RunOutcome run_solve(const WeightedGraph& graph, const Sequences& seqs, const LinkTable& table,
                     const RunConfig& config) {
    RunOutcome out;
    out.diagnostics = analyze(graph, seqs, table);
    out.used = config.algorithm == Algorithm::automatic ? choose_algorithm(out.diagnostics)
                                                        : config.algorithm;

    const auto start = std::chrono::steady_clock::now();
    switch (out.used) {
        case Algorithm::no_dl: {
            IndependentResult res = solve_independent(graph, seqs, table);
            out.result = {res.cost, std::move(res.layout)};
            break;
        }
        case Algorithm::forest:
            out.result = solve_forest(graph, seqs, table);
            break;
        case Algorithm::nadl_forest:
            out.result = solve_nadl_forest(graph, seqs, table);
            break;
        case Algorithm::fpt: {
            FptConfig fpt;
            fpt.state_budget = config.state_budget;
            out.result = solve_fpt(graph, seqs, table, fpt);
            break;
        }
        case Algorithm::brute:
            out.result = brute_force(graph, seqs, table, config.oracle_budget);
            break;
        case Algorithm::automatic:
            throw std::logic_error("automatic dispatch did not resolve");
    }
    out.seconds = std::chrono::duration<double>(std::chrono::steady_clock::now() - start).count();

    const auto violations = validate_layout(graph, seqs, out.result.layout);
    if (!violations.empty()) {
        throw std::logic_error("solver produced an invalid stacking for bar " +
                               std::to_string(violations.front().bar + 1) + ": " +
                               violations.front().message);
    }
    out.costs = evaluate_layout(graph, seqs, table, out.result.layout);
    if (!close(out.costs.total, out.result.cost)) {
        throw std::logic_error("solver cost does not match its own layout");
    }

    if (config.oracle_check && out.diagnostics.layouts <= config.oracle_budget) {
        SolveResult oracle = brute_force(graph, seqs, table, config.oracle_budget);
        if (!close(oracle.cost, out.result.cost)) {
            throw std::logic_error("solver disagrees with exhaustive search: got " +
                                   std::to_string(out.result.cost) + ", expected " +
                                   std::to_string(oracle.cost));
        }
        out.oracle_checked = true;
    }
    return out;
}

std::string layout_report_json(const Instance& inst, const Sequences& seqs,
                               const LinkTable& table, const RunOutcome& outcome) {
    ordered_json root;
    root["algorithm"] = algorithm_name(outcome.used);
    root["total_cost"] = outcome.result.cost;

    root["bars"] = ordered_json::array();
    for (int b = 0; b < inst.graph.n(); ++b) {
        ordered_json stack = ordered_json::array();
        for (const StackEntry& entry : outcome.result.layout.stacks[b]) {
            stack.push_back(edge_name(inst, seqs.bars[b].side(entry.side)[entry.idx]));
        }
        root["bars"].push_back({{"id", inst.ids[b]}, {"stack", std::move(stack)}});
    }

    root["links"] = ordered_json::array();
    for (int e = 0; e < inst.graph.m(); ++e) {
        const Edge& edge = inst.graph.edges[e];
        root["links"].push_back({{"name", edge_name(inst, e)},
                                 {"u", inst.ids[edge.u]},
                                 {"v", inst.ids[edge.v]},
                                 {"weight", edge.weight},
                                 {"kind", kind_name(table.links[e].kind)},
                                 {"cost", outcome.costs.per_link[e]}});
    }

    const Diagnostics& d = outcome.diagnostics;
    root["diagnostics"] = {{"bars", inst.graph.n()},
                           {"links", inst.graph.m()},
                           {"independent", d.independent},
                           {"adjacent_dependent", d.adjacent_dependent},
                           {"distant_dependent", d.distant_dependent},
                           {"dependent_forest", d.dependent_forest},
                           {"extended_forest", d.extended_forest},
                           {"max_degree", d.max_degree},
                           {"max_dependent_degree", d.max_dependent_degree},
                           {"layouts", d.layouts}};
    return root.dump(2) + "\n";
}

std::string human_table(const Instance& inst, const Sequences& seqs, const LinkTable& table,
                        const RunOutcome& outcome) {
    std::string out;
    out += "algorithm: ";
    out += algorithm_name(outcome.used);
    out += "\ntotal vertical link length: " + format_number(outcome.result.cost) + "\n";

    size_t id_width = 3;
    for (const std::string& id : inst.ids) id_width = std::max(id_width, id.size());
    out += "\nbar" + std::string(id_width - 3, ' ') + "  stack (bottom to top)\n";
    for (int b = 0; b < inst.graph.n(); ++b) {
        out += inst.ids[b] + std::string(id_width - inst.ids[b].size(), ' ') + "  ";
        const auto& stack = outcome.result.layout.stacks[b];
        if (stack.empty()) out += "(no linked blocks)";
        for (size_t i = 0; i < stack.size(); ++i) {
            if (i > 0) out += " ";
            out += edge_name(inst, seqs.bars[b].side(stack[i].side)[stack[i].idx]);
        }
        out += "\n";
    }

    size_t name_width = 4;
    for (int e = 0; e < inst.graph.m(); ++e) {
        name_width = std::max(name_width, edge_name(inst, e).size());
    }
    if (inst.graph.m() > 0) {
        out += "\nlink" + std::string(name_width - 4, ' ') + "  kind                cost\n";
        for (int e = 0; e < inst.graph.m(); ++e) {
            const std::string name = edge_name(inst, e);
            std::string kind = kind_name(table.links[e].kind);
            kind += std::string(19 - std::min<size_t>(kind.size(), 19) + 1, ' ');
            out += name + std::string(name_width - name.size(), ' ') + "  " + kind +
                   format_number(outcome.costs.per_link[e]) + "\n";
        }
    }

    const Diagnostics& d = outcome.diagnostics;
    out += "\ndiagnostics: " + std::to_string(d.independent) + " independent, " +
           std::to_string(d.adjacent_dependent) + " adjacent-dependent, " +
           std::to_string(d.distant_dependent) + " distant-dependent link(s); " +
           "dependent links form a forest: " + (d.dependent_forest ? "yes" : "no") +
           "; extended structure acyclic: " + (d.extended_forest ? "yes" : "no") +
           "; max degree " + std::to_string(d.max_degree) + "; max dependent degree " +
           std::to_string(d.max_dependent_degree) + "; " + format_number(d.layouts) +
           " stackings\n";
    return out;
}

}  // namespace linkedbars
