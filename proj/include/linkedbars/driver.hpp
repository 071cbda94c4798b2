#pragma once

#include <string>

#include "linkedbars/io.hpp"
#include "linkedbars/merge_dp.hpp"

// Orchestration: structural diagnostics, algorithm selection, solving under
// budgets, and report generation. The CLI is a thin shell over this.

namespace linkedbars {

enum class Algorithm { automatic, no_dl, forest, nadl_forest, fpt, brute };

const char* algorithm_name(Algorithm a);

// Accepts the CLI spellings: auto, no-dl, forest, nadl-forest, fpt, brute.
Algorithm algorithm_from_name(const std::string& name);

struct Diagnostics {
    int independent = 0;
    int adjacent_dependent = 0;
    int distant_dependent = 0;
    bool dependent_forest = false;  // dependent links form a forest
    bool extended_forest = false;   // distant links plus spanning structure stay acyclic
    int max_degree = 0;
    int max_dependent_degree = 0;
    double layouts = 0.0;  // stacking combinations, the exhaustive search space
};

Diagnostics analyze(const WeightedGraph& graph, const Sequences& seqs, const LinkTable& table);

// Cheapest applicable solver, tried in order: per-bar merges when no link is
// dependent, then the forest DP, then its extension, then the
// decomposition-based general solver.
Algorithm choose_algorithm(const Diagnostics& diag);

struct RunConfig {
    Algorithm algorithm = Algorithm::automatic;
    double oracle_budget = 1e7;           // layouts brute force may enumerate
    long long state_budget = 50'000'000;  // DP entries the general solver may hold
    bool oracle_check = false;
};

struct RunOutcome {
    Algorithm used = Algorithm::automatic;
    SolveResult result;
    LayoutCosts costs;  // per-link breakdown of result.cost
    Diagnostics diagnostics;
    bool oracle_checked = false;  // skipped when layouts exceed the oracle budget
    double seconds = 0.0;
};

// Solves with the forced or auto-selected algorithm. Forced algorithms throw
// PreconditionError when the chart is outside their domain; brute force and
// the general solver throw BudgetExceeded past their budgets; a failed oracle
// check throws logic_error.
RunOutcome run_solve(const WeightedGraph& graph, const Sequences& seqs, const LinkTable& table,
                     const RunConfig& config);

// JSON layout report: algorithm, total cost, per-bar stacks as edge names
// bottom to top, per-link kind and cost, diagnostics. Byte-identical for
// identical inputs.
std::string layout_report_json(const Instance& inst, const Sequences& seqs,
                               const LinkTable& table, const RunOutcome& outcome);

// The same content as a text table for standard output.
std::string human_table(const Instance& inst, const Sequences& seqs, const LinkTable& table,
                        const RunOutcome& outcome);

}  // namespace linkedbars
