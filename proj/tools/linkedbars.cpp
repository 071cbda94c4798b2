#include <CLI11.hpp>

#include <cmath>
#include <fstream>
#include <iostream>
#include <sstream>

#include "linkedbars/driver.hpp"
#include "linkedbars/oracle.hpp"
#include "linkedbars/svg.hpp"

using namespace linkedbars;

namespace {

std::string read_input(const std::string& path) {
    if (path == "-") {
        std::ostringstream buf;
        buf << std::cin.rdbuf();
        return buf.str();
    }
    std::ifstream in(path, std::ios::binary);
    if (!in) throw ValidationError("cannot open " + path);
    std::ostringstream buf;
    buf << in.rdbuf();
    return buf.str();
}

void write_output(const std::string& path, const std::string& text) {
    if (path == "-") {
        std::cout << text;
        return;
    }
    std::ofstream out(path, std::ios::binary);
    if (!out) throw ValidationError("cannot open " + path + " for writing");
    out << text;
}

struct Parsed {
    Instance inst;
    Sequences seqs;
    LinkTable table;
};

Parsed load(const std::string& path) {
    Parsed p;
    p.inst = parse_instance(read_input(path));
    p.seqs = build_sequences(p.inst.graph);
    p.table = classify_links(p.inst.graph, p.seqs, HeightIndex::from_sequences(p.seqs));
    return p;
}

bool close(double a, double b) {
    return std::abs(a - b) <= 1e-9 * std::max({1.0, std::abs(a), std::abs(b)});
}

int run_solve_command(const std::string& input, const std::string& algorithm,
                      const std::string& out_path, const std::string& svg_path,
                      const RunConfig& base, bool stats) {
    Parsed p = load(input);
    RunConfig config = base;
    config.algorithm = algorithm_from_name(algorithm);

    RunOutcome outcome;
    try {
        outcome = run_solve(p.inst.graph, p.seqs, p.table, config);
    } catch (const BudgetExceeded& e) {
        std::cerr << "error: " << e.what() << "\n";
        const double layouts = layout_count(p.seqs);
        if (config.algorithm != Algorithm::brute) {
            std::cerr << "hint: raise --state-budget, or use --algorithm brute to enumerate "
                      << format_number(layouts) << " stackings exhaustively\n";
        } else {
            std::cerr << "hint: raise --oracle-budget above " << format_number(layouts)
                      << " to allow the enumeration\n";
        }
        return 1;
    }

    std::cout << human_table(p.inst, p.seqs, p.table, outcome);
    if (config.oracle_check) {
        std::cout << (outcome.oracle_checked
                          ? "oracle check: passed\n"
                          : "oracle check: skipped, stacking count exceeds --oracle-budget\n");
    }
    if (stats) {
        std::cout << "solve time: " << format_number(outcome.seconds) << " s\n";
    }
    if (!out_path.empty()) {
        write_output(out_path, layout_report_json(p.inst, p.seqs, p.table, outcome));
    }
    if (!svg_path.empty()) {
        write_output(svg_path, render_svg(p.inst.graph, p.seqs, p.table, outcome.result.layout));
    }
    return 0;
}

int run_generate_command(const GeneratorParams& params, const std::string& out_path) {
    WeightedGraph g = generate_instance(params);
    Instance inst;
    inst.graph = std::move(g);
    for (int i = 0; i < inst.graph.n(); ++i) inst.ids.push_back("v" + std::to_string(i + 1));
    write_output(out_path, emit_instance(inst));
    return 0;
}

int run_check_command(const std::string& input, const RunConfig& base, bool stats) {
    Parsed p = load(input);
    const Diagnostics diag = analyze(p.inst.graph, p.seqs, p.table);

    std::vector<Algorithm> applicable;
    if (diag.adjacent_dependent + diag.distant_dependent == 0) {
        applicable.push_back(Algorithm::no_dl);
    }
    if (diag.dependent_forest) applicable.push_back(Algorithm::forest);
    if (diag.extended_forest) applicable.push_back(Algorithm::nadl_forest);
    applicable.push_back(Algorithm::fpt);
    if (diag.layouts <= base.oracle_budget) applicable.push_back(Algorithm::brute);

    bool agree = true;
    bool have_reference = false;
    double reference = 0.0;
    for (Algorithm a : applicable) {
        RunConfig config = base;
        config.algorithm = a;
        std::cout << algorithm_name(a) << ": ";
        try {
            RunOutcome outcome = run_solve(p.inst.graph, p.seqs, p.table, config);
            std::cout << format_number(outcome.result.cost);
            if (stats) std::cout << "  (" << format_number(outcome.seconds) << " s)";
            std::cout << "\n";
            if (have_reference && !close(reference, outcome.result.cost)) agree = false;
            reference = outcome.result.cost;
            have_reference = true;
        } catch (const BudgetExceeded& e) {
            std::cout << "skipped: " << e.what() << "\n";
        }
    }
    if (diag.layouts > base.oracle_budget) {
        std::cout << "brute: skipped, " << format_number(diag.layouts)
                  << " stackings exceed --oracle-budget\n";
    }
    if (!agree) {
        std::cerr << "error: solvers disagree on the optimal cost\n";
        return 1;
    }
    std::cout << "all solvers agree\n";
    return 0;
}

}  // namespace

int main(int argc, char** argv) {
    CLI::App app{"Optimal block stackings for linked bar charts"};
    app.require_subcommand(1);

    std::string input;
    std::string algorithm = "auto";
    std::string out_path;
    std::string svg_path;
    RunConfig config;
    bool stats = false;

    CLI::App* solve = app.add_subcommand("solve", "Solve an instance and report the layout");
    solve->add_option("input", input, "Instance JSON path, - for standard input")->required();
    solve->add_option("--algorithm", algorithm,
                      "auto, no-dl, forest, nadl-forest, fpt or brute (default auto)");
    solve->add_option("--out", out_path, "Write the JSON layout report here");
    solve->add_option("--svg", svg_path, "Render the solved chart here");
    solve->add_flag("--oracle-check", config.oracle_check,
                    "Verify the result against exhaustive enumeration when affordable");
    solve->add_option("--oracle-budget", config.oracle_budget,
                      "Max stackings exhaustive enumeration may visit (default 1e7)");
    solve->add_option("--state-budget", config.state_budget,
                      "Max DP entries the general solver may hold (default 5e7)");
    solve->add_flag("--stats", stats, "Print solve timing");

    GeneratorParams params;
    std::string shape = "arbitrary";
    std::string gen_out = "-";
    CLI::App* generate = app.add_subcommand("generate", "Emit a random instance");
    generate->add_option("--seed", params.seed, "Generator seed (default 0)");
    generate->add_option("--n", params.n, "Number of bars (default 6)");
    generate->add_option("--edges", params.edges, "Number of links (default 6)");
    generate->add_option("--weight-min", params.weight_min, "Smallest link weight (default 1)");
    generate->add_option("--weight-max", params.weight_max, "Largest link weight (default 8)");
    generate->add_option("--max-degree", params.max_degree,
                         "Per-bar link cap, 0 for unbounded (default 0)");
    generate->add_option("--shape", shape,
                         "arbitrary, unimodal, valley or forest-dl (default arbitrary)");
    generate->add_option("--out", gen_out, "Output path, - for standard output");

    CLI::App* check = app.add_subcommand("check",
                                         "Run every applicable solver and compare results");
    check->add_option("input", input, "Instance JSON path, - for standard input")->required();
    check->add_option("--oracle-budget", config.oracle_budget,
                      "Max stackings exhaustive enumeration may visit (default 1e7)");
    check->add_option("--state-budget", config.state_budget,
                      "Max DP entries the general solver may hold (default 5e7)");
    check->add_flag("--stats", stats, "Print per-solver timing");

    try {
        app.parse(argc, argv);
    } catch (const CLI::ParseError& e) {
        return app.exit(e);
    }

    try {
        if (solve->parsed()) {
            return run_solve_command(input, algorithm, out_path, svg_path, config, stats);
        }
        if (generate->parsed()) {
            if (shape == "arbitrary") params.shape = Shape::arbitrary;
            else if (shape == "unimodal") params.shape = Shape::unimodal;
            else if (shape == "valley") params.shape = Shape::valley;
            else if (shape == "forest-dl") params.shape = Shape::forest_dl;
            else throw ValidationError("unknown shape \"" + shape + "\"");
            return run_generate_command(params, gen_out);
        }
        return run_check_command(input, config, stats);
    } catch (const std::exception& e) {
        std::cerr << "error: " << e.what() << "\n";
        return 1;
    }
}
