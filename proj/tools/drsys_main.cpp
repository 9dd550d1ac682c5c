#include <CLI11.hpp>
#include <iostream>

#include "drsys/report.hpp"

int main(int argc, char** argv) {
    CLI::App app{"drsys: conjugacy checks for boundary-path shift systems"};
    app.require_subcommand(1);
    app.fallthrough();

    drsys::CommonOptions common;
    app.add_option("--seed", common.seed, "seed for sampled checks");
    app.add_option("--json", common.json_path, "write the JSON report to a file");
    app.add_flag("--quiet", common.quiet, "suppress stdout output");

    std::string graph_e, graph_f, map_path, inverse_path, weights_path, verify_mode;
    int max_period = 6;
    int depth = 3;

    auto* inv = app.add_subcommand("invariants", "graph and shift invariants");
    inv->add_option("graph", graph_e, "graph file")->required();
    inv->add_option("--max-period", max_period, "largest period to count");

    auto* conj = app.add_subcommand("check-conjugacy",
                                    "decide conjugacy of two boundary systems");
    conj->add_option("graphE", graph_e, "left graph file")->required();
    conj->add_option("graphF", graph_f, "right graph file")->required();
    conj->add_option("--map", map_path, "candidate transducer E -> F");
    conj->add_option("--inverse", inverse_path, "declared inverse F -> E");
    conj->add_option("--depth", depth, "cylinder depth for the function checks");

    auto* coc = app.add_subcommand("cocycle-intertwine",
                                   "cocycle intertwining over the groupoid generators");
    coc->add_option("graphE", graph_e, "left graph file")->required();
    coc->add_option("graphF", graph_f, "right graph file")->required();
    coc->add_option("--map", map_path, "candidate transducer E -> F")->required();
    coc->add_option("--inverse", inverse_path, "declared inverse F -> E")->required();
    coc->add_option("--depth", depth, "generator and weight depth");

    auto* cst = app.add_subcommand("cstar", "finite convolution-algebra checks");
    cst->add_option("graph", graph_e, "acyclic graph file")->required();
    cst->add_option("--verify", verify_mode, "lemma39 | prop312")->required();
    cst->add_option("--weights", weights_path, "integer weight function file");
    cst->add_option("--graphF", graph_f, "right graph (prop312)");
    cst->add_option("--map", map_path, "conjugacy transducer (prop312)");
    cst->add_option("--inverse", inverse_path, "declared inverse (prop312)");
    cst->add_option("--depth", depth, "weight family depth");

    CLI11_PARSE(app, argc, argv);

    drsys::CommandResult result;
    try {
        if (inv->parsed())
            result = drsys::cmd_invariants(graph_e, max_period, common);
        else if (conj->parsed()) {
            if (map_path.empty() != inverse_path.empty()) {
                std::cerr << "--map and --inverse must be given together\n";
                return 2;
            }
            result = drsys::cmd_check_conjugacy(graph_e, graph_f, map_path,
                                                inverse_path, depth, common);
        } else if (coc->parsed())
            result = drsys::cmd_cocycle_intertwine(graph_e, graph_f, map_path,
                                                   inverse_path, depth, common);
        else
            result = drsys::cmd_cstar(graph_e, verify_mode, weights_path, graph_f,
                                      map_path, inverse_path, depth, common);
    } catch (const std::exception& e) {
        std::cerr << "error: " << e.what() << "\n";
        return 2;
    }
    return drsys::emit_result(result, common);
}
