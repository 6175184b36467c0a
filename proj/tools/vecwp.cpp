#include <iostream>

#include <CLI11.hpp>

#include "vecwp/errors.hpp"
#include "vecwp/runner.hpp"

int main(int argc, char** argv) {
    CLI::App app{"Well-posedness diagnostics for finite-dimensional vector optimization"};
    app.set_version_flag("--version", std::string(vecwp::kToolVersion));

    std::string subcommand;
    std::string format = "record";
    vecwp::RunConfig cfg;

    app.add_option("subcommand", subcommand,
                   "distance | analyze | classify | tykhonov-check | dh-check | perturb | pipeline | probe | replicate")
        ->required();
    app.add_option("--problem", cfg.problem, "Registry label");
    app.add_option("--config", cfg.config, "Problem file (JSON)");
    app.add_option("--grid", cfg.grid, "Lattice nodes per axis");
    app.add_option("--sigma", cfg.sigma, "Pipeline distance budget")->check(CLI::PositiveNumber);
    app.add_option("--n", cfg.n, "Tikhonov index (perturb) or family size (probe)");
    app.add_option("--seed", cfg.seed, "Random seed");
    app.add_option("--tol", cfg.tol, "Comparison tolerance")->check(CLI::PositiveNumber);
    app.add_option("--point", cfg.points, "Decision point, comma separated; repeatable");
    app.add_option("--y", cfg.y, "Objective-space vector for distance");
    app.add_option("--xi", cfg.xi, "Dual functional");
    app.add_option("--out", cfg.out, "Output file (stdout when omitted)");
    app.add_option("--format", format, "record | csv");

    try {
        app.parse(argc, argv);
    } catch (const CLI::ParseError& e) {
        return app.exit(e) == 0 ? 0 : 2;
    }
    try {
        cfg.subcommand = vecwp::parse_subcommand(subcommand);
        cfg.format = vecwp::parse_format(format);
    } catch (const vecwp::Error& e) {
        std::cerr << "error.kind=" << vecwp::to_string(e.kind()) << "\nerror.message=" << e.what() << '\n';
        return 2;
    }
    return vecwp::run(cfg, std::cout, std::cerr);
}
