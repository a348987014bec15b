// Command-line front end for the Bloch hyper-sphere geometry library.

#include <CLI11.hpp>

#include "bloch/run_config.hpp"

int main(int argc, char** argv) {
    CLI::App app{"Matrix geometry of Bloch hyper-spheres and hyper-balls"};
    app.require_subcommand(1);

    bloch::RunConfig cfg;
    double lambda_value = 0.0;

    auto add_common = [&](CLI::App* sub, bool takes_lambda = false) {
        sub->add_option("--group", cfg.group, "group label (so3, so4, so5, ...)");
        sub->add_option("--two-s", cfg.twoS, "2S, doubled spin");
        if (takes_lambda)
            sub->add_option("--lambda", lambda_value, "level index (integer or half-integer)");
        sub->add_option("--grid", cfg.grid, "grid size(s)")->delimiter(',');
        sub->add_option("--chart", cfg.chart_angles, "chart angles, outermost first")
            ->delimiter(',');
        sub->add_option("--format", cfg.format, "csv|json")
            ->check(CLI::IsMember({"csv", "json"}));
        sub->add_option("--out", cfg.out_path, "output file (default stdout)");
        sub->add_option("--cache", cfg.cache_dir, "gamma-matrix cache directory");
        sub->add_option("--threads", cfg.threads, "worker threads for grids");
        sub->add_option("--tol", cfg.tol, "tolerance override");
        sub->add_option("--seed", cfg.seed, "seed for random charts");
        return sub;
    };

    add_common(app.add_subcommand("gamma", "build a gamma-matrix set and report its algebra"));
    add_common(app.add_subcommand("spectrum", "energy levels and degeneracies"));
    add_common(app.add_subcommand("qgt", "quantum geometric tensor and metric fit"), true);
    add_common(app.add_subcommand("wz", "Wilczek-Zee connection components"), true);
    auto* chern = add_common(
        app.add_subcommand("chern", "Chern numbers, closed form and quadrature"), true);
    chern->add_flag("--numeric", cfg.numeric, "also integrate numerically");
    add_common(app.add_subcommand("entropy", "von Neumann entropy over an r grid"));
    auto* bures = add_common(app.add_subcommand("bures", "Bures radial metric functions f, g"));
    bures->add_flag("--table", cfg.table, "use the published-table normalization h1 = S");
    add_common(app.add_subcommand("harmonics", "monopole harmonic samples"), true);
    add_common(app.add_subcommand("check", "run the invariant suite (--group all)"));

    try {
        app.parse(argc, argv);
    } catch (const CLI::ParseError& e) {
        int rc = app.exit(e);
        return rc == 0 ? 0 : bloch::kUsage;
    }
    CLI::App* sub = app.get_subcommands().front();
    cfg.command = sub->get_name();
    if (sub->count("--lambda")) cfg.lambda = lambda_value;
    return bloch::run_command(cfg);
}
