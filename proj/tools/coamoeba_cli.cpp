#include <iostream>

#include <CLI11.hpp>

#include "coamoeba/cli.hpp"

int main(int argc, char** argv) {
    namespace cli = coamoeba::cli;
    CLI::App app{"Coamoeba shells of exponential polynomials"};
    cli::Options opts;
    std::uint64_t seed = 0, mc_samples = 0;
    std::size_t grid = 0;
    std::vector<double> eval, x_range;
    std::string out, cloud;

    app.add_option("command", opts.command, "Subcommand")->required()->check(CLI::IsMember(cli::commands()));
    app.add_option("--input", opts.input, "Problem file (JSON)")->required();
    app.add_flag("--json", opts.json_output, "Print the report as JSON");
    auto* out_opt = app.add_option("--out", out, "Output path for sample/plot");
    auto* seed_opt = app.add_option("--seed", seed, "Random seed");
    auto* mc_opt = app.add_option("--mc-samples", mc_samples, "Monte Carlo samples per external angle")
                       ->check(CLI::PositiveNumber);
    auto* eval_opt = app.add_option("--eval", eval, "Point y1,...,yn")->delimiter(',');
    app.add_flag("--grad", opts.grad, "Also evaluate the gradient");
    auto* grid_opt = app.add_option("--grid", grid, "Sampler grid resolution")->check(CLI::PositiveNumber);
    auto* x_opt = app.add_option("--x-range", x_range, "Sampler range a,b of Re z2")->delimiter(',')->expected(2);
    auto* cloud_opt = app.add_option("--cloud", cloud, "Cloud CSV to overlay in plots");

    try {
        app.parse(argc, argv);
    } catch (const CLI::CallForHelp& e) {
        return app.exit(e);
    } catch (const CLI::ParseError& e) {
        app.exit(e);
        return 2;
    }
    if (*out_opt)
        opts.out = out;
    if (*seed_opt)
        opts.seed = seed;
    if (*mc_opt)
        opts.mc_samples = mc_samples;
    if (*eval_opt)
        opts.eval = eval;
    if (*grid_opt)
        opts.grid = grid;
    if (*x_opt)
        opts.x_range = std::pair{x_range[0], x_range[1]};
    if (*cloud_opt)
        opts.cloud = cloud;

    const cli::Outcome outcome = cli::run(opts);
    (outcome.exit_code == 2 ? std::cerr : std::cout) << outcome.text;
    return outcome.exit_code;
}
