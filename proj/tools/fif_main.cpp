#include <iostream>
#include <string>

#include <CLI11.hpp>

#include "fif/commands.hpp"
#include "fif/errors.hpp"

int main(int argc, char** argv) {
    CLI::App app{"Countable fractal interpolation functions with Rakotch contractions"};
    app.require_subcommand(1);

    std::string config;
    std::string out_dir, family, metric;
    fif::Overrides ov;
    std::size_t grid = 0, depth = 0, max_iter = 0;
    double tol = 0.0;
    std::uint64_t seed = 0;

    std::string chosen;
    for (const char* name : {"build", "interpolate", "attractor", "verify"}) {
        auto* sub = app.add_subcommand(name);
        sub->add_option("--config", config, "JSON run configuration")->required();
        sub->add_option("--out", out_dir, "output directory");
        sub->add_option("--grid", grid, "grid resolution R");
        sub->add_option("--depth", depth, "truncation depth N");
        sub->add_option("--tol", tol, "Picard tolerance");
        sub->add_option("--max-iter", max_iter, "Picard iteration cap");
        sub->add_option("--family", family, "vertical map family")->check(CLI::IsMember({"A", "B"}));
        sub->add_option("--seed", seed, "seed for sampled certificates");
        sub->add_option("--metric", metric, "metric for set distances")->check(CLI::IsMember({"d1", "dtheta"}));
        sub->callback([&chosen, name] { chosen = name; });
    }

    try {
        app.parse(argc, argv);
    } catch (const CLI::ParseError& e) {
        const int code = app.exit(e);
        return code == 0 ? 0 : fif::kExitMalformedConfig;
    }

    auto* sub = app.get_subcommand(chosen);
    if (sub->count("--out")) ov.out_dir = out_dir;
    if (sub->count("--grid")) ov.grid = grid;
    if (sub->count("--depth")) ov.depth = depth;
    if (sub->count("--tol")) ov.tol = tol;
    if (sub->count("--max-iter")) ov.max_iter = max_iter;
    if (sub->count("--family")) ov.family = fif::parse_family(family);
    if (sub->count("--seed")) ov.seed = seed;
    if (sub->count("--metric")) ov.metric = fif::parse_metric(metric);

    return fif::run_command(chosen, config, ov, std::cout, std::cerr);
}
