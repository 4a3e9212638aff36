// Experiment front end: runs analytic / bound / Monte Carlo sweeps from a
// scenario file and writes CSV, or validates a file without running it.

#include <CLI11.hpp>
#include <iostream>

#include "etmrs/runner.hpp"

int main(int argc, char** argv) {
    CLI::App app{"Outage analysis of energy-threshold multi-relay selection networks"};
    app.require_subcommand(1);

    etmrs::RunOptions options;
    bool mc = false;
    bool no_mc = false;
    std::uint64_t seed = 0;

    CLI::App* run = app.add_subcommand("run", "run a sweep and write CSV results");
    run->add_option("--config", options.config_path, "scenario file (JSON)")
        ->required()
        ->check(CLI::ExistingFile);
    run->add_option("--out", options.out_path, "output CSV path")->required();
    CLI::Option* mc_flag = run->add_flag("--mc", mc, "force Monte Carlo on");
    run->add_flag("--no-mc", no_mc, "force Monte Carlo off")->excludes(mc_flag);
    run->add_option("--threads", options.threads, "worker threads for Monte Carlo streams")
        ->check(CLI::PositiveNumber);
    CLI::Option* seed_opt =
        run->add_option("--seed", seed, "override the scenario file's RNG seed");

    std::string validate_path;
    CLI::App* validate = app.add_subcommand("validate", "check a scenario file without running");
    validate->add_option("--config", validate_path, "scenario file (JSON)")
        ->required()
        ->check(CLI::ExistingFile);

    CLI11_PARSE(app, argc, argv);

    if (run->parsed()) {
        if (mc) options.mc_override = true;
        if (no_mc) options.mc_override = false;
        if (*seed_opt) options.seed_override = seed;
        return etmrs::run_sweep(options, std::cerr);
    }
    return etmrs::validate_config(validate_path, std::cout);
}
