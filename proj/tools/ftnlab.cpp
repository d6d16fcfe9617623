#include "ftnlab/cli.hpp"

#include "CLI11.hpp"

#include <iostream>

int main(int argc, char** argv) {
    CLI::App app{"Kirkwood-Dirac / Margenau-Hill first-time-negativity sweeps on Ising chains"};
    app.require_subcommand(1);

    std::string config;
    int workers = 0;
    std::string out_dir = ".";

    auto* run = app.add_subcommand("run", "Execute a sweep and write CSV/JSON/SVG outputs");
    run->add_option("config", config, "JSON config file")->required();
    run->add_option("--workers", workers, "Worker threads (default: FTNLAB_WORKERS or all cores)")->check(CLI::PositiveNumber);
    run->add_option("--out", out_dir, "Output directory");

    auto* val = app.add_subcommand("validate", "Parse and check a config, print the plan");
    val->add_option("config", config, "JSON config file")->required();

    app.add_subcommand("version", "Print the version");

    try {
        app.parse(argc, argv);
    } catch (const CLI::ParseError& e) {
        const int rc = app.exit(e);
        return rc == 0 ? 0 : ftnlab::kExitConfig;
    }

    if (*run) return ftnlab::run_command(config, workers, out_dir, std::cerr);
    if (*val) return ftnlab::validate_command(config, std::cout, std::cerr);
    std::cout << "ftnlab " << ftnlab::version_string() << "\n";
    return 0;
}
