#include "hstoda/cli.hpp"

#include <CLI11.hpp>

#include <iostream>

int main(int argc, char** argv) {
    CLI::App app{"hstoda: Lie-Poisson lattice systems, invariants and closed-form flows"};
    std::string config;
    std::optional<std::uint64_t> seed;
    std::optional<std::string> out;
    app.add_option("--config", config, "JSON run configuration")->required();
    app.add_option("--seed", seed, "override the config seed");
    app.add_option("--out", out, "output directory");
    try {
        app.parse(argc, argv);
    } catch (const CLI::ParseError& e) {
        const int code = app.exit(e);
        return code == 0 ? 0 : hstoda::exit_config;
    }
    std::optional<std::filesystem::path> out_dir;
    if (out) out_dir = *out;
    return hstoda::run_file(config, seed, out_dir);
}
