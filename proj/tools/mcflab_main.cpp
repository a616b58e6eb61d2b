// mcflab: numerical laboratory for rotationally symmetric translating
// solutions of graphical mean curvature flow.

#include <CLI11.hpp>
#include <iostream>

#include "mcflab/cli_run.hpp"

int main(int argc, char** argv) {
    CLI::App app{"translating-soliton laboratory for graphical mean curvature flow"};
    app.require_subcommand(1);

    std::string config_file;
    std::vector<std::string> overrides;
    std::string outdir;

    for (const auto& name : mcflab::cli::subcommands()) {
        CLI::App* sub = app.add_subcommand(name);
        sub->add_option("-c,--config", config_file,
                        "config file (key = value lines, # comments)");
        sub->add_option("-s,--set", overrides,
                        "override: key=value (repeatable, wins over file)");
        sub->add_option("-o,--out", outdir, "output directory");
    }

    CLI11_PARSE(app, argc, argv);

    try {
        std::string sub = app.get_subcommands().front()->get_name();
        mcflab::cli::RunConfig cfg = mcflab::cli::parse_config(config_file, overrides);
        if (!outdir.empty()) cfg.values["out"] = outdir;
        return mcflab::cli::run(sub, cfg, std::cout, std::cerr);
    } catch (const mcflab::ConfigurationError& e) {
        std::cerr << "configuration error: " << e.what() << "\n";
        return 2;
    } catch (const std::exception& e) {
        std::cerr << "error: " << e.what() << "\n";
        return 1;
    }
}
