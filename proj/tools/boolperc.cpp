#include <cstdio>
#include <iostream>
#include <string>

#include <CLI11.hpp>

#include "boolperc/config.hpp"
#include "boolperc/errors.hpp"
#include "boolperc/runner.hpp"
#include "boolperc/version.hpp"

int main(int argc, char** argv) {
    CLI::App app{"Boolean-model percolation experiments"};
    app.set_version_flag("--version", boolperc::kVersion);
    app.require_subcommand(1);

    std::string config_path;
    std::string out_override;
    std::uint64_t seed_override = 0;
    bool have_seed = false;
    int workers_override = 0;

    CLI::App* run = app.add_subcommand("run", "run the experiment described by a config file");
    run->add_option("--config", config_path, "config file (key = value text or JSON)")->required();
    run->add_option("--seed", seed_override, "override master_seed")->trigger_on_parse();
    run->add_option("--out", out_override, "override output directory");
    run->add_option("--workers", workers_override, "override worker count");
    run->callback([&] { have_seed = run->count("--seed") > 0; });

    CLI::App* validate = app.add_subcommand("validate", "check a config file and exit");
    validate->add_option("--config", config_path, "config file")->required();

    app.add_subcommand("schema", "print the config schema");

    CLI11_PARSE(app, argc, argv);

    try {
        if (app.got_subcommand("schema")) {
            std::cout << boolperc::config_schema();
            return 0;
        }
        boolperc::ExperimentConfig cfg = boolperc::ExperimentConfig::from_file(config_path);
        if (app.got_subcommand("validate")) {
            cfg.resolved().validate();
            std::cout << "ok: " << cfg.kind << "\n";
            return 0;
        }
        if (have_seed) cfg.master_seed = seed_override;
        if (!out_override.empty()) cfg.out_dir = out_override;
        if (workers_override > 0) cfg.workers = workers_override;
        boolperc::run_experiment(cfg);
        std::cout << "wrote " << cfg.out_dir << "\n";
        return 0;
    } catch (const boolperc::ConfigError& e) {
        std::cerr << "config error: " << e.what() << "\n";
        return 1;
    } catch (const std::exception& e) {
        std::cerr << "error: " << e.what() << "\n";
        return 2;
    }
}
