#include <CLI11.hpp>
#include <iostream>

#include "hardyop/run.hpp"

int main(int argc, char** argv) {
    CLI::App app{"Classify weighted composition operators on weighted Hardy spaces of entire functions"};
    app.require_subcommand(1);

    std::string config_path;
    hardyop::RunOptions opts;
    std::uint64_t seed = 0;

    auto add_common = [&](CLI::App* sub) {
        sub->add_option("config", config_path, "JSON run configuration")->required();
        sub->add_option("--out", opts.out_dir, "Directory for report files");
        sub->add_option("--seed", seed, "Seed for randomized property checks (overrides the config)");
        sub->add_option("--jobs", opts.jobs, "Worker threads")->check(CLI::PositiveNumber);
    };
    CLI::App* run_cmd = app.add_subcommand("run", "Classify every operator in the config");
    CLI::App* sweep_cmd = app.add_subcommand("sweep", "Classify a Cartesian parameter sweep");
    add_common(run_cmd);
    add_common(sweep_cmd);

    try {
        app.parse(argc, argv);
    } catch (const CLI::ParseError& e) {
        int code = app.exit(e);
        return code == 0 ? 0 : 1;
    }

    CLI::App* active = run_cmd->parsed() ? run_cmd : sweep_cmd;
    if (active->count("--seed") > 0) opts.seed = seed;

    try {
        hardyop::RunConfig cfg = hardyop::load_config(config_path);
        hardyop::RunResult result = run_cmd->parsed() ? hardyop::run(cfg, opts) : hardyop::sweep(cfg, opts);
        for (const auto& f : result.files) std::cout << "wrote " << f << "\n";
        if (result.exit_status != 0) std::cerr << "some verdicts disagree; see the report\n";
        return result.exit_status;
    } catch (const hardyop::ConfigError& e) {
        std::cerr << "config error: " << e.what() << "\n";
        return 1;
    } catch (const hardyop::InvalidArgument& e) {
        std::cerr << "input error: " << e.what() << "\n";
        return 1;
    } catch (const std::exception& e) {
        std::cerr << "error: " << e.what() << "\n";
        return 1;
    }
}
