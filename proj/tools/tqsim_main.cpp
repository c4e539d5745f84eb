// tqsim_main.cpp — Command-line entry point: one subcommand per experiment.

#include <CLI11.hpp>

#include <cstdlib>
#include <iostream>
#include <string>
#include <vector>

#include "tqsim/config.hpp"

int main(int argc, char** argv) {
    CLI::App app{"tqsim: transmon-resonator model-hierarchy simulation and control"};
    app.require_subcommand(0, 1);

    std::string config_path;
    std::string out_dir;
    std::uint64_t seed = 0;
    bool seed_set = false;
    int threads = 0;
    std::vector<std::string> model_names;

    app.add_option("--config", config_path, "Run configuration file");
    app.add_option("--out", out_dir, "Output directory");
    app.add_option_function<std::uint64_t>(
           "--seed", [&](std::uint64_t v) { seed = v; seed_set = true; }, "RNG seed");
    app.add_option("--threads", threads, "Worker threads for sweep cells");
    app.add_option("--model", model_names, "Model selection (cpb, do2, do3, gr, gr3, r)")
        ->delimiter(',');

    for (const std::string& name : tqsim::experiment_names())
        app.add_subcommand(name, "Run the " + name + " experiment");

    CLI11_PARSE(app, argc, argv);

    try {
        tqsim::RunConfig cfg;
        if (!config_path.empty()) cfg = tqsim::load_config(config_path);
        const auto subs = app.get_subcommands();
        if (!subs.empty()) cfg.experiment = subs.front()->get_name();
        if (cfg.experiment.empty()) {
            std::cerr << "tqsim: no experiment selected; pass a subcommand or set "
                         "[run] experiment in the config\n";
            return 2;
        }
        if (!out_dir.empty()) cfg.out_dir = out_dir;
        else if (const char* env = std::getenv("TQSIM_OUT_DIR"); env && cfg.out_dir == "out")
            cfg.out_dir = env;
        if (seed_set) cfg.seed = seed;
        if (threads > 0) cfg.threads = threads;
        if (!model_names.empty()) {
            cfg.models.clear();
            for (const std::string& n : model_names)
                cfg.models.push_back(tqsim::variant_from_name(n));
        }
        return tqsim::run_experiment(cfg);
    } catch (const tqsim::UsageError& e) {
        std::cerr << "tqsim: " << e.what() << '\n';
        return 2;
    } catch (const std::exception& e) {
        std::cerr << "tqsim: error: " << e.what() << '\n';
        return 1;
    }
}
