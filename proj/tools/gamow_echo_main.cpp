#include <cstdlib>
#include <filesystem>
#include <iostream>
#include <string>

#include <CLI11.hpp>
#include <json.hpp>

#include "gamow/scenario.hpp"

namespace fs = std::filesystem;

int main(int argc, char** argv) {
    CLI::App app{"Resonance-pole, Loschmidt-echo and decoherence scenario runner"};
    app.require_subcommand(1);

    CLI::App* run = app.add_subcommand("run", "execute a scenario config");
    std::string config_path;
    std::string out_dir;
    bool seed_examples = false;
    run->add_option("config", config_path, "scenario config (JSON)");
    run->add_option("--out", out_dir, "output directory (default: $GAMOW_ECHO_OUT_DIR or ./out)");
    run->add_flag("--seed-examples", seed_examples, "write the shipped example configs");

    CLI11_PARSE(app, argc, argv);

    if (out_dir.empty()) {
        const char* env = std::getenv("GAMOW_ECHO_OUT_DIR");
        out_dir = env ? env : "out";
    }

    if (seed_examples) {
        try {
            for (const std::string& name : gamow::seed_example_configs(out_dir))
                std::cout << "wrote " << (fs::path(out_dir) / name).string() << "\n";
        } catch (const std::exception& e) {
            std::cerr << "error: " << e.what() << "\n";
            return 2;
        }
        if (config_path.empty()) return 0;
    }

    if (config_path.empty()) {
        std::cerr << "error: no config given (and --seed-examples not requested)\n";
        return 1;
    }

    gamow::ValidationResult validated = gamow::validate_config_file(config_path);
    if (!validated.ok()) {
        nlohmann::json report{{"errors", validated.errors}};
        std::cerr << report.dump(2) << "\n";
        return 1;
    }

    try {
        gamow::RunResult result = gamow::run_scenario(*validated.config, out_dir);
        for (const std::string& w : result.warnings)
            std::cerr << "warning: " << w << "\n";
        for (const std::string& f : result.files_written)
            std::cout << "wrote " << (fs::path(out_dir) / f).string() << "\n";
        if (!result.errors.empty()) {
            nlohmann::json report{{"errors", result.errors}};
            std::cerr << report.dump(2) << "\n";
        }
        return result.exit_code;
    } catch (const std::exception& e) {
        nlohmann::json report{{"errors", {std::string("fatal: ") + e.what()}}};
        std::cerr << report.dump(2) << "\n";
        return 2;
    }
}
