#include <fstream>
#include <iostream>
#include <map>
#include <sstream>
#include <string>

#include <CLI11.hpp>

#include "paracool/commands.hpp"
#include "paracool/config.hpp"
#include "paracool/errors.hpp"

namespace {

std::string read_file(const std::string &path) {
    std::ifstream in(path);
    if (!in) {
        throw paracool::ConfigError("cannot read config file '" + path + "'");
    }
    std::ostringstream ss;
    ss << in.rdbuf();
    return ss.str();
}

}  // namespace

int main(int argc, char **argv) {
    CLI::App app{"Parametric feedback cooling simulator"};
    app.require_subcommand(1);

    std::string config_path;
    std::string output;
    std::string seed;
    int workers = 0;
    std::map<std::string, std::string> overrides;

    for (const auto &name : paracool::kSubcommands) {
        CLI::App *sub = app.add_subcommand(name);
        sub->add_option("-c,--config", config_path, "Configuration file (key = value lines)");
        sub->add_option("-o,--output", output, "Output CSV path (default <subcommand>.csv)");
        sub->add_option("--seed", seed, "Random seed");
        sub->add_option("--workers", workers, "OpenMP worker count (0 = runtime default)")->check(CLI::NonNegativeNumber);
        for (const auto &key : paracool::config_keys()) {
            if (key == "seed") {
                continue;
            }
            sub->add_option_function<std::string>(
                "--" + key, [&overrides, key](const std::string &v) { overrides[key] = v; },
                "Override config key " + key);
        }
    }

    try {
        app.parse(argc, argv);
    } catch (const CLI::ParseError &e) {
        int rc = app.exit(e);
        return rc == 0 ? paracool::kExitOk : paracool::kExitUsage;
    }

    std::string subcommand = app.get_subcommands().front()->get_name();
    if (!seed.empty()) {
        overrides["seed"] = seed;
    }

    try {
        std::string text = config_path.empty() ? std::string() : read_file(config_path);
        paracool::RunConfig cfg = paracool::parse_config(text, subcommand, overrides);
        return paracool::run_subcommand(cfg, output, workers, std::cout);
    } catch (const paracool::ConfigError &e) {
        std::cerr << "config error: " << e.what() << "\n";
        return paracool::kExitUsage;
    } catch (const paracool::InvalidParameter &e) {
        std::cerr << "invalid parameter: " << e.what() << "\n";
        return paracool::kExitUsage;
    } catch (const paracool::IntegrationFailure &e) {
        std::cerr << "integration failure at t=" << e.last_good_time() << ": " << e.what() << "\n";
        return paracool::kExitNumeric;
    } catch (const paracool::TruncationError &e) {
        std::cerr << "Fock truncation failure at t=" << e.time() << ": " << e.what() << "\n";
        return paracool::kExitNumeric;
    } catch (const paracool::Error &e) {
        std::cerr << "numeric failure: " << e.what() << "\n";
        return paracool::kExitNumeric;
    }
}
