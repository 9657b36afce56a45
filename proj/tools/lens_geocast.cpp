// lens-geocast: analytic + Monte Carlo studies of lens/zone connectivity on a
// cell-partitioned highway, and a two-phase geocast delivery simulator.

#include <cstdint>
#include <fstream>
#include <iostream>
#include <sstream>
#include <string>

#include <CLI11.hpp>

#include "ibgp/commands.hpp"
#include "ibgp/config.hpp"

namespace {

struct Options {
    std::string config_path;
    std::string out_path;
    std::uint64_t seed = 0;
    bool seed_set = false;
    long long trials = 0;
    bool trials_set = false;
};

int dispatch(const std::string& command, const Options& opt) {
    std::ifstream config_file(opt.config_path);
    if (!config_file) {
        std::cerr << "error: cannot open config file '" << opt.config_path << "'\n";
        return 2;
    }
    std::stringstream buffer;
    buffer << config_file.rdbuf();

    ibgp::ScenarioConfig cfg = ibgp::parse_config(buffer.str());
    if (opt.seed_set) cfg.seed = opt.seed;
    if (opt.trials_set) {
        if (opt.trials < 100) throw ibgp::ConfigError("mc.trials: must be >= 100");
        cfg.trials = opt.trials;
    }
    if (!opt.out_path.empty()) cfg.out_path = opt.out_path;

    std::ostringstream body;
    ibgp::CommandStats stats;
    if (command == "analyze") {
        stats = ibgp::run_analyze(cfg, body);
    } else if (command == "simulate") {
        stats = ibgp::run_simulate(cfg, body);
    } else if (command == "tables") {
        stats = ibgp::run_tables(cfg, body);
    } else {
        stats = ibgp::run_geocast(cfg, body);
    }

    if (cfg.out_path) {
        std::ofstream out(*cfg.out_path, std::ios::binary);
        if (!out) {
            std::cerr << "error: cannot open output file '" << *cfg.out_path << "'\n";
            return 1;
        }
        out << body.str();
    } else {
        std::cout << body.str();
    }
    if (stats.rows > 0 && stats.error_rows == stats.rows) return 3;
    return 0;
}

}  // namespace

int main(int argc, char** argv) {
    CLI::App app{"Intersection-area geocast connectivity model for a cell-partitioned highway"};
    app.require_subcommand(1);

    Options opt;
    const auto add_common = [&](CLI::App* sub) {
        sub->add_option("--config", opt.config_path, "scenario config file")->required();
        sub->add_option("--out", opt.out_path, "output file (default: output.path or stdout)");
        sub->add_option("--seed", opt.seed, "override mc.seed")->each([&](const std::string&) {
            opt.seed_set = true;
        });
        sub->add_option("--trials", opt.trials, "override mc.trials")->each([&](const std::string&) {
            opt.trials_set = true;
        });
    };
    add_common(app.add_subcommand("analyze", "emit analytic void probabilities over the sweep grid"));
    add_common(app.add_subcommand("simulate", "emit analytic values with Monte Carlo estimates"));
    add_common(app.add_subcommand("tables", "regenerate the void/presence table structures"));
    add_common(app.add_subcommand("geocast", "run the geocast delivery simulation per policy"));

    CLI11_PARSE(app, argc, argv);

    try {
        return dispatch(app.get_subcommands().front()->get_name(), opt);
    } catch (const ibgp::ConfigError& e) {
        std::cerr << "config error: " << e.what() << "\n";
        return 2;
    } catch (const std::exception& e) {
        std::cerr << "error: " << e.what() << "\n";
        return 1;
    }
}
