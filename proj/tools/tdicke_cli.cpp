#include <iostream>
#include <map>
#include <string>

#include "CLI11.hpp"

#include "tdicke/config.hpp"
#include "tdicke/runner.hpp"

namespace {

struct Inputs {
    std::string config_file;
    std::string replay_file;
    std::map<std::string, std::string> flags;
};

void add_config_flags(CLI::App* cmd, Inputs& in) {
    cmd->add_option("--config", in.config_file, "flat key = value config file");
    for (const auto& key : tdicke::config_keys())
        cmd->add_option("--" + key, in.flags[key], "config key '" + key + "'");
}

tdicke::RunConfig resolve(const Inputs& in) {
    tdicke::KeyValues file_values;
    if (!in.replay_file.empty()) file_values = tdicke::read_config_echo(in.replay_file);
    if (!in.config_file.empty()) {
        auto extra = tdicke::read_config_file(in.config_file);
        file_values.insert(file_values.end(), extra.begin(), extra.end());
    }
    tdicke::KeyValues flag_values;
    for (const auto& key : tdicke::config_keys()) {
        auto it = in.flags.find(key);
        if (it != in.flags.end() && !it->second.empty()) flag_values.emplace_back(key, it->second);
    }
    return tdicke::resolve_config(file_values, flag_values);
}

std::string preset_listing() {
    std::string out = "presets:\n";
    for (const auto& p : tdicke::presets()) out += "  " + p.name + "  " + p.description + "\n";
    return out;
}

} // namespace

int main(int argc, char** argv) {
    CLI::App app{"Timed-Dicke single-photon decay simulator"};
    app.footer(preset_listing());

    Inputs run_in;
    auto* run_cmd = app.add_subcommand("run", "propagate and write trajectory CSV files");
    add_config_flags(run_cmd, run_in);
    run_cmd->add_option("--replay", run_in.replay_file, "re-run from the config echo of a CSV file");

    Inputs spec_in;
    auto* spec_cmd = app.add_subcommand("spectrum", "write sorted TD-generator eigenvalues");
    add_config_flags(spec_cmd, spec_in);

    auto* presets_cmd = app.add_subcommand("presets", "list scenario presets");

    if (argc <= 1) {
        std::cerr << "usage: tdicke {run|spectrum|presets} [--preset NAME] [--key value ...]\n"
                  << preset_listing();
        return 2;
    }

    CLI11_PARSE(app, argc, argv);

    try {
        if (*presets_cmd) {
            std::cout << preset_listing();
        } else if (*run_cmd) {
            for (const auto& path : tdicke::run(resolve(run_in))) std::cout << path << "\n";
        } else if (*spec_cmd) {
            for (const auto& path : tdicke::spectrum(resolve(spec_in))) std::cout << path << "\n";
        } else {
            std::cerr << app.help() << preset_listing();
            return 2;
        }
    } catch (const tdicke::Error& e) {
        std::cerr << "tdicke: " << e.what() << "\n";
        return e.code() == tdicke::ErrorCode::usage ? 2 : 1;
    } catch (const std::exception& e) {
        std::cerr << "tdicke: " << e.what() << "\n";
        return 1;
    }
    return 0;
}
