#include <cstdio>
#include <cstdlib>
#include <exception>
#include <string>

#include "CLI11.hpp"
#include "pslab/scenario.hpp"

namespace {

// --out beats the config value, which beats PSLAB_OUT_DIR, which beats
// the current directory.
void resolve_out_dir(pslab::ScenarioConfig& config, const std::string& cli_out,
                     bool config_had_out) {
    if (!cli_out.empty()) {
        config.out_dir = cli_out;
        return;
    }
    if (config_had_out)
        return;
    if (const char* env = std::getenv("PSLAB_OUT_DIR"); env && *env)
        config.out_dir = env;
}

int execute(const std::string& config_path, const std::string& cli_out,
            int jobs, long long seed, bool force_oracle) {
    try {
        auto config = pslab::load_scenario(config_path);
        if (force_oracle && config.kind != "oracle-suite") {
            std::fprintf(stderr,
                         "error: 'pslab oracle' needs an oracle-suite config "
                         "(field 'kind' is '%s')\n",
                         config.kind.c_str());
            return 2;
        }
        const bool config_had_out = config.out_dir != ".";
        resolve_out_dir(config, cli_out, config_had_out);
        if (jobs > 0)
            config.jobs = jobs;
        if (seed >= 0)
            config.seed = static_cast<std::uint64_t>(seed);

        const auto result = pslab::run_scenario(config);
        std::printf("%s\n", result.summary.c_str());
        for (const auto& f : result.files)
            std::printf("  wrote %s\n", f.c_str());
        return result.exit_code;
    } catch (const std::invalid_argument& e) {
        std::fprintf(stderr, "error: %s\n", e.what());
        return 2;
    } catch (const std::exception& e) {
        std::fprintf(stderr, "error: %s\n", e.what());
        return 2;
    }
}

} // namespace

int main(int argc, char** argv) {
    CLI::App app{"Rearrangement stability workbench"};
    app.require_subcommand(1);

    std::string config_path, out_dir;
    int jobs = 0;
    long long seed = -1;

    auto* run = app.add_subcommand("run", "Execute a scenario config");
    run->add_option("config", config_path, "Scenario JSON file")->required();
    run->add_option("--out", out_dir, "Output directory");
    run->add_option("--jobs", jobs, "Parallel workers for sweeps");
    run->add_option("--seed", seed, "Override the config random seed");

    auto* oracle = app.add_subcommand("oracle", "Run the oracle cross-checks");
    oracle->add_option("config", config_path, "Oracle-suite JSON file")
        ->required();
    oracle->add_option("--out", out_dir, "Output directory");

    try {
        app.parse(argc, argv);
    } catch (const CLI::ParseError& e) {
        const int code = app.exit(e);
        return code == 0 ? 0 : 2;
    }

    return execute(config_path, out_dir, jobs, seed,
                   oracle->parsed());
}
