#include <CLI11.hpp>
#include <json.hpp>

#include <cstdio>
#include <filesystem>
#include <fstream>
#include <iostream>

#include "tveff/errors.hpp"
#include "tveff/pipeline.hpp"

namespace {

using tveff::RunConfig;

void add_common_flags(CLI::App* cmd, RunConfig& cfg, std::string& manifest_path) {
    cmd->add_option("--input", cfg.input, "input price CSV (scenario JSON for simulate)");
    cmd->add_option("--out", cfg.out_dir, "output directory");
    cmd->add_option("--seed", cfg.seed, "base seed for all random substreams");
    cmd->add_option("--seasonal-period", cfg.seasonal_period, "imputation seasonal period");
    cmd->add_flag("--impute-on-levels", cfg.impute_on_levels,
                  "fit the imputation model on price levels instead of logs");
    cmd->add_option("--p", cfg.p, "VAR lag order (0 = select by BIC)");
    cmd->add_option("--p-max", cfg.p_max, "lag ceiling for BIC selection");
    cmd->add_option("--weight", cfg.weight,
                    "TV-VAR smoothness weight (0 = choose by rolling forecast error)");
    cmd->add_option("--reps", cfg.replications,
                    "bootstrap replications (default 5000 for bands, 1000 for events)");
    cmd->add_option("--level", cfg.level, "confidence level");
    cmd->add_option("--events", cfg.events_file, "event list CSV (event-study)");
    cmd->add_option("--estimation-window", cfg.estimation_window,
                    "event-study estimation window (months)");
    cmd->add_option("--lead", cfg.lead, "event window lead");
    cmd->add_option("--lag", cfg.lag, "event window lag");
    cmd->add_option("--from-manifest", manifest_path,
                    "re-run with the full configuration stored in a manifest");
}

void write_error_json(const RunConfig& cfg, const std::string& code,
                      const std::string& detail) {
    nlohmann::ordered_json j;
    j["error"] = code;
    j["detail"] = detail;
    std::cerr << j.dump() << "\n";
    if (!cfg.out_dir.empty()) {
        std::error_code ec;
        std::filesystem::create_directories(cfg.out_dir, ec);
        if (!ec) {
            std::ofstream out(std::filesystem::path(cfg.out_dir) / "error.json");
            if (out) out << j.dump(2) << "\n";
        }
    }
}

}  // namespace

int main(int argc, char** argv) {
    CLI::App app{"Time-varying market efficiency toolkit"};
    app.require_subcommand(1);

    RunConfig cfg;
    std::string manifest_path;
    const std::vector<std::pair<std::string, std::string>> commands = {
        {"impute", "fill interior gaps with the seasonal structural model"},
        {"unit-root", "ADF-GLS stationarity tests with MBIC lag selection"},
        {"fit-var", "time-invariant VAR with HAC errors and the constancy test"},
        {"fit-tvvar", "time-varying VAR coefficient path and efficiency degrees"},
        {"efficiency", "efficiency path with bootstrap null bands"},
        {"event-study", "bootstrap CAR inference around intervention events"},
        {"simulate", "generate a synthetic scenario with a known efficiency path"},
    };
    for (const auto& [name, help] : commands) {
        add_common_flags(app.add_subcommand(name, help), cfg, manifest_path);
    }

    CLI11_PARSE(app, argc, argv);

    cfg.command = app.get_subcommands().front()->get_name();
    try {
        if (!manifest_path.empty()) {
            cfg = tveff::config_from_manifest(manifest_path);
        }
        tveff::run_pipeline(cfg);
        return 0;
    } catch (const tveff::Error& e) {
        write_error_json(cfg, e.code(), e.what());
        return 2;
    } catch (const std::exception& e) {
        write_error_json(cfg, "Internal", e.what());
        return 1;
    }
}
