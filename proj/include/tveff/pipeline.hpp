#ifndef TVEFF_PIPELINE_HPP
#define TVEFF_PIPELINE_HPP

#include <cstdint>
#include <string>

#include <json.hpp>

namespace tveff {

inline constexpr const char* kVersion = "0.1.0";

/// One run of the command pipeline. `command` is one of: impute, unit-root,
/// fit-var, fit-tvvar, efficiency, event-study, simulate.
struct RunConfig {
    std::string command;
    std::string input;            // price CSV; scenario JSON for `simulate`
    std::string events_file;      // event list CSV (event-study only)
    std::string out_dir = ".";

    int seasonal_period = 12;
    bool impute_on_levels = false;  // default fits the structural model on logs

    int p = 0;       // 0 = select by BIC up to p_max
    int p_max = 8;

    double weight = 0.0;  // 0 = choose by rolling forecast error

    int replications = 0;  // 0 = command default (5000 bands, 1000 events)
    double level = 0.95;
    std::uint64_t seed = 0;

    int estimation_window = 24;
    int lead = 3;
    int lag = 3;
};

/// Parses a RunConfig back out of a previously written manifest.
RunConfig config_from_manifest(const std::string& manifest_path);

/// Executes the configured command, writing stage outputs and a manifest
/// JSON into out_dir. Returns the manifest. Throws tveff::Error on any stage
/// failure; outputs of completed stages are left in place.
nlohmann::ordered_json run_pipeline(const RunConfig& config);

}  // namespace tveff

#endif  // TVEFF_PIPELINE_HPP
