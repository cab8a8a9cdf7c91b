#include "tveff/pipeline.hpp"

#include <algorithm>
#include <filesystem>
#include <fstream>
#include <vector>

#include "tveff/csv.hpp"
#include "tveff/errors.hpp"
#include "tveff/eventstudy.hpp"
#include "tveff/impute.hpp"
#include "tveff/rng.hpp"
#include "tveff/synth.hpp"
#include "tveff/tvvar.hpp"
#include "tveff/unitroot.hpp"
#include "tveff/var.hpp"

namespace tveff {

namespace fs = std::filesystem;
using json = nlohmann::ordered_json;

namespace {

void validate_config(const RunConfig& cfg) {
    static const std::vector<std::string> commands = {
        "impute", "unit-root", "fit-var", "fit-tvvar",
        "efficiency", "event-study", "simulate"};
    if (std::find(commands.begin(), commands.end(), cfg.command) == commands.end()) {
        throw InvalidConfig("unknown command '" + cfg.command + "'");
    }
    if (cfg.input.empty()) throw InvalidConfig("--input is required");
    if (cfg.replications != 0 && cfg.replications < 100) {
        throw InvalidConfig("replications must be at least 100");
    }
    if (!(cfg.level > 0.5 && cfg.level < 1.0)) {
        throw InvalidConfig("confidence level must lie in (0.5, 1)");
    }
    if (cfg.seasonal_period < 1) throw InvalidConfig("seasonal period must be positive");
    if (cfg.p < 0 || cfg.p_max < 1) throw InvalidConfig("bad lag configuration");
    if (cfg.command == "event-study" && cfg.events_file.empty()) {
        throw InvalidConfig("event-study needs --events");
    }
}

json config_json(const RunConfig& cfg) {
    json j;
    j["command"] = cfg.command;
    j["input"] = cfg.input;
    j["events_file"] = cfg.events_file;
    j["out_dir"] = cfg.out_dir;
    j["seasonal_period"] = cfg.seasonal_period;
    j["impute_on_levels"] = cfg.impute_on_levels;
    j["p"] = cfg.p;
    j["p_max"] = cfg.p_max;
    j["weight"] = cfg.weight;
    j["replications"] = cfg.replications;
    j["level"] = cfg.level;
    j["seed"] = cfg.seed;
    j["estimation_window"] = cfg.estimation_window;
    j["lead"] = cfg.lead;
    j["lag"] = cfg.lag;
    return j;
}

void write_text(const fs::path& path, const std::string& text) {
    std::ofstream out(path, std::ios::binary);
    if (!out) throw ParseError("cannot write '" + path.string() + "'");
    out << text;
}

void write_json(const fs::path& path, const json& j) {
    write_text(path, j.dump(2) + "\n");
}

/// Imputes every market and returns the gap-free series.
std::vector<PriceSeries> load_imputed(const RunConfig& cfg) {
    std::vector<PriceSeries> series = read_price_csv(cfg.input);
    std::vector<PriceSeries> out;
    out.reserve(series.size());
    for (const auto& s : series) {
        out.push_back(impute_gaps(s, cfg.seasonal_period, !cfg.impute_on_levels));
    }
    return out;
}

int resolve_lag(const RunConfig& cfg, const ReturnPanel& panel, json& extra) {
    if (cfg.p > 0) return cfg.p;
    const int p = select_lag_bic(panel, cfg.p_max);
    extra["selected_p"] = p;
    return p;
}

double resolve_weight(const RunConfig& cfg, const ReturnPanel& panel, int p,
                      json& extra) {
    if (cfg.weight > 0.0) return cfg.weight;
    const WeightSelection sel = select_weight(panel, p);
    extra["weight_grid"] = sel.grid;
    extra["weight_forecast_rmse"] = sel.forecast_rmse;
    extra["selected_weight"] = sel.weight;
    return sel.weight;
}

void write_efficiency_csv(const fs::path& path, const ReturnPanel& panel, int p,
                          const std::vector<double>& zeta,
                          const std::vector<double>* lower,
                          const std::vector<double>* upper,
                          const std::vector<std::uint8_t>& stable) {
    std::string text = "period,zeta,band_lower,band_upper,stable_flag\n";
    for (std::size_t i = 0; i < zeta.size(); ++i) {
        text += panel.period_at(p + static_cast<int>(i)).str();
        text += ',' + format_csv_number(zeta[i]);
        text += ',';
        if (lower) text += format_csv_number((*lower)[i]);
        text += ',';
        if (upper) text += format_csv_number((*upper)[i]);
        text += ',' + std::to_string(static_cast<int>(stable[i]));
        text += '\n';
    }
    write_text(path, text);
}

json var_fit_json(const VarFit& fit, const std::vector<std::string>& markets) {
    json j;
    j["k"] = fit.k;
    j["p"] = fit.p;
    j["observations"] = fit.observations();
    json eqs = json::array();
    const int m = fit.coefficients_per_equation();
    for (int eq = 0; eq < fit.k; ++eq) {
        json je;
        je["equation"] = markets[eq];
        json coefs = json::array();
        json ses = json::array();
        coefs.push_back(fit.nu(eq));
        ses.push_back(fit.hac_se(0, eq));
        for (int j2 = 1; j2 < m; ++j2) {
            const int lag = (j2 - 1) / fit.k + 1;
            const int var = (j2 - 1) % fit.k;
            coefs.push_back(fit.A[lag - 1](eq, var));
            ses.push_back(fit.hac_se(j2, eq));
        }
        je["coefficients"] = coefs;  // intercept, then lag-major regressors
        je["hac_se"] = ses;
        je["adj_r2"] = fit.adj_r2(eq);
        eqs.push_back(je);
    }
    j["equations"] = eqs;
    json sig = json::array();
    for (int r = 0; r < fit.k; ++r) {
        json row = json::array();
        for (int c = 0; c < fit.k; ++c) row.push_back(fit.sigma(r, c));
        sig.push_back(row);
    }
    j["sigma"] = sig;
    j["bic"] = fit.bic;
    return j;
}

ScenarioSpec scenario_from_json(const std::string& path) {
    std::ifstream in(path);
    if (!in) throw ParseError("cannot open '" + path + "'");
    json j;
    try {
        j = json::parse(in);
    } catch (const json::exception& e) {
        throw ParseError("bad scenario JSON: " + std::string(e.what()));
    }
    ScenarioSpec spec;
    try {
        spec.k = j.at("k").get<int>();
        spec.T = j.at("T").get<int>();
        spec.noise_sd = j.at("noise_sd").get<double>();
        spec.seasonal_amplitude = j.value("seasonal_amplitude", 0.0);
        spec.seed = j.value("seed", 0ULL);
        if (j.contains("start_period")) {
            spec.start_period = YearMonth::parse(j["start_period"].get<std::string>());
        }
        if (j.contains("market_ids")) {
            spec.market_ids = j["market_ids"].get<std::vector<std::string>>();
        }
        for (const auto& jr : j.at("regimes")) {
            ScenarioSpec::Regime regime;
            regime.start = jr.at("start").get<int>();
            for (const auto& jl : jr.at("lags")) {
                Eigen::MatrixXd A(spec.k, spec.k);
                for (int r = 0; r < spec.k; ++r) {
                    for (int c = 0; c < spec.k; ++c) {
                        A(r, c) = jl.at(r).at(c).get<double>();
                    }
                }
                regime.lags.push_back(std::move(A));
            }
            spec.coefficient_path.push_back(std::move(regime));
        }
        if (j.contains("planted_events")) {
            for (const auto& je : j["planted_events"]) {
                spec.planted_events.emplace_back(je.at("period").get<int>(),
                                                 je.at("jump").get<double>());
            }
        }
    } catch (const json::exception& e) {
        throw ParseError("bad scenario JSON: " + std::string(e.what()));
    }
    return spec;
}

}  // namespace

RunConfig config_from_manifest(const std::string& manifest_path) {
    std::ifstream in(manifest_path);
    if (!in) throw ParseError("cannot open '" + manifest_path + "'");
    json j;
    try {
        j = json::parse(in);
    } catch (const json::exception& e) {
        throw ParseError("bad manifest: " + std::string(e.what()));
    }
    const json& c = j.at("config");
    RunConfig cfg;
    cfg.command = c.at("command").get<std::string>();
    cfg.input = c.at("input").get<std::string>();
    cfg.events_file = c.value("events_file", std::string{});
    cfg.out_dir = c.at("out_dir").get<std::string>();
    cfg.seasonal_period = c.at("seasonal_period").get<int>();
    cfg.impute_on_levels = c.at("impute_on_levels").get<bool>();
    cfg.p = c.at("p").get<int>();
    cfg.p_max = c.at("p_max").get<int>();
    cfg.weight = c.at("weight").get<double>();
    cfg.replications = c.at("replications").get<int>();
    cfg.level = c.at("level").get<double>();
    cfg.seed = c.at("seed").get<std::uint64_t>();
    cfg.estimation_window = c.at("estimation_window").get<int>();
    cfg.lead = c.at("lead").get<int>();
    cfg.lag = c.at("lag").get<int>();
    return cfg;
}

nlohmann::ordered_json run_pipeline(const RunConfig& cfg) {
    validate_config(cfg);
    fs::create_directories(cfg.out_dir);
    const fs::path out(cfg.out_dir);

    json manifest;
    manifest["tool"] = "tveff";
    manifest["version"] = kVersion;
    manifest["config"] = config_json(cfg);
    json outputs = json::array();
    json extra;

    if (cfg.command == "simulate") {
        const ScenarioSpec spec = scenario_from_json(cfg.input);
        const GeneratedScenario gen = generate(spec);
        write_price_csv((out / "prices.csv").string(), gen.series);
        outputs.push_back("prices.csv");
        std::string text = "period,true_zeta\n";
        for (int t = 0; t < spec.T; ++t) {
            text += spec.start_period.plus(t + 1).str() + ',' +
                    format_csv_number(gen.true_zeta[t]) + '\n';
        }
        write_text(out / "true_zeta.csv", text);
        outputs.push_back("true_zeta.csv");
    } else if (cfg.command == "impute") {
        const auto imputed = load_imputed(cfg);
        write_price_csv((out / "imputed.csv").string(), imputed);
        outputs.push_back("imputed.csv");
    } else if (cfg.command == "unit-root") {
        const auto imputed = load_imputed(cfg);
        write_price_csv((out / "imputed.csv").string(), imputed);
        outputs.push_back("imputed.csv");
        const ReturnPanel panel = align_panel(imputed);
        json markets = json::array();
        for (int c = 0; c < panel.dimension(); ++c) {
            std::vector<double> col(panel.matrix.col(c).data(),
                                    panel.matrix.col(c).data() + panel.periods());
            const UnitRootReport rep =
                adf_gls(col, DeterministicCase::ConstantTrend);
            const ColumnStats st = descriptive_stats(panel, c);
            json jm;
            jm["market"] = panel.markets[c];
            jm["mean"] = st.mean;
            jm["sd"] = st.sd;
            jm["max"] = st.max;
            jm["min"] = st.min;
            jm["adf_gls"] = rep.statistic;
            jm["lags"] = rep.selected_lags;
            jm["phi_hat"] = rep.phi_hat;
            jm["observations"] = panel.periods();
            jm["critical_values"] = {{"1%", rep.critical_values.pct1},
                                     {"5%", rep.critical_values.pct5},
                                     {"10%", rep.critical_values.pct10}};
            jm["deterministic_case"] = "constant+trend";
            markets.push_back(jm);
        }
        json report;
        report["markets"] = markets;
        write_json(out / "unit_root.json", report);
        outputs.push_back("unit_root.json");
    } else if (cfg.command == "fit-var") {
        const auto imputed = load_imputed(cfg);
        const ReturnPanel panel = align_panel(imputed);
        const int p = resolve_lag(cfg, panel, extra);
        const VarFit fit = fit_var(panel, p);
        json j = var_fit_json(fit, panel.markets);
        const ConstancyReport lc = hansen_lc(fit);
        j["constancy"] = {{"l_c", lc.l_c},
                          {"n_params", lc.n_params},
                          {"rejected_at_1pct", lc.decision_at_1pct}};
        write_json(out / "var_fit.json", j);
        outputs.push_back("var_fit.json");
    } else if (cfg.command == "fit-tvvar" || cfg.command == "efficiency") {
        const auto imputed = load_imputed(cfg);
        const ReturnPanel panel = align_panel(imputed);
        const int p = resolve_lag(cfg, panel, extra);
        const double w = resolve_weight(cfg, panel, p, extra);
        if (cfg.command == "fit-tvvar") {
            const TvVarFit fit = fit_tvvar(panel, p, w);
            const FlaggedPath path = efficiency_path_flagged(fit);
            write_efficiency_csv(out / "tvvar_path.csv", panel, p, path.zeta,
                                 nullptr, nullptr, path.stable);
            outputs.push_back("tvvar_path.csv");
            extra["unstable_periods"] = path.unstable_periods().size();
        } else {
            const int reps = cfg.replications > 0 ? cfg.replications : 5000;
            const EfficiencyPath path =
                null_bands(panel, p, w, reps, cfg.level,
                           substream_seed(cfg.seed, "band-stage", 0));
            write_efficiency_csv(out / "efficiency.csv", panel, p, path.zeta,
                                 &path.band_lower, &path.band_upper, path.stable);
            outputs.push_back("efficiency.csv");
            int exceed = 0, unstable = 0;
            for (std::size_t i = 0; i < path.zeta.size(); ++i) {
                if (!path.stable[i]) {
                    ++unstable;
                } else if (path.zeta[i] > path.band_upper[i]) {
                    ++exceed;
                }
            }
            extra["replications"] = reps;
            extra["periods_above_band"] = exceed;
            extra["unstable_periods"] = unstable;
        }
    } else if (cfg.command == "event-study") {
        const auto imputed = load_imputed(cfg);
        const ReturnPanel panel = align_panel(imputed);
        const auto events = read_event_csv(cfg.events_file);
        if (events.empty()) throw InvalidConfig("event list is empty");
        const int reps = cfg.replications > 0 ? cfg.replications : 1000;
        json summary = json::array();
        for (std::size_t e = 0; e < events.size(); ++e) {
            EventSpec spec;
            spec.event_period = events[e].second;
            spec.estimation_window = cfg.estimation_window;
            spec.lead = cfg.lead;
            spec.lag = cfg.lag;
            std::vector<std::vector<double>> cars;
            for (int c = 0; c < panel.dimension(); ++c) {
                std::vector<double> col(panel.matrix.col(c).data(),
                                        panel.matrix.col(c).data() + panel.periods());
                cars.push_back(cumulative_ar(
                    abnormal_returns(col, panel.start_period, spec)));
            }
            const EventStudyResult res = bootstrap_car(
                cars, -spec.lead, reps, cfg.level,
                substream_seed(cfg.seed, "event-bootstrap", e));
            const std::string fname = "event_" + events[e].first + ".csv";
            std::string text = "tau,mean_car,band_lower,band_upper\n";
            for (std::size_t i = 0; i < res.mean_car.size(); ++i) {
                text += std::to_string(res.tau_start + static_cast<int>(i)) + ',' +
                        format_csv_number(res.mean_car[i]) + ',' +
                        format_csv_number(res.band_lower[i]) + ',' +
                        format_csv_number(res.band_upper[i]) + '\n';
            }
            write_text(out / fname, text);
            outputs.push_back(fname);
            json je;
            je["event_id"] = events[e].first;
            je["period"] = events[e].second.str();
            je["significant_at_event"] = res.significant_at_event;
            je["exact_resample_distribution"] = res.exact;
            summary.push_back(je);
        }
        json report;
        report["events"] = summary;
        report["replications"] = reps;
        write_json(out / "events_summary.json", report);
        outputs.push_back("events_summary.json");
    }

    manifest["outputs"] = outputs;
    if (!extra.is_null()) manifest["stage"] = extra;
    write_json(out / "manifest.json", manifest);
    return manifest;
}

}  // namespace tveff
