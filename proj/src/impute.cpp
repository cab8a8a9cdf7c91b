#include "tveff/impute.hpp"

#include <cmath>
#include <string>

#include "tveff/errors.hpp"
#include "bfgs.hpp"
#include "kalman.hpp"

namespace tveff {

PriceSeries impute_gaps(const PriceSeries& series, int seasonal_period, bool on_logs) {
    if (seasonal_period < 1) throw InvalidConfig("seasonal_period must be positive");
    if (!series.has_gaps()) return series;

    if (series.longest_gap() > seasonal_period) {
        throw GapTooLong("series '" + series.market_id() + "': gap of " +
                         std::to_string(series.longest_gap()) +
                         " months exceeds the seasonal period");
    }
    if (series.present_count() < 2 * seasonal_period) {
        throw InsufficientData("series '" + series.market_id() + "': need at least " +
                               std::to_string(2 * seasonal_period) +
                               " present values (two seasonal cycles)");
    }

    // standardized working scale keeps the optimizer well conditioned
    const int n = series.length();
    std::vector<std::optional<double>> x(n);
    double mean = 0.0;
    int count = 0;
    for (int t = 0; t < n; ++t) {
        if (series.values()[t].has_value()) {
            const double v = *series.values()[t];
            x[t] = on_logs ? std::log(v) : v;
            mean += *x[t];
            ++count;
        }
    }
    mean /= count;
    double var = 0.0;
    for (const auto& v : x) {
        if (v.has_value()) var += (*v - mean) * (*v - mean);
    }
    var = std::max(var / count, 1e-12);
    const double sd = std::sqrt(var);
    for (auto& v : x) {
        if (v.has_value()) *v = (*v - mean) / sd;
    }

    detail::SeasonalStructuralModel model(x, seasonal_period);
    auto objective = [&](const Eigen::VectorXd& theta) {
        return -model.loglik(std::exp(theta(0)), std::exp(theta(1)),
                             std::exp(theta(2)));
    };
    Eigen::VectorXd theta0(3);
    theta0 << std::log(0.5), std::log(0.1), std::log(0.1);
    const auto opt = detail::bfgs_minimize(objective, theta0, -30.0, 6.0, 500, 1e-8);

    const auto signal = model.smoothed_signal(
        std::exp(opt.x(0)), std::exp(opt.x(1)), std::exp(opt.x(2)));

    std::vector<std::optional<double>> filled = series.values();
    for (int t = 0; t < n; ++t) {
        if (filled[t].has_value()) continue;
        const double z = signal[t] * sd + mean;
        filled[t] = on_logs ? std::exp(z) : z;
    }
    return PriceSeries(series.market_id(), series.start_period(), std::move(filled));
}

}  // namespace tveff
