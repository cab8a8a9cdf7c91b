#ifndef TVEFF_SYNTH_HPP
#define TVEFF_SYNTH_HPP

#include <Eigen/Dense>
#include <cstdint>
#include <string>
#include <utility>
#include <vector>

#include "tveff/series.hpp"

namespace tveff {

/// Synthetic market scenario: piecewise-constant VAR coefficients over
/// return periods 1..T, optional deterministic log-price seasonality and
/// planted return jumps. Period ranges partition 1..T via regime start
/// points.
struct ScenarioSpec {
    int k = 2;
    int T = 600;

    struct Regime {
        int start = 1;                        // 1-based first return period
        std::vector<Eigen::MatrixXd> lags;    // k x k per lag
    };
    std::vector<Regime> coefficient_path;     // sorted by start; first must be 1

    double noise_sd = 0.01;
    double seasonal_amplitude = 0.0;          // added to log prices
    std::vector<std::pair<int, double>> planted_events;  // (period, jump)
    std::uint64_t seed = 0;
    YearMonth start_period{1900, 1};          // period of the first price
    std::vector<std::string> market_ids;      // defaults to m1..mk
};

struct GeneratedScenario {
    std::vector<PriceSeries> series;
    std::vector<double> true_zeta;  // per return period 1..T
    Eigen::MatrixXd returns;        // T x k, as simulated (before seasonality)
};

/// Simulates the scenario and integrates returns into prices
/// (base 100, exponentiated cumulative log returns). The true efficiency
/// path comes from the known coefficients through a truncated VMA summation
/// (companion-matrix powers, horizon 1000) — an independent route from the
/// closed-form long-run inverse. Throws UnstableSpec when any regime's
/// companion spectral radius reaches 0.95.
GeneratedScenario generate(const ScenarioSpec& spec);

/// Truncated impulse-response sum used as the oracle route.
Eigen::MatrixXd truncated_vma_sum(const std::vector<Eigen::MatrixXd>& lags,
                                  int horizon);

struct MaskResult {
    PriceSeries masked;
    std::vector<std::pair<int, double>> original;  // (index, value) of masked cells
};

/// Masks the listed (start, length) runs. Gaps must be interior and no
/// longer than 3 months (GapAtBoundary / GapTooLong otherwise).
MaskResult mask_gaps(const PriceSeries& series,
                     const std::vector<std::pair<int, int>>& gap_spec);

/// Draws non-overlapping interior gap positions for masking experiments.
std::vector<std::pair<int, int>> random_gap_spec(int series_length, int n_gaps,
                                                 int gap_length, std::uint64_t seed);

}  // namespace tveff

#endif  // TVEFF_SYNTH_HPP
