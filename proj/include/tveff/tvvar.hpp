#ifndef TVEFF_TVVAR_HPP
#define TVEFF_TVVAR_HPP

#include <Eigen/Dense>
#include <cstdint>
#include <vector>

#include "tveff/series.hpp"

namespace tveff {

/// Time-varying VAR(p) fit: one coefficient set per period under the
/// random-walk restriction beta_t = beta_{t-1} + v_t, estimated by stacked
/// least squares with a first-difference penalty of weight w. Immutable.
struct TvVarFit {
    int k = 0;
    int p = 0;
    double smoothness_weight = 0.0;
    std::vector<Eigen::VectorXd> nu_t;               // per period, k
    std::vector<std::vector<Eigen::MatrixXd>> A_t;   // per period, p matrices k x k
    Eigen::MatrixXd residuals;                       // (T-p) x k

    int periods() const noexcept { return static_cast<int>(nu_t.size()); }
};

/// Per-period efficiency degrees with +inf sentinels on periods whose
/// companion spectral radius breaches the stability margin.
struct FlaggedPath {
    std::vector<double> zeta;
    std::vector<std::uint8_t> stable;

    bool all_stable() const noexcept;
    std::vector<int> unstable_periods() const;
};

/// Efficiency path plus pointwise null-hypothesis bootstrap band.
struct EfficiencyPath {
    std::vector<double> zeta;          // observed, +inf on unstable periods
    std::vector<double> band_lower;
    std::vector<double> band_upper;
    std::vector<std::uint8_t> stable;  // observed-path stability flags
    int replications = 0;
};

/// Stacked least-squares TV-VAR estimation. The coefficient path has one
/// entry per period t = p+1..T. As w -> infinity the path converges to the
/// time-invariant OLS fit. Throws NonPositiveWeight for w <= 0,
/// RankDeficient when the penalized normal equations are singular.
TvVarFit fit_tvvar(const ReturnPanel& panel, int p, double smoothness_weight);

/// zeta_t = largest singular value of ((I - sum_j A_{j,t})^{-1} - I).
/// Throws UnstablePeriod (carrying the offending period indexes) if any
/// period breaches the stability margin.
std::vector<double> efficiency_path(const TvVarFit& fit);

/// Sentinel-flagged variant used by diagnostics and the bootstrap.
FlaggedPath efficiency_path_flagged(const TvVarFit& fit);

/// Bootstrap band under the i.i.d. (efficient-market) null: each replication
/// resamples rows of the demeaned panel with replacement, refits the TV-VAR
/// and records its zeta path; bands are pointwise empirical quantiles at
/// (1-level)/2 and 1-(1-level)/2. Failed replications are retried up to
/// three attempts each (BandFailure when exhausted). Deterministic for a
/// fixed base_seed regardless of thread schedule.
EfficiencyPath null_bands(const ReturnPanel& panel, int p, double smoothness_weight,
                          int replications, double level,
                          std::uint64_t base_seed = 0);

/// Smoothness-weight selection by one-step-ahead rolling forecast error over
/// a logarithmic grid.
struct WeightSelection {
    double weight = 0.0;
    std::vector<double> grid;
    std::vector<double> forecast_rmse;  // aligned with grid
};

WeightSelection select_weight(const ReturnPanel& panel, int p);

namespace tvvar_detail {

/// Solves the stacked system [y; 0] = [Z; w D] beta for the per-period
/// coefficient stack. Exposed for assembly-level tests; accepts w >= 0 and
/// p >= 0 (p = 0 fits a time-varying mean only).
std::vector<Eigen::VectorXd> solve_stacked(const Eigen::MatrixXd& Y, int p,
                                           double w);

}  // namespace tvvar_detail

}  // namespace tveff

#endif  // TVEFF_TVVAR_HPP
