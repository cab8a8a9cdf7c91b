#ifndef TVEFF_UNITROOT_HPP
#define TVEFF_UNITROOT_HPP

#include <vector>

#include "tveff/critical_values.hpp"

namespace tveff {

enum class DeterministicCase {
    Constant,       // demeaning only (cbar = -7.0)
    ConstantTrend,  // constant + linear trend (cbar = -13.5)
};

struct UnitRootReport {
    double statistic = 0.0;    // t-ratio on the level term of the ADF regression
    int selected_lags = 0;     // lag order chosen by the MBIC
    double phi_hat = 0.0;      // autoregressive root of the detrended series
                               // (1 + level coefficient of the selected regression)
    DeterministicCase deterministic_case = DeterministicCase::ConstantTrend;
    AdfGlsCriticalValues critical_values{};
};

/// GLS detrending: quasi-differences data and deterministics with
/// alpha-bar = 1 + cbar/T, fits the deterministic coefficients by OLS on the
/// quasi-differenced pairs, and removes the fitted deterministic part from
/// the original series.
std::vector<double> gls_detrend(const std::vector<double>& y, DeterministicCase c);

/// Ordinary least-squares detrending with the same deterministics. Used for
/// lag selection, where quasi-difference detrending of strongly stationary
/// data leaves a spurious trend component that inflates the chosen order.
std::vector<double> ols_detrend(const std::vector<double>& y, DeterministicCase c);

/// MBIC lag selection over k = 0..max_lags on the common sample
/// t = max_lags+2..T:
///   MIC(k) = ln(sigma2_k) + C_T * (tau(k) + k) / (T - max_lags),
///   C_T = ln(T - max_lags),
///   tau(k) = phi_hat^2 * sum(ydetrended_{t-1}^2) / sigma2_k,
/// with phi_hat the (k-independent) autoregressive root estimated from the
/// max_lags regression. Input is a detrended series.
int mbic_lag_select(const std::vector<double>& detrended, int max_lags);

/// Default lag ceiling floor(12 * (T/100)^(1/4)).
int default_max_lags(int T);

/// ADF-GLS unit root test. Lags chosen by MBIC on the OLS-detrended series;
/// the reported statistic is the t-ratio on the level term of the ADF
/// regression (no deterministics) run on the GLS-detrended series with the
/// selected lag count. Throws TooShort when length < 25 + max_lags and
/// NonFinite on non-finite input.
UnitRootReport adf_gls(const std::vector<double>& series, DeterministicCase c,
                       int max_lags);
UnitRootReport adf_gls(const std::vector<double>& series,
                       DeterministicCase c = DeterministicCase::ConstantTrend);

}  // namespace tveff

#endif  // TVEFF_UNITROOT_HPP
