#ifndef TVEFF_CRITICAL_VALUES_HPP
#define TVEFF_CRITICAL_VALUES_HPP

#include <array>

namespace tveff {

// ---------------------------------------------------------------------------
// ADF-GLS critical values.
//
// Constant+trend case (local-to-unity cbar = -13.5): values as tabulated for
// the GLS-detrended Dickey-Fuller t-test with a linear trend; the 1% value
// -3.42 is the one standard in applied work. Constant-only case (cbar = -7.0)
// shares the no-deterministics Dickey-Fuller asymptotic distribution.
// ---------------------------------------------------------------------------

struct AdfGlsCriticalValues {
    double pct1;
    double pct5;
    double pct10;
};

inline constexpr AdfGlsCriticalValues kAdfGlsTrend{-3.42, -2.91, -2.62};
inline constexpr AdfGlsCriticalValues kAdfGlsConstant{-2.58, -1.95, -1.62};

// ---------------------------------------------------------------------------
// Hansen joint L_C critical values.
//
// The asymptotic null distribution of the joint statistic with m parameters
// is sum_{i=1..m} of independent integrals of squared Brownian bridges,
// i.e. a Cramer-von Mises distribution with m degrees of freedom. The table
// below holds its 90% / 95% / 97.5% / 99% quantiles for m = 1..40, computed
// by numerical inversion of the characteristic function
// phi(t) = (sqrt(2it)/sin(sqrt(2it)))^(m/2) (Imhof's method, closed-form
// angle and modulus sums). The m = 1 row agrees with the classical CvM
// table (0.34730 / 0.46136 / 0.58061 / 0.74346) to 5 decimals and the m = 2
// row with the published tabulation for this statistic (0.607 / 0.748 / - /
// 1.07); rows are validated by a Monte Carlo size study in the acceptance
// suite.
// ---------------------------------------------------------------------------

struct HansenCriticalValues {
    double pct10;   // 90% quantile
    double pct5;    // 95% quantile
    double pct2_5;  // 97.5% quantile
    double pct1;    // 99% quantile
};

inline constexpr int kHansenMaxParams = 40;

inline constexpr std::array<HansenCriticalValues, kHansenMaxParams> kHansenTable{{
    {0.347300, 0.461360, 0.580610, 0.743460},  // m = 1
    {0.607040, 0.747520, 0.887980, 1.073660},  // m = 2
    {0.841160, 1.000180, 1.155970, 1.358600},  // m = 3
    {1.063110, 1.237300, 1.405790, 1.622630},  // m = 4
    {1.277690, 1.465060, 1.644650, 1.874000},  // m = 5
    {1.487200, 1.686390, 1.875990, 2.116670},  // m = 6
    {1.692980, 1.902990, 2.101760, 2.352870},  // m = 7
    {1.895850, 2.115880, 2.323200, 2.584030},  // m = 8
    {2.096370, 2.325810, 2.541140, 2.811110},  // m = 9
    {2.294950, 2.533260, 2.756170, 3.034800},  // m = 10
    {2.491890, 2.738620, 2.968740, 3.255610},  // m = 11
    {2.687410, 2.942190, 3.179190, 3.473950},  // m = 12
    {2.881700, 3.144190, 3.387790, 3.690130},  // m = 13
    {3.074910, 3.344800, 3.594760, 3.904390},  // m = 14
    {3.267150, 3.544190, 3.800280, 4.116950},  // m = 15
    {3.458510, 3.742460, 4.004490, 4.327980},  // m = 16
    {3.649090, 3.939740, 4.207510, 4.537610},  // m = 17
    {3.838960, 4.136100, 4.409450, 4.745980},  // m = 18
    {4.028170, 4.331620, 4.610410, 4.953190},  // m = 19
    {4.216780, 4.526380, 4.810460, 5.159330},  // m = 20
    {4.404830, 4.720430, 5.009670, 5.364480},  // m = 21
    {4.592360, 4.913820, 5.208100, 5.568720},  // m = 22
    {4.779410, 5.106590, 5.405800, 5.772100},  // m = 23
    {4.966020, 5.298800, 5.602820, 5.974680},  // m = 24
    {5.152200, 5.490460, 5.799210, 6.176520},  // m = 25
    {5.337990, 5.681620, 5.995000, 6.377650},  // m = 26
    {5.523410, 5.872310, 6.190230, 6.578120},  // m = 27
    {5.708470, 6.062550, 6.384920, 6.777960},  // m = 28
    {5.893210, 6.252360, 6.579120, 6.977210},  // m = 29
    {6.077630, 6.441770, 6.772830, 7.175900},  // m = 30
    {6.261750, 6.630800, 6.966100, 7.374060},  // m = 31
    {6.445580, 6.819470, 7.158930, 7.571710},  // m = 32
    {6.629150, 7.007790, 7.351350, 7.768870},  // m = 33
    {6.812450, 7.195780, 7.543390, 7.965570},  // m = 34
    {6.995510, 7.383450, 7.735040, 8.161830},  // m = 35
    {7.178340, 7.570830, 7.926340, 8.357670},  // m = 36
    {7.360930, 7.757910, 8.117300, 8.553110},  // m = 37
    {7.543310, 7.944710, 8.307930, 8.748150},  // m = 38
    {7.725490, 8.131250, 8.498240, 8.942820},  // m = 39
    {7.907460, 8.317540, 8.688240, 9.137140},  // m = 40
}};

/// Critical values for the Hansen joint statistic with n_params parameters.
/// n_params must lie in 1..kHansenMaxParams.
inline const HansenCriticalValues& hansen_critical_values(int n_params) {
    return kHansenTable.at(static_cast<std::size_t>(n_params - 1));
}

}  // namespace tveff

#endif  // TVEFF_CRITICAL_VALUES_HPP
