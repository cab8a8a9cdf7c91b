#ifndef TVEFF_IMPUTE_HPP
#define TVEFF_IMPUTE_HPP

#include "tveff/series.hpp"

namespace tveff {

/// Fills interior gaps with the smoothed state of a local-level-plus-seasonal
/// structural model fitted by maximum likelihood (bounded quasi-Newton on the
/// log-variances, 500 iteration cap, gradient tolerance 1e-8). The model is
/// fitted on log prices by default (on_logs = false fits price levels
/// instead). Present values pass through bit-for-bit; gap-free input is
/// returned unchanged.
///
/// Throws GapTooLong if any gap exceeds seasonal_period, InsufficientData
/// when fewer than two seasonal cycles of values are present.
PriceSeries impute_gaps(const PriceSeries& series, int seasonal_period,
                        bool on_logs = true);

}  // namespace tveff

#endif  // TVEFF_IMPUTE_HPP
