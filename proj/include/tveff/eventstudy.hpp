#ifndef TVEFF_EVENTSTUDY_HPP
#define TVEFF_EVENTSTUDY_HPP

#include <cstdint>
#include <vector>

#include "tveff/calendar.hpp"

namespace tveff {

/// Event definition: t = 0 is the event month; the event window spans
/// tau = -lead .. +lag (both nonnegative, so it always contains the event);
/// the estimation window is the `estimation_window` months immediately
/// preceding the event window.
struct EventSpec {
    YearMonth event_period;
    int estimation_window = 24;
    int lead = 3;
    int lag = 3;

    int window_length() const noexcept { return lead + lag + 1; }
};

/// Validates invariants (estimation_window >= 12, lead/lag >= 0); throws
/// InvalidConfig otherwise.
void validate(const EventSpec& spec);

/// AR over the event window: the normal return is the mean of the returns in
/// the estimation window; AR_tau = R_tau - normal. `event_index` locates
/// tau = 0 inside `returns`. Throws WindowOutOfRange when either window
/// leaves the sample.
std::vector<double> abnormal_returns(const std::vector<double>& returns,
                                     int event_index, const EventSpec& spec);

/// Convenience overload: locates the event by calendar period.
std::vector<double> abnormal_returns(const std::vector<double>& returns,
                                     YearMonth returns_start, const EventSpec& spec);

/// Running prefix sum over the event window.
std::vector<double> cumulative_ar(const std::vector<double>& ar);

struct EventStudyResult {
    std::vector<std::vector<double>> per_event_car;
    std::vector<double> mean_car;
    std::vector<double> band_lower;  // (1-level)/2 percentile per index
    std::vector<double> band_upper;
    int tau_start = 0;               // tau of index 0 (= -lead)
    int replications = 0;
    bool exact = false;              // exact resample distribution used (N <= 5)
    bool significant_at_event = false;
};

/// Percentile bootstrap over N CAR series sharing one event-time index:
/// each replication draws N series with replacement and averages them
/// index-wise. For N <= 5 the exact multinomial resampling distribution is
/// enumerated instead of sampled, removing Monte Carlo noise; the
/// `replications` count then only labels the output. significant_at_event is
/// true when the tau = 0 interval excludes zero. Throws IndexMismatch when
/// series lengths differ or tau = 0 lies outside the window.
EventStudyResult bootstrap_car(const std::vector<std::vector<double>>& cars,
                               int tau_start, int replications = 1000,
                               double level = 0.95, std::uint64_t seed = 0);

}  // namespace tveff

#endif  // TVEFF_EVENTSTUDY_HPP
