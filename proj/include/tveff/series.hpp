#ifndef TVEFF_SERIES_HPP
#define TVEFF_SERIES_HPP

#include <Eigen/Dense>
#include <optional>
#include <string>
#include <vector>

#include "tveff/calendar.hpp"

namespace tveff {

/// Monthly price observations for one market. Values are strictly positive
/// price levels; interior runs of absent values are gaps. Leading and
/// trailing absences are trimmed on construction, so the first and last
/// stored values are always present. Immutable after construction.
class PriceSeries {
public:
    /// Throws InsufficientData if fewer than 24 present values remain after
    /// trimming, ParseError on non-positive or non-finite present values.
    PriceSeries(std::string market_id, YearMonth start_period,
                std::vector<std::optional<double>> values);

    const std::string& market_id() const noexcept { return market_id_; }
    YearMonth start_period() const noexcept { return start_; }
    const std::vector<std::optional<double>>& values() const noexcept { return values_; }

    int length() const noexcept { return static_cast<int>(values_.size()); }
    YearMonth end_period() const noexcept { return start_.plus(length() - 1); }

    bool has_gaps() const noexcept;
    int present_count() const noexcept;
    /// Length of the longest interior run of absent values (0 if none).
    int longest_gap() const noexcept;

private:
    std::string market_id_;
    YearMonth start_;
    std::vector<std::optional<double>> values_;
};

/// Aligned multivariate log-return matrix. Row t holds the return over
/// (period t-1 -> period t); start_period labels the first return row.
struct ReturnPanel {
    std::vector<std::string> markets;
    YearMonth start_period;
    Eigen::MatrixXd matrix;  // T x k, no absent entries

    int periods() const noexcept { return static_cast<int>(matrix.rows()); }
    int dimension() const noexcept { return static_cast<int>(matrix.cols()); }
    YearMonth period_at(int row) const noexcept { return start_period.plus(row); }
};

/// First difference of the natural log of a gap-free series.
/// Throws HasGaps if any value is absent.
std::vector<double> log_returns(const PriceSeries& series);

/// Intersects the spans of gap-free series into one return panel, columns in
/// the given order. Throws NoOverlap when fewer than 25 common returns
/// remain, HasGaps on gapped input.
ReturnPanel align_panel(const std::vector<PriceSeries>& series_list);

/// Mean, sample SD (n-1), max, min of one panel column.
struct ColumnStats {
    double mean = 0.0;
    double sd = 0.0;
    double max = 0.0;
    double min = 0.0;
};

ColumnStats descriptive_stats(const ReturnPanel& panel, int column);

}  // namespace tveff

#endif  // TVEFF_SERIES_HPP
