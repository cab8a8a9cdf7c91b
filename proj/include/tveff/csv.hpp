#ifndef TVEFF_CSV_HPP
#define TVEFF_CSV_HPP

#include <string>
#include <utility>
#include <vector>

#include "tveff/calendar.hpp"
#include "tveff/series.hpp"

namespace tveff {

/// Reads a price table: header `period,<id1>,<id2>,...`, rows `YYYY-MM`
/// followed by price fields, empty field = absent. Periods must be strictly
/// increasing (NonMonotonePeriods otherwise); skipped months become absent
/// for every market. Throws ParseError on malformed content.
std::vector<PriceSeries> read_price_csv(const std::string& path);

/// Writes the imputed/raw series back in the same format (common span is the
/// union of the series' spans; out-of-span cells are empty).
void write_price_csv(const std::string& path, const std::vector<PriceSeries>& series);

/// `event_id,period` rows.
std::vector<std::pair<std::string, YearMonth>> read_event_csv(const std::string& path);

/// Deterministic numeric formatting shared by all CSV writers ("%.12g";
/// non-finite values as "inf"/"-inf"/"nan").
std::string format_csv_number(double v);

}  // namespace tveff

#endif  // TVEFF_CSV_HPP
