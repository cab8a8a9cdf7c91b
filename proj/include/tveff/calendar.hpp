#ifndef TVEFF_CALENDAR_HPP
#define TVEFF_CALENDAR_HPP

#include <compare>
#include <cstdint>
#include <string>

namespace tveff {

/// Flat monthly calendar index (year, month). No day/timezone semantics.
struct YearMonth {
    int year = 1900;
    int month = 1;  // 1..12

    /// Months since year 0; the arithmetic backbone for spans and offsets.
    int index() const noexcept { return year * 12 + (month - 1); }

    static YearMonth from_index(int idx) noexcept {
        YearMonth ym;
        ym.year = idx / 12;
        ym.month = idx % 12 + 1;
        if (ym.month < 1) {  // negative idx
            ym.month += 12;
            ym.year -= 1;
        }
        return ym;
    }

    YearMonth plus(int months) const noexcept { return from_index(index() + months); }

    friend int operator-(const YearMonth& a, const YearMonth& b) noexcept {
        return a.index() - b.index();
    }
    friend bool operator==(const YearMonth& a, const YearMonth& b) noexcept {
        return a.index() == b.index();
    }
    friend auto operator<=>(const YearMonth& a, const YearMonth& b) noexcept {
        return a.index() <=> b.index();
    }

    /// "YYYY-MM", zero padded.
    std::string str() const;

    /// Parses "YYYY-MM"; throws ParseError on malformed input.
    static YearMonth parse(const std::string& text);
};

}  // namespace tveff

#endif  // TVEFF_CALENDAR_HPP
