#include "tveff/calendar.hpp"

#include <cctype>
#include <cstdio>

#include "tveff/errors.hpp"

namespace tveff {

std::string YearMonth::str() const {
    char buf[16];
    std::snprintf(buf, sizeof(buf), "%04d-%02d", year, month);
    return buf;
}

YearMonth YearMonth::parse(const std::string& text) {
    if (text.size() != 7 || text[4] != '-') {
        throw ParseError("bad period '" + text + "', expected YYYY-MM");
    }
    for (int i : {0, 1, 2, 3, 5, 6}) {
        if (!std::isdigit(static_cast<unsigned char>(text[i]))) {
            throw ParseError("bad period '" + text + "', expected YYYY-MM");
        }
    }
    YearMonth ym;
    ym.year = std::stoi(text.substr(0, 4));
    ym.month = std::stoi(text.substr(5, 2));
    if (ym.month < 1 || ym.month > 12) {
        throw ParseError("bad month in period '" + text + "'");
    }
    return ym;
}

}  // namespace tveff
