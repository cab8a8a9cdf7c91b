#include "tveff/csv.hpp"

#include <cmath>
#include <cstdio>
#include <fstream>
#include <sstream>

#include "tveff/errors.hpp"

namespace tveff {

namespace {

std::vector<std::string> split_row(const std::string& line) {
    std::vector<std::string> out;
    std::string cur;
    for (char c : line) {
        if (c == ',') {
            out.push_back(cur);
            cur.clear();
        } else if (c != '\r') {
            cur.push_back(c);
        }
    }
    out.push_back(cur);
    return out;
}

std::string trimmed(const std::string& s) {
    std::size_t a = s.find_first_not_of(" \t");
    if (a == std::string::npos) return "";
    std::size_t b = s.find_last_not_of(" \t");
    return s.substr(a, b - a + 1);
}

}  // namespace

std::string format_csv_number(double v) {
    if (std::isnan(v)) return "nan";
    if (std::isinf(v)) return v > 0 ? "inf" : "-inf";
    char buf[40];
    std::snprintf(buf, sizeof(buf), "%.12g", v);
    return buf;
}

std::vector<PriceSeries> read_price_csv(const std::string& path) {
    std::ifstream in(path);
    if (!in) throw ParseError("cannot open '" + path + "'");

    std::string line;
    if (!std::getline(in, line)) throw ParseError("empty file '" + path + "'");
    auto header = split_row(line);
    if (header.size() < 2 || trimmed(header[0]) != "period") {
        throw ParseError("header must be 'period,<market>,...' in '" + path + "'");
    }
    const int k = static_cast<int>(header.size()) - 1;
    std::vector<std::string> ids(k);
    for (int c = 0; c < k; ++c) ids[c] = trimmed(header[c + 1]);

    std::vector<YearMonth> periods;
    std::vector<std::vector<std::optional<double>>> cols(k);
    int line_no = 1;
    while (std::getline(in, line)) {
        ++line_no;
        if (trimmed(line).empty()) continue;
        auto fields = split_row(line);
        if (static_cast<int>(fields.size()) != k + 1) {
            throw ParseError("line " + std::to_string(line_no) + ": expected " +
                             std::to_string(k + 1) + " fields");
        }
        YearMonth ym = YearMonth::parse(trimmed(fields[0]));
        if (!periods.empty()) {
            const int step = ym - periods.back();
            if (step <= 0) {
                throw NonMonotonePeriods("line " + std::to_string(line_no) +
                                         ": period " + ym.str() +
                                         " does not follow " + periods.back().str());
            }
            // skipped months count as absent everywhere
            for (int s = 1; s < step; ++s) {
                periods.push_back(periods.back().plus(1));
                for (auto& col : cols) col.push_back(std::nullopt);
            }
        }
        periods.push_back(ym);
        for (int c = 0; c < k; ++c) {
            const std::string f = trimmed(fields[c + 1]);
            if (f.empty()) {
                cols[c].push_back(std::nullopt);
            } else {
                try {
                    std::size_t pos = 0;
                    double v = std::stod(f, &pos);
                    if (pos != f.size()) throw std::invalid_argument(f);
                    cols[c].push_back(v);
                } catch (const std::exception&) {
                    throw ParseError("line " + std::to_string(line_no) +
                                     ": bad number '" + f + "'");
                }
            }
        }
    }
    if (periods.empty()) throw ParseError("no data rows in '" + path + "'");

    std::vector<PriceSeries> out;
    out.reserve(k);
    for (int c = 0; c < k; ++c) {
        out.emplace_back(ids[c], periods.front(), std::move(cols[c]));
    }
    return out;
}

void write_price_csv(const std::string& path, const std::vector<PriceSeries>& series) {
    std::ofstream out(path);
    if (!out) throw ParseError("cannot write '" + path + "'");
    out << "period";
    for (const auto& s : series) out << ',' << s.market_id();
    out << '\n';
    if (series.empty()) return;

    int lo = series.front().start_period().index();
    int hi = series.front().end_period().index();
    for (const auto& s : series) {
        lo = std::min(lo, s.start_period().index());
        hi = std::max(hi, s.end_period().index());
    }
    for (int idx = lo; idx <= hi; ++idx) {
        out << YearMonth::from_index(idx).str();
        for (const auto& s : series) {
            out << ',';
            const int off = idx - s.start_period().index();
            if (off >= 0 && off < s.length() && s.values()[off].has_value()) {
                out << format_csv_number(*s.values()[off]);
            }
        }
        out << '\n';
    }
}

std::vector<std::pair<std::string, YearMonth>> read_event_csv(const std::string& path) {
    std::ifstream in(path);
    if (!in) throw ParseError("cannot open '" + path + "'");
    std::string line;
    if (!std::getline(in, line)) throw ParseError("empty file '" + path + "'");
    auto header = split_row(line);
    if (header.size() < 2 || trimmed(header[0]) != "event_id" ||
        trimmed(header[1]) != "period") {
        throw ParseError("header must be 'event_id,period' in '" + path + "'");
    }
    std::vector<std::pair<std::string, YearMonth>> out;
    int line_no = 1;
    while (std::getline(in, line)) {
        ++line_no;
        if (trimmed(line).empty()) continue;
        auto fields = split_row(line);
        if (fields.size() < 2) {
            throw ParseError("line " + std::to_string(line_no) + ": expected 2 fields");
        }
        out.emplace_back(trimmed(fields[0]), YearMonth::parse(trimmed(fields[1])));
    }
    return out;
}

}  // namespace tveff
