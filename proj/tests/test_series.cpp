#include <doctest.h>

#include <cmath>
#include <random>

#include "tveff/errors.hpp"
#include "tveff/rng.hpp"
#include "tveff/series.hpp"

using namespace tveff;

namespace {

std::vector<std::optional<double>> constant_prices(int n, double v) {
    return std::vector<std::optional<double>>(n, v);
}

PriceSeries make_series(const std::string& id, int n, double v = 100.0,
                        YearMonth start = {1900, 1}) {
    return PriceSeries(id, start, constant_prices(n, v));
}

}  // namespace

TEST_CASE("calendar arithmetic and formatting") {
    YearMonth ym{1899, 12};
    CHECK(ym.plus(1) == YearMonth{1900, 1});
    CHECK(ym.plus(13) == YearMonth{1901, 1});
    CHECK(YearMonth{1900, 3} - YearMonth{1899, 12} == 3);
    CHECK(ym.str() == "1899-12");
    CHECK(YearMonth::parse("1881-01") == YearMonth{1881, 1});
    CHECK_THROWS_AS(YearMonth::parse("1881-13"), ParseError);
    CHECK_THROWS_AS(YearMonth::parse("1881/01"), ParseError);
}

TEST_CASE("price series trims boundary absences and validates") {
    std::vector<std::optional<double>> v(30, 100.0);
    v[0].reset();
    v[1].reset();
    v[29].reset();
    v[15].reset();  // interior gap stays
    PriceSeries s("tokyo", {1900, 1}, v);
    CHECK(s.start_period() == YearMonth{1900, 3});
    CHECK(s.length() == 27);
    CHECK(s.has_gaps());
    CHECK(s.longest_gap() == 1);
    CHECK(s.present_count() == 26);

    CHECK_THROWS_AS(PriceSeries("x", {1900, 1}, constant_prices(20, 1.0)),
                    InsufficientData);
    auto bad = constant_prices(30, 1.0);
    bad[4] = -2.0;
    CHECK_THROWS_AS(PriceSeries("x", {1900, 1}, bad), ParseError);
}

TEST_CASE("log returns on exact values") {
    // prices (1, e, e^2) -> returns (1, 1)
    PriceSeries s("m", {1900, 1},
                  [] {
                      auto v = constant_prices(26, 1.0);
                      for (int i = 0; i < 26; ++i) v[i] = std::exp(static_cast<double>(i % 3));
                      return v;
                  }());
    std::vector<std::optional<double>> expv(26);
    for (int i = 0; i < 26; ++i) expv[i] = std::exp(static_cast<double>(i));
    // use a clean exponential ladder for the exactness check
    PriceSeries ladder("m", {1900, 1}, expv);
    auto r = log_returns(ladder);
    REQUIRE(r.size() == 25);
    for (double x : r) CHECK(x == doctest::Approx(1.0).epsilon(1e-12));

    auto flat = log_returns(make_series("c", 25, 5.0));
    for (double x : flat) CHECK(x == 0.0);

    std::vector<std::optional<double>> two(26, 100.0);
    two[25] = 110.0;
    auto lr = log_returns(PriceSeries("m", {1900, 1}, two));
    CHECK(lr.back() == doctest::Approx(std::log(1.1)).epsilon(1e-12));
    CHECK(lr.back() == doctest::Approx(0.0953102).epsilon(1e-5));

    auto gapped = constant_prices(30, 100.0);
    gapped[10].reset();
    CHECK_THROWS_AS(log_returns(PriceSeries("g", {1900, 1}, gapped)), HasGaps);
}

TEST_CASE("log returns round-trip through cumulated exponentials") {
    Rng rng(7);
    std::vector<double> returns(120);
    for (auto& r : returns) r = 0.05 * rng.normal();
    std::vector<std::optional<double>> prices(121);
    double logp = std::log(100.0);
    prices[0] = 100.0;
    for (std::size_t i = 0; i < returns.size(); ++i) {
        logp += returns[i];
        prices[i + 1] = std::exp(logp);
    }
    auto back = log_returns(PriceSeries("rt", {1900, 1}, prices));
    REQUIRE(back.size() == returns.size());
    for (std::size_t i = 0; i < returns.size(); ++i) {
        CHECK(back[i] == doctest::Approx(returns[i]).epsilon(1e-10));
    }
}

TEST_CASE("panel alignment spans the intersection") {
    // identical spans, length 623 -> T = 622
    auto a = make_series("tokyo", 623);
    auto b = make_series("osaka", 623, 50.0);
    auto panel = align_panel({a, b});
    CHECK(panel.periods() == 622);
    CHECK(panel.dimension() == 2);
    CHECK(panel.markets[0] == "tokyo");
    CHECK(panel.start_period == YearMonth{1900, 2});

    // months 1-50 vs 26-75: 25 common months -> 24 returns -> too short
    auto c = make_series("a", 50, 100.0, {1900, 1});
    auto d = make_series("b", 50, 100.0, YearMonth{1900, 1}.plus(25));
    CHECK_THROWS_AS(align_panel({c, d}), NoOverlap);

    // three series, full overlap, order preserved
    auto e = make_series("x", 40);
    auto f = make_series("y", 40);
    auto g = make_series("z", 40);
    auto p3 = align_panel({e, f, g});
    CHECK(p3.dimension() == 3);
    CHECK(p3.markets == std::vector<std::string>{"x", "y", "z"});
}

TEST_CASE("panel start aligns columns correctly for offset series") {
    // series B starts 5 months later; overlapping window must pair the same
    // calendar months
    std::vector<std::optional<double>> va(60), vb(55);
    for (int i = 0; i < 60; ++i) va[i] = 100.0 * std::exp(0.01 * i);
    for (int i = 0; i < 55; ++i) vb[i] = 200.0 * std::exp(0.02 * (i + 5));
    PriceSeries a("a", {1900, 1}, va);
    PriceSeries b("b", YearMonth{1900, 6}, vb);
    auto panel = align_panel({a, b});
    CHECK(panel.periods() == 54);
    CHECK(panel.start_period == YearMonth{1900, 7});
    for (int t = 0; t < panel.periods(); ++t) {
        CHECK(panel.matrix(t, 0) == doctest::Approx(0.01).epsilon(1e-9));
        CHECK(panel.matrix(t, 1) == doctest::Approx(0.02).epsilon(1e-9));
    }
}

TEST_CASE("descriptive stats match a streaming oracle") {
    Rng rng(11);
    std::vector<std::optional<double>> prices(200);
    double logp = 0.0;
    for (int i = 0; i < 200; ++i) {
        logp += 0.06 * rng.normal();
        prices[i] = std::exp(logp) * 100.0;
    }
    auto panel = align_panel({PriceSeries("m", {1900, 1}, prices)});
    auto st = descriptive_stats(panel, 0);

    // independent streaming pass (Welford)
    double mean = 0.0, m2 = 0.0, mx = -1e300, mn = 1e300;
    int n = 0;
    for (int t = 0; t < panel.periods(); ++t) {
        const double x = panel.matrix(t, 0);
        ++n;
        const double d = x - mean;
        mean += d / n;
        m2 += d * (x - mean);
        mx = std::max(mx, x);
        mn = std::min(mn, x);
    }
    CHECK(st.mean == doctest::Approx(mean).epsilon(1e-12));
    CHECK(st.sd == doctest::Approx(std::sqrt(m2 / (n - 1))).epsilon(1e-12));
    CHECK(st.max == doctest::Approx(mx).epsilon(1e-15));
    CHECK(st.min == doctest::Approx(mn).epsilon(1e-15));
}
