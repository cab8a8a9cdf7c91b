#include "tveff/unitroot.hpp"

#include <Eigen/Dense>
#include <cmath>
#include <limits>
#include <string>

#include "tveff/errors.hpp"

namespace tveff {

namespace {

Eigen::MatrixXd deterministics(int T, DeterministicCase c) {
    const int q = c == DeterministicCase::ConstantTrend ? 2 : 1;
    Eigen::MatrixXd Z(T, q);
    Z.col(0).setOnes();
    if (q == 2) {
        for (int t = 0; t < T; ++t) Z(t, 1) = t + 1;
    }
    return Z;
}

struct AdfFit {
    double level_coef = 0.0;
    double level_se = 0.0;
    double ssr = 0.0;
};

/// ADF regression Delta y_t = c*y_{t-1} + sum_{j<=k} b_j Delta y_{t-j} on
/// t = first_t+1 .. T-1 (0-based response index), no deterministics.
AdfFit adf_regression(const std::vector<double>& y, int k, int first_t) {
    const int T = static_cast<int>(y.size());
    const int n = T - 1 - first_t;
    const int m = 1 + k;
    Eigen::MatrixXd X(n, m);
    Eigen::VectorXd d(n);
    for (int i = 0; i < n; ++i) {
        const int t = first_t + 1 + i;
        d(i) = y[t] - y[t - 1];
        X(i, 0) = y[t - 1];
        for (int j = 1; j <= k; ++j) {
            X(i, j) = y[t - j] - y[t - j - 1];
        }
    }
    Eigen::MatrixXd G = X.transpose() * X;
    Eigen::LDLT<Eigen::MatrixXd> ldlt(G);
    Eigen::VectorXd b = ldlt.solve(X.transpose() * d);
    Eigen::VectorXd e = d - X * b;

    AdfFit fit;
    fit.level_coef = b(0);
    fit.ssr = e.squaredNorm();
    const double s2 = fit.ssr / (n - m);
    const double g00 = ldlt.solve(Eigen::MatrixXd::Identity(m, m))(0, 0);
    fit.level_se = std::sqrt(s2 * g00);
    return fit;
}

void check_input(const std::vector<double>& y, int max_lags) {
    if (max_lags < 0) throw InvalidConfig("max_lags must be nonnegative");
    if (static_cast<int>(y.size()) < 25 + max_lags) {
        throw TooShort("need at least 25 + max_lags observations, got " +
                       std::to_string(y.size()));
    }
    for (double v : y) {
        if (!std::isfinite(v)) throw NonFinite("input contains a non-finite value");
    }
}

}  // namespace

std::vector<double> gls_detrend(const std::vector<double>& y, DeterministicCase c) {
    const int T = static_cast<int>(y.size());
    const double cbar = c == DeterministicCase::ConstantTrend ? -13.5 : -7.0;
    const double abar = 1.0 + cbar / T;
    Eigen::MatrixXd Z = deterministics(T, c);
    const int q = static_cast<int>(Z.cols());

    Eigen::VectorXd ya(T);
    Eigen::MatrixXd Za(T, q);
    ya(0) = y[0];
    Za.row(0) = Z.row(0);
    for (int t = 1; t < T; ++t) {
        ya(t) = y[t] - abar * y[t - 1];
        Za.row(t) = Z.row(t) - abar * Z.row(t - 1);
    }
    Eigen::VectorXd beta =
        (Za.transpose() * Za).ldlt().solve(Za.transpose() * ya);

    std::vector<double> out(T);
    for (int t = 0; t < T; ++t) out[t] = y[t] - Z.row(t).dot(beta);
    return out;
}

std::vector<double> ols_detrend(const std::vector<double>& y, DeterministicCase c) {
    const int T = static_cast<int>(y.size());
    Eigen::MatrixXd Z = deterministics(T, c);
    Eigen::VectorXd yv = Eigen::Map<const Eigen::VectorXd>(y.data(), T);
    Eigen::VectorXd beta = (Z.transpose() * Z).ldlt().solve(Z.transpose() * yv);
    std::vector<double> out(T);
    for (int t = 0; t < T; ++t) out[t] = y[t] - Z.row(t).dot(beta);
    return out;
}

int default_max_lags(int T) {
    return static_cast<int>(std::floor(12.0 * std::pow(T / 100.0, 0.25)));
}

int mbic_lag_select(const std::vector<double>& detrended, int max_lags) {
    check_input(detrended, max_lags);
    const int T = static_cast<int>(detrended.size());
    const int N = T - max_lags;
    const double ct = std::log(static_cast<double>(N));

    // common sample for every candidate: responses t = max_lags+1 .. T-1
    const AdfFit top = adf_regression(detrended, max_lags, max_lags);
    const double phi = 1.0 + top.level_coef;

    double ylag_sq = 0.0;
    for (int t = max_lags + 1; t < T; ++t) {
        ylag_sq += detrended[t - 1] * detrended[t - 1];
    }

    int best_k = 0;
    double best = std::numeric_limits<double>::infinity();
    for (int k = 0; k <= max_lags; ++k) {
        const AdfFit f = adf_regression(detrended, k, max_lags);
        const double s2 = f.ssr / N;
        const double tau = phi * phi * ylag_sq / s2;
        const double mic = std::log(s2) + ct * (tau + k) / N;
        if (mic < best) {
            best = mic;
            best_k = k;
        }
    }
    return best_k;
}

UnitRootReport adf_gls(const std::vector<double>& series, DeterministicCase c,
                       int max_lags) {
    check_input(series, max_lags);
    const int k = mbic_lag_select(ols_detrend(series, c), max_lags);

    const std::vector<double> yt = gls_detrend(series, c);
    const AdfFit f = adf_regression(yt, k, k);  // full usable sample at k

    UnitRootReport report;
    report.statistic = f.level_coef / f.level_se;
    report.selected_lags = k;
    report.phi_hat = 1.0 + f.level_coef;
    report.deterministic_case = c;
    report.critical_values =
        c == DeterministicCase::ConstantTrend ? kAdfGlsTrend : kAdfGlsConstant;
    return report;
}

UnitRootReport adf_gls(const std::vector<double>& series, DeterministicCase c) {
    return adf_gls(series, c, default_max_lags(static_cast<int>(series.size())));
}

}  // namespace tveff
