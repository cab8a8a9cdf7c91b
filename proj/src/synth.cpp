#include "tveff/synth.hpp"

#include <algorithm>
#include <cmath>
#include <numbers>
#include <string>

#include "tveff/errors.hpp"
#include "tveff/rng.hpp"

namespace tveff {

namespace {

/// Companion spectral radius, duplicated locally so the oracle path shares
/// no code with the estimation engine.
double oracle_companion_radius(const std::vector<Eigen::MatrixXd>& lags) {
    const int p = static_cast<int>(lags.size());
    const int k = static_cast<int>(lags.front().rows());
    Eigen::MatrixXd C = Eigen::MatrixXd::Zero(k * p, k * p);
    for (int j = 0; j < p; ++j) C.block(0, j * k, k, k) = lags[j];
    if (p > 1) {
        C.block(k, 0, k * (p - 1), k * (p - 1)) =
            Eigen::MatrixXd::Identity(k * (p - 1), k * (p - 1));
    }
    return C.eigenvalues().cwiseAbs().maxCoeff();
}

void validate_spec(const ScenarioSpec& spec) {
    if (spec.k < 1 || spec.T < 2) throw InvalidConfig("scenario needs k >= 1, T >= 2");
    if (!(spec.noise_sd > 0.0)) throw InvalidConfig("noise_sd must be positive");
    if (spec.seasonal_amplitude < 0.0) {
        throw InvalidConfig("seasonal_amplitude must be nonnegative");
    }
    if (spec.coefficient_path.empty() || spec.coefficient_path.front().start != 1) {
        throw InvalidConfig("coefficient path must start at period 1");
    }
    int prev = 0;
    for (const auto& regime : spec.coefficient_path) {
        if (regime.start <= prev || regime.start > spec.T) {
            throw InvalidConfig("regime starts must be increasing within 1..T");
        }
        prev = regime.start;
        if (regime.lags.empty()) throw InvalidConfig("regime needs >= 1 lag matrix");
        for (const auto& A : regime.lags) {
            if (A.rows() != spec.k || A.cols() != spec.k) {
                throw InvalidConfig("lag matrix dimension mismatch");
            }
        }
        if (oracle_companion_radius(regime.lags) >= 0.95) {
            throw UnstableSpec("regime starting at period " +
                               std::to_string(regime.start) +
                               " has companion spectral radius >= 0.95");
        }
    }
}

}  // namespace

Eigen::MatrixXd truncated_vma_sum(const std::vector<Eigen::MatrixXd>& lags,
                                  int horizon) {
    const int p = static_cast<int>(lags.size());
    const int k = static_cast<int>(lags.front().rows());
    Eigen::MatrixXd C = Eigen::MatrixXd::Zero(k * p, k * p);
    for (int j = 0; j < p; ++j) C.block(0, j * k, k, k) = lags[j];
    if (p > 1) {
        C.block(k, 0, k * (p - 1), k * (p - 1)) =
            Eigen::MatrixXd::Identity(k * (p - 1), k * (p - 1));
    }
    // Phi_s = top-left block of C^s; sum over s = 0..horizon
    Eigen::MatrixXd power = Eigen::MatrixXd::Identity(k * p, k * p);
    Eigen::MatrixXd total = Eigen::MatrixXd::Identity(k, k);
    for (int s = 1; s <= horizon; ++s) {
        power = C * power;
        total += power.topLeftCorner(k, k);
    }
    return total;
}

GeneratedScenario generate(const ScenarioSpec& spec) {
    validate_spec(spec);
    const int k = spec.k;
    const int T = spec.T;

    // regime lookup per return period (1-based)
    std::vector<int> regime_of(T + 1, 0);
    for (int r = 0; r < static_cast<int>(spec.coefficient_path.size()); ++r) {
        const int begin = spec.coefficient_path[r].start;
        const int end = r + 1 < static_cast<int>(spec.coefficient_path.size())
                            ? spec.coefficient_path[r + 1].start
                            : T + 1;
        for (int t = begin; t < end; ++t) regime_of[t] = r;
    }

    Rng rng(substream_seed(spec.seed, "simulation", 0));
    Eigen::MatrixXd R = Eigen::MatrixXd::Zero(T, k);
    int max_p = 0;
    for (const auto& regime : spec.coefficient_path) {
        max_p = std::max(max_p, static_cast<int>(regime.lags.size()));
    }
    for (int t = 0; t < T; ++t) {
        const auto& lags = spec.coefficient_path[regime_of[t + 1]].lags;
        Eigen::VectorXd r = Eigen::VectorXd::Zero(k);
        for (int j = 1; j <= static_cast<int>(lags.size()); ++j) {
            if (t - j >= 0) r.noalias() += lags[j - 1] * R.row(t - j).transpose();
        }
        for (int c = 0; c < k; ++c) r(c) += spec.noise_sd * rng.normal();
        R.row(t) = r.transpose();
    }
    for (const auto& [period, jump] : spec.planted_events) {
        if (period < 1 || period > T) throw InvalidConfig("planted event outside 1..T");
        R.row(period - 1).array() += jump;
    }

    // integrate to prices: price index 0..T, base 100, log-price seasonality
    GeneratedScenario out;
    out.returns = R;
    const double log_base = std::log(100.0);
    for (int c = 0; c < k; ++c) {
        std::vector<std::optional<double>> values(T + 1);
        double cum = 0.0;
        for (int t = 0; t <= T; ++t) {
            if (t > 0) cum += R(t - 1, c);
            double logp = log_base + cum;
            if (spec.seasonal_amplitude > 0.0) {
                const int month = spec.start_period.plus(t).month;
                logp += spec.seasonal_amplitude *
                        std::sin(2.0 * std::numbers::pi * month / 12.0);
            }
            values[t] = std::exp(logp);
        }
        std::string id = c < static_cast<int>(spec.market_ids.size())
                             ? spec.market_ids[c]
                             : "m" + std::to_string(c + 1);
        out.series.emplace_back(std::move(id), spec.start_period, std::move(values));
    }

    // oracle efficiency path: truncated VMA sum per regime
    std::vector<double> regime_zeta(spec.coefficient_path.size());
    for (std::size_t r = 0; r < spec.coefficient_path.size(); ++r) {
        const Eigen::MatrixXd total =
            truncated_vma_sum(spec.coefficient_path[r].lags, 1000);
        regime_zeta[r] = (total - Eigen::MatrixXd::Identity(k, k))
                             .jacobiSvd()
                             .singularValues()(0);
    }
    out.true_zeta.resize(T);
    for (int t = 1; t <= T; ++t) out.true_zeta[t - 1] = regime_zeta[regime_of[t]];
    return out;
}

MaskResult mask_gaps(const PriceSeries& series,
                     const std::vector<std::pair<int, int>>& gap_spec) {
    std::vector<std::optional<double>> values = series.values();
    std::vector<std::pair<int, double>> original;
    const int n = static_cast<int>(values.size());
    for (const auto& [start, len] : gap_spec) {
        if (len == 0) continue;
        if (len < 0 || len > 3) {
            throw GapTooLong("mask length must be within 1..3");
        }
        if (start <= 0 || start + len >= n) {
            throw GapAtBoundary("masked run must be strictly interior");
        }
        for (int i = start; i < start + len; ++i) {
            if (!values[i].has_value()) {
                throw InvalidConfig("mask overlaps an existing gap");
            }
            original.emplace_back(i, *values[i]);
            values[i].reset();
        }
    }
    return MaskResult{
        PriceSeries(series.market_id(), series.start_period(), std::move(values)),
        std::move(original)};
}

std::vector<std::pair<int, int>> random_gap_spec(int series_length, int n_gaps,
                                                 int gap_length, std::uint64_t seed) {
    if (gap_length < 1 || gap_length > 3) throw GapTooLong("gap length must be 1..3");
    Rng rng(substream_seed(seed, "gap-mask", 0));
    std::vector<std::pair<int, int>> gaps;
    std::vector<bool> used(series_length, false);
    int attempts = 0;
    while (static_cast<int>(gaps.size()) < n_gaps && attempts < 1000) {
        ++attempts;
        const int start = 1 + rng.uniform_int(series_length - gap_length - 2);
        bool clear = true;
        for (int i = start - 1; i <= start + gap_length; ++i) {
            if (i >= 0 && i < series_length && used[i]) clear = false;
        }
        if (!clear) continue;
        for (int i = start; i < start + gap_length; ++i) used[i] = true;
        gaps.emplace_back(start, gap_length);
    }
    std::sort(gaps.begin(), gaps.end());
    return gaps;
}

}  // namespace tveff
