#include "tveff/eventstudy.hpp"

#include <algorithm>
#include <cmath>
#include <functional>
#include <numeric>
#include <string>

#include "tveff/errors.hpp"
#include "tveff/rng.hpp"

namespace tveff {

namespace {

/// Weighted lower quantile: smallest value whose cumulative probability
/// reaches q.
double weighted_quantile(std::vector<std::pair<double, double>> atoms, double q) {
    std::sort(atoms.begin(), atoms.end());
    double cum = 0.0;
    for (const auto& [value, prob] : atoms) {
        cum += prob;
        if (cum >= q - 1e-12) return value;
    }
    return atoms.back().first;
}

/// All resample count vectors (n_1..n_N), sum N, with multinomial weights.
void enumerate_counts(int remaining, int slot, int n_slots,
                      std::vector<int>& counts,
                      const std::function<void(const std::vector<int>&)>& emit) {
    if (slot == n_slots - 1) {
        counts[slot] = remaining;
        emit(counts);
        return;
    }
    for (int c = remaining; c >= 0; --c) {
        counts[slot] = c;
        enumerate_counts(remaining - c, slot + 1, n_slots, counts, emit);
    }
}

double log_factorial(int n) {
    return std::lgamma(static_cast<double>(n) + 1.0);
}

}  // namespace

void validate(const EventSpec& spec) {
    if (spec.estimation_window < 12) {
        throw InvalidConfig("estimation window must cover at least 12 months");
    }
    if (spec.lead < 0 || spec.lag < 0) {
        throw InvalidConfig("event window lead/lag must be nonnegative");
    }
}

std::vector<double> abnormal_returns(const std::vector<double>& returns,
                                     int event_index, const EventSpec& spec) {
    validate(spec);
    const int n = static_cast<int>(returns.size());
    const int win_first = event_index - spec.lead;
    const int win_last = event_index + spec.lag;
    const int est_first = win_first - spec.estimation_window;
    if (est_first < 0 || win_last >= n) {
        throw WindowOutOfRange("event at index " + std::to_string(event_index) +
                               " needs returns " + std::to_string(est_first) + ".." +
                               std::to_string(win_last) + ", sample has 0.." +
                               std::to_string(n - 1));
    }
    const double normal =
        std::accumulate(returns.begin() + est_first, returns.begin() + win_first, 0.0) /
        spec.estimation_window;
    std::vector<double> ar(spec.window_length());
    for (int i = 0; i < spec.window_length(); ++i) {
        ar[i] = returns[win_first + i] - normal;
    }
    return ar;
}

std::vector<double> abnormal_returns(const std::vector<double>& returns,
                                     YearMonth returns_start, const EventSpec& spec) {
    return abnormal_returns(returns, spec.event_period - returns_start, spec);
}

std::vector<double> cumulative_ar(const std::vector<double>& ar) {
    if (ar.empty()) throw InvalidConfig("empty abnormal-return sequence");
    std::vector<double> car(ar.size());
    std::partial_sum(ar.begin(), ar.end(), car.begin());
    return car;
}

EventStudyResult bootstrap_car(const std::vector<std::vector<double>>& cars,
                               int tau_start, int replications, double level,
                               std::uint64_t seed) {
    const int N = static_cast<int>(cars.size());
    if (N < 1) throw IndexMismatch("need at least one CAR series");
    const int len = static_cast<int>(cars.front().size());
    for (const auto& c : cars) {
        if (static_cast<int>(c.size()) != len) {
            throw IndexMismatch("CAR series lengths differ");
        }
    }
    const int t0 = -tau_start;
    if (t0 < 0 || t0 >= len) {
        throw IndexMismatch("event time tau=0 lies outside the shared window");
    }
    if (replications < 1) throw InvalidConfig("replications must be positive");
    if (!(level > 0.0 && level < 1.0)) throw InvalidConfig("level must be in (0,1)");

    EventStudyResult result;
    result.per_event_car = cars;
    result.tau_start = tau_start;
    result.replications = replications;
    result.mean_car.assign(len, 0.0);
    for (const auto& c : cars) {
        for (int i = 0; i < len; ++i) result.mean_car[i] += c[i] / N;
    }

    const double q_lo = (1.0 - level) / 2.0;
    const double q_hi = 1.0 - q_lo;
    result.band_lower.resize(len);
    result.band_upper.resize(len);

    if (N <= 5) {
        // exact multinomial resample distribution
        result.exact = true;
        std::vector<std::vector<double>> atom_values;  // per atom: averaged series
        std::vector<double> atom_probs;
        std::vector<int> counts(N);
        const double logNfac = log_factorial(N);
        const double logNpow = N * std::log(static_cast<double>(N));
        enumerate_counts(N, 0, N, counts, [&](const std::vector<int>& cnt) {
            double logprob = logNfac - logNpow;
            for (int c : cnt) logprob -= log_factorial(c);
            std::vector<double> avg(len, 0.0);
            for (int e = 0; e < N; ++e) {
                if (cnt[e] == 0) continue;
                const double wgt = static_cast<double>(cnt[e]) / N;
                for (int i = 0; i < len; ++i) avg[i] += wgt * cars[e][i];
            }
            atom_values.push_back(std::move(avg));
            atom_probs.push_back(std::exp(logprob));
        });
        for (int i = 0; i < len; ++i) {
            std::vector<std::pair<double, double>> atoms(atom_values.size());
            for (std::size_t a = 0; a < atom_values.size(); ++a) {
                atoms[a] = {atom_values[a][i], atom_probs[a]};
            }
            result.band_lower[i] = weighted_quantile(atoms, q_lo);
            result.band_upper[i] = weighted_quantile(std::move(atoms), q_hi);
        }
    } else {
        Rng rng(seed);
        std::vector<std::vector<double>> draws(replications,
                                               std::vector<double>(len, 0.0));
        for (auto& draw : draws) {
            for (int e = 0; e < N; ++e) {
                const auto& pick = cars[rng.uniform_int(N)];
                for (int i = 0; i < len; ++i) draw[i] += pick[i] / N;
            }
        }
        std::vector<double> column(replications);
        for (int i = 0; i < len; ++i) {
            for (int r = 0; r < replications; ++r) column[r] = draws[r][i];
            std::sort(column.begin(), column.end());
            auto at = [&](double q) {
                const double h = (replications - 1) * q;
                const int lo = static_cast<int>(h);
                const double f = h - lo;
                return lo + 1 < replications
                           ? column[lo] + f * (column[lo + 1] - column[lo])
                           : column.back();
            };
            result.band_lower[i] = at(q_lo);
            result.band_upper[i] = at(q_hi);
        }
    }

    result.significant_at_event =
        result.band_lower[t0] > 0.0 || result.band_upper[t0] < 0.0;
    return result;
}

}  // namespace tveff
