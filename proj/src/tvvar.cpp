#include "tveff/tvvar.hpp"

#include <cmath>
#include <limits>
#include <string>

#include "tveff/errors.hpp"
#include "tveff/rng.hpp"
#include "tveff/var.hpp"
#include "parallel.hpp"
#include "stats_util.hpp"

namespace tveff {

namespace {

constexpr double kStabilityMargin = 1e-8;
constexpr double kInf = std::numeric_limits<double>::infinity();

/// Block-tridiagonal normal equations of the stacked system
///   [y; 0] = [Z; w D] beta,
/// one q x q block per period (q = k * (k*p+1)):
///   M_ii    = blkdiag_k(z_i z_i') + w^2 d_i I   (d_i = 1 at the ends, 2 inside)
///   M_i,i+1 = -w^2 I.
/// Solved by block elimination with per-block LDLT, then two iterative
/// refinement passes: with w up to 1e6 the normal equations carry a w^2
/// condition factor, and refinement restores the digits that plain
/// elimination loses there.
class StackedSolver {
public:
    StackedSolver(const Eigen::MatrixXd& Y, int p, double w)
        : Y_(Y),
          T_(static_cast<int>(Y.rows())),
          k_(static_cast<int>(Y.cols())),
          p_(p),
          m_(1 + k_ * p),
          q_(k_ * m_),
          n_per_(T_ - p),
          w2_(w * w) {
        if (n_per_ < 1) throw TooShort("no periods to fit");
        build_rows();
        factorize();
    }

    std::vector<Eigen::VectorXd> solve() const {
        std::vector<Eigen::VectorXd> beta = solve_once(rhs_);
        for (int pass = 0; pass < 2; ++pass) {
            std::vector<Eigen::VectorXd> r = residual_vec(beta);
            std::vector<Eigen::VectorXd> corr = solve_once(r);
            for (int i = 0; i < n_per_; ++i) beta[i] += corr[i];
        }
        return beta;
    }

    /// Regressor row z_i = (1, y_{t-1}', ..., y_{t-p}') for period index i.
    Eigen::VectorXd regressor(int i) const {
        const int t = p_ + i;
        Eigen::VectorXd z(m_);
        z(0) = 1.0;
        for (int j = 1; j <= p_; ++j) {
            z.segment(1 + (j - 1) * k_, k_) = Y_.row(t - j);
        }
        return z;
    }

private:
    void build_rows() {
        rhs_.assign(n_per_, Eigen::VectorXd::Zero(q_));
        z_.reserve(n_per_);
        for (int i = 0; i < n_per_; ++i) {
            z_.push_back(regressor(i));
            for (int eq = 0; eq < k_; ++eq) {
                rhs_[i].segment(eq * m_, m_) = z_[i] * Y_(p_ + i, eq);
            }
        }
    }

    Eigen::MatrixXd diag_block(int i) const {
        Eigen::MatrixXd M = Eigen::MatrixXd::Zero(q_, q_);
        const Eigen::MatrixXd zz = z_[i] * z_[i].transpose();
        for (int eq = 0; eq < k_; ++eq) {
            M.block(eq * m_, eq * m_, m_, m_) = zz;
        }
        double d = 0.0;
        if (n_per_ > 1) d = (i == 0 || i == n_per_ - 1) ? 1.0 : 2.0;
        M.diagonal().array() += w2_ * d;
        return M;
    }

    void factorize() {
        factors_.clear();
        factors_.reserve(n_per_);
        Eigen::MatrixXd U = diag_block(0);
        for (int i = 0;; ++i) {
            Eigen::LDLT<Eigen::MatrixXd> ldlt(U);
            if (ldlt.info() != Eigen::Success ||
                ldlt.vectorD().minCoeff() <= 1e-13 * std::max(1.0, U.norm())) {
                throw RankDeficient("stacked TV-VAR normal equations are singular "
                                    "(period block " + std::to_string(i) + ")");
            }
            factors_.push_back(std::move(ldlt));
            if (i + 1 >= n_per_) break;
            // U_{i+1} = M_{i+1,i+1} - w^4 U_i^{-1}
            U = diag_block(i + 1);
            if (w2_ > 0.0) {
                U.noalias() -= (w2_ * w2_) * factors_.back().solve(
                                                 Eigen::MatrixXd::Identity(q_, q_));
            }
        }
    }

    std::vector<Eigen::VectorXd> solve_once(const std::vector<Eigen::VectorXd>& b) const {
        std::vector<Eigen::VectorXd> v(n_per_);
        v[0] = b[0];
        for (int i = 1; i < n_per_; ++i) {
            v[i] = b[i];
            if (w2_ > 0.0) v[i].noalias() += w2_ * factors_[i - 1].solve(v[i - 1]);
        }
        std::vector<Eigen::VectorXd> x(n_per_);
        x[n_per_ - 1] = factors_[n_per_ - 1].solve(v[n_per_ - 1]);
        for (int i = n_per_ - 2; i >= 0; --i) {
            Eigen::VectorXd t = v[i];
            if (w2_ > 0.0) t.noalias() += w2_ * x[i + 1];
            x[i] = factors_[i].solve(t);
        }
        return x;
    }

    /// r = rhs - M beta, using the block structure.
    std::vector<Eigen::VectorXd> residual_vec(const std::vector<Eigen::VectorXd>& beta) const {
        std::vector<Eigen::VectorXd> r(n_per_);
        for (int i = 0; i < n_per_; ++i) {
            Eigen::VectorXd acc = Eigen::VectorXd::Zero(q_);
            // data part: blkdiag(z z') beta_i
            for (int eq = 0; eq < k_; ++eq) {
                const double fitted = z_[i].dot(beta[i].segment(eq * m_, m_));
                acc.segment(eq * m_, m_) = z_[i] * fitted;
            }
            if (w2_ > 0.0 && n_per_ > 1) {
                const double d = (i == 0 || i == n_per_ - 1) ? 1.0 : 2.0;
                acc.noalias() += (w2_ * d) * beta[i];
                if (i > 0) acc.noalias() -= w2_ * beta[i - 1];
                if (i + 1 < n_per_) acc.noalias() -= w2_ * beta[i + 1];
            }
            r[i] = rhs_[i] - acc;
        }
        return r;
    }

    const Eigen::MatrixXd& Y_;
    int T_, k_, p_, m_, q_, n_per_;
    double w2_;
    std::vector<Eigen::VectorXd> z_;
    std::vector<Eigen::VectorXd> rhs_;
    std::vector<Eigen::LDLT<Eigen::MatrixXd>> factors_;
};

TvVarFit fit_from_matrix(const Eigen::MatrixXd& Y, int p, double w) {
    const int T = static_cast<int>(Y.rows());
    const int k = static_cast<int>(Y.cols());
    const int m = 1 + k * p;
    if (T - p < 3 * m) {
        throw TooShort("need T - p >= 3*(k*p+1) observations for the TV-VAR");
    }
    StackedSolver solver(Y, p, w);
    std::vector<Eigen::VectorXd> beta = solver.solve();

    TvVarFit fit;
    fit.k = k;
    fit.p = p;
    fit.smoothness_weight = w;
    const int n_per = T - p;
    fit.nu_t.reserve(n_per);
    fit.A_t.reserve(n_per);
    fit.residuals.resize(n_per, k);
    for (int i = 0; i < n_per; ++i) {
        const Eigen::VectorXd z = solver.regressor(i);
        Eigen::VectorXd nu(k);
        std::vector<Eigen::MatrixXd> As(p, Eigen::MatrixXd(k, k));
        for (int eq = 0; eq < k; ++eq) {
            const auto b = beta[i].segment(eq * m, m);
            nu(eq) = b(0);
            for (int j = 0; j < p; ++j) {
                As[j].row(eq) = b.segment(1 + j * k, k).transpose();
            }
            fit.residuals(i, eq) = Y(p + i, eq) - z.dot(b);
        }
        fit.nu_t.push_back(std::move(nu));
        fit.A_t.push_back(std::move(As));
    }
    return fit;
}

}  // namespace

bool FlaggedPath::all_stable() const noexcept {
    for (auto s : stable) {
        if (!s) return false;
    }
    return true;
}

std::vector<int> FlaggedPath::unstable_periods() const {
    std::vector<int> out;
    for (int i = 0; i < static_cast<int>(stable.size()); ++i) {
        if (!stable[i]) out.push_back(i);
    }
    return out;
}

TvVarFit fit_tvvar(const ReturnPanel& panel, int p, double smoothness_weight) {
    if (!(smoothness_weight > 0.0)) {
        throw NonPositiveWeight("smoothness weight must be positive");
    }
    if (p < 1) throw InvalidConfig("lag order must be positive");
    return fit_from_matrix(panel.matrix, p, smoothness_weight);
}

FlaggedPath efficiency_path_flagged(const TvVarFit& fit) {
    const int n = fit.periods();
    FlaggedPath path;
    path.zeta.resize(n);
    path.stable.resize(n);
    const Eigen::MatrixXd eye = Eigen::MatrixXd::Identity(fit.k, fit.k);
    for (int i = 0; i < n; ++i) {
        const double radius = companion_spectral_radius(fit.A_t[i]);
        if (radius >= 1.0 - kStabilityMargin) {
            path.zeta[i] = kInf;
            path.stable[i] = 0;
            continue;
        }
        Eigen::MatrixXd asum = Eigen::MatrixXd::Zero(fit.k, fit.k);
        for (const auto& A : fit.A_t[i]) asum += A;
        const Eigen::MatrixXd longrun = (eye - asum).partialPivLu().solve(eye);
        path.zeta[i] = efficiency_degree(longrun);
        path.stable[i] = 1;
    }
    return path;
}

std::vector<double> efficiency_path(const TvVarFit& fit) {
    FlaggedPath path = efficiency_path_flagged(fit);
    if (!path.all_stable()) {
        throw UnstablePeriod("TV-VAR coefficient path breaches the stability "
                             "margin in " +
                                 std::to_string(path.unstable_periods().size()) +
                                 " period(s)",
                             path.unstable_periods());
    }
    return path.zeta;
}

EfficiencyPath null_bands(const ReturnPanel& panel, int p, double smoothness_weight,
                          int replications, double level, std::uint64_t base_seed) {
    if (replications < 100) throw InvalidConfig("need at least 100 replications");
    if (!(level > 0.0 && level < 1.0)) throw InvalidConfig("level must be in (0,1)");

    const TvVarFit observed = fit_tvvar(panel, p, smoothness_weight);
    const FlaggedPath observed_path = efficiency_path_flagged(observed);
    const int n_per = observed.periods();
    const int T = panel.periods();
    const int k = panel.dimension();

    Eigen::MatrixXd demeaned = panel.matrix;
    for (int c = 0; c < k; ++c) {
        demeaned.col(c).array() -= demeaned.col(c).mean();
    }

    // one zeta path per replication; per-replication seeds keep the result
    // independent of the thread schedule, with up to 3 attempts each
    std::vector<std::vector<double>> draws(replications);
    detail::parallel_for(replications, [&](int r) {
        for (int attempt = 0; attempt < 3; ++attempt) {
            Rng rng(substream_seed(base_seed, "band-bootstrap",
                                   static_cast<std::uint64_t>(r) * 3 + attempt));
            Eigen::MatrixXd resampled(T, k);
            for (int t = 0; t < T; ++t) {
                resampled.row(t) = demeaned.row(rng.uniform_int(T));
            }
            try {
                TvVarFit refit = fit_from_matrix(resampled, p, smoothness_weight);
                draws[r] = efficiency_path_flagged(refit).zeta;
                return;
            } catch (const Error&) {
                // resample again with the next attempt seed
            }
        }
        draws[r].clear();  // marks failure
    });

    for (const auto& d : draws) {
        if (d.empty()) {
            throw BandFailure("bootstrap replication failed after 3 attempts");
        }
    }

    EfficiencyPath out;
    out.zeta = observed_path.zeta;
    out.stable = observed_path.stable;
    out.replications = replications;
    out.band_lower.resize(n_per);
    out.band_upper.resize(n_per);
    const double q_lo = (1.0 - level) / 2.0;
    const double q_hi = 1.0 - q_lo;
    std::vector<double> column;
    column.reserve(replications);
    for (int i = 0; i < n_per; ++i) {
        column.clear();
        for (const auto& d : draws) {
            if (std::isfinite(d[i])) column.push_back(d[i]);
        }
        if (column.size() < 2) {
            out.band_lower[i] = kInf;
            out.band_upper[i] = kInf;
            continue;
        }
        out.band_lower[i] = detail::quantile_type7(column, q_lo);
        out.band_upper[i] = detail::quantile_type7(column, q_hi);
    }
    return out;
}

WeightSelection select_weight(const ReturnPanel& panel, int p) {
    const int T = panel.periods();
    const int k = panel.dimension();
    const int m = 1 + k * p;
    WeightSelection sel;
    sel.grid = {0.1, 1.0, 10.0, 100.0};

    const int min_train = p + 3 * m + 8;
    const int n_valid = std::min(60, std::max(20, T / 10));
    const int first = std::max(min_train, T - n_valid);
    if (first >= T) throw TooShort("panel too short for weight selection");

    sel.forecast_rmse.resize(sel.grid.size());
    detail::parallel_for(static_cast<int>(sel.grid.size()), [&](int gi) {
        const double w = sel.grid[gi];
        double sse = 0.0;
        int count = 0;
        for (int t = first; t < T; ++t) {
            const TvVarFit fit = fit_from_matrix(panel.matrix.topRows(t), p, w);
            const auto& nu = fit.nu_t.back();
            const auto& As = fit.A_t.back();
            Eigen::VectorXd pred = nu;
            for (int j = 1; j <= p; ++j) {
                pred.noalias() += As[j - 1] * panel.matrix.row(t - j).transpose();
            }
            sse += (panel.matrix.row(t).transpose() - pred).squaredNorm();
            ++count;
        }
        sel.forecast_rmse[gi] = std::sqrt(sse / (count * k));
    });

    int best = 0;
    for (std::size_t i = 1; i < sel.grid.size(); ++i) {
        if (sel.forecast_rmse[i] < sel.forecast_rmse[best]) best = static_cast<int>(i);
    }
    sel.weight = sel.grid[best];
    return sel;
}

namespace tvvar_detail {

std::vector<Eigen::VectorXd> solve_stacked(const Eigen::MatrixXd& Y, int p, double w) {
    if (w < 0.0) throw NonPositiveWeight("smoothness weight must be nonnegative here");
    StackedSolver solver(Y, p, w);
    return solver.solve();
}

}  // namespace tvvar_detail

}  // namespace tveff
