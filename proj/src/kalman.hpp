#ifndef TVEFF_SRC_KALMAN_HPP
#define TVEFF_SRC_KALMAN_HPP

#include <Eigen/Dense>
#include <cmath>
#include <numbers>
#include <optional>
#include <vector>

namespace tveff::detail {

/// Local level + dummy-variable seasonal structural model with Gaussian
/// disturbances, in state-space form:
///   x_t      = mu_t + gamma_t + eps_t,             eps ~ N(0, h)
///   mu_{t+1} = mu_t + xi_t,                        xi  ~ N(0, q_level)
///   gamma_{t+1} = -(gamma_t + ... + gamma_{t-s+2}) + omega_t,
///                                                  omega ~ N(0, q_seas)
/// State alpha = (mu, gamma_t, ..., gamma_{t-s+2}), dimension s. Missing
/// observations skip the measurement update; the smoother interpolates them.
class SeasonalStructuralModel {
public:
    SeasonalStructuralModel(const std::vector<std::optional<double>>& x, int season)
        : x_(x), s_(std::max(season, 1)), d_(s_ == 1 ? 1 : s_) {
        Tm_ = Eigen::MatrixXd::Zero(d_, d_);
        Tm_(0, 0) = 1.0;
        if (d_ > 1) {
            for (int j = 1; j < d_; ++j) Tm_(1, j) = -1.0;
            for (int j = 2; j < d_; ++j) Tm_(j, j - 1) = 1.0;
        }
        double mean = 0.0;
        int count = 0;
        for (const auto& v : x_) {
            if (v.has_value()) {
                mean += *v;
                ++count;
            }
        }
        init_level_ = count > 0 ? mean / count : 0.0;
    }

    int state_dim() const noexcept { return d_; }

    /// Gaussian log-likelihood from the prediction-error decomposition,
    /// skipping the first state_dim+1 observed updates (approximate-diffuse
    /// burn-in).
    double loglik(double h, double q_level, double q_seas) const {
        Eigen::VectorXd a;
        Eigen::MatrixXd P;
        init_state(a, P);
        double ll = 0.0;
        int updates = 0;
        const int burn = d_ + 1;
        for (std::size_t t = 0; t < x_.size(); ++t) {
            if (t > 0) predict(a, P, q_level, q_seas);
            if (!x_[t].has_value()) continue;
            const double F = zPz(P) + h;
            const double v = *x_[t] - za(a);
            update(a, P, v, F);
            ++updates;
            if (updates > burn) {
                ll -= 0.5 * (std::log(2.0 * std::numbers::pi) + std::log(F) + v * v / F);
            }
        }
        return ll;
    }

    /// Smoothed signal Z * alpha_{t|n} for every t (RTS fixed-interval pass).
    std::vector<double> smoothed_signal(double h, double q_level, double q_seas) const {
        const int n = static_cast<int>(x_.size());
        std::vector<Eigen::VectorXd> a_pred(n), a_filt(n);
        std::vector<Eigen::MatrixXd> P_pred(n), P_filt(n);

        Eigen::VectorXd a;
        Eigen::MatrixXd P;
        init_state(a, P);
        for (int t = 0; t < n; ++t) {
            if (t > 0) predict(a, P, q_level, q_seas);
            a_pred[t] = a;
            P_pred[t] = P;
            if (x_[t].has_value()) {
                const double F = zPz(P) + h;
                const double v = *x_[t] - za(a);
                update(a, P, v, F);
            }
            a_filt[t] = a;
            P_filt[t] = P;
        }

        std::vector<double> signal(n);
        Eigen::VectorXd a_smooth = a_filt[n - 1];
        signal[n - 1] = za(a_smooth);
        for (int t = n - 2; t >= 0; --t) {
            // C = P_filt T' P_pred(t+1)^{-1}; LDLT keeps near-singular P safe
            Eigen::MatrixXd C = P_pred[t + 1].ldlt()
                                    .solve(Tm_ * P_filt[t].transpose())
                                    .transpose();
            a_smooth = a_filt[t] + C * (a_smooth - a_pred[t + 1]);
            signal[t] = za(a_smooth);
        }
        return signal;
    }

private:
    void init_state(Eigen::VectorXd& a, Eigen::MatrixXd& P) const {
        a = Eigen::VectorXd::Zero(d_);
        a(0) = init_level_;
        P = 1e7 * Eigen::MatrixXd::Identity(d_, d_);
    }

    void predict(Eigen::VectorXd& a, Eigen::MatrixXd& P, double q_level,
                 double q_seas) const {
        a = Tm_ * a;
        P = Tm_ * P * Tm_.transpose();
        P(0, 0) += q_level;
        if (d_ > 1) P(1, 1) += q_seas;
        P = 0.5 * (P + P.transpose());
    }

    double za(const Eigen::VectorXd& a) const {
        return d_ > 1 ? a(0) + a(1) : a(0);
    }

    double zPz(const Eigen::MatrixXd& P) const {
        if (d_ == 1) return P(0, 0);
        return P(0, 0) + 2.0 * P(0, 1) + P(1, 1);
    }

    void update(Eigen::VectorXd& a, Eigen::MatrixXd& P, double v, double F) const {
        // K = P Z' / F with Z = (1, 1, 0, ...)
        Eigen::VectorXd PZ = P.col(0);
        if (d_ > 1) PZ += P.col(1);
        const Eigen::VectorXd K = PZ / F;
        a += K * v;
        P -= K * PZ.transpose();
        P = 0.5 * (P + P.transpose());
    }

    const std::vector<std::optional<double>>& x_;
    int s_;
    int d_;
    Eigen::MatrixXd Tm_;
    double init_level_;
};

}  // namespace tveff::detail

#endif  // TVEFF_SRC_KALMAN_HPP
