#include "tveff/var.hpp"

#include <cmath>
#include <limits>
#include <string>

#include "tveff/critical_values.hpp"
#include "tveff/errors.hpp"

namespace tveff {

namespace {

constexpr double kStabilityMargin = 1e-8;

/// Regressor matrix [1, y_{t-1}', ..., y_{t-p}'] over t = first_t .. T-1
/// (0-based), paired response rows.
void build_regression(const Eigen::MatrixXd& Y, int p, int first_t,
                      Eigen::MatrixXd& X, Eigen::MatrixXd& Yout) {
    const int T = static_cast<int>(Y.rows());
    const int k = static_cast<int>(Y.cols());
    const int n = T - first_t;
    X.resize(n, 1 + k * p);
    Yout.resize(n, k);
    for (int i = 0; i < n; ++i) {
        const int t = first_t + i;
        X(i, 0) = 1.0;
        for (int j = 1; j <= p; ++j) {
            X.block(i, 1 + (j - 1) * k, 1, k) = Y.row(t - j);
        }
        Yout.row(i) = Y.row(t);
    }
}

}  // namespace

VarFit fit_var(const ReturnPanel& panel, int p) {
    const int T = panel.periods();
    const int k = panel.dimension();
    if (p < 1) throw InvalidConfig("lag order must be positive");
    const int m = 1 + k * p;
    if (T - p <= m) {
        throw TooShort("need T - p > k*p + 1 observations (T=" + std::to_string(T) +
                       ", p=" + std::to_string(p) + ", k=" + std::to_string(k) + ")");
    }
    for (int c = 0; c < k; ++c) {
        const auto col = panel.matrix.col(c);
        if ((col.array() - col.mean()).abs().maxCoeff() == 0.0) {
            const std::string name = static_cast<std::size_t>(c) < panel.markets.size()
                                         ? panel.markets[c]
                                         : std::to_string(c);
            throw DegenerateInput("panel column '" + name + "' has zero variance");
        }
    }

    Eigen::MatrixXd X, Y;
    build_regression(panel.matrix, p, p, X, Y);
    const int n = static_cast<int>(X.rows());

    Eigen::JacobiSVD<Eigen::MatrixXd> svd(X, Eigen::ComputeThinU | Eigen::ComputeThinV);
    const auto& sv = svd.singularValues();
    if (sv(sv.size() - 1) <= 0.0 || sv(0) / sv(sv.size() - 1) > 1e12) {
        throw RankDeficient("regressor matrix condition exceeds 1e12");
    }
    Eigen::MatrixXd B = svd.solve(Y);  // m x k
    Eigen::MatrixXd E = Y - X * B;     // n x k

    VarFit fit;
    fit.k = k;
    fit.p = p;
    fit.nu = B.row(0).transpose();
    for (int j = 0; j < p; ++j) {
        // A_j(i, c) = effect of y_{c, t-j-1} on equation i
        fit.A.push_back(B.block(1 + j * k, 0, k, k).transpose());
    }
    fit.residuals = E;
    fit.regressors = X;
    fit.sigma = E.transpose() * E / n;
    fit.bic = std::log(fit.sigma.determinant()) +
              std::log(static_cast<double>(n)) / n * p * k * k;

    // Bartlett-kernel HAC covariance per equation
    const int L = static_cast<int>(std::floor(4.0 * std::pow(n / 100.0, 2.0 / 9.0)));
    Eigen::MatrixXd XtX_inv = (X.transpose() * X).ldlt().solve(
        Eigen::MatrixXd::Identity(m, m));
    fit.hac_se.resize(m, k);
    fit.adj_r2.resize(k);
    for (int eq = 0; eq < k; ++eq) {
        Eigen::MatrixXd G = X.array().colwise() * E.col(eq).array();  // n x m scores
        Eigen::MatrixXd S = G.transpose() * G / n;
        for (int l = 1; l <= L; ++l) {
            const double wgt = 1.0 - static_cast<double>(l) / (L + 1);
            Eigen::MatrixXd Gamma =
                G.bottomRows(n - l).transpose() * G.topRows(n - l) / n;
            S += wgt * (Gamma + Gamma.transpose());
        }
        Eigen::MatrixXd V = XtX_inv * (n * S) * XtX_inv;
        fit.hac_se.col(eq) = V.diagonal().cwiseMax(0.0).cwiseSqrt();

        const double tss = (Y.col(eq).array() - Y.col(eq).mean()).square().sum();
        const double rss = E.col(eq).squaredNorm();
        const double r2 = tss > 0.0 ? 1.0 - rss / tss : 0.0;
        fit.adj_r2(eq) = 1.0 - (1.0 - r2) * (n - 1.0) / (n - m);
    }
    return fit;
}

int select_lag_bic(const ReturnPanel& panel, int p_max) {
    const int T = panel.periods();
    const int k = panel.dimension();
    if (p_max < 1) throw InvalidConfig("p_max must be positive");
    if (T - p_max <= 1 + k * p_max) {
        throw TooShort("sample too short for p_max=" + std::to_string(p_max));
    }
    const int n = T - p_max;  // common sample
    int best_p = 1;
    double best = std::numeric_limits<double>::infinity();
    for (int p = 1; p <= p_max; ++p) {
        Eigen::MatrixXd X, Y;
        build_regression(panel.matrix, p, p_max, X, Y);
        Eigen::MatrixXd B =
            (X.transpose() * X).ldlt().solve(X.transpose() * Y);
        Eigen::MatrixXd E = Y - X * B;
        Eigen::MatrixXd Sigma = E.transpose() * E / n;
        const double crit = std::log(Sigma.determinant()) +
                            std::log(static_cast<double>(n)) / n * p * k * k;
        if (crit < best) {
            best = crit;
            best_p = p;
        }
    }
    return best_p;
}

ConstancyReport hansen_lc(const VarFit& fit) {
    const int n = fit.observations();
    const int k = fit.k;
    const int m = fit.coefficients_per_equation();
    const int n_params = k * m + k;
    if (n < 10 * n_params) {
        throw TooShort("need at least 10 observations per parameter for the "
                       "constancy test");
    }
    if (n_params > kHansenMaxParams) {
        throw InvalidConfig("no tabulated critical value for " +
                            std::to_string(n_params) + " parameters");
    }

    const Eigen::MatrixXd& X = fit.regressors;
    const Eigen::MatrixXd& E = fit.residuals;

    // pooled scores: per equation the m coefficient scores x_t * e_t, then
    // per equation the variance score e_t^2 - sigma^2 (sigma^2 = mean e^2,
    // so every score column sums to zero by the first-order conditions)
    Eigen::MatrixXd F(n, n_params);
    for (int eq = 0; eq < k; ++eq) {
        F.block(0, eq * m, n, m) = X.array().colwise() * E.col(eq).array();
    }
    for (int eq = 0; eq < k; ++eq) {
        const double s2 = E.col(eq).squaredNorm() / n;
        F.col(k * m + eq) = E.col(eq).array().square() - s2;
    }

    Eigen::MatrixXd V = F.transpose() * F;
    Eigen::FullPivLU<Eigen::MatrixXd> lu(V);
    lu.setThreshold(1e-10);
    if (lu.rank() < n_params) {
        throw SingularScoreCovariance("pooled score outer-product matrix is singular");
    }

    // S_t = cumulative score sums; L_C = tr(V^{-1} sum_t S_t S_t') / n
    Eigen::MatrixXd S = F;
    for (int t = 1; t < n; ++t) S.row(t) += S.row(t - 1);
    Eigen::MatrixXd M = S.transpose() * S;

    ConstancyReport report;
    report.n_params = n_params;
    report.l_c = lu.solve(M).trace() / n;
    report.decision_at_1pct = report.l_c > hansen_critical_values(n_params).pct1;
    return report;
}

std::vector<Eigen::MatrixXd> vma_coefficients(const VarFit& fit, int horizon) {
    std::vector<Eigen::MatrixXd> phi;
    phi.reserve(horizon + 1);
    phi.push_back(Eigen::MatrixXd::Identity(fit.k, fit.k));
    for (int s = 1; s <= horizon; ++s) {
        Eigen::MatrixXd acc = Eigen::MatrixXd::Zero(fit.k, fit.k);
        const int jmax = std::min(s, fit.p);
        for (int j = 1; j <= jmax; ++j) {
            acc += phi[s - j] * fit.A[j - 1];
        }
        phi.push_back(std::move(acc));
    }
    return phi;
}

double companion_spectral_radius(const std::vector<Eigen::MatrixXd>& lag_matrices) {
    const int p = static_cast<int>(lag_matrices.size());
    const int k = static_cast<int>(lag_matrices.front().rows());
    Eigen::MatrixXd C = Eigen::MatrixXd::Zero(k * p, k * p);
    for (int j = 0; j < p; ++j) {
        C.block(0, j * k, k, k) = lag_matrices[j];
    }
    if (p > 1) {
        C.block(k, 0, k * (p - 1), k * (p - 1)) =
            Eigen::MatrixXd::Identity(k * (p - 1), k * (p - 1));
    }
    return C.eigenvalues().cwiseAbs().maxCoeff();
}

Eigen::MatrixXd longrun_sum(const std::vector<Eigen::MatrixXd>& lag_matrices) {
    const int k = static_cast<int>(lag_matrices.front().rows());
    const double radius = companion_spectral_radius(lag_matrices);
    if (radius >= 1.0 - kStabilityMargin) {
        throw Unstable("companion spectral radius " + std::to_string(radius) +
                       " breaches the stability margin");
    }
    Eigen::MatrixXd asum = Eigen::MatrixXd::Zero(k, k);
    for (const auto& A : lag_matrices) asum += A;
    return (Eigen::MatrixXd::Identity(k, k) - asum)
        .partialPivLu()
        .solve(Eigen::MatrixXd::Identity(k, k));
}

Eigen::MatrixXd longrun_sum(const VarFit& fit) { return longrun_sum(fit.A); }

double efficiency_degree(const Eigen::MatrixXd& longrun) {
    const int k = static_cast<int>(longrun.rows());
    Eigen::MatrixXd D = longrun - Eigen::MatrixXd::Identity(k, k);
    return D.jacobiSvd().singularValues()(0);
}

}  // namespace tveff
