#ifndef TVEFF_VAR_HPP
#define TVEFF_VAR_HPP

#include <Eigen/Dense>
#include <vector>

#include "tveff/series.hpp"

namespace tveff {

/// Least-squares VAR(p) fit with HAC inference. Immutable.
struct VarFit {
    int k = 0;
    int p = 0;
    Eigen::VectorXd nu;                 // k intercepts
    std::vector<Eigen::MatrixXd> A;     // p lag matrices, k x k
    Eigen::MatrixXd residuals;          // (T-p) x k
    Eigen::MatrixXd regressors;         // (T-p) x (1+k*p), retained for hansen_lc
    Eigen::MatrixXd sigma;              // k x k residual covariance (ML, /n)
    Eigen::MatrixXd hac_se;             // (1+k*p) x k, column = equation
    Eigen::VectorXd adj_r2;             // per-equation adjusted R^2
    double bic = 0.0;

    int observations() const noexcept { return static_cast<int>(residuals.rows()); }
    int coefficients_per_equation() const noexcept { return 1 + k * p; }
};

/// Hansen joint parameter-constancy report: L_C statistic against
/// random-walk parameter variation, pooled over k*(k*p+1) regression
/// coefficients plus k residual variances.
struct ConstancyReport {
    double l_c = 0.0;
    int n_params = 0;
    bool decision_at_1pct = false;  // true = constancy rejected at 1%
};

/// Equation-by-equation OLS with Bartlett-kernel HAC standard errors
/// (truncation floor(4*(n/100)^{2/9})). Throws DegenerateInput on a
/// zero-variance column, RankDeficient when the regressor matrix is
/// numerically singular (condition > 1e12).
VarFit fit_var(const ReturnPanel& panel, int p);

/// BIC lag selection on the common sample T* = T - p_max:
/// argmin_p ln det(Sigma_p) + (ln T*/T*) * p * k^2.
int select_lag_bic(const ReturnPanel& panel, int p_max);

/// Hansen L_C for the fitted VAR. Throws SingularScoreCovariance when the
/// pooled score outer-product matrix is singular (e.g. perfect fit).
ConstancyReport hansen_lc(const VarFit& fit);

/// VMA coefficients Phi_0..Phi_horizon: Phi_0 = I,
/// Phi_s = sum_{j=1..min(s,p)} Phi_{s-j} A_j.
std::vector<Eigen::MatrixXd> vma_coefficients(const VarFit& fit, int horizon);

/// Long-run impulse-response sum (I - sum A_j)^{-1}. Throws Unstable when
/// the companion spectral radius is >= 1 - 1e-8.
Eigen::MatrixXd longrun_sum(const VarFit& fit);
Eigen::MatrixXd longrun_sum(const std::vector<Eigen::MatrixXd>& lag_matrices);

/// Spectral radius of the VAR companion matrix.
double companion_spectral_radius(const std::vector<Eigen::MatrixXd>& lag_matrices);

/// Degree of deviation from joint efficiency: largest singular value of
/// (longrun - I). Zero means shocks do not propagate.
double efficiency_degree(const Eigen::MatrixXd& longrun);

}  // namespace tveff

#endif  // TVEFF_VAR_HPP
