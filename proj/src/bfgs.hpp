#ifndef TVEFF_SRC_BFGS_HPP
#define TVEFF_SRC_BFGS_HPP

#include <Eigen/Dense>
#include <cmath>
#include <functional>

namespace tveff::detail {

struct BfgsResult {
    Eigen::VectorXd x;
    double value = 0.0;
    int iterations = 0;
    bool converged = false;
};

/// Quasi-Newton minimization with numerical central-difference gradients and
/// box bounds enforced by projection. Backtracking Armijo line search.
inline BfgsResult bfgs_minimize(const std::function<double(const Eigen::VectorXd&)>& f,
                                Eigen::VectorXd x0, double lo, double hi,
                                int max_iter = 500, double grad_tol = 1e-8) {
    const int n = static_cast<int>(x0.size());
    auto clamp = [&](Eigen::VectorXd v) {
        return v.cwiseMax(lo).cwiseMin(hi);
    };
    auto gradient = [&](const Eigen::VectorXd& x) {
        Eigen::VectorXd g(n);
        for (int i = 0; i < n; ++i) {
            const double h = 1e-6 * std::max(1.0, std::abs(x(i)));
            Eigen::VectorXd xp = x, xm = x;
            xp(i) = std::min(x(i) + h, hi);
            xm(i) = std::max(x(i) - h, lo);
            const double denom = xp(i) - xm(i);
            g(i) = denom > 0 ? (f(xp) - f(xm)) / denom : 0.0;
        }
        return g;
    };

    BfgsResult res;
    res.x = clamp(std::move(x0));
    res.value = f(res.x);
    Eigen::VectorXd g = gradient(res.x);
    Eigen::MatrixXd H = Eigen::MatrixXd::Identity(n, n);

    for (res.iterations = 0; res.iterations < max_iter; ++res.iterations) {
        if (g.cwiseAbs().maxCoeff() < grad_tol) {
            res.converged = true;
            break;
        }
        Eigen::VectorXd dir = -(H * g);
        if (dir.dot(g) >= 0.0) {  // curvature update went bad; reset
            H.setIdentity();
            dir = -g;
        }
        double step = 1.0;
        double new_value = res.value;
        Eigen::VectorXd x_new = res.x;
        bool improved = false;
        for (int ls = 0; ls < 40; ++ls) {
            x_new = clamp(res.x + step * dir);
            new_value = f(x_new);
            if (new_value <= res.value + 1e-4 * step * dir.dot(g)) {
                improved = true;
                break;
            }
            step *= 0.5;
        }
        if (!improved || (res.x - x_new).cwiseAbs().maxCoeff() < 1e-14) break;

        Eigen::VectorXd g_new = gradient(x_new);
        const Eigen::VectorXd s = x_new - res.x;
        const Eigen::VectorXd y = g_new - g;
        const double sy = s.dot(y);
        if (sy > 1e-12) {
            const Eigen::VectorXd Hy = H * y;
            H += ((sy + y.dot(Hy)) / (sy * sy)) * (s * s.transpose()) -
                 (Hy * s.transpose() + s * Hy.transpose()) / sy;
        }
        res.x = std::move(x_new);
        res.value = new_value;
        g = std::move(g_new);
    }
    return res;
}

}  // namespace tveff::detail

#endif  // TVEFF_SRC_BFGS_HPP
