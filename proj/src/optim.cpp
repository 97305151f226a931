#include "tricl/optim.hpp"

#include <cmath>
#include <limits>
#include <sstream>

namespace tricl {

std::string significance_stars(double p_value) {
    if (!std::isfinite(p_value))
        return "";
    if (p_value < 0.001)
        return "***";
    if (p_value < 0.01)
        return "**";
    if (p_value < 0.05)
        return "*";
    if (p_value < 0.1)
        return ".";
    return "";
}

Vector numerical_gradient(const Objective& f, const Vector& theta, double step) {
    const Index p = theta.size();
    Vector grad(p);
    Vector probe = theta;
    for (Index j = 0; j < p; ++j) {
        const double h = step * (1.0 + std::abs(theta(j)));
        probe(j) = theta(j) + h;
        const double up = f(probe);
        probe(j) = theta(j) - h;
        const double down = f(probe);
        probe(j) = theta(j);
        grad(j) = (up - down) / (2.0 * h);
    }
    return grad;
}

MaximizeResult maximize_bfgs(const Objective& f, const Gradient& grad, Vector theta0,
                             const MaximizeOptions& options) {
    const Index p = theta0.size();
    auto gradient = [&](const Vector& th) {
        return grad ? grad(th) : numerical_gradient(f, th, options.fd_step);
    };

    Vector theta = std::move(theta0);
    double value = f(theta);
    Vector g = gradient(theta);
    Matrix hinv = Matrix::Identity(p, p);

    MaximizeResult result;
    for (int iter = 1; iter <= options.max_iterations; ++iter) {
        result.iterations = iter;
        if (g.lpNorm<Eigen::Infinity>() < options.grad_tol) {
            result.theta = theta;
            result.value = value;
            result.converged = true;
            return result;
        }

        Vector direction = hinv * g;
        if (direction.dot(g) <= 0.0) {
            // Curvature update went bad; restart from steepest ascent.
            hinv.setIdentity();
            direction = g;
        }

        // Backtracking Armijo line search on the ascent direction.
        double step = 1.0;
        const double slope = direction.dot(g);
        double new_value = -std::numeric_limits<double>::infinity();
        Vector candidate;
        bool improved = false;
        for (int ls = 0; ls < 60; ++ls) {
            candidate = theta + step * direction;
            new_value = f(candidate);
            if (std::isfinite(new_value) && new_value >= value + 1e-4 * step * slope) {
                improved = true;
                break;
            }
            step *= 0.5;
        }
        if (!improved) {
            // No ascent possible along this direction at any step size: the
            // objective change is numerically zero, which satisfies the
            // relative-change criterion.
            result.theta = theta;
            result.value = value;
            result.converged = true;
            return result;
        }

        Vector new_g = gradient(candidate);
        const Vector s = candidate - theta;
        const Vector y = new_g - g;  // note: ascent, y = g_{k+1} - g_k
        const double sy = s.dot(y);
        if (sy < -1e-12 * s.norm() * y.norm()) {
            const Vector hy = hinv * y;
            const double yhy = y.dot(hy);
            hinv += ((-sy + yhy) / (sy * sy)) * (s * s.transpose()) -
                    (hy * s.transpose() + s * hy.transpose()) / sy;
        } else {
            hinv.setIdentity();
        }

        const double change = new_value - value;
        theta = candidate;
        g = new_g;
        const bool small_change = std::abs(change) < options.rel_tol * (1.0 + std::abs(new_value));
        value = new_value;
        if (small_change || g.lpNorm<Eigen::Infinity>() < options.grad_tol) {
            result.theta = theta;
            result.value = value;
            result.converged = true;
            return result;
        }
    }

    std::ostringstream trace;
    trace << "optimizer failed to converge after " << options.max_iterations
          << " iterations; log-likelihood " << value << ", gradient max-norm "
          << g.lpNorm<Eigen::Infinity>() << ", theta = [";
    for (Index j = 0; j < p; ++j)
        trace << (j ? ", " : "") << theta(j);
    trace << "]";
    throw ModelError(trace.str());
}

Matrix observed_information(const Objective& log_lik, const Vector& theta_hat) {
    const Index p = theta_hat.size();
    Vector h(p);
    for (Index j = 0; j < p; ++j)
        h(j) = 1e-4 * (1.0 + std::abs(theta_hat(j)));

    Matrix hess(p, p);
    const double f0 = log_lik(theta_hat);
    Vector probe = theta_hat;
    for (Index i = 0; i < p; ++i) {
        probe(i) = theta_hat(i) + h(i);
        const double up = log_lik(probe);
        probe(i) = theta_hat(i) - h(i);
        const double down = log_lik(probe);
        probe(i) = theta_hat(i);
        hess(i, i) = (up - 2.0 * f0 + down) / (h(i) * h(i));
    }
    for (Index i = 0; i < p; ++i) {
        for (Index j = i + 1; j < p; ++j) {
            Vector q = theta_hat;
            q(i) += h(i); q(j) += h(j);
            const double pp = log_lik(q);
            q(j) -= 2.0 * h(j);
            const double pm = log_lik(q);
            q(i) -= 2.0 * h(i);
            const double mm = log_lik(q);
            q(j) += 2.0 * h(j);
            const double mp = log_lik(q);
            hess(i, j) = hess(j, i) = (pp - pm - mp + mm) / (4.0 * h(i) * h(j));
        }
    }
    return -hess;
}

std::vector<Coefficient> wald_coefficients(const std::vector<std::string>& names,
                                           const Vector& theta_hat, const Matrix& information) {
    const Index p = theta_hat.size();
    std::vector<Coefficient> table(static_cast<std::size_t>(p));
    for (Index j = 0; j < p; ++j) {
        table[static_cast<std::size_t>(j)].name = names[static_cast<std::size_t>(j)];
        table[static_cast<std::size_t>(j)].estimate = theta_hat(j);
    }

    Eigen::SelfAdjointEigenSolver<Matrix> eig(information);
    const Vector& lambda = eig.eigenvalues();
    const Matrix& vec = eig.eigenvectors();
    const double scale = lambda.cwiseAbs().maxCoeff();
    const double tol = scale > 0.0 ? scale * 1e-10 : 1.0;

    // Coefficients with weight in the (near-)null space of the information
    // are unidentified; the rest get pseudo-inverse variances.
    for (Index j = 0; j < p; ++j) {
        double null_weight = 0.0;
        double var = 0.0;
        for (Index k = 0; k < p; ++k) {
            if (lambda(k) <= tol)
                null_weight += vec(j, k) * vec(j, k);
            else
                var += vec(j, k) * vec(j, k) / lambda(k);
        }
        auto& coef = table[static_cast<std::size_t>(j)];
        if (null_weight > 1e-8 || !(var > 0.0) || !std::isfinite(var)) {
            coef.unidentified = true;
            coef.std_err = std::numeric_limits<double>::quiet_NaN();
            coef.p_value = std::numeric_limits<double>::quiet_NaN();
        } else {
            coef.std_err = std::sqrt(var);
            const double z = coef.estimate / coef.std_err;
            coef.p_value = std::erfc(std::abs(z) / std::sqrt(2.0));
        }
    }
    return table;
}

}  // namespace tricl
