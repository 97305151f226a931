#pragma once

#include "tricl/types.hpp"

#include <functional>
#include <string>
#include <vector>

namespace tricl {

struct Coefficient {
    std::string name;
    double estimate = 0.0;
    double std_err = 0.0;
    double p_value = 1.0;
    bool unidentified = false;
};

/// R-style significance code for a two-sided p-value.
std::string significance_stars(double p_value);

/// Result of a maximum-likelihood fit. `null_aic` is the AIC of the model
/// with every coefficient fixed at zero (zero estimated parameters).
struct FitResult {
    std::string model;
    std::string likelihood_mode;
    std::vector<Coefficient> coefficients;
    double log_lik = 0.0;
    double aic = 0.0;
    double null_aic = 0.0;
    bool converged = false;
    int iterations = 0;
};

using Objective = std::function<double(const Vector&)>;
using Gradient = std::function<Vector(const Vector&)>;

struct MaximizeOptions {
    double grad_tol = 1e-6;      ///< max-norm convergence threshold
    double rel_tol = 1e-10;      ///< relative objective-change threshold
    int max_iterations = 500;
    double fd_step = 1e-6;       ///< central-difference step scale for gradients
};

struct MaximizeResult {
    Vector theta;
    double value = 0.0;
    bool converged = false;
    int iterations = 0;
};

/// Central-difference gradient of `f` with per-coordinate step
/// `step * (1 + |theta_j|)`.
Vector numerical_gradient(const Objective& f, const Vector& theta, double step);

/// BFGS ascent with backtracking line search. Stops when the gradient
/// max-norm drops below grad_tol or the relative objective change falls
/// below rel_tol; throws ModelError after max_iterations without either.
/// Pass a null Gradient to fall back to central differences.
MaximizeResult maximize_bfgs(const Objective& f, const Gradient& grad, Vector theta0,
                             const MaximizeOptions& options = {});

/// Observed information (negative Hessian of the log-likelihood) by central
/// second differences with step 1e-4 * (1 + |theta_j|) per coordinate.
Matrix observed_information(const Objective& log_lik, const Vector& theta_hat);

/// Wald table from the observed information: standard errors from the
/// inverse information, two-sided normal p-values. Coefficients whose
/// information is singular are flagged unidentified.
std::vector<Coefficient> wald_coefficients(const std::vector<std::string>& names,
                                           const Vector& theta_hat, const Matrix& information);

}  // namespace tricl
