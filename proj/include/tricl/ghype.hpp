#pragma once

#include "tricl/multigraph.hpp"
#include "tricl/optim.hpp"
#include "tricl/statistics.hpp"
#include "tricl/types.hpp"

#include <optional>
#include <string>
#include <vector>

namespace tricl {

enum class GhypeLikelihood { exact, multinomial };

/// Dyad covariate on the propensity scale: Omega contributions are
/// exp(theta * x) per dyad, so x already carries the zero-shift transform.
struct GhypeCovariate {
    std::string name;
    Matrix x;
};

/// Generalized hypergeometric ensemble: an urn over dyads with Xi_ij edge
/// slots per dyad and relative propensities Omega_ij = exp(sum_r theta_r *
/// x^(r)_ij). theta = 0 is the plain configuration-model null.
struct GhypeModel {
    Matrix xi;
    std::vector<GhypeCovariate> covariates;
    Vector theta;
    bool degree_corrected = true;

    static GhypeModel build(const MultiEdgeNetwork& net,
                            const std::vector<StatisticMatrix>& covariates,
                            bool degree_corrected);
};

/// Xi_ij = k_i * k_j (zero diagonal). Dyads with a zero-degree endpoint get
/// Xi = 0 and are excluded from the sampling space.
Matrix build_xi_configuration(const MultiEdgeNetwork& net);

/// Constant Xi_ij = <k>^2 off the diagonal.
Matrix build_xi_mean_degree(const MultiEdgeNetwork& net);

/// Log-scale covariate transform: log(1 + w) for count-valued statistics,
/// +/-1 contrast for binary match indicators. Either way w = "no signal"
/// maps to Omega = 1 at theta = 0.
Matrix covariate_log_scale(const StatisticMatrix& stat);

/// Omega_ij = exp(sum_r theta_r * x^(r)_ij); identically one when theta = 0.
Matrix omega(const GhypeModel& model);

/// Exact log-probability of drawing counts `a` from an urn with `xi` slots
/// and weights `omega` per category (multivariate Wallenius noncentral
/// hypergeometric). The defining integral is evaluated on the transformed
/// variable z = exp(-v) by adaptive Gauss-Kronrod quadrature.
double wallenius_log_pmf(const Vector& xi, const Vector& omega, const CountVector& a,
                         double rel_tol = 1e-10);

/// Multinomial approximation: cell probabilities p_d = xi_d * omega_d /
/// sum(xi * omega), including the multinomial coefficient. Returns -inf when
/// a cell with zero probability holds a positive count.
double multinomial_log_pmf(const Vector& xi, const Vector& omega, const CountVector& a);

/// Exact Eq.-style log-likelihood of the network under the model, dyads
/// enumerated once (unordered).
double log_likelihood(const GhypeModel& model, const MultiEdgeNetwork& net);

/// Multinomial-approximation log-likelihood (large-Xi regime).
double log_likelihood_multinomial(const GhypeModel& model, const MultiEdgeNetwork& net);

/// Analytic gradient of log_likelihood_multinomial with respect to theta.
Vector log_likelihood_multinomial_gradient(const GhypeModel& model, const MultiEdgeNetwork& net);

struct GhypeFitOptions {
    bool degree_corrected = true;
    /// Unset means: exact when the network has at most `exact_dyad_limit`
    /// dyads, multinomial above.
    std::optional<GhypeLikelihood> likelihood;
    Index exact_dyad_limit = 2000;
    int max_iterations = 500;
};

/// Numerical MLE of theta from the configuration-model start theta = 0.
FitResult fit(const MultiEdgeNetwork& net, const std::vector<StatisticMatrix>& covariates,
              const GhypeFitOptions& options = {});

}  // namespace tricl
