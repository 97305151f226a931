#pragma once

#include "tricl/multigraph.hpp"
#include "tricl/optim.hpp"
#include "tricl/statistics.hpp"
#include "tricl/types.hpp"

#include <vector>

namespace tricl {

/// Log pmf of one dyad count under the zero-modified Poisson reference:
/// log P(A = a) = a log(lambda) - log(a!) + theta_nonzero * 1[a > 0] - log Z,
/// Z = 1 + exp(theta_nonzero) * (exp(lambda) - 1).
/// With theta_nonzero = 0 this is exactly the Poisson log pmf.
double dyad_log_pmf(std::int64_t a, double lambda, double theta_nonzero);

struct CountFitOptions {
    bool include_nonzero = true;
    int max_iterations = 500;
};

/// Dyad-independent count model: per-dyad rate lambda_ij = exp(theta_sum +
/// sum_r theta_r x^(r)_ij), optional nonzero (zero-modification) term.
/// The likelihood factorizes over dyads, so the MLE is exact -- no
/// simulation. Coefficients are reported in the order
/// [sum, nonzero?, covariates...].
FitResult fit_count(const MultiEdgeNetwork& net,
                    const std::vector<StatisticMatrix>& covariates,
                    const CountFitOptions& options = {});

/// Log-likelihood and analytic gradient over the packed parameter vector;
/// exposed for gradient checks.
double count_log_likelihood(const MultiEdgeNetwork& net,
                            const std::vector<StatisticMatrix>& covariates,
                            bool include_nonzero, const Vector& theta);
Vector count_log_likelihood_gradient(const MultiEdgeNetwork& net,
                                     const std::vector<StatisticMatrix>& covariates,
                                     bool include_nonzero, const Vector& theta);

}  // namespace tricl
