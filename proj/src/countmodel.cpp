#include "tricl/countmodel.hpp"

#include <cmath>
#include <limits>
#include <vector>

namespace tricl {

namespace {

/// log(exp(lambda) - 1), stable for both small and large lambda.
double log_expm1(double lambda) {
    if (lambda > 30.0)
        return lambda + std::log1p(-std::exp(-lambda));
    return std::log(std::expm1(lambda));
}

/// log Z = log(1 + exp(t) * (exp(lambda) - 1)).
double log_partition(double lambda, double theta_nonzero) {
    const double q = theta_nonzero + log_expm1(lambda);
    return q > 0.0 ? q + std::log1p(std::exp(-q)) : std::log1p(std::exp(q));
}

struct CountDyads {
    CountVector a;
    Matrix x;  // dyads x covariates, raw statistic values
};

CountDyads pack(const MultiEdgeNetwork& net, const std::vector<StatisticMatrix>& covariates) {
    const Index n = net.node_count();
    const Index r = static_cast<Index>(covariates.size());
    for (const auto& stat : covariates)
        if (stat.values.rows() != n || stat.values.cols() != n)
            throw InputError("covariate '" + stat.name + "' size does not match network");
    const Index d = n * (n - 1) / 2;
    CountDyads dyads{CountVector(d), Matrix(d, r)};
    Index row = 0;
    for (Index i = 0; i < n; ++i) {
        for (Index j = i + 1; j < n; ++j, ++row) {
            dyads.a(row) = net.count(i, j);
            for (Index c = 0; c < r; ++c) {
                const double value = covariates[static_cast<std::size_t>(c)].values(i, j);
                if (!std::isfinite(value))
                    throw InputError("covariate '" + covariates[static_cast<std::size_t>(c)].name +
                                     "' has a nonfinite dyad value");
                dyads.x(row, c) = value;
            }
        }
    }
    return dyads;
}

// theta layout: [sum, nonzero?, covariates...]
double packed_log_lik(const CountDyads& dyads, bool include_nonzero, const Vector& theta) {
    const Index d = dyads.a.size();
    const double t_nz = include_nonzero ? theta(1) : 0.0;
    const Index cov0 = include_nonzero ? 2 : 1;
    double ll = 0.0;
    for (Index i = 0; i < d; ++i) {
        double eta = theta(0);
        for (Index c = cov0; c < theta.size(); ++c)
            eta += theta(c) * dyads.x(i, c - cov0);
        if (eta > 690.0)  // rate overflow: the likelihood vanishes
            return -std::numeric_limits<double>::infinity();
        const double lambda = std::exp(std::max(eta, -744.0));
        ll += dyad_log_pmf(dyads.a(i), lambda, t_nz);
    }
    return ll;
}

Vector packed_gradient(const CountDyads& dyads, bool include_nonzero, const Vector& theta) {
    const Index d = dyads.a.size();
    const double t_nz = include_nonzero ? theta(1) : 0.0;
    const Index cov0 = include_nonzero ? 2 : 1;
    Vector grad = Vector::Zero(theta.size());
    for (Index i = 0; i < d; ++i) {
        double eta = theta(0);
        for (Index c = cov0; c < theta.size(); ++c)
            eta += theta(c) * dyads.x(i, c - cov0);
        const double lambda = std::exp(eta);
        const double log_z = log_partition(lambda, t_nz);
        // d log P / d eta = a - lambda * exp(t + lambda - log Z)
        const double mu = lambda * std::exp(t_nz + lambda - log_z);
        const double resid = static_cast<double>(dyads.a(i)) - mu;
        grad(0) += resid;
        if (include_nonzero)
            grad(1) += (dyads.a(i) > 0 ? 1.0 : 0.0) - std::exp(t_nz + log_expm1(lambda) - log_z);
        for (Index c = cov0; c < theta.size(); ++c)
            grad(c) += dyads.x(i, c - cov0) * resid;
    }
    return grad;
}

}  // namespace

double dyad_log_pmf(std::int64_t a, double lambda, double theta_nonzero) {
    if (!std::isfinite(lambda) || lambda <= 0.0)
        throw InputError("dyad rate lambda must be finite and positive");
    if (a < 0)
        throw InputError("dyad count must be nonnegative");
    const double ad = static_cast<double>(a);
    double ll = ad * std::log(lambda) - std::lgamma(ad + 1.0) - log_partition(lambda, theta_nonzero);
    if (a > 0)
        ll += theta_nonzero;
    return ll;
}

double count_log_likelihood(const MultiEdgeNetwork& net,
                            const std::vector<StatisticMatrix>& covariates,
                            bool include_nonzero, const Vector& theta) {
    return packed_log_lik(pack(net, covariates), include_nonzero, theta);
}

Vector count_log_likelihood_gradient(const MultiEdgeNetwork& net,
                                     const std::vector<StatisticMatrix>& covariates,
                                     bool include_nonzero, const Vector& theta) {
    return packed_gradient(pack(net, covariates), include_nonzero, theta);
}

FitResult fit_count(const MultiEdgeNetwork& net, const std::vector<StatisticMatrix>& covariates,
                    const CountFitOptions& options) {
    if (net.node_count() < 2)
        throw InputError("count model requires at least one dyad");
    const CountDyads dyads = pack(net, covariates);

    // Perfect separation in the nonzero part: with every dyad count positive
    // the zero-modification coefficient runs to +infinity. Fit the Poisson
    // part and flag it instead.
    bool nonzero_identified = true;
    bool include_nonzero = options.include_nonzero;
    if (include_nonzero && (dyads.a.array() > 0).all()) {
        include_nonzero = false;
        nonzero_identified = false;
    }

    const Index p = 1 + (include_nonzero ? 1 : 0) + static_cast<Index>(covariates.size());
    auto objective = [&](const Vector& theta) {
        return packed_log_lik(dyads, include_nonzero, theta);
    };
    auto gradient = [&](const Vector& theta) {
        return packed_gradient(dyads, include_nonzero, theta);
    };

    MaximizeOptions mopts;
    mopts.max_iterations = options.max_iterations;
    const double null_ll = objective(Vector::Zero(p));
    const MaximizeResult opt = maximize_bfgs(objective, gradient, Vector::Zero(p), mopts);

    std::vector<std::string> names{"sum"};
    if (include_nonzero)
        names.push_back("nonzero");
    for (const auto& cov : covariates)
        names.push_back(cov.name);

    const Matrix info = observed_information(objective, opt.theta);
    std::vector<Coefficient> table = wald_coefficients(names, opt.theta, info);

    if (!nonzero_identified) {
        Coefficient nz;
        nz.name = "nonzero";
        nz.estimate = std::numeric_limits<double>::quiet_NaN();
        nz.std_err = std::numeric_limits<double>::quiet_NaN();
        nz.p_value = std::numeric_limits<double>::quiet_NaN();
        nz.unidentified = true;
        table.insert(table.begin() + 1, nz);
    }

    FitResult result;
    result.model = "count-poisson";
    result.likelihood_mode = "exact";
    result.coefficients = std::move(table);
    result.log_lik = opt.value;
    result.aic = 2.0 * static_cast<double>(p) - 2.0 * opt.value;
    result.null_aic = -2.0 * null_ll;
    result.converged = opt.converged;
    result.iterations = opt.iterations;
    return result;
}

}  // namespace tricl
