#include "tricl/ghype.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <sstream>
#include <vector>

namespace tricl {

namespace {

constexpr double kNegInf = -std::numeric_limits<double>::infinity();

/// log(1 - exp(-x)) for x > 0 without cancellation.
double log1mexp(double x) {
    if (x <= 0.0)
        return kNegInf;
    return x < 0.693 ? std::log(-std::expm1(-x)) : std::log1p(-std::exp(-x));
}

/// Realized categories of a Wallenius urn: counts and normalized weights.
struct UrnTerms {
    std::vector<double> a;
    std::vector<double> r;

    // log integrand of the transformed Wallenius integral at z = exp(-v)
    double g(double v) const {
        double sum = -v;
        for (std::size_t i = 0; i < a.size(); ++i)
            sum += a[i] * log1mexp(r[i] * v);
        return sum;
    }

    double g_prime(double v) const {
        double sum = -1.0;
        for (std::size_t i = 0; i < a.size(); ++i) {
            const double e = std::expm1(r[i] * v);
            if (std::isfinite(e) && e > 0.0)
                sum += a[i] * r[i] / e;
        }
        return sum;
    }
};

/// Unique root of g' (g is strictly concave, g' decreases from +inf to -1).
double integrand_mode(const UrnTerms& urn, double m) {
    double v = std::max(1.0, m);
    double lo = 0.0, hi = std::numeric_limits<double>::infinity();
    if (urn.g_prime(v) > 0.0) {
        lo = v;
        while (urn.g_prime(v *= 2.0) > 0.0)
            lo = v;
        hi = v;
    } else {
        hi = v;
        while (urn.g_prime(v /= 2.0) <= 0.0)
            hi = v;
        lo = v;
    }
    for (int iter = 0; iter < 200 && hi - lo > 1e-12 * hi; ++iter) {
        const double mid = 0.5 * (lo + hi);
        (urn.g_prime(mid) > 0.0 ? lo : hi) = mid;
    }
    return 0.5 * (lo + hi);
}

// Gauss-Kronrod 15/7 nodes and weights on [-1, 1].
constexpr double kGkNode[8] = {
    0.991455371120813, 0.949107912342759, 0.864864423359769, 0.741531185599394,
    0.586087235467691, 0.405845151377397, 0.207784955007898, 0.0};
constexpr double kGkWeight[8] = {
    0.022935322010529, 0.063092092629979, 0.104790010322250, 0.140653259715525,
    0.169004726639267, 0.190350578064785, 0.204432940075298, 0.209482141084728};
constexpr double kGaussWeight[4] = {
    0.129484966168870, 0.279705391489277, 0.381830050505119, 0.417959183673469};

struct Segment {
    double lo, hi, value, error;
};

template <typename F>
Segment gk15(const F& f, double lo, double hi) {
    const double center = 0.5 * (lo + hi);
    const double half = 0.5 * (hi - lo);
    const double fc = f(center);
    double kronrod = kGkWeight[7] * fc;
    double gauss = kGaussWeight[3] * fc;
    for (int i = 0; i < 7; ++i) {
        const double fx = f(center - half * kGkNode[i]) + f(center + half * kGkNode[i]);
        kronrod += kGkWeight[i] * fx;
        if (i % 2 == 1)
            gauss += kGaussWeight[i / 2] * fx;
    }
    return {lo, hi, kronrod * half, std::abs(kronrod - gauss) * half};
}

/// Adaptive Gauss-Kronrod integration, subdividing the worst segment until
/// the accumulated error estimate meets the relative tolerance.
template <typename F>
double integrate_adaptive(const F& f, double lo, double hi, double rel_tol) {
    std::vector<Segment> segments{gk15(f, lo, hi)};
    for (int round = 0; round < 4000; ++round) {
        double total = 0.0, error = 0.0;
        std::size_t worst = 0;
        for (std::size_t i = 0; i < segments.size(); ++i) {
            total += segments[i].value;
            error += segments[i].error;
            if (segments[i].error > segments[worst].error)
                worst = i;
        }
        if (error <= rel_tol * std::abs(total) + 1e-300)
            return total;
        const Segment seg = segments[worst];
        const double mid = 0.5 * (seg.lo + seg.hi);
        segments[worst] = gk15(f, seg.lo, mid);
        segments.push_back(gk15(f, mid, seg.hi));
    }
    double total = 0.0, error = 0.0;
    for (const auto& s : segments) {
        total += s.value;
        error += s.error;
    }
    std::ostringstream msg;
    msg << "quadrature failed to reach relative tolerance " << rel_tol << " on [" << lo << ", "
        << hi << "]: value " << total << ", error estimate " << error << " after "
        << segments.size() << " segments";
    throw ModelError(msg.str());
}

struct DyadData {
    Vector xi;
    CountVector a;
    Matrix x;  // dyads x covariates, log-scale
    std::int64_t m = 0;
    Index excluded_with_count = 0;  // dyads with Xi = 0 but a > 0
};

DyadData pack_dyads(const Matrix& xi, const CountMatrix& counts,
                    const std::vector<GhypeCovariate>& covariates) {
    const Index n = counts.rows();
    const Index r = static_cast<Index>(covariates.size());
    std::vector<double> xis;
    std::vector<std::int64_t> as;
    std::vector<double> xs;
    DyadData data;
    for (Index i = 0; i < n; ++i) {
        for (Index j = i + 1; j < n; ++j) {
            const std::int64_t aij = counts(i, j);
            if (xi(i, j) <= 0.0) {
                if (aij > 0)
                    ++data.excluded_with_count;
                continue;
            }
            xis.push_back(xi(i, j));
            as.push_back(aij);
            data.m += aij;
            for (Index c = 0; c < r; ++c) {
                const double value = covariates[static_cast<std::size_t>(c)].x(i, j);
                if (!std::isfinite(value))
                    throw InputError("covariate '" + covariates[static_cast<std::size_t>(c)].name +
                                     "' has a nonfinite dyad value");
                xs.push_back(value);
            }
        }
    }
    const Index d = static_cast<Index>(xis.size());
    data.xi = Eigen::Map<Vector>(xis.data(), d);
    data.a = Eigen::Map<CountVector>(as.data(), d);
    data.x = Matrix(d, r);
    for (Index row = 0; row < d; ++row)
        for (Index c = 0; c < r; ++c)
            data.x(row, c) = xs[static_cast<std::size_t>(row * r + c)];
    return data;
}

Vector dyad_omega(const DyadData& data, const Vector& theta) {
    Vector eta = data.x * theta;
    // The Wallenius pmf is invariant to rescaling omega, so center the log
    // weights and floor the tail; extreme theta then degrades gracefully
    // instead of overflowing.
    if (eta.size() > 0)
        eta.array() -= eta.maxCoeff();
    return eta.array().max(-690.0).exp();
}

double packed_multinomial(const DyadData& data, const Vector& theta) {
    if (data.excluded_with_count > 0)
        return kNegInf;  // a positive count in a zero-probability cell
    const Index d = data.xi.size();
    if (data.m == 0)
        return 0.0;
    Vector eta = data.xi.array().log().matrix() + data.x * theta;
    const double peak = eta.maxCoeff();
    const double log_z = peak + std::log((eta.array() - peak).exp().sum());
    double ll = std::lgamma(static_cast<double>(data.m) + 1.0);
    for (Index i = 0; i < d; ++i) {
        const double ai = static_cast<double>(data.a(i));
        ll -= std::lgamma(ai + 1.0);
        if (data.a(i) > 0)
            ll += ai * (eta(i) - log_z);
    }
    return ll;
}

Vector packed_multinomial_gradient(const DyadData& data, const Vector& theta) {
    Vector eta = data.xi.array().log().matrix() + data.x * theta;
    const double peak = eta.maxCoeff();
    Vector p = (eta.array() - peak).exp();
    p /= p.sum();
    const Vector residual =
        data.a.cast<double>() - static_cast<double>(data.m) * p;
    return data.x.transpose() * residual;
}

}  // namespace

Matrix build_xi_configuration(const MultiEdgeNetwork& net) {
    const Vector k = degrees(net).degrees.cast<double>();
    if ((k.array() > 0.0).count() < 2)
        throw InputError("configuration Xi requires at least two nodes with positive degree");
    Matrix xi = k * k.transpose();
    xi.diagonal().setZero();
    return xi;
}

Matrix build_xi_mean_degree(const MultiEdgeNetwork& net) {
    if (net.edge_total() <= 0)
        throw InputError("mean-degree Xi requires at least one edge");
    const double mean_k = degrees(net).mean_degree;
    Matrix xi = Matrix::Constant(net.node_count(), net.node_count(), mean_k * mean_k);
    xi.diagonal().setZero();
    return xi;
}

Matrix covariate_log_scale(const StatisticMatrix& stat) {
    if (stat.kind == StatKind::attribute_match) {
        // +/-1 contrast for binary indicators; kept zero on the diagonal.
        Matrix x = 2.0 * stat.values.array() - 1.0;
        x.diagonal().setZero();
        return x;
    }
    return stat.values.array().log1p();
}

GhypeModel GhypeModel::build(const MultiEdgeNetwork& net,
                             const std::vector<StatisticMatrix>& covariates,
                             bool degree_corrected) {
    GhypeModel model;
    model.degree_corrected = degree_corrected;
    model.xi = degree_corrected ? build_xi_configuration(net) : build_xi_mean_degree(net);
    for (const auto& stat : covariates) {
        if (stat.values.rows() != net.node_count() || stat.values.cols() != net.node_count())
            throw InputError("covariate '" + stat.name + "' size does not match network");
        model.covariates.push_back({stat.name, covariate_log_scale(stat)});
    }
    model.theta = Vector::Zero(static_cast<Index>(model.covariates.size()));
    return model;
}

Matrix omega(const GhypeModel& model) {
    const Index n = model.xi.rows();
    Matrix eta = Matrix::Zero(n, n);
    for (std::size_t r = 0; r < model.covariates.size(); ++r) {
        if (!model.covariates[r].x.allFinite())
            throw InputError("covariate '" + model.covariates[r].name +
                             "' has a nonfinite dyad value");
        eta += model.theta(static_cast<Index>(r)) * model.covariates[r].x;
    }
    return eta.array().exp();
}

double wallenius_log_pmf(const Vector& xi, const Vector& omega, const CountVector& a,
                         double rel_tol) {
    const Index d = xi.size();
    if (omega.size() != d || a.size() != d)
        throw InputError("wallenius: xi, omega and counts must have equal length");

    double log_binom = 0.0;
    double s_omega = 0.0;
    std::int64_t m = 0;
    for (Index i = 0; i < d; ++i) {
        if (!std::isfinite(xi(i)) || xi(i) < 0.0)
            throw InputError("wallenius: Xi entries must be finite and nonnegative");
        if (!std::isfinite(omega(i)) || omega(i) <= 0.0)
            throw InputError("wallenius: weights must be finite and positive");
        if (a(i) < 0)
            throw InputError("wallenius: counts must be nonnegative");
        const double ceil_xi = std::ceil(xi(i));
        const double ai = static_cast<double>(a(i));
        if (ai > ceil_xi)
            throw InputError("wallenius: count exceeds the dyad's edge slots");
        log_binom +=
            std::lgamma(ceil_xi + 1.0) - std::lgamma(ai + 1.0) - std::lgamma(ceil_xi - ai + 1.0);
        m += a(i);
        s_omega += omega(i) * std::max(xi(i) - ai, 0.0);
    }
    if (m == 0)
        return log_binom;
    if (s_omega <= 0.0)
        return log_binom;  // every category saturated: the draw is forced

    UrnTerms urn;
    for (Index i = 0; i < d; ++i) {
        if (a(i) > 0) {
            urn.a.push_back(static_cast<double>(a(i)));
            urn.r.push_back(omega(i) / s_omega);
        }
    }

    const double v_star = integrand_mode(urn, static_cast<double>(m));
    const double g_star = urn.g(v_star);

    double v_lo = v_star;
    for (int k = 0; k < 1200 && urn.g(v_lo) - g_star > -46.0; ++k)
        v_lo *= 0.5;
    if (urn.g(v_lo) - g_star > -46.0)
        v_lo = 0.0;
    double step = std::max(v_star, 1.0);
    double v_hi = v_star + step;
    while (urn.g(v_hi) - g_star > -46.0) {
        step *= 2.0;
        v_hi += step;
    }

    const double integral = integrate_adaptive(
        [&](double v) { return std::exp(urn.g(v) - g_star); }, v_lo, v_hi, rel_tol);
    return log_binom + g_star + std::log(integral);
}

double multinomial_log_pmf(const Vector& xi, const Vector& omega, const CountVector& a) {
    const Index d = xi.size();
    if (omega.size() != d || a.size() != d)
        throw InputError("multinomial: xi, omega and counts must have equal length");
    std::int64_t m = 0;
    double log_z = kNegInf;
    Vector eta(d);
    for (Index i = 0; i < d; ++i) {
        if (!std::isfinite(omega(i)) || omega(i) <= 0.0)
            throw InputError("multinomial: weights must be finite and positive");
        m += a(i);
        eta(i) = xi(i) > 0.0 ? std::log(xi(i)) + std::log(omega(i)) : kNegInf;
    }
    if (m == 0)
        return 0.0;
    const double peak = eta.maxCoeff();
    log_z = peak + std::log((eta.array() - peak).exp().sum());
    double ll = std::lgamma(static_cast<double>(m) + 1.0);
    for (Index i = 0; i < d; ++i) {
        if (a(i) == 0)
            continue;
        if (eta(i) == kNegInf)
            return kNegInf;  // positive count in a zero-probability cell
        const double ai = static_cast<double>(a(i));
        ll += ai * (eta(i) - log_z) - std::lgamma(ai + 1.0);
    }
    return ll;
}

double log_likelihood(const GhypeModel& model, const MultiEdgeNetwork& net) {
    const DyadData data = pack_dyads(model.xi, net.counts(), model.covariates);
    if (data.excluded_with_count > 0)
        throw ModelError("network places edges on dyads excluded from the sampling space");
    return wallenius_log_pmf(data.xi, dyad_omega(data, model.theta), data.a);
}

double log_likelihood_multinomial(const GhypeModel& model, const MultiEdgeNetwork& net) {
    const DyadData data = pack_dyads(model.xi, net.counts(), model.covariates);
    return packed_multinomial(data, model.theta);
}

Vector log_likelihood_multinomial_gradient(const GhypeModel& model, const MultiEdgeNetwork& net) {
    const DyadData data = pack_dyads(model.xi, net.counts(), model.covariates);
    return packed_multinomial_gradient(data, model.theta);
}

FitResult fit(const MultiEdgeNetwork& net, const std::vector<StatisticMatrix>& covariates,
              const GhypeFitOptions& options) {
    if (covariates.empty())
        throw InputError("ghype fit requires at least one covariate");
    if (net.edge_total() <= 0)
        throw InputError("ghype fit requires a network with at least one edge");

    const GhypeModel model = GhypeModel::build(net, covariates, options.degree_corrected);
    const DyadData data = pack_dyads(model.xi, net.counts(), model.covariates);
    if (data.excluded_with_count > 0)
        throw ModelError("network places edges on dyads excluded from the sampling space");

    const Index r = static_cast<Index>(covariates.size());
    for (Index c = 0; c < r; ++c) {
        const double spread = data.x.col(c).maxCoeff() - data.x.col(c).minCoeff();
        if (spread < 1e-12 * (1.0 + data.x.col(c).cwiseAbs().maxCoeff()))
            throw InputError("covariate '" + covariates[static_cast<std::size_t>(c)].name +
                             "' is constant across dyads; its coefficient is unidentified");
    }

    const Index n_dyads = net.node_count() * (net.node_count() - 1) / 2;
    const GhypeLikelihood mode = options.likelihood.value_or(
        n_dyads <= options.exact_dyad_limit ? GhypeLikelihood::exact
                                            : GhypeLikelihood::multinomial);

    Objective objective;
    Gradient gradient;
    if (mode == GhypeLikelihood::exact) {
        objective = [&data](const Vector& theta) {
            return wallenius_log_pmf(data.xi, dyad_omega(data, theta), data.a);
        };
    } else {
        objective = [&data](const Vector& theta) { return packed_multinomial(data, theta); };
        gradient = [&data](const Vector& theta) {
            return packed_multinomial_gradient(data, theta);
        };
    }

    MaximizeOptions mopts;
    mopts.max_iterations = options.max_iterations;
    const double null_ll = objective(Vector::Zero(r));
    const MaximizeResult opt = maximize_bfgs(objective, gradient, Vector::Zero(r), mopts);

    std::vector<std::string> names;
    for (const auto& cov : covariates)
        names.push_back(cov.name);
    const Matrix info = observed_information(objective, opt.theta);

    FitResult result;
    result.model = "ghype";
    result.likelihood_mode = mode == GhypeLikelihood::exact ? "exact" : "multinomial";
    result.coefficients = wald_coefficients(names, opt.theta, info);
    result.log_lik = opt.value;
    result.aic = 2.0 * static_cast<double>(r) - 2.0 * opt.value;
    result.null_aic = -2.0 * null_ll;
    result.converged = opt.converged;
    result.iterations = opt.iterations;
    return result;
}

}  // namespace tricl
