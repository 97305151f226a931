#include "tricl/countmodel.hpp"

#include "oracles.hpp"
#include "test_helpers.hpp"

#include <doctest.h>

#include <cmath>
#include <random>

using namespace tricl;

TEST_CASE("dyad pmf reduces to Poisson when the nonzero term is off") {
    for (double lambda : {0.1, 1.0, 4.5, 20.0}) {
        for (std::int64_t a : {0, 1, 3, 10}) {
            const double poisson =
                static_cast<double>(a) * std::log(lambda) - std::lgamma(a + 1.0) - lambda;
            CHECK(dyad_log_pmf(a, lambda, 0.0) == doctest::Approx(poisson).epsilon(1e-12));
        }
    }
}

TEST_CASE("zero count follows the zero-modification formula") {
    const double lambda = 2.0;
    for (double t : {-1.0, 0.0, 0.5, 2.0}) {
        const double expected = -std::log(1.0 + std::exp(t) * std::expm1(lambda));
        CHECK(dyad_log_pmf(0, lambda, t) == doctest::Approx(expected).epsilon(1e-12));
    }
    // full zero-inflation limit: P(0) -> 1
    CHECK(dyad_log_pmf(0, 2.0, -40.0) == doctest::Approx(0.0).epsilon(1e-10));
}

TEST_CASE("dyad pmf normalizes over the count support") {
    for (double lambda : {0.3, 1.0, 4.0, 10.0}) {
        for (double t : {-1.5, 0.0, 0.5}) {
            double total = 0.0;
            for (std::int64_t a = 0; a <= 60 + static_cast<std::int64_t>(20 * lambda); ++a)
                total += std::exp(dyad_log_pmf(a, lambda, t));
            CHECK(total == doctest::Approx(1.0).epsilon(1e-12));
        }
    }
    // the spec example: lambda = 1, theta_nz = 0.5
    double total = 0.0;
    for (std::int64_t a = 0; a <= 50; ++a)
        total += std::exp(dyad_log_pmf(a, 1.0, 0.5));
    CHECK(std::abs(total - 1.0) < 1e-12);
}

TEST_CASE("dyad pmf rejects bad rates") {
    CHECK_THROWS_AS(dyad_log_pmf(1, 0.0, 0.0), InputError);
    CHECK_THROWS_AS(dyad_log_pmf(1, -2.0, 0.0), InputError);
    CHECK_THROWS_AS(dyad_log_pmf(1, std::numeric_limits<double>::infinity(), 0.0), InputError);
}

namespace {

MultiEdgeNetwork simulate_count_network(int n, double theta_sum, double theta_nz,
                                        double theta_cov, const Matrix& x,
                                        std::mt19937_64& rng) {
    CountMatrix counts = CountMatrix::Zero(n, n);
    for (Index i = 0; i < n; ++i)
        for (Index j = i + 1; j < n; ++j) {
            const double lambda = std::exp(theta_sum + theta_cov * x(i, j));
            const std::int64_t a = oracle::sample_zero_modified_poisson(lambda, theta_nz, rng);
            counts(i, j) = a;
            counts(j, i) = a;
        }
    std::vector<std::string> labels;
    for (int i = 0; i < n; ++i)
        labels.push_back("n" + std::to_string(i));
    return MultiEdgeNetwork::from_counts(labels, counts);
}

Matrix random_covariate(int n, std::mt19937_64& rng) {
    Matrix x = Matrix::Zero(n, n);
    std::uniform_real_distribution<double> unif(0.0, 2.0);
    for (Index i = 0; i < n; ++i)
        for (Index j = i + 1; j < n; ++j) {
            x(i, j) = unif(rng);
            x(j, i) = x(i, j);
        }
    return x;
}

}  // namespace

TEST_CASE("fit recovers known parameters within three standard errors") {
    std::mt19937_64 rng(17);
    const int n = 40;
    const Matrix x = random_covariate(n, rng);
    const auto net = simulate_count_network(n, 0.2, -1.0, 0.5, x, rng);
    const StatisticMatrix stat{"x", StatKind::custom, x};

    const auto result = fit_count(net, {stat});
    REQUIRE(result.coefficients.size() == 3);
    REQUIRE(result.converged);
    const double truth[3] = {0.2, -1.0, 0.5};
    for (int k = 0; k < 3; ++k) {
        const auto& c = result.coefficients[static_cast<std::size_t>(k)];
        CHECK(!c.unidentified);
        CHECK(std::abs(c.estimate - truth[k]) <= 3.0 * c.std_err);
    }
}

TEST_CASE("zero covariate leaves the Poisson intercept at the log mean count") {
    const auto net = testutil::example_network();
    StatisticMatrix zero{"zero", StatKind::custom, Matrix::Zero(4, 4)};
    CountFitOptions options;
    options.include_nonzero = false;
    const auto result = fit_count(net, {zero}, options);
    const double mean_count = 33.0 / 6.0;
    CHECK(result.coefficients[0].estimate == doctest::Approx(std::log(mean_count)).epsilon(1e-6));
    CHECK(result.coefficients[1].unidentified);
}

TEST_CASE("intercept-only fit matches the observed total") {
    const auto net = testutil::example_network();
    CountFitOptions options;
    options.include_nonzero = false;
    const auto result = fit_count(net, {}, options);
    const double lambda = std::exp(result.coefficients[0].estimate);
    CHECK(lambda * 6.0 == doctest::Approx(33.0).epsilon(1e-6));
}

TEST_CASE("analytic gradient matches central differences") {
    std::mt19937_64 rng(23);
    const int n = 10;
    const Matrix x = random_covariate(n, rng);
    const auto net = simulate_count_network(n, 0.3, -0.5, 0.4, x, rng);
    const std::vector<StatisticMatrix> covs{{"x", StatKind::custom, x}};

    std::uniform_real_distribution<double> unif(-0.6, 0.6);
    for (int trial = 0; trial < 5; ++trial) {
        Vector theta(3);
        theta << unif(rng), unif(rng), unif(rng);
        const Vector analytic = count_log_likelihood_gradient(net, covs, true, theta);
        Vector fd(3);
        for (Index j = 0; j < 3; ++j) {
            const double h = 1e-6 * (1.0 + std::abs(theta(j)));
            Vector probe = theta;
            probe(j) += h;
            const double up = count_log_likelihood(net, covs, true, probe);
            probe(j) = theta(j) - h;
            const double down = count_log_likelihood(net, covs, true, probe);
            fd(j) = (up - down) / (2.0 * h);
        }
        CHECK((analytic - fd).norm() <= 1e-6 * (1.0 + fd.norm()));
    }
}

TEST_CASE("all-positive dyads flag the nonzero term as unidentified") {
    const auto net = testutil::example_network();
    // dyad (c,d) is zero in the example; use a complete network instead
    const auto complete = MultiEdgeNetwork::from_edge_list(
        {{"a", "b", 2}, {"a", "c", 1}, {"b", "c", 4}});
    const auto result = fit_count(complete, {degree_covariate(complete)});
    REQUIRE(result.coefficients.size() == 3);
    CHECK(result.coefficients[1].name == "nonzero");
    CHECK(result.coefficients[1].unidentified);
    CHECK(!result.coefficients[0].unidentified);
    CHECK(result.model == "count-poisson");
    (void)net;
}
