#include "tricl/statistics.hpp"

#include "oracles.hpp"
#include "test_helpers.hpp"

#include <doctest.h>

#include <random>

using namespace tricl;

TEST_CASE("shared partner matrices match the worked example") {
    const auto net = testutil::example_network();
    CHECK(shared_partners_unweighted(net).values == testutil::example_unweighted_sp());
    CHECK(shared_partners_weighted(net).values == testutil::example_weighted_sp());
    // dyad (a,c): one shared partner b, min(10, 4) = 4
    CHECK(shared_partners_weighted(net).values(0, 2) == 4.0);
}

TEST_CASE("star network: leaves share only the hub") {
    const auto star = MultiEdgeNetwork::from_edge_list({{"h", "x", 1}, {"h", "y", 1}, {"h", "z", 1}});
    const auto sp = shared_partners_unweighted(star).values;
    CHECK(sp(1, 2) == 1.0);
    CHECK(sp(1, 3) == 1.0);
    CHECK(sp(2, 3) == 1.0);
    CHECK(sp(0, 1) == 0.0);
    CHECK(sp(0, 2) == 0.0);
    CHECK(sp(0, 3) == 0.0);
}

TEST_CASE("unit counts make both statistics equal") {
    std::mt19937_64 rng(3);
    auto counts = oracle::random_counts(6, 1, rng);
    const auto net = MultiEdgeNetwork::from_counts({"a", "b", "c", "d", "e", "f"}, counts);
    CHECK(shared_partners_unweighted(net).values == shared_partners_weighted(net).values);
}

TEST_CASE("both statistics agree with triple enumeration on random networks") {
    std::mt19937_64 rng(11);
    for (int trial = 0; trial < 60; ++trial) {
        const int n = 2 + static_cast<int>(rng() % 6);
        const auto counts = oracle::random_counts(n, 5, rng);
        std::vector<std::string> labels;
        for (int i = 0; i < n; ++i)
            labels.push_back("n" + std::to_string(i));
        const auto net = MultiEdgeNetwork::from_counts(labels, counts);
        CHECK(shared_partners_unweighted(net).values == oracle::shared_partners_unweighted(counts));
        CHECK(shared_partners_weighted(net).values == oracle::shared_partners_weighted(counts));
    }
}

TEST_CASE("statistics do not depend on the focal dyad count") {
    std::mt19937_64 rng(5);
    auto counts = oracle::random_counts(6, 5, rng);
    std::vector<std::string> labels{"a", "b", "c", "d", "e", "f"};
    const auto base_u = shared_partners_unweighted(MultiEdgeNetwork::from_counts(labels, counts));
    const auto base_w = shared_partners_weighted(MultiEdgeNetwork::from_counts(labels, counts));
    for (std::int64_t value : {0, 1, 7, 100}) {
        auto modified = counts;
        modified(0, 1) = value;
        modified(1, 0) = value;
        const auto net = MultiEdgeNetwork::from_counts(labels, modified);
        CHECK(shared_partners_unweighted(net).values(0, 1) == base_u.values(0, 1));
        CHECK(shared_partners_weighted(net).values(0, 1) == base_w.values(0, 1));
    }
}

TEST_CASE("raising a two-path count never lowers the weighted statistic") {
    std::mt19937_64 rng(9);
    auto counts = oracle::random_counts(6, 4, rng);
    std::vector<std::string> labels{"a", "b", "c", "d", "e", "f"};
    const auto before = shared_partners_weighted(MultiEdgeNetwork::from_counts(labels, counts));
    auto bumped = counts;
    bumped(0, 2) += 3;
    bumped(2, 0) += 3;
    const auto after = shared_partners_weighted(MultiEdgeNetwork::from_counts(labels, bumped));
    CHECK((after.values.array() >= before.values.array()).all());
}

TEST_CASE("weighted dominates unweighted when realized counts are at least one") {
    std::mt19937_64 rng(13);
    const auto counts = oracle::random_counts(7, 5, rng);
    const auto net = MultiEdgeNetwork::from_counts({"a", "b", "c", "d", "e", "f", "g"}, counts);
    const auto u = shared_partners_unweighted(net).values;
    const auto w = shared_partners_weighted(net).values;
    CHECK((w.array() >= u.array()).all());
}

TEST_CASE("attribute match is an equality indicator") {
    auto net = MultiEdgeNetwork::from_edge_list({{"a", "b", 1}, {"c", "d", 1}});
    net = net.with_attribute("faction", {"1", "1", "2", "2"});
    const auto match = attribute_match(net, "faction").values;
    CHECK(match(0, 1) == 1.0);
    CHECK(match(2, 3) == 1.0);
    CHECK(match(0, 2) == 0.0);
    CHECK(match(1, 3) == 0.0);
    CHECK(match.diagonal().isZero());

    net = net.with_attribute("same", {"x", "x", "x", "x"});
    const auto all = attribute_match(net, "same").values;
    for (Index i = 0; i < 4; ++i)
        for (Index j = 0; j < 4; ++j)
            CHECK(all(i, j) == (i == j ? 0.0 : 1.0));

    CHECK_THROWS_AS(attribute_match(net, "missing"), InputError);
}

TEST_CASE("degree covariate sums endpoint degrees") {
    const auto net = testutil::example_network();
    const auto deg = degree_covariate(net).values;
    CHECK(deg(0, 1) == 43.0);  // 21 + 22
    CHECK(deg(2, 3) == 23.0);  // 10 + 13

    const auto empty = MultiEdgeNetwork::from_edge_list({}, {"a", "b", "c"});
    CHECK(degree_covariate(empty).values.isZero());

    const auto triangle =
        MultiEdgeNetwork::from_edge_list({{"a", "b", 2}, {"b", "c", 2}, {"a", "c", 2}});
    const auto reg = degree_covariate(triangle).values;
    for (Index i = 0; i < 3; ++i)
        for (Index j = 0; j < 3; ++j)
            CHECK(reg(i, j) == (i == j ? 0.0 : 8.0));
}

TEST_CASE("variance explained matches the worked example regressions") {
    const auto net = testutil::example_network();
    const double r2_u = variance_explained(net, shared_partners_unweighted(net));
    const double r2_w = variance_explained(net, shared_partners_weighted(net));
    // Exact OLS values for the example: 3/238 and 675/16303.
    CHECK(r2_u == doctest::Approx(3.0 / 238.0).epsilon(1e-12));
    CHECK(r2_w == doctest::Approx(675.0 / 16303.0).epsilon(1e-12));
    CHECK(std::abs(r2_u - 0.01) < 0.005);
    CHECK(std::abs(r2_w - 0.04) < 0.005);
}

TEST_CASE("variance explained degenerate cases") {
    const auto net = testutil::example_network();
    StatisticMatrix self{"self", StatKind::custom, net.counts().cast<double>()};
    CHECK(variance_explained(net, self) == doctest::Approx(1.0));

    StatisticMatrix flat{"flat", StatKind::custom, Matrix::Zero(4, 4)};
    CHECK(variance_explained(net, flat) == 0.0);

    const auto dyad = MultiEdgeNetwork::from_edge_list({{"a", "b", 2}});
    StatisticMatrix small{"s", StatKind::custom, Matrix::Zero(2, 2)};
    CHECK_THROWS_AS(variance_explained(dyad, small), InputError);
}
