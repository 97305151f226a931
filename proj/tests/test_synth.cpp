#include "tricl/synth.hpp"

#include "tricl/io.hpp"
#include "tricl/statistics.hpp"

#include <doctest.h>

using namespace tricl;

namespace {

GeneratorSpec random_spec(std::uint64_t seed) {
    GeneratorSpec spec;
    spec.kind = GeneratorKind::random_complete;
    spec.n = 12;
    spec.m = 80;
    spec.seed = seed;
    return spec;
}

GeneratorSpec triangle_spec(std::uint64_t seed) {
    GeneratorSpec spec;
    spec.kind = GeneratorKind::triangles;
    spec.n = 14;
    spec.m = 120;
    spec.n_tri = 5;
    spec.seed = seed;
    return spec;
}

}  // namespace

TEST_CASE("generation is a pure function of the spec") {
    const auto a = generate(triangle_spec(42));
    const auto b = generate(triangle_spec(42));
    CHECK(a.counts() == b.counts());
    const auto c = generate(triangle_spec(43));
    CHECK(a.counts() != c.counts());
}

TEST_CASE("generated networks carry exactly m edges") {
    CHECK(generate(random_spec(1)).edge_total() == 80);
    CHECK(generate(triangle_spec(2)).edge_total() == 120);

    GeneratorSpec mixed;
    mixed.kind = GeneratorKind::mixed;
    mixed.n = 14;
    mixed.m = 301;  // odd m still sums exactly
    mixed.n_tri = 5;
    mixed.seed = 3;
    CHECK(generate(mixed).edge_total() == 301);

    mixed.m = 2000;
    mixed.n = 34;
    mixed.n_tri = 26;
    CHECK(generate(mixed).edge_total() == 2000);
}

TEST_CASE("triangle networks only realize dyads inside sampled triangles") {
    const auto net = generate(triangle_spec(7));
    const auto sp = shared_partners_unweighted(net).values;
    const Index n = net.node_count();
    for (Index i = 0; i < n; ++i)
        for (Index j = i + 1; j < n; ++j)
            if (net.count(i, j) > 0)
                CHECK(sp(i, j) >= 1.0);  // every edge closes a triangle
}

TEST_CASE("generator preconditions") {
    GeneratorSpec spec = random_spec(1);
    spec.m = 50;  // below the n(n-1)/2 = 66 dyad baseline
    CHECK_THROWS_AS(generate(spec), InputError);

    spec = triangle_spec(1);
    spec.n_tri = 1000;  // more triples than C(14,3)
    CHECK_THROWS_AS(generate(spec), InputError);

    spec = triangle_spec(1);
    spec.n = 2;
    CHECK_THROWS_AS(generate(spec), InputError);

    spec = random_spec(1);
    spec.m = 0;
    CHECK_THROWS_AS(generate(spec), InputError);
}

TEST_CASE("bounded draws stay in range and vary") {
    Rng rng(5);
    bool seen_nonzero = false;
    for (int i = 0; i < 1000; ++i) {
        const auto v = rng.below(7);
        CHECK(v < 7);
        seen_nonzero = seen_nonzero || v > 0;
    }
    CHECK(seen_nonzero);
    CHECK_THROWS_AS(rng.below(0), InputError);
}

TEST_CASE("replicate aggregates are consistent and reproducible across threads") {
    GeneratorSpec spec = triangle_spec(11);
    GhypeFitOptions options;
    options.degree_corrected = false;
    options.likelihood = GhypeLikelihood::multinomial;

    const auto summary = replicate(spec, 6, CovariateKind::weighted_sp, options, 1);
    REQUIRE(summary.coefficients.size() + summary.failed.size() == 6);
    CHECK(summary.min <= summary.mean);
    CHECK(summary.mean <= summary.max);
    CHECK(summary.sd >= 0.0);
    CHECK(summary.significant_fraction >= 0.0);
    CHECK(summary.significant_fraction <= 1.0);

    double mean = 0.0;
    for (double c : summary.coefficients)
        mean += c;
    mean /= static_cast<double>(summary.coefficients.size());
    CHECK(summary.mean == doctest::Approx(mean));

    const auto threaded = replicate(spec, 6, CovariateKind::weighted_sp, options, 3);
    CHECK(replication_summary_to_json(summary).dump() ==
          replication_summary_to_json(threaded).dump());
}

TEST_CASE("replicate validates the replication count") {
    CHECK_THROWS_AS(
        replicate(triangle_spec(1), 0, CovariateKind::weighted_sp, GhypeFitOptions{}, 1),
        InputError);
}
