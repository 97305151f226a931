#pragma once

#include "tricl/ghype.hpp"
#include "tricl/multigraph.hpp"
#include "tricl/types.hpp"

#include <cstdint>
#include <random>
#include <vector>

namespace tricl {

/// Deterministic 64-bit random source: std::mt19937_64 with an unbiased
/// bounded draw (Lemire rejection), so seeds reproduce across platforms.
class Rng {
public:
    explicit Rng(std::uint64_t seed) : engine_(seed) {}

    std::uint64_t next() { return engine_(); }

    /// Uniform draw from {0, ..., n-1}.
    std::uint64_t below(std::uint64_t n);

private:
    std::mt19937_64 engine_;
};

enum class GeneratorKind { random_complete, triangles, mixed };

struct GeneratorSpec {
    GeneratorKind kind = GeneratorKind::random_complete;
    int n = 0;                ///< node count, >= 3
    std::int64_t m = 0;       ///< total edge count, >= 1
    int n_tri = 0;            ///< triangle count (triangles/mixed only)
    std::uint64_t seed = 0;
};

/// Deterministic generator for the three validation networks. Edges are
/// allocated i.i.d. uniformly over the eligible dyads: every dyad for
/// random_complete, the union of sampled triangle edges for triangles.
/// mixed sums a random_complete(n, m/2, seed) draw and a
/// triangles(n, m - m/2, n_tri, seed + 1) draw.
MultiEdgeNetwork generate(const GeneratorSpec& spec);

enum class CovariateKind { weighted_sp, unweighted_sp };

struct ReplicationSummary {
    std::vector<int> replication;      ///< 1-based indices of successful reps
    std::vector<double> coefficients;  ///< closure coefficient per success
    std::vector<double> p_values;
    std::vector<int> failed;           ///< indices of failed reps
    double mean = 0.0, min = 0.0, max = 0.0, sd = 0.0;
    double significant_fraction = 0.0;  ///< share with p < 0.001
};

/// Fits the chosen shared-partner covariate on `reps` fresh generations
/// (seed + 1 ... seed + reps) and aggregates the closure coefficients.
/// Failed fits are excluded and counted; more than 10% failures is an error.
ReplicationSummary replicate(const GeneratorSpec& spec, int reps, CovariateKind covariate,
                             const GhypeFitOptions& options, int threads = 1);

}  // namespace tricl
