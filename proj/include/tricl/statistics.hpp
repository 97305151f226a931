#pragma once

#include "tricl/multigraph.hpp"
#include "tricl/types.hpp"

#include <string>

namespace tricl {

enum class StatKind {
    unweighted_sp,
    weighted_sp,
    attribute_match,
    degree_covariate,
    custom,
};

/// Dyad-level change statistic: a symmetric matrix of nonnegative values
/// with zero diagonal. Entries never depend on the focal dyad's own count,
/// so the matrix can be used as a regressor for the counts.
struct StatisticMatrix {
    std::string name;
    StatKind kind = StatKind::custom;
    Matrix values;
};

/// values(a,b) = #{ i != a,b : counts(a,i) > 0 and counts(b,i) > 0 }.
StatisticMatrix shared_partners_unweighted(const MultiEdgeNetwork& net);

/// values(a,b) = sum over shared partners i of min(counts(a,i), counts(b,i)).
/// Each shared partner is weighted by the smaller edge count on its two-path.
StatisticMatrix shared_partners_weighted(const MultiEdgeNetwork& net);

/// values(i,j) = 1 if attribute(i) == attribute(j), else 0.
StatisticMatrix attribute_match(const MultiEdgeNetwork& net, const std::string& attr);

/// values(i,j) = k_i + k_j (sum of multi-edge degrees).
StatisticMatrix degree_covariate(const MultiEdgeNetwork& net);

/// OLS R^2 of the dyad counts (upper triangle) regressed on the statistic's
/// dyad values, intercept included. A zero-variance statistic yields 0.
double variance_explained(const MultiEdgeNetwork& net, const StatisticMatrix& stat);

}  // namespace tricl
