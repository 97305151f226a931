#include "tricl/statistics.hpp"

namespace tricl {

StatisticMatrix shared_partners_unweighted(const MultiEdgeNetwork& net) {
    const Index n = net.node_count();
    if (n < 2)
        throw InputError("shared partners require at least two nodes");
    // With a zero diagonal, (B*B)(a,b) counts exactly the i != a,b adjacent
    // to both endpoints.
    const Matrix binary = (net.counts().array() > 0).cast<double>();
    Matrix sp = binary * binary;
    sp.diagonal().setZero();
    return {"unweighted_sp", StatKind::unweighted_sp, std::move(sp)};
}

StatisticMatrix shared_partners_weighted(const MultiEdgeNetwork& net) {
    const Index n = net.node_count();
    if (n < 2)
        throw InputError("shared partners require at least two nodes");
    const Matrix counts = net.counts().cast<double>();
    Matrix sp = Matrix::Zero(n, n);
    for (Index a = 0; a < n; ++a) {
        for (Index b = a + 1; b < n; ++b) {
            // min(counts(a,i), counts(b,i)) vanishes when either edge is
            // absent and at i = a, b because of the zero diagonal.
            const double w = counts.row(a).cwiseMin(counts.row(b)).sum();
            sp(a, b) = w;
            sp(b, a) = w;
        }
    }
    return {"weighted_sp", StatKind::weighted_sp, std::move(sp)};
}

StatisticMatrix attribute_match(const MultiEdgeNetwork& net, const std::string& attr) {
    const auto& values = net.attribute(attr);
    const Index n = net.node_count();
    Matrix match = Matrix::Zero(n, n);
    for (Index i = 0; i < n; ++i)
        for (Index j = i + 1; j < n; ++j)
            if (values[static_cast<std::size_t>(i)] == values[static_cast<std::size_t>(j)]) {
                match(i, j) = 1.0;
                match(j, i) = 1.0;
            }
    return {"match:" + attr, StatKind::attribute_match, std::move(match)};
}

StatisticMatrix degree_covariate(const MultiEdgeNetwork& net) {
    const Index n = net.node_count();
    if (n < 2)
        throw InputError("degree covariate requires at least two nodes");
    const Vector k = degrees(net).degrees.cast<double>();
    Matrix deg = k.replicate(1, n) + k.transpose().replicate(n, 1);
    deg.diagonal().setZero();
    return {"degree", StatKind::degree_covariate, std::move(deg)};
}

double variance_explained(const MultiEdgeNetwork& net, const StatisticMatrix& stat) {
    const Index n = net.node_count();
    if (n < 3)
        throw InputError("variance explained requires at least three dyads");
    if (stat.values.rows() != n || stat.values.cols() != n)
        throw InputError("statistic matrix size does not match network");

    const Index dyads = n * (n - 1) / 2;
    Vector y(dyads), x(dyads);
    Index d = 0;
    for (Index i = 0; i < n; ++i)
        for (Index j = i + 1; j < n; ++j, ++d) {
            y(d) = static_cast<double>(net.count(i, j));
            x(d) = stat.values(i, j);
        }

    const double xm = x.mean();
    const double ym = y.mean();
    const double sxx = (x.array() - xm).square().sum();
    const double syy = (y.array() - ym).square().sum();
    if (sxx <= 0.0 || syy <= 0.0)
        return 0.0;
    const double sxy = ((x.array() - xm) * (y.array() - ym)).sum();
    return (sxy * sxy) / (sxx * syy);
}

}  // namespace tricl
