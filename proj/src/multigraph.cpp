#include "tricl/multigraph.hpp"

#include <unordered_map>

namespace tricl {

namespace {

void validate_counts(const CountMatrix& counts) {
    const Index n = counts.rows();
    if (counts.cols() != n)
        throw InputError("count matrix must be square");
    for (Index i = 0; i < n; ++i) {
        if (counts(i, i) != 0)
            throw InputError("count matrix must have zero diagonal");
        for (Index j = 0; j < n; ++j) {
            if (counts(i, j) < 0)
                throw InputError("count matrix entries must be nonnegative");
            if (counts(i, j) != counts(j, i))
                throw InputError("count matrix must be symmetric");
        }
    }
}

}  // namespace

MultiEdgeNetwork MultiEdgeNetwork::from_edge_list(const std::vector<EdgeListRow>& rows,
                                                  const std::vector<std::string>& declared_nodes) {
    std::unordered_map<std::string, Index> index;
    std::vector<std::string> labels;
    auto intern = [&](const std::string& label) {
        auto [it, inserted] = index.try_emplace(label, static_cast<Index>(labels.size()));
        if (inserted)
            labels.push_back(label);
        return it->second;
    };

    // First pass assigns indices in order of first appearance and validates.
    for (std::size_t r = 0; r < rows.size(); ++r) {
        const auto& row = rows[r];
        if (row.source.empty() || row.target.empty())
            throw InputError("edge row " + std::to_string(r + 1) + ": empty node label");
        if (row.source == row.target)
            throw InputError("edge row " + std::to_string(r + 1) + ": self-loop '" +
                             row.source + "' is not allowed");
        if (row.count && *row.count <= 0)
            throw InputError("edge row " + std::to_string(r + 1) +
                             ": count must be a positive integer");
        intern(row.source);
        intern(row.target);
    }
    for (const auto& label : declared_nodes) {
        if (label.empty())
            throw InputError("declared node with empty label");
        intern(label);
    }

    const Index n = static_cast<Index>(labels.size());
    CountMatrix counts = CountMatrix::Zero(n, n);
    for (const auto& row : rows) {
        const Index i = index.at(row.source);
        const Index j = index.at(row.target);
        const std::int64_t c = row.count.value_or(1);
        counts(i, j) += c;
        counts(j, i) += c;
    }

    MultiEdgeNetwork net;
    net.labels_ = std::move(labels);
    net.counts_ = std::move(counts);
    net.total_ = net.counts_.sum() / 2;
    return net;
}

MultiEdgeNetwork MultiEdgeNetwork::from_counts(std::vector<std::string> labels,
                                               CountMatrix counts) {
    if (static_cast<Index>(labels.size()) != counts.rows())
        throw InputError("label list length must match count matrix size");
    validate_counts(counts);
    MultiEdgeNetwork net;
    net.labels_ = std::move(labels);
    net.counts_ = std::move(counts);
    net.total_ = net.counts_.sum() / 2;
    return net;
}

std::optional<Index> MultiEdgeNetwork::find(const std::string& label) const {
    for (Index i = 0; i < node_count(); ++i)
        if (labels_[static_cast<std::size_t>(i)] == label)
            return i;
    return std::nullopt;
}

MultiEdgeNetwork MultiEdgeNetwork::with_attribute(const std::string& name,
                                                  std::vector<std::string> values) const {
    if (name.empty())
        throw InputError("attribute name must be nonempty");
    if (static_cast<Index>(values.size()) != node_count())
        throw InputError("attribute '" + name + "' has " + std::to_string(values.size()) +
                         " values for " + std::to_string(node_count()) + " nodes");
    MultiEdgeNetwork net = *this;
    net.attributes_[name] = std::move(values);
    return net;
}

bool MultiEdgeNetwork::has_attribute(const std::string& name) const {
    return attributes_.count(name) != 0;
}

const std::vector<std::string>& MultiEdgeNetwork::attribute(const std::string& name) const {
    auto it = attributes_.find(name);
    if (it == attributes_.end())
        throw InputError("unknown attribute '" + name + "'");
    return it->second;
}

DegreeSequence degrees(const MultiEdgeNetwork& net) {
    DegreeSequence seq;
    seq.degrees = net.counts().rowwise().sum();
    const Index n = net.node_count();
    seq.mean_degree = n > 0 ? static_cast<double>(seq.degrees.sum()) / static_cast<double>(n) : 0.0;
    return seq;
}

double binary_density(const MultiEdgeNetwork& net) {
    const Index n = net.node_count();
    if (n < 2)
        throw InputError("binary density requires at least two nodes");
    std::int64_t realized = 0;
    for (Index i = 0; i < n; ++i)
        for (Index j = i + 1; j < n; ++j)
            if (net.count(i, j) > 0)
                ++realized;
    return static_cast<double>(realized) / (static_cast<double>(n) * (n - 1) / 2.0);
}

}  // namespace tricl
