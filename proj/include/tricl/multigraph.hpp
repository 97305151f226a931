#pragma once

#include "tricl/types.hpp"

#include <map>
#include <optional>
#include <string>
#include <vector>

namespace tricl {

/// One row of an edge list: an unordered node pair plus an optional
/// multiplicity. A missing count means one edge per row; repeated rows for
/// the same pair accumulate.
struct EdgeListRow {
    std::string source;
    std::string target;
    std::optional<std::int64_t> count;
};

/// Undirected multi-edge network: a symmetric matrix of nonnegative integer
/// edge counts with zero diagonal, node labels in order of first appearance,
/// and optional categorical node attributes. Immutable after construction.
class MultiEdgeNetwork {
public:
    MultiEdgeNetwork() = default;

    /// Builds a network from edge-list rows. Node order is the order of
    /// first appearance in the rows; `declared_nodes` appends any nodes not
    /// present in the rows (so isolated nodes are representable).
    static MultiEdgeNetwork from_edge_list(const std::vector<EdgeListRow>& rows,
                                           const std::vector<std::string>& declared_nodes = {});

    /// Builds a network directly from a labelled count matrix. The matrix
    /// must be symmetric with zero diagonal and nonnegative entries.
    static MultiEdgeNetwork from_counts(std::vector<std::string> labels, CountMatrix counts);

    Index node_count() const { return counts_.rows(); }

    /// Total edge count m = (1/2) sum_ij counts(i,j).
    std::int64_t edge_total() const { return total_; }

    const std::vector<std::string>& labels() const { return labels_; }
    const CountMatrix& counts() const { return counts_; }
    std::int64_t count(Index i, Index j) const { return counts_(i, j); }

    std::optional<Index> find(const std::string& label) const;

    /// Returns a copy of this network with one categorical attribute
    /// attached. `values` must have one entry per node, in node order.
    MultiEdgeNetwork with_attribute(const std::string& name,
                                    std::vector<std::string> values) const;

    bool has_attribute(const std::string& name) const;
    const std::vector<std::string>& attribute(const std::string& name) const;
    const std::map<std::string, std::vector<std::string>>& attributes() const {
        return attributes_;
    }

private:
    std::vector<std::string> labels_;
    CountMatrix counts_;
    std::map<std::string, std::vector<std::string>> attributes_;
    std::int64_t total_ = 0;
};

struct DegreeSequence {
    CountVector degrees;  ///< k_i = sum_j counts(i,j)
    double mean_degree;   ///< <k> = sum_i k_i / n
};

DegreeSequence degrees(const MultiEdgeNetwork& net);

/// Fraction of dyads with at least one edge, (#{i<j : counts(i,j) > 0}) /
/// (n(n-1)/2). Requires n >= 2.
double binary_density(const MultiEdgeNetwork& net);

}  // namespace tricl
