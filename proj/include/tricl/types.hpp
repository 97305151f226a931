#pragma once

#include <Eigen/Dense>

#include <cstdint>
#include <stdexcept>
#include <string>

namespace tricl {

using Matrix = Eigen::MatrixXd;
using Vector = Eigen::VectorXd;
using CountMatrix = Eigen::Matrix<std::int64_t, Eigen::Dynamic, Eigen::Dynamic>;
using CountVector = Eigen::Matrix<std::int64_t, Eigen::Dynamic, 1>;
using Index = Eigen::Index;

/// Invalid data fed into a construction or operation (bad rows, bad labels,
/// violated preconditions). Maps to a usage-style failure in the CLI.
struct InputError : std::runtime_error {
    using std::runtime_error::runtime_error;
};

/// A model could not be evaluated or fitted (degenerate sampling space,
/// non-convergence, failed quadrature).
struct ModelError : std::runtime_error {
    using std::runtime_error::runtime_error;
};

}  // namespace tricl
