#pragma once

#include <stdexcept>
#include <string>
#include <vector>

#include <Eigen/Dense>
#include <Eigen/Sparse>

namespace wrb {

using Vector = Eigen::VectorXd;
using Matrix = Eigen::MatrixXd;
using SparseMatrix = Eigen::SparseMatrix<double>;

/// A point in the parameter domain 𝒟 ⊂ ℝ^p.
using Parameter = std::vector<double>;

/// Raised when an argument violates an operation's precondition.
class InvalidArgument : public std::invalid_argument {
 public:
  using std::invalid_argument::invalid_argument;
};

/// Raised when a factorization or solve fails numerically.
class NumericalFailure : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

/// Closed box [lower, upper] in parameter space.
struct ParameterBox {
  std::vector<double> lower;
  std::vector<double> upper;

  [[nodiscard]] std::size_t dimension() const { return lower.size(); }
  [[nodiscard]] bool contains(const Parameter& mu, double rel_slack = 1e-12) const;
  [[nodiscard]] double volume() const;
  /// Throws InvalidArgument unless the box is nonempty and well formed.
  void validate() const;
};

std::string to_string(const Parameter& mu);

}  // namespace wrb
