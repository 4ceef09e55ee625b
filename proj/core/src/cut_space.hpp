#pragma once

#include <Eigen/Dense>

#include "resistnet/graph.hpp"

namespace resistnet::detail {

/// Eigen-factored R W R^T. Construction throws SingularityError when the
/// smallest |eigenvalue| is at most 1e-10 times the largest.
class CutSpaceInverse {
 public:
  CutSpaceInverse(const ForestDecomposition& f, const Eigen::VectorXd& weights);

  [[nodiscard]] Eigen::MatrixXd solve(const Eigen::MatrixXd& rhs) const;
  [[nodiscard]] const Eigen::MatrixXd& form() const noexcept { return form_; }

 private:
  Eigen::MatrixXd form_;
  Eigen::MatrixXd vectors_;
  Eigen::VectorXd inverse_values_;
};

inline constexpr double kSingularityRatio = 1e-10;

}  // namespace resistnet::detail
