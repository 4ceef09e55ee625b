#include "cut_space.hpp"

#include <sstream>

#include "resistnet/errors.hpp"

namespace resistnet::detail {

CutSpaceInverse::CutSpaceInverse(const ForestDecomposition& f, const Eigen::VectorXd& weights)
    : form_(cut_space_form(f, weights)) {
  if (form_.size() == 0) return;
  if (!form_.allFinite()) throw InputError("cut-space form has non-finite entries");
  Eigen::SelfAdjointEigenSolver<Eigen::MatrixXd> solver(0.5 * (form_ + form_.transpose()));
  const Eigen::VectorXd& lambda = solver.eigenvalues();
  const double largest = lambda.cwiseAbs().maxCoeff();
  const double smallest = lambda.cwiseAbs().minCoeff();
  if (largest == 0.0 || smallest <= kSingularityRatio * largest) {
    std::ostringstream os;
    os << "R W R^T is singular (smallest |eigenvalue| " << smallest << ", largest " << largest
       << ")";
    throw SingularityError(os.str());
  }
  vectors_ = solver.eigenvectors();
  inverse_values_ = lambda.cwiseInverse();
}

Eigen::MatrixXd CutSpaceInverse::solve(const Eigen::MatrixXd& rhs) const {
  if (form_.size() == 0) return Eigen::MatrixXd::Zero(0, rhs.cols());
  return vectors_ * (inverse_values_.asDiagonal() * (vectors_.transpose() * rhs));
}

}  // namespace resistnet::detail
