#include "resistnet/spectral.hpp"

#include <algorithm>
#include <cmath>
#include <ostream>

#include "resistnet/errors.hpp"

namespace resistnet {
namespace {

template <typename Matrix>
void require_finite(const Matrix& A) {
  if (!A.allFinite()) throw InputError("matrix has non-finite entries");
}

Eigen::MatrixXd symmetrized(const Eigen::MatrixXd& A) {
  if (A.rows() != A.cols()) throw InputError("matrix must be square");
  require_finite(A);
  if (A.size() == 0) return A;
  const double scale = std::max(1.0, A.cwiseAbs().maxCoeff());
  if ((A - A.transpose()).cwiseAbs().maxCoeff() > 1e-10 * scale)
    throw InputError("matrix is not symmetric");
  return 0.5 * (A + A.transpose());
}

double zero_threshold(const Eigen::VectorXd& eigenvalues, double tol) {
  const double largest = eigenvalues.size() > 0 ? eigenvalues.cwiseAbs().maxCoeff() : 0.0;
  return tol * std::max(1.0, largest);
}

}  // namespace

std::ostream& operator<<(std::ostream& os, const Signature& s) {
  return os << "(" << s.n_plus << ", " << s.n_minus << ", " << s.n_zero << ")";
}

Eigen::VectorXd symmetric_eigenvalues(const Eigen::MatrixXd& A) {
  const Eigen::MatrixXd S = symmetrized(A);
  if (S.size() == 0) return Eigen::VectorXd(0);
  Eigen::SelfAdjointEigenSolver<Eigen::MatrixXd> solver(S, Eigen::EigenvaluesOnly);
  return solver.eigenvalues();
}

Signature signature_of(const Eigen::MatrixXd& A, double tol) {
  const Eigen::VectorXd lambda = symmetric_eigenvalues(A);
  const double cut = zero_threshold(lambda, tol);
  Signature s;
  for (Eigen::Index i = 0; i < lambda.size(); ++i) {
    if (std::abs(lambda(i)) <= cut)
      ++s.n_zero;
    else if (lambda(i) > 0.0)
      ++s.n_plus;
    else
      ++s.n_minus;
  }
  return s;
}

Eigen::MatrixXd pseudoinverse(const Eigen::MatrixXd& A, double tol) {
  const Eigen::MatrixXd S = symmetrized(A);
  if (S.size() == 0) return S;
  Eigen::SelfAdjointEigenSolver<Eigen::MatrixXd> solver(S);
  const Eigen::VectorXd& lambda = solver.eigenvalues();
  const double cut = zero_threshold(lambda, tol);
  Eigen::VectorXd inv(lambda.size());
  for (Eigen::Index i = 0; i < lambda.size(); ++i)
    inv(i) = std::abs(lambda(i)) <= cut ? 0.0 : 1.0 / lambda(i);
  const Eigen::MatrixXd& V = solver.eigenvectors();
  Eigen::MatrixXd P = V * inv.asDiagonal() * V.transpose();
  return 0.5 * (P + P.transpose());
}

double spectral_norm(const Eigen::MatrixXd& A) {
  require_finite(A);
  if (A.size() == 0) return 0.0;
  Eigen::JacobiSVD<Eigen::MatrixXd> svd(A);
  return svd.singularValues()(0);
}

double spectral_norm(const Eigen::MatrixXcd& A) {
  require_finite(A);
  if (A.size() == 0) return 0.0;
  Eigen::JacobiSVD<Eigen::MatrixXcd> svd(A);
  return svd.singularValues()(0);
}

bool is_psd(const Eigen::MatrixXd& A, double tol) { return signature_of(A, tol).n_minus == 0; }

}  // namespace resistnet
