#pragma once

#include <cstddef>
#include <iosfwd>

#include <Eigen/Dense>

namespace resistnet {

/// Default relative threshold for classifying an eigenvalue as zero.
inline constexpr double kDefaultTol = 1e-9;

/// Inertia (n+, n-, n0) of a symmetric matrix.
struct Signature {
  std::size_t n_plus = 0;
  std::size_t n_minus = 0;
  std::size_t n_zero = 0;

  [[nodiscard]] std::size_t dimension() const noexcept { return n_plus + n_minus + n_zero; }

  friend bool operator==(const Signature&, const Signature&) = default;
  friend Signature operator+(Signature a, const Signature& b) noexcept {
    a.n_plus += b.n_plus;
    a.n_minus += b.n_minus;
    a.n_zero += b.n_zero;
    return a;
  }
};

std::ostream& operator<<(std::ostream& os, const Signature& s);

/// Ascending eigenvalues of the symmetrized input. Throws InputError on
/// non-finite entries or asymmetry above 1e-10 relative.
Eigen::VectorXd symmetric_eigenvalues(const Eigen::MatrixXd& A);

/// Eigenvalues |lambda| <= tol * max(1, |lambda|_max) count as zero.
Signature signature_of(const Eigen::MatrixXd& A, double tol = kDefaultTol);

/// Moore-Penrose pseudoinverse of a symmetric matrix; eigenvalues below the
/// signature_of threshold are treated as zero.
Eigen::MatrixXd pseudoinverse(const Eigen::MatrixXd& A, double tol = kDefaultTol);

/// Largest singular value.
double spectral_norm(const Eigen::MatrixXd& A);
double spectral_norm(const Eigen::MatrixXcd& A);

bool is_psd(const Eigen::MatrixXd& A, double tol = kDefaultTol);

}  // namespace resistnet
