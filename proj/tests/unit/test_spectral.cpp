#include <gtest/gtest.h>

#include <cmath>
#include <sstream>

#include "generators.hpp"
#include "oracles.hpp"
#include "resistnet/errors.hpp"
#include "resistnet/graph.hpp"
#include "resistnet/spectral.hpp"

using namespace resistnet;

namespace {

Eigen::MatrixXd triangle_laplacian() {
  return laplacian(WeightedGraph(3, {{0, 1, 1.0}, {1, 2, 1.0}, {0, 2, 1.0}}));
}

Eigen::MatrixXd random_matrix(gen::Rng& rng, Eigen::Index rows, Eigen::Index cols) {
  Eigen::MatrixXd m(rows, cols);
  for (Eigen::Index i = 0; i < rows; ++i)
    for (Eigen::Index j = 0; j < cols; ++j) m(i, j) = gen::uniform(rng, -1, 1);
  return m;
}

}  // namespace

TEST(Signature, Examples) {
  EXPECT_EQ(signature_of(Eigen::MatrixXd::Identity(3, 3)), (Signature{3, 0, 0}));
  EXPECT_EQ(signature_of(triangle_laplacian()), (Signature{2, 0, 1}));
  EXPECT_EQ(signature_of(Eigen::Vector3d(1, -2, 0).asDiagonal().toDenseMatrix()), (Signature{1, 1, 1}));
}

TEST(Signature, ArithmeticAndPrinting) {
  const Signature s = Signature{1, 2, 3} + Signature{0, 0, 1};
  EXPECT_EQ(s, (Signature{1, 2, 4}));
  EXPECT_EQ(s.dimension(), 7u);
  std::ostringstream os;
  os << s;
  EXPECT_EQ(os.str(), "(1, 2, 4)");
}

TEST(Signature, ZeroThresholdIsRelative) {
  const Eigen::Vector3d d(1e6, 1e-4, -1e-4);
  EXPECT_EQ(signature_of(d.asDiagonal().toDenseMatrix()), (Signature{1, 0, 2}));
  EXPECT_EQ(signature_of(d.asDiagonal().toDenseMatrix(), 1e-12), (Signature{2, 1, 0}));
}

TEST(Signature, SylvesterInvariance) {
  gen::Rng rng(31);
  for (int t = 0; t < 100; ++t) {
    const auto n = static_cast<Eigen::Index>(gen::pick(rng, 1, 8));
    // Symmetric A with a controlled spectrum, including exact zeros.
    Eigen::VectorXd d(n);
    for (Eigen::Index i = 0; i < n; ++i) {
      const double r = gen::uniform(rng, 0, 1);
      d(i) = r < 0.2 ? 0.0 : (r < 0.6 ? gen::uniform(rng, 0.5, 2) : -gen::uniform(rng, 0.5, 2));
    }
    const Eigen::HouseholderQR<Eigen::MatrixXd> qr(random_matrix(rng, n, n));
    const Eigen::MatrixXd Q = qr.householderQ();
    const Eigen::MatrixXd A = Q * d.asDiagonal() * Q.transpose();
    Eigen::MatrixXd S = random_matrix(rng, n, n) + 2.0 * Eigen::MatrixXd::Identity(n, n);
    if (std::abs(S.determinant()) < 1e-3) continue;
    const Eigen::MatrixXd B = S.transpose() * A * S;
    const Signature sa = signature_of(A), sb = signature_of(B);
    EXPECT_EQ(sa, sb);
    const oracle::Inertia o = oracle::inertia(oracle::from_eigen(A));
    EXPECT_EQ(sa, (Signature{o.plus, o.minus, o.zero}));
  }
}

TEST(SymmetricEigenvalues, ValidatesInput) {
  Eigen::MatrixXd a(2, 2);
  a << 1, 2, 3, 1;
  EXPECT_THROW(symmetric_eigenvalues(a), InputError);
  a << 1, NAN, NAN, 1;
  EXPECT_THROW(symmetric_eigenvalues(a), InputError);
  EXPECT_THROW(symmetric_eigenvalues(Eigen::MatrixXd(2, 3)), InputError);
}

TEST(Pseudoinverse, Examples) {
  EXPECT_TRUE(pseudoinverse(Eigen::MatrixXd::Identity(3, 3)).isApprox(Eigen::MatrixXd::Identity(3, 3)));
  const Eigen::MatrixXd p = pseudoinverse(Eigen::Vector2d(2, 0).asDiagonal().toDenseMatrix());
  EXPECT_DOUBLE_EQ(p(0, 0), 0.5);
  EXPECT_EQ(p(1, 1), 0.0);
  const Eigen::MatrixXd L = triangle_laplacian();
  EXPECT_LE((L * pseudoinverse(L) * L - L).cwiseAbs().maxCoeff(), 1e-10);
}

TEST(Pseudoinverse, PenroseConditions) {
  gen::Rng rng(32);
  for (int t = 0; t < 50; ++t) {
    const WeightedGraph g = gen::signed_graph(rng, gen::pick(rng, 2, 8), 0.5, 0.3, 0.5, 2.0);
    const Eigen::MatrixXd A = laplacian(g);
    const Eigen::MatrixXd P = pseudoinverse(A);
    EXPECT_LE((P * A * P - P).cwiseAbs().maxCoeff(), 1e-8);
    EXPECT_LE((A * P - (A * P).transpose()).cwiseAbs().maxCoeff(), 1e-8);
    EXPECT_LE((P - P.transpose()).cwiseAbs().maxCoeff(), 1e-8);
  }
}

TEST(SpectralNorm, Examples) {
  EXPECT_DOUBLE_EQ(spectral_norm(Eigen::MatrixXd(Eigen::Vector2d(3, -5).asDiagonal())), 5.0);
  Eigen::VectorXd u(3);
  u << 1, 2, std::sqrt(2.0);  // ||u||^2 = 7
  EXPECT_NEAR(spectral_norm(Eigen::MatrixXd(u * u.transpose())), 7.0, 1e-12);
}

TEST(SpectralNorm, MatchesEigenvaluesOfGram) {
  gen::Rng rng(33);
  for (int t = 0; t < 20; ++t) {
    const Eigen::MatrixXd A = random_matrix(rng, 5, 5);
    const auto ev = oracle::jacobi_eigenvalues(oracle::from_eigen(A.transpose() * A));
    EXPECT_NEAR(spectral_norm(A), std::sqrt(ev.back()), 1e-10);
    const Eigen::MatrixXcd C = A.cast<std::complex<double>>();
    EXPECT_NEAR(spectral_norm(C), std::sqrt(ev.back()), 1e-10);
  }
}

TEST(SpectralNorm, DominatesDiagonalOfPsd) {
  gen::Rng rng(34);
  for (int t = 0; t < 20; ++t) {
    const Eigen::MatrixXd B = random_matrix(rng, 6, 4);
    const Eigen::MatrixXd A = B.transpose() * B;
    EXPECT_GE(spectral_norm(A) + 1e-12, A.diagonal().maxCoeff());
  }
}

TEST(IsPsd, Examples) {
  EXPECT_TRUE(is_psd(triangle_laplacian()));
  EXPECT_FALSE(is_psd(laplacian(WeightedGraph(3, {{0, 1, 1.0}, {1, 2, -0.1}}))));
  EXPECT_TRUE(is_psd(Eigen::MatrixXd::Zero(3, 3)));
}
