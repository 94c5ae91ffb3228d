#include <gtest/gtest.h>

#include <cmath>
#include <limits>

#include "symcone/errors.h"
#include "symcone/jacobi_eigen.h"
#include "symcone/linalg.h"
#include "symcone/rng.h"

namespace symcone {
namespace {

Eigen::MatrixXd RandomSymmetric(Rng& rng, int n) {
  const Eigen::MatrixXd a = rng.NormalMatrix(n, n);
  return 0.5 * (a + a.transpose());
}

TEST(JacobiEigenTest, AgreesWithEigenSolver) {
  Rng rng(11);
  for (int n : {1, 2, 3, 5, 8}) {
    for (int t = 0; t < 10; ++t) {
      const Eigen::MatrixXd a = RandomSymmetric(rng, n);
      const SymmetricEigen got = JacobiEigen(a);
      Eigen::SelfAdjointEigenSolver<Eigen::MatrixXd> ref(a);
      EXPECT_LE((got.eigenvalues - ref.eigenvalues()).norm(), 1e-11 * (1 + a.norm()));
      const Eigen::MatrixXd& v = got.eigenvectors;
      EXPECT_LE((v.transpose() * v - Eigen::MatrixXd::Identity(n, n)).norm(), 1e-12);
      EXPECT_LE((v * got.eigenvalues.asDiagonal() * v.transpose() - a).norm(),
                1e-11 * (1 + a.norm()));
      for (int i = 1; i < n; ++i) EXPECT_LE(got.eigenvalues[i - 1], got.eigenvalues[i]);
    }
  }
}

TEST(JacobiEigenTest, ReadsOnlyTheLowerTriangle) {
  Eigen::Matrix2d a;
  a << 2.0, 99.0, 1.0, 2.0;
  const SymmetricEigen got = JacobiEigen(a);
  EXPECT_NEAR(got.eigenvalues[0], 1.0, 1e-14);
  EXPECT_NEAR(got.eigenvalues[1], 3.0, 1e-14);
}

TEST(JacobiEigenTest, DiagonalInputNeedsNoSweeps) {
  const Eigen::MatrixXd a = Eigen::Vector3d(3.0, -1.0, 2.0).asDiagonal();
  const SymmetricEigen got = JacobiEigen(a);
  EXPECT_EQ(got.sweeps, 0);
  EXPECT_EQ(got.eigenvalues, Eigen::Vector3d(-1.0, 2.0, 3.0));
}

TEST(JacobiEigenTest, RepeatedEigenvalues) {
  Rng rng(12);
  const Eigen::MatrixXd q = rng.NormalMatrix(4, 4).householderQr().householderQ();
  const Eigen::MatrixXd a =
      q * Eigen::Vector4d(1.0, 1.0, 1.0, -2.0).asDiagonal() * q.transpose();
  const SymmetricEigen got = JacobiEigen(a);
  EXPECT_LE((got.eigenvalues - Eigen::Vector4d(-2.0, 1.0, 1.0, 1.0)).norm(), 1e-12);
}

TEST(JacobiEigenTest, FailsLoudly) {
  Rng rng(13);
  JacobiOptions capped;
  capped.max_sweeps = 1;
  EXPECT_THROW(JacobiEigen(RandomSymmetric(rng, 6), capped), NumericalError);
  Eigen::Matrix2d bad;
  bad << 1.0, 0.0, std::numeric_limits<double>::quiet_NaN(), 1.0;
  EXPECT_THROW(JacobiEigen(bad), NumericalError);
}

TEST(NullSpaceTest, BasisIsOrthonormalAndAnnihilated) {
  Rng rng(14);
  const Eigen::MatrixXd a = rng.NormalMatrix(2, 5);
  const Eigen::MatrixXd k = NullSpace(a);
  ASSERT_EQ(k.cols(), 3);
  EXPECT_LE((a * k).norm(), 1e-12);
  EXPECT_LE((k.transpose() * k - Eigen::MatrixXd::Identity(3, 3)).norm(), 1e-12);
  EXPECT_EQ(NullSpace(Eigen::MatrixXd::Zero(3, 4)).cols(), 4);
  EXPECT_EQ(NullSpace(Eigen::MatrixXd::Identity(3, 3)).cols(), 0);
}

TEST(NullSpaceTest, RankDeficientTallMatrix) {
  Rng rng(15);
  const Eigen::MatrixXd b = rng.NormalMatrix(6, 2);
  const Eigen::MatrixXd a = b * rng.NormalMatrix(2, 4);  // rank 2
  EXPECT_EQ(NullSpace(a).cols(), 2);
}

TEST(SingularValueTest, Conventions) {
  EXPECT_EQ(MinSingularValue(Eigen::MatrixXd(3, 0)),
            std::numeric_limits<double>::infinity());
  EXPECT_EQ(MinSingularValue(Eigen::MatrixXd::Ones(2, 3)), 0.0);
  Eigen::Matrix2d d;
  d << 3.0, 0.0, 0.0, -0.5;
  EXPECT_NEAR(MinSingularValue(d), 0.5, 1e-14);
  EXPECT_NEAR(MaxSingularValue(d), 3.0, 1e-14);
  EXPECT_NEAR(MinSymmetricEigenvalue(d), -0.5, 1e-14);
  EXPECT_EQ(MinSymmetricEigenvalue(Eigen::MatrixXd(0, 0)),
            std::numeric_limits<double>::infinity());
}

}  // namespace
}  // namespace symcone
