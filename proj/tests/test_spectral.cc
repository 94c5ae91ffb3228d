#include <gtest/gtest.h>

#include <cmath>

#include "symcone/errors.h"
#include "symcone/spectral.h"
#include "test_util.h"

namespace symcone {
namespace {

using testing::OracleEigenvalues;
using testing::PropertyFamilies;
using testing::RandomElement;
using testing::RandomFrame;

TEST(SpectralTest, HandExamples) {
  const SpectralDecomposition o =
      SpectralDecompose(AlgebraElement::FromNatural(AlgebraDescriptor::Orthant(3),
                                                    {3.0, 0.0, -1.0}));
  EXPECT_EQ(o.eigenvalues, Eigen::Vector3d(-1.0, 0.0, 3.0));
  EXPECT_EQ(o.Rank(), 2);

  // Spin(2), a = (0, 1): eigenvalues -1, 1 with c = (1, -/+1) / 2.
  const AlgebraDescriptor spin = AlgebraDescriptor::Spin(2);
  const SpectralDecomposition s =
      SpectralDecompose(AlgebraElement::FromNatural(spin, {0.0, 1.0}));
  EXPECT_NEAR(s.eigenvalues[0], -1.0, 1e-15);
  EXPECT_NEAR(s.eigenvalues[1], 1.0, 1e-15);
  EXPECT_LE((s.frame[0].ToNatural() - Eigen::Vector2d(0.5, -0.5)).norm(), 1e-15);
  EXPECT_LE((s.frame[1].ToNatural() - Eigen::Vector2d(0.5, 0.5)).norm(), 1e-15);

  const SpectralDecomposition m = SpectralDecompose(
      AlgebraElement::FromNatural(AlgebraDescriptor::SymMat(2), {2.0, 0.0, 5.0}));
  EXPECT_NEAR(m.eigenvalues[0], 2.0, 1e-14);
  EXPECT_NEAR(m.eigenvalues[1], 5.0, 1e-14);
}

TEST(SpectralTest, DegenerateSpinUsesFirstAxis) {
  const AlgebraElement a = AlgebraElement::FromNatural(AlgebraDescriptor::Spin(3),
                                                       {2.0, 0.0, 0.0});
  const SpectralDecomposition sd = SpectralDecompose(a);
  EXPECT_EQ(sd.eigenvalues, Eigen::Vector2d(2.0, 2.0));
  EXPECT_LE((sd.frame[1].ToNatural() - Eigen::Vector3d(0.5, 0.5, 0.0)).norm(), 1e-15);
  EXPECT_LE((sd.Reconstruct() - a).norm(), 1e-15);
}

TEST(SpectralTest, TraceRankAndIdentity) {
  for (const AlgebraDescriptor& d : PropertyFamilies()) {
    EXPECT_NEAR(Trace(Identity(d)), d.rank(), 1e-12);
    EXPECT_EQ(Rank(Identity(d)), d.rank());
    EXPECT_EQ(Rank(AlgebraElement::Zero(d)), 0);
    Rng rng(21);
    for (const AlgebraElement& c : RandomFrame(rng, d)) EXPECT_EQ(Rank(c), 1);
  }
}

TEST(SpectralTest, TraceIsLinear) {
  Rng rng(22);
  for (const AlgebraDescriptor& d : PropertyFamilies()) {
    const AlgebraElement a = RandomElement(rng, d);
    const AlgebraElement b = RandomElement(rng, d);
    EXPECT_NEAR(Trace(2.0 * a - b), 2.0 * Trace(a) - Trace(b), 1e-10);
    EXPECT_NEAR(Trace(a), Inner(a, Identity(d)), 1e-10);
  }
}

TEST(SpectralTest, RankToleranceIsRelative) {
  const AlgebraDescriptor d = AlgebraDescriptor::Orthant(3);
  const AlgebraElement a = AlgebraElement::FromNatural(d, {1e6, 1e-3, 0.0});
  EXPECT_EQ(Rank(a), 1);  // 1e-3 <= 1e-8 * 1e6
  EXPECT_EQ(Rank(a, 1e-12), 2);
  EXPECT_EQ(Rank(AlgebraElement::FromNatural(d, {1e-9, 0.5, 0.0})), 1);
}

class SpectralPropertyTest : public ::testing::TestWithParam<std::string> {};

TEST_P(SpectralPropertyTest, DecompositionInvariants) {
  const AlgebraDescriptor d = AlgebraDescriptor::Parse(GetParam());
  Rng rng(23);
  const AlgebraElement e = Identity(d);
  for (int t = 0; t < 200; ++t) {
    const AlgebraElement a = RandomElement(rng, d);
    const SpectralDecomposition sd = SpectralDecompose(a);
    ASSERT_EQ(static_cast<int>(sd.frame.size()), d.rank());
    EXPECT_LE((sd.Reconstruct() - a).norm(), 1e-8 * (1 + a.norm()));
    EXPECT_LE((sd.eigenvalues - OracleEigenvalues(a)).norm(), 1e-10 * (1 + a.norm()));
    AlgebraElement sum = AlgebraElement::Zero(d);
    for (int i = 0; i < d.rank(); ++i) {
      sum += sd.frame[i];
      EXPECT_LE((JordanProduct(sd.frame[i], sd.frame[i]) - sd.frame[i]).norm(), 1e-8);
      for (int j = i + 1; j < d.rank(); ++j) {
        EXPECT_LE(std::abs(Inner(sd.frame[i], sd.frame[j])), 1e-8);
        EXPECT_LE(JordanProduct(sd.frame[i], sd.frame[j]).norm(), 1e-8);
      }
    }
    EXPECT_LE((sum - e).norm(), 1e-8);
  }
}

TEST_P(SpectralPropertyTest, SqrtSquaresBack) {
  const AlgebraDescriptor d = AlgebraDescriptor::Parse(GetParam());
  Rng rng(24);
  for (int t = 0; t < 100; ++t) {
    const AlgebraElement x = RandomElement(rng, d);
    const AlgebraElement a = JordanProduct(x, x);  // in the cone
    const AlgebraElement s = SqrtElement(a);
    EXPECT_LE((JordanProduct(s, s) - a).norm(), 1e-7 * (1 + a.norm()));
    EXPECT_GE(testing::OracleEigenvalues(s).minCoeff(), -1e-12);
    const AlgebraElement r = SqrtAbsElement(x);
    EXPECT_LE((JordanProduct(r, r) - SpectralDecompose(x).Apply(
                                         [](double v) { return std::abs(v); }))
                  .norm(),
              1e-8 * (1 + x.norm()));
  }
}

TEST_P(SpectralPropertyTest, PeirceBasesForRandomIdempotents) {
  const AlgebraDescriptor d = AlgebraDescriptor::Parse(GetParam());
  Rng rng(25);
  for (int t = 0; t < 50; ++t) {
    const std::vector<AlgebraElement> frame = RandomFrame(rng, d);
    Eigen::VectorXd pick(d.rank());
    for (int i = 0; i < d.rank(); ++i) pick[i] = rng.UniformInt(0, 1);
    const AlgebraElement c = testing::Combine(frame, pick);
    const PeirceBasis pb = ComputePeirceBasis(c);
    ASSERT_EQ(pb.one.cols() + pb.half.cols() + pb.zero.cols(), d.dim());
    Eigen::MatrixXd all(d.dim(), d.dim());
    all << pb.one, pb.half, pb.zero;
    EXPECT_LE((all.transpose() * all - Eigen::MatrixXd::Identity(d.dim(), d.dim()))
                  .norm(),
              1e-10);
    const Eigen::MatrixXd lc = LOperatorMatrix(c);
    EXPECT_LE((lc * pb.one - pb.one).norm(), 1e-8);
    EXPECT_LE((lc * pb.half - 0.5 * pb.half).norm(), 1e-8);
    EXPECT_LE((lc * pb.zero).norm(), 1e-8);
  }
}

INSTANTIATE_TEST_SUITE_P(Families, SpectralPropertyTest,
                         ::testing::Values("orthant:5", "spin:4", "symmat:4",
                                           "orthant:2+spin:3+symmat:3"));

TEST(SpectralTest, SymMatEigenvaluesMatchCharacteristicPolynomial) {
  Rng rng(26);
  for (int n = 1; n <= 4; ++n) {
    const AlgebraDescriptor d = AlgebraDescriptor::SymMat(n);
    for (int t = 0; t < 25; ++t) {
      const AlgebraElement a = RandomElement(rng, d);
      const Eigen::VectorXd roots =
          testing::CharPolyEigenvalues(testing::OracleBlockMatrix(a, 0));
      if (roots.size() != n) continue;  // two roots shared a scan cell
      EXPECT_LE((Eigenvalues(a) - roots).cwiseAbs().maxCoeff(), 1e-8);
    }
  }
}

TEST(SqrtTest, Examples) {
  EXPECT_LE((SqrtElement(Identity(AlgebraDescriptor::Spin(3))) -
             Identity(AlgebraDescriptor::Spin(3)))
                .norm(),
            1e-15);
  const AlgebraDescriptor o = AlgebraDescriptor::Orthant(2);
  EXPECT_LE((SqrtElement(AlgebraElement::FromNatural(o, {4.0, 9.0})).ToNatural() -
             Eigen::Vector2d(2.0, 3.0))
                .norm(),
            1e-14);
  const AlgebraDescriptor m = AlgebraDescriptor::SymMat(2);
  EXPECT_LE((SqrtElement(AlgebraElement::FromNatural(m, {4.0, 0.0, 1.0})).ToNatural() -
             Eigen::Vector3d(2.0, 0.0, 1.0))
                .norm(),
            1e-14);
}

TEST(SqrtTest, RejectsElementsOutsideTheCone) {
  const AlgebraElement a =
      AlgebraElement::FromNatural(AlgebraDescriptor::Orthant(2), {1.0, -0.1});
  EXPECT_THROW(SqrtElement(a), DomainError);
  // Tiny negative eigenvalues are rounding and get clamped.
  const AlgebraElement b =
      AlgebraElement::FromNatural(AlgebraDescriptor::Orthant(2), {1.0, -1e-12});
  EXPECT_NEAR(SqrtElement(b).coords()[1], 0.0, 1e-15);
}

TEST(PeirceTest, Examples) {
  const AlgebraDescriptor d = AlgebraDescriptor::SymMat(2);
  const PeirceBasis pe = ComputePeirceBasis(Identity(d));
  EXPECT_EQ(pe.one.cols(), 3);
  EXPECT_EQ(pe.half.cols() + pe.zero.cols(), 0);
  const PeirceBasis p0 = ComputePeirceBasis(AlgebraElement::Zero(d));
  EXPECT_EQ(p0.zero.cols(), 3);
  const PeirceBasis p1 = ComputePeirceBasis(AlgebraElement::FromNatural(d, {1.0, 0.0, 0.0}));
  EXPECT_EQ(p1.one.cols(), 1);
  EXPECT_EQ(p1.half.cols(), 1);
  EXPECT_EQ(p1.zero.cols(), 1);
}

TEST(PeirceTest, RejectsNonIdempotent) {
  const AlgebraDescriptor d = AlgebraDescriptor::Orthant(2);
  EXPECT_THROW(ComputePeirceBasis(AlgebraElement::FromNatural(d, {0.5, 1.0})),
               PreconditionError);
}

TEST(SupportIdempotentTest, CoversPositiveEigenvalues) {
  const AlgebraDescriptor d = AlgebraDescriptor::SymMat(3);
  const AlgebraElement z = AlgebraElement::FromNatural(d, {2.0, 0.0, 0.0, 1.0, 0.0, 0.0});
  const Eigen::VectorXd c = SupportIdempotent(z).ToNatural();
  EXPECT_LE((c - (Eigen::VectorXd(6) << 1, 0, 0, 1, 0, 0).finished()).norm(), 1e-14);
}

}  // namespace
}  // namespace symcone
