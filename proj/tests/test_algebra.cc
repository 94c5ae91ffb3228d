#include <gtest/gtest.h>

#include <cmath>

#include "symcone/algebra.h"
#include "symcone/errors.h"
#include "test_util.h"

namespace symcone {
namespace {

using testing::PropertyFamilies;
using testing::RandomElement;

TEST(AlgebraDescriptorTest, ParsesAndPrintsDirectSums) {
  const AlgebraDescriptor d = AlgebraDescriptor::Parse(" orthant:3 + spin:4+symmat:3 ");
  ASSERT_EQ(d.num_blocks(), 3);
  EXPECT_EQ(d.dim(), 3 + 4 + 6);
  EXPECT_EQ(d.rank(), 3 + 2 + 3);
  EXPECT_EQ(d.offset(2), 7);
  EXPECT_EQ(d.rank_offset(2), 5);
  EXPECT_EQ(d.ToString(), "orthant:3+spin:4+symmat:3");
  EXPECT_EQ(AlgebraDescriptor::Parse(d.ToString()), d);
}

TEST(AlgebraDescriptorTest, RejectsMalformedText) {
  EXPECT_THROW(AlgebraDescriptor::Parse("cube:3"), StructuralError);
  EXPECT_THROW(AlgebraDescriptor::Parse("spin"), StructuralError);
  EXPECT_THROW(AlgebraDescriptor::Parse("spin:x"), StructuralError);
  EXPECT_THROW(AlgebraDescriptor::Parse("spin:1"), StructuralError);
  EXPECT_THROW(AlgebraDescriptor::Parse("orthant:0"), StructuralError);
  EXPECT_THROW(AlgebraDescriptor::Parse(""), StructuralError);
}

TEST(AlgebraElementTest, SizeMismatchIsStructural) {
  EXPECT_THROW(AlgebraElement(AlgebraDescriptor::Spin(3), Eigen::VectorXd(2)),
               StructuralError);
  const AlgebraElement a = AlgebraElement::Zero(AlgebraDescriptor::Spin(3));
  const AlgebraElement b = AlgebraElement::Zero(AlgebraDescriptor::Orthant(3));
  EXPECT_THROW(JordanProduct(a, b), StructuralError);
  EXPECT_THROW(a + b, StructuralError);
}

TEST(AlgebraElementTest, NaturalCoordinatesRoundTrip) {
  Rng rng(1);
  for (const AlgebraDescriptor& d : PropertyFamilies()) {
    const AlgebraElement a = RandomElement(rng, d);
    const Eigen::VectorXd nat = a.ToNatural();
    const AlgebraElement b = AlgebraElement::FromNatural(
        d, std::span<const double>(nat.data(), nat.size()));
    EXPECT_LE((a - b).norm(), 1e-15 * (1 + a.norm()));
  }
}

TEST(JordanProductTest, SpinMatchesNaturalFormula) {
  // (x0, xbar) o (y0, ybar) = (x . y, x0 ybar + y0 xbar).
  const AlgebraDescriptor d = AlgebraDescriptor::Spin(3);
  const AlgebraElement x = AlgebraElement::FromNatural(d, {1.0, 2.0, -1.0});
  const AlgebraElement y = AlgebraElement::FromNatural(d, {0.5, 1.0, 3.0});
  const Eigen::VectorXd got = JordanProduct(x, y).ToNatural();
  EXPECT_NEAR(got[0], 0.5 + 2.0 - 3.0, 1e-14);
  EXPECT_NEAR(got[1], 1.0 * 1.0 + 0.5 * 2.0, 1e-14);
  EXPECT_NEAR(got[2], 1.0 * 3.0 + 0.5 * -1.0, 1e-14);
}

TEST(JordanProductTest, SymMatIsSymmetrizedMatrixProduct) {
  Rng rng(2);
  const AlgebraDescriptor d = AlgebraDescriptor::SymMat(4);
  for (int t = 0; t < 20; ++t) {
    const AlgebraElement a = RandomElement(rng, d);
    const AlgebraElement b = RandomElement(rng, d);
    const Eigen::MatrixXd am = testing::OracleBlockMatrix(a, 0);
    const Eigen::MatrixXd bm = testing::OracleBlockMatrix(b, 0);
    const Eigen::MatrixXd expected = 0.5 * (am * bm + bm * am);
    EXPECT_LE((testing::OracleBlockMatrix(JordanProduct(a, b), 0) - expected)
                  .norm(),
              1e-12 * (1 + expected.norm()));
  }
}

TEST(JordanProductTest, OrthantIsComponentwise) {
  const AlgebraDescriptor d = AlgebraDescriptor::Orthant(3);
  const AlgebraElement a = AlgebraElement::FromNatural(d, {1.0, -2.0, 3.0});
  const AlgebraElement b = AlgebraElement::FromNatural(d, {4.0, 5.0, -6.0});
  EXPECT_EQ(JordanProduct(a, b).ToNatural(), Eigen::Vector3d(4.0, -10.0, -18.0));
}

class AlgebraLawsTest : public ::testing::TestWithParam<std::string> {};

TEST_P(AlgebraLawsTest, JordanAlgebraAxiomsHold) {
  const AlgebraDescriptor d = AlgebraDescriptor::Parse(GetParam());
  Rng rng(3);
  const AlgebraElement e = Identity(d);
  EXPECT_NEAR(Inner(e, e), d.rank(), 1e-12);  // tr(e) = r
  for (int t = 0; t < 50; ++t) {
    const AlgebraElement x = RandomElement(rng, d);
    const AlgebraElement y = RandomElement(rng, d);
    const AlgebraElement z = RandomElement(rng, d);
    const double scale = (1 + x.norm()) * (1 + y.norm()) * (1 + z.norm());
    EXPECT_LE((JordanProduct(e, x) - x).norm(), 1e-14 * (1 + x.norm()));
    EXPECT_LE((JordanProduct(x, y) - JordanProduct(y, x)).norm(), 1e-14 * scale);
    // Jordan identity y o (y^2 o z) = y^2 o (y o z).
    const AlgebraElement y2 = JordanProduct(y, y);
    EXPECT_LE((JordanProduct(y, JordanProduct(y2, z)) -
               JordanProduct(y2, JordanProduct(y, z)))
                  .norm(),
              1e-12 * scale * scale);
    // <x o y, z> = <y, x o z>.
    EXPECT_NEAR(Inner(JordanProduct(x, y), z), Inner(y, JordanProduct(x, z)),
                1e-12 * scale);
    // Dot product of stored coordinates is tr(x o y).
    EXPECT_NEAR(Inner(x, y), x.coords().dot(y.coords()), 1e-12 * scale);
  }
}

TEST_P(AlgebraLawsTest, LOperatorMatrixIsSymmetricAndMatchesProduct) {
  const AlgebraDescriptor d = AlgebraDescriptor::Parse(GetParam());
  Rng rng(4);
  for (int t = 0; t < 20; ++t) {
    const AlgebraElement x = RandomElement(rng, d);
    const AlgebraElement w = RandomElement(rng, d);
    const Eigen::MatrixXd l = LOperatorMatrix(x);
    EXPECT_LE((l - l.transpose()).norm(), 1e-14 * (1 + l.norm()));
    EXPECT_LE((l * w.coords() - JordanProduct(x, w).coords()).norm(),
              1e-12 * (1 + x.norm()) * (1 + w.norm()));
  }
}

INSTANTIATE_TEST_SUITE_P(Families, AlgebraLawsTest,
                         ::testing::Values("orthant:5", "spin:4", "symmat:4",
                                           "orthant:2+spin:3+symmat:3"));

TEST(SvecTest, RoundTripPreservesFrobeniusInner) {
  Rng rng(5);
  Eigen::MatrixXd a = rng.NormalMatrix(3, 3);
  a = (a + a.transpose()).eval();
  Eigen::MatrixXd b = rng.NormalMatrix(3, 3);
  b = (b + b.transpose()).eval();
  EXPECT_LE((SvecToSymMat(SymMatToSvec(a), 3) - a).norm(), 1e-14);
  EXPECT_NEAR(SymMatToSvec(a).dot(SymMatToSvec(b)), (a * b).trace(), 1e-12);
}

TEST(EmbedBlockTest, PlacesCoordinatesInOneBlock) {
  const AlgebraDescriptor d = AlgebraDescriptor::Parse("orthant:2+spin:3");
  const AlgebraElement e = EmbedBlock(d, 1, Eigen::Vector3d(1.0, 2.0, 3.0));
  EXPECT_EQ(e.coords(), (Eigen::VectorXd(5) << 0, 0, 1, 2, 3).finished());
}

}  // namespace
}  // namespace symcone
