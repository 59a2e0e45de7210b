#include "hyperframe/error.hpp"
#include "hyperframe/minkowski.hpp"
#include "support.hpp"

#include <gtest/gtest.h>

using namespace hyperframe;
using hftest::leibniz_det;

TEST(MinkDot, SignatureOnBasis) {
  EXPECT_EQ(mink_dot({1, 0, 0, 0}, {1, 0, 0, 0}), -1.0);
  EXPECT_EQ(mink_dot({0, 1, 0, 0}, {0, 0, 1, 0}), 0.0);
  EXPECT_EQ(mink_dot({1, 2, 0, 0}, {3, 1, 0, 0}), -1.0);
}

TEST(MinkDot, SymmetricAndBilinear) {
  std::mt19937_64 rng(7);
  for (int i = 0; i < 200; ++i) {
    const MinkVec a = hftest::random_vec(rng), b = hftest::random_vec(rng), c = hftest::random_vec(rng);
    EXPECT_DOUBLE_EQ(mink_dot(a, b), mink_dot(b, a));
    EXPECT_NEAR(mink_dot(2.5 * a + c, b), 2.5 * mink_dot(a, b) + mink_dot(c, b), 1e-12);
  }
}

TEST(CausalCharacter, Examples) {
  EXPECT_EQ(causal_character({1, 0, 0, 0}), CausalClass::Timelike);
  EXPECT_EQ(causal_character({1, 1, 0, 0}), CausalClass::Lightlike);
  EXPECT_EQ(causal_character({0, 1, 0, 0}), CausalClass::Spacelike);
}

TEST(CausalCharacter, RejectsZeroAndNonFinite) {
  EXPECT_THROW(causal_character({0, 0, 0, 0}), Error);
  EXPECT_THROW(causal_character({NAN, 0, 0, 0}), Error);
  EXPECT_THROW(causal_character({INFINITY, 1, 0, 0}), Error);
}

TEST(Wedge3, BasisValuesMatchDeterminantOracle) {
  const MinkVec e0{1, 0, 0, 0}, e1{0, 1, 0, 0}, e2{0, 0, 1, 0}, e3{0, 0, 0, 1};
  const MinkVec w = wedge3(e1, e2, e3);
  EXPECT_EQ(w[0], -1.0);
  EXPECT_EQ(w[1], 0.0);
  EXPECT_EQ(w[2], 0.0);
  EXPECT_EQ(w[3], 0.0);
  const MinkVec v = wedge3(e0, e1, e2);
  EXPECT_EQ(v[0], 0.0);
  EXPECT_EQ(v[3], -1.0);
  // <x0, wedge> is the determinant with x0 as first row.
  EXPECT_DOUBLE_EQ(mink_dot(e0, w), leibniz_det({e0, e1, e2, e3}));
  EXPECT_DOUBLE_EQ(mink_dot(e3, v), leibniz_det({e3, e0, e1, e2}));
}

TEST(Wedge3, AlternatingOnRepeatedArgument) {
  std::mt19937_64 rng(11);
  for (int i = 0; i < 100; ++i) {
    const MinkVec x = hftest::random_vec(rng), y = hftest::random_vec(rng);
    const MinkVec w = wedge3(x, x, y);
    for (std::size_t k = 0; k < 4; ++k) EXPECT_NEAR(w[k], 0.0, 1e-14);
  }
}

TEST(Wedge3, RandomDeterminantIdentityAndOrthogonality) {
  std::mt19937_64 rng(2024);
  for (int i = 0; i < 1000; ++i) {
    const MinkVec x0 = hftest::random_vec(rng, 3), x1 = hftest::random_vec(rng, 3), x2 = hftest::random_vec(rng, 3),
                  x3 = hftest::random_vec(rng, 3);
    const MinkVec w = wedge3(x1, x2, x3);
    const double scale = euclid_norm(x0) * euclid_norm(x1) * euclid_norm(x2) * euclid_norm(x3);
    EXPECT_LE(std::abs(mink_dot(x0, w) - leibniz_det({x0, x1, x2, x3})), 1e-10 * scale);
    const double s3 = euclid_norm(x1) * euclid_norm(x2) * euclid_norm(x3);
    EXPECT_LE(std::abs(mink_dot(w, x1)), 1e-10 * s3 * euclid_norm(x1));
    EXPECT_LE(std::abs(mink_dot(w, x2)), 1e-10 * s3 * euclid_norm(x2));
    EXPECT_LE(std::abs(mink_dot(w, x3)), 1e-10 * s3 * euclid_norm(x3));
  }
}

TEST(Det4, AgreesWithLeibniz) {
  std::mt19937_64 rng(5);
  for (int i = 0; i < 200; ++i) {
    const MinkVec a = hftest::random_vec(rng), b = hftest::random_vec(rng), c = hftest::random_vec(rng),
                  d = hftest::random_vec(rng);
    EXPECT_NEAR(det4(a, b, c, d), leibniz_det({a, b, c, d}), 1e-12);
  }
}

TEST(Membership, QuadricResiduals) {
  EXPECT_EQ(membership_residual({1, 0, 0, 0}, Quadric::H3), 0.0);
  EXPECT_EQ(membership_residual({0, 1, 0, 0}, Quadric::S31), 0.0);
  EXPECT_NEAR(membership_residual({std::cosh(1.0), 0, 0, std::sinh(1.0)}, Quadric::H3), 0.0, 1e-15);
  EXPECT_EQ(membership_residual({1, 1, 0, 0}, Quadric::LC), 0.0);
}
