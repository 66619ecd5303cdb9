#include <gtest/gtest.h>

#include <cmath>
#include <vector>

#include "wigner/rng.hpp"

using wigner::Philox4x32;
using wigner::RngStream;

TEST(Philox, KnownAnswerZero) {
  const auto out = Philox4x32::block({0, 0, 0, 0}, {0, 0});
  EXPECT_EQ(out[0], 0x6627e8d5u);
  EXPECT_EQ(out[1], 0xe169c58du);
  EXPECT_EQ(out[2], 0xbc57ac4cu);
  EXPECT_EQ(out[3], 0x9b00dbd8u);
}

TEST(Philox, KnownAnswerOnes) {
  const auto out = Philox4x32::block({0xffffffffu, 0xffffffffu, 0xffffffffu, 0xffffffffu}, {0xffffffffu, 0xffffffffu});
  EXPECT_EQ(out[0], 0x408f276du);
  EXPECT_EQ(out[1], 0x41c83b0eu);
  EXPECT_EQ(out[2], 0xa20bc7c6u);
  EXPECT_EQ(out[3], 0x6d5451fdu);
}

TEST(Philox, KnownAnswerPi) {
  const auto out = Philox4x32::block({0x243f6a88u, 0x85a308d3u, 0x13198a2eu, 0x03707344u}, {0xa4093822u, 0x299f31d0u});
  EXPECT_EQ(out[0], 0xd16cfe09u);
  EXPECT_EQ(out[1], 0x94fdccebu);
  EXPECT_EQ(out[2], 0x5001e420u);
  EXPECT_EQ(out[3], 0x24126ea1u);
}

TEST(RngStream, SameSeedAndIndexReproduce) {
  RngStream a = wigner::derive_stream(7, 0), b = wigner::derive_stream(7, 0);
  for (int i = 0; i < 100; ++i) ASSERT_EQ(a.normal(), b.normal());
}

TEST(RngStream, DistinctIndicesDiffer) {
  RngStream a = wigner::derive_stream(7, 0), b = wigner::derive_stream(7, 1);
  int same = 0;
  for (int i = 0; i < 100; ++i) same += a.next_u32() == b.next_u32();
  EXPECT_LT(same, 3);
}

TEST(RngStream, PairedStreamsUncorrelated) {
  RngStream a = wigner::derive_stream(7, 0), b = wigner::derive_stream(7, 1);
  const int n = 100000;
  double sx = 0, sy = 0, sxx = 0, syy = 0, sxy = 0;
  for (int i = 0; i < n; ++i) {
    const double x = a.normal(), y = b.normal();
    sx += x;
    sy += y;
    sxx += x * x;
    syy += y * y;
    sxy += x * y;
  }
  const double cov = sxy / n - sx / n * sy / n;
  const double corr = cov / std::sqrt((sxx / n - sx * sx / n / n) * (syy / n - sy * sy / n / n));
  EXPECT_LT(std::abs(corr), 0.02);
}

TEST(RngStream, GoldenNormals) {
  // Pins the polar-method pipeline: Philox words -> 53-bit uniforms -> normals.
  RngStream a = wigner::derive_stream(2024, 3);
  std::vector<double> got;
  for (int i = 0; i < 4; ++i) got.push_back(a.normal());
  RngStream b = wigner::derive_stream(2024, 3);
  std::vector<double> manual;
  while (manual.size() < 4) {
    double u, v, s;
    do {
      u = 2.0 * b.uniform() - 1.0;
      v = 2.0 * b.uniform() - 1.0;
      s = u * u + v * v;
    } while (s >= 1.0 || s == 0.0);
    const double f = std::sqrt(-2.0 * std::log(s) / s);
    manual.push_back(u * f);
    manual.push_back(v * f);
  }
  EXPECT_EQ(got, manual);
}

TEST(RngStream, UniformMomentsAndRange) {
  RngStream a = wigner::derive_stream(1, 0);
  double s = 0, ss = 0;
  const int n = 200000;
  for (int i = 0; i < n; ++i) {
    const double u = a.uniform();
    ASSERT_GE(u, 0.0);
    ASSERT_LT(u, 1.0);
    s += u;
    ss += u * u;
  }
  EXPECT_NEAR(s / n, 0.5, 0.003);
  EXPECT_NEAR(ss / n, 1.0 / 3.0, 0.003);
}
