/******************************************************************************
 * Copyright 2026 The pexcite Authors. All Rights Reserved.
 *
 * Licensed under the Apache License, Version 2.0 (the "License");
 * you may not use this file except in compliance with the License.
 * You may obtain a copy of the License at
 *
 * http://www.apache.org/licenses/LICENSE-2.0
 *
 * Unless required by applicable law or agreed to in writing, software
 * distributed under the License is distributed on an "AS IS" BASIS,
 * WITHOUT WARRANTIES OR CONDITIONS OF ANY KIND, either express or implied.
 * See the License for the specific language governing permissions and
 * limitations under the License.
 *****************************************************************************/

#include <cmath>
#include <numbers>

#include <gtest/gtest.h>

#include "pexcite/errors.hpp"
#include "pexcite/signal.hpp"
#include "support.hpp"

using namespace pexcite;
using pexcite::testing::Gen;

namespace {

DiscreteSignal scalar(std::initializer_list<double> v) {
  Matrix M(1, static_cast<int>(v.size()));
  int k = 0;
  for (double x : v) M(0, k++) = x;
  return DiscreteSignal(M);
}

}  // namespace

TEST(Shift, PadsWithZeros) {
  const auto s = shift(scalar({1, 2, 3}), 1);
  EXPECT_EQ(s.data(), scalar({0, 1, 2}).data());
}

TEST(Shift, ZeroIsIdentity) {
  Gen g(1);
  const auto w = g.noise(3, 17);
  EXPECT_EQ(shift(w, 0).data(), w.data());
}

TEST(Shift, LongerThanSignal) {
  EXPECT_EQ(shift(scalar({5, 7}), 3).data(), scalar({0, 0}).data());
}

TEST(Shift, NegativeRejected) {
  EXPECT_THROW(shift(scalar({1}), -1), DimensionError);
}

TEST(MultiShift, ScalarTwoHigh) {
  const auto q = multi_shift(scalar({1, 2, 3}), 2);
  Matrix want(2, 3);
  want << 0, 1, 2,
          1, 2, 3;
  EXPECT_EQ(q.data(), want);
}

TEST(MultiShift, HeightOneIsIdentity) {
  Gen g(2);
  const auto w = g.noise(2, 9);
  EXPECT_EQ(multi_shift(w, 1).data(), w.data());
}

TEST(MultiShift, BlocksAreShifts) {
  for (std::uint64_t seed = 0; seed < 20; ++seed) {
    Gen g(seed);
    const int d = g.integer(1, 3);
    const int k = g.integer(1, 5);
    const auto w = g.noise(d, g.integer(1, 30));
    const auto q = multi_shift(w, k);
    ASSERT_EQ(q.dim(), d * k);
    for (int j = 0; j < k; ++j) {
      EXPECT_EQ(q.data().middleRows(j * d, d), shift(w, k - 1 - j).data())
          << "seed " << seed << " block " << j;
    }
  }
}

TEST(ShiftProperty, Composition) {
  for (std::uint64_t seed = 0; seed < 50; ++seed) {
    Gen g(seed);
    const auto w = g.noise(g.integer(1, 3), g.integer(1, 25));
    const int a = g.integer(0, 6);
    const int b = g.integer(0, 6);
    EXPECT_EQ(shift(shift(w, a), b).data(), shift(w, a + b).data())
        << "seed " << seed;
  }
}

TEST(ShiftProperty, Linear) {
  for (std::uint64_t seed = 0; seed < 50; ++seed) {
    Gen g(seed);
    const int d = g.integer(1, 3), L = g.integer(1, 25), k = g.integer(0, 8);
    const auto v = g.noise(d, L), w = g.noise(d, L);
    const double a = g.normal(), b = g.normal();
    const DiscreteSignal mix(a * v.data() + b * w.data());
    const Matrix lhs = shift(mix, k).data();
    const Matrix rhs = a * shift(v, k).data() + b * shift(w, k).data();
    EXPECT_LT((lhs - rhs).cwiseAbs().maxCoeff(), 1e-12) << "seed " << seed;
  }
}

TEST(MultiDerivative, SineTwoHigh) {
  const auto w = AnalyticSignal::multisine({1.0});
  const auto d = multi_derivative(w, 2);
  ASSERT_EQ(d.dim(), 2);
  for (double t : {0.0, 0.3, 1.7, 5.0}) {
    const Vector v = d.evaluate(t);
    EXPECT_NEAR(v(0), std::cos(t), 1e-14);
    EXPECT_NEAR(v(1), std::sin(t), 1e-14);
  }
}

TEST(MultiDerivative, HeightOneIsIdentity) {
  const auto w = AnalyticSignal::multisine({1.0, 2.5});
  const auto d = multi_derivative(w, 1);
  for (double t : {0.0, 0.9, 4.2}) {
    EXPECT_NEAR(d.evaluate(t)(0), w.evaluate(t)(0), 1e-15);
  }
}

TEST(MultiDerivative, SinTwoTThreeHigh) {
  const auto d = multi_derivative(AnalyticSignal::multisine({2.0}), 3);
  for (double t : {0.0, 0.4, 2.2}) {
    const Vector v = d.evaluate(t);
    EXPECT_NEAR(v(0), -4 * std::sin(2 * t), 1e-13);
    EXPECT_NEAR(v(1), 2 * std::cos(2 * t), 1e-13);
    EXPECT_NEAR(v(2), std::sin(2 * t), 1e-13);
  }
}

TEST(AnalyticSignal, DerivativeMatchesFiniteDifference) {
  for (std::uint64_t seed = 0; seed < 20; ++seed) {
    Gen g(seed);
    const auto w = g.multisine(2, 3, 0.1, 3.0);
    const auto dw = w.derivative();
    const double t = g.uniform(0, 20), h = 1e-5;
    const Vector fd = (w.evaluate(t + h) - w.evaluate(t - h)) / (2 * h);
    EXPECT_LT((fd - dw.evaluate(t)).cwiseAbs().maxCoeff(), 1e-7)
        << "seed " << seed;
  }
}

TEST(AnalyticSignal, DerivativeBoundHolds) {
  Gen g(3);
  const auto w = g.multisine(2, 2, 0.2, 2.0);
  for (int order = 0; order <= 3; ++order) {
    const Vector bound = w.derivative_bound(order);
    const auto dw = w.derivative(order);
    for (int k = 0; k < 500; ++k) {
      const Vector v = dw.evaluate(0.1 * k);
      EXPECT_TRUE((v.cwiseAbs().array() <= bound.array() + 1e-12).all());
    }
  }
}

TEST(Sample, ExactSineValues) {
  const auto s = sample(AnalyticSignal::multisine({1.0}), std::numbers::pi / 2, 3);
  EXPECT_NEAR(s.data()(0, 0), 0.0, 1e-12);
  EXPECT_NEAR(s.data()(0, 1), 1.0, 1e-12);
  EXPECT_NEAR(s.data()(0, 2), 0.0, 1e-12);
}

TEST(Sample, Constant) {
  Vector c(1);
  c << 2.0;
  const auto s = sample(AnalyticSignal::constant(c), 0.37, 11, -3.0);
  EXPECT_TRUE((s.data().array() == 2.0).all());
}

TEST(Sample, TwoTonesAtOne) {
  // sin 1 + sin 2, evaluated to 17 digits with mpmath.
  const auto w = AnalyticSignal::multisine({1.0, 2.0});
  EXPECT_NEAR(w.evaluate(1.0)(0), 1.7507684116335782, 1e-15);
}

TEST(Sample, Superposition) {
  for (std::uint64_t seed = 0; seed < 20; ++seed) {
    Gen g(seed);
    const auto a = g.multisine(1, 2, 0.1, 3.0);
    const auto b = g.multisine(1, 2, 0.1, 3.0);
    std::vector<Channel> both = a.channels();
    for (const auto& t : b.channels()[0].tones) both[0].tones.push_back(t);
    const AnalyticSignal sum(both);
    const auto sa = sample(a, 0.1, 50), sb = sample(b, 0.1, 50);
    const auto ss = sample(sum, 0.1, 50);
    EXPECT_LT((ss.data() - sa.data() - sb.data()).cwiseAbs().maxCoeff(), 1e-13);
  }
}

TEST(DiscreteSignal, SupNormIsLargestColumn) {
  Matrix M(2, 3);
  M << 3, 0, 1,
       4, 1, 1;
  EXPECT_DOUBLE_EQ(DiscreteSignal(M).sup_norm(), 5.0);
}

TEST(DiscreteSignal, RejectsNonFinite) {
  Matrix M(1, 2);
  M << 1, NAN;
  EXPECT_THROW(DiscreteSignal{M}, DimensionError);
}

TEST(Project, EmptyMapGivesEmptySignal) {
  Gen g(4);
  const auto p = project(Matrix(0, 3), g.noise(3, 10));
  EXPECT_EQ(p.dim(), 0);
  EXPECT_THROW(project(Matrix(1, 2), g.noise(3, 10)), DimensionError);
}
