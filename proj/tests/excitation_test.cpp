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

#include <Eigen/Eigenvalues>
#include <gtest/gtest.h>

#include "pexcite/errors.hpp"
#include "pexcite/excitation.hpp"
#include "support.hpp"

using namespace pexcite;
using pexcite::testing::Gen;
using pexcite::testing::naive_gram;
using pexcite::testing::rel_err;

namespace {

DiscreteSignal sincos_dt(int L) {
  Matrix M(2, L);
  for (int t = 0; t < L; ++t) {
    M(0, t) = std::sin(t);
    M(1, t) = std::cos(t);
  }
  return DiscreteSignal(M);
}

DiscreteSignal ones(int d, int L) {
  return DiscreteSignal(Matrix::Ones(d, L));
}

double abs_cos(const Vector& a, const Vector& b) {
  return std::abs(a.dot(b)) / (a.norm() * b.norm());
}

// a^2 * integral of sin^2(w tau + phi) over [t, t + T].
double sin2_integral(double a, double w, double phi, double t, double T) {
  const auto F = [&](double x) {
    return x / 2 - std::sin(2 * (w * x + phi)) / (4 * w);
  };
  return a * a * (F(t + T) - F(t));
}

}  // namespace

TEST(WindowGramDt, ConstantFiveTerms) {
  const auto g = window_gram_dt(ones(1, 10), 2, 4);
  EXPECT_DOUBLE_EQ(g.gram(0, 0), 5.0);
  EXPECT_DOUBLE_EQ(g.lambda_min(), 5.0);
}

TEST(WindowGramDt, Zero) {
  const auto g = window_gram_dt(DiscreteSignal::zeros(3, 20), 5, 7);
  EXPECT_EQ(g.gram, Matrix::Zero(3, 3));
  EXPECT_EQ(g.lambda_min(), 0.0);
}

TEST(WindowGramDt, SinCosAgainstDirectSum) {
  const auto w = sincos_dt(21);
  const auto g = window_gram_dt(w, 0, 20);
  double s = 0, c = 0, sc = 0;
  for (int t = 0; t <= 20; ++t) {
    s += std::sin(t) * std::sin(t);
    c += std::cos(t) * std::cos(t);
    sc += std::sin(t) * std::cos(t);
  }
  EXPECT_NEAR(g.gram(0, 0), s, 1e-12);
  EXPECT_NEAR(g.gram(1, 1), c, 1e-12);
  EXPECT_NEAR(g.gram(0, 1), sc, 1e-12);
  const double lmin = (s + c) / 2 - std::sqrt((s - c) * (s - c) / 4 + sc * sc);
  EXPECT_GT(g.lambda_min(), 0.0);
  EXPECT_NEAR(g.lambda_min(), lmin, 1e-12);
}

TEST(WindowGramDt, MatchesNaiveOracle) {
  for (std::uint64_t seed = 0; seed < 100; ++seed) {
    Gen g(seed);
    const int d = g.integer(1, 4), L = g.integer(2, 40);
    const auto w = g.noise(d, L);
    const int T = g.integer(0, L - 1);
    const int t = g.integer(0, L - 1 - T);
    EXPECT_LT(rel_err(window_gram_dt(w, t, T).gram, naive_gram(w, t, T)), 1e-12)
        << "seed " << seed;
  }
}

TEST(WindowGramDt, OutOfRange) {
  EXPECT_THROW(window_gram_dt(ones(1, 5), 1, 4), RangeError);
  EXPECT_THROW(window_gram_dt(ones(1, 5), -1, 1), RangeError);
}

TEST(WindowGramCt, ConstantIntegral) {
  const SampledSignal w(Matrix::Ones(1, 401), 0.01);
  EXPECT_NEAR(window_gram_ct(w, 0.0, 3.0).gram(0, 0), 3.0, 1e-9);
}

TEST(WindowGramCt, SineSquaredOverPeriod) {
  const double h = 1e-3;
  const int L = static_cast<int>(2 * std::numbers::pi / h) + 10;
  const auto w = sample(AnalyticSignal::multisine({1.0}), h, L);
  EXPECT_NEAR(window_gram_ct(w, 0.0, 2 * std::numbers::pi).gram(0, 0),
              std::numbers::pi, 1e-4);
}

TEST(WindowGramCt, SingleSinusoidClosedForm) {
  const double h = 1e-3;
  for (std::uint64_t seed = 0; seed < 20; ++seed) {
    Gen g(seed);
    const double a = g.uniform(0.5, 2), om = g.uniform(0.2, 3), ph = g.uniform(0, 6);
    const AnalyticSignal s({Channel{0.0, {Tone{a, om, ph}}}});
    const int N = g.integer(2000, 8000), i0 = g.integer(0, 2000);
    const auto w = sample(s, h, i0 + N + 1);
    const double got = window_gram_ct(w, i0 * h, N * h).gram(0, 0);
    EXPECT_NEAR(got, sin2_integral(a, om, ph, i0 * h, N * h), 1e-4)
        << "seed " << seed;
  }
}

TEST(WindowGramCt, Zero) {
  const SampledSignal w(Matrix::Zero(2, 100), 0.1);
  EXPECT_EQ(window_gram_ct(w, 1.0, 5.0).gram, Matrix::Zero(2, 2));
}

TEST(WindowGramCt, TooShort) {
  const SampledSignal w(Matrix::Ones(1, 100), 0.1);
  EXPECT_THROW(window_gram_ct(w, 0.0, 0.1), RangeError);
}

TEST(PeCheck, ConstantTwoTerm) {
  const auto r = pe_check(ones(1, 50), 1);
  EXPECT_TRUE(r.is_pe);
  EXPECT_DOUBLE_EQ(r.margin, 2.0);
}

TEST(PeCheck, DuplicatedChannelIsDeficient) {
  Gen g(7);
  const Matrix s = g.matrix(1, 60);
  Matrix M(2, 60);
  M << s, s;
  for (int T : {1, 5, 30}) {
    const auto r = pe_check(DiscreteSignal(M), T);
    EXPECT_FALSE(r.is_pe);
    Vector z(2);
    z << 1, -1;
    EXPECT_NEAR(abs_cos(r.deficient_direction, z), 1.0, 1e-9);
    EXPECT_NEAR(r.deficient_direction.norm(), 1.0, 1e-12);
  }
}

TEST(PeCheck, SinCos) {
  PeOptions o;
  o.tol = 1e-6;
  EXPECT_TRUE(pe_check(sincos_dt(1000), 10, o).is_pe);
}

TEST(PeCheck, MarginMatchesOracleAndStride) {
  Gen g(11);
  const auto w = g.noise(3, 300);
  const int T = 17;
  double oracle = INFINITY;
  for (int t = 0; t + T <= 299; ++t) {
    Vector ev = Eigen::SelfAdjointEigenSolver<Matrix>(naive_gram(w, t, T)).eigenvalues();
    oracle = std::min(oracle, ev.minCoeff());
  }
  const auto r = pe_check(w, T);
  EXPECT_NEAR(r.margin, oracle, 1e-10 * std::abs(oracle) + 1e-12);
  EXPECT_EQ(r.window_count, 300 - T);
  EXPECT_EQ(static_cast<int>(r.lambda_trace.size()), r.window_count);
  PeOptions o;
  o.stride = 5;
  const auto rs = pe_check(w, T, o);
  EXPECT_GE(rs.margin, r.margin - 1e-12);
  EXPECT_EQ(rs.window_count, (300 - T + 4) / 5);
}

TEST(PeCheck, DefaultTolScales) {
  EXPECT_DOUBLE_EQ(default_tol(10, 2), 4e-5);
  EXPECT_GT(default_tol(10, 0), 0.0);
}

TEST(PeCheck, RejectsBadArgs) {
  EXPECT_THROW(pe_check(ones(1, 5), 5), RangeError);
  EXPECT_THROW(pe_check(ones(1, 5), 0), RangeError);
  PeOptions o;
  o.tol = -1;
  EXPECT_THROW(pe_check(ones(1, 5), 2, o), DimensionError);
}

TEST(PeCheckCt, SineIsPe) {
  const auto w = sample(AnalyticSignal::multisine({1.0}), 0.01, 3001);
  const auto r = pe_check(w, 10.0);
  EXPECT_TRUE(r.is_pe);
  EXPECT_EQ(r.domain, Domain::kContinuous);
}

TEST(PpeDegree, FullWhenPe) {
  const auto r = ppe_degree(sincos_dt(500), 10);
  ASSERT_TRUE(r.ppe_degree);
  EXPECT_EQ(*r.ppe_degree, 2);
  EXPECT_LT((r.directions * r.directions.transpose() - Matrix::Identity(2, 2))
                .norm(), 1e-10);
}

TEST(PpeDegree, RankOneCarrier) {
  Gen g(5);
  const Vector v = g.unit(3) * 2.5;
  Matrix s(1, 400);
  for (int t = 0; t < 400; ++t) s(0, t) = std::sin(0.7 * t) + 0.3;
  const auto r = ppe_degree(DiscreteSignal(v * s), 20);
  ASSERT_TRUE(r.ppe_degree);
  EXPECT_EQ(*r.ppe_degree, 1);
  EXPECT_NEAR(abs_cos(r.directions.row(0).transpose(), v), 1.0, 1e-10);
}

TEST(PpeDegree, Zero) {
  const auto r = ppe_degree(DiscreteSignal::zeros(2, 50), 5);
  EXPECT_EQ(*r.ppe_degree, 0);
  EXPECT_EQ(r.directions.rows(), 0);
}

TEST(PpeDegreeCt, TwoOfThree) {
  // (sin t, cos t, sin t + cos t) excites a plane.
  std::vector<Channel> ch(3);
  ch[0].tones = {{1, 1, 0}};
  ch[1].tones = {{1, 1, std::numbers::pi / 2}};
  ch[2].tones = {{1, 1, 0}, {1, 1, std::numbers::pi / 2}};
  const auto w = sample(AnalyticSignal(ch), 0.01, 3001);
  const auto r = ppe_degree(w, 10.0, {std::nullopt, 10, false});
  EXPECT_EQ(*r.ppe_degree, 2);
}

TEST(RankTrace, Zero) {
  const auto r = rank_trace(DiscreteSignal::zeros(2, 30));
  for (int k : r.raw) EXPECT_EQ(k, 0);
  EXPECT_EQ(r.terminal(), 0);
}

TEST(RankTrace, StandardBasis) {
  Matrix M = Matrix::Zero(3, 8);
  M.leftCols(3) = Matrix::Identity(3, 3);
  M.col(5) << 1, 2, 3;
  const auto r = rank_trace(DiscreteSignal(M));
  const std::vector<int> want{1, 2, 3, 3, 3, 3, 3, 3};
  EXPECT_EQ(r.raw, want);
  EXPECT_EQ(r.ranks, want);
}

TEST(RankTrace, EnvelopeIsMonotone) {
  for (std::uint64_t seed = 0; seed < 20; ++seed) {
    Gen g(seed);
    const int d = g.integer(1, 5);
    const auto r = rank_trace(g.noise(d, 40));
    for (std::size_t t = 1; t < r.ranks.size(); ++t) {
      EXPECT_LE(r.ranks[t - 1], r.ranks[t]);
      EXPECT_LE(r.raw[t], d);
    }
    EXPECT_EQ(r.terminal(), d);
  }
}

TEST(RankTrace, BadTol) {
  EXPECT_THROW(rank_trace(ones(1, 3), 0.0), DimensionError);
  EXPECT_THROW(rank_trace(ones(1, 3), 1.0), DimensionError);
}

TEST(PerturbationMargin, ConstantFormula) {
  const auto w = ones(1, 40);
  const auto r = pe_check(w, 4);
  ASSERT_DOUBLE_EQ(r.margin, 5.0);
  EXPECT_DOUBLE_EQ(perturbation_margin(r, w), 5.0 / 16.0);
}

TEST(PerturbationMargin, Homogeneous) {
  const auto w = sincos_dt(300);
  const double eps = perturbation_margin(pe_check(w, 10), w);
  for (double lam : {0.1, 3.0, 100.0}) {
    const DiscreteSignal s(lam * w.data());
    EXPECT_NEAR(perturbation_margin(pe_check(s, 10), s), lam * eps,
                1e-9 * lam * eps);
  }
}

TEST(PerturbationMargin, RandomPerturbationsStayPe) {
  const auto w = sincos_dt(400);
  const auto r = pe_check(w, 10);
  const double eps = perturbation_margin(r, w);
  Gen g(13);
  for (int k = 0; k < 100; ++k) {
    Matrix D = g.matrix(2, 400);
    for (int t = 0; t < 400; ++t) {
      D.col(t) *= eps * g.uniform(0, 1) / D.col(t).norm();
    }
    EXPECT_TRUE(pe_check(DiscreteSignal(w.data() + D), 10).is_pe) << k;
  }
}

TEST(PerturbationMargin, RequiresPe) {
  const auto w = DiscreteSignal::zeros(1, 10);
  EXPECT_THROW(perturbation_margin(pe_check(w, 2), w), PreconditionError);
}

TEST(DerivativeDeficiency, DuplicateSine) {
  std::vector<Channel> ch(2);
  ch[0].tones = ch[1].tones = {{1, 1, 0}};
  const auto wit = derivative_deficiency(AnalyticSignal(ch), 10, 0.01, 40);
  Vector z(2);
  z << 1, -1;
  EXPECT_NEAR(abs_cos(wit.z, z), 1.0, 1e-9);
  EXPECT_LE(wit.eps_out, 1e-9);
}

TEST(DerivativeDeficiency, ConstantIsPe) {
  Vector c(1);
  c << 1.5;
  EXPECT_THROW(derivative_deficiency(AnalyticSignal::constant(c), 5, 0.01, 20),
               PreconditionError);
}

TEST(DerivativeDeficiency, PlaneInThreeSpace) {
  std::vector<Channel> ch(3);
  ch[0].tones = {{1, 1, 0}};
  ch[1].tones = {{1, 1, std::numbers::pi / 2}};
  ch[2].tones = {{1, 1, 0}, {1, 1, std::numbers::pi / 2}};
  const auto wit = derivative_deficiency(AnalyticSignal(ch), 10, 0.01, 40);
  Vector z(3);
  z << 1, 1, -1;
  EXPECT_NEAR(abs_cos(wit.z, z), 1.0, 1e-9);
  EXPECT_LE(wit.eps_out, 1e-9);
}
