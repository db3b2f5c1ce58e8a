// Copyright 2026 The ogne Authors
//
// Licensed under the Apache License, Version 2.0 (the "License");
// you may not use this file except in compliance with the License.
// You may obtain a copy of the License at
//
//      http://www.apache.org/licenses/LICENSE-2.0
//
// Unless required by applicable law or agreed to in writing, software
// distributed under the License is distributed on an "AS IS" BASIS,
// WITHOUT WARRANTIES OR CONDITIONS OF ANY KIND, either express or implied.
// See the License for the specific language governing permissions and
// limitations under the License.

#include "ogne/metrics.h"

#include <algorithm>
#include <cmath>
#include <vector>

#include <gtest/gtest.h>

#include "ogne/benchmarks.h"

namespace ogne {
namespace {

Vector V(std::initializer_list<double> xs) {
  Vector v(static_cast<Eigen::Index>(xs.size()));
  int k = 0;
  for (double x : xs) v[k++] = x;
  return v;
}

// J_i = (x_i - 1)^2 for two scalar players on [0, 5], g_i = x_i - 5.
std::shared_ptr<const GameSpec> ShiftedSquares() {
  GameDefinition def;
  def.name = "shifted";
  def.n = 2;
  def.m = 1;
  def.r = 1;
  for (int i = 0; i < 2; ++i) {
    def.costs.push_back({[i](int, const Vector& x) { return std::pow(x[i] - 1.0, 2); },
                         [i](int, int, const Vector& x) { return V({2 * (x[i] - 1.0)}); }});
    def.constraints.push_back({[](const Vector& xi) { return V({xi[0] - 5.0}); },
                               [](const Vector&) { return Matrix::Ones(1, 1); }});
    def.private_sets.push_back(BoxSet::Uniform(1, 0, 5));
  }
  def.feasible_point = V({1, 1});
  return std::make_shared<const GameSpec>(def);
}

VgneSolution Converged(Vector x, Vector y) {
  return {std::move(x), std::move(y), 0.0, 1, VgneStatus::kConverged};
}

TEST(RegretIncrementTest, ZeroAtEquilibrium) {
  const auto game = ShiftedSquares();
  EXPECT_DOUBLE_EQ(*regret_increment(*game, 1, 0, V({1}), Converged(V({1, 1}), V({0}))), 0.0);
}

TEST(RegretIncrementTest, ScalarQuadratic) {
  const auto game = ShiftedSquares();
  EXPECT_DOUBLE_EQ(*regret_increment(*game, 1, 0, V({2}), Converged(V({1, 1}), V({0}))), 1.0);
}

TEST(RegretIncrementTest, SwapsOnlyOwnAction) {
  // Cournot: J_1 depends on x_{-1}; the increment uses x*_{-1}.
  const GameSpec game = cournot_game();
  const Vector xs = V({1, 5, 10, 15, 20});
  Vector swapped = xs;
  swapped[0] = 4.0;
  const double expected = game.Cost(0, 3, swapped) - game.Cost(0, 3, xs);
  EXPECT_DOUBLE_EQ(*regret_increment(game, 3, 0, V({4}), Converged(xs, V({0}))), expected);
}

TEST(RegretIncrementTest, UnavailableWhenUnconverged) {
  const auto game = ShiftedSquares();
  VgneSolution s = Converged(V({1, 1}), V({0}));
  s.status = VgneStatus::kMaxIter;
  EXPECT_FALSE(regret_increment(*game, 1, 0, V({2}), s).has_value());
}

TEST(ViolationTest, FeasibleRoundsGiveZero) {
  const std::vector<Vector> sums{V({-1}), V({-0.5}), V({0})};
  EXPECT_EQ(violation(sums), 0.0);
}

TEST(ViolationTest, CancellationAcrossRounds) {
  const std::vector<Vector> sums{V({1}), V({-3})};
  EXPECT_EQ(violation(sums), 0.0);
}

TEST(ViolationTest, ClampAppliedOnceThenNorm) {
  const std::vector<Vector> sums{V({3, -1}), V({1, 0.5})};
  EXPECT_DOUBLE_EQ(violation(sums), 4.0);
}

TEST(ViolationTest, FromActionTrace) {
  const GameSpec game = cournot_game();
  const std::vector<Vector> actions{V({30, 30, 30, 30, 30}), V({0, 0, 0, 0, 0})};
  // sums: 150 - 56 = 94, then -56 -> [38]_+.
  EXPECT_DOUBLE_EQ(violation(game, actions), 38.0);
}

TEST(DeviationTest, StaticTraceIsZero) {
  VgneTrace trace;
  for (int t = 0; t < 10; ++t) trace.rounds.push_back(Converged(V({1, 2}), V({0})));
  finalize_trace(trace);
  EXPECT_EQ(deviation(trace), 0.0);
}

TEST(DeviationTest, AlternatingPoints) {
  VgneTrace trace;
  const Vector p = V({0, 0}), q = V({3, 4});
  const int T = 9;
  for (int t = 0; t < T; ++t) trace.rounds.push_back(Converged(t % 2 ? q : p, V({0})));
  finalize_trace(trace);
  EXPECT_DOUBLE_EQ(deviation(trace), (T - 1) * 5.0);
  EXPECT_EQ(trace.displacement[0], 0.0);
}

EngineState SectionIv() {
  const std::vector<Edge> ring{{0, 1}, {1, 2}, {2, 3}, {3, 4}, {4, 0}};
  return init_state(std::make_shared<const GameSpec>(cournot_game()),
                    std::make_shared<const CommGraph>(CommGraph::Metropolis(ring, 5)),
                    LearningRate::PaperCuberoot(6, 0.1),
                    InitialCondition::SectionIV(V({0, 30, 10, 10, 30})));
}

TEST(ConsensusErrorsTest, PerfectEstimatesAndEqualMultipliers) {
  EngineState s = SectionIv();
  for (PlayerState& p : s.players) p.estimates.row(0) = s.Actions().transpose();
  const ConsensusErrors e = consensus_errors(s);
  EXPECT_EQ(e.max_estimate(), 0.0);
  EXPECT_EQ(e.max_multiplier(), 0.0);
}

TEST(ConsensusErrorsTest, RoundTwoHandSimulation) {
  const EngineState s1 = SectionIv();
  const EngineState s2 = step(s1);
  // Hand-rolled round-1 update on the ring with weights 1/3 everywhere.
  const double x[5] = {0, 30, 10, 10, 30};
  const double w = 1.0 / 3;
  auto neighbours = [](int i, int k) { return k == i || (k - i + 5) % 5 == 1 || (i - k + 5) % 5 == 1; };
  const double gamma = std::cbrt(6.0 / 6.1);
  double xn[5], est[5][5];
  for (int i = 0; i < 5; ++i) {
    // Gradient at the own estimate vector (others = 10).
    double sum = 0;
    for (int h = 0; h < 5; ++h) sum += h == i ? x[i] : 10.0;
    const double beta = 45 + 5 * (i + 1) - 0.5 * (i + 1) * std::sin(1.0 / 12);
    const double grad = std::sin(1.0 / 12) - beta + sum + x[i];
    const double z = x[i] - gamma * (grad + gamma * 1.0);
    xn[i] = (1 - gamma) * x[i] + gamma * std::clamp(z, 0.0, 30.0);
    for (int h = 0; h < 5; ++h) {
      if (h == i) continue;
      double v = 0;
      for (int k = 0; k < 5; ++k) {
        if (k == h || !neighbours(i, k)) continue;
        v += w * (k == i ? 10.0 : 10.0);  // every x_kh(1) with k != h is 10
      }
      if (neighbours(i, h)) v += w * x[h];
      est[i][h] = v;
    }
  }
  double yn[5];
  const double l[5] = {10, 15, 8, 8, 15};
  for (int i = 0; i < 5; ++i) yn[i] = std::max(0.0, (1 - gamma * gamma) + gamma * (x[i] - l[i]));
  const double ybar = (yn[0] + yn[1] + yn[2] + yn[3] + yn[4]) / 5;

  const ConsensusErrors e = consensus_errors(s2);
  for (int i = 0; i < 5; ++i) {
    EXPECT_NEAR(s2.Actions()[i], xn[i], 1e-12);
    double e2 = 0;
    for (int h = 0; h < 5; ++h)
      if (h != i) e2 += std::pow(est[h][i] - xn[i], 2);  // x_hi - x_i
    EXPECT_NEAR(e.estimate[i], std::sqrt(e2), 1e-12);
    EXPECT_NEAR(e.multiplier[i], std::abs(yn[i] - ybar), 1e-12);
  }
}

TEST(LemmaConstantsTest, ZeroKappaOneGivesZeroRho) {
  const LemmaConstants c = lemma_constants(5, {1, 0, 1, 1, false}, 0.5, 0.5, 1, 1, 0);
  EXPECT_EQ(c.rho, 0.0);
}

TEST(LemmaConstantsTest, SinglePlayerPlugIn) {
  const LemmaConstants c = lemma_constants(1, {1, 1, 1, 1, false}, 0, 0, 1, 1, 1);
  EXPECT_DOUBLE_EQ(c.tau, 16.0);
  EXPECT_DOUBLE_EQ(c.rho, 0.0);
  EXPECT_DOUBLE_EQ(c.varrho, 16.0);
  // pi1 = 8 + 1 * 2 * 1 + 2 * 1 + 1 = 13, pi2 = 0.
  EXPECT_DOUBLE_EQ(c.pi1, 13.0);
  EXPECT_DOUBLE_EQ(c.pi2, 0.0);
}

TEST(LemmaConstantsTest, CournotConstantsFinitePositive) {
  const GameSpec game = cournot_game();
  const LemmaConstants c =
      lemma_constants(5, *game.kappa(), 0.8726779962499649, 0.5393446629166316, 1, 1, 0.5);
  for (double v : {c.rho, c.varrho, c.pi1, c.pi2, c.tau}) {
    EXPECT_TRUE(std::isfinite(v));
    EXPECT_GT(v, 0.0);
  }
  EXPECT_DOUBLE_EQ(c.rho, 8 * 4 * 900 / (1 - 0.8726779962499649));
}

TEST(LemmaConstantsTest, RejectsOutOfRangeSpectra) {
  EXPECT_THROW(lemma_constants(3, {}, 1.0, 0.5, 1, 1, 0), std::invalid_argument);
  EXPECT_THROW(lemma_constants(3, {}, 0.5, 1.2, 1, 1, 0), std::invalid_argument);
}

TEST(SublinearitySlopeTest, LinearSeries) {
  std::vector<double> s(10000);
  for (int t = 1; t <= 10000; ++t) s[t - 1] = t;
  EXPECT_NEAR(sublinearity_slope(s), 1.0, 0.01);
}

TEST(SublinearitySlopeTest, SquareRootSeries) {
  std::vector<double> s(10000);
  for (int t = 1; t <= 10000; ++t) s[t - 1] = std::sqrt(t);
  EXPECT_NEAR(sublinearity_slope(s), 0.5, 0.02);
}

TEST(SublinearitySlopeTest, DegenerateAndInvalidInput) {
  EXPECT_EQ(sublinearity_slope(std::vector<double>(20, 0.0)), 0.0);
  EXPECT_THROW(sublinearity_slope(std::vector<double>(10, 1.0)), std::invalid_argument);
  std::vector<double> neg(20, 1.0);
  neg[3] = -1;
  EXPECT_THROW(sublinearity_slope(neg), std::invalid_argument);
}

}  // namespace
}  // namespace ogne
