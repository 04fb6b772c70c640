// Copyright 2026 The enlg Authors.
//
// Licensed under the Apache License, Version 2.0 (the "License");
// you may not use this file except in compliance with the License.
// You may obtain a copy of the License at
//
//     http://www.apache.org/licenses/LICENSE-2.0
//
// Unless required by applicable law or agreed to in writing, software
// distributed under the License is distributed on an "AS IS" BASIS,
// WITHOUT WARRANTIES OR CONDITIONS OF ANY KIND, either express or implied.
// See the License for the specific language governing permissions and
// limitations under the License.

#include "enlg/model.h"

#include <gtest/gtest.h>

#include <cmath>
#include <random>
#include <vector>

#include "enlg/adapt.h"
#include "enlg/construct.h"
#include "enlg/error.h"
#include "enlg/linalg.h"
#include "enlg/random.h"
#include "test_util.h"

namespace enlg {
namespace {

using testing::EigenMatrix;
using testing::PsdSqrt;
using testing::ToEigen;

ComplexMatrix Ket0Projector(std::size_t d) {
  ComplexMatrix p(d, d);
  p(0, 0) = 1.0;
  return p;
}

QcGame ConstantGame(std::size_t n, std::size_t s, std::size_t m, double q) {
  QcGame g;
  g.n = n;
  g.s = s;
  g.m = m;
  g.num_a = 2;
  g.num_b = 2;
  const ComplexMatrix px = Ket0Projector(n), ps = Ket0Projector(s),
                      py = Ket0Projector(m);
  g.rho = Kron({&px, &ps, &py});
  ComplexMatrix effect = ComplexMatrix::Identity(s);
  effect *= q;
  g.win_ops.assign(4, effect);
  return g;
}

bool HasViolation(const ValidationReport& r, const std::string& what) {
  for (const auto& v : r.violations) {
    if (v.what == what) return true;
  }
  return false;
}

TEST(ValidateQcGame, AcceptsClassicalLikeGame) {
  EXPECT_TRUE(ValidateQcGame(ConstantGame(2, 2, 2, 1.0)).ok());
}

TEST(ValidateQcGame, ReportsTrace) {
  QcGame g = ConstantGame(2, 2, 2, 1.0);
  g.rho *= 2.0;
  const auto report = ValidateQcGame(g);
  ASSERT_TRUE(HasViolation(report, "trace")) << report.ToString();
  for (const auto& v : report.violations) {
    if (v.what == "trace") EXPECT_NEAR(v.residual, 1.0, 1e-12);
  }
}

TEST(ValidateQcGame, ReportsEffectBound) {
  QcGame g = ConstantGame(2, 2, 2, 1.0);
  g.win_ops[1](0, 0) = 1.5;
  const auto report = ValidateQcGame(g);
  EXPECT_TRUE(HasViolation(report, "effect-bound")) << report.ToString();
  EXPECT_NE(report.ToString().find("Q[0,1]"), std::string::npos);
}

TEST(ValidateQcGame, ReportsNegativeEigenvalue) {
  QcGame g = ConstantGame(2, 2, 2, 1.0);
  g.rho(1, 1) = -0.2;
  g.rho(0, 0) = 1.2;
  EXPECT_TRUE(HasViolation(ValidateQcGame(g), "psd"));
}

TEST(ValidateExtendedGame, ConstructedGameIsValid) {
  CounterRng rng(1, 0);
  EXPECT_TRUE(
      ValidateExtendedGame(BuildExtendedGame(RandomQcGame(2, 2, 2, 2, 2, rng)))
          .ok());
}

TEST(ValidateExtendedGame, ReportsDistributionAndBounds) {
  ExtendedGame h = BuildChshGame();
  for (auto& p : h.pi) p *= 0.9;
  EXPECT_TRUE(HasViolation(ValidateExtendedGame(h), "pi-sum"));

  ExtendedGame neg = BuildChshGame();
  neg.ref_ops[3](0, 0) = -0.1;
  EXPECT_TRUE(HasViolation(ValidateExtendedGame(neg), "effect-bound"));
}

TEST(QcWinProbability, ConstantReferees) {
  CounterRng rng(2, 0);
  for (int trial = 0; trial < 5; ++trial) {
    const QcGame always = ConstantGame(2, 3, 2, 1.0);
    const QcGame never = ConstantGame(2, 3, 2, 0.0);
    const QcStrategy s = RandomQcStrategy(always, 2, 1, rng);
    EXPECT_NEAR(QcWinProbability(always, s).raw, 1.0, 1e-12);
    EXPECT_NEAR(QcWinProbability(never, s).raw, 0.0, 1e-12);
  }
}

// Runs the protocol outcome by outcome: Alice measures (U, X), then Bob
// measures (Y, V) on the post-measurement state, then the referee measures S.
// Registers of the joint state are ordered (U, X, S, Y, V).
double MonteCarloWinRate(const QcGame& g, const QcStrategy& s, int samples,
                         std::uint64_t seed) {
  const std::size_t du = s.dim_u, dv = s.dim_v;
  const std::size_t n = g.n, sd = g.s, m = g.m;
  const std::size_t dim = du * n * sd * m * dv;
  EigenMatrix tau(dim, dim);
  auto index = [&](std::size_t u, std::size_t x, std::size_t k, std::size_t y,
                   std::size_t v) {
    return (((u * n + x) * sd + k) * m + y) * dv + v;
  };
  for (std::size_t u = 0; u < du; ++u)
    for (std::size_t v = 0; v < dv; ++v)
      for (std::size_t u2 = 0; u2 < du; ++u2)
        for (std::size_t v2 = 0; v2 < dv; ++v2)
          for (std::size_t x = 0; x < n; ++x)
            for (std::size_t k = 0; k < sd; ++k)
              for (std::size_t y = 0; y < m; ++y)
                for (std::size_t x2 = 0; x2 < n; ++x2)
                  for (std::size_t k2 = 0; k2 < sd; ++k2)
                    for (std::size_t y2 = 0; y2 < m; ++y2)
                      tau(index(u, x, k, y, v), index(u2, x2, k2, y2, v2)) =
                          s.sigma(u * dv + v, u2 * dv + v2) *
                          g.rho((x * sd + k) * m + y, (x2 * sd + k2) * m + y2);

  auto kron = [](const EigenMatrix& a, const EigenMatrix& b) {
    EigenMatrix out(a.rows() * b.rows(), a.cols() * b.cols());
    for (Eigen::Index i = 0; i < a.rows(); ++i)
      for (Eigen::Index j = 0; j < a.cols(); ++j)
        out.block(i * b.rows(), j * b.cols(), b.rows(), b.cols()) =
            a(i, j) * b;
    return out;
  };
  const EigenMatrix id_rest_a = EigenMatrix::Identity(sd * m * dv, sd * m * dv);
  const EigenMatrix id_rest_b = EigenMatrix::Identity(du * n * sd, du * n * sd);

  std::vector<double> p_a(g.num_a);
  std::vector<std::vector<double>> p_b(g.num_a, std::vector<double>(g.num_b));
  std::vector<std::vector<double>> p_win(g.num_a,
                                         std::vector<double>(g.num_b));
  for (std::size_t a = 0; a < g.num_a; ++a) {
    const EigenMatrix ka = kron(PsdSqrt(ToEigen(s.alice[a])), id_rest_a);
    const EigenMatrix after_a = ka * tau * ka.adjoint();
    p_a[a] = after_a.trace().real();
    for (std::size_t b = 0; b < g.num_b; ++b) {
      const EigenMatrix kb = kron(id_rest_b, PsdSqrt(ToEigen(s.bob[b])));
      const EigenMatrix after_b = kb * after_a * kb.adjoint();
      const double joint = after_b.trace().real();
      p_b[a][b] = p_a[a] > 0 ? joint / p_a[a] : 0.0;
      const EigenMatrix q = kron(
          kron(EigenMatrix::Identity(du * n, du * n), ToEigen(g.Q(a, b))),
          EigenMatrix::Identity(m * dv, m * dv));
      p_win[a][b] = joint > 0 ? (q * after_b).trace().real() / joint : 0.0;
    }
  }
  std::mt19937_64 engine(seed);
  std::discrete_distribution<std::size_t> pick_a(p_a.begin(), p_a.end());
  std::vector<std::discrete_distribution<std::size_t>> pick_b;
  for (const auto& row : p_b) pick_b.emplace_back(row.begin(), row.end());
  std::uniform_real_distribution<double> coin(0.0, 1.0);
  int wins = 0;
  for (int i = 0; i < samples; ++i) {
    const std::size_t a = pick_a(engine);
    const std::size_t b = pick_b[a](engine);
    if (coin(engine) < p_win[a][b]) ++wins;
  }
  return static_cast<double>(wins) / samples;
}

TEST(QcWinProbability, MatchesBornRuleSampling) {
  CounterRng rng(3, 0);
  const int samples = 100000;
  for (int trial = 0; trial < 3; ++trial) {
    const QcGame g = RandomQcGame(2, 2, 2, 2, 2, rng);
    const QcStrategy s = RandomQcStrategy(g, 2, 1, rng);
    const double exact = QcWinProbability(g, s).raw;
    const double rate = MonteCarloWinRate(g, s, samples, 100 + trial);
    const double sigma = std::sqrt(exact * (1.0 - exact) / samples);
    EXPECT_LE(std::abs(rate - exact), 3.0 * sigma)
        << "exact " << exact << " sampled " << rate;
  }
}

TEST(ExtendedWinProbability, AlwaysAcceptingReferee) {
  ExtendedGame h = BuildChshGame();
  for (auto& p : h.ref_ops) p = ComplexMatrix::Identity(1);
  CounterRng rng(4, 0);
  const auto s = RandomExtendedStrategy(h, 2, 2, rng);
  EXPECT_NEAR(ExtendedWinProbability(h, s).raw, 1.0, 1e-12);
}

TEST(ExtendedWinProbability, ProductStateDirectSum) {
  CounterRng rng(5, 0);
  const QcGame g = RandomQcGame(2, 2, 2, 2, 2, rng);
  const ExtendedGame h = BuildExtendedGame(g);
  const auto su = RandomDensity(2, rng), sr = RandomDensity(h.ref_dim, rng),
             sv = RandomDensity(3, rng);
  ExtendedStrategy s = RandomExtendedStrategy(h, 2, 3, rng);
  s.sigma = Kron({&su, &sr, &sv});
  // For a product state the value factorizes into single-register traces.
  double oracle = 0.0;
  for (std::size_t x = 0; x < h.num_x; ++x)
    for (std::size_t y = 0; y < h.num_y; ++y)
      for (std::size_t a = 0; a < 2; ++a)
        for (std::size_t b = 0; b < 2; ++b)
          oracle += h.Pi(x, y) * (Trace(s.alice[x][a] * su) *
                                  Trace(h.P(a, b, x, y) * sr) *
                                  Trace(s.bob[y][b] * sv))
                                     .real();
  EXPECT_NEAR(ExtendedWinProbability(h, s).raw, oracle, 1e-12);
}

TEST(ExtendedWinProbability, RejectingQcGameGivesOneMinusInverseNm) {
  for (std::size_t n : {2u, 3u}) {
    const QcGame g = ConstantGame(n, 2, 2, 0.0);
    CounterRng rng(6, n);
    const QcStrategy s = RandomQcStrategy(g, 1, 2, rng);
    const auto adapted = AdaptQcToExtended(g, s);
    const double p =
        ExtendedWinProbability(BuildExtendedGame(g), adapted.strategy).raw;
    EXPECT_NEAR(p, 1.0 - 1.0 / (2.0 * n), 1e-12);
  }
}

TEST(ExtendedWinProbability, LinearInState) {
  CounterRng rng(7, 0);
  const ExtendedGame h = BuildExtendedGame(RandomQcGame(2, 2, 2, 2, 2, rng));
  ExtendedStrategy s1 = RandomExtendedStrategy(h, 2, 1, rng);
  ExtendedStrategy s2 = s1;
  s2.sigma = RandomDensity(s1.sigma.rows(), rng);
  ExtendedStrategy mix = s1;
  const double t = 0.3;
  mix.sigma = Complex(t) * s1.sigma + Complex(1.0 - t) * s2.sigma;
  EXPECT_NEAR(ExtendedWinProbability(h, mix).raw,
              t * ExtendedWinProbability(h, s1).raw +
                  (1 - t) * ExtendedWinProbability(h, s2).raw,
              1e-12);
}

TEST(ExtendedWinProbability, ConstructedGameLossCap) {
  CounterRng rng(8, 0);
  for (int trial = 0; trial < 20; ++trial) {
    const std::size_t n = 2 + trial % 2, m = 2 + (trial / 2) % 2;
    const QcGame g = RandomQcGame(n, 2, m, 2, 2, rng);
    const ExtendedGame h = BuildExtendedGame(g);
    const auto s = RandomExtendedStrategy(h, 1 + trial % 2, 1, rng);
    const Probability p = ExtendedWinProbability(h, s);
    EXPECT_LE(1.0 - p.raw, 1.0 / static_cast<double>(n * m) + 1e-9);
    EXPECT_GE(p.raw, -1e-9);
    EXPECT_LE(p.raw, 1.0 + 1e-9);
  }
}

TEST(WinProbability, DimensionMismatch) {
  CounterRng rng(9, 0);
  const QcGame g = RandomQcGame(2, 2, 2, 2, 2, rng);
  const QcGame other = RandomQcGame(3, 2, 2, 2, 2, rng);
  const QcStrategy s = RandomQcStrategy(other, 1, 1, rng);
  try {
    QcWinProbability(g, s);
    FAIL();
  } catch (const Error& e) {
    EXPECT_EQ(e.code(), ErrorCode::kDimensionMismatch);
  }
  const ExtendedGame h = BuildChshGame();
  ExtendedStrategy t = RandomExtendedStrategy(h, 2, 2, rng);
  t.bob.pop_back();
  try {
    ExtendedWinProbability(h, t);
    FAIL();
  } catch (const Error& e) {
    EXPECT_EQ(e.code(), ErrorCode::kDimensionMismatch);
  }
}

TEST(ValidateStrategies, PovmCompleteness) {
  CounterRng rng(10, 0);
  const QcGame g = RandomQcGame(2, 2, 2, 2, 2, rng);
  QcStrategy s = RandomQcStrategy(g, 2, 2, rng);
  EXPECT_TRUE(ValidateQcStrategy(g, s).ok());
  s.alice[0] *= 0.5;
  EXPECT_TRUE(HasViolation(ValidateQcStrategy(g, s), "povm-completeness"));
}

}  // namespace
}  // namespace enlg
