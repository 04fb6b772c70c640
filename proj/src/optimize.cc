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

#include "enlg/optimize.h"

#include <algorithm>
#include <chrono>
#include <cmath>
#include <limits>
#include <string>

#include "enlg/construct.h"
#include "enlg/error.h"
#include "enlg/linalg.h"
#include "enlg/random.h"

namespace enlg {

namespace {

constexpr double kMonotoneSlack = 1e-10;
constexpr double kCertifySlack = 1e-9;
constexpr double kRelationSlack = 1e-8;

// Tr_2[(1 (x) K) X] for X on (keep, K-space).
ComplexMatrix ContractLeft(const ComplexMatrix& k, const ComplexMatrix& x,
                           std::size_t keep) {
  const std::size_t dk = k.rows();
  ComplexMatrix out(keep, keep);
  for (std::size_t p = 0; p < keep; ++p) {
    for (std::size_t q = 0; q < keep; ++q) {
      Complex s = 0.0;
      for (std::size_t r = 0; r < dk; ++r) {
        for (std::size_t rp = 0; rp < dk; ++rp) {
          s += k(r, rp) * x(p * dk + rp, q * dk + r);
        }
      }
      out(p, q) = s;
    }
  }
  return Hermitianize(out);
}

// Tr_1[(K (x) 1) X] for X on (K-space, keep).
ComplexMatrix ContractRight(const ComplexMatrix& k, const ComplexMatrix& x,
                            std::size_t keep) {
  const std::size_t dk = k.rows();
  ComplexMatrix out(keep, keep);
  for (std::size_t p = 0; p < keep; ++p) {
    for (std::size_t q = 0; q < keep; ++q) {
      Complex s = 0.0;
      for (std::size_t r = 0; r < dk; ++r) {
        for (std::size_t rp = 0; rp < dk; ++rp) {
          s += k(r, rp) * x(rp * keep + p, r * keep + q);
        }
      }
      out(p, q) = s;
    }
  }
  return Hermitianize(out);
}

StateUpdate TopEigenstate(const ComplexMatrix& payoff) {
  const EigenDecomposition eig = HermitianEig(Hermitianize(payoff));
  const std::size_t n = payoff.rows();
  ComplexMatrix v(n, 1);
  for (std::size_t i = 0; i < n; ++i) v(i, 0) = eig.vectors(i, 0);
  return {Projector(v), eig.values[0]};
}

std::vector<ComplexMatrix> AsVector(BinaryPovm povm) {
  return {std::move(povm.e0), std::move(povm.e1)};
}

std::vector<ComplexMatrix> InitialBinaryPovm(std::size_t d, CounterRng& rng) {
  const std::size_t rank = d == 1 ? rng.UniformIndex(2)
                                  : 1 + rng.UniformIndex(d - 1);
  return RandomBinaryProjective(d, rank, rng);
}

std::uint64_t StreamId(const SeeSawConfig& config, int restart) {
  return (static_cast<std::uint64_t>(config.dim_u) * 1000003ULL +
          static_cast<std::uint64_t>(config.dim_v)) *
             1000003ULL +
         static_cast<std::uint64_t>(restart);
}

void RequireBinary(std::size_t num_a, std::size_t num_b) {
  if (num_a != 2 || num_b != 2) {
    throw Error(ErrorCode::kUnsupportedAnswerAlphabet,
                "see-saw needs |A| = |B| = 2, got " + std::to_string(num_a) +
                    " and " + std::to_string(num_b));
  }
}

// Maps flat indices of `from` into `to`, digit by digit (to[i] >= from[i]).
std::vector<std::size_t> EmbeddingMap(const std::vector<std::size_t>& from,
                                      const std::vector<std::size_t>& to) {
  std::size_t total = 1;
  for (auto d : from) total *= d;
  std::vector<std::size_t> map(total);
  for (std::size_t flat = 0; flat < total; ++flat) {
    std::size_t rest = flat;
    std::size_t target = 0;
    std::size_t stride = 1;
    for (std::size_t k = from.size(); k-- > 0;) {
      target += (rest % from[k]) * stride;
      rest /= from[k];
      stride *= to[k];
    }
    map[flat] = target;
  }
  return map;
}

ComplexMatrix Embed(const ComplexMatrix& m, const std::vector<std::size_t>& from,
                    const std::vector<std::size_t>& to) {
  const auto map = EmbeddingMap(from, to);
  std::size_t total = 1;
  for (auto d : to) total *= d;
  ComplexMatrix out(total, total);
  for (std::size_t i = 0; i < map.size(); ++i) {
    for (std::size_t j = 0; j < map.size(); ++j) out(map[i], map[j]) = m(i, j);
  }
  return out;
}

// Projector onto basis states whose digits are not all inside `from`.
ComplexMatrix ComplementProjector(const std::vector<std::size_t>& from,
                                  const std::vector<std::size_t>& to) {
  std::size_t total = 1;
  for (auto d : to) total *= d;
  ComplexMatrix out = ComplexMatrix::Identity(total);
  for (auto idx : EmbeddingMap(from, to)) out(idx, idx) = 0.0;
  return out;
}

void RequireGrow(std::size_t from, std::size_t to) {
  if (to < from) {
    throw Error(ErrorCode::kInvalidDimension,
                "cannot pad dimension " + std::to_string(from) + " down to " +
                    std::to_string(to));
  }
}

using Clock = std::chrono::steady_clock;

template <typename Report>
void Finish(Report& report, const SeeSawConfig& config,
            Clock::time_point start) {
  report.wall_time_seconds =
      std::chrono::duration<double>(Clock::now() - start).count();
  report.seed = config.seed;
  report.dim_u = config.dim_u;
  report.dim_v = config.dim_v;
}

}  // namespace

void ValidateConfig(const SeeSawConfig& config) {
  if (config.dim_u == 0 || config.dim_v == 0) {
    throw Error(ErrorCode::kInvalidConfig, "ancilla dimensions must be >= 1");
  }
  if (config.restarts < 1) {
    throw Error(ErrorCode::kInvalidConfig, "restarts must be >= 1");
  }
  if (config.max_rounds < 1) {
    throw Error(ErrorCode::kInvalidConfig, "max_rounds must be >= 1");
  }
  if (!(config.improve_tol > 0.0)) {
    throw Error(ErrorCode::kInvalidConfig, "improve_tol must be > 0");
  }
}

BinaryPovm HelstromMeasurement(const ComplexMatrix& r_diff) {
  const EigenDecomposition eig = HermitianEig(r_diff);
  const std::size_t n = r_diff.rows();
  double scale = 1.0;
  for (double v : eig.values) scale = std::max(scale, std::abs(v));
  // Eigenvalues within rounding of zero count as zero and go to outcome 0.
  const double zero = 1e-14 * scale;
  ComplexMatrix e0(n, n);
  for (std::size_t k = 0; k < n; ++k) {
    if (eig.values[k] < -zero) continue;
    for (std::size_t i = 0; i < n; ++i) {
      const Complex vik = eig.vectors(i, k);
      for (std::size_t j = 0; j < n; ++j) {
        e0(i, j) += vik * std::conj(eig.vectors(j, k));
      }
    }
  }
  e0 = Hermitianize(e0);
  ComplexMatrix e1 = Hermitianize(ComplexMatrix::Identity(n) - e0);
  return {std::move(e0), std::move(e1)};
}

StateUpdate OptimalExtendedState(
    const ExtendedGame& game,
    const std::vector<std::vector<ComplexMatrix>>& alice,
    const std::vector<std::vector<ComplexMatrix>>& bob) {
  if (alice.size() != game.num_x || bob.size() != game.num_y ||
      alice.empty() || bob.empty() || alice[0].size() != game.num_a ||
      bob[0].size() != game.num_b) {
    throw Error(ErrorCode::kDimensionMismatch,
                "measurement families do not match the game's question and "
                "answer sets");
  }
  const std::size_t du = alice[0][0].rows();
  const std::size_t dv = bob[0][0].rows();
  const std::size_t rest = game.ref_dim * dv;
  ComplexMatrix payoff(du * rest, du * rest);
  for (std::size_t x = 0; x < game.num_x; ++x) {
    for (std::size_t a = 0; a < game.num_a; ++a) {
      ComplexMatrix k(rest, rest);
      for (std::size_t y = 0; y < game.num_y; ++y) {
        const double w = game.Pi(x, y);
        if (w == 0.0) continue;
        for (std::size_t b = 0; b < game.num_b; ++b) {
          k += w * Kron(game.P(a, b, x, y), bob[y][b]);
        }
      }
      payoff += Kron(alice[x][a], k);
    }
  }
  return TopEigenstate(payoff);
}

StateUpdate OptimalQcState(const QcGame& game,
                           const std::vector<ComplexMatrix>& alice,
                           const std::vector<ComplexMatrix>& bob,
                           std::size_t dim_u, std::size_t dim_v) {
  if (alice.size() != game.num_a || bob.size() != game.num_b) {
    throw Error(ErrorCode::kDimensionMismatch,
                "measurement families do not match the answer sets");
  }
  const std::size_t dim = dim_u * game.n * game.s * game.m * dim_v;
  ComplexMatrix payoff(dim, dim);
  for (std::size_t a = 0; a < game.num_a; ++a) {
    for (std::size_t b = 0; b < game.num_b; ++b) {
      payoff += Kron({&alice[a], &game.Q(a, b), &bob[b]});
    }
  }
  // (U, X, S, Y, V) -> (U, V, X, S, Y), then contract (X, S, Y) against rho.
  static constexpr std::size_t kPerm[] = {0, 4, 1, 2, 3};
  const RegisterShape shape{{dim_u, game.n, game.s, game.m, dim_v}};
  const ComplexMatrix reordered = PermuteRegisters(payoff, shape, kPerm);
  return TopEigenstate(ContractLeft(game.rho, reordered, dim_u * dim_v));
}

ExtendedSeeSawReport SeeSawExtended(const ExtendedGame& game,
                                    const SeeSawConfig& config,
                                    const ExtendedStrategy* warm_start) {
  const auto start = Clock::now();
  ValidateConfig(config);
  RequireBinary(game.num_a, game.num_b);
  RequireValid(ValidateExtendedGame(game), "extended game");
  const std::size_t du = config.dim_u;
  const std::size_t dv = config.dim_v;
  const std::size_t dr = game.ref_dim;

  ExtendedSeeSawReport report;
  report.best_value = -std::numeric_limits<double>::infinity();
  for (int restart = 0; restart < config.restarts; ++restart) {
    CounterRng rng(config.seed, StreamId(config, restart));
    ExtendedStrategy s;
    s.dim_u = du;
    s.dim_r = dr;
    s.dim_v = dv;
    if (restart == 0 && warm_start != nullptr) {
      s = PadStrategy(*warm_start, du, dv);
    } else {
      for (std::size_t x = 0; x < game.num_x; ++x) {
        s.alice.push_back(InitialBinaryPovm(du, rng));
      }
      for (std::size_t y = 0; y < game.num_y; ++y) {
        s.bob.push_back(InitialBinaryPovm(dv, rng));
      }
      s.sigma = OptimalExtendedState(game, s.alice, s.bob).sigma;
    }
    double value = ExtendedWinProbability(game, s).raw;
    int rounds = 0;
    while (rounds < config.max_rounds) {
      ++rounds;
      // Alice, one question at a time.
      for (std::size_t x = 0; x < game.num_x; ++x) {
        ComplexMatrix m[2];
        for (std::size_t a = 0; a < 2; ++a) {
          ComplexMatrix k(dr * dv, dr * dv);
          for (std::size_t y = 0; y < game.num_y; ++y) {
            const double w = game.Pi(x, y);
            if (w == 0.0) continue;
            for (std::size_t b = 0; b < 2; ++b) {
              k += w * Kron(game.P(a, b, x, y), s.bob[y][b]);
            }
          }
          m[a] = ContractLeft(k, s.sigma, du);
        }
        s.alice[x] = AsVector(HelstromMeasurement(m[0] - m[1]));
      }
      // Bob.
      for (std::size_t y = 0; y < game.num_y; ++y) {
        ComplexMatrix m[2];
        for (std::size_t b = 0; b < 2; ++b) {
          ComplexMatrix k(du * dr, du * dr);
          for (std::size_t x = 0; x < game.num_x; ++x) {
            const double w = game.Pi(x, y);
            if (w == 0.0) continue;
            for (std::size_t a = 0; a < 2; ++a) {
              k += w * Kron(s.alice[x][a], game.P(a, b, x, y));
            }
          }
          m[b] = ContractRight(k, s.sigma, dv);
        }
        s.bob[y] = AsVector(HelstromMeasurement(m[0] - m[1]));
      }
      s.sigma = OptimalExtendedState(game, s.alice, s.bob).sigma;

      const double next = ExtendedWinProbability(game, s).raw;
      if (next < value - kMonotoneSlack) report.monotone_ok = false;
      const double gain = next - value;
      value = next;
      if (gain < config.improve_tol) break;
    }
    report.per_restart_values.push_back(value);
    report.rounds_used.push_back(rounds);
    if (value > report.best_value) {
      report.best_value = value;
      report.best_strategy = std::move(s);
    }
  }
  const double check =
      ExtendedWinProbability(game, report.best_strategy).raw;
  if (std::abs(check - report.best_value) > kCertifySlack) {
    throw Error(ErrorCode::kValidationFailed,
                "see-saw value does not re-evaluate consistently");
  }
  report.best_value = check;
  Finish(report, config, start);
  return report;
}

QcSeeSawReport SeeSawQc(const QcGame& game, const SeeSawConfig& config,
                        const QcStrategy* warm_start) {
  const auto start = Clock::now();
  ValidateConfig(config);
  RequireBinary(game.num_a, game.num_b);
  RequireValid(ValidateQcGame(game), "QC game");
  const std::size_t du = config.dim_u;
  const std::size_t dv = config.dim_v;
  const std::size_t alice_dim = du * game.n;
  const std::size_t bob_dim = game.m * dv;
  static constexpr std::size_t kPerm[] = {0, 2, 3, 4, 1};
  const RegisterShape shape{{du, dv, game.n, game.s, game.m}};

  QcSeeSawReport report;
  report.best_value = -std::numeric_limits<double>::infinity();
  for (int restart = 0; restart < config.restarts; ++restart) {
    CounterRng rng(config.seed, StreamId(config, restart));
    QcStrategy s;
    s.dim_u = du;
    s.dim_v = dv;
    if (restart == 0 && warm_start != nullptr) {
      s = PadStrategy(*warm_start, du, dv);
    } else {
      s.alice = InitialBinaryPovm(alice_dim, rng);
      s.bob = InitialBinaryPovm(bob_dim, rng);
      s.sigma = OptimalQcState(game, s.alice, s.bob, du, dv).sigma;
    }
    double value = QcWinProbability(game, s).raw;
    int rounds = 0;
    while (rounds < config.max_rounds) {
      ++rounds;
      ComplexMatrix joint =
          PermuteRegisters(Kron(s.sigma, game.rho), shape, kPerm);
      {
        ComplexMatrix m[2];
        for (std::size_t a = 0; a < 2; ++a) {
          ComplexMatrix k(game.s * bob_dim, game.s * bob_dim);
          for (std::size_t b = 0; b < 2; ++b) {
            k += Kron(game.Q(a, b), s.bob[b]);
          }
          m[a] = ContractLeft(k, joint, alice_dim);
        }
        s.alice = AsVector(HelstromMeasurement(m[0] - m[1]));
      }
      {
        ComplexMatrix m[2];
        for (std::size_t b = 0; b < 2; ++b) {
          ComplexMatrix k(alice_dim * game.s, alice_dim * game.s);
          for (std::size_t a = 0; a < 2; ++a) {
            k += Kron(s.alice[a], game.Q(a, b));
          }
          m[b] = ContractRight(k, joint, bob_dim);
        }
        s.bob = AsVector(HelstromMeasurement(m[0] - m[1]));
      }
      s.sigma = OptimalQcState(game, s.alice, s.bob, du, dv).sigma;

      const double next = QcWinProbability(game, s).raw;
      if (next < value - kMonotoneSlack) report.monotone_ok = false;
      const double gain = next - value;
      value = next;
      if (gain < config.improve_tol) break;
    }
    report.per_restart_values.push_back(value);
    report.rounds_used.push_back(rounds);
    if (value > report.best_value) {
      report.best_value = value;
      report.best_strategy = std::move(s);
    }
  }
  const double check = QcWinProbability(game, report.best_strategy).raw;
  if (std::abs(check - report.best_value) > kCertifySlack) {
    throw Error(ErrorCode::kValidationFailed,
                "see-saw value does not re-evaluate consistently");
  }
  report.best_value = check;
  Finish(report, config, start);
  return report;
}

ExtendedStrategy PadStrategy(const ExtendedStrategy& strategy,
                             std::size_t dim_u, std::size_t dim_v) {
  RequireGrow(strategy.dim_u, dim_u);
  RequireGrow(strategy.dim_v, dim_v);
  ExtendedStrategy out;
  out.dim_u = dim_u;
  out.dim_r = strategy.dim_r;
  out.dim_v = dim_v;
  out.sigma = Embed(strategy.sigma,
                    {strategy.dim_u, strategy.dim_r, strategy.dim_v},
                    {dim_u, strategy.dim_r, dim_v});
  const ComplexMatrix extra_u =
      ComplementProjector({strategy.dim_u}, {dim_u});
  const ComplexMatrix extra_v =
      ComplementProjector({strategy.dim_v}, {dim_v});
  for (const auto& povm : strategy.alice) {
    std::vector<ComplexMatrix> padded;
    for (const auto& e : povm) padded.push_back(Embed(e, {strategy.dim_u}, {dim_u}));
    padded[0] += extra_u;
    out.alice.push_back(std::move(padded));
  }
  for (const auto& povm : strategy.bob) {
    std::vector<ComplexMatrix> padded;
    for (const auto& e : povm) padded.push_back(Embed(e, {strategy.dim_v}, {dim_v}));
    padded[0] += extra_v;
    out.bob.push_back(std::move(padded));
  }
  return out;
}

QcStrategy PadStrategy(const QcStrategy& strategy, std::size_t dim_u,
                       std::size_t dim_v) {
  RequireGrow(strategy.dim_u, dim_u);
  RequireGrow(strategy.dim_v, dim_v);
  if (strategy.alice.empty() || strategy.bob.empty()) {
    throw Error(ErrorCode::kDimensionMismatch, "strategy has no POVM");
  }
  const std::size_t n = strategy.alice[0].rows() / strategy.dim_u;
  const std::size_t m = strategy.bob[0].rows() / strategy.dim_v;
  QcStrategy out;
  out.dim_u = dim_u;
  out.dim_v = dim_v;
  out.sigma = Embed(strategy.sigma, {strategy.dim_u, strategy.dim_v},
                    {dim_u, dim_v});
  const ComplexMatrix extra_u =
      ComplementProjector({strategy.dim_u, n}, {dim_u, n});
  const ComplexMatrix extra_v =
      ComplementProjector({m, strategy.dim_v}, {m, dim_v});
  for (const auto& e : strategy.alice) {
    out.alice.push_back(Embed(e, {strategy.dim_u, n}, {dim_u, n}));
  }
  out.alice[0] += extra_u;
  for (const auto& e : strategy.bob) {
    out.bob.push_back(Embed(e, {m, strategy.dim_v}, {m, dim_v}));
  }
  out.bob[0] += extra_v;
  return out;
}

namespace {

template <typename Game, typename Report, typename Run>
std::vector<Report> Sweep(const Game& game,
                          const std::vector<AncillaDims>& dims,
                          const SeeSawConfig& config, Run run) {
  std::vector<Report> reports;
  for (const auto& [du, dv] : dims) {
    SeeSawConfig step = config;
    step.dim_u = du;
    step.dim_v = dv;
    const bool nested = !reports.empty() && reports.back().dim_u <= du &&
                        reports.back().dim_v <= dv;
    reports.push_back(
        run(game, step, nested ? &reports.back().best_strategy : nullptr));
  }
  return reports;
}

}  // namespace

std::vector<ExtendedSeeSawReport> SweepExtended(
    const ExtendedGame& game, const std::vector<AncillaDims>& dims,
    const SeeSawConfig& config) {
  return Sweep<ExtendedGame, ExtendedSeeSawReport>(
      game, dims, config,
      [](const ExtendedGame& g, const SeeSawConfig& c,
         const ExtendedStrategy* warm) { return SeeSawExtended(g, c, warm); });
}

std::vector<QcSeeSawReport> SweepQc(const QcGame& game,
                                    const std::vector<AncillaDims>& dims,
                                    const SeeSawConfig& config) {
  return Sweep<QcGame, QcSeeSawReport>(
      game, dims, config,
      [](const QcGame& g, const SeeSawConfig& c, const QcStrategy* warm) {
        return SeeSawQc(g, c, warm);
      });
}

RelationReport CheckValueRelation(const QcGame& game,
                                  const SeeSawConfig& config) {
  RelationReport report;
  report.dim_n = config.dim_u * config.dim_v;
  report.scale = game.n * game.m;

  const QcSeeSawReport g_report = SeeSawQc(game, config);
  report.v_g = g_report.best_value;
  report.bound =
      1.0 - (1.0 - report.v_g) / static_cast<double>(report.scale);

  const ExtendedGame h = BuildExtendedGame(game);
  const auto adapted = AdaptQcToExtended(game, g_report.best_strategy);
  report.receipt = adapted.receipt;
  report.v_h_certified = ExtendedWinProbability(h, adapted.strategy).raw;

  SeeSawConfig h_config = config;
  h_config.dim_u = config.dim_u * game.n;
  h_config.dim_v = game.m * config.dim_v;
  report.v_h_seesaw = SeeSawExtended(h, h_config, &adapted.strategy).best_value;

  report.v_h = std::max(report.v_h_certified, report.v_h_seesaw);
  report.holds = report.v_h_certified >= report.bound - kRelationSlack;
  return report;
}

}  // namespace enlg
