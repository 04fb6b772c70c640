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

#include <algorithm>
#include <cmath>
#include <sstream>
#include <string>
#include <utility>

#include "enlg/error.h"

namespace enlg {

namespace {

constexpr double kTraceTol = 1e-10;
constexpr double kPovmTol = 1e-9;
constexpr double kImagTol = 1e-10;

std::string Dims(const ComplexMatrix& m) {
  return std::to_string(m.rows()) + "x" + std::to_string(m.cols());
}

std::string Index(std::initializer_list<std::size_t> idx) {
  std::string out = "[";
  bool first = true;
  for (auto i : idx) {
    if (!first) out += ",";
    out += std::to_string(i);
    first = false;
  }
  return out + "]";
}

// Returns false (after recording a violation) unless m is a square Hermitian
// matrix of the requested size.
bool CheckHermitianShape(ValidationReport& report, const ComplexMatrix& m,
                         std::size_t dim, const std::string& where,
                         const NumericPolicy& policy) {
  if (m.rows() != dim || m.cols() != dim) {
    report.Add("shape", where + " is " + Dims(m) + ", expected " +
                            std::to_string(dim) + "x" + std::to_string(dim),
               std::abs(static_cast<double>(m.rows()) -
                        static_cast<double>(dim)));
    return false;
  }
  const double residual = HermiticityResidual(m);
  if (residual > policy.herm_tol * std::max(FrobeniusNorm(m), 1.0)) {
    report.Add("hermitian", where, residual);
    return false;
  }
  return true;
}

void CheckDensity(ValidationReport& report, const ComplexMatrix& m,
                  std::size_t dim, const std::string& where,
                  const NumericPolicy& policy) {
  if (!CheckHermitianShape(report, m, dim, where, policy)) return;
  const double trace_residual = std::abs(Trace(m).real() - 1.0);
  if (trace_residual > kTraceTol) report.Add("trace", where, trace_residual);
  const auto values = HermitianEigenvalues(Hermitianize(m), policy);
  if (values.back() < -policy.psd_tol) {
    report.Add("psd", where + " min eigenvalue " +
                          std::to_string(values.back()),
               -values.back());
  }
}

// 0 <= E <= I.
void CheckEffect(ValidationReport& report, const ComplexMatrix& m,
                 std::size_t dim, const std::string& where,
                 const NumericPolicy& policy) {
  if (!CheckHermitianShape(report, m, dim, where, policy)) return;
  const auto values = HermitianEigenvalues(Hermitianize(m), policy);
  const double below = -values.back();
  const double above = values.front() - 1.0;
  if (below > policy.psd_tol || above > policy.psd_tol) {
    std::ostringstream msg;
    msg << where << " spectrum [" << values.back() << ", " << values.front()
        << "] outside [0, 1]";
    report.Add("effect-bound", msg.str(), std::max(below, above));
  }
}

void CheckPovm(ValidationReport& report, const std::vector<ComplexMatrix>& povm,
               std::size_t outcomes, std::size_t dim, const std::string& where,
               const NumericPolicy& policy) {
  if (povm.size() != outcomes) {
    report.Add("povm-size", where + " has " + std::to_string(povm.size()) +
                                " outcomes, expected " +
                                std::to_string(outcomes),
               std::abs(static_cast<double>(povm.size()) -
                        static_cast<double>(outcomes)));
    return;
  }
  ComplexMatrix total(dim, dim);
  bool shapes_ok = true;
  for (std::size_t k = 0; k < povm.size(); ++k) {
    const std::string name = where + Index({k});
    if (!CheckHermitianShape(report, povm[k], dim, name, policy)) {
      shapes_ok = false;
      continue;
    }
    const auto values = HermitianEigenvalues(Hermitianize(povm[k]), policy);
    if (values.back() < -policy.psd_tol) {
      report.Add("psd", name + " min eigenvalue " +
                            std::to_string(values.back()),
                 -values.back());
    }
    total += povm[k];
  }
  if (!shapes_ok) return;
  const double residual =
      FrobeniusNorm(total - ComplexMatrix::Identity(dim));
  if (residual > kPovmTol) report.Add("povm-completeness", where, residual);
}

Probability FinishProbability(Complex p) {
  if (std::abs(p.imag()) >= kImagTol) {
    throw Error(ErrorCode::kComplexResidual,
                "imaginary part " + std::to_string(p.imag()) +
                    " on a winning probability");
  }
  return {std::clamp(p.real(), 0.0, 1.0), p.real()};
}

}  // namespace

void ValidationReport::Add(std::string what, std::string where,
                           double residual) {
  violations.push_back({std::move(what), std::move(where), residual});
}

std::string ValidationReport::ToString() const {
  if (ok()) return "valid";
  std::ostringstream out;
  for (const auto& v : violations) {
    out << v.what << ": " << v.where << " (residual " << v.residual << ")\n";
  }
  return out.str();
}

ValidationReport ValidateQcGame(const QcGame& game,
                                const NumericPolicy& policy) {
  ValidationReport report;
  if (game.n == 0 || game.s == 0 || game.m == 0 || game.num_a == 0 ||
      game.num_b == 0) {
    report.Add("dims", "all dimensions and answer counts must be positive",
               0.0);
    return report;
  }
  CheckDensity(report, game.rho, game.n * game.s * game.m, "rho", policy);
  if (game.win_ops.size() != game.num_a * game.num_b) {
    report.Add("win-op-count",
               std::to_string(game.win_ops.size()) + " operators for " +
                   std::to_string(game.num_a * game.num_b) + " answer pairs",
               std::abs(static_cast<double>(game.win_ops.size()) -
                        static_cast<double>(game.num_a * game.num_b)));
    return report;
  }
  for (std::size_t a = 0; a < game.num_a; ++a) {
    for (std::size_t b = 0; b < game.num_b; ++b) {
      CheckEffect(report, game.Q(a, b), game.s, "Q" + Index({a, b}), policy);
    }
  }
  return report;
}

ValidationReport ValidateExtendedGame(const ExtendedGame& game,
                                      const NumericPolicy& policy) {
  ValidationReport report;
  if (game.num_x == 0 || game.num_y == 0 || game.num_a == 0 ||
      game.num_b == 0 || game.ref_dim == 0) {
    report.Add("dims", "all set sizes and ref_dim must be positive", 0.0);
    return report;
  }
  if (game.pi.size() != game.num_x * game.num_y) {
    report.Add("pi-size",
               std::to_string(game.pi.size()) + " entries for " +
                   std::to_string(game.num_x * game.num_y) + " question pairs",
               0.0);
  } else {
    double total = 0.0;
    for (std::size_t x = 0; x < game.num_x; ++x) {
      for (std::size_t y = 0; y < game.num_y; ++y) {
        const double p = game.Pi(x, y);
        if (p < 0.0) report.Add("pi-negative", "pi" + Index({x, y}), -p);
        total += p;
      }
    }
    if (std::abs(total - 1.0) > kTraceTol) {
      report.Add("pi-sum", "pi sums to " + std::to_string(total),
                 std::abs(total - 1.0));
    }
  }
  const std::size_t count =
      game.num_a * game.num_b * game.num_x * game.num_y;
  if (game.ref_ops.size() != count) {
    report.Add("ref-op-count",
               std::to_string(game.ref_ops.size()) + " operators, expected " +
                   std::to_string(count),
               0.0);
    return report;
  }
  for (std::size_t a = 0; a < game.num_a; ++a) {
    for (std::size_t b = 0; b < game.num_b; ++b) {
      for (std::size_t x = 0; x < game.num_x; ++x) {
        for (std::size_t y = 0; y < game.num_y; ++y) {
          CheckEffect(report, game.P(a, b, x, y), game.ref_dim,
                      "P" + Index({a, b, x, y}), policy);
        }
      }
    }
  }
  return report;
}

ValidationReport ValidateQcStrategy(const QcGame& game,
                                    const QcStrategy& strategy,
                                    const NumericPolicy& policy) {
  ValidationReport report;
  if (strategy.dim_u == 0 || strategy.dim_v == 0) {
    report.Add("dims", "ancilla dimensions must be positive", 0.0);
    return report;
  }
  CheckDensity(report, strategy.sigma, strategy.dim_u * strategy.dim_v,
               "sigma", policy);
  CheckPovm(report, strategy.alice, game.num_a, strategy.dim_u * game.n,
            "alice", policy);
  CheckPovm(report, strategy.bob, game.num_b, game.m * strategy.dim_v, "bob",
            policy);
  return report;
}

ValidationReport ValidateExtendedStrategy(const ExtendedGame& game,
                                          const ExtendedStrategy& strategy,
                                          const NumericPolicy& policy) {
  ValidationReport report;
  if (strategy.dim_u == 0 || strategy.dim_v == 0) {
    report.Add("dims", "ancilla dimensions must be positive", 0.0);
    return report;
  }
  if (strategy.dim_r != game.ref_dim) {
    report.Add("ref-dim",
               "strategy R dimension " + std::to_string(strategy.dim_r) +
                   " vs game " + std::to_string(game.ref_dim),
               0.0);
    return report;
  }
  CheckDensity(report, strategy.sigma,
               strategy.dim_u * strategy.dim_r * strategy.dim_v, "sigma",
               policy);
  if (strategy.alice.size() != game.num_x) {
    report.Add("alice-questions",
               std::to_string(strategy.alice.size()) + " POVMs for " +
                   std::to_string(game.num_x) + " questions",
               0.0);
  } else {
    for (std::size_t x = 0; x < game.num_x; ++x) {
      CheckPovm(report, strategy.alice[x], game.num_a, strategy.dim_u,
                "alice" + Index({x}), policy);
    }
  }
  if (strategy.bob.size() != game.num_y) {
    report.Add("bob-questions",
               std::to_string(strategy.bob.size()) + " POVMs for " +
                   std::to_string(game.num_y) + " questions",
               0.0);
  } else {
    for (std::size_t y = 0; y < game.num_y; ++y) {
      CheckPovm(report, strategy.bob[y], game.num_b, strategy.dim_v,
                "bob" + Index({y}), policy);
    }
  }
  return report;
}

void RequireValid(const ValidationReport& report, const std::string& what) {
  if (!report.ok()) {
    throw Error(ErrorCode::kValidationFailed, what + "\n" + report.ToString());
  }
}

void RequireCompatible(const QcGame& game, const QcStrategy& strategy) {
  const std::size_t du = strategy.dim_u;
  const std::size_t dv = strategy.dim_v;
  bool ok = game.rho.rows() == game.n * game.s * game.m &&
            game.win_ops.size() == game.num_a * game.num_b &&
            strategy.sigma.rows() == du * dv &&
            strategy.sigma.cols() == du * dv &&
            strategy.alice.size() == game.num_a &&
            strategy.bob.size() == game.num_b;
  for (const auto& a : strategy.alice) {
    ok = ok && a.rows() == du * game.n && a.cols() == du * game.n;
  }
  for (const auto& b : strategy.bob) {
    ok = ok && b.rows() == game.m * dv && b.cols() == game.m * dv;
  }
  for (const auto& q : game.win_ops) {
    ok = ok && q.rows() == game.s && q.cols() == game.s;
  }
  if (!ok) {
    std::ostringstream msg;
    msg << "game (n, s, m, |A|, |B|) = (" << game.n << ", " << game.s << ", "
        << game.m << ", " << game.num_a << ", " << game.num_b
        << "); strategy (dim U, dim V, sigma, |alice|, |bob|) = ("
        << du << ", " << dv << ", " << Dims(strategy.sigma) << ", "
        << strategy.alice.size() << ", " << strategy.bob.size() << ")";
    if (!strategy.alice.empty() && !strategy.bob.empty()) {
      msg << "; alice/bob operators " << Dims(strategy.alice[0]) << " and "
          << Dims(strategy.bob[0]) << ", expected " << du * game.n << "x"
          << du * game.n << " and " << game.m * dv << "x" << game.m * dv;
    }
    throw Error(ErrorCode::kDimensionMismatch, msg.str());
  }
}

void RequireCompatible(const ExtendedGame& game,
                       const ExtendedStrategy& strategy) {
  const std::size_t total = strategy.dim_u * strategy.dim_r * strategy.dim_v;
  bool ok = strategy.dim_r == game.ref_dim && strategy.sigma.rows() == total &&
            strategy.sigma.cols() == total &&
            strategy.alice.size() == game.num_x &&
            strategy.bob.size() == game.num_y &&
            game.pi.size() == game.num_x * game.num_y &&
            game.ref_ops.size() ==
                game.num_a * game.num_b * game.num_x * game.num_y;
  for (const auto& povm : strategy.alice) {
    ok = ok && povm.size() == game.num_a;
    for (const auto& e : povm) {
      ok = ok && e.rows() == strategy.dim_u && e.cols() == strategy.dim_u;
    }
  }
  for (const auto& povm : strategy.bob) {
    ok = ok && povm.size() == game.num_b;
    for (const auto& e : povm) {
      ok = ok && e.rows() == strategy.dim_v && e.cols() == strategy.dim_v;
    }
  }
  for (const auto& p : game.ref_ops) {
    ok = ok && p.rows() == game.ref_dim && p.cols() == game.ref_dim;
  }
  if (!ok) {
    std::ostringstream msg;
    msg << "game (|X|, |Y|, |A|, |B|, dim R) = (" << game.num_x << ", "
        << game.num_y << ", " << game.num_a << ", " << game.num_b << ", "
        << game.ref_dim << "); strategy (|X|, |Y|, dim U, dim R, dim V, "
        << "sigma) = (" << strategy.alice.size() << ", "
        << strategy.bob.size() << ", " << strategy.dim_u << ", "
        << strategy.dim_r << ", " << strategy.dim_v << ", "
        << Dims(strategy.sigma) << ")";
    throw Error(ErrorCode::kDimensionMismatch, msg.str());
  }
}

Probability QcWinProbability(const QcGame& game, const QcStrategy& strategy) {
  RequireCompatible(game, strategy);
  // W: (U, V, X, S, Y) -> (U, X, S, Y, V).
  static constexpr std::size_t kPerm[] = {0, 2, 3, 4, 1};
  const RegisterShape shape{
      {strategy.dim_u, strategy.dim_v, game.n, game.s, game.m}};
  const ComplexMatrix joint =
      PermuteRegisters(Kron(strategy.sigma, game.rho), shape, kPerm);
  Complex p = 0.0;
  for (std::size_t a = 0; a < game.num_a; ++a) {
    for (std::size_t b = 0; b < game.num_b; ++b) {
      p += HsInnerKron(strategy.alice[a], game.Q(a, b), strategy.bob[b],
                       joint);
    }
  }
  return FinishProbability(p);
}

Probability ExtendedWinProbability(const ExtendedGame& game,
                                   const ExtendedStrategy& strategy) {
  RequireCompatible(game, strategy);
  Complex p = 0.0;
  for (std::size_t x = 0; x < game.num_x; ++x) {
    for (std::size_t y = 0; y < game.num_y; ++y) {
      const double weight = game.Pi(x, y);
      if (weight == 0.0) continue;
      for (std::size_t a = 0; a < game.num_a; ++a) {
        for (std::size_t b = 0; b < game.num_b; ++b) {
          p += weight * HsInnerKron(strategy.alice[x][a], game.P(a, b, x, y),
                                    strategy.bob[y][b], strategy.sigma);
        }
      }
    }
  }
  return FinishProbability(p);
}

QcGame RandomQcGame(std::size_t n, std::size_t s, std::size_t m,
                    std::size_t num_a, std::size_t num_b, CounterRng& rng) {
  QcGame game;
  game.n = n;
  game.s = s;
  game.m = m;
  game.num_a = num_a;
  game.num_b = num_b;
  game.rho = RandomDensity(n * s * m, rng);
  for (std::size_t k = 0; k < num_a * num_b; ++k) {
    game.win_ops.push_back(RandomEffect(s, rng));
  }
  return game;
}

QcStrategy RandomQcStrategy(const QcGame& game, std::size_t dim_u,
                            std::size_t dim_v, CounterRng& rng) {
  QcStrategy strategy;
  strategy.dim_u = dim_u;
  strategy.dim_v = dim_v;
  strategy.sigma = RandomDensity(dim_u * dim_v, rng);
  strategy.alice = RandomPovm(dim_u * game.n, game.num_a, rng);
  strategy.bob = RandomPovm(game.m * dim_v, game.num_b, rng);
  return strategy;
}

ExtendedStrategy RandomExtendedStrategy(const ExtendedGame& game,
                                        std::size_t dim_u, std::size_t dim_v,
                                        CounterRng& rng) {
  ExtendedStrategy strategy;
  strategy.dim_u = dim_u;
  strategy.dim_r = game.ref_dim;
  strategy.dim_v = dim_v;
  strategy.sigma = RandomDensity(dim_u * game.ref_dim * dim_v, rng);
  for (std::size_t x = 0; x < game.num_x; ++x) {
    strategy.alice.push_back(RandomPovm(dim_u, game.num_a, rng));
  }
  for (std::size_t y = 0; y < game.num_y; ++y) {
    strategy.bob.push_back(RandomPovm(dim_v, game.num_b, rng));
  }
  return strategy;
}

}  // namespace enlg
