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

#ifndef ENLG_MODEL_H_
#define ENLG_MODEL_H_

#include <cstddef>
#include <string>
#include <vector>

#include "enlg/linalg.h"
#include "enlg/matrix.h"
#include "enlg/random.h"

namespace enlg {

// Quantum-classical game: the referee prepares rho on X (x) S (x) Y, hands X
// to Alice and Y to Bob, and accepts answers (a, b) with the effect Q_{a,b}
// on the retained register S. Answers are 0-based.
struct QcGame {
  std::size_t n = 1;  // dim X
  std::size_t s = 1;  // dim S
  std::size_t m = 1;  // dim Y
  std::size_t num_a = 1;
  std::size_t num_b = 1;
  ComplexMatrix rho;
  std::vector<ComplexMatrix> win_ops;  // index a * num_b + b

  const ComplexMatrix& Q(std::size_t a, std::size_t b) const {
    return win_ops[a * num_b + b];
  }
};

// Extended nonlocal game: questions (x, y) ~ pi, answers (a, b), and the
// referee accepts with the effect P_{a,b,x,y} on the register R supplied by
// the players.
struct ExtendedGame {
  std::size_t num_x = 1;
  std::size_t num_y = 1;
  std::size_t num_a = 1;
  std::size_t num_b = 1;
  std::size_t ref_dim = 1;
  std::vector<double> pi;               // index x * num_y + y
  std::vector<ComplexMatrix> ref_ops;   // index RefIndex(a, b, x, y)

  std::size_t RefIndex(std::size_t a, std::size_t b, std::size_t x,
                       std::size_t y) const {
    return ((a * num_b + b) * num_x + x) * num_y + y;
  }
  double Pi(std::size_t x, std::size_t y) const { return pi[x * num_y + y]; }
  const ComplexMatrix& P(std::size_t a, std::size_t b, std::size_t x,
                         std::size_t y) const {
    return ref_ops[RefIndex(a, b, x, y)];
  }
};

// Entangled strategy for a QC game: sigma on U (x) V, Alice's POVM on
// U (x) X and Bob's POVM on Y (x) V.
struct QcStrategy {
  std::size_t dim_u = 1;
  std::size_t dim_v = 1;
  ComplexMatrix sigma;
  std::vector<ComplexMatrix> alice;  // by answer a
  std::vector<ComplexMatrix> bob;    // by answer b
};

// Entangled strategy for an extended nonlocal game: sigma on U (x) R (x) V and
// one POVM on U per question x for Alice (on V per y for Bob).
struct ExtendedStrategy {
  std::size_t dim_u = 1;
  std::size_t dim_r = 1;
  std::size_t dim_v = 1;
  ComplexMatrix sigma;
  std::vector<std::vector<ComplexMatrix>> alice;  // [x][a]
  std::vector<std::vector<ComplexMatrix>> bob;    // [y][b]
};

struct Violation {
  std::string what;   // short machine-friendly tag, e.g. "trace"
  std::string where;  // offending object, e.g. "Q[0,1]"
  double residual = 0.0;
};

struct ValidationReport {
  std::vector<Violation> violations;

  bool ok() const { return violations.empty(); }
  std::string ToString() const;
  void Add(std::string what, std::string where, double residual);
};

ValidationReport ValidateQcGame(const QcGame& game,
                                const NumericPolicy& policy = DefaultPolicy());
ValidationReport ValidateExtendedGame(
    const ExtendedGame& game, const NumericPolicy& policy = DefaultPolicy());
// Structural and dimensional checks of a strategy against its game.
ValidationReport ValidateQcStrategy(
    const QcGame& game, const QcStrategy& strategy,
    const NumericPolicy& policy = DefaultPolicy());
ValidationReport ValidateExtendedStrategy(
    const ExtendedGame& game, const ExtendedStrategy& strategy,
    const NumericPolicy& policy = DefaultPolicy());

// Throws kValidationFailed carrying the report text when it is not ok.
void RequireValid(const ValidationReport& report, const std::string& what);

struct Probability {
  double value = 0.0;  // clamped to [0, 1]
  double raw = 0.0;    // unclamped real part
};

// Throws kDimensionMismatch when the strategy does not fit the game and
// kComplexResidual when the imaginary part reaches 1e-10.
Probability QcWinProbability(const QcGame& game, const QcStrategy& strategy);
Probability ExtendedWinProbability(const ExtendedGame& game,
                                   const ExtendedStrategy& strategy);

// Dimension-only compatibility checks used by the evaluators.
void RequireCompatible(const QcGame& game, const QcStrategy& strategy);
void RequireCompatible(const ExtendedGame& game,
                       const ExtendedStrategy& strategy);

// Random instances for tests, demos and restarts.
QcGame RandomQcGame(std::size_t n, std::size_t s, std::size_t m,
                    std::size_t num_a, std::size_t num_b, CounterRng& rng);
QcStrategy RandomQcStrategy(const QcGame& game, std::size_t dim_u,
                            std::size_t dim_v, CounterRng& rng);
ExtendedStrategy RandomExtendedStrategy(const ExtendedGame& game,
                                        std::size_t dim_u, std::size_t dim_v,
                                        CounterRng& rng);

}  // namespace enlg

#endif  // ENLG_MODEL_H_
