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

#ifndef ENLG_OPTIMIZE_H_
#define ENLG_OPTIMIZE_H_

#include <cstddef>
#include <cstdint>
#include <utility>
#include <vector>

#include "enlg/adapt.h"
#include "enlg/matrix.h"
#include "enlg/model.h"

namespace enlg {

struct SeeSawConfig {
  std::size_t dim_u = 1;  // Alice's ancilla
  std::size_t dim_v = 1;  // Bob's ancilla
  int restarts = 10;
  int max_rounds = 500;
  double improve_tol = 1e-9;  // stop once a round gains less than this
  std::uint64_t seed = 0;
};

// Throws kInvalidConfig.
void ValidateConfig(const SeeSawConfig& config);

struct BinaryPovm {
  ComplexMatrix e0;
  ComplexMatrix e1;
};

// Best two-outcome measurement for the objective Tr(E0 R0) + Tr(E1 R1), given
// r_diff = R0 - R1: E0 projects onto the non-negative eigenspace of r_diff
// (zero eigenvalues go to outcome 0) and E1 = I - E0.
BinaryPovm HelstromMeasurement(const ComplexMatrix& r_diff);

struct StateUpdate {
  ComplexMatrix sigma;  // |v><v| for a top eigenvector v
  double value = 0.0;   // top eigenvalue = achieved winning probability
};

// Best shared state for fixed measurements: the top eigenvector of
// T = sum pi(x,y) A^x_a (x) P_{a,b,x,y} (x) B^y_b.
StateUpdate OptimalExtendedState(
    const ExtendedGame& game,
    const std::vector<std::vector<ComplexMatrix>>& alice,
    const std::vector<std::vector<ComplexMatrix>>& bob);

// Best sigma on U (x) V for fixed QC measurements.
StateUpdate OptimalQcState(const QcGame& game,
                           const std::vector<ComplexMatrix>& alice,
                           const std::vector<ComplexMatrix>& bob,
                           std::size_t dim_u, std::size_t dim_v);

// Lower bound on the dimension-bounded entangled value together with the
// strategy that attains it. best_value is recomputed from best_strategy by
// the model evaluators, never taken from the optimizer's internal numbers.
template <typename Strategy>
struct SeeSawReport {
  double best_value = 0.0;
  Strategy best_strategy;
  std::vector<double> per_restart_values;
  std::vector<int> rounds_used;
  bool monotone_ok = true;
  std::uint64_t seed = 0;
  std::size_t dim_u = 1;
  std::size_t dim_v = 1;
  double wall_time_seconds = 0.0;
};

using ExtendedSeeSawReport = SeeSawReport<ExtendedStrategy>;
using QcSeeSawReport = SeeSawReport<QcStrategy>;

// Alternates Alice's per-question Helstrom update, Bob's, and the state
// update. Only binary answer sets are supported (kUnsupportedAnswerAlphabet
// otherwise). A warm start, padded to the configured ancilla dimensions,
// replaces the first restart's random initialization.
ExtendedSeeSawReport SeeSawExtended(const ExtendedGame& game,
                                    const SeeSawConfig& config,
                                    const ExtendedStrategy* warm_start =
                                        nullptr);
QcSeeSawReport SeeSawQc(const QcGame& game, const SeeSawConfig& config,
                        const QcStrategy* warm_start = nullptr);

// Direct-sum padding into larger ancillas; the winning probability is
// unchanged. Extra dimensions answer 0. Throws kInvalidDimension if a target
// dimension is smaller than the current one.
ExtendedStrategy PadStrategy(const ExtendedStrategy& strategy,
                             std::size_t dim_u, std::size_t dim_v);
QcStrategy PadStrategy(const QcStrategy& strategy, std::size_t dim_u,
                       std::size_t dim_v);

using AncillaDims = std::pair<std::size_t, std::size_t>;

// One see-saw per ancilla pair. When a pair dominates the previous one
// componentwise, the previous optimum is padded in as a warm start, so the
// reported bounds never decrease along such a chain.
std::vector<ExtendedSeeSawReport> SweepExtended(
    const ExtendedGame& game, const std::vector<AncillaDims>& dims,
    const SeeSawConfig& config);
std::vector<QcSeeSawReport> SweepQc(const QcGame& game,
                                    const std::vector<AncillaDims>& dims,
                                    const SeeSawConfig& config);

struct RelationReport {
  std::size_t dim_n = 1;   // N = dim U * dim V of the QC strategies
  std::size_t scale = 1;   // nm
  double v_g = 0.0;        // see-saw lower bound on the N-dimensional G value
  double v_h_certified = 0.0;  // adapted best G strategy, evaluated on H
  double v_h_seesaw = 0.0;     // see-saw on H at dimension nmN
  double v_h = 0.0;            // max of the two
  double bound = 0.0;          // 1 - (1 - v_g) / (nm)
  bool holds = false;          // v_h >= bound - 1e-8
  AdaptationReceipt receipt;
};

// Runs the QC see-saw at config's ancilla dims and the extended see-saw on
// BuildExtendedGame(game) at (n dim_u, m dim_v), using the adapted QC optimum
// as the constructive witness for v_h >= 1 - (1 - v_g)/(nm).
RelationReport CheckValueRelation(const QcGame& game,
                                  const SeeSawConfig& config);

}  // namespace enlg

#endif  // ENLG_OPTIMIZE_H_
