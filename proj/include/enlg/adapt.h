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

#ifndef ENLG_ADAPT_H_
#define ENLG_ADAPT_H_

#include <cstddef>

#include "enlg/matrix.h"
#include "enlg/model.h"

namespace enlg {

// Loss bookkeeping for one adaptation: target_loss should equal
// scale * source_loss exactly (up to rounding).
struct AdaptationReceipt {
  double source_loss = 0.0;
  double target_loss = 0.0;
  std::size_t scale_num = 1;  // scale = scale_num / scale_den
  std::size_t scale_den = 1;
  double residual = 0.0;      // |target_loss - scale * source_loss|

  double scale() const {
    return static_cast<double>(scale_num) / static_cast<double>(scale_den);
  }
};

template <typename Strategy>
struct Adapted {
  Strategy strategy;
  AdaptationReceipt receipt;
};

// Turns a QC strategy into one for BuildExtendedGame(game). Alice keeps
// U (x) X' with X' maximally entangled with the referee's X, answers x by
// applying U_x^T to X' and measuring {A_a}; Bob mirrors this on Y' (x) V.
// The losing probability drops by exactly 1/(nm).
//
// The shared state is laid out as (U, X' | X, Y | Y', V).
Adapted<ExtendedStrategy> AdaptQcToExtended(const QcGame& game,
                                            const QcStrategy& strategy);

// Turns a strategy for BuildExtendedGame(game) into a QC strategy on the same
// state, with Alice holding (U, X') and Bob (Y', V). Alice measures (X', X) in
// the basis {(1 (x) U_x^T)|psi>} and then {A^x_a} for the outcome x; Bob
// mirrors this with {(V_y^T (x) 1)|phi>}. The two steps are composed into a
// single POVM. The losing probability grows by exactly nm.
//
// Conjugating state, POVMs and basis together gives the same value only when
// rho and Q are real; on complex games it reproduces the conjugate game.
Adapted<QcStrategy> AdaptExtendedToQc(const QcGame& game,
                                      const ExtendedStrategy& strategy);

// Losing-outcome operator R0 of the forward adapted strategy on
// (U, X', X, Y, Y', V); R1 = I - R0. Its expectation on the forward adapted
// state is q_G / (nm).
ComplexMatrix ForwardLossOperator(const QcGame& game,
                                  const QcStrategy& strategy);

// Losing-outcome operator R0 of the backward adapted strategy on
// (U, X', X, S, Y, Y', V); its winning complement is R1 below. The expectation
// on W(sigma (x) rho)W* is nm q_H.
ComplexMatrix BackwardLossOperator(const QcGame& game,
                                   const ExtendedStrategy& strategy);
ComplexMatrix BackwardWinOperator(const QcGame& game,
                                  const ExtendedStrategy& strategy);

// Initial state of (U, X', X, Y, Y', V) assembled by the forward adapter.
ComplexMatrix ForwardInitialState(const QcGame& game,
                                  const QcStrategy& strategy);
// W(sigma (x) rho)W* on (U, X', X, S, Y, Y', V).
ComplexMatrix BackwardInitialState(const QcGame& game,
                                   const ExtendedStrategy& strategy);

}  // namespace enlg

#endif  // ENLG_ADAPT_H_
