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

#ifndef ENLG_CONSTRUCT_H_
#define ENLG_CONSTRUCT_H_

#include <cstddef>
#include <functional>
#include <vector>

#include "enlg/matrix.h"
#include "enlg/model.h"

namespace enlg {

// The d^2 discrete Weyl operators Shift^j Clock^k at flat index j * d + k,
// with Shift|l> = |l+1 mod d> and Clock|l> = exp(2 pi i l / d)|l>. They are
// unitary and pairwise orthogonal: <W_i, W_j> = d delta_ij.
struct WeylBasis {
  std::size_t d = 1;
  std::vector<ComplexMatrix> ops;

  std::size_t size() const { return ops.size(); }
  const ComplexMatrix& operator[](std::size_t i) const { return ops[i]; }
};

WeylBasis MakeWeylBasis(std::size_t d);

// (1/sqrt(n)) sum_j |j>|j> as an n^2 x 1 column.
ComplexMatrix MaxEntangled(std::size_t n);

// xi = Tr_S(rho) and xi_{a,b} = Tr_S[(1 (x) Q_{a,b} (x) 1) rho], both on X (x) Y.
struct ReducedOps {
  ComplexMatrix xi;
  std::vector<ComplexMatrix> xi_ab;  // index a * num_b + b
};

ReducedOps ReduceQcGame(const QcGame& game);

// Extended nonlocal game obtained from a QC game by post-selected
// teleportation: questions index Weyl operators (|X| = n^2, |Y| = m^2, uniform
// pi), R = (X, Y), and
//   P_{a,b,x,y} = I - (U_x (x) V_y)(xi^T - xi_{a,b}^T)(U_x (x) V_y)*.
// Throws kValidationFailed if the input game is invalid.
ExtendedGame BuildExtendedGame(const QcGame& game);

// Nine-question, binary-answer game on R = C^3 (x) C^3 whose referee loses on
// (U_x (x) U_y)|gamma_c><gamma_c|(U_x (x) U_y)* with c = a xor b. Finite
// entangled strategies approach but never reach certainty.
ExtendedGame BuildRvGame();
// |gamma_0> and |gamma_1> of the game above.
ComplexMatrix RvGamma(int c);

// Ordinary nonlocal game as an extended game with a one-dimensional R.
using Predicate =
    std::function<bool(std::size_t a, std::size_t b, std::size_t x,
                       std::size_t y)>;
ExtendedGame EmbedNonlocalGame(std::size_t num_x, std::size_t num_y,
                               std::size_t num_a, std::size_t num_b,
                               const std::vector<double>& pi,
                               const Predicate& predicate);

// CHSH: uniform questions on {0,1}^2, win iff a xor b == x and y.
ExtendedGame BuildChshGame();

}  // namespace enlg

#endif  // ENLG_CONSTRUCT_H_
