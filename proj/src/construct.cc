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

#include "enlg/construct.h"

#include <cmath>
#include <numbers>
#include <string>

#include "enlg/error.h"
#include "enlg/linalg.h"

namespace enlg {

WeylBasis MakeWeylBasis(std::size_t d) {
  if (d == 0) throw Error(ErrorCode::kInvalidDimension, "Weyl basis d = 0");
  ComplexMatrix shift(d, d);
  ComplexMatrix clock(d, d);
  for (std::size_t l = 0; l < d; ++l) {
    shift((l + 1) % d, l) = 1.0;
    clock(l, l) = std::polar(1.0, 2.0 * std::numbers::pi *
                                      static_cast<double>(l) /
                                      static_cast<double>(d));
  }
  WeylBasis basis;
  basis.d = d;
  basis.ops.reserve(d * d);
  ComplexMatrix shift_pow = ComplexMatrix::Identity(d);
  for (std::size_t j = 0; j < d; ++j) {
    ComplexMatrix op = shift_pow;
    for (std::size_t k = 0; k < d; ++k) {
      basis.ops.push_back(op);
      op = op * clock;
    }
    shift_pow = shift * shift_pow;
  }
  return basis;
}

ComplexMatrix MaxEntangled(std::size_t n) {
  if (n == 0) {
    throw Error(ErrorCode::kInvalidDimension, "maximally entangled n = 0");
  }
  ComplexMatrix v(n * n, 1);
  const double amp = 1.0 / std::sqrt(static_cast<double>(n));
  for (std::size_t j = 0; j < n; ++j) v(j * n + j, 0) = amp;
  return v;
}

ReducedOps ReduceQcGame(const QcGame& game) {
  RequireValid(ValidateQcGame(game), "QC game");
  const RegisterShape shape{{game.n, game.s, game.m}};
  static constexpr std::size_t kKeep[] = {0, 2};
  ReducedOps out;
  out.xi = Hermitianize(PartialTrace(game.rho, shape, kKeep));
  const ComplexMatrix id_x = ComplexMatrix::Identity(game.n);
  const ComplexMatrix id_y = ComplexMatrix::Identity(game.m);
  for (const auto& q : game.win_ops) {
    const ComplexMatrix lifted = Kron({&id_x, &q, &id_y});
    out.xi_ab.push_back(
        Hermitianize(PartialTrace(lifted * game.rho, shape, kKeep)));
  }
  return out;
}

ExtendedGame BuildExtendedGame(const QcGame& game) {
  const ReducedOps reduced = ReduceQcGame(game);
  const WeylBasis alice_basis = MakeWeylBasis(game.n);
  const WeylBasis bob_basis = MakeWeylBasis(game.m);

  ExtendedGame h;
  h.num_x = game.n * game.n;
  h.num_y = game.m * game.m;
  h.num_a = game.num_a;
  h.num_b = game.num_b;
  h.ref_dim = game.n * game.m;
  h.pi.assign(h.num_x * h.num_y,
              1.0 / static_cast<double>(h.num_x * h.num_y));

  std::vector<ComplexMatrix> conjugators;  // U_x (x) V_y at x * |Y| + y
  conjugators.reserve(h.num_x * h.num_y);
  for (std::size_t x = 0; x < h.num_x; ++x) {
    for (std::size_t y = 0; y < h.num_y; ++y) {
      conjugators.push_back(Kron(alice_basis[x], bob_basis[y]));
    }
  }
  const ComplexMatrix xi_t = Transpose(reduced.xi);
  const ComplexMatrix id = ComplexMatrix::Identity(h.ref_dim);
  h.ref_ops.resize(h.num_a * h.num_b * h.num_x * h.num_y);
  for (std::size_t a = 0; a < h.num_a; ++a) {
    for (std::size_t b = 0; b < h.num_b; ++b) {
      const ComplexMatrix gap =
          xi_t - Transpose(reduced.xi_ab[a * h.num_b + b]);
      for (std::size_t x = 0; x < h.num_x; ++x) {
        for (std::size_t y = 0; y < h.num_y; ++y) {
          const ComplexMatrix& w = conjugators[x * h.num_y + y];
          h.ref_ops[h.RefIndex(a, b, x, y)] =
              Hermitianize(id - w * gap * Adjoint(w));
        }
      }
    }
  }
  return h;
}

ComplexMatrix RvGamma(int c) {
  if (c != 0 && c != 1) {
    throw Error(ErrorCode::kInvalidDimension, "gamma index must be 0 or 1");
  }
  const double sign = c == 0 ? 1.0 : -1.0;
  ComplexMatrix v(9, 1);
  v(0, 0) = 1.0 / std::sqrt(2.0);  // |00>
  v(4, 0) = sign * 0.5;            // |11>
  v(8, 0) = sign * 0.5;            // |22>
  return v;
}

ExtendedGame BuildRvGame() {
  const WeylBasis basis = MakeWeylBasis(3);
  const ComplexMatrix gamma[2] = {Projector(RvGamma(0)),
                                  Projector(RvGamma(1))};
  const ComplexMatrix id = ComplexMatrix::Identity(9);

  ExtendedGame h;
  h.num_x = 9;
  h.num_y = 9;
  h.num_a = 2;
  h.num_b = 2;
  h.ref_dim = 9;
  h.pi.assign(81, 1.0 / 81.0);
  h.ref_ops.resize(2 * 2 * 81);
  for (std::size_t x = 0; x < 9; ++x) {
    for (std::size_t y = 0; y < 9; ++y) {
      const ComplexMatrix w = Kron(basis[x], basis[y]);
      const ComplexMatrix accept[2] = {
          Hermitianize(id - w * gamma[0] * Adjoint(w)),
          Hermitianize(id - w * gamma[1] * Adjoint(w))};
      for (std::size_t a = 0; a < 2; ++a) {
        for (std::size_t b = 0; b < 2; ++b) {
          h.ref_ops[h.RefIndex(a, b, x, y)] = accept[a ^ b];
        }
      }
    }
  }
  return h;
}

ExtendedGame EmbedNonlocalGame(std::size_t num_x, std::size_t num_y,
                               std::size_t num_a, std::size_t num_b,
                               const std::vector<double>& pi,
                               const Predicate& predicate) {
  ExtendedGame h;
  h.num_x = num_x;
  h.num_y = num_y;
  h.num_a = num_a;
  h.num_b = num_b;
  h.ref_dim = 1;
  h.pi = pi;
  h.ref_ops.resize(num_a * num_b * num_x * num_y);
  for (std::size_t a = 0; a < num_a; ++a) {
    for (std::size_t b = 0; b < num_b; ++b) {
      for (std::size_t x = 0; x < num_x; ++x) {
        for (std::size_t y = 0; y < num_y; ++y) {
          ComplexMatrix p(1, 1);
          p(0, 0) = predicate(a, b, x, y) ? 1.0 : 0.0;
          h.ref_ops[h.RefIndex(a, b, x, y)] = std::move(p);
        }
      }
    }
  }
  return h;
}

ExtendedGame BuildChshGame() {
  return EmbedNonlocalGame(
      2, 2, 2, 2, std::vector<double>(4, 0.25),
      [](std::size_t a, std::size_t b, std::size_t x, std::size_t y) {
        return (a ^ b) == (x & y);
      });
}

}  // namespace enlg
