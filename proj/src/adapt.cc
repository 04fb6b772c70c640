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

#include "enlg/adapt.h"

#include <cmath>
#include <vector>

#include "enlg/construct.h"
#include "enlg/linalg.h"

namespace enlg {

namespace {

// Alice's effective POVM elements (1 (x) conj(U_x)) A_a (1 (x) U_x^T) for the
// forward strategy, indexed [x][a].
std::vector<std::vector<ComplexMatrix>> ForwardAlicePovms(
    const QcGame& game, const QcStrategy& strategy, const WeylBasis& basis) {
  const ComplexMatrix id_u = ComplexMatrix::Identity(strategy.dim_u);
  std::vector<std::vector<ComplexMatrix>> out(basis.size());
  for (std::size_t x = 0; x < basis.size(); ++x) {
    const ComplexMatrix rotate = Kron(id_u, Transpose(basis[x]));
    const ComplexMatrix rotate_adj = Adjoint(rotate);
    for (std::size_t a = 0; a < game.num_a; ++a) {
      out[x].push_back(Hermitianize(rotate_adj * strategy.alice[a] * rotate));
    }
  }
  return out;
}

// Bob's (conj(V_y) (x) 1) B_b (V_y^T (x) 1), indexed [y][b].
std::vector<std::vector<ComplexMatrix>> ForwardBobPovms(
    const QcGame& game, const QcStrategy& strategy, const WeylBasis& basis) {
  const ComplexMatrix id_v = ComplexMatrix::Identity(strategy.dim_v);
  std::vector<std::vector<ComplexMatrix>> out(basis.size());
  for (std::size_t y = 0; y < basis.size(); ++y) {
    const ComplexMatrix rotate = Kron(Transpose(basis[y]), id_v);
    const ComplexMatrix rotate_adj = Adjoint(rotate);
    for (std::size_t b = 0; b < game.num_b; ++b) {
      out[y].push_back(Hermitianize(rotate_adj * strategy.bob[b] * rotate));
    }
  }
  return out;
}

// (1 (x) U_x^T)|psi><psi|(1 (x) conj(U_x)) on (X', X).
std::vector<ComplexMatrix> AliceTeleportBasis(std::size_t n,
                                              const WeylBasis& basis) {
  const ComplexMatrix psi = MaxEntangled(n);
  const ComplexMatrix id = ComplexMatrix::Identity(n);
  std::vector<ComplexMatrix> out;
  for (const auto& u : basis.ops) {
    out.push_back(Projector(Kron(id, Transpose(u)) * psi));
  }
  return out;
}

// (V_y^T (x) 1)|phi><phi|(conj(V_y) (x) 1) on (Y, Y').
std::vector<ComplexMatrix> BobTeleportBasis(std::size_t m,
                                            const WeylBasis& basis) {
  const ComplexMatrix phi = MaxEntangled(m);
  const ComplexMatrix id = ComplexMatrix::Identity(m);
  std::vector<ComplexMatrix> out;
  for (const auto& v : basis.ops) {
    out.push_back(Projector(Kron(Transpose(v), id) * phi));
  }
  return out;
}

// Sum over (x, y, a, b) of A^x_a (x) Pi_x (x) K_{a,b} (x) Pi'_y (x) B^y_b on (U, X', X, S, Y, Y', V), for K = Q or I - Q.
ComplexMatrix BackwardOutcomeOperator(const QcGame& game,
                                      const ExtendedStrategy& strategy,
                                      bool losing) {
  const ExtendedGame h = BuildExtendedGame(game);
  RequireCompatible(h, strategy);
  const auto alice_basis = AliceTeleportBasis(game.n, MakeWeylBasis(game.n));
  const auto bob_basis = BobTeleportBasis(game.m, MakeWeylBasis(game.m));
  const ComplexMatrix id_s = ComplexMatrix::Identity(game.s);
  const std::size_t dim = strategy.dim_u * game.n * game.n * game.s *
                          game.m * game.m * strategy.dim_v;
  ComplexMatrix total(dim, dim);
  for (std::size_t a = 0; a < game.num_a; ++a) {
    for (std::size_t b = 0; b < game.num_b; ++b) {
      const ComplexMatrix referee =
          losing ? id_s - game.Q(a, b) : game.Q(a, b);
      for (std::size_t x = 0; x < h.num_x; ++x) {
        const ComplexMatrix& alice = strategy.alice[x][a];
        for (std::size_t y = 0; y < h.num_y; ++y) {
          const ComplexMatrix& bob = strategy.bob[y][b];
          total += Kron({&alice, &alice_basis[x], &referee, &bob_basis[y],
                         &bob});
        }
      }
    }
  }
  return total;
}

}  // namespace

ComplexMatrix ForwardInitialState(const QcGame& game,
                                  const QcStrategy& strategy) {
  RequireCompatible(game, strategy);
  const ComplexMatrix psi = Projector(MaxEntangled(game.n));
  const ComplexMatrix phi = Projector(MaxEntangled(game.m));
  // (U, V, X', X, Y', Y) -> (U, X', X, Y, Y', V).
  static constexpr std::size_t kPerm[] = {0, 2, 3, 5, 4, 1};
  const RegisterShape shape{{strategy.dim_u, strategy.dim_v, game.n, game.n,
                             game.m, game.m}};
  return PermuteRegisters(Kron({&strategy.sigma, &psi, &phi}), shape, kPerm);
}

Adapted<ExtendedStrategy> AdaptQcToExtended(const QcGame& game,
                                            const QcStrategy& strategy) {
  const ExtendedGame h = BuildExtendedGame(game);
  RequireCompatible(game, strategy);
  RequireValid(ValidateQcStrategy(game, strategy), "QC strategy");

  Adapted<ExtendedStrategy> out;
  ExtendedStrategy& adapted = out.strategy;
  adapted.dim_u = strategy.dim_u * game.n;
  adapted.dim_r = game.n * game.m;
  adapted.dim_v = game.m * strategy.dim_v;
  adapted.sigma = ForwardInitialState(game, strategy);
  adapted.alice = ForwardAlicePovms(game, strategy, MakeWeylBasis(game.n));
  adapted.bob = ForwardBobPovms(game, strategy, MakeWeylBasis(game.m));

  AdaptationReceipt& receipt = out.receipt;
  receipt.source_loss = 1.0 - QcWinProbability(game, strategy).raw;
  receipt.target_loss = 1.0 - ExtendedWinProbability(h, adapted).raw;
  receipt.scale_num = 1;
  receipt.scale_den = game.n * game.m;
  receipt.residual =
      std::abs(receipt.target_loss - receipt.scale() * receipt.source_loss);
  return out;
}

Adapted<QcStrategy> AdaptExtendedToQc(const QcGame& game,
                                      const ExtendedStrategy& strategy) {
  const ExtendedGame h = BuildExtendedGame(game);
  RequireCompatible(h, strategy);
  RequireValid(ValidateExtendedStrategy(h, strategy), "extended strategy");

  const auto alice_basis = AliceTeleportBasis(game.n, MakeWeylBasis(game.n));
  const auto bob_basis = BobTeleportBasis(game.m, MakeWeylBasis(game.m));

  Adapted<QcStrategy> out;
  QcStrategy& adapted = out.strategy;
  adapted.dim_u = strategy.dim_u * game.n;
  adapted.dim_v = game.m * strategy.dim_v;
  // (U, X', Y', V) is already (U, X') (x) (Y', V) in row-major order.
  adapted.sigma = strategy.sigma;
  for (std::size_t a = 0; a < game.num_a; ++a) {
    ComplexMatrix element(adapted.dim_u * game.n, adapted.dim_u * game.n);
    for (std::size_t x = 0; x < h.num_x; ++x) {
      element += Kron(strategy.alice[x][a], alice_basis[x]);
    }
    adapted.alice.push_back(Hermitianize(element));
  }
  for (std::size_t b = 0; b < game.num_b; ++b) {
    ComplexMatrix element(game.m * adapted.dim_v, game.m * adapted.dim_v);
    for (std::size_t y = 0; y < h.num_y; ++y) {
      element += Kron(bob_basis[y], strategy.bob[y][b]);
    }
    adapted.bob.push_back(Hermitianize(element));
  }

  AdaptationReceipt& receipt = out.receipt;
  receipt.source_loss = 1.0 - ExtendedWinProbability(h, strategy).raw;
  receipt.target_loss = 1.0 - QcWinProbability(game, adapted).raw;
  receipt.scale_num = game.n * game.m;
  receipt.scale_den = 1;
  receipt.residual =
      std::abs(receipt.target_loss - receipt.scale() * receipt.source_loss);
  return out;
}

ComplexMatrix ForwardLossOperator(const QcGame& game,
                                  const QcStrategy& strategy) {
  const ExtendedGame h = BuildExtendedGame(game);
  RequireCompatible(game, strategy);
  const auto alice = ForwardAlicePovms(game, strategy, MakeWeylBasis(game.n));
  const auto bob = ForwardBobPovms(game, strategy, MakeWeylBasis(game.m));
  const ComplexMatrix id_r = ComplexMatrix::Identity(h.ref_dim);
  const double weight = 1.0 / static_cast<double>(h.num_x * h.num_y);

  const std::size_t dim = strategy.dim_u * game.n * h.ref_dim * game.m *
                          strategy.dim_v;
  ComplexMatrix r0(dim, dim);
  for (std::size_t x = 0; x < h.num_x; ++x) {
    for (std::size_t a = 0; a < h.num_a; ++a) {
      // Referee-and-Bob block for fixed (x, a).
      ComplexMatrix rest(h.ref_dim * game.m * strategy.dim_v,
                         h.ref_dim * game.m * strategy.dim_v);
      for (std::size_t y = 0; y < h.num_y; ++y) {
        for (std::size_t b = 0; b < h.num_b; ++b) {
          rest += Kron(id_r - h.P(a, b, x, y), bob[y][b]);
        }
      }
      r0 += weight * Kron(alice[x][a], rest);
    }
  }
  return Hermitianize(r0);
}

ComplexMatrix BackwardInitialState(const QcGame& game,
                                   const ExtendedStrategy& strategy) {
  const ExtendedGame h = BuildExtendedGame(game);
  RequireCompatible(h, strategy);
  // (U, X', Y', V, X, S, Y) -> (U, X', X, S, Y, Y', V).
  static constexpr std::size_t kPerm[] = {0, 1, 4, 5, 6, 2, 3};
  const RegisterShape shape{{strategy.dim_u, game.n, game.m, strategy.dim_v,
                             game.n, game.s, game.m}};
  return PermuteRegisters(Kron(strategy.sigma, game.rho), shape, kPerm);
}

ComplexMatrix BackwardLossOperator(const QcGame& game,
                                   const ExtendedStrategy& strategy) {
  return BackwardOutcomeOperator(game, strategy, /*losing=*/true);
}

ComplexMatrix BackwardWinOperator(const QcGame& game,
                                  const ExtendedStrategy& strategy) {
  return BackwardOutcomeOperator(game, strategy, /*losing=*/false);
}

}  // namespace enlg
