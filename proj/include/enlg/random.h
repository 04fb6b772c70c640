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

#ifndef ENLG_RANDOM_H_
#define ENLG_RANDOM_H_

#include <cstddef>
#include <cstdint>
#include <limits>
#include <vector>

#include "enlg/matrix.h"

namespace enlg {

// SplitMix64 used in counter mode: draw k is mix(key + k * golden). Streams
// are addressed by (seed, stream) so restarts can be generated independently
// and in any order with identical results on every platform.
class CounterRng {
 public:
  using result_type = std::uint64_t;

  explicit CounterRng(std::uint64_t seed, std::uint64_t stream = 0);

  static constexpr result_type min() { return 0; }
  static constexpr result_type max() {
    return std::numeric_limits<result_type>::max();
  }

  result_type operator()();

  // Uniform on [0, 1) with 53 random bits.
  double Uniform();
  // Standard normal via Box-Muller; deterministic across standard libraries.
  double Normal();
  // Uniform on {0, ..., n - 1}.
  std::size_t UniformIndex(std::size_t n);

  std::uint64_t seed() const { return seed_; }
  std::uint64_t counter() const { return counter_; }

 private:
  std::uint64_t seed_;
  std::uint64_t key_;
  std::uint64_t counter_ = 0;
  bool has_spare_ = false;
  double spare_ = 0.0;
};

// Entries i.i.d. complex Gaussian with unit variance.
ComplexMatrix GinibreMatrix(std::size_t rows, std::size_t cols,
                            CounterRng& rng);
// Haar-distributed unitary (Gram-Schmidt on a Ginibre matrix).
ComplexMatrix RandomUnitary(std::size_t d, CounterRng& rng);
// Normalized column vector.
ComplexMatrix RandomPureState(std::size_t d, CounterRng& rng);
// G G* / Tr(G G*) with G a d x rank Ginibre matrix; rank 0 means full rank.
ComplexMatrix RandomDensity(std::size_t d, CounterRng& rng,
                            std::size_t rank = 0);
// Random Hermitian matrix with Gaussian entries.
ComplexMatrix RandomHermitian(std::size_t d, CounterRng& rng);
// U diag(u) U* with u_i uniform on [0, 1]: a random 0 <= Q <= I.
ComplexMatrix RandomEffect(std::size_t d, CounterRng& rng);
// Generic POVM: S^{-1/2} M_k S^{-1/2} for random positive M_k.
std::vector<ComplexMatrix> RandomPovm(std::size_t d, std::size_t outcomes,
                                      CounterRng& rng);
// Projective split {P, I - P}: P projects onto `rank` columns of a Haar
// unitary. A rank above d is clamped.
std::vector<ComplexMatrix> RandomBinaryProjective(std::size_t d,
                                                  std::size_t rank,
                                                  CounterRng& rng);

}  // namespace enlg

#endif  // ENLG_RANDOM_H_
