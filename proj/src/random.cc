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

#include "enlg/random.h"

#include <algorithm>
#include <cmath>
#include <numbers>

#include "enlg/error.h"
#include "enlg/linalg.h"

namespace enlg {

namespace {

constexpr std::uint64_t kGolden = 0x9E3779B97F4A7C15ULL;

std::uint64_t Mix(std::uint64_t z) {
  z = (z ^ (z >> 30)) * 0xBF58476D1CE4E5B9ULL;
  z = (z ^ (z >> 27)) * 0x94D049BB133111EBULL;
  return z ^ (z >> 31);
}

}  // namespace

CounterRng::CounterRng(std::uint64_t seed, std::uint64_t stream)
    : seed_(seed), key_(Mix(seed ^ Mix(stream + kGolden))) {}

CounterRng::result_type CounterRng::operator()() {
  ++counter_;
  return Mix(key_ + counter_ * kGolden);
}

double CounterRng::Uniform() {
  return static_cast<double>((*this)() >> 11) * 0x1.0p-53;
}

double CounterRng::Normal() {
  if (has_spare_) {
    has_spare_ = false;
    return spare_;
  }
  double u1 = Uniform();
  while (u1 <= 0.0) u1 = Uniform();
  const double u2 = Uniform();
  const double r = std::sqrt(-2.0 * std::log(u1));
  const double theta = 2.0 * std::numbers::pi * u2;
  spare_ = r * std::sin(theta);
  has_spare_ = true;
  return r * std::cos(theta);
}

std::size_t CounterRng::UniformIndex(std::size_t n) {
  if (n == 0) throw Error(ErrorCode::kInvalidDimension, "empty range");
  return static_cast<std::size_t>(Uniform() * static_cast<double>(n)) % n;
}

ComplexMatrix GinibreMatrix(std::size_t rows, std::size_t cols,
                            CounterRng& rng) {
  ComplexMatrix g(rows, cols);
  for (auto& e : g.entries()) {
    const double re = rng.Normal();
    const double im = rng.Normal();
    e = Complex(re, im) * std::sqrt(0.5);
  }
  return g;
}

ComplexMatrix RandomUnitary(std::size_t d, CounterRng& rng) {
  ComplexMatrix g = GinibreMatrix(d, d, rng);
  // Modified Gram-Schmidt on columns; with Gaussian input the resulting Q has
  // Haar measure because R gets a positive real diagonal.
  for (std::size_t k = 0; k < d; ++k) {
    for (std::size_t j = 0; j < k; ++j) {
      Complex proj = 0.0;
      for (std::size_t i = 0; i < d; ++i) proj += std::conj(g(i, j)) * g(i, k);
      for (std::size_t i = 0; i < d; ++i) g(i, k) -= proj * g(i, j);
    }
    double norm = 0.0;
    for (std::size_t i = 0; i < d; ++i) norm += std::norm(g(i, k));
    norm = std::sqrt(norm);
    for (std::size_t i = 0; i < d; ++i) g(i, k) /= norm;
  }
  return g;
}

ComplexMatrix RandomPureState(std::size_t d, CounterRng& rng) {
  ComplexMatrix v = GinibreMatrix(d, 1, rng);
  v *= 1.0 / FrobeniusNorm(v);
  return v;
}

ComplexMatrix RandomDensity(std::size_t d, CounterRng& rng, std::size_t rank) {
  if (rank == 0 || rank > d) rank = d;
  const ComplexMatrix g = GinibreMatrix(d, rank, rng);
  ComplexMatrix rho = Hermitianize(g * Adjoint(g));
  rho *= 1.0 / Trace(rho).real();
  return rho;
}

ComplexMatrix RandomHermitian(std::size_t d, CounterRng& rng) {
  return Hermitianize(GinibreMatrix(d, d, rng));
}

ComplexMatrix RandomEffect(std::size_t d, CounterRng& rng) {
  const ComplexMatrix u = RandomUnitary(d, rng);
  std::vector<double> spectrum(d);
  for (auto& s : spectrum) s = rng.Uniform();
  return Hermitianize(u * ComplexMatrix::Diagonal(spectrum) * Adjoint(u));
}

std::vector<ComplexMatrix> RandomPovm(std::size_t d, std::size_t outcomes,
                                      CounterRng& rng) {
  std::vector<ComplexMatrix> raw;
  ComplexMatrix total(d, d);
  for (std::size_t k = 0; k < outcomes; ++k) {
    const ComplexMatrix g = GinibreMatrix(d, d, rng);
    raw.push_back(Hermitianize(g * Adjoint(g)));
    total += raw.back();
  }
  const ComplexMatrix inv_sqrt =
      HermitianFunction(total, [](double x) { return 1.0 / std::sqrt(x); });
  std::vector<ComplexMatrix> povm;
  povm.reserve(outcomes);
  for (const auto& m : raw) {
    povm.push_back(Hermitianize(inv_sqrt * m * inv_sqrt));
  }
  return povm;
}

std::vector<ComplexMatrix> RandomBinaryProjective(std::size_t d,
                                                  std::size_t rank,
                                                  CounterRng& rng) {
  rank = std::min(rank, d);
  const ComplexMatrix u = RandomUnitary(d, rng);
  std::vector<double> diag(d, 0.0);
  std::fill(diag.begin(), diag.begin() + static_cast<std::ptrdiff_t>(rank),
            1.0);
  ComplexMatrix p = Hermitianize(u * ComplexMatrix::Diagonal(diag) *
                                 Adjoint(u));
  ComplexMatrix q = ComplexMatrix::Identity(d) - p;
  return {std::move(p), std::move(q)};
}

}  // namespace enlg
