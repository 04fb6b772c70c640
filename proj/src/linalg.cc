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

#include "enlg/linalg.h"

#include <algorithm>
#include <cmath>
#include <numeric>
#include <string>

#include "enlg/error.h"

namespace enlg {

namespace {

void RequireSquare(const ComplexMatrix& m, const char* what) {
  if (!m.is_square()) {
    throw Error(ErrorCode::kNonSquare,
                std::string(what) + ": " + std::to_string(m.rows()) + "x" +
                    std::to_string(m.cols()));
  }
}

void RequireShape(const ComplexMatrix& m, const RegisterShape& shape) {
  if (shape.dims.empty()) {
    throw Error(ErrorCode::kShapeMismatch, "empty register shape");
  }
  for (auto d : shape.dims) {
    if (d == 0) throw Error(ErrorCode::kShapeMismatch, "zero register dim");
  }
  if (!m.is_square() || m.rows() != shape.Total()) {
    throw Error(ErrorCode::kShapeMismatch,
                "matrix " + std::to_string(m.rows()) + "x" +
                    std::to_string(m.cols()) + " vs register total " +
                    std::to_string(shape.Total()));
  }
}

std::vector<std::size_t> Strides(const std::vector<std::size_t>& dims) {
  std::vector<std::size_t> strides(dims.size(), 1);
  for (std::size_t k = dims.size(); k-- > 1;) {
    strides[k - 1] = strides[k] * dims[k];
  }
  return strides;
}

// Flat offsets into the full space for every multi-index over `registers`
// (row-major over the listed registers).
std::vector<std::size_t> Offsets(const std::vector<std::size_t>& dims,
                                 const std::vector<std::size_t>& strides,
                                 const std::vector<std::size_t>& registers) {
  std::vector<std::size_t> offsets{0};
  for (auto r : registers) {
    std::vector<std::size_t> next;
    next.reserve(offsets.size() * dims[r]);
    for (auto base : offsets) {
      for (std::size_t v = 0; v < dims[r]; ++v) {
        next.push_back(base + v * strides[r]);
      }
    }
    offsets = std::move(next);
  }
  return offsets;
}

double OffDiagonalNorm(const std::vector<Complex>& a, std::size_t n) {
  double s = 0.0;
  for (std::size_t i = 0; i < n; ++i) {
    for (std::size_t j = 0; j < n; ++j) {
      if (i != j) s += std::norm(a[i * n + j]);
    }
  }
  return std::sqrt(s);
}

}  // namespace

const NumericPolicy& DefaultPolicy() {
  static const NumericPolicy policy;
  return policy;
}

EigenDecomposition HermitianEig(const ComplexMatrix& m,
                                const NumericPolicy& policy) {
  RequireSquare(m, "eigendecomposition");
  const std::size_t n = m.rows();
  const double norm = FrobeniusNorm(m);
  const double herm_residual = HermiticityResidual(m);
  if (herm_residual > policy.herm_tol * norm) {
    throw Error(ErrorCode::kNotHermitian,
                "Hermiticity residual " + std::to_string(herm_residual));
  }

  ComplexMatrix h = Hermitianize(m);
  std::vector<Complex> a(h.entries().begin(), h.entries().end());
  std::vector<Complex> v(n * n, 0.0);
  for (std::size_t i = 0; i < n; ++i) v[i * n + i] = 1.0;

  const double target = policy.jacobi_threshold * norm;
  int sweep = 0;
  while (OffDiagonalNorm(a, n) > target) {
    if (sweep++ >= policy.jacobi_max_sweeps) {
      throw Error(ErrorCode::kNoConvergence,
                  "Jacobi sweep cap " +
                      std::to_string(policy.jacobi_max_sweeps) + " reached");
    }
    for (std::size_t p = 0; p + 1 < n; ++p) {
      for (std::size_t q = p + 1; q < n; ++q) {
        const Complex beta = a[p * n + q];
        const double mag = std::abs(beta);
        if (mag == 0.0) continue;
        // Phase D = diag(1, e^{-i phi}) makes the pivot block real symmetric;
        // a real rotation then annihilates it.
        const Complex phase = beta / mag;  // e^{i phi}
        const double app = a[p * n + p].real();
        const double aqq = a[q * n + q].real();
        const double zeta = (aqq - app) / (2.0 * mag);
        const double t = (zeta >= 0.0 ? 1.0 : -1.0) /
                         (std::abs(zeta) + std::sqrt(1.0 + zeta * zeta));
        const double c = 1.0 / std::sqrt(1.0 + t * t);
        const double s = t * c;
        const Complex gqp = -s * std::conj(phase);
        const Complex gqq = c * std::conj(phase);
        // A <- A G on columns p, q.
        for (std::size_t k = 0; k < n; ++k) {
          const Complex akp = a[k * n + p];
          const Complex akq = a[k * n + q];
          a[k * n + p] = c * akp + gqp * akq;
          a[k * n + q] = s * akp + gqq * akq;
          const Complex vkp = v[k * n + p];
          const Complex vkq = v[k * n + q];
          v[k * n + p] = c * vkp + gqp * vkq;
          v[k * n + q] = s * vkp + gqq * vkq;
        }
        // A <- G* A on rows p, q.
        for (std::size_t k = 0; k < n; ++k) {
          const Complex apk = a[p * n + k];
          const Complex aqk = a[q * n + k];
          a[p * n + k] = c * apk + std::conj(gqp) * aqk;
          a[q * n + k] = s * apk + std::conj(gqq) * aqk;
        }
        a[p * n + q] = 0.0;
        a[q * n + p] = 0.0;
        a[p * n + p] = app - t * mag;
        a[q * n + q] = aqq + t * mag;
      }
    }
  }

  std::vector<std::size_t> order(n);
  std::iota(order.begin(), order.end(), 0);
  std::stable_sort(order.begin(), order.end(), [&](std::size_t i, std::size_t j) {
    return a[i * n + i].real() > a[j * n + j].real();
  });
  EigenDecomposition out;
  out.values.resize(n);
  out.vectors = ComplexMatrix(n, n);
  for (std::size_t col = 0; col < n; ++col) {
    const std::size_t src = order[col];
    out.values[col] = a[src * n + src].real();
    for (std::size_t row = 0; row < n; ++row) {
      out.vectors(row, col) = v[row * n + src];
    }
  }
  return out;
}

std::vector<double> HermitianEigenvalues(const ComplexMatrix& m,
                                         const NumericPolicy& policy) {
  return HermitianEig(m, policy).values;
}

ComplexMatrix HermitianFunction(const ComplexMatrix& m,
                                const std::function<double(double)>& f,
                                const NumericPolicy& policy) {
  const EigenDecomposition eig = HermitianEig(m, policy);
  const std::size_t n = m.rows();
  ComplexMatrix out(n, n);
  for (std::size_t k = 0; k < n; ++k) {
    const double fk = f(eig.values[k]);
    if (fk == 0.0) continue;
    for (std::size_t i = 0; i < n; ++i) {
      const Complex vik = fk * eig.vectors(i, k);
      for (std::size_t j = 0; j < n; ++j) {
        out(i, j) += vik * std::conj(eig.vectors(j, k));
      }
    }
  }
  return out;
}

ComplexMatrix Kron(const ComplexMatrix& a, const ComplexMatrix& b) {
  ComplexMatrix out(a.rows() * b.rows(), a.cols() * b.cols());
  for (std::size_t i = 0; i < a.rows(); ++i) {
    for (std::size_t j = 0; j < a.cols(); ++j) {
      const Complex aij = a(i, j);
      if (aij == Complex(0.0)) continue;
      for (std::size_t k = 0; k < b.rows(); ++k) {
        for (std::size_t l = 0; l < b.cols(); ++l) {
          out(i * b.rows() + k, j * b.cols() + l) = aij * b(k, l);
        }
      }
    }
  }
  return out;
}

ComplexMatrix Kron(std::initializer_list<const ComplexMatrix*> factors) {
  ComplexMatrix out = ComplexMatrix::Identity(1);
  for (const ComplexMatrix* f : factors) out = Kron(out, *f);
  return out;
}

ComplexMatrix PartialTrace(const ComplexMatrix& m, const RegisterShape& shape,
                           std::span<const std::size_t> keep) {
  RequireShape(m, shape);
  if (keep.empty()) {
    throw Error(ErrorCode::kEmptyKeepSet, "nothing to keep");
  }
  std::vector<bool> kept(shape.size(), false);
  for (auto k : keep) {
    if (k >= shape.size() || kept[k]) {
      throw Error(ErrorCode::kShapeMismatch,
                  "bad keep index " + std::to_string(k));
    }
    kept[k] = true;
  }
  std::vector<std::size_t> keep_regs;
  std::vector<std::size_t> trace_regs;
  for (std::size_t r = 0; r < shape.size(); ++r) {
    (kept[r] ? keep_regs : trace_regs).push_back(r);
  }
  const auto strides = Strides(shape.dims);
  const auto keep_off = Offsets(shape.dims, strides, keep_regs);
  const auto trace_off = Offsets(shape.dims, strides, trace_regs);

  ComplexMatrix out(keep_off.size(), keep_off.size());
  for (std::size_t i = 0; i < keep_off.size(); ++i) {
    for (std::size_t j = 0; j < keep_off.size(); ++j) {
      Complex s = 0.0;
      for (auto t : trace_off) s += m(keep_off[i] + t, keep_off[j] + t);
      out(i, j) = s;
    }
  }
  return out;
}

ComplexMatrix PermuteRegisters(const ComplexMatrix& m,
                               const RegisterShape& shape,
                               std::span<const std::size_t> perm) {
  RequireShape(m, shape);
  if (perm.size() != shape.size()) {
    throw Error(ErrorCode::kNotAPermutation,
                "permutation length " + std::to_string(perm.size()) +
                    " vs " + std::to_string(shape.size()) + " registers");
  }
  std::vector<bool> seen(perm.size(), false);
  for (auto p : perm) {
    if (p >= perm.size() || seen[p]) {
      throw Error(ErrorCode::kNotAPermutation,
                  "invalid entry " + std::to_string(p));
    }
    seen[p] = true;
  }
  const auto strides = Strides(shape.dims);
  // Output position i ranges over input register perm[i]; iterating the
  // output in row-major order yields the source index directly.
  const std::vector<std::size_t> regs(perm.begin(), perm.end());
  const auto src = Offsets(shape.dims, strides, regs);

  const std::size_t n = src.size();
  ComplexMatrix out(n, n);
  for (std::size_t i = 0; i < n; ++i) {
    for (std::size_t j = 0; j < n; ++j) out(i, j) = m(src[i], src[j]);
  }
  return out;
}

std::vector<std::size_t> InversePermutation(std::span<const std::size_t> perm) {
  std::vector<std::size_t> inv(perm.size());
  for (std::size_t i = 0; i < perm.size(); ++i) inv[perm[i]] = i;
  return inv;
}

Complex HsInner(const ComplexMatrix& a, const ComplexMatrix& b) {
  if (a.rows() != b.rows() || a.cols() != b.cols()) {
    throw Error(ErrorCode::kShapeMismatch, "Hilbert-Schmidt inner product");
  }
  Complex s = 0.0;
  const auto ea = a.entries();
  const auto eb = b.entries();
  for (std::size_t k = 0; k < ea.size(); ++k) s += std::conj(ea[k]) * eb[k];
  return s;
}

Complex HsInnerKron(const ComplexMatrix& a, const ComplexMatrix& b,
                    const ComplexMatrix& c, const ComplexMatrix& m) {
  const std::size_t rows = a.rows() * b.rows() * c.rows();
  const std::size_t cols = a.cols() * b.cols() * c.cols();
  if (m.rows() != rows || m.cols() != cols) {
    throw Error(ErrorCode::kShapeMismatch, "Kronecker inner product");
  }
  Complex s = 0.0;
  for (std::size_t ia = 0; ia < a.rows(); ++ia) {
    for (std::size_t ja = 0; ja < a.cols(); ++ja) {
      const Complex va = std::conj(a(ia, ja));
      if (va == Complex(0.0)) continue;
      for (std::size_t ib = 0; ib < b.rows(); ++ib) {
        for (std::size_t jb = 0; jb < b.cols(); ++jb) {
          const Complex vab = va * std::conj(b(ib, jb));
          if (vab == Complex(0.0)) continue;
          const std::size_t row0 = (ia * b.rows() + ib) * c.rows();
          const std::size_t col0 = (ja * b.cols() + jb) * c.cols();
          Complex inner = 0.0;
          for (std::size_t ic = 0; ic < c.rows(); ++ic) {
            for (std::size_t jc = 0; jc < c.cols(); ++jc) {
              inner += std::conj(c(ic, jc)) * m(row0 + ic, col0 + jc);
            }
          }
          s += vab * inner;
        }
      }
    }
  }
  return s;
}

double HermiticityResidual(const ComplexMatrix& m) {
  RequireSquare(m, "Hermiticity check");
  double s = 0.0;
  for (std::size_t i = 0; i < m.rows(); ++i) {
    for (std::size_t j = 0; j < m.cols(); ++j) {
      s += std::norm(m(i, j) - std::conj(m(j, i)));
    }
  }
  return std::sqrt(s);
}

double UnitarityResidual(const ComplexMatrix& u) {
  RequireSquare(u, "unitarity check");
  return FrobeniusNorm(u * Adjoint(u) -
                       ComplexMatrix::Identity(u.rows()));
}

}  // namespace enlg
