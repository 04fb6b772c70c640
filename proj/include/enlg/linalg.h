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

#ifndef ENLG_LINALG_H_
#define ENLG_LINALG_H_

#include <cstddef>
#include <functional>
#include <initializer_list>
#include <span>
#include <vector>

#include "enlg/matrix.h"

namespace enlg {

// Tolerances shared by the numerical routines. Functions take a policy
// argument defaulting to DefaultPolicy(); pass a modified copy to override.
struct NumericPolicy {
  double herm_tol = 1e-9;         // relative Hermiticity residual
  double eig_tol = 1e-9;          // relative decomposition residual
  double psd_tol = 1e-9;          // absolute slack on eigenvalue bounds
  double jacobi_threshold = 1e-12;  // relative off-diagonal Frobenius norm
  int jacobi_max_sweeps = 100;
};

const NumericPolicy& DefaultPolicy();

struct EigenDecomposition {
  std::vector<double> values;  // descending
  ComplexMatrix vectors;       // eigenvectors as columns, same order
};

// Cyclic Jacobi eigensolver for Hermitian matrices.
//
// Throws kNonSquare, kNotHermitian when ||M - M*||_F exceeds herm_tol relative
// to ||M||_F, or kNoConvergence once jacobi_max_sweeps sweeps have not pushed
// the off-diagonal norm below jacobi_threshold * ||M||_F. Eigenvectors inside
// a degenerate cluster come back in an arbitrary orthonormal basis.
EigenDecomposition HermitianEig(const ComplexMatrix& m,
                                const NumericPolicy& policy = DefaultPolicy());

// Eigenvalues only, descending.
std::vector<double> HermitianEigenvalues(
    const ComplexMatrix& m, const NumericPolicy& policy = DefaultPolicy());

// f applied to the spectrum: V f(Lambda) V*.
ComplexMatrix HermitianFunction(const ComplexMatrix& m,
                                const std::function<double(double)>& f,
                                const NumericPolicy& policy = DefaultPolicy());

ComplexMatrix Kron(const ComplexMatrix& a, const ComplexMatrix& b);
ComplexMatrix Kron(std::initializer_list<const ComplexMatrix*> factors);

// Traces out every register not listed in `keep`. Kept registers stay in
// their original relative order regardless of the order of `keep`.
ComplexMatrix PartialTrace(const ComplexMatrix& m, const RegisterShape& shape,
                           std::span<const std::size_t> keep);

// Returns W M W* where W moves input register perm[i] to output position i.
ComplexMatrix PermuteRegisters(const ComplexMatrix& m,
                               const RegisterShape& shape,
                               std::span<const std::size_t> perm);

// Inverse of a permutation in the PermuteRegisters convention.
std::vector<std::size_t> InversePermutation(std::span<const std::size_t> perm);

// <A, B> = Tr(A* B).
Complex HsInner(const ComplexMatrix& a, const ComplexMatrix& b);

// <A (x) B (x) C, M> without materializing the Kronecker product.
Complex HsInnerKron(const ComplexMatrix& a, const ComplexMatrix& b,
                    const ComplexMatrix& c, const ComplexMatrix& m);

// ||M - M*||_F.
double HermiticityResidual(const ComplexMatrix& m);
// ||U U* - I||_F.
double UnitarityResidual(const ComplexMatrix& u);

}  // namespace enlg

#endif  // ENLG_LINALG_H_
