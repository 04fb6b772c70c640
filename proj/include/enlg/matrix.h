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

#ifndef ENLG_MATRIX_H_
#define ENLG_MATRIX_H_

#include <complex>
#include <cstddef>
#include <initializer_list>
#include <span>
#include <vector>

namespace enlg {

using Complex = std::complex<double>;

// Dense row-major complex matrix. States, measurement operators and unitaries
// are all carried by this one type; column vectors are n x 1 matrices.
class ComplexMatrix {
 public:
  ComplexMatrix() = default;
  ComplexMatrix(std::size_t rows, std::size_t cols);
  ComplexMatrix(std::size_t rows, std::size_t cols,
                std::vector<Complex> entries);

  static ComplexMatrix Identity(std::size_t n);
  static ComplexMatrix Zero(std::size_t rows, std::size_t cols);
  static ComplexMatrix Diagonal(std::span<const double> diag);
  static ComplexMatrix FromRows(
      std::initializer_list<std::initializer_list<Complex>> rows);
  static ComplexMatrix Column(std::span<const Complex> entries);

  std::size_t rows() const { return rows_; }
  std::size_t cols() const { return cols_; }
  std::size_t size() const { return entries_.size(); }
  bool empty() const { return entries_.empty(); }
  bool is_square() const { return rows_ == cols_; }

  Complex& operator()(std::size_t i, std::size_t j) {
    return entries_[i * cols_ + j];
  }
  const Complex& operator()(std::size_t i, std::size_t j) const {
    return entries_[i * cols_ + j];
  }

  std::span<Complex> entries() { return entries_; }
  std::span<const Complex> entries() const { return entries_; }

  ComplexMatrix& operator+=(const ComplexMatrix& other);
  ComplexMatrix& operator-=(const ComplexMatrix& other);
  ComplexMatrix& operator*=(Complex scalar);

  friend bool operator==(const ComplexMatrix&, const ComplexMatrix&) = default;

 private:
  std::size_t rows_ = 0;
  std::size_t cols_ = 0;
  std::vector<Complex> entries_;
};

ComplexMatrix operator+(ComplexMatrix lhs, const ComplexMatrix& rhs);
ComplexMatrix operator-(ComplexMatrix lhs, const ComplexMatrix& rhs);
ComplexMatrix operator*(const ComplexMatrix& lhs, const ComplexMatrix& rhs);
ComplexMatrix operator*(Complex scalar, ComplexMatrix m);
ComplexMatrix operator*(ComplexMatrix m, Complex scalar);

ComplexMatrix Conj(const ComplexMatrix& m);
ComplexMatrix Transpose(const ComplexMatrix& m);
ComplexMatrix Adjoint(const ComplexMatrix& m);
Complex Trace(const ComplexMatrix& m);
double FrobeniusNorm(const ComplexMatrix& m);
// |v><v| for a column vector v.
ComplexMatrix Projector(const ComplexMatrix& column);
// (M + M*) / 2.
ComplexMatrix Hermitianize(const ComplexMatrix& m);

// Local dimensions of an ordered register tuple, e.g. (U, X, S, Y, V).
struct RegisterShape {
  std::vector<std::size_t> dims;

  std::size_t Total() const;
  std::size_t size() const { return dims.size(); }
};

}  // namespace enlg

#endif  // ENLG_MATRIX_H_
