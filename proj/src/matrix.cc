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

#include "enlg/matrix.h"

#include <cmath>
#include <string>
#include <utility>

#include "enlg/error.h"

namespace enlg {

const char* ErrorCodeName(ErrorCode code) {
  switch (code) {
    case ErrorCode::kNonSquare: return "NonSquare";
    case ErrorCode::kNotHermitian: return "NotHermitian";
    case ErrorCode::kNoConvergence: return "NoConvergence";
    case ErrorCode::kShapeMismatch: return "ShapeMismatch";
    case ErrorCode::kEmptyKeepSet: return "EmptyKeepSet";
    case ErrorCode::kNotAPermutation: return "NotAPermutation";
    case ErrorCode::kInvalidDimension: return "InvalidDimension";
    case ErrorCode::kDimensionMismatch: return "DimensionMismatch";
    case ErrorCode::kValidationFailed: return "ValidationFailed";
    case ErrorCode::kComplexResidual: return "ComplexResidual";
    case ErrorCode::kUnsupportedAnswerAlphabet:
      return "UnsupportedAnswerAlphabet";
    case ErrorCode::kInvalidConfig: return "InvalidConfig";
    case ErrorCode::kParse: return "Parse";
  }
  return "Unknown";
}

namespace {

void RequireSameShape(const ComplexMatrix& a, const ComplexMatrix& b) {
  if (a.rows() != b.rows() || a.cols() != b.cols()) {
    throw Error(ErrorCode::kShapeMismatch,
                std::to_string(a.rows()) + "x" + std::to_string(a.cols()) +
                    " vs " + std::to_string(b.rows()) + "x" +
                    std::to_string(b.cols()));
  }
}

}  // namespace

ComplexMatrix::ComplexMatrix(std::size_t rows, std::size_t cols)
    : rows_(rows), cols_(cols), entries_(rows * cols) {}

ComplexMatrix::ComplexMatrix(std::size_t rows, std::size_t cols,
                             std::vector<Complex> entries)
    : rows_(rows), cols_(cols), entries_(std::move(entries)) {
  if (entries_.size() != rows_ * cols_) {
    throw Error(ErrorCode::kShapeMismatch,
                "entry count " + std::to_string(entries_.size()) +
                    " does not match " + std::to_string(rows_) + "x" +
                    std::to_string(cols_));
  }
}

ComplexMatrix ComplexMatrix::Identity(std::size_t n) {
  ComplexMatrix m(n, n);
  for (std::size_t i = 0; i < n; ++i) m(i, i) = 1.0;
  return m;
}

ComplexMatrix ComplexMatrix::Zero(std::size_t rows, std::size_t cols) {
  return ComplexMatrix(rows, cols);
}

ComplexMatrix ComplexMatrix::Diagonal(std::span<const double> diag) {
  ComplexMatrix m(diag.size(), diag.size());
  for (std::size_t i = 0; i < diag.size(); ++i) m(i, i) = diag[i];
  return m;
}

ComplexMatrix ComplexMatrix::FromRows(
    std::initializer_list<std::initializer_list<Complex>> rows) {
  const std::size_t r = rows.size();
  const std::size_t c = r == 0 ? 0 : rows.begin()->size();
  std::vector<Complex> entries;
  entries.reserve(r * c);
  for (const auto& row : rows) {
    if (row.size() != c) {
      throw Error(ErrorCode::kShapeMismatch, "ragged row list");
    }
    entries.insert(entries.end(), row.begin(), row.end());
  }
  return ComplexMatrix(r, c, std::move(entries));
}

ComplexMatrix ComplexMatrix::Column(std::span<const Complex> entries) {
  return ComplexMatrix(entries.size(), 1,
                       std::vector<Complex>(entries.begin(), entries.end()));
}

ComplexMatrix& ComplexMatrix::operator+=(const ComplexMatrix& other) {
  RequireSameShape(*this, other);
  for (std::size_t k = 0; k < entries_.size(); ++k) {
    entries_[k] += other.entries_[k];
  }
  return *this;
}

ComplexMatrix& ComplexMatrix::operator-=(const ComplexMatrix& other) {
  RequireSameShape(*this, other);
  for (std::size_t k = 0; k < entries_.size(); ++k) {
    entries_[k] -= other.entries_[k];
  }
  return *this;
}

ComplexMatrix& ComplexMatrix::operator*=(Complex scalar) {
  for (auto& e : entries_) e *= scalar;
  return *this;
}

ComplexMatrix operator+(ComplexMatrix lhs, const ComplexMatrix& rhs) {
  lhs += rhs;
  return lhs;
}

ComplexMatrix operator-(ComplexMatrix lhs, const ComplexMatrix& rhs) {
  lhs -= rhs;
  return lhs;
}

ComplexMatrix operator*(const ComplexMatrix& lhs, const ComplexMatrix& rhs) {
  if (lhs.cols() != rhs.rows()) {
    throw Error(ErrorCode::kShapeMismatch,
                "cannot multiply " + std::to_string(lhs.rows()) + "x" +
                    std::to_string(lhs.cols()) + " by " +
                    std::to_string(rhs.rows()) + "x" +
                    std::to_string(rhs.cols()));
  }
  ComplexMatrix out(lhs.rows(), rhs.cols());
  for (std::size_t i = 0; i < lhs.rows(); ++i) {
    for (std::size_t k = 0; k < lhs.cols(); ++k) {
      const Complex a = lhs(i, k);
      if (a == Complex(0.0)) continue;
      for (std::size_t j = 0; j < rhs.cols(); ++j) out(i, j) += a * rhs(k, j);
    }
  }
  return out;
}

ComplexMatrix operator*(Complex scalar, ComplexMatrix m) {
  m *= scalar;
  return m;
}

ComplexMatrix operator*(ComplexMatrix m, Complex scalar) {
  m *= scalar;
  return m;
}

ComplexMatrix Conj(const ComplexMatrix& m) {
  ComplexMatrix out = m;
  for (auto& e : out.entries()) e = std::conj(e);
  return out;
}

ComplexMatrix Transpose(const ComplexMatrix& m) {
  ComplexMatrix out(m.cols(), m.rows());
  for (std::size_t i = 0; i < m.rows(); ++i) {
    for (std::size_t j = 0; j < m.cols(); ++j) out(j, i) = m(i, j);
  }
  return out;
}

ComplexMatrix Adjoint(const ComplexMatrix& m) {
  ComplexMatrix out(m.cols(), m.rows());
  for (std::size_t i = 0; i < m.rows(); ++i) {
    for (std::size_t j = 0; j < m.cols(); ++j) out(j, i) = std::conj(m(i, j));
  }
  return out;
}

Complex Trace(const ComplexMatrix& m) {
  if (!m.is_square()) {
    throw Error(ErrorCode::kNonSquare, "trace of a non-square matrix");
  }
  Complex t = 0.0;
  for (std::size_t i = 0; i < m.rows(); ++i) t += m(i, i);
  return t;
}

double FrobeniusNorm(const ComplexMatrix& m) {
  double s = 0.0;
  for (const auto& e : m.entries()) s += std::norm(e);
  return std::sqrt(s);
}

ComplexMatrix Projector(const ComplexMatrix& column) {
  if (column.cols() != 1) {
    throw Error(ErrorCode::kShapeMismatch, "projector needs a column vector");
  }
  const std::size_t n = column.rows();
  ComplexMatrix out(n, n);
  for (std::size_t i = 0; i < n; ++i) {
    for (std::size_t j = 0; j < n; ++j) {
      out(i, j) = column(i, 0) * std::conj(column(j, 0));
    }
  }
  return out;
}

ComplexMatrix Hermitianize(const ComplexMatrix& m) {
  if (!m.is_square()) {
    throw Error(ErrorCode::kNonSquare, "cannot Hermitianize");
  }
  ComplexMatrix out(m.rows(), m.cols());
  for (std::size_t i = 0; i < m.rows(); ++i) {
    for (std::size_t j = 0; j < m.cols(); ++j) {
      out(i, j) = 0.5 * (m(i, j) + std::conj(m(j, i)));
    }
  }
  return out;
}

std::size_t RegisterShape::Total() const {
  std::size_t total = 1;
  for (auto d : dims) total *= d;
  return total;
}

}  // namespace enlg
