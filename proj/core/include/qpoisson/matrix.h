// Copyright 2026 The qpoisson Authors
//
// Licensed under the Apache License, Version 2.0 (the "License");
// you may not use this file except in compliance with the License.
// You may obtain a copy of the License at
//
//      http://www.apache.org/licenses/LICENSE-2.0
//
// Unless required by applicable law or agreed to in writing, software
// distributed under the License is distributed on an "AS IS" BASIS,
// WITHOUT WARRANTIES OR CONDITIONS OF ANY KIND, either express or implied.
// See the License for the specific language governing permissions and
// limitations under the License.

#ifndef QPOISSON_MATRIX_H
#define QPOISSON_MATRIX_H

#include <complex>
#include <cstdint>
#include <initializer_list>
#include <span>
#include <vector>

namespace qpoisson {

using Complex = std::complex<double>;
using Qubit = std::uint32_t;

/// Dense square complex matrix, row-major.
///
/// Used for gate unitaries, Kraus operators and channel superoperators. The
/// dimension is not required to be a power of two, but every matrix that gets
/// applied to a register must be.
class Matrix {
   public:
    Matrix() = default;
    explicit Matrix(std::size_t dim);
    /// Row-major construction; `rows` must be square.
    Matrix(std::initializer_list<std::initializer_list<Complex>> rows);

    static Matrix identity(std::size_t dim);
    static Matrix diagonal(std::span<const Complex> diag);

    std::size_t dim() const {
        return dim_;
    }
    Complex &operator()(std::size_t row, std::size_t col) {
        return data_[row * dim_ + col];
    }
    const Complex &operator()(std::size_t row, std::size_t col) const {
        return data_[row * dim_ + col];
    }
    std::span<const Complex> data() const {
        return data_;
    }

    Matrix adjoint() const;
    Matrix conjugate() const;
    Matrix operator*(const Matrix &other) const;
    Matrix operator*(Complex scalar) const;
    Matrix operator+(const Matrix &other) const;

    /// Largest absolute entrywise difference. Throws on dimension mismatch.
    double max_abs_diff(const Matrix &other) const;
    bool is_unitary(double tolerance) const;

   private:
    std::size_t dim_ = 0;
    std::vector<Complex> data_;
};

/// Kronecker product with `left` acting on the high-order index bits.
Matrix kron(const Matrix &left, const Matrix &right);

/// Number of index bits addressed by a matrix, i.e. log2(dim). Throws if the
/// dimension is not a power of two.
std::size_t matrix_bits(const Matrix &m);

/// Applies `m` to the index bits `targets` of `amplitudes`, which is viewed as
/// a vector over `2^num_bits` entries.
///
/// `targets[0]` is the most significant bit of the matrix's local index, so for
/// a controlled gate the control comes first. This is the single kernel behind
/// statevector gates, density-matrix conjugation and Kraus superoperators; it
/// does not check unitarity.
void apply_matrix_to_bits(
    std::span<Complex> amplitudes, std::size_t num_bits, const Matrix &m, std::span<const Qubit> targets);

}  // namespace qpoisson

#endif
