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

#ifndef QPOISSON_STATE_H
#define QPOISSON_STATE_H

#include <span>
#include <vector>

#include "qpoisson/matrix.h"
#include "qpoisson/noise.h"

namespace qpoisson {

/// Largest register either representation accepts. A 14 qubit density matrix
/// is already 4 GiB.
constexpr std::size_t kMaxQubits = 14;

/// Pure state over `2^num_qubits` computational basis states.
///
/// Qubit q is bit q of the basis index (qubit 0 is the least significant bit).
class StateVector {
   public:
    /// |0...0>.
    explicit StateVector(std::size_t num_qubits);
    /// Takes the amplitudes as given; throws unless the length is 2^num_qubits,
    /// every entry is finite and the norm is 1 within 1e-10.
    StateVector(std::size_t num_qubits, std::vector<Complex> amplitudes);

    static StateVector basis(std::size_t num_qubits, std::size_t index);

    std::size_t num_qubits() const {
        return num_qubits_;
    }
    std::size_t dim() const {
        return amplitudes_.size();
    }
    std::span<const Complex> amplitudes() const {
        return amplitudes_;
    }
    Complex amplitude(std::size_t index) const {
        return amplitudes_.at(index);
    }
    double norm_squared() const;

    /// Direct mutable access for kernels; callers keep the norm invariant.
    std::span<Complex> mutable_amplitudes() {
        return amplitudes_;
    }

   private:
    std::size_t num_qubits_;
    std::vector<Complex> amplitudes_;
};

/// Mixed state as a dense `2^n x 2^n` matrix, stored row-major.
///
/// Viewed as a vector over 2n bits, entry (r, c) sits at index r * 2^n + c: the
/// column occupies the low n bits and the row the high n bits.
class DensityMatrix {
   public:
    /// |0...0><0...0|.
    explicit DensityMatrix(std::size_t num_qubits);
    static DensityMatrix from_pure(const StateVector &state);
    /// Throws unless the entries are finite, Hermitian within 1e-12 and of unit
    /// trace within 1e-9.
    static DensityMatrix from_entries(std::size_t num_qubits, std::vector<Complex> entries);

    std::size_t num_qubits() const {
        return num_qubits_;
    }
    std::size_t dim() const {
        return std::size_t{1} << num_qubits_;
    }
    Complex operator()(std::size_t row, std::size_t col) const {
        return entries_[row * dim() + col];
    }
    std::span<const Complex> entries() const {
        return entries_;
    }
    std::span<Complex> mutable_entries() {
        return entries_;
    }

    Complex trace() const;
    /// Largest |rho_ij - conj(rho_ji)|.
    double hermiticity_error() const;
    /// Real parts of the diagonal: the Born distribution.
    std::vector<double> diagonal() const;
    /// Largest entrywise difference.
    double max_abs_diff(const DensityMatrix &other) const;

   private:
    explicit DensityMatrix(std::size_t num_qubits, std::vector<Complex> entries);

    std::size_t num_qubits_;
    std::vector<Complex> entries_;
};

/// Applies `u` to the ordered `targets` (first target = most significant bit of
/// the gate's local index, so controls come first). Throws std::invalid_argument
/// on a dimension mismatch or a duplicate or out-of-range target.
StateVector apply_unitary(StateVector state, const Matrix &u, std::span<const Qubit> targets);
void apply_unitary_in_place(StateVector &state, const Matrix &u, std::span<const Qubit> targets);

/// rho -> U rho U^dagger on `targets`.
DensityMatrix apply_unitary_dm(DensityMatrix rho, const Matrix &u, std::span<const Qubit> targets);
void apply_unitary_dm_in_place(DensityMatrix &rho, const Matrix &u, std::span<const Qubit> targets);

/// rho -> sum_k E_k rho E_k^dagger on `targets`. The channel's arity must equal
/// targets.size().
DensityMatrix apply_kraus(DensityMatrix rho, const KrausChannel &channel, std::span<const Qubit> targets);
void apply_kraus_in_place(DensityMatrix &rho, const KrausChannel &channel, std::span<const Qubit> targets);
/// Same as apply_kraus_in_place with a precomputed superoperator.
void apply_superoperator_in_place(DensityMatrix &rho, const Matrix &superop, std::span<const Qubit> targets);

/// |amplitude[index]|^2. Throws std::out_of_range for an index past the end.
double basis_probability(const StateVector &state, std::size_t index);

}  // namespace qpoisson

#endif
