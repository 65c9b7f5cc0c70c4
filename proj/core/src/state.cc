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

#include "qpoisson/state.h"

#include <cmath>
#include <stdexcept>
#include <string>

namespace qpoisson {

namespace {

void check_num_qubits(std::size_t num_qubits) {
    if (num_qubits < 1 || num_qubits > kMaxQubits) {
        throw std::invalid_argument(
            "Qubit count " + std::to_string(num_qubits) + " is outside [1, " + std::to_string(kMaxQubits) + "].");
    }
}

bool all_finite(std::span<const Complex> values) {
    for (Complex z : values) {
        if (!std::isfinite(z.real()) || !std::isfinite(z.imag())) {
            return false;
        }
    }
    return true;
}

void check_targets(std::size_t num_qubits, const Matrix &u, std::span<const Qubit> targets) {
    std::size_t bits = matrix_bits(u);
    if (bits != targets.size()) {
        throw std::invalid_argument(
            "Operator acts on " + std::to_string(bits) + " qubits but " + std::to_string(targets.size()) +
            " targets were given.");
    }
    for (std::size_t a = 0; a < targets.size(); a++) {
        if (targets[a] >= num_qubits) {
            throw std::invalid_argument(
                "Target qubit " + std::to_string(targets[a]) + " is out of range for " + std::to_string(num_qubits) +
                " qubits.");
        }
        for (std::size_t b = 0; b < a; b++) {
            if (targets[a] == targets[b]) {
                throw std::invalid_argument("Duplicate target qubit " + std::to_string(targets[a]) + ".");
            }
        }
    }
}

}  // namespace

StateVector::StateVector(std::size_t num_qubits) : num_qubits_(num_qubits) {
    check_num_qubits(num_qubits);
    amplitudes_.assign(std::size_t{1} << num_qubits, Complex{});
    amplitudes_[0] = 1.0;
}

StateVector::StateVector(std::size_t num_qubits, std::vector<Complex> amplitudes)
    : num_qubits_(num_qubits), amplitudes_(std::move(amplitudes)) {
    check_num_qubits(num_qubits);
    if (amplitudes_.size() != (std::size_t{1} << num_qubits)) {
        throw std::invalid_argument("Statevector length must be 2^num_qubits.");
    }
    if (!all_finite(amplitudes_)) {
        throw std::invalid_argument("Statevector amplitudes must be finite.");
    }
    if (std::abs(norm_squared() - 1.0) > 1e-10) {
        throw std::invalid_argument("Statevector is not normalized.");
    }
}

StateVector StateVector::basis(std::size_t num_qubits, std::size_t index) {
    StateVector result(num_qubits);
    if (index >= result.dim()) {
        throw std::out_of_range("Basis index " + std::to_string(index) + " is out of range.");
    }
    result.amplitudes_[0] = 0.0;
    result.amplitudes_[index] = 1.0;
    return result;
}

double StateVector::norm_squared() const {
    double total = 0;
    for (Complex z : amplitudes_) {
        total += std::norm(z);
    }
    return total;
}

DensityMatrix::DensityMatrix(std::size_t num_qubits) : num_qubits_(num_qubits) {
    check_num_qubits(num_qubits);
    entries_.assign(dim() * dim(), Complex{});
    entries_[0] = 1.0;
}

DensityMatrix::DensityMatrix(std::size_t num_qubits, std::vector<Complex> entries)
    : num_qubits_(num_qubits), entries_(std::move(entries)) {
}

DensityMatrix DensityMatrix::from_pure(const StateVector &state) {
    std::size_t d = state.dim();
    std::vector<Complex> entries(d * d);
    auto amps = state.amplitudes();
    for (std::size_t r = 0; r < d; r++) {
        for (std::size_t c = 0; c < d; c++) {
            entries[r * d + c] = amps[r] * std::conj(amps[c]);
        }
    }
    return DensityMatrix(state.num_qubits(), std::move(entries));
}

DensityMatrix DensityMatrix::from_entries(std::size_t num_qubits, std::vector<Complex> entries) {
    check_num_qubits(num_qubits);
    std::size_t d = std::size_t{1} << num_qubits;
    if (entries.size() != d * d) {
        throw std::invalid_argument("Density matrix must have 4^num_qubits entries.");
    }
    if (!all_finite(entries)) {
        throw std::invalid_argument("Density matrix entries must be finite.");
    }
    DensityMatrix rho(num_qubits, std::move(entries));
    if (rho.hermiticity_error() > 1e-12) {
        throw std::invalid_argument("Density matrix is not Hermitian.");
    }
    if (std::abs(rho.trace() - 1.0) > 1e-9) {
        throw std::invalid_argument("Density matrix does not have unit trace.");
    }
    return rho;
}

Complex DensityMatrix::trace() const {
    Complex total{};
    for (std::size_t k = 0; k < dim(); k++) {
        total += entries_[k * dim() + k];
    }
    return total;
}

double DensityMatrix::hermiticity_error() const {
    double worst = 0;
    std::size_t d = dim();
    for (std::size_t r = 0; r < d; r++) {
        for (std::size_t c = r; c < d; c++) {
            worst = std::max(worst, std::abs(entries_[r * d + c] - std::conj(entries_[c * d + r])));
        }
    }
    return worst;
}

std::vector<double> DensityMatrix::diagonal() const {
    std::vector<double> result(dim());
    for (std::size_t k = 0; k < dim(); k++) {
        result[k] = entries_[k * dim() + k].real();
    }
    return result;
}

double DensityMatrix::max_abs_diff(const DensityMatrix &other) const {
    if (other.num_qubits_ != num_qubits_) {
        throw std::invalid_argument("Density matrix comparison dimension mismatch.");
    }
    double worst = 0;
    for (std::size_t k = 0; k < entries_.size(); k++) {
        worst = std::max(worst, std::abs(entries_[k] - other.entries_[k]));
    }
    return worst;
}

void apply_unitary_in_place(StateVector &state, const Matrix &u, std::span<const Qubit> targets) {
    check_targets(state.num_qubits(), u, targets);
    apply_matrix_to_bits(state.mutable_amplitudes(), state.num_qubits(), u, targets);
}

StateVector apply_unitary(StateVector state, const Matrix &u, std::span<const Qubit> targets) {
    apply_unitary_in_place(state, u, targets);
    return state;
}

void apply_unitary_dm_in_place(DensityMatrix &rho, const Matrix &u, std::span<const Qubit> targets) {
    std::size_t n = rho.num_qubits();
    check_targets(n, u, targets);
    std::vector<Qubit> row_bits;
    row_bits.reserve(targets.size());
    for (Qubit t : targets) {
        row_bits.push_back(t + static_cast<Qubit>(n));
    }
    apply_matrix_to_bits(rho.mutable_entries(), 2 * n, u, row_bits);
    apply_matrix_to_bits(rho.mutable_entries(), 2 * n, u.conjugate(), targets);
}

DensityMatrix apply_unitary_dm(DensityMatrix rho, const Matrix &u, std::span<const Qubit> targets) {
    apply_unitary_dm_in_place(rho, u, targets);
    return rho;
}

void apply_superoperator_in_place(DensityMatrix &rho, const Matrix &superop, std::span<const Qubit> targets) {
    std::size_t n = rho.num_qubits();
    std::size_t bits = matrix_bits(superop);
    if (bits != 2 * targets.size()) {
        throw std::invalid_argument("Channel arity does not match the number of targets.");
    }
    // The local superoperator index is (row bits, column bits); row bits high.
    std::vector<Qubit> sites;
    sites.reserve(bits);
    for (Qubit t : targets) {
        if (t >= n) {
            throw std::invalid_argument("Target qubit " + std::to_string(t) + " is out of range.");
        }
        sites.push_back(t + static_cast<Qubit>(n));
    }
    for (Qubit t : targets) {
        sites.push_back(t);
    }
    apply_matrix_to_bits(rho.mutable_entries(), 2 * n, superop, sites);
}

void apply_kraus_in_place(DensityMatrix &rho, const KrausChannel &channel, std::span<const Qubit> targets) {
    if (channel.num_qubits() != targets.size()) {
        throw std::invalid_argument(
            "Channel acts on " + std::to_string(channel.num_qubits()) + " qubits but " +
            std::to_string(targets.size()) + " targets were given.");
    }
    apply_superoperator_in_place(rho, channel.superoperator(), targets);
}

DensityMatrix apply_kraus(DensityMatrix rho, const KrausChannel &channel, std::span<const Qubit> targets) {
    apply_kraus_in_place(rho, channel, targets);
    return rho;
}

double basis_probability(const StateVector &state, std::size_t index) {
    if (index >= state.dim()) {
        throw std::out_of_range("Basis index " + std::to_string(index) + " is out of range.");
    }
    return std::norm(state.amplitudes()[index]);
}

}  // namespace qpoisson
