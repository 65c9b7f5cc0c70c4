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

#include "qpoisson/matrix.h"

#include <algorithm>
#include <array>
#include <bit>
#include <stdexcept>
#include <string>

namespace qpoisson {

Matrix::Matrix(std::size_t dim) : dim_(dim), data_(dim * dim) {
}

Matrix::Matrix(std::initializer_list<std::initializer_list<Complex>> rows) : dim_(rows.size()) {
    data_.reserve(dim_ * dim_);
    for (const auto &row : rows) {
        if (row.size() != dim_) {
            throw std::invalid_argument("Matrix rows must form a square matrix.");
        }
        data_.insert(data_.end(), row.begin(), row.end());
    }
}

Matrix Matrix::identity(std::size_t dim) {
    Matrix result(dim);
    for (std::size_t k = 0; k < dim; k++) {
        result(k, k) = 1.0;
    }
    return result;
}

Matrix Matrix::diagonal(std::span<const Complex> diag) {
    Matrix result(diag.size());
    for (std::size_t k = 0; k < diag.size(); k++) {
        result(k, k) = diag[k];
    }
    return result;
}

Matrix Matrix::adjoint() const {
    Matrix result(dim_);
    for (std::size_t r = 0; r < dim_; r++) {
        for (std::size_t c = 0; c < dim_; c++) {
            result(c, r) = std::conj((*this)(r, c));
        }
    }
    return result;
}

Matrix Matrix::conjugate() const {
    Matrix result(dim_);
    std::transform(data_.begin(), data_.end(), result.data_.begin(), [](Complex z) {
        return std::conj(z);
    });
    return result;
}

Matrix Matrix::operator*(const Matrix &other) const {
    if (other.dim_ != dim_) {
        throw std::invalid_argument("Matrix product dimension mismatch.");
    }
    Matrix result(dim_);
    for (std::size_t r = 0; r < dim_; r++) {
        for (std::size_t k = 0; k < dim_; k++) {
            Complex a = (*this)(r, k);
            if (a == Complex{}) {
                continue;
            }
            for (std::size_t c = 0; c < dim_; c++) {
                result(r, c) += a * other(k, c);
            }
        }
    }
    return result;
}

Matrix Matrix::operator*(Complex scalar) const {
    Matrix result = *this;
    for (auto &z : result.data_) {
        z *= scalar;
    }
    return result;
}

Matrix Matrix::operator+(const Matrix &other) const {
    if (other.dim_ != dim_) {
        throw std::invalid_argument("Matrix sum dimension mismatch.");
    }
    Matrix result = *this;
    for (std::size_t k = 0; k < data_.size(); k++) {
        result.data_[k] += other.data_[k];
    }
    return result;
}

double Matrix::max_abs_diff(const Matrix &other) const {
    if (other.dim_ != dim_) {
        throw std::invalid_argument("Matrix comparison dimension mismatch.");
    }
    double worst = 0;
    for (std::size_t k = 0; k < data_.size(); k++) {
        worst = std::max(worst, std::abs(data_[k] - other.data_[k]));
    }
    return worst;
}

bool Matrix::is_unitary(double tolerance) const {
    return ((*this) * adjoint()).max_abs_diff(identity(dim_)) <= tolerance;
}

Matrix kron(const Matrix &left, const Matrix &right) {
    std::size_t dl = left.dim();
    std::size_t dr = right.dim();
    Matrix result(dl * dr);
    for (std::size_t r1 = 0; r1 < dl; r1++) {
        for (std::size_t c1 = 0; c1 < dl; c1++) {
            Complex a = left(r1, c1);
            for (std::size_t r2 = 0; r2 < dr; r2++) {
                for (std::size_t c2 = 0; c2 < dr; c2++) {
                    result(r1 * dr + r2, c1 * dr + c2) = a * right(r2, c2);
                }
            }
        }
    }
    return result;
}

std::size_t matrix_bits(const Matrix &m) {
    if (m.dim() == 0 || !std::has_single_bit(m.dim())) {
        throw std::invalid_argument("Matrix dimension " + std::to_string(m.dim()) + " is not a power of two.");
    }
    return static_cast<std::size_t>(std::countr_zero(m.dim()));
}

namespace {

// Spreads the bits of `i` over the positions not in `targets`.
std::size_t insert_zero_bits(std::size_t i, std::span<const Qubit> targets) {
    std::array<Qubit, 64> sorted{};
    std::size_t k = targets.size();
    std::copy(targets.begin(), targets.end(), sorted.begin());
    std::sort(sorted.begin(), sorted.begin() + static_cast<std::ptrdiff_t>(k));
    for (std::size_t b = 0; b < k; b++) {
        Qubit t = sorted[b];
        i = ((i >> t) << (t + 1)) | (i & ((std::size_t{1} << t) - 1));
    }
    return i;
}

// Fixed-size kernel; skips zero matrix entries.
template <std::size_t K>
void apply_small(std::span<Complex> amplitudes, const Matrix &m, std::span<const Qubit> targets) {
    constexpr std::size_t D = std::size_t{1} << K;
    std::array<std::size_t, D> offsets{};
    for (std::size_t local = 0; local < D; local++) {
        for (std::size_t b = 0; b < K; b++) {
            if ((local >> (K - 1 - b)) & 1) {
                offsets[local] |= std::size_t{1} << targets[b];
            }
        }
    }
    std::array<Qubit, K> sorted{};
    std::copy(targets.begin(), targets.end(), sorted.begin());
    std::sort(sorted.begin(), sorted.end());
    std::array<std::size_t, K> low_masks{};
    for (std::size_t b = 0; b < K; b++) {
        low_masks[b] = (std::size_t{1} << sorted[b]) - 1;
    }
    struct Entry {
        std::uint8_t row;
        std::uint8_t col;
        double re;
        double im;
    };
    std::array<Entry, D * D> entries{};
    std::size_t num_entries = 0;
    for (std::size_t r = 0; r < D; r++) {
        for (std::size_t c = 0; c < D; c++) {
            Complex v = m(r, c);
            if (v != Complex{}) {
                entries[num_entries++] = {static_cast<std::uint8_t>(r), static_cast<std::uint8_t>(c), v.real(), v.imag()};
            }
        }
    }

    Complex *amps = amplitudes.data();
    std::size_t count = amplitudes.size() >> K;
    for (std::size_t i = 0; i < count; i++) {
        std::size_t base = i;
        for (std::size_t b = 0; b < K; b++) {
            base = ((base & ~low_masks[b]) << 1) | (base & low_masks[b]);
        }
        std::array<double, D> in_re, in_im, out_re{}, out_im{};
        for (std::size_t local = 0; local < D; local++) {
            Complex z = amps[base | offsets[local]];
            in_re[local] = z.real();
            in_im[local] = z.imag();
        }
        for (std::size_t e = 0; e < num_entries; e++) {
            const Entry &en = entries[e];
            out_re[en.row] += en.re * in_re[en.col] - en.im * in_im[en.col];
            out_im[en.row] += en.re * in_im[en.col] + en.im * in_re[en.col];
        }
        for (std::size_t local = 0; local < D; local++) {
            amps[base | offsets[local]] = Complex{out_re[local], out_im[local]};
        }
    }
}

}  // namespace

void apply_matrix_to_bits(
    std::span<Complex> amplitudes, std::size_t num_bits, const Matrix &m, std::span<const Qubit> targets) {
    std::size_t k = matrix_bits(m);
    if (targets.size() != k) {
        throw std::invalid_argument(
            "Matrix acts on " + std::to_string(k) + " bits but " + std::to_string(targets.size()) +
            " targets were given.");
    }
    if (amplitudes.size() != (std::size_t{1} << num_bits)) {
        throw std::invalid_argument("Amplitude vector length does not match the bit count.");
    }
    std::uint64_t target_mask = 0;
    for (Qubit t : targets) {
        if (t >= num_bits) {
            throw std::invalid_argument("Target bit " + std::to_string(t) + " is out of range.");
        }
        if (target_mask & (std::uint64_t{1} << t)) {
            throw std::invalid_argument("Duplicate target bit " + std::to_string(t) + ".");
        }
        target_mask |= std::uint64_t{1} << t;
    }

    if (k >= 1 && k <= 3) {
        switch (k) {
            case 1:
                apply_small<1>(amplitudes, m, targets);
                return;
            case 2:
                apply_small<2>(amplitudes, m, targets);
                return;
            default:
                apply_small<3>(amplitudes, m, targets);
                return;
        }
    }

    // offsets[local] = global index contribution of local index `local`.
    std::size_t local_dim = m.dim();
    std::vector<std::size_t> offsets(local_dim, 0);
    for (std::size_t local = 0; local < local_dim; local++) {
        for (std::size_t b = 0; b < k; b++) {
            if ((local >> (k - 1 - b)) & 1) {
                offsets[local] |= std::size_t{1} << targets[b];
            }
        }
    }
    std::vector<Complex> in(local_dim);
    std::size_t count = amplitudes.size() >> k;
    for (std::size_t i = 0; i < count; i++) {
        std::size_t base = insert_zero_bits(i, targets);
        for (std::size_t local = 0; local < local_dim; local++) {
            in[local] = amplitudes[base | offsets[local]];
        }
        for (std::size_t r = 0; r < local_dim; r++) {
            double re = 0;
            double im = 0;
            for (std::size_t c = 0; c < local_dim; c++) {
                Complex v = m(r, c);
                re += v.real() * in[c].real() - v.imag() * in[c].imag();
                im += v.real() * in[c].imag() + v.imag() * in[c].real();
            }
            amplitudes[base | offsets[r]] = Complex{re, im};
        }
    }
}

}  // namespace qpoisson
