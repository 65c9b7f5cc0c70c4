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

#include "qpoisson/noise.h"

#include <cmath>
#include <stdexcept>

namespace qpoisson {

namespace {

constexpr double kCompletenessTolerance = 1e-12;

void check_probability(double p) {
    if (!(p >= 0.0 && p <= 1.0)) {
        throw std::invalid_argument("Noise intensity p=" + std::to_string(p) + " is outside [0, 1].");
    }
}

const Matrix &pauli_x() {
    static const Matrix m{{0, 1}, {1, 0}};
    return m;
}
const Matrix &pauli_y() {
    static const Matrix m{{0, Complex{0, -1}}, {Complex{0, 1}, 0}};
    return m;
}
const Matrix &pauli_z() {
    static const Matrix m{{1, 0}, {0, -1}};
    return m;
}

}  // namespace

KrausChannel::KrausChannel(ChannelKind kind, double p, std::vector<Matrix> operators, std::string label)
    : kind_(kind), p_(p), operators_(std::move(operators)), label_(std::move(label)) {
}

KrausChannel KrausChannel::amplitude_damping(double p) {
    check_probability(p);
    Matrix e0{{1, 0}, {0, std::sqrt(1 - p)}};
    Matrix e1{{0, std::sqrt(p)}, {0, 0}};
    return KrausChannel(ChannelKind::AmplitudeDamping, p, {e0, e1}, "");
}

KrausChannel KrausChannel::phase_damping(double p) {
    check_probability(p);
    Matrix e0{{1, 0}, {0, std::sqrt(1 - p)}};
    Matrix e1{{0, 0}, {0, std::sqrt(p)}};
    return KrausChannel(ChannelKind::PhaseDamping, p, {e0, e1}, "");
}

KrausChannel KrausChannel::bit_flip(double p) {
    check_probability(p);
    return KrausChannel(
        ChannelKind::BitFlip, p, {Matrix::identity(2) * std::sqrt(1 - p), pauli_x() * std::sqrt(p)}, "");
}

KrausChannel KrausChannel::depolarizing(double p) {
    check_probability(p);
    double s = std::sqrt(p) / 2;
    return KrausChannel(
        ChannelKind::Depolarizing,
        p,
        {Matrix::identity(2) * std::sqrt(1 - 3 * p / 4), pauli_x() * s, pauli_y() * s, pauli_z() * s},
        "");
}

KrausChannel KrausChannel::composite(double p) {
    KrausChannel c = amplitude_damping(p).then(phase_damping(p)).then(bit_flip(p)).then(depolarizing(p));
    c.kind_ = ChannelKind::Composite;
    c.p_ = p;
    c.label_.clear();
    return c;
}

KrausChannel KrausChannel::of_kind(ChannelKind kind, double p) {
    switch (kind) {
        case ChannelKind::AmplitudeDamping:
            return amplitude_damping(p);
        case ChannelKind::PhaseDamping:
            return phase_damping(p);
        case ChannelKind::BitFlip:
            return bit_flip(p);
        case ChannelKind::Depolarizing:
            return depolarizing(p);
        case ChannelKind::Composite:
            return composite(p);
    }
    throw std::invalid_argument("Unknown channel kind.");
}

KrausChannel KrausChannel::custom(std::vector<Matrix> operators, std::string label) {
    if (operators.empty()) {
        throw std::invalid_argument("A Kraus channel needs at least one operator.");
    }
    for (const auto &op : operators) {
        if (op.dim() != operators.front().dim()) {
            throw std::invalid_argument("Kraus operators must share one dimension.");
        }
    }
    matrix_bits(operators.front());
    KrausChannel c(ChannelKind::Composite, 0.0, std::move(operators), std::move(label));
    if (c.completeness_error() > kCompletenessTolerance) {
        throw std::invalid_argument("Kraus operators do not satisfy sum E^dagger E = I.");
    }
    return c;
}

std::size_t KrausChannel::num_qubits() const {
    return matrix_bits(operators_.front());
}

Matrix KrausChannel::completeness() const {
    Matrix acc(operators_.front().dim());
    for (const auto &e : operators_) {
        acc = acc + e.adjoint() * e;
    }
    return acc;
}

double KrausChannel::completeness_error() const {
    return completeness().max_abs_diff(Matrix::identity(operators_.front().dim()));
}

Matrix KrausChannel::superoperator() const {
    std::size_t d = operators_.front().dim();
    Matrix acc(d * d);
    for (const auto &e : operators_) {
        acc = acc + kron(e, e.conjugate());
    }
    return acc;
}

KrausChannel KrausChannel::then(const KrausChannel &next) const {
    if (next.operators_.front().dim() != operators_.front().dim()) {
        throw std::invalid_argument("Cannot compose channels of different arity.");
    }
    std::vector<Matrix> ops;
    ops.reserve(operators_.size() * next.operators_.size());
    for (const auto &b : next.operators_) {
        for (const auto &a : operators_) {
            ops.push_back(b * a);
        }
    }
    return KrausChannel(ChannelKind::Composite, p_, std::move(ops), name() + "+" + next.name());
}

std::string KrausChannel::name() const {
    if (!label_.empty()) {
        return label_;
    }
    return std::string(channel_short_name(kind_));
}

std::string_view channel_short_name(ChannelKind kind) {
    switch (kind) {
        case ChannelKind::AmplitudeDamping:
            return "ad";
        case ChannelKind::PhaseDamping:
            return "pd";
        case ChannelKind::BitFlip:
            return "bf";
        case ChannelKind::Depolarizing:
            return "dp";
        case ChannelKind::Composite:
            return "composite";
    }
    return "?";
}

std::optional<ChannelKind> channel_kind_from_short_name(std::string_view name) {
    for (auto kind :
         {ChannelKind::AmplitudeDamping,
          ChannelKind::PhaseDamping,
          ChannelKind::BitFlip,
          ChannelKind::Depolarizing,
          ChannelKind::Composite}) {
        if (channel_short_name(kind) == name) {
            return kind;
        }
    }
    return std::nullopt;
}

}  // namespace qpoisson
