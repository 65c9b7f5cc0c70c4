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

#ifndef QPOISSON_NOISE_H
#define QPOISSON_NOISE_H

#include <optional>
#include <string>
#include <string_view>
#include <vector>

#include "qpoisson/matrix.h"

namespace qpoisson {

enum class ChannelKind {
    AmplitudeDamping,
    PhaseDamping,
    BitFlip,
    Depolarizing,
    /// Depolarizing after bit flip after phase damping after amplitude damping,
    /// all at the same intensity.
    Composite,
};

/// A completely positive trace-preserving map in Kraus form,
/// rho -> sum_k E_k rho E_k^dagger.
///
/// All operators share one dimension. The named constructors build the single
/// qubit channels; `KrausChannel::custom` accepts anything that passes the
/// completeness check.
class KrausChannel {
   public:
    static KrausChannel amplitude_damping(double p);
    static KrausChannel phase_damping(double p);
    /// Flips with probability p (E0 = sqrt(1-p) I, E1 = sqrt(p) X).
    static KrausChannel bit_flip(double p);
    /// rho -> (1-p) rho + p I/2.
    static KrausChannel depolarizing(double p);
    static KrausChannel composite(double p);
    static KrausChannel of_kind(ChannelKind kind, double p);
    /// Throws std::invalid_argument if the operators are not complete within 1e-12.
    static KrausChannel custom(std::vector<Matrix> operators, std::string label = "custom");

    ChannelKind kind() const {
        return kind_;
    }
    double p() const {
        return p_;
    }
    const std::vector<Matrix> &operators() const {
        return operators_;
    }
    std::size_t num_qubits() const;

    /// sum_k E_k^dagger E_k.
    Matrix completeness() const;
    double completeness_error() const;

    /// sum_k E_k (x) conj(E_k), acting on the (row bits, column bits) of a
    /// vectorised density matrix. Row bits are the high half of the local index.
    Matrix superoperator() const;

    /// Channel composition: `this` applied first, then `next`.
    KrausChannel then(const KrausChannel &next) const;

    std::string name() const;

   private:
    KrausChannel(ChannelKind kind, double p, std::vector<Matrix> operators, std::string label);

    ChannelKind kind_;
    double p_;
    std::vector<Matrix> operators_;
    std::string label_;
};

/// Short names used on the command line and in reports: ad, pd, bf, dp, composite.
std::string_view channel_short_name(ChannelKind kind);
std::optional<ChannelKind> channel_kind_from_short_name(std::string_view name);

}  // namespace qpoisson

#endif
