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

#ifndef QPOISSON_SIM_H
#define QPOISSON_SIM_H

#include <cstdint>
#include <map>
#include <optional>
#include <ostream>
#include <span>
#include <string>
#include <vector>

#include "qpoisson/gates.h"
#include "qpoisson/noise.h"
#include "qpoisson/state.h"

namespace qpoisson {

/// Which channel precedes which gate.
///
/// A gate acting on k qubits gets one copy of its single-qubit channel on each
/// of those qubits, applied before the gate unitary. Measure applies the
/// readout channel to the measured qubit. Barrier is never noisy.
struct NoiseModel {
    std::map<GateKind, KrausChannel> per_gate;
    std::optional<KrausChannel> readout;

    /// The same channel on every unitary gate kind and on readout.
    static NoiseModel uniform(const KrausChannel &channel);
    bool empty() const {
        return per_gate.empty() && !readout.has_value();
    }
};

/// Exact statevector evolution. Measure ops are skipped (a note is written to
/// `warnings` when given); Barrier is a no-op.
StateVector run_ideal(const Circuit &circuit, StateVector initial, std::ostream *warnings = nullptr);
/// Starts from |0...0>.
StateVector run_ideal(const Circuit &circuit, std::ostream *warnings = nullptr);

/// Exact density-matrix evolution under `noise`. Channels must be single-qubit.
/// Throws std::invalid_argument on a dimension mismatch or invalid channel.
DensityMatrix run_noisy(const Circuit &circuit, DensityMatrix initial, const NoiseModel &noise);
DensityMatrix run_noisy(const Circuit &circuit, const NoiseModel &noise);

struct MeasurementOutcome {
    /// Most significant measured qubit first.
    std::string bitstring;
    std::uint64_t count;
    double probability;
};

/// Multinomial samples from a Born distribution over `2^num_bits` outcomes.
/// Deterministic for a fixed seed. Outcomes with zero counts are omitted; the
/// rest are sorted by bitstring. Throws std::invalid_argument if shots == 0.
std::vector<MeasurementOutcome> sample_distribution(
    std::span<const double> probabilities, std::size_t num_bits, std::uint64_t shots, std::uint64_t seed);

/// Samples every qubit of the state.
std::vector<MeasurementOutcome> sample(const StateVector &state, std::uint64_t shots, std::uint64_t seed);
std::vector<MeasurementOutcome> sample(const DensityMatrix &rho, std::uint64_t shots, std::uint64_t seed);

struct QubitCondition {
    Qubit qubit;
    bool value;
};

struct PostSelection {
    /// Joint probabilities indexed by the readout register value (readout[0] is
    /// the least significant bit). They sum to `success_probability`.
    std::vector<double> probabilities;
    double success_probability;

    /// probabilities normalised by the success probability.
    std::vector<double> conditional() const;
};

/// Restricts the Born distribution to the branch where every condition holds
/// and marginalises it onto `readout`. When `readout` is empty, every
/// unconditioned qubit is read out in ascending order.
PostSelection post_select(
    std::span<const double> born, std::size_t num_qubits, std::span<const QubitCondition> conditions,
    std::span<const Qubit> readout = {});
PostSelection post_select(
    const StateVector &state, std::span<const QubitCondition> conditions, std::span<const Qubit> readout = {});
PostSelection post_select(
    const DensityMatrix &rho, std::span<const QubitCondition> conditions, std::span<const Qubit> readout = {});

/// Born distribution of a statevector.
std::vector<double> born_probabilities(const StateVector &state);

}  // namespace qpoisson

#endif
