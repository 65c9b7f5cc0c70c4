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

#include "qpoisson/sim.h"

#include <algorithm>
#include <cmath>
#include <random>
#include <stdexcept>
#include <string>

namespace qpoisson {

namespace {

void check_dims(const Circuit &circuit, std::size_t num_qubits) {
    if (circuit.num_qubits() != num_qubits) {
        throw std::invalid_argument(
            "Circuit has " + std::to_string(circuit.num_qubits()) + " qubits but the state has " +
            std::to_string(num_qubits) + ".");
    }
}

void check_channel(const KrausChannel &channel) {
    if (channel.num_qubits() != 1) {
        throw std::invalid_argument("Noise channels must act on a single qubit.");
    }
    if (channel.completeness_error() > 1e-12) {
        throw std::invalid_argument("Noise channel " + channel.name() + " is not trace preserving.");
    }
}

std::string bits_of(std::size_t value, std::size_t num_bits) {
    std::string s(num_bits, '0');
    for (std::size_t b = 0; b < num_bits; b++) {
        if ((value >> b) & 1) {
            s[num_bits - 1 - b] = '1';
        }
    }
    return s;
}

}  // namespace

NoiseModel NoiseModel::uniform(const KrausChannel &channel) {
    NoiseModel model;
    for (std::size_t k = 0; k <= static_cast<std::size_t>(GateKind::Measure); k++) {
        auto kind = static_cast<GateKind>(k);
        if (gate_info(kind).unitary) {
            model.per_gate.emplace(kind, channel);
        }
    }
    model.readout = channel;
    return model;
}

StateVector run_ideal(const Circuit &circuit, StateVector initial, std::ostream *warnings) {
    check_dims(circuit, initial.num_qubits());
    std::size_t stripped = 0;
    for (const auto &op : circuit.ops()) {
        if (op.kind == GateKind::Barrier) {
            continue;
        }
        if (op.kind == GateKind::Measure) {
            stripped++;
            continue;
        }
        apply_unitary_in_place(initial, unitary_of(op.kind, op.angle), op.qubits);
    }
    if (stripped != 0 && warnings != nullptr) {
        *warnings << "warning: ideal run ignored " << stripped << " measure op(s)\n";
    }
    return initial;
}

StateVector run_ideal(const Circuit &circuit, std::ostream *warnings) {
    return run_ideal(circuit, StateVector(circuit.num_qubits()), warnings);
}

DensityMatrix run_noisy(const Circuit &circuit, DensityMatrix rho, const NoiseModel &noise) {
    check_dims(circuit, rho.num_qubits());
    std::map<GateKind, Matrix> superops;
    for (const auto &[kind, channel] : noise.per_gate) {
        check_channel(channel);
        superops.emplace(kind, channel.superoperator());
    }
    std::optional<Matrix> readout;
    if (noise.readout.has_value()) {
        check_channel(*noise.readout);
        readout = noise.readout->superoperator();
    }
    for (const auto &op : circuit.ops()) {
        if (op.kind == GateKind::Barrier) {
            continue;
        }
        if (op.kind == GateKind::Measure) {
            if (readout.has_value()) {
                apply_superoperator_in_place(rho, *readout, op.qubits);
            }
            continue;
        }
        auto it = superops.find(op.kind);
        if (it != superops.end()) {
            for (Qubit q : op.qubits) {
                Qubit site[1] = {q};
                apply_superoperator_in_place(rho, it->second, site);
            }
        }
        apply_unitary_dm_in_place(rho, unitary_of(op.kind, op.angle), op.qubits);
    }
    return rho;
}

DensityMatrix run_noisy(const Circuit &circuit, const NoiseModel &noise) {
    return run_noisy(circuit, DensityMatrix(circuit.num_qubits()), noise);
}

std::vector<MeasurementOutcome> sample_distribution(
    std::span<const double> probabilities, std::size_t num_bits, std::uint64_t shots, std::uint64_t seed) {
    if (shots == 0) {
        throw std::invalid_argument("shots must be at least 1.");
    }
    if (probabilities.size() != (std::size_t{1} << num_bits)) {
        throw std::invalid_argument("Distribution length must be 2^num_bits.");
    }
    double total = 0;
    for (double p : probabilities) {
        if (!(p >= -1e-12)) {
            throw std::invalid_argument("Probabilities must be nonnegative.");
        }
        total += std::max(p, 0.0);
    }
    if (!(total > 0)) {
        throw std::invalid_argument("Distribution has no mass.");
    }
    // Multinomial draw as a chain of conditional binomials.
    std::mt19937_64 rng(seed);
    std::vector<MeasurementOutcome> result;
    std::uint64_t left = shots;
    double mass_left = total;
    for (std::size_t k = 0; k < probabilities.size() && left > 0; k++) {
        double p = std::max(probabilities[k], 0.0);
        std::uint64_t count;
        if (k + 1 == probabilities.size() || p >= mass_left) {
            count = left;
        } else {
            std::binomial_distribution<std::uint64_t> draw(left, std::clamp(p / mass_left, 0.0, 1.0));
            count = draw(rng);
        }
        mass_left -= p;
        left -= count;
        if (count > 0) {
            result.push_back({bits_of(k, num_bits), count, static_cast<double>(count) / static_cast<double>(shots)});
        }
    }
    return result;
}

std::vector<double> born_probabilities(const StateVector &state) {
    std::vector<double> result(state.dim());
    for (std::size_t k = 0; k < state.dim(); k++) {
        result[k] = std::norm(state.amplitudes()[k]);
    }
    return result;
}

std::vector<MeasurementOutcome> sample(const StateVector &state, std::uint64_t shots, std::uint64_t seed) {
    return sample_distribution(born_probabilities(state), state.num_qubits(), shots, seed);
}

std::vector<MeasurementOutcome> sample(const DensityMatrix &rho, std::uint64_t shots, std::uint64_t seed) {
    return sample_distribution(rho.diagonal(), rho.num_qubits(), shots, seed);
}

std::vector<double> PostSelection::conditional() const {
    std::vector<double> result = probabilities;
    if (success_probability > 0) {
        for (double &p : result) {
            p /= success_probability;
        }
    }
    return result;
}

PostSelection post_select(
    std::span<const double> born, std::size_t num_qubits, std::span<const QubitCondition> conditions,
    std::span<const Qubit> readout) {
    if (born.size() != (std::size_t{1} << num_qubits)) {
        throw std::invalid_argument("Distribution length must be 2^num_qubits.");
    }
    std::size_t mask = 0;
    std::size_t want = 0;
    for (const auto &c : conditions) {
        if (c.qubit >= num_qubits) {
            throw std::invalid_argument("Condition qubit " + std::to_string(c.qubit) + " is out of range.");
        }
        if ((mask >> c.qubit) & 1) {
            throw std::invalid_argument("Condition qubit " + std::to_string(c.qubit) + " appears twice.");
        }
        mask |= std::size_t{1} << c.qubit;
        if (c.value) {
            want |= std::size_t{1} << c.qubit;
        }
    }
    std::vector<Qubit> out(readout.begin(), readout.end());
    if (out.empty()) {
        for (Qubit q = 0; q < num_qubits; q++) {
            if (!((mask >> q) & 1)) {
                out.push_back(q);
            }
        }
    }
    for (std::size_t a = 0; a < out.size(); a++) {
        if (out[a] >= num_qubits) {
            throw std::invalid_argument("Readout qubit " + std::to_string(out[a]) + " is out of range.");
        }
        for (std::size_t b = 0; b < a; b++) {
            if (out[a] == out[b]) {
                throw std::invalid_argument("Readout qubit " + std::to_string(out[a]) + " appears twice.");
            }
        }
    }
    PostSelection result;
    result.probabilities.assign(std::size_t{1} << out.size(), 0.0);
    result.success_probability = 0;
    for (std::size_t k = 0; k < born.size(); k++) {
        if ((k & mask) != want) {
            continue;
        }
        std::size_t r = 0;
        for (std::size_t b = 0; b < out.size(); b++) {
            r |= ((k >> out[b]) & 1) << b;
        }
        result.probabilities[r] += born[k];
        result.success_probability += born[k];
    }
    return result;
}

PostSelection post_select(
    const StateVector &state, std::span<const QubitCondition> conditions, std::span<const Qubit> readout) {
    return post_select(born_probabilities(state), state.num_qubits(), conditions, readout);
}

PostSelection post_select(
    const DensityMatrix &rho, std::span<const QubitCondition> conditions, std::span<const Qubit> readout) {
    return post_select(rho.diagonal(), rho.num_qubits(), conditions, readout);
}

}  // namespace qpoisson
