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

#ifndef QPOISSON_ANALYSIS_H
#define QPOISSON_ANALYSIS_H

#include <cstdint>
#include <optional>
#include <span>
#include <string>
#include <vector>

#include "qpoisson/gates.h"
#include "qpoisson/noise.h"
#include "qpoisson/sim.h"

namespace qpoisson {

/// p_i = 1e-4 * 700^(i / 10).
double sweep_intensity(int i);
/// sweep_intensity over `i_values`. Throws std::invalid_argument for i < 1.
std::vector<double> sweep_schedule(std::span<const int> i_values);

struct Deviation {
    std::vector<double> per_basis;  // |p_noise - p_theory| / p_theory
    double mean;
};

/// Throws std::invalid_argument on a length mismatch, an empty basis set or a
/// theoretical probability that is not positive.
Deviation deviation(std::span<const double> p_noise, std::span<const double> p_theory);

/// Gate counts under the accountings used in reports.
struct CircuitMetrics {
    /// Every gate application except Barrier and Measure, a CCX counting once.
    /// This is how the listing comments count "one & two qubit gates".
    std::size_t gate_count = 0;
    /// Gate applications on at most two qubits.
    std::size_t one_two_qubit_gate_count = 0;
    std::size_t ccx_count = 0;
    /// CCX expanded to 6 CX + 2 H + 7 T/Tdg (15 gates), SWAP to 3 CX, every
    /// other gate counted once.
    std::size_t decomposed_basic_gate_count = 0;
    /// Longest chain of gates sharing qubits. Barriers and measures are skipped.
    std::size_t depth = 0;
};

CircuitMetrics circuit_metrics(const Circuit &circuit);

enum class SweepMode { Exact, Sampled };
/// Which circuit a sweep runs: the compiled-in listing or the generic builder.
enum class SweepCircuit { Appendix, Builder };

std::string_view sweep_mode_name(SweepMode mode);
std::string_view sweep_circuit_name(SweepCircuit source);

struct SweepConfig {
    std::size_t n = 2;
    std::vector<ChannelKind> noise_types{
        ChannelKind::AmplitudeDamping, ChannelKind::PhaseDamping, ChannelKind::BitFlip, ChannelKind::Depolarizing};
    int i_min = 1;
    int i_max = 9;
    /// When nonempty, replaces the p_i schedule; cell k gets i = k + 1.
    std::vector<double> intensities;
    SweepMode mode = SweepMode::Exact;
    SweepCircuit source = SweepCircuit::Appendix;
    /// Sampled mode only.
    std::size_t trials = 3;
    std::uint64_t shots = 1024;
    std::uint64_t seed = 0;
    /// 0 picks the hardware concurrency.
    std::size_t threads = 0;

    /// Throws std::invalid_argument describing the first bad field.
    void validate() const;
};

/// A circuit with its success pattern and solution register.
struct SweepTarget {
    std::string name;
    Circuit circuit;
    std::vector<QubitCondition> success;
    std::vector<Qubit> readout;  // Least significant first.
};

/// Builds the target for config.n and config.source. The builder target uses
/// the built-in right-hand side.
SweepTarget sweep_target(std::size_t n, SweepCircuit source);

struct DeviationRow {
    ChannelKind noise;
    int i;
    double p;
    /// Joint success probabilities of the targeted bases j = 1..N-1.
    std::vector<double> noisy_probs;
    std::vector<double> D;
    double Dbar;
};

struct DeviationReport {
    std::size_t n;
    std::string circuit_name;
    std::string circuit_hash;
    CircuitMetrics metrics;
    SweepMode mode;
    std::uint64_t seed;
    std::size_t trials;
    std::uint64_t shots;
    /// Basis labels j = 1..N-1, most significant bit first.
    std::vector<std::string> bases;
    std::vector<double> theory;
    /// Sorted by (noise, i).
    std::vector<DeviationRow> rows;
};

/// Runs every (noise, i) cell on a worker pool. Exact mode has no randomness;
/// sampled mode seeds each (noise, i, trial) independently, so the report
/// does not depend on thread count or scheduling.
DeviationReport run_sweep(const SweepConfig &config);
DeviationReport run_sweep(const SweepConfig &config, const SweepTarget &target);

/// p where the curve first rises through `target`, interpolating linearly in
/// D against log p. Throws std::invalid_argument for fewer than two points or
/// mismatched lengths and std::domain_error when no consecutive pair
/// straddles the target.
double find_threshold(std::span<const double> p, std::span<const double> dbar, double target = 0.10);

struct Threshold {
    ChannelKind noise;
    std::optional<double> p;
};

/// One threshold per channel in the report, in report order.
std::vector<Threshold> channel_thresholds(const DeviationReport &report, double target = 0.10);
/// The channel crossing the target at the smallest p, if any crosses.
std::optional<Threshold> worst_threshold(std::span<const Threshold> thresholds);

/// `noise,i,p,basis,D,Dbar`, one line per (row, basis).
std::string report_csv(const DeviationReport &report);
/// Metadata, theory probabilities, per-row D-bar and thresholds.
std::string report_json(const DeviationReport &report, double target = 0.10);

/// 64-bit FNV-1a of the serialized circuit, as 16 hex digits.
std::string circuit_hash(const Circuit &circuit);

}  // namespace qpoisson

#endif
