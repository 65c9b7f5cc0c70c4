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

#include "qpoisson/analysis.h"

#include <algorithm>
#include <atomic>
#include <cmath>
#include <cstdio>
#include <exception>
#include <mutex>
#include <nlohmann/json.hpp>
#include <random>
#include <stdexcept>
#include <thread>

#include "qpoisson/appendix.h"
#include "qpoisson/poisson.h"
#include "qpoisson/qasm.h"

namespace qpoisson {

namespace {

std::string bits_msb_first(std::size_t value, std::size_t width) {
    std::string s(width, '0');
    for (std::size_t b = 0; b < width; b++) {
        if ((value >> b) & 1) {
            s[width - 1 - b] = '1';
        }
    }
    return s;
}

std::uint64_t cell_seed(std::uint64_t seed, ChannelKind kind, int i, std::size_t trial) {
    std::seed_seq seq{
        static_cast<std::uint32_t>(seed), static_cast<std::uint32_t>(seed >> 32),
        static_cast<std::uint32_t>(kind), static_cast<std::uint32_t>(i), static_cast<std::uint32_t>(trial)};
    std::uint32_t out[2];
    seq.generate(out, out + 2);
    return (static_cast<std::uint64_t>(out[0]) << 32) | out[1];
}

std::string fmt(const char *spec, double x) {
    char buf[64];
    std::snprintf(buf, sizeof(buf), spec, x);
    return buf;
}

// Joint probabilities of bases 1..N-1 from a success post-selection.
std::vector<double> targeted(const PostSelection &selected) {
    return std::vector<double>(selected.probabilities.begin() + 1, selected.probabilities.end());
}

}  // namespace

double sweep_intensity(int i) {
    if (i < 1) {
        throw std::invalid_argument("Sweep index must be >= 1, got " + std::to_string(i) + ".");
    }
    return 1e-4 * std::pow(700.0, 0.1 * i);
}

std::vector<double> sweep_schedule(std::span<const int> i_values) {
    std::vector<double> result;
    for (int i : i_values) {
        result.push_back(sweep_intensity(i));
    }
    return result;
}

Deviation deviation(std::span<const double> p_noise, std::span<const double> p_theory) {
    if (p_noise.size() != p_theory.size()) {
        throw std::invalid_argument("Noisy and theoretical distributions differ in length.");
    }
    if (p_theory.empty()) {
        throw std::invalid_argument("Deviation needs at least one basis.");
    }
    Deviation result{{}, 0.0};
    for (std::size_t k = 0; k < p_theory.size(); k++) {
        if (!(p_theory[k] > 0)) {
            throw std::invalid_argument("Theoretical probability of basis " + std::to_string(k) + " is not positive.");
        }
        double d = std::abs((p_noise[k] - p_theory[k]) / p_theory[k]);
        result.per_basis.push_back(d);
        result.mean += d;
    }
    result.mean /= static_cast<double>(p_theory.size());
    return result;
}

CircuitMetrics circuit_metrics(const Circuit &circuit) {
    CircuitMetrics m;
    std::vector<std::size_t> level(circuit.num_qubits(), 0);
    for (const auto &op : circuit.ops()) {
        if (op.kind == GateKind::Barrier || op.kind == GateKind::Measure) {
            continue;
        }
        m.gate_count++;
        if (op.qubits.size() <= 2) {
            m.one_two_qubit_gate_count++;
        }
        if (op.kind == GateKind::CCX) {
            m.ccx_count++;
            m.decomposed_basic_gate_count += 15;
        } else if (op.kind == GateKind::SWAP) {
            m.decomposed_basic_gate_count += 3;
        } else {
            m.decomposed_basic_gate_count++;
        }
        std::size_t start = 0;
        for (Qubit q : op.qubits) {
            start = std::max(start, level[q]);
        }
        for (Qubit q : op.qubits) {
            level[q] = start + 1;
        }
        m.depth = std::max(m.depth, start + 1);
    }
    return m;
}

std::string_view sweep_mode_name(SweepMode mode) {
    return mode == SweepMode::Exact ? "exact" : "sampled";
}

std::string_view sweep_circuit_name(SweepCircuit source) {
    return source == SweepCircuit::Appendix ? "appendix" : "builder";
}

void SweepConfig::validate() const {
    if (noise_types.empty()) {
        throw std::invalid_argument("At least one noise type is required.");
    }
    if (intensities.empty()) {
        if (i_min < 1 || i_max < i_min) {
            throw std::invalid_argument(
                "Sweep range [" + std::to_string(i_min) + ", " + std::to_string(i_max) + "] is empty or starts below 1.");
        }
    }
    for (double p : intensities) {
        if (!(p >= 0 && p <= 1)) {
            throw std::invalid_argument("Noise intensities must lie in [0, 1].");
        }
    }
    if (trials < 1) {
        throw std::invalid_argument("trials must be at least 1.");
    }
    if (mode == SweepMode::Sampled && shots < 1) {
        throw std::invalid_argument("shots must be at least 1.");
    }
    if (source == SweepCircuit::Appendix && n != 2 && n != 3) {
        throw std::invalid_argument("Built-in listings exist for n = 2 and n = 3 only; use the builder circuit.");
    }
    if (n < 2 || 3 * n > kMaxQubits) {
        throw std::invalid_argument("Sweep size n = " + std::to_string(n) + " is unsupported.");
    }
}

SweepTarget sweep_target(std::size_t n, SweepCircuit source) {
    if (source == SweepCircuit::Appendix) {
        const AppendixListing &listing = appendix_listing(n);
        return SweepTarget{
            std::string(listing.name), parse_qasm(listing.source), listing.success, listing.b_register};
    }
    SolverLayout layout = SolverLayout::of(n);
    return SweepTarget{
        "builder_n" + std::to_string(n), build_solver(builtin_instance(n)), layout.success_conditions(), layout.b};
}

DeviationReport run_sweep(const SweepConfig &config) {
    config.validate();
    return run_sweep(config, sweep_target(config.n, config.source));
}

DeviationReport run_sweep(const SweepConfig &config, const SweepTarget &target) {
    config.validate();
    std::size_t width = target.readout.size();
    std::size_t N = std::size_t{1} << width;

    DeviationReport report;
    report.n = width;
    report.circuit_name = target.name;
    report.circuit_hash = circuit_hash(target.circuit);
    report.metrics = circuit_metrics(target.circuit);
    report.mode = config.mode;
    report.seed = config.seed;
    report.trials = config.mode == SweepMode::Exact ? 1 : config.trials;
    report.shots = config.mode == SweepMode::Exact ? 0 : config.shots;
    for (std::size_t j = 1; j < N; j++) {
        report.bases.push_back(bits_msb_first(j, width));
    }
    StateVector ideal = run_ideal(target.circuit);
    report.theory = targeted(post_select(ideal, target.success, target.readout));

    struct Cell {
        ChannelKind kind;
        int i;
        double p;
    };
    std::vector<ChannelKind> kinds = config.noise_types;
    std::sort(kinds.begin(), kinds.end());
    kinds.erase(std::unique(kinds.begin(), kinds.end()), kinds.end());
    std::vector<Cell> cells;
    for (ChannelKind kind : kinds) {
        if (config.intensities.empty()) {
            for (int i = config.i_min; i <= config.i_max; i++) {
                cells.push_back({kind, i, sweep_intensity(i)});
            }
        } else {
            for (std::size_t k = 0; k < config.intensities.size(); k++) {
                cells.push_back({kind, static_cast<int>(k + 1), config.intensities[k]});
            }
        }
    }

    report.rows.resize(cells.size());
    std::atomic<std::size_t> next{0};
    std::exception_ptr failure;
    std::mutex failure_mutex;
    auto work = [&]() {
        while (true) {
            std::size_t k = next.fetch_add(1);
            if (k >= cells.size()) {
                return;
            }
            try {
                const Cell &cell = cells[k];
                NoiseModel noise = NoiseModel::uniform(KrausChannel::of_kind(cell.kind, cell.p));
                DensityMatrix rho = run_noisy(target.circuit, noise);
                DeviationRow row{cell.kind, cell.i, cell.p, {}, {}, 0.0};
                if (config.mode == SweepMode::Exact) {
                    row.noisy_probs = targeted(post_select(rho, target.success, target.readout));
                    Deviation d = deviation(row.noisy_probs, report.theory);
                    row.D = d.per_basis;
                } else {
                    std::vector<double> born = rho.diagonal();
                    row.noisy_probs.assign(N - 1, 0.0);
                    row.D.assign(N - 1, 0.0);
                    for (std::size_t t = 0; t < config.trials; t++) {
                        auto hist = sample_distribution(
                            born, rho.num_qubits(), config.shots, cell_seed(config.seed, cell.kind, cell.i, t));
                        std::vector<double> freq(born.size(), 0.0);
                        for (const auto &outcome : hist) {
                            freq[std::stoull(outcome.bitstring, nullptr, 2)] = outcome.probability;
                        }
                        auto est = targeted(post_select(freq, rho.num_qubits(), target.success, target.readout));
                        Deviation d = deviation(est, report.theory);
                        for (std::size_t b = 0; b + 1 < N; b++) {
                            row.noisy_probs[b] += est[b] / static_cast<double>(config.trials);
                            row.D[b] += d.per_basis[b] / static_cast<double>(config.trials);
                        }
                    }
                }
                double total = 0;
                for (double d : row.D) {
                    total += d;
                }
                row.Dbar = total / static_cast<double>(row.D.size());
                report.rows[k] = std::move(row);
            } catch (...) {
                std::lock_guard<std::mutex> lock(failure_mutex);
                if (!failure) {
                    failure = std::current_exception();
                }
                next = cells.size();
            }
        }
    };
    std::size_t threads = config.threads != 0 ? config.threads : std::max(1u, std::thread::hardware_concurrency());
    threads = std::min(threads, cells.size());
    std::vector<std::thread> pool;
    for (std::size_t t = 1; t < threads; t++) {
        pool.emplace_back(work);
    }
    work();
    for (auto &t : pool) {
        t.join();
    }
    if (failure) {
        std::rethrow_exception(failure);
    }
    return report;
}

double find_threshold(std::span<const double> p, std::span<const double> dbar, double target) {
    if (p.size() != dbar.size()) {
        throw std::invalid_argument("Threshold curve has mismatched lengths.");
    }
    if (p.size() < 2) {
        throw std::invalid_argument("Threshold curve needs at least two points.");
    }
    for (std::size_t k = 0; k < p.size(); k++) {
        if (!(p[k] > 0)) {
            throw std::invalid_argument("Threshold curve intensities must be positive.");
        }
    }
    for (std::size_t k = 1; k < p.size(); k++) {
        if (dbar[k - 1] < target && dbar[k] >= target) {
            double t = (target - dbar[k - 1]) / (dbar[k] - dbar[k - 1]);
            double lp = std::log(p[k - 1]) + t * (std::log(p[k]) - std::log(p[k - 1]));
            return std::exp(lp);
        }
    }
    throw std::domain_error("Deviation never rises through " + fmt("%g", target) + " in the swept range.");
}

std::vector<Threshold> channel_thresholds(const DeviationReport &report, double target) {
    std::vector<Threshold> result;
    for (std::size_t k = 0; k < report.rows.size();) {
        ChannelKind kind = report.rows[k].noise;
        std::vector<double> p, d;
        for (; k < report.rows.size() && report.rows[k].noise == kind; k++) {
            p.push_back(report.rows[k].p);
            d.push_back(report.rows[k].Dbar);
        }
        Threshold t{kind, std::nullopt};
        try {
            t.p = find_threshold(p, d, target);
        } catch (const std::exception &) {
        }
        result.push_back(t);
    }
    return result;
}

std::optional<Threshold> worst_threshold(std::span<const Threshold> thresholds) {
    std::optional<Threshold> worst;
    for (const auto &t : thresholds) {
        if (t.p.has_value() && (!worst.has_value() || *t.p < *worst->p)) {
            worst = t;
        }
    }
    return worst;
}

std::string report_csv(const DeviationReport &report) {
    std::string out = "noise,i,p,basis,D,Dbar\n";
    for (const auto &row : report.rows) {
        for (std::size_t b = 0; b < row.D.size(); b++) {
            out += std::string(channel_short_name(row.noise)) + "," + std::to_string(row.i) + "," +
                   fmt("%.6e", row.p) + "," + report.bases[b] + "," + fmt("%.10f", row.D[b]) + "," +
                   fmt("%.10f", row.Dbar) + "\n";
        }
    }
    return out;
}

std::string report_json(const DeviationReport &report, double target) {
    using nlohmann::ordered_json;
    ordered_json j;
    j["n"] = report.n;
    j["circuit"] = report.circuit_name;
    j["circuit_hash"] = report.circuit_hash;
    j["metrics"] = {
        {"gate_count", report.metrics.gate_count},
        {"one_two_qubit_gate_count", report.metrics.one_two_qubit_gate_count},
        {"ccx_count", report.metrics.ccx_count},
        {"decomposed_basic_gate_count", report.metrics.decomposed_basic_gate_count},
        {"depth", report.metrics.depth},
    };
    j["mode"] = sweep_mode_name(report.mode);
    j["seed"] = report.seed;
    j["trials"] = report.trials;
    j["shots"] = report.shots;
    ordered_json theory = ordered_json::object();
    for (std::size_t b = 0; b < report.bases.size(); b++) {
        theory[report.bases[b]] = report.theory[b];
    }
    j["theory"] = theory;
    ordered_json rows = ordered_json::array();
    for (const auto &row : report.rows) {
        rows.push_back({{"noise", channel_short_name(row.noise)}, {"i", row.i}, {"p", row.p}, {"Dbar", row.Dbar}});
    }
    j["rows"] = rows;
    auto thresholds = channel_thresholds(report, target);
    ordered_json th = ordered_json::object();
    for (const auto &t : thresholds) {
        th[std::string(channel_short_name(t.noise))] = t.p.has_value() ? ordered_json(*t.p) : ordered_json(nullptr);
    }
    j["threshold_target"] = target;
    j["thresholds"] = th;
    auto worst = worst_threshold(thresholds);
    if (worst.has_value()) {
        j["worst"] = {{"noise", channel_short_name(worst->noise)}, {"p", *worst->p}};
    } else {
        j["worst"] = nullptr;
    }
    return j.dump(2) + "\n";
}

std::string circuit_hash(const Circuit &circuit) {
    std::uint64_t h = 0xcbf29ce484222325ULL;
    for (unsigned char ch : serialize_qasm(circuit)) {
        h ^= ch;
        h *= 0x100000001b3ULL;
    }
    char buf[17];
    std::snprintf(buf, sizeof(buf), "%016llx", static_cast<unsigned long long>(h));
    return buf;
}

}  // namespace qpoisson
