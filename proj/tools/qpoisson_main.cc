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

#include <CLI11.hpp>
#include <cstdio>
#include <cstdlib>
#include <filesystem>
#include <fstream>
#include <iostream>
#include <nlohmann/json.hpp>
#include <sstream>
#include <string>

#include "qpoisson/analysis.h"
#include "qpoisson/appendix.h"
#include "qpoisson/poisson.h"
#include "qpoisson/qasm.h"
#include "qpoisson/sim.h"

using namespace qpoisson;

namespace {

/// An error tagged with the pipeline stage that raised it.
struct StageError : std::runtime_error {
    StageError(std::string stage, const std::string &what) : std::runtime_error(what), stage(std::move(stage)) {
    }
    std::string stage;
};

template <typename F>
auto stage(const std::string &name, F &&f) -> decltype(f()) {
    try {
        return f();
    } catch (const StageError &) {
        throw;
    } catch (const std::exception &e) {
        throw StageError(name, e.what());
    }
}

std::string read_file(const std::string &path) {
    std::ifstream in(path, std::ios::binary);
    if (!in) {
        throw std::runtime_error("cannot open " + path);
    }
    std::ostringstream ss;
    ss << in.rdbuf();
    return ss.str();
}

std::string fmt(const char *spec, double x) {
    char buf[64];
    std::snprintf(buf, sizeof(buf), spec, x);
    return buf;
}

std::string bits(std::size_t value, std::size_t width) {
    std::string s(width, '0');
    for (std::size_t b = 0; b < width; b++) {
        if ((value >> b) & 1) {
            s[width - 1 - b] = '1';
        }
    }
    return s;
}

// Builtin circuit names: appendix_n2, appendix_n3, solver_n<k>, sine_n<k>.
// Anything else is read as a file.
Circuit load_circuit(const std::string &spec) {
    if (spec == "appendix_n2" || spec == "appendix_n3") {
        return stage("parse", [&] { return appendix_circuit(spec.back() - '0'); });
    }
    auto number_after = [&](const std::string &prefix) -> std::optional<std::size_t> {
        if (spec.rfind(prefix, 0) != 0 || spec.size() == prefix.size()) {
            return std::nullopt;
        }
        std::string rest = spec.substr(prefix.size());
        if (rest.find_first_not_of("0123456789") != std::string::npos || rest.size() > 2) {
            return std::nullopt;
        }
        return std::stoul(rest);
    };
    if (auto n = number_after("solver_n")) {
        return stage("build", [&] { return build_solver(builtin_instance(*n)); });
    }
    if (auto n = number_after("sine_n")) {
        return stage("build", [&] { return build_sine_transform(*n); });
    }
    std::string text = stage("read", [&] { return read_file(spec); });
    try {
        return parse_qasm(text);
    } catch (const ParseError &e) {
        throw StageError("parse", spec + ":" + std::to_string(e.line()) + ":" + std::to_string(e.column()) + ": " +
                                      std::string(parse_error_kind_name(e.kind())) + ": " + e.message());
    }
}

int cmd_parse(const std::string &path) {
    Circuit circuit = load_circuit(path);
    std::cout << serialize_qasm(circuit) << "\n";
    return 0;
}

int cmd_simulate(
    const std::string &spec, std::optional<std::uint64_t> shots, std::uint64_t seed, const std::string &noise_name,
    double p) {
    Circuit circuit = load_circuit(spec);
    std::vector<double> born = stage("simulate", [&] {
        if (noise_name.empty()) {
            return born_probabilities(run_ideal(circuit));
        }
        auto kind = channel_kind_from_short_name(noise_name);
        if (!kind.has_value()) {
            throw std::invalid_argument("unknown noise type " + noise_name);
        }
        return run_noisy(circuit, NoiseModel::uniform(KrausChannel::of_kind(*kind, p))).diagonal();
    });
    // Read out the measured qubits into their classical bits, or every qubit
    // when the circuit measures nothing.
    std::vector<Qubit> readout;
    if (circuit.has_measurements()) {
        readout.assign(circuit.num_clbits(), 0);
        std::vector<bool> seen(circuit.num_clbits(), false);
        for (const auto &op : circuit.ops()) {
            if (op.kind == GateKind::Measure) {
                readout[*op.clbit] = op.qubits[0];
                seen[*op.clbit] = true;
            }
        }
        std::vector<Qubit> used;
        for (std::size_t c = 0; c < readout.size(); c++) {
            if (seen[c]) {
                used.push_back(readout[c]);
            }
        }
        readout = used;
    } else {
        for (Qubit q = 0; q < circuit.num_qubits(); q++) {
            readout.push_back(q);
        }
    }
    PostSelection marginal = stage("simulate", [&] { return post_select(born, circuit.num_qubits(), {}, readout); });
    if (shots.has_value()) {
        auto hist = stage("sample", [&] { return sample_distribution(marginal.probabilities, readout.size(), *shots, seed); });
        std::cout << "bits,count\n";
        for (const auto &o : hist) {
            std::cout << o.bitstring << "," << o.count << "\n";
        }
    } else {
        std::cout << "bits,probability\n";
        for (std::size_t k = 0; k < marginal.probabilities.size(); k++) {
            if (marginal.probabilities[k] > 1e-12) {
                std::cout << bits(k, readout.size()) << "," << fmt("%.10f", marginal.probabilities[k]) << "\n";
            }
        }
    }
    return 0;
}

PoissonInstance load_instance(std::size_t n, const std::string &b_file) {
    if (b_file.empty()) {
        return stage("instance", [&] { return builtin_instance(n); });
    }
    std::string text = stage("read", [&] { return read_file(b_file); });
    return stage("instance", [&] {
        auto j = nlohmann::json::parse(text);
        std::size_t file_n = j.at("n").get<std::size_t>();
        if (file_n != n) {
            throw std::invalid_argument("file declares n = " + std::to_string(file_n) + " but --n is " + std::to_string(n));
        }
        return PoissonInstance::make(n, j.at("b").get<std::vector<double>>());
    });
}

int cmd_solve(std::size_t n, const std::string &b_file) {
    PoissonInstance instance = load_instance(n, b_file);
    SolverResult r = stage("solve", [&] { return solve(instance); });
    std::cout << "basis,probability,oracle,abs_diff\n";
    for (std::size_t j = 1; j < instance.grid_size(); j++) {
        double p = r.post_selected_probs[j];
        double q = r.oracle_probs[j];
        std::cout << bits(j, n) << "," << fmt("%.6f", p) << "," << fmt("%.6f", q) << "," << fmt("%.3e", std::abs(p - q))
                  << "\n";
    }
    std::cout << "success_probability," << fmt("%.6f", r.success_probability) << "\n";
    std::cout << "normalization_constant," << fmt("%.6f", r.normalization_constant) << "\n";
    std::cout << "k,solution_estimate,oracle_solution\n";
    for (std::size_t k = 0; k < r.oracle_solution.size(); k++) {
        std::cout << k + 1 << "," << fmt("%.6f", r.solution_estimate[k]) << "," << fmt("%.6f", r.oracle_solution[k])
                  << "\n";
    }
    return 0;
}

struct SweepArgs {
    std::size_t n = 2;
    std::string noise = "all";
    int i_min = 1;
    int i_max = 9;
    std::string mode = "exact";
    std::string circuit = "appendix";
    std::size_t trials = 3;
    std::uint64_t shots = 1024;
    std::uint64_t seed = 0;
    std::size_t threads = 0;
    std::string out;
};

int cmd_sweep(const SweepArgs &args) {
    SweepConfig config;
    config.n = args.n;
    if (args.noise == "all") {
        config.noise_types = {
            ChannelKind::AmplitudeDamping, ChannelKind::PhaseDamping, ChannelKind::BitFlip,
            ChannelKind::Depolarizing};
    } else {
        config.noise_types = {*channel_kind_from_short_name(args.noise)};
    }
    config.i_min = args.i_min;
    config.i_max = args.i_max;
    config.mode = args.mode == "exact" ? SweepMode::Exact : SweepMode::Sampled;
    config.source = args.circuit == "appendix" ? SweepCircuit::Appendix : SweepCircuit::Builder;
    config.trials = args.trials;
    config.shots = args.shots;
    config.seed = args.seed;
    config.threads = args.threads;
    stage("config", [&] { config.validate(); });

    DeviationReport report = stage("sweep", [&] { return run_sweep(config); });

    std::string dir = args.out;
    if (dir.empty()) {
        const char *env = std::getenv("QPOISSON_OUT_DIR");
        dir = env != nullptr && *env != '\0' ? env : ".";
    }
    std::string stem = "sweep_n" + std::to_string(args.n);
    stage("write", [&] {
        std::filesystem::create_directories(dir);
        for (const auto &[name, body] :
             {std::pair{stem + ".csv", report_csv(report)}, std::pair{stem + ".json", report_json(report)}}) {
            std::ofstream out(std::filesystem::path(dir) / name, std::ios::binary);
            out << body;
            if (!out) {
                throw std::runtime_error("cannot write " + (std::filesystem::path(dir) / name).string());
            }
        }
    });
    std::cout << "noise,i,p,Dbar\n";
    for (const auto &row : report.rows) {
        std::cout << channel_short_name(row.noise) << "," << row.i << "," << fmt("%.6e", row.p) << ","
                  << fmt("%.4f", row.Dbar) << "\n";
    }
    auto thresholds = channel_thresholds(report);
    for (const auto &t : thresholds) {
        std::cout << "threshold," << channel_short_name(t.noise) << ","
                  << (t.p.has_value() ? fmt("%.3e", *t.p) : std::string("none")) << "\n";
    }
    std::cout << "wrote " << (std::filesystem::path(dir) / (stem + ".csv")).string() << " and " << stem << ".json\n";
    return 0;
}

int cmd_metrics(const std::string &spec) {
    Circuit circuit = load_circuit(spec);
    CircuitMetrics m = circuit_metrics(circuit);
    std::cout << "qubits," << circuit.num_qubits() << "\n";
    std::cout << "gate_count," << m.gate_count << "\n";
    std::cout << "one_two_qubit_gate_count," << m.one_two_qubit_gate_count << "\n";
    std::cout << "ccx_count," << m.ccx_count << "\n";
    std::cout << "decomposed_basic_gate_count," << m.decomposed_basic_gate_count << "\n";
    std::cout << "depth," << m.depth << "\n";
    return 0;
}

}  // namespace

int main(int argc, char **argv) {
    CLI::App app{"Simulate and noise-analyse quantum 1D Poisson solver circuits."};
    app.name("qpoisson");
    app.require_subcommand(1);
    app.failure_message(CLI::FailureMessage::help);

    std::string parse_file;
    auto *parse = app.add_subcommand("parse", "Parse a circuit file and print it normalised.");
    parse->add_option("file", parse_file, "Circuit file or builtin name")->required();

    std::string sim_spec;
    std::optional<std::uint64_t> shots;
    std::uint64_t sim_seed = 0;
    std::string sim_noise;
    double sim_p = 0;
    auto *simulate = app.add_subcommand("simulate", "Run a circuit and print its output distribution.");
    simulate->add_option("circuit", sim_spec, "Circuit file or builtin (appendix_n2, appendix_n3, solver_n<k>, sine_n<k>)")
        ->required();
    simulate->add_option("--shots", shots, "Sample this many shots instead of printing exact probabilities")
        ->check(CLI::PositiveNumber);
    simulate->add_option("--seed", sim_seed, "Sampling seed");
    simulate->add_option("--noise", sim_noise, "Noise channel on every gate")
        ->check(CLI::IsMember({"ad", "pd", "bf", "dp", "composite"}));
    simulate->add_option("--p", sim_p, "Noise intensity")->check(CLI::Range(0.0, 1.0));

    std::size_t solve_n = 2;
    std::string b_file;
    auto *solve_cmd = app.add_subcommand("solve", "Run the solver ideally and compare with the classical solution.");
    solve_cmd->add_option("--n", solve_n, "log2 of the number of intervals")->required()->check(CLI::Range(2, 4));
    solve_cmd->add_option("--b-file", b_file, "JSON file {\"n\": n, \"b\": [b_1, ..., b_{N-1}]}");

    SweepArgs sweep_args;
    auto *sweep = app.add_subcommand("sweep", "Deviation of the success distribution against noise intensity.");
    sweep->add_option("--n", sweep_args.n, "Solver size")->required()->check(CLI::Range(2, 4));
    sweep->add_option("--noise", sweep_args.noise, "Channel, or all four")
        ->check(CLI::IsMember({"ad", "pd", "bf", "dp", "all", "composite"}))
        ->capture_default_str();
    sweep->add_option("--i-min", sweep_args.i_min, "First sweep index")->check(CLI::Range(1, 100))->capture_default_str();
    sweep->add_option("--i-max", sweep_args.i_max, "Last sweep index")->check(CLI::Range(1, 100))->capture_default_str();
    sweep->add_option("--mode", sweep_args.mode, "exact or sampled")
        ->check(CLI::IsMember({"exact", "sampled"}))
        ->capture_default_str();
    sweep->add_option("--circuit", sweep_args.circuit, "appendix listing or generic builder")
        ->check(CLI::IsMember({"appendix", "builder"}))
        ->capture_default_str();
    sweep->add_option("--trials", sweep_args.trials, "Sampled mode repetitions")
        ->check(CLI::PositiveNumber)
        ->capture_default_str();
    sweep->add_option("--shots", sweep_args.shots, "Sampled mode shots per trial")
        ->check(CLI::PositiveNumber)
        ->capture_default_str();
    sweep->add_option("--seed", sweep_args.seed, "Sampled mode seed")->capture_default_str();
    sweep->add_option("--threads", sweep_args.threads, "Worker threads (0 = all cores)")->capture_default_str();
    sweep->add_option("--out", sweep_args.out, "Output directory (default $QPOISSON_OUT_DIR or .)");

    std::string metrics_spec;
    auto *metrics = app.add_subcommand("metrics", "Gate counts and depth of a circuit.");
    metrics->add_option("circuit", metrics_spec, "Circuit file or builtin name")->required();

    try {
        app.parse(argc, argv);
    } catch (const CLI::ParseError &e) {
        int code = app.exit(e);
        return code == 0 ? 0 : 2;
    }

    try {
        if (*parse) {
            return cmd_parse(parse_file);
        }
        if (*simulate) {
            return cmd_simulate(sim_spec, shots, sim_seed, sim_noise, sim_p);
        }
        if (*solve_cmd) {
            return cmd_solve(solve_n, b_file);
        }
        if (*sweep) {
            return cmd_sweep(sweep_args);
        }
        if (*metrics) {
            return cmd_metrics(metrics_spec);
        }
    } catch (const StageError &e) {
        std::cerr << "qpoisson: " << e.stage << ": " << e.what() << "\n";
        return 1;
    } catch (const std::exception &e) {
        std::cerr << "qpoisson: internal: " << e.what() << "\n";
        return 1;
    }
    return 2;
}
