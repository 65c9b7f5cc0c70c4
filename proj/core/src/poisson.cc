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

#include "qpoisson/poisson.h"

#include <array>
#include <bit>
#include <cmath>
#include <numbers>
#include <stdexcept>
#include <string>

namespace qpoisson {

namespace {

constexpr double kPi = std::numbers::pi;

std::vector<Qubit> range_of(std::size_t begin, std::size_t end) {
    std::vector<Qubit> result;
    for (std::size_t q = begin; q < end; q++) {
        result.push_back(static_cast<Qubit>(q));
    }
    return result;
}

double norm2(std::span<const double> v) {
    double total = 0;
    for (double x : v) {
        total += x * x;
    }
    return std::sqrt(total);
}

}  // namespace

PoissonInstance PoissonInstance::make(std::size_t n, std::vector<double> b) {
    if (n < 1 || n > 30) {
        throw std::invalid_argument("n must be in [1, 30], got " + std::to_string(n) + ".");
    }
    std::size_t unknowns = (std::size_t{1} << n) - 1;
    if (b.size() != unknowns) {
        throw std::invalid_argument(
            "b must have " + std::to_string(unknowns) + " entries for n = " + std::to_string(n) + ", got " +
            std::to_string(b.size()) + ".");
    }
    bool any = false;
    for (double x : b) {
        if (!std::isfinite(x)) {
            throw std::invalid_argument("b entries must be finite.");
        }
        any = any || x != 0;
    }
    if (!any) {
        throw std::invalid_argument("b must not be all zero.");
    }
    return PoissonInstance{n, std::move(b)};
}

std::vector<double> PoissonInstance::normalized_b() const {
    double s = norm2(b);
    std::vector<double> result = b;
    for (double &x : result) {
        x /= s;
    }
    return result;
}

PoissonInstance builtin_instance(std::size_t n) {
    if (n == 2) {
        return PoissonInstance::make(2, {1 / std::sqrt(2.0), 0.5, 0.5});
    }
    if (n == 3) {
        double r = std::sqrt(2.0) / 4;
        return PoissonInstance::make(3, {0.5, r, r, r, r, r, r});
    }
    throw std::invalid_argument("No built-in instance for n = " + std::to_string(n) + "; supply b.");
}

double EigenSystem::eigvec(std::size_t j, std::size_t k) const {
    double N = static_cast<double>(std::size_t{1} << n);
    if (j < 1 || k < 1 || j >= (std::size_t{1} << n) || k >= (std::size_t{1} << n)) {
        throw std::out_of_range("Eigenvector index out of range.");
    }
    return std::sqrt(2 / N) * std::sin(kPi * static_cast<double>(j * k) / N);
}

EigenSystem eigen_system(std::size_t n) {
    EigenSystem result{n, {}};
    std::size_t N = std::size_t{1} << n;
    double Nd = static_cast<double>(N);
    for (std::size_t j = 1; j < N; j++) {
        double s = std::sin(static_cast<double>(j) * kPi / (2 * Nd));
        result.lambdas.push_back(4 * Nd * Nd * s * s);
    }
    return result;
}

std::vector<double> solve_classical(const PoissonInstance &instance) {
    // Thomas algorithm for N^2 tridiag(-1, 2, -1).
    std::size_t m = instance.b.size();
    double scale = static_cast<double>(instance.grid_size());
    scale *= scale;
    std::vector<double> cp(m), dp(m), v(m);
    double diag = 2 * scale;
    double off = -scale;
    cp[0] = off / diag;
    dp[0] = instance.b[0] / diag;
    for (std::size_t k = 1; k < m; k++) {
        double denom = diag - off * cp[k - 1];
        cp[k] = off / denom;
        dp[k] = (instance.b[k] - off * dp[k - 1]) / denom;
    }
    v[m - 1] = dp[m - 1];
    for (std::size_t k = m - 1; k-- > 0;) {
        v[k] = dp[k] - cp[k] * v[k + 1];
    }
    return v;
}

std::vector<double> apply_poisson_matrix(std::size_t n, std::span<const double> v) {
    double scale = static_cast<double>(std::size_t{1} << n);
    scale *= scale;
    std::size_t m = v.size();
    std::vector<double> result(m);
    for (std::size_t k = 0; k < m; k++) {
        double left = k > 0 ? v[k - 1] : 0;
        double right = k + 1 < m ? v[k + 1] : 0;
        result[k] = scale * (2 * v[k] - left - right);
    }
    return result;
}

std::vector<double> eigen_factors(std::size_t j, std::size_t n) {
    if (n < 1 || n > 62 || j < 1 || j >= (std::size_t{1} << n)) {
        throw std::out_of_range("j = " + std::to_string(j) + " is outside [1, 2^n) for n = " + std::to_string(n) + ".");
    }
    std::size_t m = static_cast<std::size_t>(std::countr_zero(j));
    long long jp = static_cast<long long>(j >> m);
    std::vector<double> result(m, 0.5);
    for (std::size_t k = 2; k + m <= n; k++) {
        long long period = 1LL << (k + 1);
        long long r = (((1LL << k) - jp) % period + period) % period;
        result.push_back(std::sin(static_cast<double>(r) / static_cast<double>(period) * kPi));
    }
    return result;
}

double eigen_recip(std::size_t j, std::size_t n) {
    double product = 1;
    for (double f : eigen_factors(j, n)) {
        product *= f;
    }
    return product * product;
}

void append_controlled_increment(
    Circuit &circuit, Qubit control, std::span<const Qubit> bits, std::span<const Qubit> carries) {
    std::size_t m = bits.size();
    if (m == 0) {
        return;
    }
    if (carries.size() + 1 < m) {
        throw std::invalid_argument("Controlled increment needs bits.size() - 1 carry qubits.");
    }
    // carries[i - 1] = control AND bits[0..i-1].
    std::vector<std::array<Qubit, 3>> compute;
    for (std::size_t i = 1; i < m; i++) {
        if (i == 1) {
            compute.push_back({bits[0], control, carries[0]});
        } else {
            compute.push_back({carries[i - 2], bits[i - 1], carries[i - 1]});
        }
    }
    for (const auto &t : compute) {
        circuit.ccx(t[0], t[1], t[2]);
    }
    for (std::size_t i = m - 1; i >= 1; i--) {
        circuit.cx(carries[i - 1], bits[i]);
        const auto &t = compute[i - 1];
        circuit.ccx(t[0], t[1], t[2]);
    }
    circuit.cx(control, bits[0]);
}

Circuit build_add_one(std::size_t width) {
    if (width < 1) {
        throw std::invalid_argument("add-one width must be at least 1.");
    }
    std::size_t carries = width >= 2 ? width - 2 : 0;
    Circuit circuit(width + carries);
    std::vector<Qubit> bits = range_of(1, width);
    std::vector<Qubit> carry = range_of(width, width + carries);
    append_controlled_increment(circuit, 0, bits, carry);
    circuit.x(0);
    return circuit;
}

Circuit build_sine_transform(std::size_t n) {
    if (n < 2) {
        throw std::invalid_argument("Sine transform needs n >= 2, got " + std::to_string(n) + ".");
    }
    Circuit circuit(2 * n);
    Qubit anc = static_cast<Qubit>(n);
    std::vector<Qubit> data = range_of(0, n);
    std::vector<Qubit> carries = range_of(n + 1, 2 * n);

    auto negate = [&]() {
        for (Qubit q : data) {
            circuit.cx(anc, q);
        }
        append_controlled_increment(circuit, anc, data, carries);
    };

    circuit.h(anc);
    negate();
    // Fourier transform over [data, anc] with anc most significant. Negative
    // phases make the extracted block -i ST.
    std::vector<Qubit> reg = data;
    reg.push_back(anc);
    std::size_t size = reg.size();
    for (std::size_t a = size; a-- > 0;) {
        circuit.h(reg[a]);
        for (std::size_t b = a; b-- > 0;) {
            circuit.cp(-kPi / static_cast<double>(std::size_t{1} << (a - b)), reg[b], reg[a]);
        }
    }
    for (std::size_t a = 0; a < size / 2; a++) {
        circuit.swap(reg[a], reg[size - 1 - a]);
    }
    negate();
    circuit.h(anc);
    return circuit;
}

void append_uniformly_controlled_ry(
    Circuit &circuit, std::span<const Qubit> controls, Qubit target, std::span<const double> angles) {
    std::size_t k = controls.size();
    std::size_t count = std::size_t{1} << k;
    if (angles.size() != count) {
        throw std::invalid_argument("Uniformly controlled RY needs 2^k angles.");
    }
    if (k == 0) {
        if (angles[0] != 0) {
            circuit.ry(angles[0], target);
        }
        return;
    }
    auto gray = [](std::size_t i) { return i ^ (i >> 1); };
    for (std::size_t i = 0; i < count; i++) {
        double alpha = 0;
        for (std::size_t j = 0; j < count; j++) {
            int sign = std::popcount(j & gray(i)) % 2 == 0 ? 1 : -1;
            alpha += sign * angles[j];
        }
        alpha /= static_cast<double>(count);
        if (std::abs(alpha) > 1e-15) {
            circuit.ry(alpha, target);
        }
        std::size_t flip = gray(i) ^ gray((i + 1) % count);
        circuit.cx(controls[static_cast<std::size_t>(std::countr_zero(flip))], target);
    }
}

void append_multi_controlled_x(
    Circuit &circuit, std::span<const Qubit> controls, Qubit target, std::span<const Qubit> dirty) {
    std::size_t k = controls.size();
    if (k == 0) {
        circuit.x(target);
        return;
    }
    if (k == 1) {
        circuit.cx(controls[0], target);
        return;
    }
    if (k == 2) {
        circuit.ccx(controls[0], controls[1], target);
        return;
    }
    if (dirty.size() < k - 2) {
        throw std::invalid_argument(
            "A " + std::to_string(k) + "-controlled X needs " + std::to_string(k - 2) + " spare qubits, got " +
            std::to_string(dirty.size()) + ".");
    }
    // Toffoli V-chain with borrowed qubits; a[i] accumulates controls 0..i+1.
    auto a = dirty.first(k - 2);
    auto descend = [&]() {
        for (std::size_t i = k - 2; i >= 2; i--) {
            circuit.ccx(controls[i], a[i - 2], a[i - 1]);
        }
    };
    auto ascend = [&]() {
        for (std::size_t i = 2; i <= k - 2; i++) {
            circuit.ccx(controls[i], a[i - 2], a[i - 1]);
        }
    };
    for (int pass = 0; pass < 2; pass++) {
        circuit.ccx(controls[k - 1], a[k - 3], target);
        descend();
        circuit.ccx(controls[0], controls[1], a[0]);
        ascend();
    }
}

SolverLayout SolverLayout::of(std::size_t n) {
    if (n < 2) {
        throw std::invalid_argument("The solver needs n >= 2, got " + std::to_string(n) + ".");
    }
    SolverLayout layout;
    layout.n = n;
    layout.b = range_of(0, n);
    layout.e = range_of(n, 2 * n - 1);
    layout.c = range_of(2 * n - 1, 3 * n - 2);
    layout.anc = static_cast<Qubit>(3 * n - 2);
    layout.anc2 = static_cast<Qubit>(3 * n - 1);
    return layout;
}

std::vector<QubitCondition> SolverLayout::success_conditions() const {
    std::vector<QubitCondition> result{{anc, true}};
    for (Qubit q : e) {
        result.push_back({q, true});
    }
    for (Qubit q : c) {
        result.push_back({q, false});
    }
    return result;
}

Circuit build_ry_ladder(std::size_t n) {
    if (n < 2) {
        throw std::invalid_argument("The RY ladder needs n >= 2, got " + std::to_string(n) + ".");
    }
    std::size_t N = std::size_t{1} << n;
    Circuit circuit(3 * n - 2);
    std::vector<Qubit> controls = range_of(0, n);
    std::vector<std::vector<double>> angles(n - 1, std::vector<double>(N, 0.0));
    for (std::size_t j = 1; j < N; j++) {
        auto factors = eigen_factors(j, n);
        for (std::size_t i = 0; i + 1 < n; i++) {
            angles[i][j] = 2 * std::asin(factors[i]);
        }
    }
    for (std::size_t i = 0; i + 1 < n; i++) {
        append_uniformly_controlled_ry(circuit, controls, static_cast<Qubit>(n + i), angles[i]);
    }
    for (std::size_t i = 0; i + 1 < n; i++) {
        append_uniformly_controlled_ry(circuit, controls, static_cast<Qubit>(2 * n - 1 + i), angles[i]);
    }
    return circuit;
}

Circuit prepare_b_state(std::size_t n, std::span<const double> amplitudes) {
    std::size_t N = std::size_t{1} << n;
    if (n < 1 || amplitudes.size() != N) {
        throw std::invalid_argument("prepare_b_state needs 2^n amplitudes.");
    }
    if (std::abs(amplitudes[0]) > 1e-12) {
        throw std::invalid_argument("The right-hand side must have no amplitude on basis state 0.");
    }
    if (std::abs(norm2(amplitudes) - 1) > 1e-9) {
        throw std::invalid_argument("prepare_b_state needs a normalised vector.");
    }
    Circuit circuit(n);
    // Top-down binary tree: the level for bit q is controlled by bits above it.
    for (std::size_t q = n; q-- > 0;) {
        std::size_t k = n - 1 - q;
        std::vector<Qubit> controls = range_of(q + 1, n);
        std::vector<double> angles(std::size_t{1} << k, 0.0);
        std::size_t block = std::size_t{1} << q;
        for (std::size_t prefix = 0; prefix < angles.size(); prefix++) {
            std::size_t base = prefix << (q + 1);
            if (q == 0) {
                angles[prefix] = 2 * std::atan2(amplitudes[base + 1], amplitudes[base]);
            } else {
                double left = norm2(amplitudes.subspan(base, block));
                double right = norm2(amplitudes.subspan(base + block, block));
                angles[prefix] = 2 * std::atan2(right, left);
            }
        }
        append_uniformly_controlled_ry(circuit, controls, static_cast<Qubit>(q), angles);
    }
    return circuit;
}

Circuit prepare_b_state(const PoissonInstance &instance) {
    std::vector<double> amps{0.0};
    for (double x : instance.normalized_b()) {
        amps.push_back(x);
    }
    return prepare_b_state(instance.n, amps);
}

Circuit build_solver(const PoissonInstance &instance) {
    std::size_t n = instance.n;
    if (n < 2 || n > 5) {
        throw std::invalid_argument("The solver supports 2 <= n <= 5, got " + std::to_string(n) + ".");
    }
    SolverLayout layout = SolverLayout::of(n);
    Circuit circuit(layout.num_qubits());

    std::vector<Qubit> st_map = layout.b;
    st_map.push_back(layout.anc2);
    st_map.insert(st_map.end(), layout.c.begin(), layout.c.end());
    Circuit st = build_sine_transform(n);

    std::vector<Qubit> ladder_map = layout.b;
    ladder_map.insert(ladder_map.end(), layout.e.begin(), layout.e.end());
    ladder_map.insert(ladder_map.end(), layout.c.begin(), layout.c.end());

    circuit.x(layout.anc2);
    circuit.extend(prepare_b_state(instance), layout.b);
    circuit.extend(st, st_map);
    circuit.extend(build_ry_ladder(n), ladder_map);

    std::vector<Qubit> flag_controls = layout.e;
    flag_controls.insert(flag_controls.end(), layout.c.begin(), layout.c.end());
    std::vector<Qubit> spare = layout.b;
    spare.push_back(layout.anc2);
    append_multi_controlled_x(circuit, flag_controls, layout.anc, spare);

    for (Qubit q : layout.c) {
        circuit.x(q);
    }
    circuit.extend(inverse(st), st_map);
    circuit.x(layout.anc2);
    return circuit;
}

PostSelection solver_post_select(const StateVector &state, const SolverLayout &layout) {
    auto conditions = layout.success_conditions();
    return post_select(state, conditions, layout.b);
}

PostSelection solver_post_select(const DensityMatrix &rho, const SolverLayout &layout) {
    auto conditions = layout.success_conditions();
    return post_select(rho, conditions, layout.b);
}

SolverResult solve(const PoissonInstance &instance) {
    SolverLayout layout = SolverLayout::of(instance.n);
    if (layout.num_qubits() > kMaxQubits) {
        throw std::invalid_argument(
            "n = " + std::to_string(instance.n) + " needs " + std::to_string(layout.num_qubits()) +
            " qubits; the simulator stops at " + std::to_string(kMaxQubits) + ".");
    }
    Circuit circuit = build_solver(instance);
    StateVector state = run_ideal(circuit);
    PostSelection selected = solver_post_select(state, layout);

    SolverResult result;
    result.post_selected_probs = selected.probabilities;
    result.success_probability = selected.success_probability;

    std::size_t base = 0;
    for (const auto &cond : layout.success_conditions()) {
        if (cond.value) {
            base |= std::size_t{1} << cond.qubit;
        }
    }
    std::size_t N = instance.grid_size();
    double scale = selected.success_probability > 0 ? 1 / std::sqrt(selected.success_probability) : 0;
    for (std::size_t j = 1; j < N; j++) {
        result.solution_estimate.push_back(state.amplitude(base | j).real() * scale);
    }

    PoissonInstance unit = instance;
    unit.b = instance.normalized_b();
    std::vector<double> v = solve_classical(unit);
    double vnorm = norm2(v);
    result.normalization_constant = 1 / (8 * vnorm);
    result.oracle_probs.assign(N, 0.0);
    for (std::size_t k = 0; k < v.size(); k++) {
        result.oracle_solution.push_back(v[k] / vnorm);
        result.oracle_probs[k + 1] = 64 * v[k] * v[k];
    }
    return result;
}

}  // namespace qpoisson
