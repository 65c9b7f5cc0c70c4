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

#ifndef QPOISSON_POISSON_H
#define QPOISSON_POISSON_H

#include <span>
#include <vector>

#include "qpoisson/gates.h"
#include "qpoisson/sim.h"
#include "qpoisson/state.h"

namespace qpoisson {

/// -v'' = b on [0, 1] with zero boundary values, discretised on N = 2^n
/// intervals. The unknowns are v_1..v_{N-1}.
///
/// `b[k - 1]` is the right-hand side at grid point k. It need not be
/// normalised; the quantum solver works with b / |b|.
struct PoissonInstance {
    std::size_t n;
    std::vector<double> b;

    /// Throws std::invalid_argument unless n >= 1, b has N - 1 finite entries
    /// and b is not all zero.
    static PoissonInstance make(std::size_t n, std::vector<double> b);

    std::size_t grid_size() const {
        return std::size_t{1} << n;
    }
    double mesh() const {
        return 1.0 / static_cast<double>(grid_size());
    }
    std::vector<double> normalized_b() const;
};

/// Built-in right-hand sides for n = 2 and n = 3:
///   n = 2: (1/sqrt2, 1/2, 1/2)
///   n = 3: (1/2, sqrt2/4, ..., sqrt2/4)
PoissonInstance builtin_instance(std::size_t n);

/// Spectrum of A = N^2 tridiag(-1, 2, -1).
struct EigenSystem {
    std::size_t n;
    /// lambdas[j - 1] = 4 N^2 sin^2(j pi / 2N).
    std::vector<double> lambdas;

    /// sqrt(2/N) sin(j k pi / N), for 1 <= j, k <= N - 1.
    double eigvec(std::size_t j, std::size_t k) const;
};

EigenSystem eigen_system(std::size_t n);

/// v = A^{-1} b by tridiagonal elimination, with b taken as given (not
/// normalised).
std::vector<double> solve_classical(const PoissonInstance &instance);

/// A v, for residual checks.
std::vector<double> apply_poisson_matrix(std::size_t n, std::span<const double> v);

/// The n - 1 sine factors whose product is sqrt(8 / lambda_j). With m the
/// number of trailing zero bits of j and j' = j >> m, the list is m copies of
/// 1/2 followed by sin(((2^k - j') mod 2^(k+1)) pi / 2^(k+1)) for k = 2..n-m.
/// Throws std::out_of_range unless 1 <= j < 2^n.
std::vector<double> eigen_factors(std::size_t j, std::size_t n);

/// Square of the product of eigen_factors(j, n), which equals 8 / lambda_j.
double eigen_recip(std::size_t j, std::size_t n);

/// Appends a controlled increment of `bits` (bits[0] least significant) by
/// `control`, using bits.size() - 1 clean carry qubits that are returned to
/// |0>. Only CX and CCX are emitted.
void append_controlled_increment(
    Circuit &circuit, Qubit control, std::span<const Qubit> bits, std::span<const Qubit> carries);

/// Adds one modulo 2^width to qubits [0, width) (qubit 0 least significant)
/// with a ripple of Toffolis. Carry qubits [width, 2 width - 2) must start in
/// |0> and are restored. Throws std::invalid_argument if width < 1.
Circuit build_add_one(std::size_t width);

/// Discrete sine transform on 2n qubits: data [0, n), extraction ancilla n
/// and carries [n + 1, 2n). With the ancilla in |1> and the carries in |0>,
/// the block on |j>, 1 <= j < N, is -i ST where
/// ST[i][j] = sqrt(2/N) sin(pi i j / N). The ancilla is flipped (H), the data
/// register negated under its control, Fourier transformed together with the
/// ancilla as most significant bit, negated again and the ancilla
/// re-interfered. Throws std::invalid_argument if n < 2.
Circuit build_sine_transform(std::size_t n);

/// Appends a uniformly controlled RY on `target`: when the control register
/// (controls[0] least significant) holds j, the target is rotated by
/// angles[j]. Uses 2^k RY and 2^k CX in gray-code order; rotations with a zero
/// angle are dropped.
void append_uniformly_controlled_ry(
    Circuit &circuit, std::span<const Qubit> controls, Qubit target, std::span<const double> angles);

/// Appends an X on `target` controlled on every qubit in `controls`. More than
/// two controls need controls.size() - 2 qubits in `dirty`, whose state is
/// restored whatever it was. Throws std::invalid_argument if there are too
/// few.
void append_multi_controlled_x(
    Circuit &circuit, std::span<const Qubit> controls, Qubit target, std::span<const Qubit> dirty);

/// Register assignment of the solver circuit on 3n qubits.
struct SolverLayout {
    std::size_t n;
    std::vector<Qubit> b;  // n qubits, least significant first.
    std::vector<Qubit> e;  // n - 1 rotation qubits.
    std::vector<Qubit> c;  // n - 1 carry / rotation qubits.
    Qubit anc;             // Success flag.
    Qubit anc2;            // Sine-transform ancilla, held in |1> in between.

    static SolverLayout of(std::size_t n);
    std::size_t num_qubits() const {
        return 3 * n;
    }
    /// anc = 1, every E qubit 1, every C qubit 0.
    std::vector<QubitCondition> success_conditions() const;
};

/// Rotates E and C under the control of B on 3n - 2 qubits laid out as
/// B = [0, n), E = [n, 2n - 1), C = [2n - 1, 3n - 2). With B holding j >= 1,
/// the all-ones configuration of E and C ends with amplitude eigen_recip(j, n).
/// Throws std::invalid_argument if n < 2.
Circuit build_ry_ladder(std::size_t n);

/// Maps |0...0> on n qubits to sum_k b_k |k> for the normalised right-hand side
/// (index 0 carries no amplitude). Signs are honoured.
Circuit prepare_b_state(std::size_t n, std::span<const double> amplitudes);
Circuit prepare_b_state(const PoissonInstance &instance);

/// Full solver on SolverLayout::of(n): prepare b, sine transform, RY ladder,
/// flag flip, X on C, inverse sine transform. Conditioned on the success
/// pattern, B holds 8 A^{-1} b / |b|. Supports 2 <= n <= 5.
Circuit build_solver(const PoissonInstance &instance);

struct SolverResult {
    /// Joint probability of the success pattern and B = j, for j in [0, N).
    std::vector<double> post_selected_probs;
    double success_probability;
    /// Success-branch amplitudes of B = 1..N-1, renormalised.
    std::vector<double> solution_estimate;
    /// A^{-1} b normalised to unit length.
    std::vector<double> oracle_solution;
    /// 1 / |(8 / lambda_j) beta_j|, so that C (8 / lambda_j) beta_j is unit length.
    double normalization_constant;
    /// Joint probabilities predicted by the oracle, |8 A^{-1} b / |b||^2, for
    /// j in [0, N).
    std::vector<double> oracle_probs;
};

/// Builds and runs the solver ideally. Throws std::invalid_argument if the
/// register would exceed kMaxQubits.
SolverResult solve(const PoissonInstance &instance);

/// Post-selects a solver state on the success pattern and reads out B.
PostSelection solver_post_select(const StateVector &state, const SolverLayout &layout);
PostSelection solver_post_select(const DensityMatrix &rho, const SolverLayout &layout);

}  // namespace qpoisson

#endif
