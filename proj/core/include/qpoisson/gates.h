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

#ifndef QPOISSON_GATES_H
#define QPOISSON_GATES_H

#include <cstdint>
#include <optional>
#include <span>
#include <string_view>
#include <vector>

#include "qpoisson/matrix.h"

namespace qpoisson {

enum class GateKind : std::uint8_t {
    H,
    X,
    RX,
    RY,
    RZ,
    P,
    SWAP,
    CX,
    CH,
    CRY,
    CRZ,
    CP,
    CCX,
    Barrier,
    Measure,
};

/// Static properties of a gate kind.
struct GateInfo {
    std::string_view name;  // Canonical dialect spelling.
    std::size_t arity;      // 0 for Barrier (any number of qubits).
    bool parameterized;
    bool unitary;  // False for Barrier and Measure.
};

const GateInfo &gate_info(GateKind kind);
/// Canonical names plus the `cu1` and `u1` aliases.
std::optional<GateKind> gate_kind_from_name(std::string_view name);

/// Exact matrix of a unitary gate kind. Controlled gates put the control on the
/// most significant local bit and act as identity while it is |0>.
/// RY(t) = [[cos t/2, -sin t/2], [sin t/2, cos t/2]].
///
/// Throws std::invalid_argument if an angle is missing for a parameterized
/// kind, supplied for a fixed kind, or the kind is not unitary.
Matrix unitary_of(GateKind kind, std::optional<double> angle = std::nullopt);

struct GateOp {
    GateKind kind;
    /// Controls before targets.
    std::vector<Qubit> qubits;
    std::optional<double> angle;
    /// Measure only.
    std::optional<std::uint32_t> clbit;

    bool operator==(const GateOp &other) const = default;
};

/// Ordered gate list over `num_qubits` qubits and `num_clbits` classical bits.
///
/// Every op appended is validated against the kind's arity and the circuit's
/// dimensions, so a Circuit is always well formed.
class Circuit {
   public:
    Circuit() = default;
    Circuit(std::size_t num_qubits, std::size_t num_clbits = 0);

    std::size_t num_qubits() const {
        return num_qubits_;
    }
    std::size_t num_clbits() const {
        return num_clbits_;
    }
    const std::vector<GateOp> &ops() const {
        return ops_;
    }
    std::size_t size() const {
        return ops_.size();
    }
    bool empty() const {
        return ops_.empty();
    }

    /// Throws std::invalid_argument on arity, angle, duplicate-qubit or range
    /// violations; the circuit is unchanged in that case.
    Circuit &append(GateOp op);
    Circuit &append(GateKind kind, std::vector<Qubit> qubits, std::optional<double> angle = std::nullopt);

    Circuit &h(Qubit q);
    Circuit &x(Qubit q);
    Circuit &rx(double theta, Qubit q);
    Circuit &ry(double theta, Qubit q);
    Circuit &rz(double theta, Qubit q);
    Circuit &p(double theta, Qubit q);
    Circuit &swap(Qubit a, Qubit b);
    Circuit &cx(Qubit control, Qubit target);
    Circuit &ch(Qubit control, Qubit target);
    Circuit &cry(double theta, Qubit control, Qubit target);
    Circuit &crz(double theta, Qubit control, Qubit target);
    Circuit &cp(double theta, Qubit control, Qubit target);
    Circuit &ccx(Qubit c1, Qubit c2, Qubit target);
    Circuit &barrier(std::vector<Qubit> qubits);
    Circuit &measure(Qubit q, std::uint32_t clbit);

    /// Appends every op of `sub`, relabelling sub-qubit k as `mapping[k]`.
    /// Measures in `sub` are rejected.
    Circuit &extend(const Circuit &sub, std::span<const Qubit> mapping);
    /// Appends `sub` on the same qubit labels.
    Circuit &extend(const Circuit &sub);

    /// Copy without Measure ops.
    Circuit without_measurements() const;
    bool has_measurements() const;

    bool operator==(const Circuit &other) const = default;

   private:
    std::size_t num_qubits_ = 0;
    std::size_t num_clbits_ = 0;
    std::vector<GateOp> ops_;
};

/// Adjoint circuit: ops reversed, each replaced by its adjoint. Self-inverse
/// gates are kept, parameterized gates negate their angle. Throws
/// std::invalid_argument if the circuit contains a Measure.
Circuit inverse(const Circuit &circuit);

/// Structural equality with angles compared within `angle_tolerance`.
bool structurally_equal(const Circuit &a, const Circuit &b, double angle_tolerance = 1e-12);

}  // namespace qpoisson

#endif
