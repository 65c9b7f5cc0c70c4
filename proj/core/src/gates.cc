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

#include "qpoisson/gates.h"

#include <array>
#include <cmath>
#include <stdexcept>
#include <string>

namespace qpoisson {

namespace {

constexpr std::array<GateInfo, 15> kGateTable{{
    {"h", 1, false, true},
    {"x", 1, false, true},
    {"rx", 1, true, true},
    {"ry", 1, true, true},
    {"rz", 1, true, true},
    {"p", 1, true, true},
    {"swap", 2, false, true},
    {"cx", 2, false, true},
    {"ch", 2, false, true},
    {"cry", 2, true, true},
    {"crz", 2, true, true},
    {"cp", 2, true, true},
    {"ccx", 3, false, true},
    {"barrier", 0, false, false},
    {"measure", 1, false, false},
}};

Matrix controlled(const Matrix &u) {
    std::size_t d = u.dim();
    Matrix result = Matrix::identity(2 * d);
    for (std::size_t r = 0; r < d; r++) {
        for (std::size_t c = 0; c < d; c++) {
            result(d + r, d + c) = u(r, c);
        }
    }
    return result;
}

Matrix rx(double t) {
    double c = std::cos(t / 2);
    double s = std::sin(t / 2);
    return Matrix{{c, Complex{0, -s}}, {Complex{0, -s}, c}};
}

Matrix ry(double t) {
    double c = std::cos(t / 2);
    double s = std::sin(t / 2);
    return Matrix{{c, -s}, {s, c}};
}

Matrix rz(double t) {
    return Matrix{{std::polar(1.0, -t / 2), 0}, {0, std::polar(1.0, t / 2)}};
}

Matrix phase(double t) {
    return Matrix{{1, 0}, {0, std::polar(1.0, t)}};
}

}  // namespace

const GateInfo &gate_info(GateKind kind) {
    return kGateTable.at(static_cast<std::size_t>(kind));
}

std::optional<GateKind> gate_kind_from_name(std::string_view name) {
    if (name == "cu1") {
        return GateKind::CP;
    }
    if (name == "u1") {
        return GateKind::P;
    }
    for (std::size_t k = 0; k < kGateTable.size(); k++) {
        if (kGateTable[k].name == name) {
            return static_cast<GateKind>(k);
        }
    }
    return std::nullopt;
}

Matrix unitary_of(GateKind kind, std::optional<double> angle) {
    const GateInfo &info = gate_info(kind);
    if (!info.unitary) {
        throw std::invalid_argument(std::string(info.name) + " has no unitary matrix.");
    }
    if (info.parameterized != angle.has_value()) {
        throw std::invalid_argument(
            std::string(info.name) + (info.parameterized ? " requires an angle." : " takes no angle."));
    }
    if (angle.has_value() && !std::isfinite(*angle)) {
        throw std::invalid_argument(std::string(info.name) + " angle must be finite.");
    }
    const double s = 1 / std::sqrt(2.0);
    static const Matrix kH{{s, s}, {s, -s}};
    static const Matrix kX{{0, 1}, {1, 0}};
    switch (kind) {
        case GateKind::H:
            return kH;
        case GateKind::X:
            return kX;
        case GateKind::RX:
            return rx(*angle);
        case GateKind::RY:
            return ry(*angle);
        case GateKind::RZ:
            return rz(*angle);
        case GateKind::P:
            return phase(*angle);
        case GateKind::SWAP:
            return Matrix{{1, 0, 0, 0}, {0, 0, 1, 0}, {0, 1, 0, 0}, {0, 0, 0, 1}};
        case GateKind::CX:
            return controlled(kX);
        case GateKind::CH:
            return controlled(kH);
        case GateKind::CRY:
            return controlled(ry(*angle));
        case GateKind::CRZ:
            return controlled(rz(*angle));
        case GateKind::CP:
            return controlled(phase(*angle));
        case GateKind::CCX:
            return controlled(controlled(kX));
        case GateKind::Barrier:
        case GateKind::Measure:
            break;
    }
    throw std::invalid_argument("Unknown gate kind.");
}

Circuit::Circuit(std::size_t num_qubits, std::size_t num_clbits) : num_qubits_(num_qubits), num_clbits_(num_clbits) {
}

Circuit &Circuit::append(GateOp op) {
    const GateInfo &info = gate_info(op.kind);
    std::string name(info.name);
    if (info.arity != 0 && op.qubits.size() != info.arity) {
        throw std::invalid_argument(
            name + " acts on " + std::to_string(info.arity) + " qubit(s), got " + std::to_string(op.qubits.size()) +
            ".");
    }
    if (op.kind == GateKind::Barrier && op.qubits.empty()) {
        throw std::invalid_argument("barrier needs at least one qubit.");
    }
    if (info.parameterized != op.angle.has_value()) {
        throw std::invalid_argument(name + (info.parameterized ? " requires an angle." : " takes no angle."));
    }
    if (op.angle.has_value() && !std::isfinite(*op.angle)) {
        throw std::invalid_argument(name + " angle must be finite.");
    }
    for (std::size_t a = 0; a < op.qubits.size(); a++) {
        if (op.qubits[a] >= num_qubits_) {
            throw std::invalid_argument(
                name + " qubit " + std::to_string(op.qubits[a]) + " is out of range for " +
                std::to_string(num_qubits_) + " qubits.");
        }
        for (std::size_t b = 0; b < a; b++) {
            if (op.qubits[a] == op.qubits[b]) {
                throw std::invalid_argument(name + " uses qubit " + std::to_string(op.qubits[a]) + " twice.");
            }
        }
    }
    if (op.kind == GateKind::Measure) {
        if (!op.clbit.has_value()) {
            throw std::invalid_argument("measure needs a classical bit.");
        }
        if (*op.clbit >= num_clbits_) {
            throw std::invalid_argument(
                "measure classical bit " + std::to_string(*op.clbit) + " is out of range for " +
                std::to_string(num_clbits_) + " bits.");
        }
    } else if (op.clbit.has_value()) {
        throw std::invalid_argument(name + " does not write a classical bit.");
    }
    ops_.push_back(std::move(op));
    return *this;
}

Circuit &Circuit::append(GateKind kind, std::vector<Qubit> qubits, std::optional<double> angle) {
    return append(GateOp{kind, std::move(qubits), angle, std::nullopt});
}

Circuit &Circuit::h(Qubit q) {
    return append(GateKind::H, {q});
}
Circuit &Circuit::x(Qubit q) {
    return append(GateKind::X, {q});
}
Circuit &Circuit::rx(double theta, Qubit q) {
    return append(GateKind::RX, {q}, theta);
}
Circuit &Circuit::ry(double theta, Qubit q) {
    return append(GateKind::RY, {q}, theta);
}
Circuit &Circuit::rz(double theta, Qubit q) {
    return append(GateKind::RZ, {q}, theta);
}
Circuit &Circuit::p(double theta, Qubit q) {
    return append(GateKind::P, {q}, theta);
}
Circuit &Circuit::swap(Qubit a, Qubit b) {
    return append(GateKind::SWAP, {a, b});
}
Circuit &Circuit::cx(Qubit control, Qubit target) {
    return append(GateKind::CX, {control, target});
}
Circuit &Circuit::ch(Qubit control, Qubit target) {
    return append(GateKind::CH, {control, target});
}
Circuit &Circuit::cry(double theta, Qubit control, Qubit target) {
    return append(GateKind::CRY, {control, target}, theta);
}
Circuit &Circuit::crz(double theta, Qubit control, Qubit target) {
    return append(GateKind::CRZ, {control, target}, theta);
}
Circuit &Circuit::cp(double theta, Qubit control, Qubit target) {
    return append(GateKind::CP, {control, target}, theta);
}
Circuit &Circuit::ccx(Qubit c1, Qubit c2, Qubit target) {
    return append(GateKind::CCX, {c1, c2, target});
}
Circuit &Circuit::barrier(std::vector<Qubit> qubits) {
    return append(GateKind::Barrier, std::move(qubits));
}
Circuit &Circuit::measure(Qubit q, std::uint32_t clbit) {
    return append(GateOp{GateKind::Measure, {q}, std::nullopt, clbit});
}

Circuit &Circuit::extend(const Circuit &sub, std::span<const Qubit> mapping) {
    if (mapping.size() != sub.num_qubits()) {
        throw std::invalid_argument("Qubit mapping must cover every qubit of the sub-circuit.");
    }
    Circuit staged = *this;
    for (const auto &op : sub.ops()) {
        if (op.kind == GateKind::Measure) {
            throw std::invalid_argument("Cannot splice a sub-circuit containing measurements.");
        }
        GateOp mapped = op;
        for (auto &q : mapped.qubits) {
            q = mapping[q];
        }
        staged.append(std::move(mapped));
    }
    *this = std::move(staged);
    return *this;
}

Circuit &Circuit::extend(const Circuit &sub) {
    std::vector<Qubit> identity(sub.num_qubits());
    for (std::size_t k = 0; k < identity.size(); k++) {
        identity[k] = static_cast<Qubit>(k);
    }
    return extend(sub, identity);
}

Circuit Circuit::without_measurements() const {
    Circuit result(num_qubits_, num_clbits_);
    for (const auto &op : ops_) {
        if (op.kind != GateKind::Measure) {
            result.ops_.push_back(op);
        }
    }
    return result;
}

bool Circuit::has_measurements() const {
    for (const auto &op : ops_) {
        if (op.kind == GateKind::Measure) {
            return true;
        }
    }
    return false;
}

Circuit inverse(const Circuit &circuit) {
    if (circuit.has_measurements()) {
        throw std::invalid_argument("Cannot invert a circuit containing measurements.");
    }
    Circuit result(circuit.num_qubits(), circuit.num_clbits());
    const auto &ops = circuit.ops();
    for (auto it = ops.rbegin(); it != ops.rend(); ++it) {
        GateOp op = *it;
        if (op.angle.has_value()) {
            op.angle = -*op.angle;
        }
        result.append(std::move(op));
    }
    return result;
}

bool structurally_equal(const Circuit &a, const Circuit &b, double angle_tolerance) {
    if (a.num_qubits() != b.num_qubits() || a.num_clbits() != b.num_clbits() || a.size() != b.size()) {
        return false;
    }
    for (std::size_t k = 0; k < a.size(); k++) {
        const GateOp &x = a.ops()[k];
        const GateOp &y = b.ops()[k];
        if (x.kind != y.kind || x.qubits != y.qubits || x.clbit != y.clbit || x.angle.has_value() != y.angle.has_value()) {
            return false;
        }
        if (x.angle.has_value() && std::abs(*x.angle - *y.angle) > angle_tolerance) {
            return false;
        }
    }
    return true;
}

}  // namespace qpoisson
