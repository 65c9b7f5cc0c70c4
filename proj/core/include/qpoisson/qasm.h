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

#ifndef QPOISSON_QASM_H
#define QPOISSON_QASM_H

#include <stdexcept>
#include <string>
#include <string_view>

#include "qpoisson/gates.h"

namespace qpoisson {

enum class ParseErrorKind {
    UnknownGate,
    BadArity,
    BadExpression,
    BadRegister,
    Syntax,
};

std::string_view parse_error_kind_name(ParseErrorKind kind);

/// Raised by `parse_qasm`. Line and column are 1-based and point at the first
/// character of the offending token (or one past the end of input).
class ParseError : public std::runtime_error {
   public:
    ParseError(std::size_t line, std::size_t column, ParseErrorKind kind, const std::string &message);

    std::size_t line() const {
        return line_;
    }
    std::size_t column() const {
        return column_;
    }
    ParseErrorKind kind() const {
        return kind_;
    }
    const std::string &message() const {
        return message_;
    }

   private:
    std::size_t line_;
    std::size_t column_;
    ParseErrorKind kind_;
    std::string message_;
};

/// Parses the small QASM dialect used for the solver listings:
///
///     qreg q[5]; creg c[4];
///     h q[3];
///     cry(-pi/6) q[1],q[2];
///     barrier q[5];
///     measure q[3] -> c[3];
///
/// Newlines are plain whitespace and `;` is the only statement terminator, so
/// statements may wrap across lines. `#` and `//` start comments that run to the
/// end of the line. Angles are `[-] factor {(*|/) factor}` with factors `pi` or
/// decimal literals. Exactly one qreg and at most one creg may be declared.
///
/// Throws ParseError for anything else; never throws another exception type.
Circuit parse_qasm(std::string_view source);

/// Emits the same dialect with register names `q` and `c`, one statement per
/// line and no trailing newline. Angles that are rational multiples of pi are
/// written symbolically (`pi/8`, `-pi*3/4`); others use a round-trippable
/// decimal. parse_qasm(serialize_qasm(c)) is structurally equal to c.
std::string serialize_qasm(const Circuit &circuit);

/// Symbolic or decimal rendering of an angle as used by serialize_qasm.
std::string format_angle(double theta);

}  // namespace qpoisson

#endif
