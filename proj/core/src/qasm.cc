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

#include "qpoisson/qasm.h"

#include <charconv>
#include <cmath>
#include <cstdio>
#include <limits>
#include <numbers>
#include <optional>
#include <sstream>
#include <vector>

namespace qpoisson {

namespace {

// Declared registers beyond this size are rejected; nothing downstream can
// simulate them anyway.
constexpr std::uint64_t kMaxRegisterSize = 1u << 20;

enum class TokenType {
    Identifier,
    Number,
    LParen,
    RParen,
    LBracket,
    RBracket,
    Comma,
    Semicolon,
    Minus,
    Plus,
    Star,
    Slash,
    Arrow,
    End,
};

struct Token {
    TokenType type;
    std::string_view text;
    std::size_t line;
    std::size_t column;
};

std::string describe(const Token &t) {
    if (t.type == TokenType::End) {
        return "end of input";
    }
    return "'" + std::string(t.text) + "'";
}

class Lexer {
   public:
    explicit Lexer(std::string_view source) : src_(source) {
    }

    std::vector<Token> tokenize() {
        std::vector<Token> tokens;
        while (true) {
            skip_space_and_comments();
            if (pos_ >= src_.size()) {
                tokens.push_back({TokenType::End, {}, line_, col_});
                return tokens;
            }
            tokens.push_back(next());
        }
    }

   private:
    void advance() {
        if (src_[pos_] == '\n') {
            line_++;
            col_ = 1;
        } else {
            col_++;
        }
        pos_++;
    }

    void skip_space_and_comments() {
        while (pos_ < src_.size()) {
            char c = src_[pos_];
            if (c == ' ' || c == '\t' || c == '\r' || c == '\n' || c == '\f' || c == '\v') {
                advance();
            } else if (c == '#' || (c == '/' && pos_ + 1 < src_.size() && src_[pos_ + 1] == '/')) {
                while (pos_ < src_.size() && src_[pos_] != '\n') {
                    advance();
                }
            } else {
                return;
            }
        }
    }

    static bool is_ident_start(char c) {
        return (c >= 'a' && c <= 'z') || (c >= 'A' && c <= 'Z') || c == '_';
    }
    static bool is_digit(char c) {
        return c >= '0' && c <= '9';
    }

    Token next() {
        std::size_t start = pos_;
        std::size_t line = line_;
        std::size_t col = col_;
        char c = src_[pos_];
        auto single = [&](TokenType type) {
            advance();
            return Token{type, src_.substr(start, 1), line, col};
        };
        if (is_ident_start(c)) {
            while (pos_ < src_.size() && (is_ident_start(src_[pos_]) || is_digit(src_[pos_]))) {
                advance();
            }
            return Token{TokenType::Identifier, src_.substr(start, pos_ - start), line, col};
        }
        if (is_digit(c) || (c == '.' && pos_ + 1 < src_.size() && is_digit(src_[pos_ + 1]))) {
            while (pos_ < src_.size() && (is_digit(src_[pos_]) || src_[pos_] == '.')) {
                advance();
            }
            if (pos_ < src_.size() && (src_[pos_] == 'e' || src_[pos_] == 'E')) {
                std::size_t look = pos_ + 1;
                if (look < src_.size() && (src_[look] == '+' || src_[look] == '-')) {
                    look++;
                }
                if (look < src_.size() && is_digit(src_[look])) {
                    while (pos_ < look) {
                        advance();
                    }
                    while (pos_ < src_.size() && is_digit(src_[pos_])) {
                        advance();
                    }
                }
            }
            return Token{TokenType::Number, src_.substr(start, pos_ - start), line, col};
        }
        switch (c) {
            case '(':
                return single(TokenType::LParen);
            case ')':
                return single(TokenType::RParen);
            case '[':
                return single(TokenType::LBracket);
            case ']':
                return single(TokenType::RBracket);
            case ',':
                return single(TokenType::Comma);
            case ';':
                return single(TokenType::Semicolon);
            case '+':
                return single(TokenType::Plus);
            case '*':
                return single(TokenType::Star);
            case '/':
                return single(TokenType::Slash);
            case '-':
                if (pos_ + 1 < src_.size() && src_[pos_ + 1] == '>') {
                    advance();
                    advance();
                    return Token{TokenType::Arrow, src_.substr(start, 2), line, col};
                }
                return single(TokenType::Minus);
            default:
                break;
        }
        unsigned char byte = static_cast<unsigned char>(c);
        char buf[48];
        if (byte >= 0x20 && byte < 0x7f) {
            std::snprintf(buf, sizeof(buf), "unexpected character '%c'", c);
        } else {
            std::snprintf(buf, sizeof(buf), "unexpected byte 0x%02x", byte);
        }
        throw ParseError(line, col, ParseErrorKind::Syntax, buf);
    }

    std::string_view src_;
    std::size_t pos_ = 0;
    std::size_t line_ = 1;
    std::size_t col_ = 1;
};

struct Register {
    std::string name;
    std::uint64_t size;
};

class Parser {
   public:
    explicit Parser(std::vector<Token> tokens) : tokens_(std::move(tokens)) {
    }

    Circuit parse() {
        while (peek().type != TokenType::End) {
            statement();
        }
        if (!qreg_.has_value()) {
            throw ParseError(peek().line, peek().column, ParseErrorKind::BadRegister, "no qreg declared");
        }
        return finish();
    }

   private:
    struct PendingOp {
        GateOp op;
        Token at;
    };

    const Token &peek() const {
        return tokens_[pos_];
    }
    const Token &take() {
        const Token &t = tokens_[pos_];
        if (t.type != TokenType::End) {
            pos_++;
        }
        return t;
    }
    [[noreturn]] void fail(const Token &t, ParseErrorKind kind, const std::string &message) const {
        throw ParseError(t.line, t.column, kind, message);
    }
    const Token &expect(TokenType type, const char *what) {
        const Token &t = peek();
        if (t.type != type) {
            fail(t, ParseErrorKind::Syntax, std::string("expected ") + what + " but found " + describe(t));
        }
        return take();
    }

    std::uint64_t integer(const Token &t, ParseErrorKind kind) const {
        std::uint64_t value = 0;
        auto [end, ec] = std::from_chars(t.text.data(), t.text.data() + t.text.size(), value);
        if (ec != std::errc() || end != t.text.data() + t.text.size()) {
            fail(t, kind, "expected a non-negative integer but found " + describe(t));
        }
        return value;
    }

    void statement() {
        const Token &head = take();
        if (head.type != TokenType::Identifier) {
            fail(head, ParseErrorKind::Syntax, "expected a statement but found " + describe(head));
        }
        if (head.text == "qreg" || head.text == "creg") {
            declaration(head);
        } else if (head.text == "measure") {
            measurement(head);
        } else if (head.text == "barrier") {
            barrier(head);
        } else {
            gate(head);
        }
    }

    void declaration(const Token &head) {
        bool quantum = head.text == "qreg";
        const Token &name = expect(TokenType::Identifier, "a register name");
        expect(TokenType::LBracket, "'['");
        const Token &size_tok = expect(TokenType::Number, "a register size");
        std::uint64_t size = integer(size_tok, ParseErrorKind::BadRegister);
        expect(TokenType::RBracket, "']'");
        expect(TokenType::Semicolon, "';'");
        if (size > kMaxRegisterSize || (quantum && size == 0)) {
            fail(size_tok, ParseErrorKind::BadRegister, "unsupported register size " + std::string(size_tok.text));
        }
        auto &slot = quantum ? qreg_ : creg_;
        if (slot.has_value()) {
            fail(head, ParseErrorKind::BadRegister, "only one " + std::string(head.text) + " may be declared");
        }
        const auto &other = quantum ? creg_ : qreg_;
        if (other.has_value() && other->name == name.text) {
            fail(name, ParseErrorKind::BadRegister, "register name '" + std::string(name.text) + "' is already used");
        }
        slot = Register{std::string(name.text), size};
    }

    Qubit qubit_ref(const std::optional<Register> &reg, const char *what) {
        const Token &name = expect(TokenType::Identifier, what);
        if (!reg.has_value() || reg->name != name.text) {
            fail(name, ParseErrorKind::BadRegister, "undeclared register '" + std::string(name.text) + "'");
        }
        expect(TokenType::LBracket, "'['");
        const Token &idx_tok = expect(TokenType::Number, "an index");
        std::uint64_t idx = integer(idx_tok, ParseErrorKind::BadRegister);
        if (idx >= reg->size) {
            fail(
                idx_tok,
                ParseErrorKind::BadRegister,
                "index " + std::string(idx_tok.text) + " is out of range for " + reg->name + "[" +
                    std::to_string(reg->size) + "]");
        }
        expect(TokenType::RBracket, "']'");
        return static_cast<Qubit>(idx);
    }

    void measurement(const Token &head) {
        Qubit q = qubit_ref(qreg_, "a qubit");
        expect(TokenType::Arrow, "'->'");
        Qubit c = qubit_ref(creg_, "a classical bit");
        expect(TokenType::Semicolon, "';'");
        ops_.push_back({GateOp{GateKind::Measure, {q}, std::nullopt, c}, head});
    }

    void barrier(const Token &head) {
        std::vector<Qubit> qubits;
        while (true) {
            const Token &name = peek();
            if (name.type == TokenType::Identifier && pos_ + 1 < tokens_.size() &&
                tokens_[pos_ + 1].type != TokenType::LBracket) {
                // Whole-register barrier.
                take();
                if (!qreg_.has_value() || qreg_->name != name.text) {
                    fail(name, ParseErrorKind::BadRegister, "undeclared register '" + std::string(name.text) + "'");
                }
                for (std::uint64_t k = 0; k < qreg_->size; k++) {
                    qubits.push_back(static_cast<Qubit>(k));
                }
            } else {
                qubits.push_back(qubit_ref(qreg_, "a qubit"));
            }
            if (peek().type != TokenType::Comma) {
                break;
            }
            take();
        }
        expect(TokenType::Semicolon, "';'");
        for (std::size_t a = 0; a < qubits.size(); a++) {
            for (std::size_t b = 0; b < a; b++) {
                if (qubits[a] == qubits[b]) {
                    fail(head, ParseErrorKind::BadArity, "barrier lists a qubit twice");
                }
            }
        }
        ops_.push_back({GateOp{GateKind::Barrier, std::move(qubits), std::nullopt, std::nullopt}, head});
    }

    double factor() {
        const Token &t = take();
        if (t.type == TokenType::Identifier && t.text == "pi") {
            return std::numbers::pi;
        }
        if (t.type == TokenType::Number) {
            double value = 0;
            auto [end, ec] = std::from_chars(t.text.data(), t.text.data() + t.text.size(), value);
            if (ec != std::errc() || end != t.text.data() + t.text.size() || !std::isfinite(value)) {
                fail(t, ParseErrorKind::BadExpression, "malformed number " + describe(t));
            }
            return value;
        }
        fail(t, ParseErrorKind::BadExpression, "expected 'pi' or a number but found " + describe(t));
    }

    double angle_expression() {
        const Token &start = peek();
        double sign = 1;
        if (peek().type == TokenType::Minus) {
            take();
            sign = -1;
        } else if (peek().type == TokenType::Plus) {
            take();
        }
        double value = factor();
        while (peek().type == TokenType::Star || peek().type == TokenType::Slash) {
            bool divide = take().type == TokenType::Slash;
            const Token &rhs_tok = peek();
            double rhs = factor();
            if (divide) {
                if (rhs == 0) {
                    fail(rhs_tok, ParseErrorKind::BadExpression, "division by zero");
                }
                value /= rhs;
            } else {
                value *= rhs;
            }
        }
        value *= sign;
        if (!std::isfinite(value)) {
            fail(start, ParseErrorKind::BadExpression, "angle is not finite");
        }
        return value;
    }

    void gate(const Token &head) {
        auto kind = gate_kind_from_name(head.text);
        if (!kind.has_value() || *kind == GateKind::Barrier || *kind == GateKind::Measure) {
            fail(head, ParseErrorKind::UnknownGate, "unknown gate '" + std::string(head.text) + "'");
        }
        const GateInfo &info = gate_info(*kind);
        std::optional<double> angle;
        if (peek().type == TokenType::LParen) {
            const Token &paren = take();
            if (!info.parameterized) {
                fail(paren, ParseErrorKind::BadExpression, std::string(info.name) + " takes no angle");
            }
            angle = angle_expression();
            expect(TokenType::RParen, "')'");
        } else if (info.parameterized) {
            fail(peek(), ParseErrorKind::BadExpression, std::string(info.name) + " requires an angle");
        }
        std::vector<Qubit> qubits;
        const Token &first_arg = peek();
        qubits.push_back(qubit_ref(qreg_, "a qubit"));
        while (peek().type == TokenType::Comma) {
            take();
            qubits.push_back(qubit_ref(qreg_, "a qubit"));
        }
        expect(TokenType::Semicolon, "';'");
        if (qubits.size() != info.arity) {
            fail(
                first_arg,
                ParseErrorKind::BadArity,
                std::string(info.name) + " acts on " + std::to_string(info.arity) + " qubit(s), got " +
                    std::to_string(qubits.size()));
        }
        for (std::size_t a = 0; a < qubits.size(); a++) {
            for (std::size_t b = 0; b < a; b++) {
                if (qubits[a] == qubits[b]) {
                    fail(first_arg, ParseErrorKind::BadArity, std::string(info.name) + " uses a qubit twice");
                }
            }
        }
        ops_.push_back({GateOp{*kind, std::move(qubits), angle, std::nullopt}, head});
    }

    Circuit finish() {
        Circuit circuit(qreg_->size, creg_.has_value() ? creg_->size : 0);
        for (auto &pending : ops_) {
            try {
                circuit.append(std::move(pending.op));
            } catch (const std::invalid_argument &e) {
                // Declarations after use can still leave an op out of range.
                fail(pending.at, ParseErrorKind::BadRegister, e.what());
            }
        }
        return circuit;
    }

    std::vector<Token> tokens_;
    std::size_t pos_ = 0;
    std::optional<Register> qreg_;
    std::optional<Register> creg_;
    std::vector<PendingOp> ops_;
};

}  // namespace

std::string_view parse_error_kind_name(ParseErrorKind kind) {
    switch (kind) {
        case ParseErrorKind::UnknownGate:
            return "UnknownGate";
        case ParseErrorKind::BadArity:
            return "BadArity";
        case ParseErrorKind::BadExpression:
            return "BadExpression";
        case ParseErrorKind::BadRegister:
            return "BadRegister";
        case ParseErrorKind::Syntax:
            return "Syntax";
    }
    return "?";
}

ParseError::ParseError(std::size_t line, std::size_t column, ParseErrorKind kind, const std::string &message)
    : std::runtime_error(
          "line " + std::to_string(line) + ", column " + std::to_string(column) + ": " +
          std::string(parse_error_kind_name(kind)) + ": " + message),
      line_(line),
      column_(column),
      kind_(kind),
      message_(message) {
}

Circuit parse_qasm(std::string_view source) {
    Lexer lexer(source);
    Parser parser(lexer.tokenize());
    return parser.parse();
}

std::string format_angle(double theta) {
    if (theta == 0) {
        return "0";
    }
    constexpr double pi = std::numbers::pi;
    for (long long den = 1; den <= 1024; den++) {
        double num = std::round(theta * static_cast<double>(den) / pi);
        if (num == 0 || std::abs(num) > 1e6) {
            continue;
        }
        double candidate = num * pi / static_cast<double>(den);
        if (std::abs(candidate - theta) <= 4 * std::numeric_limits<double>::epsilon() * std::abs(theta)) {
            std::string out = num < 0 ? "-pi" : "pi";
            long long mag = static_cast<long long>(std::abs(num));
            if (mag != 1) {
                out += "*" + std::to_string(mag);
            }
            if (den != 1) {
                out += "/" + std::to_string(den);
            }
            return out;
        }
    }
    char buf[40];
    std::snprintf(buf, sizeof(buf), "%.17g", theta);
    return buf;
}

std::string serialize_qasm(const Circuit &circuit) {
    std::ostringstream out;
    out << "qreg q[" << circuit.num_qubits() << "];\n";
    out << "creg c[" << circuit.num_clbits() << "];";
    for (const auto &op : circuit.ops()) {
        out << "\n";
        if (op.kind == GateKind::Measure) {
            out << "measure q[" << op.qubits[0] << "] -> c[" << *op.clbit << "];";
            continue;
        }
        out << gate_info(op.kind).name;
        if (op.angle.has_value()) {
            out << "(" << format_angle(*op.angle) << ")";
        }
        for (std::size_t k = 0; k < op.qubits.size(); k++) {
            out << (k == 0 ? " " : ",") << "q[" << op.qubits[k] << "]";
        }
        out << ";";
    }
    return out.str();
}

}  // namespace qpoisson
