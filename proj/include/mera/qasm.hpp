#pragma once

// Reader and writer for the OpenQASM subset documented in
// docs/qasm-subset.md. Registers are flattened into one qubit index space and
// one classical bit index space in declaration order.

#include <cctype>
#include <charconv>
#include <cmath>
#include <cstddef>
#include <cstdint>
#include <fstream>
#include <map>
#include <numbers>
#include <optional>
#include <sstream>
#include <string>
#include <string_view>
#include <system_error>
#include <utility>
#include <vector>

#include "mera/circuit.hpp"
#include "mera/errors.hpp"

namespace mera::qasm {

struct SourceSpan {
  std::size_t line = 1;
  std::size_t column = 1;
  std::size_t offset = 0;
};

class QasmError : public Error {
 public:
  QasmError(const std::string& kind, SourceSpan span, const std::string& msg)
      : Error(kind + " at " + std::to_string(span.line) + ":" +
              std::to_string(span.column) + ": " + msg),
        span_(span) {}
  [[nodiscard]] const SourceSpan& span() const noexcept { return span_; }

 private:
  SourceSpan span_;
};

class SyntaxError : public QasmError {
 public:
  SyntaxError(SourceSpan s, const std::string& m) : QasmError("syntax error", s, m) {}
};

class UnsupportedFeature : public QasmError {
 public:
  UnsupportedFeature(SourceSpan s, const std::string& construct)
      : QasmError("unsupported feature", s, construct) {}
};

class IndexOutOfRange : public QasmError {
 public:
  IndexOutOfRange(SourceSpan s, const std::string& m)
      : QasmError("index out of range", s, m) {}
};

namespace detail {

enum class Tok { Ident, Int, Real, String, Punct, Pragma, End };

struct Token {
  Tok kind = Tok::End;
  std::string text;
  SourceSpan span;
};

class Lexer {
 public:
  explicit Lexer(std::string_view src) : src_(src) {}

  std::vector<Token> run() {
    std::vector<Token> out;
    for (;;) {
      skip_space_and_comments();
      Token t;
      t.span = here();
      if (pos_ >= src_.size()) {
        t.kind = Tok::End;
        out.push_back(t);
        return out;
      }
      const char c = src_[pos_];
      if (c == '#') {
        // "#pragma" runs to end of line.
        const std::size_t eol = src_.find('\n', pos_);
        std::string_view line = src_.substr(pos_, eol == std::string_view::npos
                                                      ? std::string_view::npos
                                                      : eol - pos_);
        if (line.rfind("#pragma", 0) != 0) {
          throw SyntaxError(t.span, "unexpected '#'");
        }
        t.kind = Tok::Pragma;
        t.text = std::string(line.substr(7));
        advance(line.size());
      } else if (std::isalpha(static_cast<unsigned char>(c)) || c == '_') {
        std::size_t n = 0;
        while (pos_ + n < src_.size() &&
               (std::isalnum(static_cast<unsigned char>(src_[pos_ + n])) ||
                src_[pos_ + n] == '_')) {
          ++n;
        }
        t.kind = Tok::Ident;
        t.text = std::string(src_.substr(pos_, n));
        advance(n);
      } else if (std::isdigit(static_cast<unsigned char>(c)) ||
                 (c == '.' && pos_ + 1 < src_.size() &&
                  std::isdigit(static_cast<unsigned char>(src_[pos_ + 1])))) {
        std::size_t n = 0;
        bool real = false;
        while (pos_ + n < src_.size()) {
          const char d = src_[pos_ + n];
          if (std::isdigit(static_cast<unsigned char>(d))) {
            ++n;
          } else if (d == '.') {
            real = true;
            ++n;
          } else if ((d == 'e' || d == 'E') && pos_ + n + 1 < src_.size()) {
            real = true;
            ++n;
            if (src_[pos_ + n] == '+' || src_[pos_ + n] == '-') ++n;
          } else {
            break;
          }
        }
        t.kind = real ? Tok::Real : Tok::Int;
        t.text = std::string(src_.substr(pos_, n));
        advance(n);
      } else if (c == '"') {
        const std::size_t close = src_.find('"', pos_ + 1);
        if (close == std::string_view::npos) {
          throw SyntaxError(t.span, "unterminated string");
        }
        t.kind = Tok::String;
        t.text = std::string(src_.substr(pos_ + 1, close - pos_ - 1));
        advance(close - pos_ + 1);
      } else {
        static constexpr std::string_view two[] = {"->", "=="};
        t.kind = Tok::Punct;
        bool matched = false;
        for (auto p : two) {
          if (src_.substr(pos_, 2) == p) {
            t.text = std::string(p);
            advance(2);
            matched = true;
            break;
          }
        }
        if (!matched) {
          if (std::string_view("()[]{};,=+-*/").find(c) == std::string_view::npos) {
            throw SyntaxError(t.span, std::string("unexpected character '") + c + "'");
          }
          t.text = std::string(1, c);
          advance(1);
        }
      }
      out.push_back(std::move(t));
    }
  }

 private:
  [[nodiscard]] SourceSpan here() const { return {line_, col_, pos_}; }

  void advance(std::size_t n) {
    for (std::size_t i = 0; i < n && pos_ < src_.size(); ++i, ++pos_) {
      if (src_[pos_] == '\n') {
        ++line_;
        col_ = 1;
      } else {
        ++col_;
      }
    }
  }

  void skip_space_and_comments() {
    for (;;) {
      while (pos_ < src_.size() &&
             std::isspace(static_cast<unsigned char>(src_[pos_]))) {
        advance(1);
      }
      if (src_.substr(pos_, 2) == "//") {
        while (pos_ < src_.size() && src_[pos_] != '\n') advance(1);
        continue;
      }
      if (src_.substr(pos_, 2) == "/*") {
        const SourceSpan start = here();
        const std::size_t close = src_.find("*/", pos_ + 2);
        if (close == std::string_view::npos) {
          throw SyntaxError(start, "unterminated block comment");
        }
        advance(close + 2 - pos_);
        continue;
      }
      return;
    }
  }

  std::string_view src_;
  std::size_t pos_ = 0;
  std::size_t line_ = 1;
  std::size_t col_ = 1;
};

struct Register {
  std::size_t offset = 0;
  std::size_t size = 0;
};

struct Operand {
  std::string reg;
  std::optional<std::size_t> index;
  SourceSpan span;
};

inline bool parse_size(const std::string& text, std::size_t& out) {
  auto [p, ec] = std::from_chars(text.data(), text.data() + text.size(), out);
  return ec == std::errc() && p == text.data() + text.size();
}

class Parser {
 public:
  explicit Parser(std::vector<Token> toks) : toks_(std::move(toks)) {}

  Circuit run() {
    // Pass 1 collects declarations so the Circuit can be sized up front.
    std::size_t saved = 0;
    header();
    saved = pos_;
    declarations_only_ = true;
    while (peek().kind != Tok::End) statement(nullptr);
    declarations_only_ = false;
    pos_ = saved;
    Circuit c(num_qubits_, num_clbits_);
    while (peek().kind != Tok::End) statement(&c);
    if (rus_open_) throw SyntaxError(peek().span, "unterminated rus block");
    if (!pending_label_.empty()) {
      throw SyntaxError(peek().span, "label pragma without a following statement");
    }
    if (rus_) c.set_rus(*rus_);
    return c;
  }

 private:
  const Token& peek(std::size_t k = 0) const {
    return toks_[std::min(pos_ + k, toks_.size() - 1)];
  }
  const Token& next() {
    const Token& t = toks_[pos_];
    if (pos_ + 1 < toks_.size()) ++pos_;
    return t;
  }
  bool is_punct(const char* p, std::size_t k = 0) const {
    return peek(k).kind == Tok::Punct && peek(k).text == p;
  }
  void expect_punct(const char* p) {
    if (!is_punct(p)) {
      throw SyntaxError(peek().span, std::string("expected '") + p + "', found '" +
                                         peek().text + "'");
    }
    next();
  }
  std::string expect_ident() {
    if (peek().kind != Tok::Ident) {
      throw SyntaxError(peek().span, "expected identifier, found '" + peek().text + "'");
    }
    return next().text;
  }
  std::size_t expect_size() {
    if (peek().kind != Tok::Int) {
      throw SyntaxError(peek().span, "expected integer, found '" + peek().text + "'");
    }
    const Token& t = next();
    std::size_t v = 0;
    if (!parse_size(t.text, v)) throw SyntaxError(t.span, "bad integer '" + t.text + "'");
    return v;
  }

  void header() {
    if (peek().kind == Tok::Ident && peek().text == "OPENQASM") {
      next();
      const Token& v = next();
      if (v.kind != Tok::Int && v.kind != Tok::Real) {
        throw SyntaxError(v.span, "expected version number");
      }
      if (v.text != "2.0" && v.text != "3" && v.text != "3.0") {
        throw UnsupportedFeature(v.span, "OPENQASM version " + v.text);
      }
      expect_punct(";");
    }
  }

  void declare(std::map<std::string, Register>& regs, std::size_t& total,
               const std::string& name, std::size_t size, SourceSpan at) {
    if (qregs_.count(name) || cregs_.count(name)) {
      if (declarations_only_) throw SyntaxError(at, "register '" + name + "' redeclared");
      return;
    }
    if (!declarations_only_) return;
    regs[name] = Register{total, size};
    total += size;
  }

  void statement(Circuit* c) {
    const Token& t = peek();
    if (t.kind == Tok::Pragma) {
      next();
      pragma(t, c);
      return;
    }
    if (t.kind != Tok::Ident) {
      throw SyntaxError(t.span, "expected statement, found '" + t.text + "'");
    }
    const std::string& kw = t.text;
    if (kw == "OPENQASM") throw SyntaxError(t.span, "version header must come first");
    if (kw == "include") {
      next();
      const Token& f = next();
      if (f.kind != Tok::String) throw SyntaxError(f.span, "expected file name");
      if (f.text != "qelib1.inc" && f.text != "stdgates.inc") {
        throw UnsupportedFeature(f.span, "include of '" + f.text + "'");
      }
      expect_punct(";");
      return;
    }
    if (kw == "qreg" || kw == "creg") {
      next();
      const SourceSpan at = peek().span;
      std::string name = expect_ident();
      expect_punct("[");
      std::size_t size = expect_size();
      expect_punct("]");
      expect_punct(";");
      if (kw == "qreg") {
        declare(qregs_, num_qubits_, name, size, at);
      } else {
        declare(cregs_, num_clbits_, name, size, at);
      }
      return;
    }
    if (kw == "qubit" || kw == "bit") {
      next();
      std::size_t size = 1;
      if (is_punct("[")) {
        next();
        size = expect_size();
        expect_punct("]");
      }
      const SourceSpan at = peek().span;
      std::string name = expect_ident();
      if (is_punct("=")) throw UnsupportedFeature(peek().span, "initialized declaration");
      expect_punct(";");
      if (kw == "qubit") {
        declare(qregs_, num_qubits_, name, size, at);
      } else {
        declare(cregs_, num_clbits_, name, size, at);
      }
      return;
    }
    static const char* const unsupported[] = {
        "gate", "opaque", "for", "while", "def", "defcal", "cal", "let", "const",
        "input", "output", "switch", "box", "ctrl", "inv", "pow", "else",
        "int", "uint", "float", "angle", "bool", "duration", "stretch", "return"};
    for (const char* u : unsupported) {
      if (kw == u) throw UnsupportedFeature(t.span, "'" + kw + "' statement");
    }
    if (declarations_only_) {
      skip_statement();
      return;
    }
    std::optional<Condition> cond;
    if (kw == "if") {
      next();
      cond = condition(*c);
      if (peek().kind == Tok::Ident && peek().text == "if") {
        throw UnsupportedFeature(peek().span, "nested condition");
      }
      if (is_punct("{")) throw UnsupportedFeature(peek().span, "conditional block");
    }
    operation(*c, cond);
  }

  void skip_statement() {
    while (peek().kind != Tok::End && !is_punct(";")) next();
    expect_punct(";");
  }

  Condition condition(const Circuit& c) {
    expect_punct("(");
    Operand bit = operand();
    expect_punct("==");
    const SourceSpan at = peek().span;
    std::size_t value = expect_size();
    expect_punct(")");
    if (value > 1) throw UnsupportedFeature(at, "condition value other than 0 or 1");
    const std::size_t idx = resolve_single(cregs_, bit, "classical");
    (void)c;
    return Condition{idx, static_cast<int>(value)};
  }

  Operand operand() {
    Operand o;
    o.span = peek().span;
    o.reg = expect_ident();
    if (is_punct("[")) {
      next();
      o.index = expect_size();
      expect_punct("]");
    }
    return o;
  }

  std::vector<Operand> operand_list() {
    std::vector<Operand> out{operand()};
    while (is_punct(",")) {
      next();
      out.push_back(operand());
    }
    return out;
  }

  const Register& find(const std::map<std::string, Register>& regs,
                       const Operand& o, const char* what) const {
    auto it = regs.find(o.reg);
    if (it == regs.end()) {
      throw SyntaxError(o.span, std::string("unknown ") + what + " register '" + o.reg + "'");
    }
    return it->second;
  }

  std::size_t resolve_single(const std::map<std::string, Register>& regs,
                             const Operand& o, const char* what) const {
    const Register& r = find(regs, o, what);
    std::size_t idx = 0;
    if (o.index) {
      idx = *o.index;
    } else if (r.size != 1) {
      throw UnsupportedFeature(o.span, "whole-register operand here");
    }
    if (idx >= r.size) {
      throw IndexOutOfRange(o.span, o.reg + "[" + std::to_string(idx) + "] exceeds size " +
                                        std::to_string(r.size));
    }
    return r.offset + idx;
  }

  std::vector<std::size_t> resolve_all(const std::map<std::string, Register>& regs,
                                       const Operand& o, const char* what) const {
    if (o.index) return {resolve_single(regs, o, what)};
    const Register& r = find(regs, o, what);
    std::vector<std::size_t> out;
    for (std::size_t i = 0; i < r.size; ++i) out.push_back(r.offset + i);
    return out;
  }

  double angle() {
    // [-] ( number | [number *] pi [/ number] )
    bool neg = false;
    if (is_punct("-")) {
      next();
      neg = true;
    }
    double v = 0.0;
    const Token& t = next();
    auto number = [&](const Token& tok) {
      double d = 0.0;
      auto [p, ec] = std::from_chars(tok.text.data(), tok.text.data() + tok.text.size(), d);
      if (ec != std::errc() || p != tok.text.data() + tok.text.size()) {
        throw SyntaxError(tok.span, "bad number '" + tok.text + "'");
      }
      return d;
    };
    if (t.kind == Tok::Int || t.kind == Tok::Real) {
      v = number(t);
      if (is_punct("*")) {
        next();
        const Token& p = next();
        if (p.kind != Tok::Ident || p.text != "pi") {
          throw UnsupportedFeature(p.span, "angle expression");
        }
        v *= std::numbers::pi;
      }
    } else if (t.kind == Tok::Ident && t.text == "pi") {
      v = std::numbers::pi;
    } else {
      throw SyntaxError(t.span, "expected angle, found '" + t.text + "'");
    }
    if (is_punct("/")) {
      next();
      const Token& d = next();
      if (d.kind != Tok::Int && d.kind != Tok::Real) {
        throw UnsupportedFeature(d.span, "angle expression");
      }
      const double den = number(d);
      if (den == 0.0) throw SyntaxError(d.span, "division by zero");
      v /= den;
    }
    if (is_punct("+") || is_punct("-") || is_punct("*")) {
      throw UnsupportedFeature(peek().span, "angle expression");
    }
    return neg ? -v : v;
  }

  void emit(Circuit& c, Instruction inst, const std::optional<Condition>& cond,
            SourceSpan at) {
    if (cond) inst.condition = *cond;
    if (!pending_label_.empty()) {
      inst.label = pending_label_;
      pending_label_.clear();
    }
    try {
      c.add(std::move(inst));
    } catch (const InvariantViolation& e) {
      throw SyntaxError(at, e.what());
    }
  }

  void operation(Circuit& c, const std::optional<Condition>& cond) {
    const Token head = peek();
    const SourceSpan at = head.span;
    if (head.kind == Tok::Ident && peek(1).kind == Tok::Punct &&
        (peek(1).text == "=" || (peek(1).text == "[" && peek(4).text == "="))) {
      // bit = measure qubit;
      Operand target = operand();
      expect_punct("=");
      if (!(peek().kind == Tok::Ident && peek().text == "measure")) {
        throw UnsupportedFeature(peek().span, "classical assignment");
      }
      next();
      Operand src = operand();
      expect_punct(";");
      measure_pair(c, src, target, cond, at);
      return;
    }
    const std::string name = expect_ident();
    if (name == "measure") {
      Operand src = operand();
      expect_punct("->");
      Operand target = operand();
      expect_punct(";");
      measure_pair(c, src, target, cond, at);
      return;
    }
    if (name == "reset") {
      Operand o = operand();
      expect_punct(";");
      for (std::size_t q : resolve_all(qregs_, o, "quantum")) {
        emit(c, Instruction::reset(q), cond, at);
      }
      return;
    }
    if (name == "barrier") {
      if (cond) throw UnsupportedFeature(at, "conditional barrier");
      std::vector<std::size_t> qs;
      for (const auto& o : operand_list()) {
        for (std::size_t q : resolve_all(qregs_, o, "quantum")) qs.push_back(q);
      }
      expect_punct(";");
      emit(c, Instruction::barrier(std::move(qs)), cond, at);
      return;
    }
    if (name == "delay") {
      expect_punct("[");
      const std::size_t dt = expect_size();
      if (peek().kind == Tok::Ident) {
        const Token& unit = next();
        if (unit.text != "ns" && unit.text != "dt") {
          throw UnsupportedFeature(unit.span, "delay unit '" + unit.text + "'");
        }
      }
      expect_punct("]");
      Operand o = operand();
      expect_punct(";");
      for (std::size_t q : resolve_all(qregs_, o, "quantum")) {
        emit(c, Instruction::delay(q, static_cast<std::int64_t>(dt)), cond, at);
      }
      return;
    }
    static const std::map<std::string, OpKind> gates = {
        {"h", OpKind::H},   {"x", OpKind::X},   {"y", OpKind::Y},
        {"z", OpKind::Z},   {"sx", OpKind::SX}, {"rx", OpKind::RX},
        {"ry", OpKind::RY}, {"rz", OpKind::RZ}, {"cx", OpKind::CX},
        {"CX", OpKind::CX}, {"swap", OpKind::Swap}};
    auto it = gates.find(name);
    if (it == gates.end()) throw UnsupportedFeature(at, "gate '" + name + "'");
    const OpKind kind = it->second;
    double theta = 0.0;
    if (is_parametric(kind)) {
      expect_punct("(");
      theta = angle();
      expect_punct(")");
    } else if (is_punct("(")) {
      throw SyntaxError(peek().span, "gate '" + name + "' takes no parameters");
    }
    auto ops = operand_list();
    expect_punct(";");
    if (is_two_qubit_gate(kind)) {
      if (ops.size() != 2) throw SyntaxError(at, "'" + name + "' needs two operands");
      const std::size_t a = resolve_single(qregs_, ops[0], "quantum");
      const std::size_t b = resolve_single(qregs_, ops[1], "quantum");
      emit(c, kind == OpKind::CX ? Instruction::cx(a, b) : Instruction::swap(a, b),
           cond, at);
      return;
    }
    if (ops.size() != 1) throw SyntaxError(at, "'" + name + "' needs one operand");
    for (std::size_t q : resolve_all(qregs_, ops[0], "quantum")) {
      emit(c, Instruction::gate(kind, q, theta), cond, at);
    }
  }

  void measure_pair(Circuit& c, const Operand& src, const Operand& dst,
                    const std::optional<Condition>& cond, SourceSpan at) {
    auto qs = resolve_all(qregs_, src, "quantum");
    auto cs = resolve_all(cregs_, dst, "classical");
    if (qs.size() != cs.size()) throw SyntaxError(at, "measure operand sizes differ");
    for (std::size_t i = 0; i < qs.size(); ++i) {
      emit(c, Instruction::measure(qs[i], cs[i]), cond, at);
    }
  }

  void pragma(const Token& t, Circuit* c) {
    std::istringstream in(t.text);
    std::string ns;
    in >> ns;
    if (ns != "mera") return;  // foreign pragmas are ignored
    std::string what;
    in >> what;
    if (what == "label") {
      std::string l;
      in >> l;
      if (l.empty()) throw SyntaxError(t.span, "label pragma needs a value");
      if (c) pending_label_ = l;
      return;
    }
    if (what == "rus_begin") {
      // #pragma mera rus_begin <reg>[<k>] == <v> max <n>
      std::string rest;
      std::getline(in, rest);
      Lexer lx(rest);
      Parser sub(lx.run());
      sub.qregs_ = qregs_;
      sub.cregs_ = cregs_;
      Operand bit = sub.operand();
      sub.expect_punct("==");
      const std::size_t v = sub.expect_size();
      std::size_t max_repeats = 64;
      if (sub.peek().kind == Tok::Ident && sub.peek().text == "max") {
        sub.next();
        max_repeats = sub.expect_size();
      }
      if (sub.peek().kind != Tok::End) throw SyntaxError(t.span, "trailing rus_begin text");
      if (rus_open_ || rus_) throw UnsupportedFeature(t.span, "more than one rus block");
      if (!c) return;
      if (v > 1) throw SyntaxError(t.span, "rus success value must be 0 or 1");
      RepeatUntilSuccess r;
      r.begin = c->size();
      r.clbit = sub.resolve_single(cregs_, bit, "classical");
      r.success_value = static_cast<int>(v);
      r.max_repeats = max_repeats;
      rus_ = r;
      rus_open_ = true;
      return;
    }
    if (what == "rus_end") {
      if (!c) return;
      if (!rus_open_) throw SyntaxError(t.span, "rus_end without rus_begin");
      rus_open_ = false;
      rus_->end = c->size();
      return;
    }
    throw UnsupportedFeature(t.span, "pragma 'mera " + what + "'");
  }

  std::vector<Token> toks_;
  std::size_t pos_ = 0;
  bool declarations_only_ = false;
  std::map<std::string, Register> qregs_;
  std::map<std::string, Register> cregs_;
  std::size_t num_qubits_ = 0;
  std::size_t num_clbits_ = 0;
  std::string pending_label_;
  std::optional<RepeatUntilSuccess> rus_;
  bool rus_open_ = false;
};

inline std::string format_angle(double v) {
  char buf[64];
  auto [p, ec] = std::to_chars(buf, buf + sizeof buf, v);
  std::string s(buf, p);
  if (s.find_first_of(".e") == std::string::npos && s.find("inf") == std::string::npos &&
      s.find("nan") == std::string::npos) {
    s += ".0";
  }
  return s;
}

}  // namespace detail

inline Circuit parse(std::string_view text) {
  detail::Lexer lexer(text);
  detail::Parser parser(lexer.run());
  try {
    return parser.run();
  } catch (const QasmError&) {
    throw;
  } catch (const InvariantViolation& e) {
    throw SyntaxError(SourceSpan{}, e.what());
  }
}

inline std::string emit(const Circuit& circuit) {
  std::ostringstream out;
  out << "OPENQASM 2.0;\n";
  out << "include \"qelib1.inc\";\n";
  if (circuit.num_qubits() > 0) out << "qreg q[" << circuit.num_qubits() << "];\n";
  if (circuit.num_clbits() > 0) out << "creg c[" << circuit.num_clbits() << "];\n";
  const auto& rus = circuit.rus();
  for (std::size_t i = 0; i <= circuit.size(); ++i) {
    if (rus && i == rus->end) out << "#pragma mera rus_end\n";
    if (rus && i == rus->begin) {
      out << "#pragma mera rus_begin c[" << rus->clbit << "] == " << rus->success_value
          << " max " << rus->max_repeats << "\n";
    }
    if (i == circuit.size()) break;
    const Instruction& inst = circuit[i];
    if (!inst.label.empty()) out << "#pragma mera label " << inst.label << "\n";
    if (inst.condition) {
      out << "if(c[" << inst.condition->clbit << "]==" << inst.condition->value << ") ";
    }
    switch (inst.kind) {
      case OpKind::Measure:
        out << "measure q[" << inst.qubits[0] << "] -> c[" << inst.clbit << "];\n";
        continue;
      case OpKind::Delay:
        out << "delay[" << inst.duration << "] q[" << inst.qubits[0] << "];\n";
        continue;
      default:
        break;
    }
    out << op_name(inst.kind);
    if (is_parametric(inst.kind)) out << "(" << detail::format_angle(inst.angle) << ")";
    out << " ";
    for (std::size_t k = 0; k < inst.qubits.size(); ++k) {
      out << (k ? "," : "") << "q[" << inst.qubits[k] << "]";
    }
    out << ";\n";
  }
  return out.str();
}

inline Circuit load(const std::string& path) {
  std::ifstream in(path);
  if (!in) throw Error("cannot open " + path);
  std::stringstream buf;
  buf << in.rdbuf();
  return parse(buf.str());
}

inline void save(const Circuit& circuit, const std::string& path) {
  std::ofstream out(path);
  if (!out) throw Error("cannot write " + path);
  out << emit(circuit);
}

}  // namespace mera::qasm
