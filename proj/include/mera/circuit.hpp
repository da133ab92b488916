#pragma once

// Gate-level IR for dynamic circuits: gates, mid-circuit measurement, reset,
// single-bit classical conditions, delays and barriers.

#include <cstddef>
#include <cstdint>
#include <optional>
#include <string>
#include <string_view>
#include <utility>
#include <vector>

#include "mera/errors.hpp"

namespace mera {

enum class OpKind : std::uint8_t {
  H,
  X,
  Y,
  Z,
  SX,
  RX,
  RY,
  RZ,
  CX,
  Swap,
  Measure,
  Reset,
  Barrier,
  Delay,
};

[[nodiscard]] constexpr bool is_parametric(OpKind k) noexcept {
  return k == OpKind::RX || k == OpKind::RY || k == OpKind::RZ;
}

[[nodiscard]] constexpr bool is_single_qubit_gate(OpKind k) noexcept {
  switch (k) {
    case OpKind::H:
    case OpKind::X:
    case OpKind::Y:
    case OpKind::Z:
    case OpKind::SX:
    case OpKind::RX:
    case OpKind::RY:
    case OpKind::RZ:
      return true;
    default:
      return false;
  }
}

[[nodiscard]] constexpr bool is_two_qubit_gate(OpKind k) noexcept {
  return k == OpKind::CX || k == OpKind::Swap;
}

/// Number of qubits the kind acts on; 0 means "one or more" (Barrier).
[[nodiscard]] constexpr std::size_t arity(OpKind k) noexcept {
  if (k == OpKind::Barrier) return 0;
  return is_two_qubit_gate(k) ? 2 : 1;
}

[[nodiscard]] constexpr std::string_view op_name(OpKind k) noexcept {
  switch (k) {
    case OpKind::H: return "h";
    case OpKind::X: return "x";
    case OpKind::Y: return "y";
    case OpKind::Z: return "z";
    case OpKind::SX: return "sx";
    case OpKind::RX: return "rx";
    case OpKind::RY: return "ry";
    case OpKind::RZ: return "rz";
    case OpKind::CX: return "cx";
    case OpKind::Swap: return "swap";
    case OpKind::Measure: return "measure";
    case OpKind::Reset: return "reset";
    case OpKind::Barrier: return "barrier";
    case OpKind::Delay: return "delay";
  }
  return "?";
}

/// Single-bit equality test on the classical register.
struct Condition {
  std::size_t clbit = 0;
  int value = 1;
  friend bool operator==(const Condition&, const Condition&) = default;
};

struct Instruction {
  OpKind kind = OpKind::H;
  std::vector<std::size_t> qubits;
  double angle = 0.0;          // RX / RY / RZ
  std::int64_t duration = 0;   // Delay, device time units
  std::size_t clbit = 0;       // Measure target
  std::optional<Condition> condition;
  std::string label;

  friend bool operator==(const Instruction&, const Instruction&) = default;

  static Instruction gate(OpKind k, std::size_t q, double theta = 0.0) {
    Instruction i;
    i.kind = k;
    i.qubits = {q};
    i.angle = theta;
    return i;
  }
  static Instruction cx(std::size_t control, std::size_t target) {
    Instruction i;
    i.kind = OpKind::CX;
    i.qubits = {control, target};
    return i;
  }
  static Instruction swap(std::size_t a, std::size_t b) {
    Instruction i;
    i.kind = OpKind::Swap;
    i.qubits = {a, b};
    return i;
  }
  static Instruction measure(std::size_t q, std::size_t c) {
    Instruction i;
    i.kind = OpKind::Measure;
    i.qubits = {q};
    i.clbit = c;
    return i;
  }
  static Instruction reset(std::size_t q) {
    Instruction i;
    i.kind = OpKind::Reset;
    i.qubits = {q};
    return i;
  }
  static Instruction barrier(std::vector<std::size_t> qs) {
    Instruction i;
    i.kind = OpKind::Barrier;
    i.qubits = std::move(qs);
    return i;
  }
  static Instruction delay(std::size_t q, std::int64_t dt) {
    Instruction i;
    i.kind = OpKind::Delay;
    i.qubits = {q};
    i.duration = dt;
    return i;
  }

  Instruction& if_bit(std::size_t c, int v) & {
    condition = Condition{c, v};
    return *this;
  }
  Instruction&& if_bit(std::size_t c, int v) && {
    condition = Condition{c, v};
    return std::move(*this);
  }
  Instruction&& with_label(std::string l) && {
    label = std::move(l);
    return std::move(*this);
  }
};

/// A contiguous instruction range executed repeatedly until the classical
/// bit `clbit` reads `success_value`, at most `max_repeats` times.
struct RepeatUntilSuccess {
  std::size_t begin = 0;
  std::size_t end = 0;
  std::size_t clbit = 0;
  int success_value = 0;
  std::size_t max_repeats = 64;
  friend bool operator==(const RepeatUntilSuccess&,
                         const RepeatUntilSuccess&) = default;
};

class Circuit {
 public:
  Circuit() = default;
  Circuit(std::size_t num_qubits, std::size_t num_clbits)
      : num_qubits_(num_qubits), num_clbits_(num_clbits) {}

  [[nodiscard]] std::size_t num_qubits() const noexcept { return num_qubits_; }
  [[nodiscard]] std::size_t num_clbits() const noexcept { return num_clbits_; }
  [[nodiscard]] std::size_t size() const noexcept { return ops_.size(); }
  [[nodiscard]] bool empty() const noexcept { return ops_.empty(); }
  [[nodiscard]] const std::vector<Instruction>& instructions() const noexcept {
    return ops_;
  }
  [[nodiscard]] const Instruction& operator[](std::size_t i) const {
    return ops_[i];
  }
  [[nodiscard]] const std::optional<RepeatUntilSuccess>& rus() const noexcept {
    return rus_;
  }

  /// Appends after checking arity, index ranges and that a condition bit has
  /// been written by an earlier measurement.
  Circuit& add(Instruction inst) {
    check(inst);
    if (inst.kind == OpKind::Measure) written_.at(inst.clbit) = true;
    ops_.push_back(std::move(inst));
    return *this;
  }

  Circuit& h(std::size_t q) { return add(Instruction::gate(OpKind::H, q)); }
  Circuit& x(std::size_t q) { return add(Instruction::gate(OpKind::X, q)); }
  Circuit& y(std::size_t q) { return add(Instruction::gate(OpKind::Y, q)); }
  Circuit& z(std::size_t q) { return add(Instruction::gate(OpKind::Z, q)); }
  Circuit& sx(std::size_t q) { return add(Instruction::gate(OpKind::SX, q)); }
  Circuit& rx(double t, std::size_t q) {
    return add(Instruction::gate(OpKind::RX, q, t));
  }
  Circuit& ry(double t, std::size_t q) {
    return add(Instruction::gate(OpKind::RY, q, t));
  }
  Circuit& rz(double t, std::size_t q) {
    return add(Instruction::gate(OpKind::RZ, q, t));
  }
  Circuit& cx(std::size_t c, std::size_t t) { return add(Instruction::cx(c, t)); }
  Circuit& swap(std::size_t a, std::size_t b) {
    return add(Instruction::swap(a, b));
  }
  Circuit& measure(std::size_t q, std::size_t c) {
    return add(Instruction::measure(q, c));
  }
  Circuit& reset(std::size_t q) { return add(Instruction::reset(q)); }
  Circuit& barrier(std::vector<std::size_t> qs) {
    return add(Instruction::barrier(std::move(qs)));
  }
  Circuit& delay(std::size_t q, std::int64_t dt) {
    return add(Instruction::delay(q, dt));
  }

  /// Marks [begin, end) as a repeat-until-success body.
  void set_rus(RepeatUntilSuccess block) {
    if (block.begin >= block.end || block.end > ops_.size()) {
      throw InvariantViolation("repeat-until-success range is empty or out of bounds");
    }
    if (block.clbit >= num_clbits_) {
      throw InvariantViolation("repeat-until-success bit out of range");
    }
    if (block.success_value != 0 && block.success_value != 1) {
      throw InvariantViolation("repeat-until-success value must be 0 or 1");
    }
    if (block.max_repeats == 0) {
      throw InvariantViolation("repeat-until-success needs at least one repeat");
    }
    bool writes = false;
    for (std::size_t i = block.begin; i < block.end; ++i) {
      writes |= ops_[i].kind == OpKind::Measure && ops_[i].clbit == block.clbit;
    }
    if (!writes) {
      throw InvariantViolation("repeat-until-success body never writes its success bit");
    }
    rus_ = block;
  }
  void clear_rus() noexcept { rus_.reset(); }

  friend bool operator==(const Circuit& a, const Circuit& b) {
    return a.num_qubits_ == b.num_qubits_ && a.num_clbits_ == b.num_clbits_ &&
           a.ops_ == b.ops_ && a.rus_ == b.rus_;
  }

 private:
  void check(const Instruction& inst) const {
    const std::size_t n = arity(inst.kind);
    if (n == 0 ? inst.qubits.empty() : inst.qubits.size() != n) {
      throw InvariantViolation(std::string("wrong qubit count for ") +
                               std::string(op_name(inst.kind)));
    }
    for (std::size_t q : inst.qubits) {
      if (q >= num_qubits_) throw InvariantViolation("qubit index out of range");
    }
    if (inst.qubits.size() == 2 && inst.qubits[0] == inst.qubits[1]) {
      throw InvariantViolation("two-qubit gate on a single qubit");
    }
    if (inst.kind == OpKind::Barrier) {
      for (std::size_t i = 0; i < inst.qubits.size(); ++i) {
        for (std::size_t j = i + 1; j < inst.qubits.size(); ++j) {
          if (inst.qubits[i] == inst.qubits[j]) {
            throw InvariantViolation("barrier lists a qubit twice");
          }
        }
      }
    }
    if (inst.kind == OpKind::Measure && inst.clbit >= num_clbits_) {
      throw InvariantViolation("classical bit index out of range");
    }
    if (inst.kind == OpKind::Delay && inst.duration < 0) {
      throw InvariantViolation("negative delay");
    }
    if (inst.condition) {
      const auto& c = *inst.condition;
      if (c.clbit >= num_clbits_) {
        throw InvariantViolation("condition bit out of range");
      }
      if (c.value != 0 && c.value != 1) {
        throw InvariantViolation("condition value must be 0 or 1");
      }
      if (!written_[c.clbit]) {
        throw InvariantViolation("condition reads a bit no earlier measurement writes");
      }
      if (inst.kind == OpKind::Barrier) {
        throw InvariantViolation("barrier cannot be conditional");
      }
    }
  }

  std::size_t num_qubits_ = 0;
  std::size_t num_clbits_ = 0;
  std::vector<Instruction> ops_;
  std::optional<RepeatUntilSuccess> rus_;
  std::vector<bool> written_ = std::vector<bool>(num_clbits_, false);
};

}  // namespace mera
