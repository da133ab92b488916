#pragma once

// Dense statevector over a handful of qubits. Qubit j is bit j of the
// basis-state index.

#include <array>
#include <cmath>
#include <complex>
#include <cstddef>
#include <cstdint>
#include <vector>

#include "mera/circuit.hpp"
#include "mera/errors.hpp"

namespace mera {

using Amplitude = std::complex<double>;
using Matrix2 = std::array<Amplitude, 4>;  // row-major

inline Matrix2 gate_matrix(OpKind k, double theta = 0.0) {
  const double r = 1.0 / std::sqrt(2.0);
  const Amplitude i{0.0, 1.0};
  const double c = std::cos(theta / 2.0);
  const double s = std::sin(theta / 2.0);
  switch (k) {
    case OpKind::H: return {r, r, r, -r};
    case OpKind::X: return {0.0, 1.0, 1.0, 0.0};
    case OpKind::Y: return {0.0, -i, i, 0.0};
    case OpKind::Z: return {1.0, 0.0, 0.0, -1.0};
    case OpKind::SX:
      return {Amplitude(0.5, 0.5), Amplitude(0.5, -0.5), Amplitude(0.5, -0.5),
              Amplitude(0.5, 0.5)};
    case OpKind::RX: return {c, -i * s, -i * s, c};
    case OpKind::RY: return {c, -s, s, c};
    case OpKind::RZ: return {std::exp(-i * (theta / 2.0)), 0.0, 0.0, std::exp(i * (theta / 2.0))};
    default: throw InvariantViolation("no matrix for a non-unitary or multi-qubit kind");
  }
}

class StateVector {
 public:
  static constexpr std::size_t max_qubits = 24;

  explicit StateVector(std::size_t n) : n_(n) {
    if (n > max_qubits) throw TooManyQubits("statevector limited to 24 qubits");
    amp_.assign(std::size_t{1} << n, Amplitude{0.0, 0.0});
    amp_[0] = 1.0;
  }

  [[nodiscard]] std::size_t num_qubits() const noexcept { return n_; }
  [[nodiscard]] const std::vector<Amplitude>& amplitudes() const noexcept { return amp_; }

  void apply(const Matrix2& m, std::size_t q) {
    const std::size_t bit = std::size_t{1} << q;
    for (std::size_t k = 0; k < amp_.size(); ++k) {
      if (k & bit) continue;
      const Amplitude a0 = amp_[k];
      const Amplitude a1 = amp_[k | bit];
      amp_[k] = m[0] * a0 + m[1] * a1;
      amp_[k | bit] = m[2] * a0 + m[3] * a1;
    }
  }

  void x(std::size_t q) {
    const std::size_t bit = std::size_t{1} << q;
    for (std::size_t k = 0; k < amp_.size(); ++k) {
      if (!(k & bit)) std::swap(amp_[k], amp_[k | bit]);
    }
  }
  void z(std::size_t q) {
    const std::size_t bit = std::size_t{1} << q;
    for (std::size_t k = 0; k < amp_.size(); ++k) {
      if (k & bit) amp_[k] = -amp_[k];
    }
  }
  void y(std::size_t q) {
    // Y = i X Z
    z(q);
    x(q);
    for (auto& a : amp_) a *= Amplitude(0.0, 1.0);
  }
  /// Pauli by code: 0 = I, 1 = X, 2 = Y, 3 = Z.
  void pauli(int code, std::size_t q) {
    if (code == 1) x(q);
    if (code == 2) y(q);
    if (code == 3) z(q);
  }

  void cx(std::size_t control, std::size_t target) {
    const std::size_t cb = std::size_t{1} << control;
    const std::size_t tb = std::size_t{1} << target;
    for (std::size_t k = 0; k < amp_.size(); ++k) {
      if ((k & cb) && !(k & tb)) std::swap(amp_[k], amp_[k | tb]);
    }
  }
  void swap(std::size_t a, std::size_t b) {
    const std::size_t ab = std::size_t{1} << a;
    const std::size_t bb = std::size_t{1} << b;
    for (std::size_t k = 0; k < amp_.size(); ++k) {
      if ((k & ab) && !(k & bb)) std::swap(amp_[k], amp_[(k & ~ab) | bb]);
    }
  }

  [[nodiscard]] double probability_one(std::size_t q) const {
    const std::size_t bit = std::size_t{1} << q;
    double p = 0.0;
    for (std::size_t k = 0; k < amp_.size(); ++k) {
      if (k & bit) p += std::norm(amp_[k]);
    }
    return p;
  }

  /// Projects qubit q onto `outcome` and renormalizes; returns the
  /// probability the projection had.
  double collapse(std::size_t q, int outcome) {
    const std::size_t bit = std::size_t{1} << q;
    double p = 0.0;
    for (std::size_t k = 0; k < amp_.size(); ++k) {
      const bool one = (k & bit) != 0;
      if (one == (outcome == 1)) {
        p += std::norm(amp_[k]);
      } else {
        amp_[k] = 0.0;
      }
    }
    if (p > 0.0) {
      const double scale = 1.0 / std::sqrt(p);
      for (auto& a : amp_) a *= scale;
    }
    return p;
  }

  /// Applies a unitary instruction given in local qubit indices.
  void apply_unitary(const Instruction& inst, const std::vector<std::size_t>& local) {
    switch (inst.kind) {
      case OpKind::X: x(local[0]); break;
      case OpKind::Z: z(local[0]); break;
      case OpKind::CX: cx(local[0], local[1]); break;
      case OpKind::Swap: swap(local[0], local[1]); break;
      case OpKind::Barrier:
      case OpKind::Delay: break;
      case OpKind::Measure:
      case OpKind::Reset: throw InvariantViolation("not a unitary instruction");
      default: apply(gate_matrix(inst.kind, inst.angle), local[0]); break;
    }
  }

 private:
  std::size_t n_;
  std::vector<Amplitude> amp_;
};

/// Final state of a circuit made of unitary instructions only.
inline std::vector<Amplitude> final_statevector(const Circuit& circuit) {
  StateVector sv(circuit.num_qubits());
  for (const auto& inst : circuit.instructions()) {
    if (inst.condition) throw InvariantViolation("conditional instruction in a unitary circuit");
    sv.apply_unitary(inst, inst.qubits);
  }
  return sv.amplitudes();
}

}  // namespace mera
