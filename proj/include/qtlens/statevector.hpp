#pragma once

#include <complex>
#include <cstdint>
#include <span>
#include <vector>

#include "qtlens/circuit.hpp"

namespace qtlens {

using Amplitude = std::complex<double>;

inline constexpr int kMaxSimQubits = 20;

/// Dense pure state on m qubits. Little-endian: qubit q is bit q of the
/// amplitude index.
class Statevector {
 public:
  Statevector() : Statevector(0) {}
  /// |0...0> on m qubits; throws CapacityError when m > kMaxSimQubits.
  explicit Statevector(int m);
  /// Takes ownership of amplitudes; size must be 2^m.
  Statevector(int m, std::vector<Amplitude> amplitudes);

  [[nodiscard]] int num_qubits() const { return m_; }
  [[nodiscard]] std::size_t dimension() const { return amps_.size(); }
  [[nodiscard]] std::span<const Amplitude> amplitudes() const { return amps_; }
  [[nodiscard]] Amplitude operator[](std::size_t i) const { return amps_[i]; }

  [[nodiscard]] double norm_squared() const;

  /// Applies one gate. Rotations use `angle`; other gates ignore it.
  void apply(GateKind kind, std::span<const int> qubits, double angle = 0.0);
  void apply(const Instruction& inst, std::span<const double> theta);

  /// Applies instructions [first, last) of `circuit`.
  void apply_range(const Circuit& circuit, std::size_t first,
                   std::size_t last, std::span<const double> theta);

 private:
  void apply_matrix(int q, Amplitude m00, Amplitude m01, Amplitude m10,
                    Amplitude m11);

  int m_ = 0;
  std::vector<Amplitude> amps_;
};

/// U(theta)|0...0> for the circuit. Throws BindingError on a length
/// mismatch and CapacityError above kMaxSimQubits wires.
[[nodiscard]] Statevector simulate(const Circuit& circuit,
                                   std::span<const double> theta);

/// |<a|b>|^2. Throws DomainError on a width mismatch.
[[nodiscard]] double fidelity(const Statevector& a, const Statevector& b);

/// <Z> on `wire`. Throws DomainError when wire >= m.
[[nodiscard]] double expectation_z(const Statevector& s, int wire);

}  // namespace qtlens
