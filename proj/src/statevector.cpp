#include "qtlens/statevector.hpp"

#include <cmath>

#include "qtlens/errors.hpp"

namespace qtlens {

namespace {

constexpr double kInvSqrt2 = 0.70710678118654752440;

}  // namespace

Statevector::Statevector(int m) : m_(m) {
  if (m < 0) throw DomainError("negative statevector width");
  if (m > kMaxSimQubits) {
    throw CapacityError("statevector width " + std::to_string(m) +
                        " exceeds cap of " + std::to_string(kMaxSimQubits));
  }
  amps_.assign(std::size_t{1} << m, Amplitude{0.0, 0.0});
  amps_[0] = 1.0;
}

Statevector::Statevector(int m, std::vector<Amplitude> amplitudes)
    : m_(m), amps_(std::move(amplitudes)) {
  if (m < 0 || m > kMaxSimQubits) {
    throw CapacityError("statevector width " + std::to_string(m) +
                        " outside [0, " + std::to_string(kMaxSimQubits) + "]");
  }
  if (amps_.size() != (std::size_t{1} << m)) {
    throw DomainError("amplitude count does not match 2^m");
  }
}

double Statevector::norm_squared() const {
  double s = 0.0;
  for (const auto& a : amps_) s += std::norm(a);
  return s;
}

void Statevector::apply_matrix(int q, Amplitude m00, Amplitude m01,
                               Amplitude m10, Amplitude m11) {
  const std::size_t stride = std::size_t{1} << q;
  const std::size_t dim = amps_.size();
  for (std::size_t base = 0; base < dim; base += 2 * stride) {
    for (std::size_t i = base; i < base + stride; ++i) {
      const Amplitude a0 = amps_[i];
      const Amplitude a1 = amps_[i + stride];
      amps_[i] = m00 * a0 + m01 * a1;
      amps_[i + stride] = m10 * a0 + m11 * a1;
    }
  }
}

void Statevector::apply(GateKind kind, std::span<const int> qubits,
                        double angle) {
  const int q0 = qubits[0];
  const std::size_t dim = amps_.size();
  switch (kind) {
    case GateKind::RX: {
      const double c = std::cos(angle / 2), s = std::sin(angle / 2);
      apply_matrix(q0, c, {0, -s}, {0, -s}, c);
      return;
    }
    case GateKind::RY: {
      const double c = std::cos(angle / 2), s = std::sin(angle / 2);
      apply_matrix(q0, c, -s, s, c);
      return;
    }
    case GateKind::RZ: {
      const Amplitude lo = std::polar(1.0, -angle / 2);
      const Amplitude hi = std::polar(1.0, angle / 2);
      const std::size_t bit = std::size_t{1} << q0;
      for (std::size_t i = 0; i < dim; ++i) amps_[i] *= (i & bit) ? hi : lo;
      return;
    }
    case GateKind::SX:
      apply_matrix(q0, {0.5, 0.5}, {0.5, -0.5}, {0.5, -0.5}, {0.5, 0.5});
      return;
    case GateKind::X: {
      const std::size_t bit = std::size_t{1} << q0;
      for (std::size_t i = 0; i < dim; ++i) {
        if (!(i & bit)) std::swap(amps_[i], amps_[i | bit]);
      }
      return;
    }
    case GateKind::H:
      apply_matrix(q0, kInvSqrt2, kInvSqrt2, kInvSqrt2, -kInvSqrt2);
      return;
    case GateKind::CX: {
      const std::size_t c = std::size_t{1} << q0;
      const std::size_t t = std::size_t{1} << qubits[1];
      for (std::size_t i = 0; i < dim; ++i) {
        if ((i & c) && !(i & t)) std::swap(amps_[i], amps_[i | t]);
      }
      return;
    }
    case GateKind::CZ: {
      const std::size_t mask =
          (std::size_t{1} << q0) | (std::size_t{1} << qubits[1]);
      for (std::size_t i = 0; i < dim; ++i) {
        if ((i & mask) == mask) amps_[i] = -amps_[i];
      }
      return;
    }
    case GateKind::SWAP: {
      const std::size_t a = std::size_t{1} << q0;
      const std::size_t b = std::size_t{1} << qubits[1];
      for (std::size_t i = 0; i < dim; ++i) {
        if ((i & a) && !(i & b)) std::swap(amps_[i], amps_[(i & ~a) | b]);
      }
      return;
    }
  }
}

void Statevector::apply(const Instruction& inst,
                        std::span<const double> theta) {
  apply(inst.kind, inst.qubits(),
        inst.angle ? inst.angle->evaluate(theta) : 0.0);
}

void Statevector::apply_range(const Circuit& circuit, std::size_t first,
                              std::size_t last,
                              std::span<const double> theta) {
  const auto& insts = circuit.instructions();
  for (std::size_t i = first; i < last; ++i) apply(insts[i], theta);
}

Statevector simulate(const Circuit& circuit, std::span<const double> theta) {
  if (static_cast<int>(theta.size()) != circuit.param_count()) {
    throw BindingError("simulate: binding has " +
                       std::to_string(theta.size()) +
                       " values, circuit expects " +
                       std::to_string(circuit.param_count()));
  }
  Statevector state(circuit.num_qubits());
  state.apply_range(circuit, 0, circuit.size(), theta);
  return state;
}

double fidelity(const Statevector& a, const Statevector& b) {
  if (a.num_qubits() != b.num_qubits()) {
    throw DomainError("fidelity of states with different widths");
  }
  Amplitude overlap{0.0, 0.0};
  const auto aa = a.amplitudes();
  const auto bb = b.amplitudes();
  for (std::size_t i = 0; i < aa.size(); ++i) overlap += std::conj(aa[i]) * bb[i];
  return std::min(1.0, std::norm(overlap));
}

double expectation_z(const Statevector& s, int wire) {
  if (wire < 0 || wire >= s.num_qubits()) {
    throw DomainError("expectation_z: wire " + std::to_string(wire) +
                      " out of range for width " +
                      std::to_string(s.num_qubits()));
  }
  const std::size_t bit = std::size_t{1} << wire;
  double value = 0.0;
  const auto amps = s.amplitudes();
  for (std::size_t i = 0; i < amps.size(); ++i) {
    value += (i & bit) ? -std::norm(amps[i]) : std::norm(amps[i]);
  }
  return value;
}

}  // namespace qtlens
