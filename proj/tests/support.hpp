#pragma once

// Shared oracles for the unit and acceptance tests.

#include <algorithm>
#include <complex>
#include <cstdint>
#include <vector>

#include "qtlens/circuit.hpp"
#include "qtlens/metrics.hpp"
#include "qtlens/statevector.hpp"
#include "qtlens/transpiler.hpp"

namespace qtlens::testing {

using Matrix = std::vector<std::vector<Amplitude>>;  // [row][col]

/// Dense unitary of a circuit at binding `theta`, one simulated column per
/// basis state.
inline Matrix unitary_of(const Circuit& c, std::span<const double> theta) {
  const std::size_t dim = std::size_t{1} << c.num_qubits();
  Matrix u(dim, std::vector<Amplitude>(dim));
  for (std::size_t col = 0; col < dim; ++col) {
    std::vector<Amplitude> amps(dim);
    amps[col] = 1.0;
    Statevector s(c.num_qubits(), std::move(amps));
    s.apply_range(c, 0, c.size(), theta);
    for (std::size_t row = 0; row < dim; ++row) u[row][col] = s[row];
  }
  return u;
}

/// max |a - e^{i phi} b| with phi fitted on the largest entry of a.
inline double phase_distance(std::span<const Amplitude> a,
                             std::span<const Amplitude> b) {
  if (a.size() != b.size()) return 1e300;
  std::size_t k = 0;
  for (std::size_t i = 0; i < a.size(); ++i) {
    if (std::abs(a[i]) > std::abs(a[k])) k = i;
  }
  if (std::abs(b[k]) < 1e-300) return 1e300;
  const Amplitude phase = (a[k] / b[k]) / std::abs(a[k] / b[k]);
  double worst = 0.0;
  for (std::size_t i = 0; i < a.size(); ++i) {
    worst = std::max(worst, std::abs(a[i] - phase * b[i]));
  }
  return worst;
}

inline double phase_distance(const Matrix& a, const Matrix& b) {
  std::vector<Amplitude> fa, fb;
  for (const auto& row : a) fa.insert(fa.end(), row.begin(), row.end());
  for (const auto& row : b) fb.insert(fb.end(), row.begin(), row.end());
  return phase_distance(std::span<const Amplitude>(fa),
                        std::span<const Amplitude>(fb));
}

/// Logical state laid out on the compacted wires of `t`: logical bit l goes
/// to output_wire_of(t, l), every other wire stays |0>.
inline std::vector<Amplitude> embed(const Statevector& logical,
                                    const TranspiledCircuit& t) {
  const int n = logical.num_qubits();
  std::vector<int> wire(static_cast<std::size_t>(n));
  for (int l = 0; l < n; ++l) wire[l] = output_wire_of(t, l);
  std::vector<Amplitude> out(std::size_t{1} << t.circuit.num_qubits());
  for (std::size_t i = 0; i < logical.dimension(); ++i) {
    std::size_t j = 0;
    for (int l = 0; l < n; ++l) {
      if (i >> l & 1U) j |= std::size_t{1} << wire[l];
    }
    out[j] = logical[i];
  }
  return out;
}

/// Deviation between the logical and transpiled states at `theta`.
inline double transpiled_deviation(const Circuit& logical,
                                   const TranspiledCircuit& t,
                                   std::span<const double> theta) {
  const Statevector ls = simulate(logical, theta);
  const Statevector ts = simulate(t.circuit, theta);
  const auto expected = embed(ls, t);
  return phase_distance(std::span<const Amplitude>(expected), ts.amplitudes());
}

inline bool edges_respected(const Circuit& c, const TranspiledCircuit& t,
                            const CouplingMap& coupling) {
  const auto phys = t.physical_wires();
  for (const auto& inst : c.instructions()) {
    if (inst.is_two_qubit() &&
        !coupling.connected(phys[inst.wires[0]], phys[inst.wires[1]])) {
      return false;
    }
  }
  return true;
}

inline bool native_only(const Circuit& c) {
  return std::all_of(c.instructions().begin(), c.instructions().end(),
                     [](const Instruction& i) { return is_native(i.kind); });
}

}  // namespace qtlens::testing
