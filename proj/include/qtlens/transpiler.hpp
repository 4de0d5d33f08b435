#pragma once

#include <cstdint>
#include <map>
#include <optional>
#include <vector>

#include <json.hpp>

#include "qtlens/circuit.hpp"
#include "qtlens/target.hpp"

namespace qtlens {

/// Injective assignment of logical qubits to physical qubits.
class Layout {
 public:
  Layout() = default;
  /// logical_to_physical[l] = physical wire of logical l. Throws DomainError
  /// when entries repeat or fall outside [0, num_physical).
  Layout(std::vector<int> logical_to_physical, int num_physical);

  static Layout identity(int num_logical, int num_physical);

  [[nodiscard]] int num_logical() const {
    return static_cast<int>(l2p_.size());
  }
  [[nodiscard]] int num_physical() const {
    return static_cast<int>(p2l_.size());
  }
  [[nodiscard]] int physical(int logical) const { return l2p_[logical]; }
  /// Logical qubit on `physical`, or -1 when free.
  [[nodiscard]] int logical(int physical) const { return p2l_[physical]; }
  [[nodiscard]] const std::vector<int>& logical_to_physical() const {
    return l2p_;
  }
  [[nodiscard]] const std::vector<int>& physical_to_logical() const {
    return p2l_;
  }

  /// Exchanges whatever sits on physical wires a and b.
  void swap_physical(int a, int b);

  friend bool operator==(const Layout&, const Layout&) = default;

 private:
  std::vector<int> l2p_;
  std::vector<int> p2l_;
};

/// SABRE heuristic constants.
struct SabreConfig {
  int extended_set_size = 20;
  double lookahead_weight = 0.5;
  double decay_increment = 0.001;
  int decay_reset_interval = 5;
  /// Forward-then-reverse refinement rounds in sabre_layout.
  int layout_iterations = 1;
};

struct TranspileOptions {
  int opt_level = 1;
  std::uint64_t seed = 0;
  /// Overrides the per-level trial count (1, 1, 5, 10) when set.
  std::optional<int> routing_trials;
  SabreConfig sabre;

  [[nodiscard]] int trials() const;
};

struct RoutingResult {
  /// Width = number of physical qubits; SWAPs kept as SWAP instructions.
  Circuit circuit;
  Layout final_layout;
  /// output_permutation[p] = physical wire holding, at the end, the state
  /// that started on physical wire p.
  std::vector<int> output_permutation;
  int swaps = 0;
};

struct TranspiledCircuit {
  /// Native-basis circuit on the compacted wires.
  Circuit circuit;
  Layout initial_layout;
  /// Physical to physical, see RoutingResult.
  std::vector<int> output_permutation;
  /// Physical wire -> compacted wire, for active wires only.
  std::map<int, int> compaction_map;
  int active_qubit_count = 0;
  int param_count = 0;
  int swaps = 0;

  /// Physical wire of each compacted wire (inverse of compaction_map).
  [[nodiscard]] std::vector<int> physical_wires() const;
};

/// Rewrites every gate into {CX, RZ, SX, X}. Angles stay symbolic; RY and
/// RX become SX/RZ sandwiches with pi-shifted expressions. Throws
/// TranslationError on gates it cannot rewrite.
[[nodiscard]] Circuit translate_to_basis(const Circuit& circuit);

/// Logical i -> physical i. Throws CapacityError when n > m.
[[nodiscard]] Layout trivial_layout(const Circuit& circuit,
                                    const Target& target);

/// Bidirectional SABRE layout search. Starting from a seeded random
/// placement on a connected region of n physical qubits, routes the circuit
/// forward and then reversed (config.layout_iterations rounds), each pass
/// starting from the previous pass's final layout. The result is the
/// starting layout of the closing forward pass, which transpile() performs
/// as the real routing.
[[nodiscard]] Layout sabre_layout(const Circuit& circuit, const Target& target,
                                  std::uint64_t seed,
                                  const SabreConfig& config = {});

/// SABRE swap insertion. Deterministic: candidate SWAPs are scored over the
/// front layer and an extended lookahead set, scaled by per-qubit decay,
/// and ties go to the lexicographically smallest physical pair.
[[nodiscard]] RoutingResult sabre_route(const Circuit& circuit,
                                        const Target& target,
                                        const Layout& layout,
                                        const SabreConfig& config = {});

/// Peephole optimization of a native-basis circuit. Level 0 is the
/// identity; level 1 cancels adjacent inverse pairs (CX CX, X X, SX^4) and
/// merges adjacent RZ gates; levels 2 and 3 add commutation-aware CX
/// cancellation, iterated to a fixpoint.
[[nodiscard]] Circuit optimize(const Circuit& circuit, int level);

struct Compaction {
  Circuit circuit;
  std::map<int, int> map;
};

/// Drops wires no instruction touches and renumbers the rest in ascending
/// order.
[[nodiscard]] Compaction compact_qubits(const Circuit& circuit);

/// Full pipeline: layout, routing, basis translation, optimization and
/// compaction. Throws CapacityError when the circuit is wider than the
/// target.
[[nodiscard]] TranspiledCircuit transpile(const Circuit& logical,
                                          const Target& target,
                                          const TranspileOptions& opts);

/// Compacted wire that carries logical qubit `logical_wire` at the end of
/// the transpiled circuit. Throws DomainError when out of range.
[[nodiscard]] int output_wire_of(const TranspiledCircuit& t, int logical_wire);

/// Sidecar document: {initial_layout, output_permutation, compaction_map,
/// active_qubits, output_wires, param_count, swaps}. `output_wires[l]` is
/// output_wire_of(t, l), or null when logical l has no gates.
[[nodiscard]] nlohmann::json transpile_sidecar(const TranspiledCircuit& t);

}  // namespace qtlens
