#pragma once

#include <array>
#include <cstddef>
#include <map>
#include <optional>
#include <set>
#include <span>
#include <string>
#include <string_view>
#include <vector>

#include "qtlens/param_expr.hpp"

namespace qtlens {

enum class GateKind { RX, RY, RZ, SX, X, H, CX, CZ, SWAP };

inline constexpr std::array<GateKind, 9> kAllGateKinds = {
    GateKind::RX, GateKind::RY, GateKind::RZ, GateKind::SX,  GateKind::X,
    GateKind::H,  GateKind::CX, GateKind::CZ, GateKind::SWAP};

[[nodiscard]] int qubit_arity(GateKind kind);
[[nodiscard]] int param_arity(GateKind kind);
[[nodiscard]] bool is_native(GateKind kind);

/// Lower-case gate name used in files and diagnostics ("cx", "rz", ...).
[[nodiscard]] std::string_view gate_name(GateKind kind);
/// Inverse of gate_name; throws DomainError on unknown names.
[[nodiscard]] GateKind parse_gate_kind(std::string_view name);

struct Instruction {
  GateKind kind = GateKind::X;
  std::array<int, 2> wires{0, -1};
  std::optional<ParamExpr> angle;

  static Instruction one(GateKind kind, int q);
  static Instruction rotation(GateKind kind, int q, ParamExpr angle);
  static Instruction two(GateKind kind, int q0, int q1);

  [[nodiscard]] std::span<const int> qubits() const {
    return {wires.data(), static_cast<std::size_t>(qubit_arity(kind))};
  }
  [[nodiscard]] bool is_two_qubit() const { return qubit_arity(kind) == 2; }
  [[nodiscard]] bool acts_on(int q) const;

  friend bool operator==(const Instruction&, const Instruction&) = default;
};

/// Gate-kind histogram of a circuit.
struct GateCounts {
  std::map<GateKind, int> by_kind;
  int two_qubit = 0;
  int total = 0;

  [[nodiscard]] int operator[](GateKind kind) const;
};

/// Parameterized circuit on `num_qubits` wires with `param_count` symbolic
/// parameters. Qubit 0 is the least significant bit of a basis index.
///
/// `append` validates each instruction against the width and the parameter
/// count; `validate_parameters` checks that every index in [0, P) is used.
class Circuit {
 public:
  Circuit() = default;
  Circuit(int num_qubits, int param_count);

  [[nodiscard]] int num_qubits() const { return num_qubits_; }
  [[nodiscard]] int param_count() const { return param_count_; }
  [[nodiscard]] const std::vector<Instruction>& instructions() const {
    return instructions_;
  }
  [[nodiscard]] std::size_t size() const { return instructions_.size(); }
  [[nodiscard]] bool empty() const { return instructions_.empty(); }

  /// Throws DomainError for bad wires or a wrong number of angles, and
  /// BindingError when an angle refers to a parameter index >= P.
  void append(Instruction inst);
  void append(const Circuit& other);

  /// Throws DomainError when some index in [0, P) is unused.
  void validate_parameters() const;

  /// Sorted set of parameter indices referenced by any instruction.
  [[nodiscard]] std::set<int> parameter_indices() const;

  friend bool operator==(const Circuit&, const Circuit&) = default;

 private:
  int num_qubits_ = 0;
  int param_count_ = 0;
  std::vector<Instruction> instructions_;
};

/// Longest chain of instructions sharing wires, every gate weighted 1.
[[nodiscard]] int depth(const Circuit& circuit);

/// Replaces each angle by its value under theta. The result carries no
/// symbolic parameters (param_count 0). Throws BindingError on a length
/// mismatch.
[[nodiscard]] Circuit bind(const Circuit& circuit,
                           std::span<const double> theta);

[[nodiscard]] GateCounts gate_counts(const Circuit& circuit);

[[nodiscard]] std::set<int> active_qubits(const Circuit& circuit);

}  // namespace qtlens
