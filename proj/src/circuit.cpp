#include "qtlens/circuit.hpp"

#include <algorithm>

#include "qtlens/errors.hpp"

namespace qtlens {

int qubit_arity(GateKind kind) {
  switch (kind) {
    case GateKind::CX:
    case GateKind::CZ:
    case GateKind::SWAP:
      return 2;
    default:
      return 1;
  }
}

int param_arity(GateKind kind) {
  switch (kind) {
    case GateKind::RX:
    case GateKind::RY:
    case GateKind::RZ:
      return 1;
    default:
      return 0;
  }
}

bool is_native(GateKind kind) {
  return kind == GateKind::CX || kind == GateKind::RZ ||
         kind == GateKind::SX || kind == GateKind::X;
}

std::string_view gate_name(GateKind kind) {
  switch (kind) {
    case GateKind::RX: return "rx";
    case GateKind::RY: return "ry";
    case GateKind::RZ: return "rz";
    case GateKind::SX: return "sx";
    case GateKind::X: return "x";
    case GateKind::H: return "h";
    case GateKind::CX: return "cx";
    case GateKind::CZ: return "cz";
    case GateKind::SWAP: return "swap";
  }
  return "?";
}

GateKind parse_gate_kind(std::string_view name) {
  for (GateKind k : kAllGateKinds) {
    if (gate_name(k) == name) return k;
  }
  throw DomainError("unknown gate kind '" + std::string(name) + "'");
}

Instruction Instruction::one(GateKind kind, int q) {
  return Instruction{kind, {q, -1}, std::nullopt};
}

Instruction Instruction::rotation(GateKind kind, int q, ParamExpr angle) {
  return Instruction{kind, {q, -1}, std::move(angle)};
}

Instruction Instruction::two(GateKind kind, int q0, int q1) {
  return Instruction{kind, {q0, q1}, std::nullopt};
}

bool Instruction::acts_on(int q) const {
  return wires[0] == q || (is_two_qubit() && wires[1] == q);
}

int GateCounts::operator[](GateKind kind) const {
  auto it = by_kind.find(kind);
  return it == by_kind.end() ? 0 : it->second;
}

Circuit::Circuit(int num_qubits, int param_count)
    : num_qubits_(num_qubits), param_count_(param_count) {
  if (num_qubits < 0 || param_count < 0) {
    throw DomainError("circuit width and parameter count must be >= 0");
  }
}

void Circuit::append(Instruction inst) {
  const int arity = qubit_arity(inst.kind);
  for (int q : inst.qubits()) {
    if (q < 0 || q >= num_qubits_) {
      throw DomainError("wire " + std::to_string(q) + " out of range for " +
                        std::string(gate_name(inst.kind)) + " on width " +
                        std::to_string(num_qubits_));
    }
  }
  if (arity == 2 && inst.wires[0] == inst.wires[1]) {
    throw DomainError("two-qubit gate on repeated wire " +
                      std::to_string(inst.wires[0]));
  }
  if (arity == 1) inst.wires[1] = -1;
  if ((param_arity(inst.kind) == 1) != inst.angle.has_value()) {
    throw DomainError(std::string(gate_name(inst.kind)) +
                      " takes " + std::to_string(param_arity(inst.kind)) +
                      " angle(s)");
  }
  if (inst.angle && inst.angle->max_index() >= param_count_) {
    throw BindingError("parameter index " +
                       std::to_string(inst.angle->max_index()) +
                       " >= parameter count " + std::to_string(param_count_));
  }
  instructions_.push_back(std::move(inst));
}

void Circuit::append(const Circuit& other) {
  for (const auto& inst : other.instructions()) append(inst);
}

std::set<int> Circuit::parameter_indices() const {
  std::set<int> out;
  for (const auto& inst : instructions_) {
    if (!inst.angle) continue;
    for (const auto& t : inst.angle->terms()) out.insert(t.index);
  }
  return out;
}

void Circuit::validate_parameters() const {
  const auto used = parameter_indices();
  if (static_cast<int>(used.size()) != param_count_) {
    for (int k = 0; k < param_count_; ++k) {
      if (!used.contains(k)) {
        throw DomainError("parameter " + std::to_string(k) +
                          " is not used by any instruction");
      }
    }
  }
}

int depth(const Circuit& circuit) {
  std::vector<int> level(static_cast<std::size_t>(circuit.num_qubits()), 0);
  int best = 0;
  for (const auto& inst : circuit.instructions()) {
    int d = 0;
    for (int q : inst.qubits()) d = std::max(d, level[q]);
    ++d;
    for (int q : inst.qubits()) level[q] = d;
    best = std::max(best, d);
  }
  return best;
}

Circuit bind(const Circuit& circuit, std::span<const double> theta) {
  if (static_cast<int>(theta.size()) != circuit.param_count()) {
    throw BindingError("binding has " + std::to_string(theta.size()) +
                       " values, circuit expects " +
                       std::to_string(circuit.param_count()));
  }
  Circuit out(circuit.num_qubits(), 0);
  for (const auto& inst : circuit.instructions()) {
    Instruction b = inst;
    if (b.angle) b.angle = ParamExpr(b.angle->evaluate(theta));
    out.append(std::move(b));
  }
  return out;
}

GateCounts gate_counts(const Circuit& circuit) {
  GateCounts counts;
  for (const auto& inst : circuit.instructions()) {
    ++counts.by_kind[inst.kind];
    ++counts.total;
    if (inst.is_two_qubit()) ++counts.two_qubit;
  }
  return counts;
}

std::set<int> active_qubits(const Circuit& circuit) {
  std::set<int> out;
  for (const auto& inst : circuit.instructions()) {
    for (int q : inst.qubits()) out.insert(q);
  }
  return out;
}

}  // namespace qtlens
