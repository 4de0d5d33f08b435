#include <cmath>
#include <numbers>
#include <optional>
#include <vector>

#include "qtlens/errors.hpp"
#include "qtlens/transpiler.hpp"

namespace qtlens {

namespace {

constexpr double kPi = std::numbers::pi;

void emit_rz(Circuit& out, int q, ParamExpr angle) {
  out.append(Instruction::rotation(GateKind::RZ, q, std::move(angle)));
}

void emit_sx(Circuit& out, int q) {
  out.append(Instruction::one(GateKind::SX, q));
}

// H = RZ(pi/2) SX RZ(pi/2) up to global phase.
void emit_h(Circuit& out, int q) {
  emit_rz(out, q, ParamExpr(kPi / 2));
  emit_sx(out, q);
  emit_rz(out, q, ParamExpr(kPi / 2));
}

}  // namespace

Circuit translate_to_basis(const Circuit& circuit) {
  Circuit out(circuit.num_qubits(), circuit.param_count());
  for (const auto& inst : circuit.instructions()) {
    const int q = inst.wires[0];
    switch (inst.kind) {
      case GateKind::CX:
      case GateKind::RZ:
      case GateKind::SX:
      case GateKind::X:
        out.append(inst);
        break;
      case GateKind::H:
        emit_h(out, q);
        break;
      case GateKind::RY:
        // RY(e) = RZ(pi) SX RZ(e + pi) SX (matrix order)
        emit_sx(out, q);
        emit_rz(out, q, inst.angle->shifted(kPi));
        emit_sx(out, q);
        emit_rz(out, q, ParamExpr(kPi));
        break;
      case GateKind::RX:
        // RX(e) = H RZ(e) H
        emit_rz(out, q, ParamExpr(kPi / 2));
        emit_sx(out, q);
        emit_rz(out, q, inst.angle->shifted(kPi));
        emit_sx(out, q);
        emit_rz(out, q, ParamExpr(kPi / 2));
        break;
      case GateKind::CZ:
        emit_h(out, inst.wires[1]);
        out.append(Instruction::two(GateKind::CX, inst.wires[0], inst.wires[1]));
        emit_h(out, inst.wires[1]);
        break;
      case GateKind::SWAP:
        out.append(Instruction::two(GateKind::CX, inst.wires[0], inst.wires[1]));
        out.append(Instruction::two(GateKind::CX, inst.wires[1], inst.wires[0]));
        out.append(Instruction::two(GateKind::CX, inst.wires[0], inst.wires[1]));
        break;
      default:
        throw TranslationError("no basis rule for gate '" +
                               std::string(gate_name(inst.kind)) + "'");
    }
  }
  return out;
}

namespace {

// RZ(c) with no symbolic terms and c = 0 mod 2pi is the identity up to
// global phase.
bool is_identity_rz(const ParamExpr& e) {
  if (!e.is_constant()) return false;
  const double r = std::remainder(e.constant(), 2 * kPi);
  return std::abs(r) < 1e-12;
}

// Mutable view of a circuit where instructions can be deleted in place.
struct Work {
  int num_qubits;
  int param_count;
  std::vector<std::optional<Instruction>> insts;

  explicit Work(const Circuit& c)
      : num_qubits(c.num_qubits()), param_count(c.param_count()) {
    insts.reserve(c.size());
    for (const auto& i : c.instructions()) insts.emplace_back(i);
  }

  Circuit finish() const {
    Circuit out(num_qubits, param_count);
    for (const auto& i : insts) {
      if (i) out.append(*i);
    }
    return out;
  }
};

// Adjacent inverse cancellation and RZ merging. Returns true on change.
bool cancel_adjacent(Work& w) {
  bool changed = false;
  std::vector<std::vector<std::size_t>> stack(
      static_cast<std::size_t>(w.num_qubits));
  auto top_is = [&](int q, GateKind kind) -> std::optional<std::size_t> {
    if (stack[q].empty()) return std::nullopt;
    const std::size_t j = stack[q].back();
    if (w.insts[j]->kind != kind) return std::nullopt;
    return j;
  };

  for (std::size_t i = 0; i < w.insts.size(); ++i) {
    if (!w.insts[i]) continue;
    Instruction& g = *w.insts[i];
    const int q = g.wires[0];
    switch (g.kind) {
      case GateKind::CX: {
        const int t = g.wires[1];
        auto j = top_is(q, GateKind::CX);
        if (j && !stack[t].empty() && stack[t].back() == *j &&
            w.insts[*j]->wires == g.wires) {
          w.insts[*j].reset();
          w.insts[i].reset();
          stack[q].pop_back();
          stack[t].pop_back();
          changed = true;
          continue;
        }
        break;
      }
      case GateKind::X:
        if (auto j = top_is(q, GateKind::X)) {
          w.insts[*j].reset();
          w.insts[i].reset();
          stack[q].pop_back();
          changed = true;
          continue;
        }
        break;
      case GateKind::SX: {
        auto& s = stack[q];
        if (s.size() >= 3 && w.insts[s[s.size() - 1]]->kind == GateKind::SX &&
            w.insts[s[s.size() - 2]]->kind == GateKind::SX &&
            w.insts[s[s.size() - 3]]->kind == GateKind::SX) {
          for (int k = 0; k < 3; ++k) {
            w.insts[s.back()].reset();
            s.pop_back();
          }
          w.insts[i].reset();
          changed = true;
          continue;
        }
        break;
      }
      case GateKind::RZ:
        if (auto j = top_is(q, GateKind::RZ)) {
          auto& prev = *w.insts[*j];
          *prev.angle += *g.angle;
          w.insts[i].reset();
          if (is_identity_rz(*prev.angle)) {
            w.insts[*j].reset();
            stack[q].pop_back();
          }
          changed = true;
          continue;
        }
        if (is_identity_rz(*g.angle)) {
          w.insts[i].reset();
          changed = true;
          continue;
        }
        break;
      default:
        break;
    }
    for (int wq : w.insts[i]->qubits()) stack[wq].push_back(i);
  }
  return changed;
}

// Cancels CX(c,t) ... CX(c,t) when everything in between on c and t
// commutes with CX(c,t): RZ on the control, X or SX on the target, CX
// sharing only the control, CX sharing only the target.
bool cancel_commuting_cx(Work& w) {
  bool changed = false;
  for (std::size_t i = 0; i < w.insts.size(); ++i) {
    if (!w.insts[i] || w.insts[i]->kind != GateKind::CX) continue;
    const int c = w.insts[i]->wires[0];
    const int t = w.insts[i]->wires[1];
    for (std::size_t j = i + 1; j < w.insts.size(); ++j) {
      if (!w.insts[j]) continue;
      const Instruction& g = *w.insts[j];
      const bool on_c = g.acts_on(c);
      const bool on_t = g.acts_on(t);
      if (!on_c && !on_t) continue;
      if (g.kind == GateKind::CX) {
        if (g.wires[0] == c && g.wires[1] == t) {
          w.insts[i].reset();
          w.insts[j].reset();
          changed = true;
          break;
        }
        if (g.wires[0] == c && g.wires[1] != t) continue;
        if (g.wires[1] == t && g.wires[0] != c) continue;
        break;
      }
      if (on_c && g.kind == GateKind::RZ) continue;
      if (on_t && (g.kind == GateKind::X || g.kind == GateKind::SX)) continue;
      break;
    }
  }
  return changed;
}

void level1_fixpoint(Work& w) {
  while (cancel_adjacent(w)) {
  }
}

}  // namespace

Circuit optimize(const Circuit& circuit, int level) {
  if (level < 0 || level > 3) {
    throw DomainError("optimization level must be in 0..3, got " +
                      std::to_string(level));
  }
  for (const auto& inst : circuit.instructions()) {
    if (!is_native(inst.kind)) {
      throw DomainError("optimize expects a native-basis circuit, found '" +
                        std::string(gate_name(inst.kind)) + "'");
    }
  }
  if (level == 0) return circuit;
  Work w(circuit);
  level1_fixpoint(w);
  if (level >= 2) {
    const int max_sweeps = level == 3 ? 10 : 1;
    for (int sweep = 0; sweep < max_sweeps; ++sweep) {
      const bool changed = cancel_commuting_cx(w);
      level1_fixpoint(w);
      if (!changed) break;
    }
  }
  return w.finish();
}

Compaction compact_qubits(const Circuit& circuit) {
  const auto active = active_qubits(circuit);
  Compaction result;
  int next = 0;
  for (int q : active) result.map[q] = next++;
  result.circuit = Circuit(next, circuit.param_count());
  for (auto inst : circuit.instructions()) {
    inst.wires[0] = result.map.at(inst.wires[0]);
    if (inst.is_two_qubit()) inst.wires[1] = result.map.at(inst.wires[1]);
    result.circuit.append(std::move(inst));
  }
  return result;
}

}  // namespace qtlens
