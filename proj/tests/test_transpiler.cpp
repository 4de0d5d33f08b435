#include <doctest.h>

#include <algorithm>
#include <cmath>
#include <numbers>
#include <vector>

#include "qtlens/ansatz.hpp"
#include "qtlens/errors.hpp"
#include "qtlens/metrics.hpp"
#include "qtlens/transpiler.hpp"
#include "support.hpp"

using namespace qtlens;
using namespace qtlens::testing;
using std::numbers::pi;

namespace {

Instruction rz(int q, ParamExpr e) {
  return Instruction::rotation(GateKind::RZ, q, std::move(e));
}
Instruction cx(int a, int b) { return Instruction::two(GateKind::CX, a, b); }

const Target& path3() {
  static const Target t("path3", line_map(3));
  return t;
}

const Target& heavy_hex() {
  static const Target t = load_target(default_target_path());
  return t;
}

Circuit single_gate(GateKind kind) {
  Circuit c(2, param_arity(kind));
  if (qubit_arity(kind) == 2) {
    c.append(Instruction::two(kind, 1, 0));
  } else if (param_arity(kind) == 1) {
    c.append(Instruction::rotation(kind, 1, ParamExpr::parameter(0)));
  } else {
    c.append(Instruction::one(kind, 1));
  }
  return c;
}

}  // namespace

TEST_CASE("basis translation matches the gate unitary") {
  for (auto kind : kAllGateKinds) {
    CAPTURE(gate_name(kind));
    const Circuit c = single_gate(kind);
    const Circuit t = translate_to_basis(c);
    CHECK(native_only(t));
    CHECK(t.param_count() == c.param_count());
    for (double angle : {0.0, 0.37, pi / 2, 2.9, -1.3}) {
      std::vector<double> theta(static_cast<std::size_t>(c.param_count()), angle);
      CHECK(phase_distance(unitary_of(c, theta), unitary_of(t, theta)) < 1e-12);
    }
  }
}

TEST_CASE("basis translation examples") {
  Circuit x(1, 0);
  x.append(Instruction::one(GateKind::X, 0));
  CHECK(translate_to_basis(x) == x);

  const Circuit swap = translate_to_basis(single_gate(GateKind::SWAP));
  CHECK(swap.size() == 3);
  CHECK(gate_counts(swap)[GateKind::CX] == 3);
  const std::vector<double> none;
  const Matrix u = unitary_of(swap, none);
  const Matrix expected{{1, 0, 0, 0}, {0, 0, 1, 0}, {0, 1, 0, 0}, {0, 0, 0, 1}};
  for (int r = 0; r < 4; ++r) {
    for (int c = 0; c < 4; ++c) CHECK(std::abs(u[r][c] - expected[r][c]) < 1e-15);
  }

  const Circuit ry = translate_to_basis(single_gate(GateKind::RY));
  int symbolic = 0;
  for (const auto& inst : ry.instructions()) {
    if (inst.angle && !inst.angle->is_constant()) {
      ++symbolic;
      CHECK(inst.angle->coefficient(0) == 1.0);
    }
  }
  CHECK(symbolic == 1);
}

TEST_CASE("trivial layout") {
  const Target five("line5", line_map(5));
  const Layout l = trivial_layout(build_ansatz(AnsatzFamily::HeaRing, 3, 1), five);
  CHECK(l.logical_to_physical() == std::vector<int>{0, 1, 2});
  CHECK(l.logical(3) == -1);
  CHECK(trivial_layout(build_ansatz(AnsatzFamily::HeaRing, 5, 1), five) ==
        Layout::identity(5, 5));
  CHECK_THROWS_AS(
      (void)trivial_layout(build_ansatz(AnsatzFamily::HeaRing, 6, 1), five),
      CapacityError);
}

TEST_CASE("layout bookkeeping") {
  Layout l({2, 0}, 3);
  CHECK(l.logical(2) == 0);
  CHECK(l.logical(1) == -1);
  l.swap_physical(2, 1);
  CHECK(l.physical(0) == 1);
  CHECK(l.logical(2) == -1);
  CHECK_THROWS_AS(Layout({1, 1}, 3), DomainError);
  CHECK_THROWS_AS(Layout({3}, 3), DomainError);
}

TEST_CASE("sabre routing on a path") {
  Circuit adjacent(3, 0);
  adjacent.append(cx(0, 1));
  const RoutingResult r0 = sabre_route(adjacent, path3(), Layout::identity(3, 3));
  CHECK(r0.swaps == 0);
  CHECK(r0.circuit.size() == 1);
  CHECK(r0.output_permutation == std::vector<int>{0, 1, 2});

  Circuit far(3, 0);
  far.append(cx(0, 2));
  const RoutingResult r1 = sabre_route(far, path3(), Layout::identity(3, 3));
  CHECK(r1.swaps == 1);
  REQUIRE(r1.circuit.size() == 2);
  CHECK(r1.circuit.instructions()[0].kind == GateKind::SWAP);
  CHECK(r1.circuit.instructions()[1].kind == GateKind::CX);
  const auto& cxg = r1.circuit.instructions()[1];
  CHECK(path3().coupling.connected(cxg.wires[0], cxg.wires[1]));
  int moved = 0;
  for (int p = 0; p < 3; ++p) moved += r1.output_permutation[p] != p;
  CHECK(moved == 2);
}

TEST_CASE("routing without two-qubit gates keeps the layout") {
  Circuit c(3, 0);
  c.append(Instruction::one(GateKind::X, 0));
  c.append(Instruction::one(GateKind::SX, 2));
  const Target& t = heavy_hex();
  const Layout start = sabre_layout(c, t, 11);
  const RoutingResult r = sabre_route(c, t, start);
  CHECK(r.swaps == 0);
  CHECK(r.final_layout == start);
  CHECK(sabre_layout(c, t, 11) == start);
}

TEST_CASE("sabre layout finds a zero-swap placement") {
  Circuit c(2, 0);
  c.append(cx(0, 1));
  c.append(cx(0, 1));
  const Target line("line6", line_map(6));
  // brute force: some placement needs no swap
  bool exists = false;
  for (int a = 0; a < 6; ++a) {
    for (int b = 0; b < 6; ++b) {
      if (a != b && line.coupling.connected(a, b)) exists = true;
    }
  }
  REQUIRE(exists);
  for (std::uint64_t seed = 0; seed < 20; ++seed) {
    const Layout l = sabre_layout(c, line, seed);
    CHECK(line.coupling.connected(l.physical(0), l.physical(1)));
    CHECK(sabre_route(c, line, l).swaps == 0);
    CHECK(sabre_layout(c, line, seed) == l);
  }
}

TEST_CASE("optimize examples") {
  Circuit pair(2, 0);
  pair.append(cx(0, 1));
  pair.append(cx(0, 1));
  CHECK(optimize(pair, 1).empty());
  CHECK(optimize(pair, 0) == pair);

  Circuit reversed(2, 0);
  reversed.append(cx(0, 1));
  reversed.append(cx(1, 0));
  CHECK(optimize(reversed, 3).size() == 2);

  Circuit merge(1, 2);
  merge.append(rz(0, ParamExpr::parameter(0)));
  merge.append(rz(0, ParamExpr::parameter(1)));
  const Circuit merged = optimize(merge, 1);
  REQUIRE(merged.size() == 1);
  CHECK(*merged.instructions()[0].angle ==
        ParamExpr(0.0, {{0, 1.0}, {1, 1.0}}));
  CHECK(merged.param_count() == 2);
  CHECK(merged.parameter_indices().size() == 2);

  Circuit sandwich(2, 1);
  sandwich.append(cx(0, 1));
  sandwich.append(rz(0, ParamExpr::parameter(0)));
  sandwich.append(cx(0, 1));
  CHECK(optimize(sandwich, 1).size() == 3);
  const Circuit cancelled = optimize(sandwich, 2);
  REQUIRE(cancelled.size() == 1);
  CHECK(cancelled.instructions()[0] == rz(0, ParamExpr::parameter(0)));

  Circuit blocked(2, 1);
  blocked.append(cx(0, 1));
  blocked.append(rz(1, ParamExpr::parameter(0)));
  blocked.append(cx(0, 1));
  CHECK(optimize(blocked, 3).size() == 3);

  Circuit sx4(1, 0);
  for (int i = 0; i < 4; ++i) sx4.append(Instruction::one(GateKind::SX, 0));
  sx4.append(Instruction::one(GateKind::X, 0));
  sx4.append(Instruction::one(GateKind::X, 0));
  CHECK(optimize(sx4, 1).empty());

  Circuit full_turn(1, 0);
  full_turn.append(rz(0, ParamExpr(pi)));
  full_turn.append(rz(0, ParamExpr(pi)));
  CHECK(optimize(full_turn, 1).empty());
}

TEST_CASE("optimization preserves the unitary") {
  for (auto f : kAllFamilies) {
    const Circuit logical = translate_to_basis(build_ansatz(f, 3, 2));
    const auto theta = sample_angles(logical.param_count(), 5);
    const Matrix u = unitary_of(logical, theta);
    for (int level = 0; level <= 3; ++level) {
      const Circuit o = optimize(logical, level);
      CHECK(o.param_count() == logical.param_count());
      CHECK(phase_distance(u, unitary_of(o, theta)) < 1e-10);
    }
  }
}

TEST_CASE("compaction") {
  Circuit sparse(5, 0);
  sparse.append(cx(4, 0));
  const Compaction c = compact_qubits(sparse);
  CHECK(c.circuit.num_qubits() == 2);
  CHECK(c.map == std::map<int, int>{{0, 0}, {4, 1}});
  CHECK(c.circuit.instructions()[0] == cx(1, 0));

  const Circuit dense = build_ansatz(AnsatzFamily::MpsBrick, 3, 1);
  const Compaction same = compact_qubits(dense);
  CHECK(same.circuit == dense);
  CHECK(same.map == std::map<int, int>{{0, 0}, {1, 1}, {2, 2}});

  const Compaction empty = compact_qubits(Circuit(4, 0));
  CHECK(empty.circuit.num_qubits() == 0);
  CHECK(empty.map.empty());
}

TEST_CASE("output wire composition") {
  TranspiledCircuit t;
  t.circuit = Circuit(1, 0);
  t.circuit.append(Instruction::one(GateKind::X, 0));
  t.initial_layout = Layout::identity(1, 1);
  t.output_permutation = {0};
  t.compaction_map = {{0, 0}};
  t.active_qubit_count = 1;
  CHECK(output_wire_of(t, 0) == 0);

  TranspiledCircuit u;
  u.circuit = Circuit(2, 0);
  u.circuit.append(cx(0, 1));
  u.initial_layout = Layout({3}, 4);
  u.output_permutation = {0, 1, 2, 3};
  u.compaction_map = {{0, 0}, {3, 1}};
  u.active_qubit_count = 2;
  CHECK(output_wire_of(u, 0) == 1);
  CHECK_THROWS_AS((void)output_wire_of(u, 1), DomainError);
  CHECK_THROWS_AS((void)output_wire_of(u, -1), DomainError);
}

TEST_CASE("routed wire follows the recorded transposition") {
  Circuit c(3, 3);
  c.append(Instruction::rotation(GateKind::RY, 0, ParamExpr::parameter(0)));
  c.append(Instruction::rotation(GateKind::RY, 1, ParamExpr::parameter(1)));
  c.append(Instruction::rotation(GateKind::RY, 2, ParamExpr::parameter(2)));
  c.append(cx(0, 2));
  TranspileOptions opts;
  opts.opt_level = 0;
  const TranspiledCircuit t = transpile(c, path3(), opts);
  CHECK(t.swaps == 1);
  const std::vector<double> theta{0.4, 1.9, 2.6};
  const Statevector ls = simulate(c, theta);
  const Statevector ts = simulate(t.circuit, theta);
  for (int l = 0; l < 3; ++l) {
    CHECK(expectation_z(ts, output_wire_of(t, l)) ==
          doctest::Approx(expectation_z(ls, l)).epsilon(1e-12));
  }
  CHECK(transpiled_deviation(c, t, theta) < 1e-12);
}

TEST_CASE("transpile on the default target") {
  const Target& hex = heavy_hex();
  for (auto f : kAllFamilies) {
    const Circuit logical = build_ansatz(f, 2, 1);
    for (int level = 0; level <= 3; ++level) {
      CAPTURE(family_name(f));
      CAPTURE(level);
      TranspileOptions opts;
      opts.opt_level = level;
      opts.seed = 3;
      const TranspiledCircuit t = transpile(logical, hex, opts);
      CHECK(native_only(t.circuit));
      CHECK(edges_respected(t.circuit, t, hex.coupling));
      CHECK(t.param_count == logical.param_count());
      CHECK(t.circuit.param_count() == logical.param_count());
      CHECK(t.circuit.parameter_indices() == logical.parameter_indices());
      CHECK(t.active_qubit_count == t.circuit.num_qubits());
      for (std::uint64_t s = 0; s < 3; ++s) {
        const auto theta = sample_angles(logical.param_count(), s);
        CHECK(transpiled_deviation(logical, t, theta) < 1e-9);
      }
      const TranspiledCircuit again = transpile(logical, hex, opts);
      CHECK(again.circuit == t.circuit);
      CHECK(again.initial_layout == t.initial_layout);
      CHECK(again.output_permutation == t.output_permutation);
    }
  }
}

TEST_CASE("transpile errors") {
  const Circuit wide = build_ansatz(AnsatzFamily::HeaRing, 4, 1);
  TranspileOptions opts;
  CHECK_THROWS_AS((void)transpile(wide, path3(), opts), CapacityError);
  opts.opt_level = 4;
  CHECK_THROWS_AS((void)transpile(build_ansatz(AnsatzFamily::HeaRing, 2, 1),
                                  path3(), opts),
                  DomainError);
}

TEST_CASE("sidecar") {
  TranspileOptions opts;
  opts.opt_level = 2;
  const TranspiledCircuit t =
      transpile(build_ansatz(AnsatzFamily::HeaRing, 4, 2), heavy_hex(), opts);
  const auto doc = transpile_sidecar(t);
  CHECK(doc.at("active_qubits") == t.active_qubit_count);
  CHECK(doc.at("initial_layout").size() == 4);
  CHECK(doc.at("output_permutation").size() == 65);
  CHECK(doc.at("output_wires").at(0) == output_wire_of(t, 0));
  CHECK(doc.at("compaction_map").size() ==
        static_cast<std::size_t>(t.active_qubit_count));

  Circuit partial(3, 0);
  partial.append(cx(0, 1));
  opts.opt_level = 0;
  const auto idle = transpile_sidecar(transpile(partial, path3(), opts));
  CHECK(idle.at("output_wires").at(2).is_null());
  CHECK(idle.at("output_wires").at(0).is_number_integer());
}
