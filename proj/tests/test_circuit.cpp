#include <doctest.h>

#include <cmath>
#include <numbers>
#include <sstream>
#include <vector>

#include "qtlens/ansatz.hpp"
#include "qtlens/circuit.hpp"
#include "qtlens/circuit_io.hpp"
#include "qtlens/errors.hpp"
#include "qtlens/param_expr.hpp"

using namespace qtlens;
using std::numbers::pi;

namespace {

Instruction ry(int q, ParamExpr e) {
  return Instruction::rotation(GateKind::RY, q, std::move(e));
}
Instruction rz(int q, ParamExpr e) {
  return Instruction::rotation(GateKind::RZ, q, std::move(e));
}
Instruction cx(int a, int b) { return Instruction::two(GateKind::CX, a, b); }

}  // namespace

TEST_CASE("param expr normalizes terms") {
  const ParamExpr e(1.0, {{2, 0.5}, {0, 1.0}, {2, 0.5}, {1, 0.0}});
  REQUIRE(e.terms().size() == 2);
  CHECK(e.terms()[0] == ParamTerm{0, 1.0});
  CHECK(e.terms()[1] == ParamTerm{2, 1.0});
  CHECK(e.coefficient(1) == 0.0);
  CHECK(e.max_index() == 2);
  CHECK_THROWS_AS(ParamExpr(0.0, {{-1, 1.0}}), DomainError);

  const std::vector<double> theta{2.0, 7.0, 3.0};
  CHECK(e.evaluate(theta) == doctest::Approx(6.0));
  CHECK(e.shifted(pi).constant() == doctest::Approx(1.0 + pi));
  const ParamExpr sum = e + ParamExpr(0.0, {{2, -1.0}});
  CHECK(sum == ParamExpr(1.0, {{0, 1.0}}));
}

TEST_CASE("depth") {
  CHECK(depth(Circuit(3, 0)) == 0);

  Circuit chain(3, 0);
  chain.append(cx(0, 1));
  chain.append(cx(1, 2));
  CHECK(depth(chain) == 2);

  Circuit mixed(2, 0);
  mixed.append(ry(0, ParamExpr(0.1)));
  mixed.append(ry(1, ParamExpr(0.2)));
  mixed.append(cx(0, 1));
  mixed.append(ry(0, ParamExpr(0.3)));
  CHECK(depth(mixed) == 3);
}

TEST_CASE("depth is subadditive under concatenation") {
  for (auto f : kAllFamilies) {
    const Circuit a = build_ansatz(f, 4, 1);
    const Circuit b = build_ansatz(f, 4, 2);
    Circuit ab(4, b.param_count());
    ab.append(a);
    ab.append(b);
    CHECK(depth(ab) <= depth(a) + depth(b));
  }
}

TEST_CASE("bind") {
  Circuit c(1, 1);
  c.append(ry(0, ParamExpr::parameter(0)));
  const std::vector<double> t1{pi};
  const Circuit b1 = qtlens::bind(c, t1);
  CHECK(b1.param_count() == 0);
  CHECK(b1.instructions()[0].angle->constant() == doctest::Approx(pi));
  CHECK(b1.instructions()[0].angle->is_constant());

  Circuit shifted(1, 1);
  shifted.append(rz(0, ParamExpr(pi, {{0, 1.0}})));
  const std::vector<double> t2{pi / 2};
  CHECK(qtlens::bind(shifted, t2).instructions()[0].angle->constant() ==
        doctest::Approx(3 * pi / 2));

  Circuit lin(1, 2);
  lin.append(rz(0, ParamExpr(0.0, {{0, 0.5}, {1, 1.0}})));
  const std::vector<double> t3{2.0, 1.0};
  CHECK(qtlens::bind(lin, t3).instructions()[0].angle->constant() ==
        doctest::Approx(2.0));

  CHECK(qtlens::bind(lin, t3) == qtlens::bind(lin, t3));
  const std::vector<double> short_theta{1.0};
  CHECK_THROWS_AS((void)qtlens::bind(lin, short_theta), BindingError);
}

TEST_CASE("gate counts") {
  const GateCounts empty = gate_counts(Circuit(2, 0));
  CHECK(empty.total == 0);
  CHECK(empty.two_qubit == 0);
  CHECK(empty.by_kind.empty());

  Circuit c(2, 0);
  c.append(cx(0, 1));
  c.append(cx(1, 0));
  c.append(rz(0, ParamExpr(0.5)));
  const GateCounts g = gate_counts(c);
  CHECK(g[GateKind::CX] == 2);
  CHECK(g[GateKind::RZ] == 1);
  CHECK(g[GateKind::SX] == 0);
  CHECK(g.two_qubit == 2);
  CHECK(g.total == 3);

  CHECK(gate_counts(build_ansatz(AnsatzFamily::EfficientSU2Full, 4, 2))
            .two_qubit == 12);
}

TEST_CASE("active qubits") {
  CHECK(active_qubits(Circuit(3, 0)).empty());

  Circuit one(5, 0);
  one.append(ry(2, ParamExpr(1.0)));
  CHECK(active_qubits(one) == std::set<int>{2});

  Circuit two(5, 0);
  two.append(cx(0, 4));
  two.append(rz(4, ParamExpr(1.0)));
  CHECK(active_qubits(two) == std::set<int>{0, 4});
}

TEST_CASE("append validation") {
  Circuit c(2, 1);
  CHECK_THROWS_AS(c.append(cx(0, 2)), DomainError);
  CHECK_THROWS_AS(c.append(cx(1, 1)), DomainError);
  CHECK_THROWS_AS(c.append(ry(0, ParamExpr::parameter(1))), BindingError);
  Instruction bare = Instruction::one(GateKind::X, 0);
  bare.angle = ParamExpr(1.0);
  CHECK_THROWS_AS(c.append(bare), DomainError);
  CHECK_THROWS_AS(c.validate_parameters(), DomainError);
}

TEST_CASE("gate names round trip") {
  for (auto k : kAllGateKinds) CHECK(parse_gate_kind(gate_name(k)) == k);
  CHECK_THROWS_AS((void)parse_gate_kind("ccx"), DomainError);
}

TEST_CASE("json round trip is lossless") {
  for (auto f : kAllFamilies) {
    const Circuit c = build_ansatz(f, 3, 2);
    CHECK(circuit_from_json(circuit_to_json(c)) == c);
  }
  Circuit odd(3, 2);
  odd.append(rz(2, ParamExpr(0.1 + 1e-17, {{0, -0.3}, {1, 1.0 / 3.0}})));
  odd.append(Instruction::two(GateKind::SWAP, 2, 0));
  odd.append(Instruction::one(GateKind::SX, 1));
  const auto doc = circuit_to_json(odd);
  CHECK(doc.at("version") == 1);
  CHECK(circuit_from_json(nlohmann::json::parse(doc.dump())) == odd);
}

TEST_CASE("json load errors") {
  auto doc = circuit_to_json(build_ansatz(AnsatzFamily::HeaRing, 2, 1));
  auto bad_kind = doc;
  bad_kind["instructions"][1]["kind"] = "toffoli";
  CHECK_THROWS_AS((void)circuit_from_json(bad_kind), LoadError);
  auto bad_wire = doc;
  bad_wire["instructions"][0]["qubits"][0] = 9;
  CHECK_THROWS_AS((void)circuit_from_json(bad_wire), LoadError);
  auto bad_version = doc;
  bad_version["version"] = 99;
  CHECK_THROWS_AS((void)circuit_from_json(bad_version), LoadError);
}
