#include <limits>

#include "qtlens/errors.hpp"
#include "qtlens/transpiler.hpp"

namespace qtlens {

int TranspileOptions::trials() const {
  if (routing_trials) {
    if (*routing_trials < 1) throw DomainError("routing_trials must be >= 1");
    return *routing_trials;
  }
  switch (opt_level) {
    case 2: return 5;
    case 3: return 10;
    default: return 1;
  }
}

std::vector<int> TranspiledCircuit::physical_wires() const {
  std::vector<int> out(compaction_map.size());
  for (const auto& [phys, wire] : compaction_map) out[wire] = phys;
  return out;
}

namespace {

struct Candidate {
  Layout layout;
  RoutingResult routed;
  Circuit native;
};

Candidate route_candidate(const Circuit& logical, const Target& target,
                          Layout layout, const SabreConfig& sabre) {
  RoutingResult routed = sabre_route(logical, target, layout, sabre);
  Circuit native = translate_to_basis(routed.circuit);
  return Candidate{std::move(layout), std::move(routed), std::move(native)};
}

}  // namespace

TranspiledCircuit transpile(const Circuit& logical, const Target& target,
                            const TranspileOptions& opts) {
  if (opts.opt_level < 0 || opts.opt_level > 3) {
    throw DomainError("opt_level must be in 0..3, got " +
                      std::to_string(opts.opt_level));
  }
  if (logical.num_qubits() > target.num_qubits()) {
    throw CapacityError("circuit needs " +
                        std::to_string(logical.num_qubits()) +
                        " qubits, target '" + target.name + "' has " +
                        std::to_string(target.num_qubits()));
  }

  std::optional<Candidate> best;
  if (opts.opt_level == 0) {
    best = route_candidate(logical, target, trivial_layout(logical, target),
                           opts.sabre);
  } else {
    const int trials = opts.trials();
    int best_cx = std::numeric_limits<int>::max();
    for (int t = 0; t < trials; ++t) {
      const std::uint64_t trial_seed =
          opts.seed ^ static_cast<std::uint64_t>(t);
      Candidate c = route_candidate(
          logical, target, sabre_layout(logical, target, trial_seed, opts.sabre),
          opts.sabre);
      const int cx = gate_counts(c.native).two_qubit;
      if (cx < best_cx) {
        best_cx = cx;
        best = std::move(c);
      }
    }
  }

  const Circuit optimized = optimize(best->native, opts.opt_level);
  Compaction compacted = compact_qubits(optimized);

  TranspiledCircuit out;
  out.circuit = std::move(compacted.circuit);
  out.initial_layout = std::move(best->layout);
  out.output_permutation = std::move(best->routed.output_permutation);
  out.compaction_map = std::move(compacted.map);
  out.active_qubit_count = out.circuit.num_qubits();
  out.param_count = out.circuit.param_count();
  out.swaps = best->routed.swaps;
  return out;
}

int output_wire_of(const TranspiledCircuit& t, int logical_wire) {
  if (logical_wire < 0 || logical_wire >= t.initial_layout.num_logical()) {
    throw DomainError("logical wire " + std::to_string(logical_wire) +
                      " out of range for " +
                      std::to_string(t.initial_layout.num_logical()) +
                      " logical qubits");
  }
  const int start = t.initial_layout.physical(logical_wire);
  const int end = t.output_permutation.at(static_cast<std::size_t>(start));
  const auto it = t.compaction_map.find(end);
  if (it == t.compaction_map.end()) {
    throw DomainError("logical wire " + std::to_string(logical_wire) +
                      " ends on idle physical wire " + std::to_string(end));
  }
  return it->second;
}

nlohmann::json transpile_sidecar(const TranspiledCircuit& t) {
  nlohmann::json compaction = nlohmann::json::array();
  for (const auto& [from, to] : t.compaction_map) {
    compaction.push_back(nlohmann::json::array({from, to}));
  }
  nlohmann::json output_wires = nlohmann::json::array();
  for (int l = 0; l < t.initial_layout.num_logical(); ++l) {
    const int end = t.output_permutation.at(
        static_cast<std::size_t>(t.initial_layout.physical(l)));
    const auto it = t.compaction_map.find(end);
    if (it == t.compaction_map.end()) {
      output_wires.push_back(nullptr);  // idle logical, compacted away
    } else {
      output_wires.push_back(it->second);
    }
  }
  return {{"initial_layout", t.initial_layout.logical_to_physical()},
          {"output_permutation", t.output_permutation},
          {"compaction_map", std::move(compaction)},
          {"active_qubits", t.active_qubit_count},
          {"output_wires", std::move(output_wires)},
          {"param_count", t.param_count},
          {"swaps", t.swaps}};
}

}  // namespace qtlens
