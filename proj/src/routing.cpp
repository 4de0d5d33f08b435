#include <algorithm>
#include <limits>
#include <numeric>
#include <set>

#include "qtlens/errors.hpp"
#include "qtlens/rng.hpp"
#include "qtlens/transpiler.hpp"

namespace qtlens {

Layout::Layout(std::vector<int> logical_to_physical, int num_physical)
    : l2p_(std::move(logical_to_physical)),
      p2l_(static_cast<std::size_t>(num_physical), -1) {
  for (std::size_t l = 0; l < l2p_.size(); ++l) {
    const int p = l2p_[l];
    if (p < 0 || p >= num_physical) {
      throw DomainError("layout maps logical " + std::to_string(l) +
                        " to invalid physical " + std::to_string(p));
    }
    if (p2l_[p] != -1) {
      throw DomainError("layout is not injective at physical " +
                        std::to_string(p));
    }
    p2l_[p] = static_cast<int>(l);
  }
}

Layout Layout::identity(int num_logical, int num_physical) {
  std::vector<int> l2p(static_cast<std::size_t>(num_logical));
  std::iota(l2p.begin(), l2p.end(), 0);
  return Layout(std::move(l2p), num_physical);
}

void Layout::swap_physical(int a, int b) {
  const int la = p2l_[a];
  const int lb = p2l_[b];
  p2l_[a] = lb;
  p2l_[b] = la;
  if (la >= 0) l2p_[la] = b;
  if (lb >= 0) l2p_[lb] = a;
}

namespace {

void check_capacity(const Circuit& circuit, const Target& target) {
  if (circuit.num_qubits() > target.num_qubits()) {
    throw CapacityError("circuit needs " +
                        std::to_string(circuit.num_qubits()) +
                        " qubits, target '" + target.name + "' has " +
                        std::to_string(target.num_qubits()));
  }
}

// Dependency DAG over instructions: an edge joins consecutive instructions
// on the same wire.
struct Dag {
  std::vector<std::vector<int>> successors;
  std::vector<int> in_degree;

  explicit Dag(const Circuit& circuit) {
    const auto& insts = circuit.instructions();
    successors.resize(insts.size());
    in_degree.assign(insts.size(), 0);
    std::vector<int> last(static_cast<std::size_t>(circuit.num_qubits()), -1);
    for (std::size_t i = 0; i < insts.size(); ++i) {
      for (int q : insts[i].qubits()) {
        const int prev = last[q];
        if (prev >= 0) {
          auto& succ = successors[prev];
          if (succ.empty() || succ.back() != static_cast<int>(i)) {
            succ.push_back(static_cast<int>(i));
            ++in_degree[i];
          }
        }
        last[q] = static_cast<int>(i);
      }
    }
  }
};

class SabreRouter {
 public:
  SabreRouter(const Circuit& circuit, const Target& target,
              const Layout& layout, const SabreConfig& config)
      : circuit_(circuit),
        target_(target),
        config_(config),
        layout_(layout),
        dag_(circuit),
        out_(target.num_qubits(), circuit.param_count()),
        decay_(static_cast<std::size_t>(target.num_qubits()), 1.0),
        content_(static_cast<std::size_t>(target.num_qubits())) {
    std::iota(content_.begin(), content_.end(), 0);
    int diameter = 0;
    for (int u = 0; u < target.num_qubits(); ++u) {
      for (int v = 0; v < target.num_qubits(); ++v) {
        diameter = std::max(diameter, target.distances(u, v));
      }
    }
    stall_limit_ = 5 * diameter + 10;
  }

  RoutingResult run() {
    remaining_ = dag_.in_degree;
    for (std::size_t i = 0; i < remaining_.size(); ++i) {
      if (remaining_[i] == 0) front_.insert(static_cast<int>(i));
    }
    while (true) {
      execute_ready();
      if (front_.empty()) break;
      if (stalled_swaps_ >= stall_limit_) {
        release_valve();
        continue;
      }
      const auto [a, b] = choose_swap();
      apply_swap(a, b);
    }
    RoutingResult result;
    result.circuit = std::move(out_);
    result.final_layout = layout_;
    result.output_permutation.assign(content_.size(), 0);
    for (std::size_t p = 0; p < content_.size(); ++p) {
      result.output_permutation[content_[p]] = static_cast<int>(p);
    }
    result.swaps = swaps_;
    return result;
  }

 private:
  const Instruction& inst(int i) const { return circuit_.instructions()[i]; }

  int gate_distance(int i) const {
    const auto& g = inst(i);
    return target_.distances(layout_.physical(g.wires[0]),
                             layout_.physical(g.wires[1]));
  }

  bool executable(int i) const {
    return !inst(i).is_two_qubit() || gate_distance(i) == 1;
  }

  void emit(int i) {
    Instruction g = inst(i);
    g.wires[0] = layout_.physical(g.wires[0]);
    if (g.is_two_qubit()) g.wires[1] = layout_.physical(g.wires[1]);
    out_.append(std::move(g));
  }

  void execute_ready() {
    bool progress = true;
    while (progress) {
      progress = false;
      for (auto it = front_.begin(); it != front_.end();) {
        const int i = *it;
        if (!executable(i)) {
          ++it;
          continue;
        }
        emit(i);
        it = front_.erase(it);
        for (int s : dag_.successors[i]) {
          if (--remaining_[s] == 0) front_.insert(s);
        }
        progress = true;
        stalled_swaps_ = 0;
      }
    }
  }

  std::vector<int> extended_set() const {
    std::vector<int> ext;
    std::vector<int> queue(front_.begin(), front_.end());
    std::set<int> seen(front_.begin(), front_.end());
    for (std::size_t head = 0;
         head < queue.size() &&
         static_cast<int>(ext.size()) < config_.extended_set_size;
         ++head) {
      for (int s : dag_.successors[queue[head]]) {
        if (!seen.insert(s).second) continue;
        queue.push_back(s);
        if (inst(s).is_two_qubit()) {
          ext.push_back(s);
          if (static_cast<int>(ext.size()) >= config_.extended_set_size) break;
        }
      }
    }
    return ext;
  }

  double layer_cost(const std::vector<int>& gates) const {
    if (gates.empty()) return 0.0;
    double sum = 0.0;
    for (int g : gates) sum += gate_distance(g);
    return sum / static_cast<double>(gates.size());
  }

  std::pair<int, int> choose_swap() {
    std::vector<int> front_2q;
    std::set<std::pair<int, int>> candidates;
    for (int g : front_) {
      if (!inst(g).is_two_qubit()) continue;
      front_2q.push_back(g);
      for (int q : inst(g).qubits()) {
        const int p = layout_.physical(q);
        for (int nb : target_.coupling.neighbors(p)) {
          candidates.emplace(std::min(p, nb), std::max(p, nb));
        }
      }
    }
    const auto ext = extended_set();
    double best = std::numeric_limits<double>::infinity();
    std::pair<int, int> best_swap{-1, -1};
    for (const auto& [a, b] : candidates) {
      layout_.swap_physical(a, b);
      const double h = std::max(decay_[a], decay_[b]) *
                       (layer_cost(front_2q) +
                        config_.lookahead_weight * layer_cost(ext));
      layout_.swap_physical(a, b);
      if (h < best - 1e-12) {
        best = h;
        best_swap = {a, b};
      }
    }
    return best_swap;
  }

  void apply_swap(int a, int b) {
    out_.append(Instruction::two(GateKind::SWAP, a, b));
    layout_.swap_physical(a, b);
    std::swap(content_[a], content_[b]);
    ++swaps_;
    ++stalled_swaps_;
    decay_[a] += config_.decay_increment;
    decay_[b] += config_.decay_increment;
    if (config_.decay_reset_interval > 0 &&
        swaps_ % config_.decay_reset_interval == 0) {
      std::fill(decay_.begin(), decay_.end(), 1.0);
    }
  }

  // Walks the first blocked gate's control along a shortest path until the
  // gate becomes executable.
  void release_valve() {
    int gate = -1;
    for (int g : front_) {
      if (inst(g).is_two_qubit()) {
        gate = g;
        break;
      }
    }
    const int target_phys = layout_.physical(inst(gate).wires[1]);
    while (gate_distance(gate) > 1) {
      const int p = layout_.physical(inst(gate).wires[0]);
      int step = -1;
      for (int nb : target_.coupling.neighbors(p)) {
        if (target_.distances(nb, target_phys) <
            target_.distances(p, target_phys)) {
          step = nb;
          break;
        }
      }
      apply_swap(std::min(p, step), std::max(p, step));
    }
    stalled_swaps_ = 0;
    std::fill(decay_.begin(), decay_.end(), 1.0);
  }

  const Circuit& circuit_;
  const Target& target_;
  SabreConfig config_;
  Layout layout_;
  Dag dag_;
  Circuit out_;
  std::vector<double> decay_;
  std::vector<int> content_;  // content_[p] = original wire now on p
  std::vector<int> remaining_;
  std::set<int> front_;
  int swaps_ = 0;
  int stalled_swaps_ = 0;
  int stall_limit_ = 0;
};

Circuit reversed(const Circuit& circuit) {
  Circuit out(circuit.num_qubits(), circuit.param_count());
  const auto& insts = circuit.instructions();
  for (auto it = insts.rbegin(); it != insts.rend(); ++it) out.append(*it);
  return out;
}

// Seeded placement on a connected region: breadth-first from a random
// root until n physicals are collected, then a random assignment of
// logicals to them.
// Seeded placement on a connected region: a depth-first walk from a random
// root collects n physicals (path-like on sparse lattices), then logicals
// are assigned to them in random order.
Layout random_region_layout(int n, const CouplingMap& coupling,
                            std::uint64_t seed) {
  Rng rng(seed);
  const int m = coupling.num_qubits();
  const int root = static_cast<int>(rng.below(static_cast<std::uint64_t>(m)));
  std::vector<int> region;
  std::vector<char> seen(static_cast<std::size_t>(m), 0);
  std::vector<int> stack{root};
  while (!stack.empty() && static_cast<int>(region.size()) < n) {
    const int u = stack.back();
    stack.pop_back();
    if (seen[u]) continue;
    seen[u] = 1;
    region.push_back(u);
    const auto& nb = coupling.neighbors(u);
    for (auto it = nb.rbegin(); it != nb.rend(); ++it) {
      if (!seen[*it]) stack.push_back(*it);
    }
  }
  for (int i = n - 1; i > 0; --i) {
    const auto j = static_cast<int>(rng.below(static_cast<std::uint64_t>(i + 1)));
    std::swap(region[i], region[j]);
  }
  return Layout(std::move(region), m);
}

}  // namespace

Layout trivial_layout(const Circuit& circuit, const Target& target) {
  check_capacity(circuit, target);
  return Layout::identity(circuit.num_qubits(), target.num_qubits());
}

RoutingResult sabre_route(const Circuit& circuit, const Target& target,
                          const Layout& layout, const SabreConfig& config) {
  check_capacity(circuit, target);
  if (layout.num_logical() != circuit.num_qubits() ||
      layout.num_physical() != target.num_qubits()) {
    throw DomainError("layout shape does not match circuit and target");
  }
  return SabreRouter(circuit, target, layout, config).run();
}

Layout sabre_layout(const Circuit& circuit, const Target& target,
                    std::uint64_t seed, const SabreConfig& config) {
  check_capacity(circuit, target);
  Layout layout =
      random_region_layout(circuit.num_qubits(), target.coupling, seed);
  const Circuit backward = reversed(circuit);
  for (int round = 0; round < config.layout_iterations; ++round) {
    layout = sabre_route(circuit, target, layout, config).final_layout;
    layout = sabre_route(backward, target, layout, config).final_layout;
  }
  return layout;
}

}  // namespace qtlens
