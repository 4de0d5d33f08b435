#pragma once

#include <filesystem>
#include <set>
#include <string>
#include <utility>
#include <vector>

#include <json.hpp>

#include "qtlens/circuit.hpp"

namespace qtlens {

using Edge = std::pair<int, int>;

/// Undirected, connected device graph. Edges are stored with u < v and
/// sorted lexicographically; CX is allowed in both directions on each edge.
class CouplingMap {
 public:
  CouplingMap() = default;
  /// Validates indices, self-loops and connectivity; throws DomainError.
  CouplingMap(int num_qubits, std::vector<Edge> edges);

  [[nodiscard]] int num_qubits() const { return num_qubits_; }
  [[nodiscard]] const std::vector<Edge>& edges() const { return edges_; }
  [[nodiscard]] const std::vector<int>& neighbors(int q) const {
    return adjacency_[static_cast<std::size_t>(q)];
  }
  [[nodiscard]] bool connected(int u, int v) const;
  [[nodiscard]] int degree(int q) const {
    return static_cast<int>(neighbors(q).size());
  }

  friend bool operator==(const CouplingMap& a, const CouplingMap& b) {
    return a.num_qubits_ == b.num_qubits_ && a.edges_ == b.edges_;
  }

 private:
  int num_qubits_ = 0;
  std::vector<Edge> edges_;
  std::vector<std::vector<int>> adjacency_;
};

/// Dense m x m hop-count matrix.
class DistanceMatrix {
 public:
  DistanceMatrix() = default;
  explicit DistanceMatrix(int m)
      : m_(m), data_(static_cast<std::size_t>(m) * m, -1) {}

  [[nodiscard]] int size() const { return m_; }
  [[nodiscard]] int operator()(int u, int v) const {
    return data_[static_cast<std::size_t>(u) * m_ + v];
  }
  int& at(int u, int v) { return data_[static_cast<std::size_t>(u) * m_ + v]; }

 private:
  int m_ = 0;
  std::vector<int> data_;
};

/// All-pairs shortest paths by one breadth-first search per source. Throws
/// DomainError when some pair is unreachable.
[[nodiscard]] DistanceMatrix distance_matrix(const CouplingMap& coupling);

/// Heavy-hexagon lattice with `distance` rows of data qubits (each
/// 2*distance+1 columns wide, the first row missing its last column and the
/// last row its first), joined by bridge qubits every fourth column with
/// alternating offsets. Qubits are numbered row by row, bridges between the
/// rows they join. distance = 5 gives the 65-qubit device layout. Throws
/// DomainError for even distances or distance < 3.
[[nodiscard]] CouplingMap heavy_hex_map(int distance);

[[nodiscard]] CouplingMap line_map(int m);
[[nodiscard]] CouplingMap ring_map(int m);
[[nodiscard]] CouplingMap complete_map(int m);

struct Target {
  std::string name;
  CouplingMap coupling;
  DistanceMatrix distances;

  Target() = default;
  Target(std::string name, CouplingMap coupling);

  [[nodiscard]] int num_qubits() const { return coupling.num_qubits(); }
  /// Native basis {CX, RZ, SX, X}.
  [[nodiscard]] static const std::set<GateKind>& basis();
};

/// {"name": ..., "num_qubits": m, "edges": [[u, v], ...]} with u < v and
/// edges sorted lexicographically.
[[nodiscard]] nlohmann::json target_to_json(const Target& target);
/// Throws LoadError with the offending field.
[[nodiscard]] Target target_from_json(const nlohmann::json& doc);

void save_target(const Target& target, const std::filesystem::path& path);
[[nodiscard]] Target load_target(const std::filesystem::path& path);

/// Location of the bundled 65-qubit heavy-hex target file.
[[nodiscard]] std::filesystem::path default_target_path();

}  // namespace qtlens
