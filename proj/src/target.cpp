#include "qtlens/target.hpp"

#include <algorithm>
#include <cstdlib>
#include <deque>

#include "qtlens/circuit_io.hpp"
#include "qtlens/errors.hpp"

#ifndef QTLENS_DATA_DIR
#define QTLENS_DATA_DIR "data"
#endif

namespace qtlens {

using nlohmann::json;

CouplingMap::CouplingMap(int num_qubits, std::vector<Edge> edges)
    : num_qubits_(num_qubits) {
  if (num_qubits < 1) throw DomainError("coupling map needs >= 1 qubit");
  for (auto& [u, v] : edges) {
    if (u < 0 || v < 0 || u >= num_qubits || v >= num_qubits) {
      throw DomainError("edge [" + std::to_string(u) + "," +
                        std::to_string(v) + "] out of range for " +
                        std::to_string(num_qubits) + " qubits");
    }
    if (u == v) {
      throw DomainError("self-loop on qubit " + std::to_string(u));
    }
    if (u > v) std::swap(u, v);
  }
  std::sort(edges.begin(), edges.end());
  edges.erase(std::unique(edges.begin(), edges.end()), edges.end());
  edges_ = std::move(edges);

  adjacency_.assign(static_cast<std::size_t>(num_qubits), {});
  for (const auto& [u, v] : edges_) {
    adjacency_[u].push_back(v);
    adjacency_[v].push_back(u);
  }
  for (auto& adj : adjacency_) std::sort(adj.begin(), adj.end());

  // connectivity
  std::vector<char> seen(static_cast<std::size_t>(num_qubits), 0);
  std::deque<int> queue{0};
  seen[0] = 1;
  int reached = 1;
  while (!queue.empty()) {
    const int u = queue.front();
    queue.pop_front();
    for (int v : adjacency_[u]) {
      if (!seen[v]) {
        seen[v] = 1;
        ++reached;
        queue.push_back(v);
      }
    }
  }
  if (reached != num_qubits) {
    throw DomainError("coupling map is disconnected: reached " +
                      std::to_string(reached) + " of " +
                      std::to_string(num_qubits) + " qubits");
  }
}

bool CouplingMap::connected(int u, int v) const {
  const auto& adj = neighbors(u);
  return std::binary_search(adj.begin(), adj.end(), v);
}

DistanceMatrix distance_matrix(const CouplingMap& coupling) {
  const int m = coupling.num_qubits();
  DistanceMatrix dist(m);
  std::vector<int> queue;
  queue.reserve(static_cast<std::size_t>(m));
  for (int s = 0; s < m; ++s) {
    queue.clear();
    queue.push_back(s);
    dist.at(s, s) = 0;
    for (std::size_t head = 0; head < queue.size(); ++head) {
      const int u = queue[head];
      for (int v : coupling.neighbors(u)) {
        if (dist(s, v) < 0) {
          dist.at(s, v) = dist(s, u) + 1;
          queue.push_back(v);
        }
      }
    }
    if (static_cast<int>(queue.size()) != m) {
      throw DomainError("distance matrix requested for disconnected map");
    }
  }
  return dist;
}

CouplingMap heavy_hex_map(int distance) {
  if (distance < 3 || distance % 2 == 0) {
    throw DomainError("heavy-hex distance must be odd and >= 3, got " +
                      std::to_string(distance));
  }
  const int rows = distance;
  const int width = 2 * distance + 1;
  std::vector<Edge> edges;
  // row_index[r][c] = qubit id or -1
  std::vector<std::vector<int>> row_index(
      static_cast<std::size_t>(rows), std::vector<int>(width, -1));
  int next = 0;
  auto bridge_offset = [](int gap) { return gap % 2 == 0 ? 0 : 2; };

  auto emit_row = [&](int r) {
    const int first = (r == rows - 1) ? 1 : 0;
    const int last = (r == 0) ? width - 2 : width - 1;
    for (int c = first; c <= last; ++c) {
      row_index[r][c] = next++;
      if (c > first) edges.emplace_back(row_index[r][c - 1], row_index[r][c]);
    }
  };

  emit_row(0);
  for (int gap = 0; gap + 1 < rows; ++gap) {
    std::vector<std::pair<int, int>> bridges;  // (column, qubit)
    for (int c = bridge_offset(gap); c < width; c += 4) {
      bridges.emplace_back(c, next++);
    }
    emit_row(gap + 1);
    for (const auto& [c, b] : bridges) {
      edges.emplace_back(row_index[gap][c], b);
      edges.emplace_back(b, row_index[gap + 1][c]);
    }
  }
  return CouplingMap(next, std::move(edges));
}

CouplingMap line_map(int m) {
  std::vector<Edge> edges;
  for (int i = 0; i + 1 < m; ++i) edges.emplace_back(i, i + 1);
  return CouplingMap(m, std::move(edges));
}

CouplingMap ring_map(int m) {
  std::vector<Edge> edges;
  for (int i = 0; i + 1 < m; ++i) edges.emplace_back(i, i + 1);
  if (m > 2) edges.emplace_back(0, m - 1);
  return CouplingMap(m, std::move(edges));
}

CouplingMap complete_map(int m) {
  std::vector<Edge> edges;
  for (int i = 0; i < m; ++i) {
    for (int j = i + 1; j < m; ++j) edges.emplace_back(i, j);
  }
  return CouplingMap(m, std::move(edges));
}

Target::Target(std::string target_name, CouplingMap map)
    : name(std::move(target_name)),
      coupling(std::move(map)),
      distances(distance_matrix(coupling)) {}

const std::set<GateKind>& Target::basis() {
  static const std::set<GateKind> kBasis = {GateKind::CX, GateKind::RZ,
                                            GateKind::SX, GateKind::X};
  return kBasis;
}

json target_to_json(const Target& target) {
  json edges = json::array();
  for (const auto& [u, v] : target.coupling.edges()) {
    edges.push_back(json::array({u, v}));
  }
  return {{"name", target.name},
          {"num_qubits", target.num_qubits()},
          {"edges", std::move(edges)}};
}

Target target_from_json(const json& doc) {
  std::string name;
  int m = 0;
  std::vector<Edge> edges;
  try {
    name = doc.value("name", std::string("unnamed"));
    m = doc.at("num_qubits").get<int>();
    std::size_t idx = 0;
    for (const auto& e : doc.at("edges")) {
      if (!e.is_array() || e.size() != 2) {
        throw LoadError("edges[" + std::to_string(idx) +
                        "] must be a [u, v] pair");
      }
      edges.emplace_back(e[0].get<int>(), e[1].get<int>());
      ++idx;
    }
  } catch (const LoadError&) {
    throw;
  } catch (const std::exception& e) {
    throw LoadError(std::string("target document: ") + e.what());
  }
  for (std::size_t i = 0; i < edges.size(); ++i) {
    const auto [u, v] = edges[i];
    if (u < 0 || v < 0 || u >= m || v >= m) {
      throw LoadError("edges[" + std::to_string(i) + "] = [" +
                      std::to_string(u) + "," + std::to_string(v) +
                      "] out of range for num_qubits " + std::to_string(m));
    }
  }
  try {
    return Target(std::move(name), CouplingMap(m, std::move(edges)));
  } catch (const DomainError& e) {
    throw LoadError(std::string("target: ") + e.what());
  }
}

void save_target(const Target& target, const std::filesystem::path& path) {
  write_json_file(target_to_json(target), path);
}

Target load_target(const std::filesystem::path& path) {
  try {
    return target_from_json(read_json_file(path));
  } catch (const LoadError& e) {
    throw LoadError(path.string() + ": " + e.what());
  }
}

std::filesystem::path default_target_path() {
  if (const char* dir = std::getenv("QTLENS_DATA_DIR")) {
    return std::filesystem::path(dir) / "targets" / "heavy_hex_65.json";
  }
  return std::filesystem::path(QTLENS_DATA_DIR) / "targets" /
         "heavy_hex_65.json";
}

}  // namespace qtlens
