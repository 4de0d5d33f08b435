#pragma once

#include <filesystem>

#include <json.hpp>

#include "qtlens/circuit.hpp"

namespace qtlens {

inline constexpr int kCircuitFormatVersion = 1;

/// Circuit document:
///   {"version": 1, "num_qubits": n, "param_count": P,
///    "instructions": [{"kind": "rz", "qubits": [q],
///                      "params": [{"constant": c, "terms": [[k, a], ...]}]}]}
[[nodiscard]] nlohmann::json circuit_to_json(const Circuit& circuit);

/// Throws LoadError describing the offending field.
[[nodiscard]] Circuit circuit_from_json(const nlohmann::json& doc);

void save_circuit(const Circuit& circuit, const std::filesystem::path& path);
[[nodiscard]] Circuit load_circuit(const std::filesystem::path& path);

/// Reads and parses a JSON file; throws LoadError with the path on failure.
[[nodiscard]] nlohmann::json read_json_file(const std::filesystem::path& path);
void write_json_file(const nlohmann::json& doc,
                     const std::filesystem::path& path);

}  // namespace qtlens
