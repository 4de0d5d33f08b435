#include "qtlens/circuit_io.hpp"

#include <fstream>

#include "qtlens/errors.hpp"

namespace qtlens {

using nlohmann::json;

json circuit_to_json(const Circuit& circuit) {
  json instructions = json::array();
  for (const auto& inst : circuit.instructions()) {
    json params = json::array();
    if (inst.angle) {
      json terms = json::array();
      for (const auto& t : inst.angle->terms()) {
        terms.push_back(json::array({t.index, t.coeff}));
      }
      params.push_back({{"constant", inst.angle->constant()},
                        {"terms", std::move(terms)}});
    }
    json qubits = json::array();
    for (int q : inst.qubits()) qubits.push_back(q);
    instructions.push_back({{"kind", gate_name(inst.kind)},
                            {"qubits", std::move(qubits)},
                            {"params", std::move(params)}});
  }
  return {{"version", kCircuitFormatVersion},
          {"num_qubits", circuit.num_qubits()},
          {"param_count", circuit.param_count()},
          {"instructions", std::move(instructions)}};
}

namespace {

ParamExpr expr_from_json(const json& doc) {
  std::vector<ParamTerm> terms;
  for (const auto& t : doc.at("terms")) {
    if (!t.is_array() || t.size() != 2) {
      throw LoadError("parameter term must be [index, coefficient]");
    }
    terms.push_back(ParamTerm{t[0].get<int>(), t[1].get<double>()});
  }
  return ParamExpr(doc.at("constant").get<double>(), std::move(terms));
}

}  // namespace

Circuit circuit_from_json(const json& doc) {
  try {
    const int version = doc.at("version").get<int>();
    if (version != kCircuitFormatVersion) {
      throw LoadError("unsupported circuit format version " +
                      std::to_string(version));
    }
    Circuit circuit(doc.at("num_qubits").get<int>(),
                    doc.at("param_count").get<int>());
    std::size_t idx = 0;
    for (const auto& item : doc.at("instructions")) {
      try {
        Instruction inst;
        inst.kind = parse_gate_kind(item.at("kind").get<std::string>());
        const auto& qubits = item.at("qubits");
        if (static_cast<int>(qubits.size()) != qubit_arity(inst.kind)) {
          throw LoadError("wrong number of qubits");
        }
        for (std::size_t i = 0; i < qubits.size(); ++i) {
          inst.wires[i] = qubits[i].get<int>();
        }
        const auto& params = item.at("params");
        if (params.size() > 1) throw LoadError("at most one angle per gate");
        if (!params.empty()) inst.angle = expr_from_json(params[0]);
        circuit.append(std::move(inst));
      } catch (const std::exception& e) {
        throw LoadError("instruction " + std::to_string(idx) + ": " +
                        e.what());
      }
      ++idx;
    }
    return circuit;
  } catch (const LoadError&) {
    throw;
  } catch (const std::exception& e) {
    throw LoadError(std::string("circuit document: ") + e.what());
  }
}

json read_json_file(const std::filesystem::path& path) {
  std::ifstream in(path);
  if (!in) throw LoadError("cannot open " + path.string());
  try {
    return json::parse(in);
  } catch (const json::parse_error& e) {
    throw LoadError(path.string() + ": " + e.what());
  }
}

void write_json_file(const json& doc, const std::filesystem::path& path) {
  std::ofstream out(path);
  if (!out) throw Error("cannot write " + path.string());
  out << doc.dump(2) << '\n';
}

void save_circuit(const Circuit& circuit, const std::filesystem::path& path) {
  write_json_file(circuit_to_json(circuit), path);
}

Circuit load_circuit(const std::filesystem::path& path) {
  try {
    return circuit_from_json(read_json_file(path));
  } catch (const LoadError& e) {
    throw LoadError(path.string() + ": " + e.what());
  }
}

}  // namespace qtlens
