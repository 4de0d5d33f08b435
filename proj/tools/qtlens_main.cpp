// qtlens command-line front end.
//
//   qtlens build --family hea_ring --n 4 --reps 2 --out ring.json
//   qtlens target --heavy-hex 5 --out heavy_hex_65.json
//   qtlens transpile --circuit ring.json --target t.json --opt-level 2 \
//                    --seed 7 --out ring_t.json
//   qtlens expressibility --circuit ring_t.json
//   qtlens trainability --circuit ring_t.json --sidecar ring_t.layout.json
//   qtlens simulate --circuit ring.json --seed 3 --dump-state
//   qtlens sweep --config sweep.json
//   qtlens report --results out/records.csv --metric delta_e_kl \
//                 --family hea_ring --opt-level 1

#include <cstdint>
#include <filesystem>
#include <fstream>
#include <iostream>
#include <optional>
#include <string>
#include <vector>

#include <CLI11.hpp>

#include "qtlens/ansatz.hpp"
#include "qtlens/circuit_io.hpp"
#include "qtlens/errors.hpp"
#include "qtlens/harness.hpp"
#include "qtlens/metrics.hpp"
#include "qtlens/statevector.hpp"
#include "qtlens/target.hpp"
#include "qtlens/transpiler.hpp"

namespace {

using nlohmann::json;
using namespace qtlens;

std::filesystem::path sidecar_path_for(const std::filesystem::path& out) {
  std::filesystem::path p = out;
  p.replace_extension(".layout.json");
  return p;
}

void print_json(const json& doc) { std::cout << doc.dump(2) << '\n'; }

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"Ansatz construction, hardware-aware transpilation and "
               "expressibility/trainability analysis"};
  app.require_subcommand(1);

  // build
  std::string family;
  int n = 0, reps = 0;
  std::string out_path;
  auto* build = app.add_subcommand("build", "Emit an ansatz circuit file");
  build->add_option("--family", family, "Ansatz family name")->required();
  build->add_option("--n", n, "Number of qubits")->required();
  build->add_option("--reps", reps, "Number of repetitions (L)")->required();
  build->add_option("--out", out_path, "Output circuit file")->required();

  // target
  int hex_distance = 5;
  std::string target_name;
  auto* target_cmd =
      app.add_subcommand("target", "Emit a heavy-hex coupling-map file");
  target_cmd->add_option("--heavy-hex", hex_distance,
                         "Lattice distance (odd, >= 3)");
  target_cmd->add_option("--name", target_name, "Target name");
  target_cmd->add_option("--out", out_path, "Output file")->required();

  // transpile
  std::string circuit_path, target_path;
  int opt_level = 1;
  std::uint64_t seed = 0;
  std::optional<int> trials;
  auto* transpile_cmd =
      app.add_subcommand("transpile", "Compile a circuit for a target");
  transpile_cmd->add_option("--circuit", circuit_path)->required();
  transpile_cmd->add_option("--target", target_path,
                            "Coupling-map file (default: bundled heavy-hex)");
  transpile_cmd->add_option("--opt-level", opt_level)
      ->check(CLI::Range(0, 3));
  transpile_cmd->add_option("--seed", seed);
  transpile_cmd->add_option("--routing-trials", trials);
  transpile_cmd->add_option("--out", out_path)->required();

  // expressibility
  ExpressibilityConfig expr_cfg;
  std::optional<int> haar_qubits;
  auto* expr_cmd = app.add_subcommand(
      "expressibility", "KL divergence of the fidelity histogram vs Haar");
  expr_cmd->add_option("--circuit", circuit_path)->required();
  expr_cmd->add_option("--pairs", expr_cfg.n_pairs);
  expr_cmd->add_option("--bins", expr_cfg.bins);
  expr_cmd->add_option("--epsilon", expr_cfg.epsilon);
  expr_cmd->add_option("--seed", expr_cfg.seed);
  expr_cmd->add_option("--haar-qubits", haar_qubits,
                       "Haar dimension exponent (default: circuit width)");

  // trainability
  TrainabilityConfig train_cfg;
  std::string sidecar_path, wire_mode = "tracked";
  std::optional<int> wire;
  auto* train_cmd = app.add_subcommand(
      "trainability", "Mean parameter-shift gradient variance of <Z>");
  train_cmd->add_option("--circuit", circuit_path)->required();
  train_cmd->add_option("--n-grad", train_cfg.n_grad);
  train_cmd->add_option("--seed", train_cfg.seed);
  train_cmd->add_option("--sidecar", sidecar_path,
                        "Layout sidecar of a transpiled circuit");
  train_cmd->add_option("--wire-mode", wire_mode, "tracked or raw_zero");
  train_cmd->add_option("--wire", wire, "Measured wire (overrides mode)");

  // simulate
  bool dump_state = false;
  auto* sim_cmd = app.add_subcommand(
      "simulate", "Simulate at a random binding and print <Z> per wire");
  sim_cmd->add_option("--circuit", circuit_path)->required();
  sim_cmd->add_option("--seed", seed);
  sim_cmd->add_flag("--dump-state", dump_state,
                    "Print amplitudes as (real, imag) in index order");

  // sweep
  std::string config_path, out_dir;
  std::optional<int> jobs;
  auto* sweep_cmd = app.add_subcommand("sweep", "Run a sweep grid");
  sweep_cmd->add_option("--config", config_path)->required();
  sweep_cmd->add_option("--out-dir", out_dir, "Overrides output_dir");
  sweep_cmd->add_option("--jobs", jobs, "Overrides jobs");

  // report
  std::string results_path, metric_name;
  auto* report_cmd =
      app.add_subcommand("report", "Emit one heatmap matrix as CSV");
  report_cmd->add_option("--results", results_path, "records.csv of a sweep")
      ->required();
  report_cmd->add_option("--metric", metric_name,
                         "delta_e_kl, delta_gradvar, depth_overhead or "
                         "qubit_overhead")
      ->required();
  report_cmd->add_option("--family", family)->required();
  report_cmd->add_option("--opt-level", opt_level)->required();
  report_cmd->add_option("--out", out_path, "Output CSV (default stdout)");

  CLI11_PARSE(app, argc, argv);

  try {
    if (*build) {
      const Circuit c = build_ansatz(parse_family(family), n, reps);
      save_circuit(c, out_path);
      print_json({{"family", family},
                  {"n", n},
                  {"reps", reps},
                  {"param_count", c.param_count()},
                  {"depth", depth(c)},
                  {"two_qubit_gates", gate_counts(c).two_qubit}});
    } else if (*target_cmd) {
      const std::string name =
          target_name.empty() ? "heavy_hex_d" + std::to_string(hex_distance)
                              : target_name;
      const Target t(name, heavy_hex_map(hex_distance));
      save_target(t, out_path);
      print_json({{"name", t.name},
                  {"num_qubits", t.num_qubits()},
                  {"edges", t.coupling.edges().size()}});
    } else if (*transpile_cmd) {
      const Circuit logical = load_circuit(circuit_path);
      const Target target = load_target(
          target_path.empty() ? default_target_path()
                              : std::filesystem::path(target_path));
      TranspileOptions opts;
      opts.opt_level = opt_level;
      opts.seed = seed;
      opts.routing_trials = trials;
      const TranspiledCircuit t = transpile(logical, target, opts);
      save_circuit(t.circuit, out_path);
      const auto sidecar = sidecar_path_for(out_path);
      write_json_file(transpile_sidecar(t), sidecar);
      print_json({{"circuit", out_path},
                  {"sidecar", sidecar.string()},
                  {"active_qubits", t.active_qubit_count},
                  {"param_count", t.param_count},
                  {"depth", depth(t.circuit)},
                  {"two_qubit_gates", gate_counts(t.circuit).two_qubit},
                  {"swaps", t.swaps}});
    } else if (*expr_cmd) {
      const Circuit c = load_circuit(circuit_path);
      expr_cfg.haar_dimension_qubits = haar_qubits;
      const double kl = expressibility_kl(c, expr_cfg);
      print_json({{"metric", "expressibility_kl"},
                  {"value", kl},
                  {"n_pairs", expr_cfg.n_pairs},
                  {"bins", expr_cfg.bins},
                  {"epsilon", expr_cfg.epsilon},
                  {"seed", expr_cfg.seed},
                  {"haar_qubits", haar_qubits.value_or(c.num_qubits())},
                  {"log_base", "e"}});
    } else if (*train_cmd) {
      const Circuit c = load_circuit(circuit_path);
      train_cfg.observable_wire_mode = parse_wire_mode(wire_mode);
      int measured = 0;
      if (wire) {
        measured = *wire;
      } else if (!sidecar_path.empty() &&
                 train_cfg.observable_wire_mode == WireMode::Tracked) {
        const auto w = read_json_file(sidecar_path).at("output_wires").at(0);
        if (w.is_null()) throw DomainError("logical qubit 0 has no gates");
        measured = w.get<int>();
      }
      const double var = gradient_variance(c, train_cfg, measured);
      print_json({{"metric", "gradient_variance"},
                  {"value", var},
                  {"n_grad", train_cfg.n_grad},
                  {"seed", train_cfg.seed},
                  {"wire", measured},
                  {"wire_mode", wire_mode}});
    } else if (*sim_cmd) {
      const Circuit c = load_circuit(circuit_path);
      const auto theta = sample_angles(c.param_count(), seed);
      const Statevector s = simulate(c, theta);
      json z = json::array();
      for (int q = 0; q < c.num_qubits(); ++q) z.push_back(expectation_z(s, q));
      json doc = {{"theta", theta}, {"expectation_z", z}};
      if (dump_state) {
        json amps = json::array();
        for (const auto& a : s.amplitudes()) {
          amps.push_back(json::array({a.real(), a.imag()}));
        }
        doc["amplitudes"] = std::move(amps);
      }
      print_json(doc);
    } else if (*sweep_cmd) {
      SweepConfig cfg = sweep_config_from_json(read_json_file(config_path));
      if (!out_dir.empty()) cfg.output_dir = out_dir;
      if (jobs) cfg.jobs = *jobs;
      const SweepResult result = run_sweep(cfg);
      write_sweep_outputs(result, cfg.output_dir);
      std::cout << "records: " << result.records.size()
                << ", cells: " << result.means.size()
                << ", failed cells: " << result.failures.size() << " -> "
                << cfg.output_dir.string() << '\n';
      for (const auto& f : result.failures) {
        std::cerr << "failed " << family_name(f.family) << " n=" << f.n_logical
                  << " L=" << f.reps << " opt=" << f.opt_level << ": "
                  << f.reason << '\n';
      }
      return result.failures.empty() ? 0 : 1;
    } else if (*report_cmd) {
      std::ifstream in(results_path);
      if (!in) throw LoadError("cannot open " + results_path);
      SweepResult result;
      result.records = read_records_csv(in);
      result.means = cell_means(result.records);
      const Heatmap h = export_heatmap(result, parse_family(family), opt_level,
                                       parse_heatmap_metric(metric_name));
      if (out_path.empty()) {
        write_heatmap_csv(std::cout, h);
      } else {
        std::ofstream out(out_path);
        write_heatmap_csv(out, h);
      }
    }
  } catch (const std::exception& e) {
    std::cerr << "error: " << e.what() << '\n';
    return 2;
  }
  return 0;
}
